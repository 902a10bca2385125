#include "spodual/tables.hpp"

#include <json.hpp>

namespace spodual {

using nlohmann::json;

const std::vector<TableRow>& builtin_table_rows() {
  static const std::vector<TableRow> rows = {
      // Table I: real dual pairs of Type I
      {"I", 1, AlgebraName::Cl0R, "triv", 0, {2, 1, 0}, {1, 0, 2},
       "(spo(2|1,0), osp(1,0|2))"},
      {"I", 2, AlgebraName::Cl0R, "triv", 1, {1}, {1}, "(p(1,R), p(1,R))"},
      {"I", 3, AlgebraName::Cl0C, "triv", 0, {2, 1, 0}, {1, 0, 2},
       "(spo(2|1), osp(1|2)) over C, realified"},
      {"I", 4, AlgebraName::Cl0C, "triv", 1, {1}, {1}, "(p(1,C), p(1,C)) realified"},
      {"I", 5, AlgebraName::Cl0C, "conj", 0, {1, 0, 1, 0}, {1, 0, 1, 0},
       "(u(1,0|1,0), u(1,0|1,0))"},
      {"I", 6, AlgebraName::Cl0C, "conj", 1, {1}, {1}, "(pbar(1), pbar(1))"},
      {"I", 7, AlgebraName::Cl4R, "conj", 0, {1, 1, 0}, {1, 0, 1},
       "(osp*(1|1,0), spo*(1,0|1))"},
      {"I", 8, AlgebraName::Cl4R, "conj", 1, {1}, {1}, "(p*(1), p*(1))"},
      {"I", 9, AlgebraName::Cl1C, "iota1", 0, {1, 0}, {1, 0}, "(q(1,0), q(1,0))"},
      // Table IC: complex dual pairs of Type I
      {"IC", 1, AlgebraName::Cl0C, "triv", 0, {2, 1, 0}, {1, 0, 2},
       "(spo(2|1,C), osp(1|2,C))"},
      {"IC", 2, AlgebraName::Cl0C, "triv", 1, {1}, {1}, "(p(1,C), p(1,C))"},
      // Table II: real dual pairs of Type II
      {"II", 1, AlgebraName::Cl0R, "", 0, {1, 1}, {1, 1}, "(gl(1|1,R), gl(1|1,R))"},
      {"II", 2, AlgebraName::Cl0C, "", 0, {1, 1}, {1, 1},
       "(gl(1|1,C), gl(1|1,C)) realified"},
      {"II", 3, AlgebraName::Cl4R, "", 0, {1, 0}, {1, 0}, "(gl(1|0,H), gl(1|0,H))"},
      {"II", 4, AlgebraName::Cl1R, "", 0, {1, 0}, {1, 0}, "(q(1,R), q(1,R))"},
      {"II", 5, AlgebraName::Cl1C, "", 0, {1, 0}, {1, 0}, "(q(1,C), q(1,C)) realified"},
      {"II", 6, AlgebraName::Cl3R, "", 0, {1, 0}, {1, 0}, "(q(1,H), q(1,H))"},
      {"II", 7, AlgebraName::Cl6R, "", 0, {1, 0}, {1, 0}, "(qbar(1), qbar(1))"},
      // Table IIC: complex dual pairs of Type II
      {"IIC", 1, AlgebraName::Cl0C, "", 0, {1, 1}, {1, 1}, "(gl(1|1,C), gl(1|1,C))"},
      {"IIC", 2, AlgebraName::Cl1C, "", 0, {1, 0}, {1, 0}, "(q(1,C), q(1,C))"},
  };
  return rows;
}

std::vector<TableRow> parse_manifest(const std::string& json_text) {
  json doc = json::parse(json_text);
  std::vector<TableRow> rows;
  for (const auto& item : doc) {
    TableRow r;
    r.table = item.at("table").get<std::string>();
    r.row = item.at("row").get<int>();
    auto d = parse_algebra_name(item.at("D").get<std::string>());
    if (!d) throw std::invalid_argument("manifest: unknown algebra " +
                                        item.at("D").get<std::string>());
    r.d = *d;
    if (item.contains("involution")) r.involution = item["involution"].get<std::string>();
    if (item.contains("parity")) r.form_parity = item["parity"].get<int>();
    r.shape_u = item.at("shape_u").get<std::vector<std::size_t>>();
    r.shape_w = item.at("shape_w").get<std::vector<std::size_t>>();
    if (item.contains("label")) r.label = item["label"].get<std::string>();
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string manifest_to_json(const std::vector<TableRow>& rows) {
  json doc = json::array();
  for (const auto& r : rows) {
    json item;
    item["table"] = r.table;
    item["row"] = r.row;
    item["D"] = algebra_name_str(r.d);
    if (!r.involution.empty()) item["involution"] = r.involution;
    if (!r.is_type_two()) item["parity"] = r.form_parity;
    item["shape_u"] = r.shape_u;
    item["shape_w"] = r.shape_w;
    item["label"] = r.label;
    doc.push_back(std::move(item));
  }
  return doc.dump(2);
}

DualPairInstance<Rational> build_row_real(const TableRow& row) {
  if (row.is_complex()) throw std::invalid_argument("build_row_real: complex row");
  auto alg = make_algebra<Rational>(row.d);
  if (row.is_type_two()) return build_type_two_row(alg, row.shape_u, row.shape_w, row.label);
  return build_type_one_row(alg, row.involution, row.form_parity, row.shape_u, row.shape_w,
                            row.label);
}

DualPairInstance<Gaussian> build_row_complex(const TableRow& row) {
  if (!row.is_complex()) throw std::invalid_argument("build_row_complex: real row");
  auto alg = make_algebra_complex(row.d);
  if (row.is_type_two()) return build_type_two_row(alg, row.shape_u, row.shape_w, row.label);
  return build_type_one_row(alg, row.involution, row.form_parity, row.shape_u, row.shape_w,
                            row.label);
}

}  // namespace spodual
