// Command-line front end: constructs division superalgebras and Lie
// superalgebra families, verifies the dual-pair tables, and runs the
// Weyl-Clifford invariant checks. All reports are JSON with exact scalars.
//
// Exit codes: 0 = all checks pass, 1 = mathematical finding (an inequality
// or mismatch), 2 = usage or resource error.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>

#include "spodual/families.hpp"
#include "spodual/invariants.hpp"
#include "spodual/serialize.hpp"
#include "spodual/tables.hpp"

using namespace spodual;
using nlohmann::json;

namespace {

constexpr const char* kSchemaTag = "spodual-report-v1";

struct Output {
  std::string path;
  bool timing = false;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  int emit(const std::string& command, json payload, bool pass, int fail_code = 1) {
    json report;
    report["schema"] = kSchemaTag;
    report["command"] = command;
    report["results"] = std::move(payload);
    report["pass"] = pass;
    if (timing)
      report["runtime_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
    std::string text = report.dump(2);
    std::cout << text << "\n";
    std::string dest = path;
    if (dest.empty()) {
      if (const char* dir = std::getenv("SPODUAL_OUTPUT_DIR")) {
        dest = std::string(dir) + "/report.json";
      }
    }
    if (!dest.empty()) {
      std::ofstream f(dest);
      f << text << "\n";
    }
    return pass ? 0 : fail_code;
  }
};

json pair_report_json(const TableRow& row, const PairReport& rep) {
  json j;
  j["table"] = row.table;
  j["row"] = row.row;
  j["label"] = row.label;
  j["pair_type"] = row.is_type_two() ? "II" : "I";
  j["dims"] = {{"g", {rep.dim_g.first, rep.dim_g.second}},
               {"g_prime", {rep.dim_gprime.first, rep.dim_gprime.second}},
               {"C_g", {rep.dim_cg.first, rep.dim_cg.second}},
               {"C_g_prime", {rep.dim_cgprime.first, rep.dim_cgprime.second}},
               {"spo", rep.dim_spo}};
  j["brackets_vanish"] = rep.brackets_vanish;
  j["centralizer_ok"] = rep.centralizer_g_ok && rep.centralizer_gprime_ok;
  j["double_commutant_ok"] = rep.double_commutant_ok;
  j["pass"] = rep.all_ok();
  return j;
}

PairReport verify_row(const TableRow& row) {
  if (row.is_complex()) return verify_dual_pair(build_row_complex(row));
  return verify_dual_pair(build_row_real(row));
}

std::optional<TableRow> find_row(const std::vector<TableRow>& rows, const std::string& table,
                                 int index) {
  for (const auto& r : rows)
    if (r.table == table && r.row == index) return r;
  return std::nullopt;
}

std::vector<std::size_t> parse_shape(const std::string& s) {
  std::vector<std::size_t> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) out.push_back(std::stoul(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::stoul(cur));
  return out;
}

// Applies the row override "a,b;p,q" to shape_u / shape_w.
void apply_shape_override(TableRow& row, const std::string& text) {
  auto semi = text.find(';');
  if (semi == std::string::npos)
    throw std::invalid_argument("--shape expects \"u-shape;w-shape\"");
  row.shape_u = parse_shape(text.substr(0, semi));
  row.shape_w = parse_shape(text.substr(semi + 1));
}

json invariant_report_json(const InvariantReport& rep) {
  json per = json::array();
  for (const auto& l : rep.per_degree)
    per.push_back({{"d", l.degree},
                   {"dim_invariants", l.dim_invariants},
                   {"dim_generated", l.dim_generated},
                   {"equal", l.equal}});
  json findings = json::array();
  for (const auto& l : rep.per_degree)
    if (!l.equal)
      findings.push_back("degree " + std::to_string(l.degree) + ": invariants (" +
                         std::to_string(l.dim_invariants) + ") != generated (" +
                         std::to_string(l.dim_generated) + ")");
  return json{{"per_degree", per}, {"findings", findings}};
}

// Builds the O-factor reflection representatives a Type I row ships with:
// diag(-1,1,...,1) on the orthogonal block of each member that has one.
template <class S>
std::vector<GroupElement<S>> row_component_reps(const TableRow& row) {
  std::vector<GroupElement<S>> reps;
  if (row.is_type_two()) return reps;  // GL / Q factors: none shipped
  auto alg = [&] {
    if constexpr (scalar_traits<S>::is_rational)
      return make_algebra<S>(row.d);
    else
      return make_algebra_complex(row.d);
  }();
  // the orthogonal factor of gamma_u is its symmetric block: for the (triv, -1)
  // forms that is the odd part of U; flip the first odd generator
  if (row.involution != "triv") return reps;
  Superinvolution<S> iota;
  for (const auto& iv : superinvolutions(alg))
    if (iv.tag == row.involution) iota = iv;
  auto gamma_u = standard_form<S>(alg, iota, -1, row.form_parity, ModuleSide::Left, row.shape_u);
  auto iota_w = compose_delta(iota);
  iota_w.tag = row.involution;
  auto gamma_w = standard_form<S>(alg, iota_w, +1, row.form_parity, ModuleSide::Right, row.shape_w);
  auto ts = tensor_form(gamma_w, gamma_u);
  std::size_t first_odd_u = gamma_u.module.rank();
  for (std::size_t c = 0; c < gamma_u.module.rank(); ++c)
    if (gamma_u.module.gen_parities[c] == 1) { first_odd_u = c; break; }
  if (first_odd_u == gamma_u.module.rank()) return reps;
  Mat<S> refl(ts.triples.size(), ts.triples.size());
  for (std::size_t t = 0; t < ts.triples.size(); ++t) {
    auto [a, k, c] = ts.triples[t];
    refl(t, t) = c == first_odd_u ? -scalar_traits<S>::one() : scalar_traits<S>::one();
  }
  reps.push_back(GroupElement<S>{std::move(refl), "O-reflection"});
  return reps;
}

InvariantReport run_double_commutant(const TableRow& row, std::size_t degree, unsigned jobs) {
  if (row.is_complex()) {
    auto inst = build_row_complex(row);
    return double_commutant_check(inst, row_component_reps<Gaussian>(row), degree, jobs);
  }
  auto inst = build_row_real(row);
  auto reps_r = row_component_reps<Rational>(row);
  std::vector<GroupElement<Gaussian>> reps;
  for (const auto& r : reps_r) reps.push_back(complexify(r));
  return double_commutant_check(complexify(inst), reps, degree, jobs);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spodual: dual pairs in orthosymplectic Lie superalgebras"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Output out;
  app.add_option("--output", out.path, "write the JSON report to this file");
  app.add_flag("--timing", out.timing, "include runtime_ms in the report");
  unsigned jobs = 1;
  app.add_option("--jobs", jobs, "worker threads for row-level parallelism")
      ->check(CLI::Range(1u, 64u));
  std::size_t guard = 20000;
  app.add_option("--guard", guard, "resource guard (max monomials)")->check(CLI::PositiveNumber);

  auto* list_algebras = app.add_subcommand("list-algebras", "the ten division superalgebras");
  bool list_full = false;
  list_algebras->add_flag("--full", list_full, "emit structure-constant tables");

  auto* realize_cmd = app.add_subcommand("realize", "realize a Lie superalgebra family");
  std::string family, field = "R", params_text;
  realize_cmd->add_option("--family", family, "family tag (gl, q, qbar, p, pbar, p-star, osp, spo, u, spo-star, osp-star)")->required();
  realize_cmd->add_option("--params", params_text, "comma-separated parameters")->required();
  realize_cmd->add_option("--field", field, "R, C or H");

  auto* crosscheck_cmd = app.add_subcommand("crosscheck", "realize() vs the gl_D / g_of_form route");
  crosscheck_cmd->add_option("--family", family, "family tag")->required();
  crosscheck_cmd->add_option("--params", params_text, "comma-separated parameters")->required();
  crosscheck_cmd->add_option("--field", field, "R, C or H");

  std::string table = "I", shape_override, manifest_path;
  int row_index = 1;
  std::size_t degree = 4;

  auto* verify_pair = app.add_subcommand("verify-pair", "verify one table row");
  verify_pair->add_option("--table", table, "I, IC, II or IIC")->required();
  verify_pair->add_option("--row", row_index, "row number")->required();
  verify_pair->add_option("--shape", shape_override, "override \"u-shape;w-shape\"");
  verify_pair->add_option("--manifest", manifest_path, "row manifest JSON file");

  auto* verify_tables = app.add_subcommand("verify-tables", "verify every table row");
  bool minimal = false;
  verify_tables->add_flag("--minimal", minimal, "use the built-in minimal-shape corpus");
  verify_tables->add_option("--manifest", manifest_path, "row manifest JSON file");

  auto* commutant_cmd = app.add_subcommand("commutant", "supercommutants of a table row");
  commutant_cmd->add_option("--table", table, "I, IC, II or IIC")->required();
  commutant_cmd->add_option("--row", row_index, "row number")->required();
  commutant_cmd->add_option("--shape", shape_override, "override \"u-shape;w-shape\"");
  commutant_cmd->add_option("--manifest", manifest_path, "row manifest JSON file");

  auto* wc_inv = app.add_subcommand("wc-invariants", "G-invariants of the Weyl-Clifford algebra");
  wc_inv->add_option("--table", table, "I, IC, II or IIC")->required();
  wc_inv->add_option("--row", row_index, "row number")->required();
  wc_inv->add_option("--max-degree", degree, "degree bound");
  wc_inv->add_option("--shape", shape_override, "override \"u-shape;w-shape\"");
  wc_inv->add_option("--manifest", manifest_path, "row manifest JSON file");

  auto* dc = app.add_subcommand("double-commutant", "WC^G vs <beta(g')> per degree");
  dc->add_option("--table", table, "I, IC, II or IIC")->required();
  dc->add_option("--row", row_index, "row number")->required();
  dc->add_option("--max-degree", degree, "degree bound");
  dc->add_option("--shape", shape_override, "override \"u-shape;w-shape\"");
  dc->add_option("--manifest", manifest_path, "row manifest JSON file");

  auto* howe_cmd = app.add_subcommand("howe", "Howe duality for (SpO(2n|1), OSp(2k|2l))");
  std::size_t hn = 1, hk = 1, hl = 0;
  howe_cmd->add_option("--n", hn, "n")->required();
  howe_cmd->add_option("--k", hk, "k")->required();
  howe_cmd->add_option("--l", hl, "l");
  howe_cmd->add_option("--max-degree", degree, "degree bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  auto load_rows = [&]() {
    if (!manifest_path.empty()) {
      std::ifstream f(manifest_path);
      if (!f) throw std::runtime_error("cannot open manifest " + manifest_path);
      std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
      return parse_manifest(text);
    }
    return builtin_table_rows();
  };

  try {
    if (list_algebras->parsed()) {
      json items = json::array();
      for (auto name :
           {AlgebraName::Cl0R, AlgebraName::Cl1R, AlgebraName::Cl2R, AlgebraName::Cl3R,
            AlgebraName::Cl4R, AlgebraName::Cl5R, AlgebraName::Cl6R, AlgebraName::Cl7R,
            AlgebraName::Cl0C, AlgebraName::Cl1C}) {
        auto a = make_algebra<Rational>(name);
        json j;
        j["name"] = a->display();
        j["dimension"] = a->dim();
        std::size_t odd = 0;
        for (std::size_t i = 0; i < a->dim(); ++i) odd += a->parity(i);
        j["graded_dimension"] = {a->dim() - odd, odd};
        j["involutions"] = json::array();
        for (const auto& iv : superinvolutions(a)) j["involutions"].push_back(iv.tag);
        if (list_full) j["algebra"] = to_json(*a);
        items.push_back(std::move(j));
      }
      return out.emit("list-algebras", json{{"algebras", items}}, true);
    }

    if (realize_cmd->parsed() || crosscheck_cmd->parsed()) {
      auto kind = parse_family_kind(family);
      if (!kind) {
        std::cerr << "unknown family '" << family << "'\n";
        return 2;
      }
      FamilyTag tag{*kind, parse_shape(params_text), field.empty() ? 'R' : field[0]};
      if (tag.kind == FamilyKind::Q && tag.params.size() == 2) tag.kind = FamilyKind::QSig;
      validate_family(tag);
      if (realize_cmd->parsed()) {
        json j;
        j["family"] = tag.str();
        auto expected = family_expected_dim(tag);
        j["expected_dim"] = {expected.first, expected.second};
        if (family_is_complex(tag)) {
          auto g = realize_complex(tag);
          j["graded_dim"] = {g.graded_dim().first, g.graded_dim().second};
          j["span"] = to_json(g);
        } else {
          auto g = realize_real(tag);
          j["graded_dim"] = {g.graded_dim().first, g.graded_dim().second};
          j["span"] = to_json(g);
        }
        return out.emit("realize", std::move(j), true);
      }
      auto rep = crosscheck(tag);
      json j;
      j["family"] = tag.str();
      j["dim_realize"] = {rep.dim_realize.first, rep.dim_realize.second};
      j["dim_reference"] = {rep.dim_reference.first, rep.dim_reference.second};
      j["reference_route"] = rep.reference_route;
      j["spans_equal"] = rep.spans_equal;
      j["bracket_closed"] = rep.bracket_closed_ok;
      return out.emit("crosscheck", std::move(j), rep.spans_equal && rep.bracket_closed_ok);
    }

    if (verify_pair->parsed() || commutant_cmd->parsed()) {
      auto rows = load_rows();
      auto row = find_row(rows, table, row_index);
      if (!row) {
        std::cerr << "no row " << table << ":" << row_index << "\n";
        return 2;
      }
      if (!shape_override.empty()) apply_shape_override(*row, shape_override);
      auto rep = verify_row(*row);
      json j = pair_report_json(*row, rep);
      if (commutant_cmd->parsed()) {
        // emit the supercommutant spans themselves
        if (row->is_complex()) {
          auto inst = build_row_complex(*row);
          auto ambient = spo_ambient(inst.e);
          j["C_g_span"] = to_json(supercommutant(inst.g, ambient));
          j["C_g_prime_span"] = to_json(supercommutant(inst.g_prime, ambient));
        } else {
          auto inst = build_row_real(*row);
          auto ambient = spo_ambient(inst.e);
          j["C_g_span"] = to_json(supercommutant(inst.g, ambient));
          j["C_g_prime_span"] = to_json(supercommutant(inst.g_prime, ambient));
        }
        return out.emit("commutant", std::move(j), true);
      }
      return out.emit("verify-pair", std::move(j), rep.all_ok());
    }

    if (verify_tables->parsed()) {
      auto rows = load_rows();
      (void)minimal;  // the built-in corpus is the minimal one
      std::vector<std::pair<std::string, json>> results(rows.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= rows.size()) return;
          auto rep = verify_row(rows[i]);
          results[i] = {rows[i].key(), pair_report_json(rows[i], rep)};
        }
      };
      std::vector<std::thread> pool;
      for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();
      // deterministic merge by sorted key
      std::sort(results.begin(), results.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      json items = json::array();
      bool pass = true;
      std::size_t failures = 0;
      for (auto& [key, j] : results) {
        pass = pass && j["pass"].get<bool>();
        failures += !j["pass"].get<bool>();
        items.push_back(std::move(j));
      }
      json payload{{"rows", items},
                   {"total", rows.size()},
                   {"failures", failures}};
      return out.emit("verify-tables", std::move(payload), pass);
    }

    if (wc_inv->parsed() || dc->parsed()) {
      auto rows = load_rows();
      auto row = find_row(rows, table, row_index);
      if (!row) {
        std::cerr << "no row " << table << ":" << row_index << "\n";
        return 2;
      }
      if (!shape_override.empty()) apply_shape_override(*row, shape_override);
      // resource guard
      {
        auto count_monos = [&](std::size_t ne, std::size_t no) {
          return monomials_up_to(ne, no, degree).size();
        };
        std::size_t ne, no;
        if (row->is_complex()) {
          auto inst = build_row_complex(*row);
          ne = inst.e.space.dim_even();
          no = inst.e.space.dim_odd();
        } else {
          auto inst = build_row_real(*row);
          ne = inst.e.space.dim_even();
          no = inst.e.space.dim_odd();
        }
        if (count_monos(ne, no) > guard) {
          std::cerr << "resource guard exceeded (" << count_monos(ne, no) << " > " << guard
                    << " monomials); refusing\n";
          return 2;
        }
      }
      auto rep = run_double_commutant(*row, degree, jobs);
      json j = invariant_report_json(rep);
      j["table"] = row->table;
      j["row"] = row->row;
      j["label"] = row->label;
      const char* cmd = dc->parsed() ? "double-commutant" : "wc-invariants";
      return out.emit(cmd, std::move(j), rep.all_equal);
    }

    if (howe_cmd->parsed()) {
      HoweReport rep;
      try {
        rep = howe_decompose(hn, hk, hl, degree, guard);
      } catch (const std::runtime_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
      }
      json per = json::array();
      for (const auto& l : rep.per_degree)
        per.push_back({{"d", l.degree},
                       {"dim_Sd", l.dim_sd},
                       {"dim_commutant", l.dim_commutant},
                       {"dim_generated", l.dim_generated},
                       {"equal", l.commutant_matches},
                       {"g_invariant", l.invariant_under_g}});
      json findings = json::array();
      if (!rep.fingerprints_distinct) findings.push_back("isotypic fingerprints collide");
      for (const auto& l : rep.per_degree)
        if (!l.commutant_matches)
          findings.push_back("degree " + std::to_string(l.degree) + ": commutant mismatch");
      json payload{{"n", rep.n},
                   {"k", rep.k},
                   {"l", rep.l},
                   {"per_degree", per},
                   {"fingerprints_distinct", rep.fingerprints_distinct},
                   {"findings", findings}};
      return out.emit("howe", std::move(payload), rep.all_ok);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
