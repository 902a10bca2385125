#pragma once

#include <string>
#include <variant>
#include <vector>

#include "spodual/dual_pairs.hpp"

namespace spodual {

/// One row of the classification tables at a concrete shape. Type I rows
/// carry the (D, iota, parity, shapes) data feeding the two canonical forms;
/// Type II rows carry the module shapes only.
struct TableRow {
  std::string table;  // "I", "IC", "II", "IIC"
  int row = 0;
  AlgebraName d = AlgebraName::Cl0R;
  std::string involution;            // Type I: tag of iota (gamma side)
  Parity form_parity = 0;            // Type I: |gamma|
  std::vector<std::size_t> shape_u;  // Type I: standard_form shape; Type II: {even, odd} ranks
  std::vector<std::size_t> shape_w;
  std::string label;

  bool is_complex() const { return table == "IC" || table == "IIC"; }
  bool is_type_two() const { return table == "II" || table == "IIC"; }
  std::string key() const { return table + ":" + std::to_string(row); }
};

/// The built-in minimal-shape corpus covering every row of the four tables.
const std::vector<TableRow>& builtin_table_rows();

/// Parses rows from a JSON manifest string (same schema the CLI reads).
std::vector<TableRow> parse_manifest(const std::string& json_text);
std::string manifest_to_json(const std::vector<TableRow>& rows);

/// Builds the dual pair instance for a row.
DualPairInstance<Rational> build_row_real(const TableRow& row);
DualPairInstance<Gaussian> build_row_complex(const TableRow& row);

/// Shared constructor fragments used by the CLI and tests.
template <class S>
DualPairInstance<S> build_type_one_row(const AlgebraRef<S>& alg, const std::string& inv_tag,
                                       Parity parity, const std::vector<std::size_t>& shape_u,
                                       const std::vector<std::size_t>& shape_w,
                                       const std::string& label) {
  Superinvolution<S> iota_u, iota_w;
  bool found = false;
  for (const auto& iv : superinvolutions(alg))
    if (iv.tag == inv_tag) {
      iota_u = iv;
      found = true;
    }
  if (!found) throw std::invalid_argument("table row: unknown involution " + inv_tag);
  // gamma' lives over iota o delta; for purely even D that is iota again
  iota_w = compose_delta(iota_u);
  bool d_has_odd = false;
  for (std::size_t i = 0; i < alg->dim(); ++i) d_has_odd |= alg->parity(i) == 1;
  if (!d_has_odd) iota_w.tag = iota_u.tag;
  if (d_has_odd) {
    // Cl1(C): iota1 o delta = iota2
    for (const auto& iv : superinvolutions(alg))
      if (iv.mat == iota_w.mat) iota_w = iv;
  }
  auto gamma_u = standard_form<S>(alg, iota_u, -1, parity, ModuleSide::Left, shape_u);
  auto gamma_w = standard_form<S>(alg, iota_w, +1, parity, ModuleSide::Right, shape_w);
  return build_type_I(gamma_u, gamma_w, label);
}

template <class S>
DualPairInstance<S> build_type_two_row(const AlgebraRef<S>& alg,
                                       const std::vector<std::size_t>& shape_u,
                                       const std::vector<std::size_t>& shape_w,
                                       const std::string& label) {
  auto u = DModule<S>::left(alg, shape_u[0], shape_u.size() > 1 ? shape_u[1] : 0);
  auto w = DModule<S>::right(alg, shape_w[0], shape_w.size() > 1 ? shape_w[1] : 0);
  return build_type_II(u, w, label);
}

}  // namespace spodual
