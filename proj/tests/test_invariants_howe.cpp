#include <doctest.h>

#include "spodual/invariants.hpp"
#include "spodual/tables.hpp"

using namespace spodual;
using R = Rational;
using G = Gaussian;

namespace {

std::vector<std::vector<G>> coords_of(const std::vector<WCElement<G>>& xs,
                                      const std::map<WCMonomial, std::size_t>& index) {
  std::vector<std::vector<G>> rows;
  for (const auto& x : xs) {
    std::vector<G> v(index.size(), G(0));
    for (const auto& [m, c] : x.terms()) v[index.at(m)] = c;
    rows.push_back(std::move(v));
  }
  return rows;
}

}  // namespace

TEST_SUITE_BEGIN("invariants_howe");

TEST_CASE("degree zero invariants are the scalars") {
  auto inst = complexify(build_row_real(builtin_table_rows()[14]));  // q(1,R)
  auto alg = WCAlgebra<G>::make(inst.e.space, inst.e.gram);
  HCPair<G> pair{inst.g, {}};
  auto inv = wc_invariants(pair, alg, 0);
  CHECK(inv.size() == 1);
  CHECK(inv[0].degree() == 0);
}

TEST_CASE("the generated span sits inside the invariants at degree two") {
  auto inst = complexify(build_row_real(builtin_table_rows()[14]));
  auto alg = WCAlgebra<G>::make(inst.e.space, inst.e.gram);
  HCPair<G> pair{inst.g, {}};
  auto inv = wc_invariants(pair, alg, 2);
  auto gen = generated_span(inst.g_prime, alg, 2);
  CHECK(gen.size() >= 1 + inst.g_prime.dim());
  auto monos = monomials_up_to(alg->n_even, alg->n_odd, 2);
  std::map<WCMonomial, std::size_t> index;
  for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
  auto inv_ech = echelonize(coords_of(inv, index), monos.size());
  for (const auto& row : coords_of(gen, index)) CHECK(in_span(inv_ech, row));
}

TEST_CASE("invariants are filtration compatible") {
  auto inst = complexify(build_row_real(builtin_table_rows()[14]));
  auto alg = WCAlgebra<G>::make(inst.e.space, inst.e.gram);
  HCPair<G> pair{inst.g, {}};
  auto monos = monomials_up_to(alg->n_even, alg->n_odd, 3);
  std::map<WCMonomial, std::size_t> index;
  for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
  auto inv3 = wc_invariants(pair, alg, 3);
  auto inv2 = wc_invariants(pair, alg, 2);
  // members of span(inv3) of degree <= 2 coincide with span(inv2):
  // intersect span(inv3) with the low-degree coordinate subspace
  std::vector<std::size_t> high;
  for (std::size_t i = 0; i < monos.size(); ++i)
    if (monos[i].degree() > 2) high.push_back(i);
  auto rows3 = coords_of(inv3, index);
  Mat<G> highpart(rows3.size(), high.size());
  for (std::size_t r = 0; r < rows3.size(); ++r)
    for (std::size_t c = 0; c < high.size(); ++c) highpart(r, c) = rows3[r][high[c]];
  Mat<G> hp_t(highpart.cols(), highpart.rows());
  for (std::size_t i = 0; i < highpart.rows(); ++i)
    for (std::size_t j = 0; j < highpart.cols(); ++j) hp_t(j, i) = highpart(i, j);
  auto combos = nullspace(hp_t);
  std::vector<std::vector<G>> low_members;
  for (const auto& cb : combos) {
    std::vector<G> v(monos.size(), G(0));
    for (std::size_t r = 0; r < rows3.size(); ++r)
      if (!cb[r].is_zero())
        for (std::size_t c = 0; c < monos.size(); ++c) v[c] += rows3[r][c] * cb[r];
    low_members.push_back(std::move(v));
  }
  CHECK(span_equal(low_members, coords_of(inv2, index), monos.size()));
}

TEST_CASE("symbols of top-degree invariants are independent modulo lower degree") {
  auto inst = complexify(build_row_real(builtin_table_rows()[14]));
  auto alg = WCAlgebra<G>::make(inst.e.space, inst.e.gram);
  HCPair<G> pair{inst.g, {}};
  auto inv3 = wc_invariants(pair, alg, 3);
  auto inv2 = wc_invariants(pair, alg, 2);
  // the symbol map sends WC_3^G onto its degree-3 graded piece with kernel WC_2^G
  auto monos = monomials_up_to(alg->n_even, alg->n_odd, 3);
  std::map<WCMonomial, std::size_t> index;
  for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
  std::vector<std::vector<G>> tops;
  for (const auto& x : inv3) {
    auto top = x.graded_part(3);
    std::vector<G> v(monos.size(), G(0));
    for (const auto& [m, c] : top.terms()) v[index.at(m)] = c;
    tops.push_back(std::move(v));
  }
  std::size_t top_rank = echelonize(tops, monos.size()).pivots.size();
  CHECK(inv3.size() == inv2.size() + top_rank);
}

TEST_CASE("double commutant at desk scale for the q(1,R) pair") {
  auto inst = complexify(build_row_real(builtin_table_rows()[14]));
  auto rep = double_commutant_check(inst, {}, 3);
  CHECK(rep.all_equal);
  for (const auto& l : rep.per_degree) CHECK(l.generated_inside_invariants);
  // nothing new appears at the odd degree: the saturation reports it
  CHECK(rep.per_degree[3].dim_generated == rep.per_degree[2].dim_generated);
  CHECK(rep.per_degree[3].dim_invariants == rep.per_degree[2].dim_invariants);
}

TEST_CASE("group-vs-algebra gap at the Pfaffian configuration") {
  // V = C^{0|2} with a symmetric form, W = C^{2|0}: E = (0|4)
  auto c1 = make_algebra_complex(AlgebraName::Cl0C);
  auto ivs = superinvolutions(c1);
  auto gamma_u = standard_form<G>(c1, ivs[0], -1, 0, ModuleSide::Left, {0, 2, 0});
  auto gamma_w = standard_form<G>(c1, ivs[0], +1, 0, ModuleSide::Right, {2, 0, 0});
  auto inst = build_type_I(gamma_u, gamma_w, "pfaffian window");
  auto ts = tensor_form(gamma_w, gamma_u);
  Mat<G> refl(ts.triples.size(), ts.triples.size());
  for (std::size_t t = 0; t < ts.triples.size(); ++t) {
    auto [a, k, c] = ts.triples[t];
    refl(t, t) = c == 0 ? -G(1) : G(1);
  }
  REQUIRE(preserves_form(inst.e, refl));
  auto alg = WCAlgebra<G>::make(inst.e.space, inst.e.gram);
  HCPair<G> group{inst.g, {GroupElement<G>{refl, "refl"}}};
  HCPair<G> algebra_only{inst.g, {}};
  auto with_group = wc_invariants(group, alg, 2);
  auto without = wc_invariants(algebra_only, alg, 2);
  CHECK(without.size() > with_group.size());
  // exhibit a reflection-odd invariant: some member of the gap changes sign
  bool found_odd = false;
  for (const auto& x : without) {
    auto moved = group_act(GroupElement<G>{refl, "refl"}, x);
    if (moved == -x && !x.is_zero()) found_odd = true;
  }
  CHECK(found_odd);
}

TEST_CASE("real-case reduction through complexification") {
  SUBCASE("gl(1|1,R) row: complexified invariants equal the direct complex row") {
    auto real_inst = build_row_real(builtin_table_rows()[11]);   // gl(1|1,R)^2
    auto cplx_inst = build_row_complex(builtin_table_rows()[18]);  // gl(1|1,C)^2 (IIC)
    auto a = complexify(real_inst);
    REQUIRE(a.e.space.parities() == cplx_inst.e.space.parities());
    REQUIRE(a.e.gram == cplx_inst.e.gram);
    auto alg = WCAlgebra<G>::make(a.e.space, a.e.gram);
    auto monos = monomials_up_to(alg->n_even, alg->n_odd, 2);
    std::map<WCMonomial, std::size_t> index;
    for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
    for (std::size_t d = 0; d <= 2; ++d) {
      auto ia = wc_invariants(HCPair<G>{a.g, {}}, alg, d);
      auto ib = wc_invariants(HCPair<G>{cplx_inst.g, {}}, alg, d);
      CHECK(span_equal(coords_of(ia, index), coords_of(ib, index), monos.size()));
    }
  }
  SUBCASE("q(1,R) complexified has the per-degree dimensions of q(1,C)") {
    auto real_inst = complexify(build_row_real(builtin_table_rows()[14]));
    auto cplx_inst = build_row_complex(builtin_table_rows()[19]);
    auto rep_r = double_commutant_check(real_inst, {}, 3);
    auto rep_c = double_commutant_check(cplx_inst, {}, 3);
    REQUIRE(rep_r.per_degree.size() == rep_c.per_degree.size());
    for (std::size_t i = 0; i < rep_r.per_degree.size(); ++i) {
      CHECK(rep_r.per_degree[i].dim_invariants == rep_c.per_degree[i].dim_invariants);
      CHECK(rep_r.per_degree[i].dim_generated == rep_c.per_degree[i].dim_generated);
    }
  }
}

TEST_CASE("howe decomposition at (1,1,0) up to degree 2") {
  auto rep = howe_decompose(1, 1, 0, 2);
  CHECK(rep.all_ok);
  CHECK(rep.fingerprints_distinct);
  for (const auto& l : rep.per_degree) {
    CHECK(l.dim_sd == 2 * l.degree + 1);
    CHECK(l.dim_commutant == 1);  // each S^d is irreducible
    CHECK(l.commutant_matches);
    CHECK(l.invariant_under_g);
  }
}

TEST_CASE("howe decomposition handles a genuinely super V (l > 0)") {
  // at (1,1,1) the degree blocks are no longer single isotypic components:
  // S^1(V) = U + Pi(U) with a four-dimensional commutant
  auto rep = howe_decompose(1, 1, 1, 1);
  CHECK(rep.all_ok);
  REQUIRE(rep.per_degree.size() == 2);
  CHECK(rep.per_degree[1].dim_sd == 6);
  CHECK(rep.per_degree[1].dim_commutant == 4);
  CHECK(rep.per_degree[1].dim_generated == 4);
  CHECK(rep.per_degree[1].commutant_matches);
}

TEST_CASE("howe resource guard refuses oversized requests") {
  CHECK_THROWS_AS(howe_decompose(1, 1, 0, 3, 5), std::runtime_error);
}

TEST_SUITE_END();
