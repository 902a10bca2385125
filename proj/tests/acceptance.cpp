// Acceptance suite: one pass/fail line per criterion, exact arithmetic
// throughout, stated runtime budgets enforced. Exit code 0 iff all pass.

#include <chrono>
#include <cstring>
#include <iostream>
#include <random>
#include <vector>

#include "spodual/families.hpp"
#include "spodual/invariants.hpp"
#include "spodual/tables.hpp"

using namespace spodual;
using R = Rational;
using G = Gaussian;

namespace {

struct Gate {
  int failures = 0;
  unsigned seed = 20240801;

  bool run(const char* name, double budget_seconds, bool (*fn)(Gate&)) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string why;
    try {
      ok = fn(*this);
    } catch (const std::exception& e) {
      why = e.what();
      ok = false;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = secs < budget_seconds;
    bool pass = ok && in_budget;
    std::printf("%s  %s (%.2fs, budget %.0fs)%s%s\n", pass ? "PASS" : "FAIL", name, secs,
                budget_seconds, why.empty() ? "" : " -- ", why.c_str());
    if (!pass) ++failures;
    return pass;
  }
};

const std::vector<AlgebraName> kAll = {
    AlgebraName::Cl0R, AlgebraName::Cl1R, AlgebraName::Cl2R, AlgebraName::Cl3R,
    AlgebraName::Cl4R, AlgebraName::Cl5R, AlgebraName::Cl6R, AlgebraName::Cl7R,
    AlgebraName::Cl0C, AlgebraName::Cl1C};

// 1. Division superalgebra suite.
bool criterion1(Gate&) {
  for (auto name : kAll) {
    auto a = make_algebra<R>(name);
    if (!a->table_associative() || !a->unit_two_sided() || !a->parity_additive()) return false;
    for (std::size_t i = 0; i < a->dim(); ++i) {
      auto x = DElement<R>::basis(a, i);
      if (!(inv(x) * x == DElement<R>::unit(a))) return false;
    }
    for (const auto& iv : superinvolutions(a))
      if (!iv.is_valid()) return false;
  }
  const AlgebraName ks[] = {AlgebraName::Cl1R, AlgebraName::Cl2R, AlgebraName::Cl3R,
                            AlgebraName::Cl4R, AlgebraName::Cl5R, AlgebraName::Cl6R,
                            AlgebraName::Cl7R};
  for (int k = 1; k <= 7; ++k)
    if (!find_signed_isomorphism(sop(make_algebra<R>(ks[k - 1])), make_algebra<R>(ks[8 - k - 1])))
      return false;
  return true;
}

// 2. Cross-check of all fourteen family realizations.
bool criterion2(Gate&) {
  const FamilyTag tags[] = {
      {FamilyKind::GL, {1, 1}, 'R'},      {FamilyKind::Q, {1}, 'R'},
      {FamilyKind::QBar, {1}, 'R'},       {FamilyKind::P, {1}, 'R'},
      {FamilyKind::PBar, {1}, 'R'},       {FamilyKind::PStar, {1}, 'R'},
      {FamilyKind::OSp, {1, 1, 2}, 'R'},  {FamilyKind::SpO, {2, 1, 1}, 'R'},
      {FamilyKind::OSp, {1, 2}, 'C'},     {FamilyKind::SpO, {2, 1}, 'C'},
      {FamilyKind::U, {1, 0, 1, 0}, 'R'}, {FamilyKind::SpOStar, {1, 0, 1}, 'R'},
      {FamilyKind::OSpStar, {1, 1, 0}, 'R'}, {FamilyKind::QSig, {1, 0}, 'R'},
  };
  for (const auto& tag : tags) {
    auto rep = crosscheck(tag);
    if (!rep.spans_equal || !rep.bracket_closed_ok) {
      std::fprintf(stderr, "  crosscheck failed for %s\n", tag.str().c_str());
      return false;
    }
    if (family_expected_dim(tag) != rep.dim_realize) return false;
  }
  return true;
}

// 3. Classification regression over every table row at minimal shape.
bool criterion3(Gate&) {
  for (const auto& row : builtin_table_rows()) {
    PairReport rep = row.is_complex() ? verify_dual_pair(build_row_complex(row))
                                      : verify_dual_pair(build_row_real(row));
    if (!rep.all_ok()) {
      std::fprintf(stderr, "  row %s (%s) failed\n", row.key().c_str(), row.label.c_str());
      return false;
    }
  }
  return true;
}

// 4. Adjoint laws on >= 100 random homogeneous pairs per configuration.
bool criterion4(Gate& gate) {
  std::mt19937 rng(gate.seed);
  struct Config {
    AlgebraName name;
    const char* tag;
    int sign;
    Parity parity;
    ModuleSide side;
    std::vector<std::size_t> shape;
  };
  const Config configs[] = {
      {AlgebraName::Cl0R, "triv", +1, 0, ModuleSide::Right, {1, 1, 2}},
      {AlgebraName::Cl0R, "triv", -1, 0, ModuleSide::Left, {2, 1, 0}},
      {AlgebraName::Cl0R, "triv", +1, 1, ModuleSide::Right, {1}},
      {AlgebraName::Cl0R, "triv", -1, 1, ModuleSide::Left, {1}},
      {AlgebraName::Cl0C, "triv", +1, 0, ModuleSide::Right, {1, 0, 2}},
      {AlgebraName::Cl0C, "conj", +1, 0, ModuleSide::Right, {1, 0, 1, 0}},
      {AlgebraName::Cl0C, "conj", -1, 1, ModuleSide::Left, {1}},
      {AlgebraName::Cl4R, "conj", +1, 0, ModuleSide::Right, {1, 0, 1}},
      {AlgebraName::Cl4R, "conj", -1, 0, ModuleSide::Left, {1, 1, 0}},
      {AlgebraName::Cl4R, "conj", +1, 1, ModuleSide::Right, {1}},
      {AlgebraName::Cl1C, "iota1", -1, 0, ModuleSide::Left, {1, 1}},
      {AlgebraName::Cl1C, "iota2", +1, 0, ModuleSide::Right, {1, 1}},
  };
  for (const auto& cfg : configs) {
    auto alg = make_algebra<R>(cfg.name);
    Superinvolution<R> iv;
    bool found = false;
    for (const auto& candidate : superinvolutions(alg))
      if (candidate.tag == cfg.tag) {
        iv = candidate;
        found = true;
      }
    if (!found) return false;
    auto f = standard_form<R>(alg, iv, cfg.sign, cfg.parity, cfg.side, cfg.shape);
    auto rnd = [&](Parity p) {
      auto x = DSuperMatrix<R>::zero(f.module);
      for (std::size_t a = 0; a < f.module.rank(); ++a)
        for (std::size_t b = 0; b < f.module.rank(); ++b)
          for (std::size_t k = 0; k < alg->dim(); ++k)
            if ((f.module.gen_parities[a] + f.module.gen_parities[b] + alg->parity(k)) % 2 == p)
              x.entries[a][b].coords[k] = R(static_cast<long>(rng() % 5) - 2);
      return x;
    };
    for (int trial = 0; trial < 100; ++trial) {
      Parity ps = rng() % 2, pt = rng() % 2;
      auto s = rnd(ps), t = rnd(pt);
      if (!(adjoint(adjoint(t, f), f) == t)) return false;
      auto lhs = adjoint(s * t, f);
      auto rhs = adjoint(t, f) * adjoint(s, f);
      if ((ps * pt) % 2) rhs = -rhs;
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

// 5. Weyl-Clifford core.
bool criterion5(Gate& gate) {
  std::mt19937 rng(gate.seed + 1);
  auto split_e = [](std::size_t m2, std::size_t n) {
    std::vector<Parity> par(m2, 0);
    par.insert(par.end(), n, 1);
    Mat<R> g(m2 + n, m2 + n);
    for (std::size_t i = 0; i < m2 / 2; ++i) {
      g(i, m2 / 2 + i) = R(1);
      g(m2 / 2 + i, i) = R(-1);
    }
    for (std::size_t i = 0; i < n / 2; ++i) {
      g(m2 + i, m2 + n / 2 + i) = R(1);
      g(m2 + n / 2 + i, m2 + i) = R(1);
    }
    return BilinearSpace<R>(SuperSpace(par), g);
  };
  {
    auto e = split_e(2, 2);
    auto alg = WCAlgebra<R>::make(e.space, e.gram);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (!(wc_bracket(WCElement<R>::generator(alg, i), WCElement<R>::generator(alg, j)) ==
              WCElement<R>::scalar(alg, e.gram(i, j))))
          return false;
    auto monos = monomials_up_to(2, 2, 4);
    auto rnd = [&] {
      WCElement<R> x(alg);
      for (int t = 0; t < 3; ++t)
        x.add_term(monos[rng() % monos.size()], R(static_cast<long>(rng() % 7) - 3));
      return x;
    };
    for (int trial = 0; trial < 100; ++trial) {
      auto a = rnd(), b = rnd(), c = rnd();
      if (!(wc_mul(wc_mul(a, b), c) == wc_mul(a, wc_mul(b, c)))) return false;
    }
  }
  // beta bracket isomorphism up to E = (6|6)
  for (auto [m2, n] : {std::pair<std::size_t, std::size_t>{2, 2}, {4, 4}, {6, 6}}) {
    auto e = split_e(m2, n);
    auto alg = WCAlgebra<R>::make(e.space, e.gram);
    auto amb = spo_ambient(e);
    std::vector<WCElement<R>> bs;
    for (std::size_t i = 0; i < amb.dim(); ++i)
      bs.push_back(beta<R>(alg, amb.basis[i], amb.parities[i]));
    for (std::size_t i = 0; i < amb.dim(); ++i)
      for (std::size_t j = i; j < amb.dim(); ++j) {
        Mat<R> xy = amb.basis[i] * amb.basis[j];
        Mat<R> yx = amb.basis[j] * amb.basis[i];
        Mat<R> br = (amb.parities[i] * amb.parities[j]) % 2 ? xy + yx : xy - yx;
        auto rhs = beta<R>(alg, br, (amb.parities[i] + amb.parities[j]) % 2);
        if (!(wc_bracket(bs[i], bs[j]) == rhs)) return false;
      }
  }
  // Fock commutation identity as exact matrices
  {
    auto e = split_e(2, 2);
    auto alg = WCAlgebra<R>::make(e.space, e.gram);
    auto fock = FockBasis<R>::make(alg, e, {0, 2}, {1, 3}, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        auto mi = fock_act(WCElement<R>::generator(alg, i), fock);
        auto mj = fock_act(WCElement<R>::generator(alg, j), fock);
        auto rhs = fock_act(
            wc_bracket(WCElement<R>::generator(alg, i), WCElement<R>::generator(alg, j)), fock);
        Mat<R> lhs = (e.space.parity(i) * e.space.parity(j)) % 2 ? mi * mj + mj * mi
                                                                 : mi * mj - mj * mi;
        for (std::size_t c = 0; c < fock.degree_offset[3]; ++c)
          for (std::size_t r = 0; r < fock.dim(); ++r)
            if (!(lhs(r, c) == rhs(r, c))) return false;
      }
  }
  return true;
}

const TableRow& row_by_key(const std::string& table, int index) {
  for (const auto& r : builtin_table_rows())
    if (r.table == table && r.row == index) return r;
  throw std::logic_error("missing table row " + table + ":" + std::to_string(index));
}

// 6. Double commutant at desk scale for the three named instances.
bool run_dc(const DualPairInstance<G>& inst, const std::vector<GroupElement<G>>& reps,
            std::size_t d) {
  auto rep = double_commutant_check(inst, reps, d);
  if (!rep.all_equal) {
    for (const auto& l : rep.per_degree)
      std::fprintf(stderr, "  d=%zu inv %zu gen %zu\n", l.degree, l.dim_invariants,
                   l.dim_generated);
  }
  return rep.all_equal;
}

bool criterion6a(Gate&) {
  auto inst = complexify(build_row_real(row_by_key("II", 4)));  // q(1,R)^2
  return run_dc(inst, {}, 4);
}
bool criterion6b(Gate&) {
  auto inst = build_row_complex(row_by_key("IIC", 1));  // gl(1|1,C)^2
  return run_dc(inst, {}, 4);
}
bool criterion6c(Gate&) {
  // (spo(2|1), osp(2|0)) with the O(1) reflection of the SpO(2|1) member
  auto c1 = make_algebra_complex(AlgebraName::Cl0C);
  auto ivs = superinvolutions(c1);
  auto gamma_u = standard_form<G>(c1, ivs[0], -1, 0, ModuleSide::Left, {2, 1, 0});
  auto gamma_w = standard_form<G>(c1, ivs[0], +1, 0, ModuleSide::Right, {2, 0, 0}, true);
  auto inst = build_type_I(gamma_u, gamma_w, "(SpO(2|1), OSp(2|0))");
  auto ts = tensor_form(gamma_w, gamma_u);
  Mat<G> refl(ts.triples.size(), ts.triples.size());
  for (std::size_t t = 0; t < ts.triples.size(); ++t) {
    auto [a, k, c] = ts.triples[t];
    refl(t, t) = c == 2 ? -G(1) : G(1);
  }
  return run_dc(inst, {GroupElement<G>{refl, "O(1)"}}, 3);
}

// 7. Group-vs-algebra gap at the Pfaffian configuration.
bool criterion7(Gate&) {
  auto c1 = make_algebra_complex(AlgebraName::Cl0C);
  auto ivs = superinvolutions(c1);
  auto gamma_u = standard_form<G>(c1, ivs[0], -1, 0, ModuleSide::Left, {0, 2, 0});
  auto gamma_w = standard_form<G>(c1, ivs[0], +1, 0, ModuleSide::Right, {2, 0, 0});
  auto inst = build_type_I(gamma_u, gamma_w, "pfaffian");
  auto ts = tensor_form(gamma_w, gamma_u);
  Mat<G> refl(ts.triples.size(), ts.triples.size());
  for (std::size_t t = 0; t < ts.triples.size(); ++t) {
    auto [a, k, c] = ts.triples[t];
    refl(t, t) = c == 0 ? -G(1) : G(1);
  }
  auto alg = WCAlgebra<G>::make(inst.e.space, inst.e.gram);
  auto inv_group = wc_invariants(HCPair<G>{inst.g, {GroupElement<G>{refl, "r"}}}, alg, 2);
  auto inv_alg = wc_invariants(HCPair<G>{inst.g, {}}, alg, 2);
  return inv_alg.size() >= inv_group.size() + 1;
}

// 8. Howe duality at (1,1,0) through degree 3.
bool criterion8(Gate&) {
  auto rep = howe_decompose(1, 1, 0, 3);
  if (!rep.all_ok || !rep.fingerprints_distinct) return false;
  for (const auto& l : rep.per_degree)
    if (l.dim_sd != 2 * l.degree + 1 || !l.commutant_matches) return false;
  return true;
}

// 9. Real-case reduction: complexified real row vs the direct complex row.
bool criterion9(Gate&) {
  auto real_inst = complexify(build_row_real(row_by_key("II", 1)));  // gl(1|1,R)^2
  auto cplx_inst = build_row_complex(row_by_key("IIC", 1));               // gl(1|1,C)^2
  if (real_inst.e.space.parities() != cplx_inst.e.space.parities()) return false;
  if (!(real_inst.e.gram == cplx_inst.e.gram)) return false;
  auto alg = WCAlgebra<G>::make(real_inst.e.space, real_inst.e.gram);
  auto monos = monomials_up_to(alg->n_even, alg->n_odd, 3);
  std::map<WCMonomial, std::size_t> index;
  for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
  for (std::size_t d = 0; d <= 3; ++d) {
    auto ia = wc_invariants(HCPair<G>{real_inst.g, {}}, alg, d);
    auto ib = wc_invariants(HCPair<G>{cplx_inst.g, {}}, alg, d);
    std::vector<std::vector<G>> ra, rb;
    for (const auto& x : ia) {
      std::vector<G> v(monos.size(), G(0));
      for (const auto& [m, c] : x.terms()) v[index.at(m)] = c;
      ra.push_back(std::move(v));
    }
    for (const auto& x : ib) {
      std::vector<G> v(monos.size(), G(0));
      for (const auto& [m, c] : x.terms()) v[index.at(m)] = c;
      rb.push_back(std::move(v));
    }
    if (!span_equal(ra, rb, monos.size())) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  Gate gate;
  for (int i = 1; i + 1 < argc; i += 2)
    if (!std::strcmp(argv[i], "--seed")) gate.seed = std::strtoul(argv[i + 1], nullptr, 10);

  gate.run("criterion 1: division superalgebra suite", 5, criterion1);
  gate.run("criterion 2: realization cross-check, 14 families", 30, criterion2);
  gate.run("criterion 3: classification regression, all table rows", 300, criterion3);
  gate.run("criterion 4: adjoint laws, 100 random pairs per configuration", 30, criterion4);
  gate.run("criterion 5: Weyl-Clifford core", 60, criterion5);
  gate.run("criterion 6a: double commutant, (q(1,R), q(1,R)), d <= 4", 300, criterion6a);
  gate.run("criterion 6b: double commutant, (gl(1|1,C), gl(1|1,C)), d <= 4", 300, criterion6b);
  gate.run("criterion 6c: double commutant, (SpO(2|1), OSp(2|0)), d <= 3", 300, criterion6c);
  gate.run("criterion 7: group-vs-algebra gap at the Pfaffian degree", 120, criterion7);
  gate.run("criterion 8: Howe duality at (n,k,l) = (1,1,0), d <= 3", 300, criterion8);
  gate.run("criterion 9: real-case reduction through complexification", 120, criterion9);

  if (gate.failures) {
    std::printf("%d criterion(s) failed\n", gate.failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
