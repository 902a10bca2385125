#include <doctest.h>

#include <random>

#include "spodual/dmodule.hpp"
#include "spodual/spo.hpp"

using namespace spodual;
using R = Rational;
using G = Gaussian;

namespace {

Mat<R> rnd_matrix(std::mt19937& rng, std::size_t n, std::size_t m) {
  Mat<R> out(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      out(i, j) = R(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 4));
  return out;
}

// random homogeneous endomorphism of the given parity
Mat<R> rnd_homogeneous(std::mt19937& rng, const SuperSpace& sp, Parity alpha) {
  Mat<R> out(sp.dim(), sp.dim());
  for (std::size_t i = 0; i < sp.dim(); ++i)
    for (std::size_t j = 0; j < sp.dim(); ++j)
      if ((sp.parity(i) + sp.parity(j)) % 2 == alpha)
        out(i, j) = R(static_cast<long>(rng() % 7) - 3);
  return out;
}

BilinearSpace<R> canonical_e(std::size_t m2, std::size_t n) {
  // symplectic J on the even part, split symmetric on the odd part (n even)
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
}

}  // namespace

TEST_SUITE_BEGIN("graded_linear");

TEST_CASE("supermatrix parity is a derived property") {
  SuperSpace sp = SuperSpace::graded(1, 1);
  Mat<R> m(2, 2);
  m(0, 1) = R(1);
  CHECK(SuperMatrix<R>::endo(sp, m).parity() == 1);
  m(0, 0) = R(1);
  CHECK_FALSE(SuperMatrix<R>::endo(sp, m).parity().has_value());
}

TEST_CASE("superbracket of two odd matrices in gl(1|1)") {
  SuperSpace sp = SuperSpace::graded(1, 1);
  Mat<R> e12(2, 2), e21(2, 2);
  e12(0, 1) = R(1);
  e21(1, 0) = R(1);
  auto br = superbracket(SuperMatrix<R>::endo(sp, e12), SuperMatrix<R>::endo(sp, e21));
  Mat<R> want = Mat<R>::identity(2);  // E11 + E22, by direct 2x2 computation
  CHECK(br.mat == want);
}

TEST_CASE("odd self-bracket is twice the square") {
  std::mt19937 rng(7);
  SuperSpace sp = SuperSpace::graded(2, 2);
  auto x = rnd_homogeneous(rng, sp, 1);
  auto br = superbracket(SuperMatrix<R>::endo(sp, x), SuperMatrix<R>::endo(sp, x));
  CHECK(br.mat == (x * x).scaled(R(2)));
}

TEST_CASE("super Jacobi identity on random homogeneous triples") {
  std::mt19937 rng(11);
  SuperSpace sp = SuperSpace::graded(2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    Parity pa = rng() % 2, pb = rng() % 2, pc = rng() % 2;
    auto a = SuperMatrix<R>::endo(sp, rnd_homogeneous(rng, sp, pa));
    auto b = SuperMatrix<R>::endo(sp, rnd_homogeneous(rng, sp, pb));
    auto c = SuperMatrix<R>::endo(sp, rnd_homogeneous(rng, sp, pc));
    auto term = [&](const SuperMatrix<R>& x, const SuperMatrix<R>& y, const SuperMatrix<R>& z,
                    Parity px, Parity pz) {
      auto inner = superbracket(y, z);
      auto outer = superbracket(x, inner);
      return (px * pz) % 2 ? outer.mat.scaled(R(-1)) : outer.mat;
    };
    Mat<R> sum = term(a, b, c, pa, pc) + term(b, c, a, pb, pa) + term(c, a, b, pc, pb);
    CHECK(sum.is_zero());
  }
}

TEST_CASE("nullspace basics") {
  CHECK(nullspace(Mat<R>(1, 3)).size() == 3);          // zero map on dim 3
  CHECK(nullspace(Mat<R>::identity(4)).empty());       // identity constraints
}

TEST_CASE("random rational nullspace has exact zero residual") {
  std::mt19937 rng(13);
  auto a = rnd_matrix(rng, 5, 8);
  auto ns = nullspace(a);
  CHECK(ns.size() + rank(a) == 8);
  for (const auto& v : ns) {
    auto res = a.apply(v);
    for (const auto& x : res) CHECK(x.is_zero());
  }
}

TEST_CASE("Bareiss and plain fraction elimination agree") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = rnd_matrix(rng, 6, 9);
    Mat<G> ag(6, 9);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 9; ++j) ag(i, j) = G(a(i, j));
    auto rr = rref(a);
    auto rg = rref(ag);
    REQUIRE(rr.pivots == rg.pivots);
    for (std::size_t i = 0; i < rr.mat.rows(); ++i)
      for (std::size_t j = 0; j < rr.mat.cols(); ++j)
        CHECK(G(rr.mat(i, j)) == rg.mat(i, j));
  }
}

TEST_CASE("spo dimensions at small graded dimensions") {
  SUBCASE("sp(2)") {
    Mat<R> g(2, 2);
    g(0, 1) = R(1);
    g(1, 0) = R(-1);
    BilinearSpace<R> e(SuperSpace::graded(2, 0), g);
    CHECK(spo_ambient(e).dim() == 3);
  }
  SUBCASE("so(2)") {
    Mat<R> g(2, 2);
    g(0, 1) = R(1);
    g(1, 0) = R(1);
    BilinearSpace<R> e(SuperSpace::graded(0, 2), g);
    CHECK(spo_ambient(e).dim() == 1);
  }
  SUBCASE("spo(2|2): nullspace oracle matches the closed formula") {
    auto e = canonical_e(2, 2);
    auto amb = spo_ambient(e);
    CHECK(amb.dim() == spo_dimension(2, 2));
    CHECK(amb.dim() == 8);
    CHECK(amb.graded_dim() == std::make_pair<std::size_t, std::size_t>(4, 4));
    SUBCASE("basis satisfies the defining identity and closes under brackets") {
      for (std::size_t i = 0; i < amb.dim(); ++i)
        CHECK(in_spo(e, amb.basis[i], amb.parities[i]));
      CHECK(bracket_closed(amb));
      CHECK(basis_independent(amb));
    }
  }
  SUBCASE("spo(4|6) matches the closed formula") {
    auto e = canonical_e(4, 6);
    CHECK(spo_ambient(e).dim() == spo_dimension(4, 6));
  }
}

TEST_CASE("degenerate forms are rejected") {
  Mat<R> g(2, 2);  // zero form
  CHECK_THROWS_AS(BilinearSpace<R>(SuperSpace::graded(2, 0), g), std::invalid_argument);
}

TEST_CASE("supercommutant examples inside spo(2|2)") {
  auto e = canonical_e(2, 2);
  auto amb = spo_ambient(e);
  SUBCASE("the whole algebra has trivial centre in spo") {
    CHECK(supercommutant(amb, amb).dim() == 0);
  }
  SUBCASE("the zero algebra has the full ambient as commutant") {
    LieSpan<R> zero{e.space, {}, {}};
    CHECK(supercommutant(zero, amb).dim() == amb.dim());
  }
  SUBCASE("C(sp(2) + 0) contains 0 + so(2)") {
    LieSpan<R> sp2{e.space, {}, {}};
    for (std::size_t i = 0; i < amb.dim(); ++i) {
      const auto& m = amb.basis[i];
      bool upper_even_only = true;
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
          if (!m(r, c).is_zero() && (r >= 2 || c >= 2)) upper_even_only = false;
      if (upper_even_only && amb.parities[i] == 0) sp2.push(0, m);
    }
    CHECK(sp2.dim() == 3);
    auto cg = supercommutant(sp2, amb);
    Mat<R> so2(4, 4);  // rotation in the split symmetric odd plane
    so2(2, 2) = R(1);
    so2(3, 3) = R(-1);
    CHECK(in_spo(e, so2, 0));
    CHECK(cg.contains(so2));
    SUBCASE("monotone-antitone in the subalgebra") {
      auto camb = supercommutant(amb, amb);
      auto csp = supercommutant(sp2, amb);
      auto ech = csp.echelon();
      for (const auto& m : camb.basis) CHECK(in_span(ech, m.flatten()));
    }
  }
}

TEST_CASE("supercommutant rejects g outside the ambient span") {
  auto e = canonical_e(2, 2);
  auto amb = spo_ambient(e);
  LieSpan<R> bad{e.space, {}, {}};
  Mat<R> nm(4, 4);
  nm(0, 0) = R(1);  // not in spo(2|2)
  bad.push(0, nm);
  CHECK_THROWS_AS(supercommutant(bad, amb), std::invalid_argument);
}

TEST_CASE("realification is a parity-preserving algebra homomorphism") {
  std::mt19937 rng(23);
  const AlgebraName names[] = {AlgebraName::Cl0R, AlgebraName::Cl0C, AlgebraName::Cl4R,
                               AlgebraName::Cl1R, AlgebraName::Cl3R, AlgebraName::Cl6R,
                               AlgebraName::Cl1C};
  for (auto name : names) {
    auto alg = make_algebra<R>(name);
    bool has_odd = false;
    for (std::size_t i = 0; i < alg->dim(); ++i) has_odd |= alg->parity(i);
    auto mod = DModule<R>::right(alg, 2, has_odd ? 0 : 1);
    RealifiedBasis<R> basis(mod);
    for (int trial = 0; trial < 6; ++trial) {
      Parity pa = rng() % 2, pb = rng() % 2;
      auto rnd_d = [&](Parity p) {
        auto x = DSuperMatrix<R>::zero(mod);
        for (std::size_t a = 0; a < mod.rank(); ++a)
          for (std::size_t b = 0; b < mod.rank(); ++b)
            for (std::size_t k = 0; k < alg->dim(); ++k)
              if ((mod.gen_parities[a] + mod.gen_parities[b] + alg->parity(k)) % 2 == p)
                x.entries[a][b].coords[k] = R(static_cast<long>(rng() % 5) - 2);
        return x;
      };
      auto x = rnd_d(pa), y = rnd_d(pb);
      CHECK(realify(x * y, basis) == realify(x, basis) * realify(y, basis));
    }
    CHECK(realify(DSuperMatrix<R>::identity(mod), basis) ==
          Mat<R>::identity(basis.pairs.size()));
  }
}

TEST_CASE("left modules realify as homomorphisms too") {
  std::mt19937 rng(29);
  auto alg = make_algebra<R>(AlgebraName::Cl1C);
  auto mod = DModule<R>::left(alg, 2, 0);
  RealifiedBasis<R> basis(mod);
  for (int trial = 0; trial < 10; ++trial) {
    Parity pa = rng() % 2, pb = rng() % 2;
    auto rnd_d = [&](Parity p) {
      auto x = DSuperMatrix<R>::zero(mod);
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
          for (std::size_t k = 0; k < alg->dim(); ++k)
            if (alg->parity(k) == p) x.entries[a][b].coords[k] = R(static_cast<long>(rng() % 5) - 2);
      return x;
    };
    auto x = rnd_d(pa), y = rnd_d(pb);
    // Composition of left-module maps: (X o Y)(u_b) = sum (-1)^{|y_ab||X|} y_ab x_ca u_c,
    // so the composed matrix multiplies the entries in the order y * x.
    auto z = DSuperMatrix<R>::zero(mod);
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t a = 0; a < 2; ++a) {
          auto term = y.entries[a][b] * x.entries[c][a];
          if ((pa * pb) % 2) term = -term;
          z.entries[c][b] += term;
        }
    CHECK(realify(x, basis) * realify(y, basis) == realify(z, basis));
  }
}

TEST_SUITE_END();
