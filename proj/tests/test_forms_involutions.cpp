#include <doctest.h>

#include <random>

#include "spodual/forms.hpp"

using namespace spodual;
using R = Rational;

namespace {

template <class S>
DSuperMatrix<S> random_homogeneous(std::mt19937& rng, const DModule<S>& mod, Parity p) {
  auto x = DSuperMatrix<S>::zero(mod);
  for (std::size_t a = 0; a < mod.rank(); ++a)
    for (std::size_t b = 0; b < mod.rank(); ++b)
      for (std::size_t k = 0; k < mod.alg->dim(); ++k)
        if ((mod.gen_parities[a] + mod.gen_parities[b] + mod.alg->parity(k)) % 2 == p)
          x.entries[a][b].coords[k] = S(static_cast<long>(rng() % 5) - 2);
  return x;
}

}  // namespace

TEST_SUITE_BEGIN("forms_involutions");

TEST_CASE("canonical Gram matrices of the tables") {
  SUBCASE("(R, triv, +1, even, (1,1|2)): diag(Id_{1,1}, J_2)") {
    auto alg = make_algebra<R>(AlgebraName::Cl0R);
    auto iv = superinvolutions(alg)[0];
    auto f = standard_form<R>(alg, iv, +1, 0, ModuleSide::Right, {1, 1, 2});
    CHECK(f.gram[0][0] == DElement<R>::unit(alg));
    CHECK(f.gram[1][1] == -DElement<R>::unit(alg));
    CHECK(f.gram[2][3] == DElement<R>::unit(alg));
    CHECK(f.gram[3][2] == -DElement<R>::unit(alg));
  }
  SUBCASE("(Cl1C, iota1, +1, even, (1,1)): Id_{1,1}") {
    auto alg = make_algebra<R>(AlgebraName::Cl1C);
    auto iv = superinvolutions(alg)[0];
    auto f = standard_form<R>(alg, iv, +1, 0, ModuleSide::Right, {1, 1});
    CHECK(f.gram[0][0] == DElement<R>::unit(alg));
    CHECK(f.gram[1][1] == -DElement<R>::unit(alg));
  }
  SUBCASE("(C, triv, +1, odd, 2): off-diagonal identity blocks") {
    auto alg = make_algebra<R>(AlgebraName::Cl0C);
    auto iv = superinvolutions(alg)[0];
    auto f = standard_form<R>(alg, iv, +1, 1, ModuleSide::Right, {2});
    CHECK(f.gram[0][2] == DElement<R>::unit(alg));
    CHECK(f.gram[2][0] == DElement<R>::unit(alg));
    CHECK(f.gram[0][0].is_zero());
  }
}

TEST_CASE("combinations outside the tables are rejected") {
  auto cl2 = make_algebra<R>(AlgebraName::Cl2R);
  CHECK(superinvolutions(cl2).empty());  // no forms at all over Cl2R
  auto cl1c = make_algebra<R>(AlgebraName::Cl1C);
  auto iv = superinvolutions(cl1c)[0];
  CHECK_THROWS_AS(standard_form<R>(cl1c, iv, +1, 1, ModuleSide::Right, {1}),
                  std::invalid_argument);  // odd Cl1C forms reduce to even ones
  auto r = make_algebra<R>(AlgebraName::Cl0R);
  auto triv = superinvolutions(r)[0];
  CHECK_THROWS_AS(standard_form<R>(r, triv, +1, 0, ModuleSide::Right, {1, 0, 3}),
                  std::invalid_argument);  // odd symplectic rank
}

TEST_CASE("g_of_form dimensions at small shapes") {
  auto r = make_algebra<R>(AlgebraName::Cl0R);
  auto triv = superinvolutions(r)[0];
  SUBCASE("osp(1,1|2): dim 8 = (1+3 | 4)") {
    auto f = standard_form<R>(r, triv, +1, 0, ModuleSide::Right, {1, 1, 2});
    auto g = g_of_form(f);
    CHECK(g.span.graded_dim() == std::pair<std::size_t, std::size_t>{4, 4});
    CHECK(bracket_closed(g.span));
  }
  SUBCASE("p(1,R): one even, one odd generator") {
    auto f = standard_form<R>(r, triv, -1, 1, ModuleSide::Left, {1});
    CHECK(g_of_form(f).span.graded_dim() == std::pair<std::size_t, std::size_t>{1, 1});
  }
  SUBCASE("u(1,0|1,0): real dimension 4") {
    auto c = make_algebra<R>(AlgebraName::Cl0C);
    auto conj = superinvolutions(c)[1];
    auto f = standard_form<R>(c, conj, -1, 0, ModuleSide::Left, {1, 0, 1, 0});
    auto g = g_of_form(f);
    CHECK(g.span.dim() == 4);
    CHECK(g.span.graded_dim() == std::pair<std::size_t, std::size_t>{2, 2});
  }
}

TEST_CASE("adjoint laws hold exactly") {
  std::mt19937 rng(31);
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
      {AlgebraName::Cl0R, "triv", -1, 1, ModuleSide::Left, {1}},
      {AlgebraName::Cl0C, "conj", +1, 0, ModuleSide::Right, {1, 0, 1, 0}},
      {AlgebraName::Cl4R, "conj", +1, 0, ModuleSide::Right, {1, 0, 1}},
      {AlgebraName::Cl1C, "iota1", -1, 0, ModuleSide::Left, {1, 1}},
  };
  for (const auto& cfg : configs) {
    auto alg = make_algebra<R>(cfg.name);
    Superinvolution<R> iv;
    for (const auto& candidate : superinvolutions(alg))
      if (candidate.tag == cfg.tag) iv = candidate;
    auto f = standard_form<R>(alg, iv, cfg.sign, cfg.parity, cfg.side, cfg.shape);
    for (int trial = 0; trial < 25; ++trial) {
      Parity ps = rng() % 2, pt = rng() % 2;
      auto s = random_homogeneous<R>(rng, f.module, ps);
      auto t = random_homogeneous<R>(rng, f.module, pt);
      auto tn = adjoint(t, f);
      CHECK(adjoint(tn, f) == t);  // T^natnat = T
      auto lhs = adjoint(s * t, f);
      auto rhs = adjoint(t, f) * adjoint(s, f);
      if ((ps * pt) % 2) rhs = -rhs;
      CHECK(lhs == rhs);  // (ST)^nat = (-1)^{|S||T|} T^nat S^nat
    }
  }
}

TEST_CASE("adjoint of a central even scalar matrix") {
  auto c = make_algebra<R>(AlgebraName::Cl0C);
  auto conj = superinvolutions(c)[1];
  auto f = standard_form<R>(c, conj, +1, 0, ModuleSide::Right, {1, 0, 1, 0});
  auto z = DSuperMatrix<R>::identity(f.module);
  auto i_elt = DElement<R>::basis(c, 1);
  for (auto& row : z.entries)
    for (auto& e : row)
      if (!e.is_zero()) e = i_elt;  // i * Id
  auto zn = adjoint(z, f);
  // (z Id)^nat = (-1)^{|z||gamma|} iota(z) Id = conj(i) Id = -i Id
  CHECK(zn == -z);
}

TEST_CASE("trivial symmetric 1x1 adjoint") {
  auto r = make_algebra<R>(AlgebraName::Cl0R);
  auto triv = superinvolutions(r)[0];
  auto f = standard_form<R>(r, triv, +1, 0, ModuleSide::Right, {1, 0, 0});
  auto t = DSuperMatrix<R>::identity(f.module);
  t.entries[0][0] = DElement<R>::unit(r).scaled(R(7));
  CHECK(adjoint(t, f) == t);
}

TEST_CASE("g_of_form equals the -1 eigenspace of the adjoint") {
  auto r = make_algebra<R>(AlgebraName::Cl0R);
  auto triv = superinvolutions(r)[0];
  auto f = standard_form<R>(r, triv, +1, 0, ModuleSide::Right, {1, 1, 2});
  auto g = g_of_form(f);
  RealifiedBasis<R> basis(f.module);
  // every basis element satisfies X^nat = -X
  for (const auto& x : g.dbasis) CHECK(adjoint(x, f) == -x);
  // and conversely the -1 eigenspace has the same dimension
  std::mt19937 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    Parity p = rng() % 2;
    auto t = random_homogeneous<R>(rng, f.module, p);
    auto anti = t + (-adjoint(t, f));  // X - X^nat lands in g
    CHECK(g.span.contains(realify(anti, basis)));
  }
}

TEST_CASE("scaling the form by a fixed central element leaves g(W,gamma) unchanged") {
  auto r = make_algebra<R>(AlgebraName::Cl0R);
  auto triv = superinvolutions(r)[0];
  auto f = standard_form<R>(r, triv, +1, 0, ModuleSide::Right, {1, 1, 2});
  auto scaled = f;
  for (auto& row : scaled.gram)
    for (auto& e : row) e = e.scaled(R(3));
  CHECK(span_equal(g_of_form(f).span, g_of_form(scaled).span));
}

TEST_CASE("tensor form of a rank-one symmetric W against symplectic U") {
  auto r = make_algebra<R>(AlgebraName::Cl0R);
  auto triv = superinvolutions(r)[0];
  auto gamma_u = standard_form<R>(r, triv, -1, 0, ModuleSide::Left, {2, 0, 0});
  auto gamma_w = standard_form<R>(r, triv, +1, 0, ModuleSide::Right, {1, 0, 0});
  auto ts = tensor_form(gamma_w, gamma_u);
  REQUIRE(ts.bilinear.space.dim() == 2);
  // B is the standard symplectic form on R^{2|0}
  CHECK(ts.bilinear.gram(0, 1) == -ts.bilinear.gram(1, 0));
  CHECK(!ts.bilinear.gram(0, 1).is_zero());
  CHECK(ts.bilinear.gram(0, 0).is_zero());
}

TEST_CASE("tensor form validates its hypotheses eagerly") {
  auto r = make_algebra<R>(AlgebraName::Cl0R);
  auto triv = superinvolutions(r)[0];
  auto gamma_u = standard_form<R>(r, triv, -1, 0, ModuleSide::Left, {2, 0, 0});
  auto bad_sign = standard_form<R>(r, triv, -1, 0, ModuleSide::Right, {2, 0, 0});
  CHECK_THROWS_AS(tensor_form(bad_sign, gamma_u), std::invalid_argument);
  auto bad_parity = standard_form<R>(r, triv, +1, 1, ModuleSide::Right, {1});
  CHECK_THROWS_AS(tensor_form(bad_parity, gamma_u), std::invalid_argument);
}

TEST_CASE("tensor form over Cl1C yields E of graded dimension (2|2)") {
  auto d = make_algebra<R>(AlgebraName::Cl1C);
  auto ivs = superinvolutions(d);
  auto gamma_u = standard_form<R>(d, ivs[0], -1, 0, ModuleSide::Left, {1, 0});
  auto gamma_w = standard_form<R>(d, ivs[1], +1, 0, ModuleSide::Right, {1, 0});
  auto ts = tensor_form(gamma_w, gamma_u);
  CHECK(ts.bilinear.space.dim_even() == 2);
  CHECK(ts.bilinear.space.dim_odd() == 2);
}

TEST_CASE("tensor form entries reproduce the defining formula on pure tensors") {
  // spot-check: B(w1 (x) u1, w2 (x) u2) = sign * Re(gamma'(w2,w1) gamma(u1,u2))
  auto r = make_algebra<R>(AlgebraName::Cl0C);
  auto conj = superinvolutions(r)[1];
  auto gamma_u = standard_form<R>(r, conj, -1, 0, ModuleSide::Left, {1, 0, 1, 0});
  auto gamma_w = standard_form<R>(r, conj, +1, 0, ModuleSide::Right, {1, 0, 1, 0});
  auto ts = tensor_form(gamma_w, gamma_u);
  const auto& alg = gamma_u.algebra();
  for (std::size_t row = 0; row < ts.triples.size(); ++row)
    for (std::size_t col = 0; col < ts.triples.size(); ++col) {
      auto [a, k, c] = ts.triples[row];
      auto [b, l, e] = ts.triples[col];
      auto gw = gamma_w.eval(b, DElement<R>::basis(alg, l), a, DElement<R>::basis(alg, k));
      auto gu = gamma_u.gram[c][e];
      R want = re_part(gw * gu);
      Parity p = (gamma_w.module.gen_parities[a] + alg->parity(k)) % 2;
      Parity q = (gamma_w.module.gen_parities[b] + alg->parity(l)) % 2;
      if ((gamma_u.module.gen_parities[c] * q + p * q) % 2) want = -want;
      CHECK(ts.bilinear.gram(row, col) == want);
    }
}

TEST_SUITE_END();
