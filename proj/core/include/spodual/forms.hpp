#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "spodual/dmodule.hpp"
#include "spodual/spo.hpp"

namespace spodual {

/// Homogeneous (iota, epsilon)-superhermitian form on a free D-module,
/// stored through its Gram matrix on the generator basis.
template <class S>
struct SuperhermitianForm {
  DModule<S> module;
  Superinvolution<S> involution;
  int sign = 1;        // epsilon
  Parity parity = 0;   // |gamma|
  std::vector<std::vector<DElement<S>>> gram;  // gram[a][b] = gamma(w_a, w_b)

  const AlgebraRef<S>& algebra() const { return module.alg; }

  /// gamma(w_a d1, w_b d2) with the side-appropriate sesquilinearity law.
  DElement<S> eval(std::size_t a, const DElement<S>& d1, std::size_t b,
                   const DElement<S>& d2) const {
    auto p1 = d1.parity(), p2 = d2.parity();
    if (!p1 || !p2) throw std::invalid_argument("form eval: inhomogeneous coefficient");
    DElement<S> v;
    bool neg;
    if (module.side == ModuleSide::Right) {
      // gamma(v D1, w D2) = (-1)^{|D1||v| + |D1||gamma|} iota(D1) gamma(v,w) D2
      v = involution.apply(d1) * gram[a][b] * d2;
      neg = ((*p1) * (module.gen_parities[a] + parity)) % 2;
    } else {
      // gamma(D1 v, D2 w) = (-1)^{|D2||w| + |D1||gamma|} D1 gamma(v,w) iota(D2)
      v = d1 * gram[a][b] * involution.apply(d2);
      neg = ((*p2) * module.gen_parities[b] + (*p1) * parity) % 2;
    }
    return neg ? -v : v;
  }

  bool gram_homogeneous() const {
    for (std::size_t a = 0; a < module.rank(); ++a)
      for (std::size_t b = 0; b < module.rank(); ++b) {
        auto p = gram[a][b].parity();
        if (!p) return false;
        if (!gram[a][b].is_zero() &&
            *p != (module.gen_parities[a] + module.gen_parities[b] + parity) % 2)
          return false;
      }
    return true;
  }

  /// gamma(w,v) = epsilon (-1)^{|v||w|} iota(gamma(v,w)) on all basis pairs.
  bool symmetry_holds() const {
    for (std::size_t a = 0; a < module.rank(); ++a)
      for (std::size_t b = 0; b < module.rank(); ++b) {
        DElement<S> rhs = involution.apply(gram[a][b]);
        bool neg = (module.gen_parities[a] * module.gen_parities[b]) % 2;
        if (sign < 0) neg = !neg;
        if (neg) rhs = -rhs;
        if (gram[b][a] != rhs) return false;
      }
    return true;
  }

  bool is_nondegenerate() const {
    // gram as a D-matrix must be invertible; test on the realification
    DSuperMatrix<S> g;
    g.module = module;
    g.entries = gram;
    RealifiedBasis<S> basis(module);
    // realify needs homogeneity; the gram is homogeneous of parity |gamma|,
    // realified as a plain coefficient matrix
    const std::size_t d = module.alg->dim();
    Mat<S> m(basis.pairs.size(), basis.pairs.size());
    for (std::size_t col = 0; col < basis.pairs.size(); ++col) {
      auto [b, l] = basis.pairs[col];
      auto dl = DElement<S>::basis(module.alg, l);
      for (std::size_t a = 0; a < module.rank(); ++a) {
        DElement<S> prod = gram[a][b] * dl;
        for (std::size_t k = 0; k < d; ++k)
          if (!prod.coords[k].is_zero()) m(basis.index[a][k], col) += prod.coords[k];
      }
    }
    return rank(m) == basis.pairs.size();
  }
};

/// Builds a form from explicit data, validating every invariant.
template <class S>
SuperhermitianForm<S> make_form(DModule<S> module, Superinvolution<S> inv, int sign,
                                Parity parity, std::vector<std::vector<DElement<S>>> gram) {
  SuperhermitianForm<S> f{std::move(module), std::move(inv), sign, parity, std::move(gram)};
  if (!f.involution.is_valid()) throw std::invalid_argument("make_form: invalid superinvolution");
  if (!f.gram_homogeneous()) throw std::invalid_argument("make_form: gram not homogeneous");
  if (!f.symmetry_holds()) throw std::invalid_argument("make_form: superhermitian law fails");
  if (!f.is_nondegenerate()) throw std::invalid_argument("make_form: degenerate gram");
  return f;
}

/// Canonical Gram matrices for the families in the classification tables.
/// Shape interpretation depends on the (algebra, involution, sign, parity)
/// case; combinations outside the tables are rejected.
template <class S>
SuperhermitianForm<S> standard_form(const AlgebraRef<S>& alg, const Superinvolution<S>& inv,
                                    int sign, Parity parity, ModuleSide side,
                                    const std::vector<std::size_t>& shape,
                                    bool split_even = false);

/// g(W, gamma) = { X in gl_D(W) : gamma(X u, v) + (-1)^{|X||u|} gamma(u, X v) = 0 },
/// as D-matrices together with the realified span.
template <class S>
struct FormAlgebra {
  std::vector<DSuperMatrix<S>> dbasis;
  std::vector<Parity> dparities;
  LieSpan<S> span;  // realified
};

template <class S>
FormAlgebra<S> g_of_form(const SuperhermitianForm<S>& f);

/// The unique T-natural with gamma(T^nat(w), v) = (-1)^{|T||w|} gamma(w, T(v)).
template <class S>
DSuperMatrix<S> adjoint(const DSuperMatrix<S>& t, const SuperhermitianForm<S>& f);

/// Tensor-product form B = Re(gamma' (x) gamma) on realify(W (x)_D U);
/// gamma' lives on the right module W, gamma on the left module U, with
/// gamma' being (iota o delta, -epsilon)-superhermitian of the same parity.
template <class S>
struct TensorSpace {
  DModule<S> w_module, u_module;
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> triples;  // (a,k,c)
  std::vector<std::vector<std::vector<std::size_t>>> index;                // [a][k][c]
  BilinearSpace<S> bilinear;
};

template <class S>
TensorSpace<S> tensor_form(const SuperhermitianForm<S>& gamma_w,
                           const SuperhermitianForm<S>& gamma_u);

// --- implementation ---------------------------------------------------------

namespace detail {

// Accumulates base-field linear equations in the coordinates of a D-matrix
// unknown. Rows come in blocks of dim(D) scalar equations.
template <class S>
struct DEntrySystem {
  std::size_t rank, d;
  std::vector<std::size_t> slot_of;  // (a,b) -> column block
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  Mat<S> sys;
  std::size_t next_row = 0;

  DEntrySystem(std::size_t rank_, std::size_t d_, std::size_t n_eq_blocks)
      : rank(rank_), d(d_), slot_of(rank_ * rank_) {
    for (std::size_t a = 0; a < rank; ++a)
      for (std::size_t b = 0; b < rank; ++b) {
        slot_of[a * rank + b] = slots.size();
        slots.emplace_back(a, b);
      }
    sys = Mat<S>(n_eq_blocks * d, slots.size() * d);
  }

  /// Adds coeff_matrix * x_{ab} to equation block `eq`.
  void add(std::size_t eq, std::size_t a, std::size_t b, const Mat<S>& coeff) {
    std::size_t col0 = slot_of[a * rank + b] * d;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (!coeff(i, j).is_zero()) sys(eq * d + i, col0 + j) += coeff(i, j);
  }
};

}  // namespace detail

template <class S>
FormAlgebra<S> g_of_form(const SuperhermitianForm<S>& f) {
  const auto& alg = f.algebra();
  const std::size_t r = f.module.rank(), d = alg->dim();
  RealifiedBasis<S> basis(f.module);
  FormAlgebra<S> out;
  out.span = LieSpan<S>{basis.space, {}, {}};

  Mat<S> iota = f.involution.mat;
  for (Parity alpha : {0, 1}) {
    detail::DEntrySystem<S> sys(r, d, r * r);
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t c = 0; c < r; ++c) {
        std::size_t eq = b * r + c;
        for (std::size_t a = 0; a < r; ++a) {
          Parity pent_ab = (alpha + f.module.gen_parities[a] + f.module.gen_parities[b]) % 2;
          Parity pent_ac = (alpha + f.module.gen_parities[a] + f.module.gen_parities[c]) % 2;
          if (f.module.side == ModuleSide::Right) {
            // sum_a (-1)^{|x_ab|(|w_a|+|g|)} iota(x_ab) G_ac
            //   + (-1)^{alpha |w_b|} sum_a G_ba x_ac = 0
            Mat<S> m1 = alg->right_mul_matrix(f.gram[a][c].coords) * iota;
            if ((pent_ab * (f.module.gen_parities[a] + f.parity)) % 2) m1 = m1.scaled(-scalar_traits<S>::one());
            sys.add(eq, a, b, m1);
            Mat<S> m2 = alg->left_mul_matrix(f.gram[b][a].coords);
            if ((alpha * f.module.gen_parities[b]) % 2) m2 = m2.scaled(-scalar_traits<S>::one());
            sys.add(eq, a, c, m2);
          } else {
            // sum_a (-1)^{|x_ab||g|} x_ab G_ac
            //   + (-1)^{alpha|u_b|} sum_a (-1)^{|x_ac||u_a|} G_ba iota(x_ac) = 0
            Mat<S> m1 = alg->right_mul_matrix(f.gram[a][c].coords);
            if ((pent_ab * f.parity) % 2) m1 = m1.scaled(-scalar_traits<S>::one());
            sys.add(eq, a, b, m1);
            Mat<S> m2 = alg->left_mul_matrix(f.gram[b][a].coords) * iota;
            if ((alpha * f.module.gen_parities[b] + pent_ac * f.module.gen_parities[a]) % 2)
              m2 = m2.scaled(-scalar_traits<S>::one());
            sys.add(eq, a, c, m2);
          }
        }
      }
    // restrict unknowns to the parity-alpha support pattern
    std::vector<std::size_t> keep;
    for (std::size_t s = 0; s < sys.slots.size(); ++s) {
      auto [a, b] = sys.slots[s];
      Parity pe = (alpha + f.module.gen_parities[a] + f.module.gen_parities[b]) % 2;
      for (std::size_t k = 0; k < d; ++k)
        if (alg->parity(k) == pe) keep.push_back(s * d + k);
    }
    Mat<S> restricted(sys.sys.rows(), keep.size());
    for (std::size_t i = 0; i < sys.sys.rows(); ++i)
      for (std::size_t j = 0; j < keep.size(); ++j) restricted(i, j) = sys.sys(i, keep[j]);
    for (const auto& v : nullspace(restricted)) {
      auto x = DSuperMatrix<S>::zero(f.module);
      for (std::size_t j = 0; j < keep.size(); ++j) {
        if (v[j].is_zero()) continue;
        std::size_t s = keep[j] / d, k = keep[j] % d;
        auto [a, b] = sys.slots[s];
        x.entries[a][b].coords[k] += v[j];
      }
      out.dbasis.push_back(x);
      out.dparities.push_back(alpha);
      out.span.push(alpha, realify(x, basis));
    }
  }
  return out;
}

template <class S>
DSuperMatrix<S> adjoint(const DSuperMatrix<S>& t, const SuperhermitianForm<S>& f) {
  auto pt = t.parity();
  if (!pt) throw std::invalid_argument("adjoint: inhomogeneous input");
  const auto& alg = *f.algebra();
  const std::size_t r = f.module.rank(), d = alg.dim();
  Parity alpha = *pt;

  detail::DEntrySystem<S> sys(r, d, r * r);
  std::vector<S> rhs(r * r * d, scalar_traits<S>::zero());
  for (std::size_t b = 0; b < r; ++b)
    for (std::size_t c = 0; c < r; ++c) {
      std::size_t eq = b * r + c;
      for (std::size_t a = 0; a < r; ++a) {
        Parity pent_ab = (alpha + f.module.gen_parities[a] + f.module.gen_parities[b]) % 2;
        if (f.module.side == ModuleSide::Right) {
          Mat<S> m1 = alg.right_mul_matrix(f.gram[a][c].coords) * f.involution.mat;
          if ((pent_ab * (f.module.gen_parities[a] + f.parity)) % 2)
            m1 = m1.scaled(-scalar_traits<S>::one());
          sys.add(eq, a, b, m1);
          // rhs: (-1)^{|T||w_b|} sum_a G_ba t_ac
          DElement<S> term = f.gram[b][a] * t.entries[a][c];
          if ((alpha * f.module.gen_parities[b]) % 2) term = -term;
          for (std::size_t k = 0; k < d; ++k) rhs[eq * d + k] += term.coords[k];
        } else {
          Mat<S> m1 = alg.right_mul_matrix(f.gram[a][c].coords);
          if ((pent_ab * f.parity) % 2) m1 = m1.scaled(-scalar_traits<S>::one());
          sys.add(eq, a, b, m1);
          Parity pent_ac = (alpha + f.module.gen_parities[a] + f.module.gen_parities[c]) % 2;
          DElement<S> term = f.gram[b][a] * f.involution.apply(t.entries[a][c]);
          if ((alpha * f.module.gen_parities[b] + pent_ac * f.module.gen_parities[a]) % 2)
            term = -term;
          for (std::size_t k = 0; k < d; ++k) rhs[eq * d + k] += term.coords[k];
        }
      }
    }
  auto sol = solve(sys.sys, rhs);
  if (!sol) throw std::domain_error("adjoint: inconsistent system (degenerate form?)");
  auto x = DSuperMatrix<S>::zero(f.module);
  for (std::size_t s = 0; s < sys.slots.size(); ++s) {
    auto [a, b] = sys.slots[s];
    for (std::size_t k = 0; k < d; ++k) x.entries[a][b].coords[k] = (*sol)[s * d + k];
  }
  return x;
}

template <class S>
TensorSpace<S> tensor_form(const SuperhermitianForm<S>& gamma_w,
                           const SuperhermitianForm<S>& gamma_u) {
  if (gamma_w.module.side != ModuleSide::Right || gamma_u.module.side != ModuleSide::Left)
    throw std::invalid_argument("tensor_form: expects gamma' on a right module, gamma on a left module");
  if (gamma_w.algebra()->display() != gamma_u.algebra()->display())
    throw std::invalid_argument("tensor_form: algebra mismatch");
  if (gamma_w.parity != gamma_u.parity)
    throw std::invalid_argument("tensor_form: |gamma| != |gamma'|");
  if (gamma_w.sign != -gamma_u.sign)
    throw std::invalid_argument("tensor_form: signs must be opposite");
  // gamma' must be superhermitian for iota o delta
  {
    auto iod = compose_delta(gamma_u.involution);
    if (gamma_w.involution.mat != iod.mat)
      throw std::invalid_argument("tensor_form: gamma' involution is not iota o delta");
  }

  const auto& alg = gamma_u.algebra();
  const std::size_t d = alg->dim();
  const auto& wp = gamma_w.module.gen_parities;
  const auto& up = gamma_u.module.gen_parities;

  TensorSpace<S> out;
  out.w_module = gamma_w.module;
  out.u_module = gamma_u.module;
  out.index.assign(wp.size(), std::vector<std::vector<std::size_t>>(
                                  d, std::vector<std::size_t>(up.size())));
  std::vector<Parity> parities;
  for (Parity want : {0, 1})
    for (std::size_t a = 0; a < wp.size(); ++a)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t c = 0; c < up.size(); ++c) {
          Parity p = (wp[a] + alg->parity(k) + up[c]) % 2;
          if (p != want) continue;
          out.index[a][k][c] = out.triples.size();
          out.triples.emplace_back(a, k, c);
          parities.push_back(p);
        }
  SuperSpace space((std::vector<Parity>(parities)));

  const std::size_t n = out.triples.size();
  Mat<S> gram(n, n);
  for (std::size_t row = 0; row < n; ++row) {
    auto [a, k, c] = out.triples[row];
    Parity p = (wp[a] + alg->parity(k)) % 2;
    for (std::size_t col = 0; col < n; ++col) {
      auto [b, l, e] = out.triples[col];
      Parity q = (wp[b] + alg->parity(l)) % 2;
      // (-1)^{|u_c| q + p q + |x_l|(|w_b|+|gamma'|)} Re(iota'(x_l) G'_ba x_k G_ce)
      DElement<S> v = gamma_w.involution.apply(DElement<S>::basis(alg, l)) *
                      gamma_w.gram[b][a] * DElement<S>::basis(alg, k) * gamma_u.gram[c][e];
      S s = re_part(v);
      if (s.is_zero()) continue;
      int sgn = (up[c] * q + p * q + alg->parity(l) * (wp[b] + gamma_w.parity)) % 2;
      gram(row, col) = sgn ? -s : s;
    }
  }
  out.bilinear = BilinearSpace<S>(space, std::move(gram));  // validates the invariants
  return out;
}

template <class S>
SuperhermitianForm<S> standard_form(const AlgebraRef<S>& alg, const Superinvolution<S>& inv,
                                    int sign, Parity parity, ModuleSide side,
                                    const std::vector<std::size_t>& shape, bool split_even) {
  using E = DElement<S>;
  auto bad = [&](const char* why) {
    return std::invalid_argument(std::string("standard_form: ") + why);
  };
  if (sign != 1 && sign != -1) throw bad("sign must be +-1");

  auto name = alg->name();
  const bool trivial_inv = inv.tag == "triv";
  const bool conj_inv = inv.tag == "conj";
  const bool cl1c = name == AlgebraName::Cl1C;

  auto grid = [&](std::size_t r) {
    return std::vector<std::vector<E>>(r, std::vector<E>(r, E::zero(alg)));
  };
  auto unit = [&](int s) {
    auto e = E::unit(alg);
    return s >= 0 ? e : -e;
  };
  auto ielt = [&](int s) {
    // the element i (second basis vector of the complex/quaternionic part)
    auto e = E::zero(alg);
    e.coords[1] = s >= 0 ? scalar_traits<S>::one() : -scalar_traits<S>::one();
    return e;
  };

  if (cl1c) {
    if (parity != 0 || (inv.tag != "iota1" && inv.tag != "iota2"))
      throw bad("Cl1(C) forms in the tables are even with iota1/iota2");
    if (shape.size() != 2) throw bad("Cl1(C) shape is (p,q)");
    std::size_t p = shape[0], q = shape[1];
    if (p + q == 0) throw bad("empty module");
    auto module = side == ModuleSide::Right ? DModule<S>::right(alg, p + q, 0)
                                            : DModule<S>::left(alg, p + q, 0);
    auto g = grid(p + q);
    for (std::size_t i = 0; i < p + q; ++i)
      g[i][i] = sign > 0 ? unit(i < p ? 1 : -1) : ielt(i < p ? 1 : -1);
    return make_form(module, inv, sign, parity, std::move(g));
  }

  if (parity == 1) {
    // Odd forms: module (n|n), antidiagonal identity blocks.
    if (!(trivial_inv || conj_inv)) throw bad("odd forms need D = D0");
    if (shape.size() != 1 || shape[0] == 0) throw bad("odd-form shape is (n)");
    std::size_t n = shape[0];
    auto module = side == ModuleSide::Right ? DModule<S>::right(alg, n, n)
                                            : DModule<S>::left(alg, n, n);
    auto g = grid(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      g[i][n + i] = unit(1);
      g[n + i][i] = unit(sign);
    }
    return make_form(module, inv, sign, parity, std::move(g));
  }

  // Even forms over D = D0.
  if (trivial_inv) {
    // bilinear: symmetric block with signature, symplectic block J;
    // shape order follows the family name: (p,q,m) for +1, (m,p,q) for -1
    if (shape.size() != 3) throw bad("shape is (p,q,m) for +1 or (m,p,q) for -1");
    std::size_t p, q, m;
    if (sign > 0) {
      p = shape[0]; q = shape[1]; m = shape[2];
    } else {
      m = shape[0]; p = shape[1]; q = shape[2];
    }
    if (m % 2) throw bad("symplectic rank must be even");
    std::size_t n_sym = p + q, n_alt = m;
    std::size_t n0 = sign > 0 ? n_sym : n_alt;   // even part size
    std::size_t n1 = sign > 0 ? n_alt : n_sym;   // odd part size
    if (n0 + n1 == 0) throw bad("empty module");
    auto module = side == ModuleSide::Right ? DModule<S>::right(alg, n0, n1)
                                            : DModule<S>::left(alg, n0, n1);
    auto g = grid(n0 + n1);
    auto put_sym = [&](std::size_t off) {
      if (!split_even) {
        for (std::size_t i = 0; i < n_sym; ++i) g[off + i][off + i] = unit(i < p ? 1 : -1);
      } else {
        // hyperbolic form of the symmetric block (needs q = 0, p even)
        if (q != 0 || p % 2) throw bad("split symmetric block needs even p, q = 0");
        for (std::size_t i = 0; i < p / 2; ++i) {
          g[off + i][off + p / 2 + i] = unit(1);
          g[off + p / 2 + i][off + i] = unit(1);
        }
      }
    };
    auto put_alt = [&](std::size_t off) {
      for (std::size_t i = 0; i < m / 2; ++i) {
        g[off + i][off + m / 2 + i] = unit(1);
        g[off + m / 2 + i][off + i] = unit(-1);
      }
    };
    if (sign > 0) {
      put_sym(0);
      put_alt(n0);
    } else {
      put_alt(0);
      put_sym(n0);
    }
    return make_form(module, inv, sign, parity, std::move(g));
  }

  if (conj_inv) {
    bool quaternionic = name == AlgebraName::Cl4R;
    if (!quaternionic && name != AlgebraName::Cl0C) throw bad("conj needs C or H");
    // hermitian block with signature on one side, i * hermitian on the other
    std::size_t p, q, r, s;
    if (quaternionic) {
      if (shape.size() != 3) throw bad("shape is (p,q,m) for +1 or (a,b,c) for -1");
      if (sign > 0) {
        p = shape[0]; q = shape[1]; r = shape[2]; s = 0;   // Id_{p,q} | i Id_m
      } else {
        p = shape[0]; q = 0; r = shape[1]; s = shape[2];   // i Id_a | Id_{b,c}
      }
    } else {
      if (shape.size() != 4) throw bad("shape is (p,q,r,s)");
      p = shape[0]; q = shape[1]; r = shape[2]; s = shape[3];
    }
    std::size_t n0 = p + q, n1 = r + s;
    if (n0 + n1 == 0) throw bad("empty module");
    auto module = side == ModuleSide::Right ? DModule<S>::right(alg, n0, n1)
                                            : DModule<S>::left(alg, n0, n1);
    auto g = grid(n0 + n1);
    for (std::size_t i = 0; i < n0; ++i)
      g[i][i] = sign > 0 ? unit(i < p ? 1 : -1) : ielt(i < p ? 1 : -1);
    for (std::size_t i = 0; i < n1; ++i)
      g[n0 + i][n0 + i] = sign > 0 ? ielt(i < r ? 1 : -1) : unit(i < r ? 1 : -1);
    return make_form(module, inv, sign, parity, std::move(g));
  }
  throw bad("combination outside the classification");
}

}  // namespace spodual
