#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "spodual/division.hpp"

namespace spodual {

enum class ModuleSide { Right, Left };

/// Free graded D-module with a chosen homogeneous generator basis.
/// Right modules follow the convention X(w_b) = sum_a w_a x_{ab};
/// left modules follow X(u_b) = sum_a x_{ab} u_a with the sign rule
/// X(d u) = (-1)^{|d||X|} d X(u).
template <class S>
struct DModule {
  AlgebraRef<S> alg;
  std::vector<Parity> gen_parities;
  ModuleSide side = ModuleSide::Right;

  std::size_t rank() const { return gen_parities.size(); }

  static DModule right(AlgebraRef<S> a, std::size_t n_even, std::size_t n_odd) {
    return make(std::move(a), n_even, n_odd, ModuleSide::Right);
  }
  static DModule left(AlgebraRef<S> a, std::size_t n_even, std::size_t n_odd) {
    return make(std::move(a), n_even, n_odd, ModuleSide::Left);
  }

 private:
  static DModule make(AlgebraRef<S> a, std::size_t n_even, std::size_t n_odd, ModuleSide s) {
    bool alg_has_odd = false;
    for (std::size_t i = 0; i < a->dim(); ++i) alg_has_odd |= a->parity(i) == 1;
    if (alg_has_odd && n_odd != 0)
      throw std::invalid_argument("DModule: modules over D with odd part use even generators");
    std::vector<Parity> p(n_even, 0);
    p.insert(p.end(), n_odd, 1);
    return DModule{std::move(a), std::move(p), s};
  }
};

/// D-matrix acting on a free module; represents an element of gl_D.
template <class S>
struct DSuperMatrix {
  DModule<S> module;
  std::vector<std::vector<DElement<S>>> entries;  // [row][col]

  static DSuperMatrix zero(const DModule<S>& m) {
    DSuperMatrix x;
    x.module = m;
    x.entries.assign(m.rank(), std::vector<DElement<S>>(m.rank(), DElement<S>::zero(m.alg)));
    return x;
  }
  static DSuperMatrix identity(const DModule<S>& m) {
    auto x = zero(m);
    for (std::size_t i = 0; i < m.rank(); ++i) x.entries[i][i] = DElement<S>::unit(m.alg);
    return x;
  }

  std::optional<Parity> parity() const {
    std::optional<Parity> p;
    for (std::size_t a = 0; a < module.rank(); ++a)
      for (std::size_t b = 0; b < module.rank(); ++b)
        for (std::size_t k = 0; k < module.alg->dim(); ++k) {
          if (entries[a][b].coords[k].is_zero()) continue;
          Parity q = (module.gen_parities[a] + module.gen_parities[b] +
                      module.alg->parity(k)) % 2;
          if (!p)
            p = q;
          else if (*p != q)
            return std::nullopt;
        }
    return p ? p : std::optional<Parity>(0);
  }

  /// Composition of maps (this applied after o). Right-module maps compose
  /// as the plain matrix product; left-module maps pick up the coefficient
  /// sign rule, (X o Y)_{cb} = sum_a (-1)^{|y_ab||X|} y_ab x_ca.
  DSuperMatrix operator*(const DSuperMatrix& o) const {
    DSuperMatrix r = zero(module);
    if (module.side == ModuleSide::Right) {
      for (std::size_t i = 0; i < module.rank(); ++i)
        for (std::size_t k = 0; k < module.rank(); ++k) {
          if (entries[i][k].is_zero()) continue;
          for (std::size_t j = 0; j < module.rank(); ++j) {
            if (o.entries[k][j].is_zero()) continue;
            r.entries[i][j] += entries[i][k] * o.entries[k][j];
          }
        }
      return r;
    }
    auto px = parity();
    if (!px) throw std::invalid_argument("DSuperMatrix: left-module composition needs homogeneity");
    for (std::size_t c = 0; c < module.rank(); ++c)
      for (std::size_t a = 0; a < module.rank(); ++a) {
        if (entries[c][a].is_zero()) continue;
        for (std::size_t b = 0; b < module.rank(); ++b) {
          const auto& yab = o.entries[a][b];
          if (yab.is_zero()) continue;
          auto pyab = yab.parity();
          if (!pyab)
            throw std::invalid_argument("DSuperMatrix: inhomogeneous entry in composition");
          auto term = yab * entries[c][a];
          if ((*pyab * *px) % 2) term = -term;
          r.entries[c][b] += term;
        }
      }
    return r;
  }
  DSuperMatrix operator+(const DSuperMatrix& o) const {
    DSuperMatrix r = *this;
    for (std::size_t i = 0; i < module.rank(); ++i)
      for (std::size_t j = 0; j < module.rank(); ++j) r.entries[i][j] += o.entries[i][j];
    return r;
  }
  DSuperMatrix operator-() const {
    DSuperMatrix r = *this;
    for (auto& row : r.entries)
      for (auto& e : row) e = -e;
    return r;
  }
  friend bool operator==(const DSuperMatrix& a, const DSuperMatrix& b) {
    return a.entries == b.entries;
  }
};

/// Ordered base-field basis of the realified module: pairs (generator a,
/// algebra basis k), meaning w_a d_k (right) or d_k u_a (left), all even
/// vectors first, lexicographic (a, k) within each parity class.
template <class S>
struct RealifiedBasis {
  DModule<S> module;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::vector<std::size_t>> index;  // [a][k] -> position
  SuperSpace space;

  explicit RealifiedBasis(DModule<S> m) : module(std::move(m)) {
    const std::size_t d = module.alg->dim();
    index.assign(module.rank(), std::vector<std::size_t>(d));
    std::vector<Parity> par;
    for (Parity want : {0, 1})
      for (std::size_t a = 0; a < module.rank(); ++a)
        for (std::size_t k = 0; k < d; ++k) {
          Parity p = (module.gen_parities[a] + module.alg->parity(k)) % 2;
          if (p != want) continue;
          index[a][k] = pairs.size();
          pairs.emplace_back(a, k);
          par.push_back(p);
        }
    space = SuperSpace(std::move(par));
  }
};

template <class S>
SuperSpace realify_module(const DModule<S>& m) {
  return RealifiedBasis<S>(m).space;
}

/// Faithful base-field matrix of a homogeneous D-linear map; an injective
/// algebra homomorphism in both module conventions.
template <class S>
Mat<S> realify(const DSuperMatrix<S>& x, const RealifiedBasis<S>& basis) {
  auto px = x.parity();
  if (!px) throw std::invalid_argument("realify: inhomogeneous D-matrix");
  const auto& alg = *x.module.alg;
  const std::size_t d = alg.dim();
  const std::size_t n = basis.pairs.size();
  Mat<S> out(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    auto [b, l] = basis.pairs[col];
    auto dl = DElement<S>::basis(x.module.alg, l);
    for (std::size_t a = 0; a < x.module.rank(); ++a) {
      const DElement<S>& xab = x.entries[a][b];
      if (xab.is_zero()) continue;
      DElement<S> prod = x.module.side == ModuleSide::Right
                             ? xab * dl            // X(w_b d_l) = sum_a w_a (x_ab d_l)
                             : dl * xab;           // X(d_l u_b) = +-sum_a (d_l x_ab) u_a
      S sgn = scalar_traits<S>::one();
      if (x.module.side == ModuleSide::Left && (*px * alg.parity(l)) % 2)
        sgn = -sgn;
      for (std::size_t k = 0; k < d; ++k)
        if (!prod.coords[k].is_zero()) out(basis.index[a][k], col) += prod.coords[k] * sgn;
    }
  }
  return out;
}

/// Base-field basis of gl_D(module) as D-matrices (elementary matrix times
/// algebra basis element), homogeneous with the stated parities.
template <class S>
LieSpan<S> gl_d_span(const DModule<S>& m) {
  RealifiedBasis<S> basis(m);
  LieSpan<S> out{basis.space, {}, {}};
  std::vector<std::pair<Parity, Mat<S>>> even, odd;
  for (std::size_t a = 0; a < m.rank(); ++a)
    for (std::size_t b = 0; b < m.rank(); ++b)
      for (std::size_t k = 0; k < m.alg->dim(); ++k) {
        auto x = DSuperMatrix<S>::zero(m);
        x.entries[a][b] = DElement<S>::basis(m.alg, k);
        Parity p = (m.gen_parities[a] + m.gen_parities[b] + m.alg->parity(k)) % 2;
        (p == 0 ? even : odd).emplace_back(p, realify(x, basis));
      }
  for (auto& [p, mt] : even) out.push(p, std::move(mt));
  for (auto& [p, mt] : odd) out.push(p, std::move(mt));
  return out;
}

}  // namespace spodual
