#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "spodual/super.hpp"

namespace spodual {

/// Even, (-1)-supersymmetric, non-degenerate bilinear form: skew on the even
/// part, symmetric on the odd part, zero between parities.
template <class S>
struct BilinearSpace {
  SuperSpace space;
  Mat<S> gram;  // gram(i,j) = B(e_i, e_j)

  BilinearSpace() = default;
  BilinearSpace(SuperSpace sp, Mat<S> g, bool validate = true)
      : space(std::move(sp)), gram(std::move(g)) {
    if (gram.rows() != space.dim() || gram.cols() != space.dim())
      throw std::invalid_argument("BilinearSpace: gram shape mismatch");
    if (validate) {
      if (!is_even()) throw std::invalid_argument("BilinearSpace: form not even");
      if (!is_minus_supersymmetric())
        throw std::invalid_argument("BilinearSpace: form not (-1)-supersymmetric");
      if (!is_nondegenerate()) throw std::invalid_argument("BilinearSpace: degenerate form");
    }
  }

  bool is_even() const {
    for (std::size_t i = 0; i < space.dim(); ++i)
      for (std::size_t j = 0; j < space.dim(); ++j)
        if (!gram(i, j).is_zero() && space.parity(i) != space.parity(j)) return false;
    return true;
  }
  bool is_minus_supersymmetric() const {
    for (std::size_t i = 0; i < space.dim(); ++i)
      for (std::size_t j = 0; j < space.dim(); ++j) {
        S expect = gram(j, i);
        if ((space.parity(i) * space.parity(j)) % 2 == 0) expect = -expect;
        if (gram(i, j) != expect) return false;
      }
    return true;
  }
  bool is_nondegenerate() const { return rank(gram) == space.dim(); }

  /// B(u, v) for coordinate vectors.
  S eval(const std::vector<S>& u, const std::vector<S>& v) const {
    S out = scalar_traits<S>::zero();
    for (std::size_t i = 0; i < space.dim(); ++i) {
      if (u[i].is_zero()) continue;
      for (std::size_t j = 0; j < space.dim(); ++j)
        if (!gram(i, j).is_zero() && !v[j].is_zero()) out += u[i] * gram(i, j) * v[j];
    }
    return out;
  }
};

/// Membership test in spo(E,B) for a homogeneous matrix of stated parity.
template <class S>
bool in_spo(const BilinearSpace<S>& e, const Mat<S>& x, Parity px) {
  const std::size_t n = e.space.dim();
  // B(X e_c, e_j) + (-1)^{|X||e_c|} B(e_c, X e_j) = 0
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t j = 0; j < n; ++j) {
      S lhs = scalar_traits<S>::zero();
      for (std::size_t r = 0; r < n; ++r) {
        if (!x(r, c).is_zero() && !e.gram(r, j).is_zero()) lhs += x(r, c) * e.gram(r, j);
        if (!x(r, j).is_zero() && !e.gram(c, r).is_zero()) {
          S t = x(r, j) * e.gram(c, r);
          if ((px * e.space.parity(c)) % 2) t = -t;
          lhs += t;
        }
      }
      if (!lhs.is_zero()) return false;
    }
  return true;
}

/// Homogeneous basis of spo(E,B), computed parity-by-parity as a nullspace.
/// For graded dimension (2m|n) the dimension is m(2m+1) + n(n-1)/2 + 2mn.
template <class S>
LieSpan<S> spo_ambient(const BilinearSpace<S>& e) {
  const std::size_t n = e.space.dim();
  LieSpan<S> out{e.space, {}, {}};
  for (Parity alpha : {0, 1}) {
    // unknowns: entries (r,c) with |r| = |c| + alpha
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if ((e.space.parity(r) + e.space.parity(c)) % 2 == alpha) slots.emplace_back(r, c);
    Mat<S> sys(n * n, slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s) {
      auto [r, c] = slots[s];
      // contribution of X_{rc} to equation (i=c, j): B(X e_c, e_j) term
      for (std::size_t j = 0; j < n; ++j)
        if (!e.gram(r, j).is_zero()) sys(c * n + j, s) += e.gram(r, j);
      // contribution to equation (i, j=c): (-1)^{alpha |e_i|} B(e_i, X e_c)
      for (std::size_t i = 0; i < n; ++i)
        if (!e.gram(i, r).is_zero()) {
          S t = e.gram(i, r);
          if ((alpha * e.space.parity(i)) % 2) t = -t;
          sys(i * n + c, s) += t;
        }
    }
    for (const auto& v : nullspace(sys)) {
      Mat<S> x(n, n);
      for (std::size_t s = 0; s < slots.size(); ++s) x(slots[s].first, slots[s].second) = v[s];
      out.push(alpha, std::move(x));
    }
  }
  return out;
}

/// Supercommutant of g inside the span of `ambient`:
/// { X in ambient : [X, Y] = 0 for every basis Y of g }.
template <class S>
LieSpan<S> supercommutant(const LieSpan<S>& g, const LieSpan<S>& ambient) {
  if (g.ambient != ambient.ambient)
    throw std::invalid_argument("supercommutant: space mismatch");
  {
    auto ech = ambient.echelon();
    for (const auto& m : g.basis)
      if (!in_span(ech, m.flatten()))
        throw std::invalid_argument("supercommutant: g not inside ambient span");
  }
  const std::size_t n = ambient.ambient.dim();
  LieSpan<S> out{ambient.ambient, {}, {}};
  for (Parity alpha : {0, 1}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < ambient.dim(); ++i)
      if (ambient.parities[i] == alpha) idx.push_back(i);
    if (idx.empty()) continue;
    // rows: for each g-basis Y and each matrix entry, the coefficient of x_i in
    // [sum x_i A_i, Y] = sum x_i (A_i Y - (-1)^{alpha |Y|} Y A_i)
    Mat<S> sys(g.dim() * n * n, idx.size());
    for (std::size_t t = 0; t < idx.size(); ++t) {
      const Mat<S>& a = ambient.basis[idx[t]];
      for (std::size_t gi = 0; gi < g.dim(); ++gi) {
        Mat<S> ay = a * g.basis[gi];
        Mat<S> ya = g.basis[gi] * a;
        bool plus = (alpha * g.parities[gi]) % 2;
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) {
            S v = ay(r, c);
            v = plus ? v + ya(r, c) : v - ya(r, c);
            if (!v.is_zero()) sys(gi * n * n + r * n + c, t) = v;
          }
      }
    }
    for (const auto& sol : nullspace(sys)) {
      Mat<S> x(n, n);
      for (std::size_t t = 0; t < idx.size(); ++t)
        if (!sol[t].is_zero()) x = x + ambient.basis[idx[t]].scaled(sol[t]);
      out.push(alpha, std::move(x));
    }
  }
  return out;
}

/// Closed-form dimension of spo for graded dimension (d0|d1), d0 even.
inline std::size_t spo_dimension(std::size_t d0, std::size_t d1) {
  std::size_t m = d0 / 2;
  return m * (2 * m + 1) + d1 * (d1 - 1) / 2 + d0 * d1;
}

}  // namespace spodual
