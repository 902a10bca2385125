#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spodual/linalg.hpp"

namespace spodual {

using Parity = int;  // 0 = even, 1 = odd

/// Z2-graded vector space, carried entirely by the basis parity vector.
class SuperSpace {
 public:
  SuperSpace() = default;
  explicit SuperSpace(std::vector<Parity> parities) : p_(std::move(parities)) {
    for (Parity x : p_)
      if (x != 0 && x != 1) throw std::invalid_argument("SuperSpace: parity must be 0/1");
  }

  /// Standard space with n even basis vectors followed by m odd ones.
  static SuperSpace graded(std::size_t n, std::size_t m) {
    std::vector<Parity> p(n, 0);
    p.insert(p.end(), m, 1);
    return SuperSpace(std::move(p));
  }

  std::size_t dim() const { return p_.size(); }
  Parity parity(std::size_t i) const { return p_[i]; }
  const std::vector<Parity>& parities() const { return p_; }

  std::size_t dim_even() const {
    std::size_t n = 0;
    for (Parity x : p_) n += (x == 0);
    return n;
  }
  std::size_t dim_odd() const { return dim() - dim_even(); }

  friend bool operator==(const SuperSpace& a, const SuperSpace& b) { return a.p_ == b.p_; }
  friend bool operator!=(const SuperSpace& a, const SuperSpace& b) { return !(a == b); }

 private:
  std::vector<Parity> p_;
};

/// Matrix between graded spaces. Homogeneity is a derived property: the
/// matrix has parity a iff entry (r,c) != 0 implies |r| = |c| + a.
template <class S>
struct SuperMatrix {
  SuperSpace domain, codomain;
  Mat<S> mat;

  SuperMatrix() = default;
  SuperMatrix(SuperSpace dom, SuperSpace cod, Mat<S> m)
      : domain(std::move(dom)), codomain(std::move(cod)), mat(std::move(m)) {
    if (mat.rows() != codomain.dim() || mat.cols() != domain.dim())
      throw std::invalid_argument("SuperMatrix: shape mismatch");
  }

  static SuperMatrix endo(const SuperSpace& sp, Mat<S> m) { return SuperMatrix(sp, sp, m); }

  std::optional<Parity> parity() const {
    std::optional<Parity> found;
    for (std::size_t r = 0; r < mat.rows(); ++r)
      for (std::size_t c = 0; c < mat.cols(); ++c) {
        if (mat(r, c).is_zero()) continue;
        Parity a = (codomain.parity(r) + domain.parity(c)) % 2;
        if (!found)
          found = a;
        else if (*found != a)
          return std::nullopt;  // inhomogeneous
      }
    return found ? found : std::optional<Parity>(0);  // zero matrix counts as even
  }
};

/// Supercommutator [X,Y] = XY - (-1)^{|X||Y|} YX of homogeneous endomorphisms.
template <class S>
SuperMatrix<S> superbracket(const SuperMatrix<S>& x, const SuperMatrix<S>& y) {
  if (x.domain != y.domain || x.codomain != y.codomain || x.domain != x.codomain)
    throw std::invalid_argument("superbracket: need endomorphisms of one space");
  auto px = x.parity(), py = y.parity();
  if (!px || !py) throw std::invalid_argument("superbracket: inhomogeneous input");
  Mat<S> xy = x.mat * y.mat;
  Mat<S> yx = y.mat * x.mat;
  Mat<S> r = (*px * *py) % 2 ? xy + yx : xy - yx;
  return SuperMatrix<S>::endo(x.domain, std::move(r));
}

/// A Lie superalgebra presented by a list of homogeneous basis matrices in a
/// common ambient space.
template <class S>
struct LieSpan {
  SuperSpace ambient;
  std::vector<Parity> parities;      // parity of each basis matrix
  std::vector<Mat<S>> basis;

  std::size_t dim() const { return basis.size(); }
  std::pair<std::size_t, std::size_t> graded_dim() const {
    std::size_t e = 0;
    for (Parity p : parities) e += (p == 0);
    return {e, basis.size() - e};
  }

  void push(Parity p, Mat<S> m) {
    parities.push_back(p);
    basis.push_back(std::move(m));
  }

  std::vector<std::vector<S>> flat_rows() const {
    std::vector<std::vector<S>> rows;
    rows.reserve(basis.size());
    for (const auto& m : basis) rows.push_back(m.flatten());
    return rows;
  }
  std::size_t flat_width() const { return ambient.dim() * ambient.dim(); }

  RrefResult<S> echelon() const { return echelonize(flat_rows(), flat_width()); }

  bool contains(const Mat<S>& m) const { return in_span(echelon(), m.flatten()); }
};

template <class S>
bool span_equal(const LieSpan<S>& a, const LieSpan<S>& b) {
  if (a.ambient != b.ambient) return false;
  return span_equal(a.flat_rows(), b.flat_rows(), a.flat_width());
}

/// Checks that the span is closed under the superbracket.
template <class S>
bool bracket_closed(const LieSpan<S>& g) {
  auto ech = g.echelon();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i; j < g.dim(); ++j) {
      // basis parities are stored, not re-derived: the zero matrix would
      // otherwise be ambiguous
      Mat<S> xy = g.basis[i] * g.basis[j];
      Mat<S> yx = g.basis[j] * g.basis[i];
      Mat<S> br = (g.parities[i] * g.parities[j]) % 2 ? xy + yx : xy - yx;
      if (!in_span(ech, br.flatten())) return false;
    }
  return true;
}

/// Verifies linear independence of the stated basis.
template <class S>
bool basis_independent(const LieSpan<S>& g) {
  return echelonize(g.flat_rows(), g.flat_width()).pivots.size() == g.dim();
}

/// Intersects a LieSpan with another span given as echelonized rows.
template <class S>
LieSpan<S> span_sum(const LieSpan<S>& a, const LieSpan<S>& b) {
  if (a.ambient != b.ambient) throw std::invalid_argument("span_sum: ambient mismatch");
  LieSpan<S> out{a.ambient, {}, {}};
  auto rows = a.flat_rows();
  std::vector<Parity> ps = a.parities;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    rows.push_back(b.basis[i].flatten());
    ps.push_back(b.parities[i]);
  }
  // keep an independent subset, preserving order
  std::vector<std::vector<S>> kept;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (in_span(echelonize(kept, a.flat_width()), rows[i])) continue;
    kept.push_back(rows[i]);
    Mat<S> m(a.ambient.dim(), a.ambient.dim());
    for (std::size_t r = 0; r < a.ambient.dim(); ++r)
      for (std::size_t c = 0; c < a.ambient.dim(); ++c)
        m(r, c) = rows[i][r * a.ambient.dim() + c];
    out.push(ps[i], std::move(m));
  }
  return out;
}

}  // namespace spodual
