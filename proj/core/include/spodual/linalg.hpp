#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spodual/scalars.hpp"

namespace spodual {

/// Dense matrix over an exact scalar.
template <class S>
class Mat {
 public:
  Mat() : r_(0), c_(0) {}
  Mat(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c, scalar_traits<S>::zero()) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = scalar_traits<S>::one();
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }

  S& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  Mat operator+(const Mat& o) const {
    check_same_shape(o);
    Mat m(r_, c_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
    return m;
  }
  Mat operator-(const Mat& o) const {
    check_same_shape(o);
    Mat m(r_, c_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
    return m;
  }
  Mat operator*(const Mat& o) const {
    if (c_ != o.r_) throw std::invalid_argument("Mat: shape mismatch in product");
    Mat m(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < c_; ++k) {
        const S& x = (*this)(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < o.c_; ++j) {
          if (o(k, j).is_zero()) continue;
          m(i, j) += x * o(k, j);
        }
      }
    return m;
  }
  Mat scaled(const S& c) const {
    Mat m(r_, c_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * c;
    return m;
  }
  Mat transposed() const {
    Mat m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  std::vector<S> flatten() const { return a_; }

  /// Applies v |-> M v.
  std::vector<S> apply(const std::vector<S>& v) const {
    if (v.size() != c_) throw std::invalid_argument("Mat::apply: size mismatch");
    std::vector<S> w(r_, scalar_traits<S>::zero());
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j)
        if (!(*this)(i, j).is_zero() && !v[j].is_zero()) w[i] += (*this)(i, j) * v[j];
    return w;
  }

 private:
  void check_same_shape(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Mat: shape mismatch");
  }
  std::size_t r_, c_;
  std::vector<S> a_;
};

template <class S>
struct RrefResult {
  Mat<S> mat;                // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column per surviving row
};

namespace detail {

// Plain fraction Gauss-Jordan; used for Q(i) entries where fraction-free
// elimination has no integral domain to work in.
template <class S>
RrefResult<S> rref_fraction(Mat<S> m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!m(i, c).is_zero()) { p = i; break; }
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(p, j));
    S inv = scalar_traits<S>::one() / m(r, c);
    for (std::size_t j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      S f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  Mat<S> out(pivots.size(), cols);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = m(i, j);
  return {std::move(out), std::move(pivots)};
}

// Fraction-free Bareiss forward elimination over the integers (rows are
// cleared of denominators first), followed by a rational normalization pass.
// Controls intermediate coefficient growth compared to naive fractions.
RrefResult<Rational> rref_bareiss(const Mat<Rational>& a);

}  // namespace detail

template <class S>
RrefResult<S> rref(const Mat<S>& m) {
  if constexpr (scalar_traits<S>::is_rational)
    return detail::rref_bareiss(m);
  else
    return detail::rref_fraction(m);
}

inline RrefResult<Rational> detail::rref_bareiss(const Mat<Rational>& a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  // integer working copy, one denominator-free row at a time
  std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < cols; ++j) l = lcm(l, a(i, j).den());
    for (std::size_t j = 0; j < cols; ++j)
      m[i][j] = a(i, j).num() * (l / a(i, j).den());
  }

  std::vector<std::size_t> pivots;
  std::vector<std::size_t> pivrow;
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (m[i][c] != 0) { p = i; break; }
    if (p == rows) continue;
    if (p != r) std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class t = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    pivots.push_back(c);
    ++r;
  }

  // normalize to RREF over Q
  Mat<Rational> out(pivots.size(), cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    Rational lead(mpq_class(m[i][pivots[i]]));
    for (std::size_t j = pivots[i]; j < cols; ++j)
      out(i, j) = Rational(mpq_class(m[i][j])) / lead;
  }
  for (std::size_t i = pivots.size(); i-- > 0;) {
    for (std::size_t k = 0; k < i; ++k) {
      Rational f = out(k, pivots[i]);
      if (f.is_zero()) continue;
      for (std::size_t j = pivots[i]; j < cols; ++j)
        out(k, j) -= f * out(i, j);
    }
  }
  return {std::move(out), std::move(pivots)};
}

/// Exact basis of {x : A x = 0}.
template <class S>
std::vector<std::vector<S>> nullspace(const Mat<S>& a) {
  auto rr = rref(a);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  std::vector<std::vector<S>> basis;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    std::vector<S> v(n, scalar_traits<S>::zero());
    v[j] = scalar_traits<S>::one();
    for (std::size_t i = 0; i < rr.pivots.size(); ++i)
      v[rr.pivots[i]] = -rr.mat(i, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves A x = b; returns nullopt when inconsistent.
template <class S>
std::optional<std::vector<S>> solve(const Mat<S>& a, const std::vector<S>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: size mismatch");
  Mat<S> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto rr = rref(aug);
  std::vector<S> x(a.cols(), scalar_traits<S>::zero());
  for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
    if (rr.pivots[i] == a.cols()) return std::nullopt;  // 0 = 1 row
    x[rr.pivots[i]] = rr.mat(i, a.cols());
  }
  return x;
}

template <class S>
std::size_t rank(const Mat<S>& a) { return rref(a).pivots.size(); }

/// Rows spanning a subspace, reduced to the canonical echelon form used for
/// all span comparisons. No tolerance parameter exists anywhere.
template <class S>
Mat<S> span_echelon(const std::vector<std::vector<S>>& rows, std::size_t width) {
  Mat<S> m(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != width) throw std::invalid_argument("span_echelon: ragged rows");
    for (std::size_t j = 0; j < width; ++j) m(i, j) = rows[i][j];
  }
  return rref(m).mat;
}

template <class S>
bool span_equal(const std::vector<std::vector<S>>& a, const std::vector<std::vector<S>>& b,
                std::size_t width) {
  return span_echelon(a, width) == span_echelon(b, width);
}

/// Reduces v against an echelonized span; returns the residual.
template <class S>
std::vector<S> reduce_against(const RrefResult<S>& ech, std::vector<S> v) {
  for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
    const S& c = v[ech.pivots[i]];
    if (c.is_zero()) continue;
    S f = c;  // pivot entries are 1
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!ech.mat(i, j).is_zero()) v[j] -= f * ech.mat(i, j);
  }
  return v;
}

template <class S>
bool in_span(const RrefResult<S>& ech, const std::vector<S>& v) {
  auto r = reduce_against(ech, v);
  for (const auto& x : r)
    if (!x.is_zero()) return false;
  return true;
}

template <class S>
RrefResult<S> echelonize(const std::vector<std::vector<S>>& rows, std::size_t width) {
  Mat<S> m(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) m(i, j) = rows[i][j];
  return rref(m);
}

}  // namespace spodual
