#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spodual/super.hpp"

namespace spodual {

enum class AlgebraName {
  Cl0R, Cl1R, Cl2R, Cl3R, Cl4R, Cl5R, Cl6R, Cl7R, Cl0C, Cl1C
};

const char* algebra_name_str(AlgebraName n);
std::optional<AlgebraName> parse_algebra_name(const std::string& s);

/// Structure-constant division superalgebra over Q or Q(i). The ten algebras
/// of the classification are built by make_algebra / make_algebra_complex;
/// sop() produces fresh tables. Instances are immutable and shared.
template <class S>
class DivisionSuperalgebra {
 public:
  using Ref = std::shared_ptr<const DivisionSuperalgebra<S>>;

  DivisionSuperalgebra(AlgebraName name, std::string display,
                       std::vector<std::string> symbols, std::vector<Parity> parities,
                       std::vector<std::vector<std::vector<S>>> table)
      : name_(name),
        display_(std::move(display)),
        symbols_(std::move(symbols)),
        parities_(std::move(parities)),
        table_(std::move(table)) {}

  AlgebraName name() const { return name_; }
  const std::string& display() const { return display_; }
  std::size_t dim() const { return symbols_.size(); }
  std::size_t unit_index() const { return 0; }  // basis always starts with 1
  Parity parity(std::size_t i) const { return parities_[i]; }
  const std::vector<Parity>& parities() const { return parities_; }
  const std::string& symbol(std::size_t i) const { return symbols_[i]; }

  /// coords of x_i * x_j
  const std::vector<S>& entry(std::size_t i, std::size_t j) const { return table_[i][j]; }

  std::vector<S> mul_coords(const std::vector<S>& a, const std::vector<S>& b) const {
    std::vector<S> out(dim(), scalar_traits<S>::zero());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (b[j].is_zero()) continue;
        S c = a[i] * b[j];
        for (std::size_t k = 0; k < dim(); ++k)
          if (!table_[i][j][k].is_zero()) out[k] += c * table_[i][j][k];
      }
    }
    return out;
  }

  /// Matrix of x |-> d * x on coordinates.
  Mat<S> left_mul_matrix(const std::vector<S>& d) const {
    Mat<S> m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      std::vector<S> e(dim(), scalar_traits<S>::zero());
      e[j] = scalar_traits<S>::one();
      auto col = mul_coords(d, e);
      for (std::size_t k = 0; k < dim(); ++k) m(k, j) = col[k];
    }
    return m;
  }

  /// Matrix of x |-> x * d on coordinates.
  Mat<S> right_mul_matrix(const std::vector<S>& d) const {
    Mat<S> m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      std::vector<S> e(dim(), scalar_traits<S>::zero());
      e[j] = scalar_traits<S>::one();
      auto col = mul_coords(e, d);
      for (std::size_t k = 0; k < dim(); ++k) m(k, j) = col[k];
    }
    return m;
  }

  bool table_associative() const {
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        for (std::size_t k = 0; k < dim(); ++k) {
          std::vector<S> ei(dim(), scalar_traits<S>::zero()), ej = ei, ek = ei;
          ei[i] = ej[j] = ek[k] = scalar_traits<S>::one();
          if (mul_coords(mul_coords(ei, ej), ek) != mul_coords(ei, mul_coords(ej, ek)))
            return false;
        }
    return true;
  }

  bool parity_additive() const {
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        for (std::size_t k = 0; k < dim(); ++k)
          if (!table_[i][j][k].is_zero() && parities_[k] != (parities_[i] + parities_[j]) % 2)
            return false;
    return true;
  }

  bool unit_two_sided() const {
    for (std::size_t i = 0; i < dim(); ++i) {
      std::vector<S> e(dim(), scalar_traits<S>::zero()), u = e;
      e[i] = scalar_traits<S>::one();
      u[unit_index()] = scalar_traits<S>::one();
      if (mul_coords(u, e) != e || mul_coords(e, u) != e) return false;
    }
    return true;
  }

 private:
  AlgebraName name_;
  std::string display_;
  std::vector<std::string> symbols_;
  std::vector<Parity> parities_;
  std::vector<std::vector<std::vector<S>>> table_;
};

template <class S>
using AlgebraRef = std::shared_ptr<const DivisionSuperalgebra<S>>;

/// Element of a division superalgebra.
template <class S>
struct DElement {
  AlgebraRef<S> alg;
  std::vector<S> coords;

  DElement() = default;
  DElement(AlgebraRef<S> a, std::vector<S> c) : alg(std::move(a)), coords(std::move(c)) {}

  static DElement zero(const AlgebraRef<S>& a) {
    return DElement(a, std::vector<S>(a->dim(), scalar_traits<S>::zero()));
  }
  static DElement unit(const AlgebraRef<S>& a) {
    auto e = zero(a);
    e.coords[a->unit_index()] = scalar_traits<S>::one();
    return e;
  }
  static DElement basis(const AlgebraRef<S>& a, std::size_t i) {
    auto e = zero(a);
    e.coords[i] = scalar_traits<S>::one();
    return e;
  }

  bool is_zero() const {
    for (const auto& c : coords)
      if (!c.is_zero()) return false;
    return true;
  }

  /// Parity is derived from support; nullopt when inhomogeneous.
  std::optional<Parity> parity() const {
    std::optional<Parity> p;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i].is_zero()) continue;
      if (!p)
        p = alg->parity(i);
      else if (*p != alg->parity(i))
        return std::nullopt;
    }
    return p ? p : std::optional<Parity>(0);
  }

  DElement operator-() const {
    DElement r = *this;
    for (auto& c : r.coords) c = -c;
    return r;
  }
  DElement& operator+=(const DElement& o) {
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
    return *this;
  }
  DElement& operator-=(const DElement& o) {
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
    return *this;
  }
  friend DElement operator+(DElement a, const DElement& b) { return a += b; }
  friend DElement operator-(DElement a, const DElement& b) { return a -= b; }
  friend DElement operator*(const DElement& a, const DElement& b) {
    return DElement(a.alg, a.alg->mul_coords(a.coords, b.coords));
  }
  DElement scaled(const S& c) const {
    DElement r = *this;
    for (auto& x : r.coords) x = x * c;
    return r;
  }
  friend bool operator==(const DElement& a, const DElement& b) { return a.coords == b.coords; }
  friend bool operator!=(const DElement& a, const DElement& b) { return !(a == b); }
};

/// delta(D) = (-1)^{|D|} D
template <class S>
DElement<S> delta(const DElement<S>& a) {
  DElement<S> r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i)
    if (a.alg->parity(i) == 1) r.coords[i] = -r.coords[i];
  return r;
}

/// Projection onto the real coordinate of the even complex part; over Q(i)
/// this is the coefficient of 1 (Re is the identity on the base field).
template <class S>
S re_part(const DElement<S>& a) {
  return a.coords[a.alg->unit_index()];
}

/// Inverse of a homogeneous nonzero element.
template <class S>
DElement<S> inv(const DElement<S>& a) {
  if (a.is_zero()) throw std::domain_error("inv: zero element");
  if (!a.parity()) throw std::domain_error("inv: inhomogeneous element");
  auto sys = a.alg->left_mul_matrix(a.coords);  // a * x = 1
  std::vector<S> one(a.alg->dim(), scalar_traits<S>::zero());
  one[a.alg->unit_index()] = scalar_traits<S>::one();
  auto x = solve(sys, one);
  if (!x) throw std::domain_error("inv: element not invertible");
  DElement<S> r(a.alg, *x);
  if ((r * a).coords != one) throw std::domain_error("inv: one-sided inverse only");
  return r;
}

/// Super-opposite algebra: D o D' := (-1)^{|D||D'|} D'D, as a fresh table.
template <class S>
AlgebraRef<S> sop(const AlgebraRef<S>& a) {
  std::vector<std::vector<std::vector<S>>> t(a->dim(),
      std::vector<std::vector<S>>(a->dim()));
  for (std::size_t i = 0; i < a->dim(); ++i)
    for (std::size_t j = 0; j < a->dim(); ++j) {
      auto v = a->entry(j, i);
      if ((a->parity(i) * a->parity(j)) % 2)
        for (auto& c : v) c = -c;
      t[i][j] = std::move(v);
    }
  std::vector<std::string> syms;
  std::vector<Parity> ps;
  for (std::size_t i = 0; i < a->dim(); ++i) {
    syms.push_back(a->symbol(i));
    ps.push_back(a->parity(i));
  }
  return std::make_shared<DivisionSuperalgebra<S>>(a->name(), a->display() + "^sop",
                                                   std::move(syms), std::move(ps), std::move(t));
}

/// Superinvolution, stored as a base-field-linear matrix on the algebra's
/// coordinates (conjugate-linear maps are representable this way over the
/// realified basis).
template <class S>
struct Superinvolution {
  AlgebraRef<S> alg;
  Mat<S> mat;
  std::string tag;

  DElement<S> apply(const DElement<S>& x) const { return DElement<S>(x.alg, mat.apply(x.coords)); }

  bool is_valid() const {
    // iota^2 = id and the signed antihomomorphism law on all basis pairs
    if (mat * mat != Mat<S>::identity(alg->dim())) return false;
    for (std::size_t i = 0; i < alg->dim(); ++i)
      for (std::size_t j = 0; j < alg->dim(); ++j) {
        auto xi = DElement<S>::basis(alg, i), xj = DElement<S>::basis(alg, j);
        auto lhs = apply(xi * xj);
        auto rhs = apply(xj) * apply(xi);
        if ((alg->parity(i) * alg->parity(j)) % 2)
          rhs = -rhs;
        if (lhs != rhs) return false;
      }
    // evenness
    for (std::size_t i = 0; i < alg->dim(); ++i)
      for (std::size_t j = 0; j < alg->dim(); ++j)
        if (!mat(i, j).is_zero() && alg->parity(i) != alg->parity(j)) return false;
    return true;
  }
};

// --- factories -------------------------------------------------------------

/// The ten division superalgebras over the rational model of R.
template <class S>
AlgebraRef<S> make_algebra(AlgebraName n);

/// C and Cl1(C) over the base field Q(i).
AlgebraRef<Gaussian> make_algebra_complex(AlgebraName n);

/// All superinvolutions the classification admits for this algebra:
/// identity and/or conjugation when the odd part vanishes, {iota1, iota2}
/// for Cl1(C) over Q, empty otherwise.
template <class S>
std::vector<Superinvolution<S>> superinvolutions(const AlgebraRef<S>& a);

/// iota composed with delta (as matrices).
template <class S>
Superinvolution<S> compose_delta(const Superinvolution<S>& io) {
  Mat<S> d = Mat<S>::identity(io.alg->dim());
  for (std::size_t i = 0; i < io.alg->dim(); ++i)
    if (io.alg->parity(i) == 1) d(i, i) = -scalar_traits<S>::one();
  return Superinvolution<S>{io.alg, io.mat * d, io.tag + "*delta"};
}

/// Signed parity-preserving basis bijection realizing A ~ B, if one exists.
/// Search over signed permutations of the homogeneous basis, unit fixed;
/// sufficient at dimension <= 8.
template <class S>
struct SignedBijection {
  std::vector<std::size_t> perm;  // image index per basis index
  std::vector<int> sign;          // +-1 per basis index
};

template <class S>
std::optional<SignedBijection<S>> find_signed_isomorphism(const AlgebraRef<S>& a,
                                                          const AlgebraRef<S>& b);

// --- implementation of factories -------------------------------------------

namespace detail {

template <class S>
struct RawAlgebra {
  std::vector<std::string> syms;
  std::vector<Parity> par;
  std::vector<std::vector<std::vector<S>>> tab;
};

// base algebras R, C, H over Q (as structure constants)
template <class S>
RawAlgebra<S> base_real() {
  return {{"1"}, {0}, {{{scalar_traits<S>::one()}}}};
}

template <class S>
RawAlgebra<S> base_complex() {
  auto o = scalar_traits<S>::one();
  auto z = scalar_traits<S>::zero();
  RawAlgebra<S> r;
  r.syms = {"1", "i"};
  r.par = {0, 0};
  r.tab = {{{o, z}, {z, o}}, {{z, o}, {-o, z}}};
  return r;
}

template <class S>
RawAlgebra<S> base_quaternion() {
  auto o = scalar_traits<S>::one();
  auto z = scalar_traits<S>::zero();
  RawAlgebra<S> r;
  r.syms = {"1", "i", "j", "ij"};
  r.par = {0, 0, 0, 0};
  auto c = [&](long k, long s) {
    std::vector<S> v(4, z);
    v[k] = s == 1 ? o : -o;
    return v;
  };
  // row-major: tab[a][b] = coords of x_a x_b
  r.tab = {
      {c(0, 1), c(1, 1), c(2, 1), c(3, 1)},
      {c(1, 1), c(0, -1), c(3, 1), c(2, -1)},
      {c(2, 1), c(3, -1), c(0, -1), c(1, 1)},
      {c(3, 1), c(2, 1), c(1, -1), c(0, -1)},
  };
  return r;
}

// Adjoins an odd epsilon with eps^2 = s; sigma tells how eps moves past the
// base: eps * y = sigma(y) * eps. For the algebras in the classification,
// sigma is either the identity or complex conjugation.
template <class S>
RawAlgebra<S> adjoin_epsilon(const RawAlgebra<S>& base, int s, bool conj_sigma) {
  const std::size_t d = base.syms.size();
  RawAlgebra<S> r;
  for (std::size_t i = 0; i < d; ++i) {
    r.syms.push_back(base.syms[i]);
    r.par.push_back(0);
  }
  for (std::size_t i = 0; i < d; ++i) {
    r.syms.push_back(base.syms[i] == "1" ? "e" : base.syms[i] + "e");
    r.par.push_back(1);
  }
  auto z = scalar_traits<S>::zero();
  auto sig = [&](std::size_t i, S& sgn) {
    // sigma(x_i) = +- x_i entrywise for our bases: conjugation negates i
    sgn = scalar_traits<S>::one();
    if (conj_sigma && base.syms[i] == "i") sgn = -scalar_traits<S>::one();
    return i;
  };
  r.tab.assign(2 * d, std::vector<std::vector<S>>(2 * d, std::vector<S>(2 * d, z)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto& prod = base.tab[i][j];
      // x_i * x_j
      for (std::size_t k = 0; k < d; ++k) r.tab[i][j][k] = prod[k];
      // x_i * (x_j e) = (x_i x_j) e
      for (std::size_t k = 0; k < d; ++k) r.tab[i][d + j][d + k] = prod[k];
      // (x_i e) * x_j = (x_i sigma(x_j)) e
      S sgn;
      std::size_t jj = sig(j, sgn);
      const auto& prod2 = base.tab[i][jj];
      for (std::size_t k = 0; k < d; ++k) r.tab[d + i][j][d + k] = prod2[k] * sgn;
      // (x_i e)(x_j e) = s * x_i sigma(x_j)
      S se = s == 1 ? scalar_traits<S>::one() : -scalar_traits<S>::one();
      for (std::size_t k = 0; k < d; ++k) r.tab[d + i][d + j][k] = prod2[k] * sgn * se;
    }
  return r;
}

}  // namespace detail

template <class S>
AlgebraRef<S> make_algebra(AlgebraName n) {
  using detail::RawAlgebra;
  RawAlgebra<S> raw;
  switch (n) {
    case AlgebraName::Cl0R: raw = detail::base_real<S>(); break;
    case AlgebraName::Cl1R: raw = detail::adjoin_epsilon(detail::base_real<S>(), -1, false); break;
    case AlgebraName::Cl2R: raw = detail::adjoin_epsilon(detail::base_complex<S>(), -1, true); break;
    case AlgebraName::Cl3R: raw = detail::adjoin_epsilon(detail::base_quaternion<S>(), 1, false); break;
    case AlgebraName::Cl4R: raw = detail::base_quaternion<S>(); break;
    case AlgebraName::Cl5R: raw = detail::adjoin_epsilon(detail::base_quaternion<S>(), -1, false); break;
    case AlgebraName::Cl6R: raw = detail::adjoin_epsilon(detail::base_complex<S>(), 1, true); break;
    case AlgebraName::Cl7R: raw = detail::adjoin_epsilon(detail::base_real<S>(), 1, false); break;
    case AlgebraName::Cl0C: raw = detail::base_complex<S>(); break;
    case AlgebraName::Cl1C: raw = detail::adjoin_epsilon(detail::base_complex<S>(), 1, false); break;
  }
  return std::make_shared<DivisionSuperalgebra<S>>(n, algebra_name_str(n), std::move(raw.syms),
                                                   std::move(raw.par), std::move(raw.tab));
}

inline AlgebraRef<Gaussian> make_algebra_complex(AlgebraName n) {
  using detail::RawAlgebra;
  RawAlgebra<Gaussian> raw;
  switch (n) {
    case AlgebraName::Cl0C: raw = detail::base_real<Gaussian>(); break;
    case AlgebraName::Cl1C: raw = detail::adjoin_epsilon(detail::base_real<Gaussian>(), 1, false); break;
    default:
      throw std::invalid_argument("make_algebra_complex: only Cl0C/Cl1C live over Q(i)");
  }
  std::string disp = std::string(algebra_name_str(n)) + "/C";
  return std::make_shared<DivisionSuperalgebra<Gaussian>>(n, disp, std::move(raw.syms),
                                                          std::move(raw.par), std::move(raw.tab));
}

template <class S>
std::vector<Superinvolution<S>> superinvolutions(const AlgebraRef<S>& a) {
  std::vector<Superinvolution<S>> out;
  const std::size_t d = a->dim();
  auto ident = Mat<S>::identity(d);
  auto conj_mat = [&]() {
    // negate every symbol containing i, j or ij (quaternion/complex conjugation)
    Mat<S> m = Mat<S>::identity(d);
    for (std::size_t k = 0; k < d; ++k)
      if (a->symbol(k) != "1" && a->symbol(k) != "e") m(k, k) = -scalar_traits<S>::one();
    return m;
  };
  bool has_odd = false;
  for (std::size_t k = 0; k < d; ++k) has_odd |= (a->parity(k) == 1);

  if (!has_odd) {
    switch (a->name()) {
      case AlgebraName::Cl0R:
        out.push_back({a, ident, "triv"});
        break;
      case AlgebraName::Cl0C:
        out.push_back({a, ident, "triv"});
        if (d == 2) out.push_back({a, conj_mat(), "conj"});  // realified C only
        break;
      case AlgebraName::Cl4R:
        out.push_back({a, conj_mat(), "conj"});
        break;
      default:
        break;
    }
    return out;
  }
  if (a->name() == AlgebraName::Cl1C && d == 4) {
    // iota1(alpha + beta e) = conj(alpha) + i conj(beta) e, iota2 likewise with -i.
    // Basis {1, i, e, ie}: iota1: 1->1, i->-i, e->ie, ie->e.
    Mat<S> m1(d, d), m2(d, d);
    auto o = scalar_traits<S>::one();
    m1(0, 0) = o; m1(1, 1) = -o; m1(3, 2) = o; m1(2, 3) = o;
    m2(0, 0) = o; m2(1, 1) = -o; m2(3, 2) = -o; m2(2, 3) = -o;
    out.push_back({a, m1, "iota1"});
    out.push_back({a, m2, "iota2"});
  }
  return out;  // every other algebra with odd part admits none
}

template <class S>
std::optional<SignedBijection<S>> find_signed_isomorphism(const AlgebraRef<S>& a,
                                                          const AlgebraRef<S>& b) {
  const std::size_t d = a->dim();
  if (d != b->dim()) return std::nullopt;
  std::vector<std::size_t> evens, odds, bevens, bodds;
  for (std::size_t i = 0; i < d; ++i) (a->parity(i) == 0 ? evens : odds).push_back(i);
  for (std::size_t i = 0; i < d; ++i) (b->parity(i) == 0 ? bevens : bodds).push_back(i);
  if (evens.size() != bevens.size()) return std::nullopt;
  if (evens.empty() || evens[0] != 0 || bevens[0] != 0) return std::nullopt;

  std::vector<std::size_t> pe(bevens.begin() + 1, bevens.end());  // images of non-unit evens
  std::sort(pe.begin(), pe.end());
  std::vector<std::size_t> po = bodds;
  std::sort(po.begin(), po.end());

  auto check = [&](const std::vector<std::size_t>& perm, const std::vector<int>& sign) {
    // map(x_i) = sign[i] * y_{perm[i]}; homomorphism on all basis pairs
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const auto& prod = a->entry(i, j);
        // image of product
        std::vector<S> lhs(d, scalar_traits<S>::zero());
        for (std::size_t k = 0; k < d; ++k) {
          if (prod[k].is_zero()) continue;
          S c = prod[k];
          if (sign[k] < 0) c = -c;
          lhs[perm[k]] += c;
        }
        std::vector<S> rhs = b->entry(perm[i], perm[j]);
        if (sign[i] * sign[j] < 0)
          for (auto& c : rhs) c = -c;
        if (lhs != rhs) return false;
      }
    return true;
  };

  std::vector<std::size_t> perm(d);
  perm[0] = 0;
  do {
    for (std::size_t t = 0; t < pe.size(); ++t) perm[evens[t + 1]] = pe[t];
    std::vector<std::size_t> po2 = po;
    do {
      for (std::size_t t = 0; t < po2.size(); ++t) perm[odds[t]] = po2[t];
      const std::size_t nf = d - 1;  // unit sign fixed +
      for (std::size_t mask = 0; mask < (1ull << nf); ++mask) {
        std::vector<int> sign(d, 1);
        for (std::size_t t = 0; t < nf; ++t)
          if (mask & (1ull << t)) sign[t + 1] = -1;
        if (check(perm, sign)) return SignedBijection<S>{perm, sign};
      }
    } while (std::next_permutation(po2.begin(), po2.end()));
  } while (std::next_permutation(pe.begin(), pe.end()));
  return std::nullopt;
}

}  // namespace spodual
