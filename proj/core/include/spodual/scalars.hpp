#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spodual {

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit on purpose
  Rational(long n, long d) : v_(n, d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  explicit Rational(const mpz_class& z) : v_(z) {}

  /// Parses "p/q" or "p".
  static Rational parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational: empty string");
    mpq_class q;
    if (q.set_str(s, 10) != 0)
      throw std::invalid_argument("Rational: bad literal '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("Rational: zero denominator");
    q.canonicalize();
    return Rational(q);
  }

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

  std::string str() const { return v_.get_str(); }

 private:
  mpq_class v_;
};

/// Element of Q(i); stands in for a complex scalar.
struct Gaussian {
  Rational re, im;

  Gaussian() = default;
  Gaussian(long n) : re(n), im(0) {}  // NOLINT
  Gaussian(Rational r) : re(std::move(r)), im(0) {}  // NOLINT
  Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static Gaussian i() { return Gaussian(Rational(0), Rational(1)); }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_one() const { return re.is_one() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }

  Gaussian conj() const { return Gaussian(re, -im); }

  Gaussian operator-() const { return Gaussian(-re, -im); }
  Gaussian& operator+=(const Gaussian& o) { re += o.re; im += o.im; return *this; }
  Gaussian& operator-=(const Gaussian& o) { re -= o.re; im -= o.im; return *this; }
  Gaussian& operator*=(const Gaussian& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  Gaussian& operator/=(const Gaussian& o) {
    Rational n = o.re * o.re + o.im * o.im;
    if (n.is_zero()) throw std::domain_error("Gaussian: division by zero");
    Rational r = (re * o.re + im * o.im) / n;
    Rational i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

  std::string str() const {
    if (im.is_zero()) return re.str();
    std::string s = re.is_zero() ? "" : re.str();
    std::string it = im.str();
    if (!s.empty() && it[0] != '-') s += "+";
    return s + it + "i";
  }
};

// Scalar traits used by the generic linear-algebra and algebra layers.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_rational = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational conj(const Rational& x) { return x; }
  static const char* field_name() { return "Q"; }
};

template <>
struct scalar_traits<Gaussian> {
  static constexpr bool is_rational = false;
  static Gaussian zero() { return Gaussian(0); }
  static Gaussian one() { return Gaussian(1); }
  static Gaussian conj(const Gaussian& x) { return x.conj(); }
  static const char* field_name() { return "Q(i)"; }
};

inline Gaussian to_gaussian(const Rational& r) { return Gaussian(r); }
inline Gaussian to_gaussian(const Gaussian& g) { return g; }

/// Parses a scalar literal: "p/q" for Q, "a/b+c/di" style for Q(i).
inline Gaussian parse_gaussian(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_gaussian: empty");
  if (s.back() != 'i') return Gaussian(Rational::parse(s));
  std::string body = s.substr(0, s.size() - 1);
  // find the split between real and imaginary parts
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != '/') {
      std::string re = body.substr(0, k);
      std::string im = body.substr(k);
      if (im == "+" || im == "-") im += "1";
      return Gaussian(Rational::parse(re), Rational::parse(im));
    }
  }
  if (body.empty() || body == "+") return Gaussian(Rational(0), Rational(1));
  if (body == "-") return Gaussian(Rational(0), Rational(-1));
  return Gaussian(Rational(0), Rational::parse(body));
}

}  // namespace spodual
