#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spodual/forms.hpp"

namespace spodual {

/// The Lie superalgebra families occurring in dual pairs. Real and complex
/// variants of gl/q/p/osp/spo share a kind and are told apart by the field.
enum class FamilyKind { GL, Q, QBar, P, PBar, PStar, OSp, SpO, U, SpOStar, OSpStar, QSig };

const char* family_kind_name(FamilyKind k);
std::optional<FamilyKind> parse_family_kind(const std::string& s);

struct FamilyTag {
  FamilyKind kind;
  std::vector<std::size_t> params;
  char field = 'R';  // 'R', 'C' or 'H' where applicable

  std::string str() const;
};

/// True when the family is emitted over Q(i) rather than Q.
bool family_is_complex(const FamilyTag& tag);

/// Validates parameter counts and constraints (e.g. even symplectic rank).
void validate_family(const FamilyTag& tag);

/// Closed-form graded dimension over the emission field.
std::pair<std::size_t, std::size_t> family_expected_dim(const FamilyTag& tag);

/// Realization from the fixed-point / block constraints of the explicit
/// matrix models, solved as nullspaces; realified per the module conventions.
LieSpan<Rational> realize_real(const FamilyTag& tag);
LieSpan<Gaussian> realize_complex(const FamilyTag& tag);

struct CrosscheckReport {
  FamilyTag tag;
  std::pair<std::size_t, std::size_t> dim_realize, dim_reference;
  bool spans_equal = false;
  bool bracket_closed_ok = false;
  std::string reference_route;  // "gl_D" or "g_of_form"
};

/// Compares realize() against the division-superalgebra route
/// (gl_D or g(W,gamma) with the matching data), after realification.
CrosscheckReport crosscheck(const FamilyTag& tag);

// --- the embedding maps of the explicit realizations -------------------------
// These reproduce the matrices printed in the source construction (row
// convention); their images satisfy the stated fixed-point equations.

/// xi_t: Mat(t, C) -> Mat(2t, R), A + iB |-> [[A, B], [-B, A]].
Mat<Rational> embed_xi(const Mat<Gaussian>& m);

/// Quaternion t x t matrix as four real matrices A + iB + jC + ijD.
struct QuaternionMat {
  Mat<Rational> a, b, c, d;
  std::size_t size() const { return a.rows(); }
};

/// xi'_t: Mat(t, H) -> Mat(2t, C), (A+iB) + j(C-iD) |-> [[A+iB, -C+iD], [C+iD, A-iB]].
Mat<Gaussian> embed_xi_prime(const QuaternionMat& m);

/// Psi_n (eps^2 = 1, central): A + B eps |-> [[A, B], [B, A]].
template <class S>
Mat<S> embed_psi(const Mat<S>& a, const Mat<S>& b);

/// Psi'_n (eps^2 = -1, central): A + B eps |-> [[A, B], [-B, A]].
template <class S>
Mat<S> embed_psi_prime(const Mat<S>& a, const Mat<S>& b);

/// Psi-check_n (eps^2 = 1, eps i = -i eps): A + B eps |-> [[A, B], [conj B, conj A]].
Mat<Gaussian> embed_psi_check(const Mat<Gaussian>& a, const Mat<Gaussian>& b);

/// Psi-check'_n (eps^2 = -1, eps i = -i eps): A + B eps |-> [[A, B], [-conj B, conj A]].
Mat<Gaussian> embed_psi_check_prime(const Mat<Gaussian>& a, const Mat<Gaussian>& b);

// fixed-point characterizations (block maps on Mat(n|n, .))
template <class S>
Mat<S> block_pi(const Mat<S>& x);        // [[A,B],[C,D]] -> [[D,C],[B,A]]
template <class S>
Mat<S> block_minus_st(const Mat<S>& x);  // -> [[-A^t, C^t], [-B^t, -D^t]]
Mat<Gaussian> block_sigma(const Mat<Gaussian>& x);  // entrywise conjugation

// --- template implementations -------------------------------------------------

template <class S>
Mat<S> embed_psi(const Mat<S>& a, const Mat<S>& b) {
  const std::size_t n = a.rows();
  Mat<S> m(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = a(i, j);
      m(n + i, n + j) = a(i, j);
      m(i, n + j) = b(i, j);
      m(n + i, j) = b(i, j);
    }
  return m;
}

template <class S>
Mat<S> embed_psi_prime(const Mat<S>& a, const Mat<S>& b) {
  const std::size_t n = a.rows();
  Mat<S> m(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = a(i, j);
      m(n + i, n + j) = a(i, j);
      m(i, n + j) = b(i, j);
      m(n + i, j) = -b(i, j);
    }
  return m;
}

template <class S>
Mat<S> block_pi(const Mat<S>& x) {
  const std::size_t n = x.rows() / 2;
  Mat<S> m(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = x(n + i, n + j);
      m(i, n + j) = x(n + i, j);
      m(n + i, j) = x(i, n + j);
      m(n + i, n + j) = x(i, j);
    }
  return m;
}

template <class S>
Mat<S> block_minus_st(const Mat<S>& x) {
  const std::size_t n = x.rows() / 2;
  Mat<S> m(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = -x(j, i);
      m(i, n + j) = x(n + j, i);
      m(n + i, j) = -x(j, n + i);
      m(n + i, n + j) = -x(n + j, n + i);
    }
  return m;
}

}  // namespace spodual
