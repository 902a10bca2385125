#include "spodual/families.hpp"

#include <functional>
#include <sstream>

namespace spodual {

namespace {

// ---- generic constraint solving over D-entry matrices ----------------------

template <class S>
using Grid = std::vector<std::vector<DElement<S>>>;

template <class S>
Grid<S> zero_grid(const AlgebraRef<S>& alg, std::size_t r, std::size_t c) {
  return Grid<S>(r, std::vector<DElement<S>>(c, DElement<S>::zero(alg)));
}

// Solves per-parity linear relations on an unknown D-matrix and returns the
// realified homogeneous basis.
template <class S>
struct ConstraintProblem {
  DModule<S> module;
  // assemble(alpha, sys): fill equations for parity-alpha unknowns
  std::function<void(Parity, detail::DEntrySystem<S>&)> assemble;
  std::size_t n_eq_blocks = 0;

  LieSpan<S> solve_all() const {
    RealifiedBasis<S> basis(module);
    const auto& alg = module.alg;
    const std::size_t r = module.rank(), d = alg->dim();
    LieSpan<S> out{basis.space, {}, {}};
    for (Parity alpha : {0, 1}) {
      detail::DEntrySystem<S> sys(r, d, n_eq_blocks);
      assemble(alpha, sys);
      std::vector<std::size_t> keep;
      for (std::size_t s = 0; s < sys.slots.size(); ++s) {
        auto [a, b] = sys.slots[s];
        Parity pe = (alpha + module.gen_parities[a] + module.gen_parities[b]) % 2;
        for (std::size_t k = 0; k < d; ++k)
          if (alg->parity(k) == pe) keep.push_back(s * d + k);
      }
      if (keep.empty()) continue;
      Mat<S> restricted(sys.sys.rows(), keep.size());
      for (std::size_t i = 0; i < sys.sys.rows(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j) restricted(i, j) = sys.sys(i, keep[j]);
      for (const auto& v : nullspace(restricted)) {
        auto x = DSuperMatrix<S>::zero(module);
        for (std::size_t j = 0; j < keep.size(); ++j) {
          if (v[j].is_zero()) continue;
          std::size_t s = keep[j] / d, k = keep[j] % d;
          auto [a, b] = sys.slots[s];
          x.entries[a][b].coords[k] += v[j];
        }
        out.push(alpha, realify(x, basis));
      }
    }
    return out;
  }
};

// Entry involution matrices on algebra coordinates.
template <class S>
Mat<S> op_identity(const AlgebraRef<S>& alg) {
  return Mat<S>::identity(alg->dim());
}
template <class S>
Mat<S> op_conj(const AlgebraRef<S>& alg) {
  // negates every coordinate whose symbol involves i, j or ij
  Mat<S> m = Mat<S>::identity(alg->dim());
  for (std::size_t k = 0; k < alg->dim(); ++k) {
    const auto& s = alg->symbol(k);
    if (s != "1" && s != "e") m(k, k) = -m(k, k);
  }
  return m;
}

// Fixed-point families: X = T(X), with T(X)_{rc} = sign(r,c) op(X_{src(r,c)})
// where src involves the block swap Pi and possibly a transpose.
enum class FixedPointKind { Pi, SigmaPi, MinusStPi, MinusStPiSigma };

template <class S>
LieSpan<S> solve_fixed_point(const DModule<S>& module, FixedPointKind kind,
                             const Mat<S>& op) {
  const std::size_t n = module.rank() / 2;
  ConstraintProblem<S> prob;
  prob.module = module;
  prob.n_eq_blocks = module.rank() * module.rank();
  Mat<S> id = Mat<S>::identity(module.alg->dim());
  prob.assemble = [n, kind, op, id, rank = module.rank()](Parity, detail::DEntrySystem<S>& sys) {
    auto pi = [n](std::size_t t) { return t < n ? t + n : t - n; };
    for (std::size_t r0 = 0; r0 < rank; ++r0)
      for (std::size_t c0 = 0; c0 < rank; ++c0) {
        std::size_t eq = r0 * rank + c0;
        sys.add(eq, r0, c0, id);
        std::size_t sr = 0, sc = 0;
        int sg = 1;
        bool use_op = false;
        switch (kind) {
          case FixedPointKind::Pi:
            sr = pi(r0); sc = pi(c0);
            break;
          case FixedPointKind::SigmaPi:
            sr = pi(r0); sc = pi(c0); use_op = true;
            break;
          case FixedPointKind::MinusStPi:
          case FixedPointKind::MinusStPiSigma: {
            // T(X)_{rc} = tau(r,c) X_{pi(c), pi(r)}, tau = +1 only on the
            // upper-right block
            bool rb = r0 >= n, cb = c0 >= n;
            sg = (!rb && cb) ? 1 : -1;
            sr = pi(c0); sc = pi(r0);
            use_op = kind == FixedPointKind::MinusStPiSigma;
            break;
          }
        }
        Mat<S> coeff = use_op ? op : id;
        if (sg < 0) coeff = coeff.scaled(-scalar_traits<S>::one());
        // X_{rc} - T(X)_{rc} = 0
        coeff = coeff.scaled(-scalar_traits<S>::one());
        sys.add(eq, sr, sc, coeff);
      }
  };
  return prob.solve_all();
}

// Form families via the explicit block relations:
//   op(X1)^t G0 + G0 X1 = 0,  op(X4)^t G1 + G1 X4 = 0,
//   op(X3)^t G1 + G0 X2 = 0,  op(X2)^t G0 - G1 X3 = 0.
template <class S>
LieSpan<S> solve_block_form(const DModule<S>& module, std::size_t n0,
                            const Grid<S>& g0, const Grid<S>& g1, const Mat<S>& op) {
  const std::size_t n1 = module.rank() - n0;
  ConstraintProblem<S> prob;
  prob.module = module;
  prob.n_eq_blocks = module.rank() * module.rank();
  const auto alg = module.alg;
  prob.assemble = [=](Parity alpha, detail::DEntrySystem<S>& sys) {
    auto rmul = [&](const DElement<S>& g) { return alg->right_mul_matrix(g.coords) * op; };
    auto lmul = [&](const DElement<S>& g) { return alg->left_mul_matrix(g.coords); };
    std::size_t rank = module.rank();
    if (alpha == 0) {
      for (std::size_t i = 0; i < n0; ++i)
        for (std::size_t j = 0; j < n0; ++j) {
          std::size_t eq = i * rank + j;
          for (std::size_t r = 0; r < n0; ++r) {
            if (!g0[r][j].is_zero()) sys.add(eq, r, i, rmul(g0[r][j]));
            if (!g0[i][r].is_zero()) sys.add(eq, r, j, lmul(g0[i][r]));
          }
        }
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j) {
          std::size_t eq = (n0 + i) * rank + (n0 + j);
          for (std::size_t r = 0; r < n1; ++r) {
            if (!g1[r][j].is_zero()) sys.add(eq, n0 + r, n0 + i, rmul(g1[r][j]));
            if (!g1[i][r].is_zero()) sys.add(eq, n0 + r, n0 + j, lmul(g1[i][r]));
          }
        }
    } else {
      for (std::size_t i = 0; i < n0; ++i)
        for (std::size_t j = 0; j < n1; ++j) {
          std::size_t eq = i * rank + (n0 + j);
          for (std::size_t r = 0; r < n1; ++r)
            if (!g1[r][j].is_zero()) sys.add(eq, n0 + r, i, rmul(g1[r][j]));
          for (std::size_t r = 0; r < n0; ++r)
            if (!g0[i][r].is_zero()) sys.add(eq, r, n0 + j, lmul(g0[i][r]));
        }
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n0; ++j) {
          std::size_t eq = (n0 + i) * rank + j;
          for (std::size_t r = 0; r < n0; ++r)
            if (!g0[r][j].is_zero()) sys.add(eq, r, n0 + i, rmul(g0[r][j]));
          for (std::size_t r = 0; r < n1; ++r)
            if (!g1[i][r].is_zero())
              sys.add(eq, n0 + r, j, lmul(g1[i][r]).scaled(-scalar_traits<S>::one()));
        }
    }
  };
  return prob.solve_all();
}

template <class S>
Grid<S> diag_units(const AlgebraRef<S>& alg, std::size_t p, std::size_t q, bool times_i) {
  auto g = zero_grid(alg, p + q, p + q);
  for (std::size_t i = 0; i < p + q; ++i) {
    auto e = times_i ? DElement<S>::basis(alg, 1) : DElement<S>::unit(alg);
    g[i][i] = i < p ? e : -e;
  }
  return g;
}

template <class S>
Grid<S> j_block(const AlgebraRef<S>& alg, std::size_t m) {
  auto g = zero_grid(alg, m, m);
  for (std::size_t i = 0; i < m / 2; ++i) {
    g[i][m / 2 + i] = DElement<S>::unit(alg);
    g[m / 2 + i][i] = -DElement<S>::unit(alg);
  }
  return g;
}

// q(p,q) over Cl1(C): iota1(x_{ji}) G_j + G_i x_{ij} = 0 with G = Id_{p,q}.
LieSpan<Rational> solve_q_signature(std::size_t p, std::size_t q) {
  auto alg = make_algebra<Rational>(AlgebraName::Cl1C);
  auto module = DModule<Rational>::right(alg, p + q, 0);
  auto iotas = superinvolutions(alg);
  const Mat<Rational>& iota1 = iotas[0].mat;
  ConstraintProblem<Rational> prob;
  prob.module = module;
  prob.n_eq_blocks = module.rank() * module.rank();
  prob.assemble = [=](Parity, detail::DEntrySystem<Rational>& sys) {
    std::size_t rank = p + q;
    auto sgn = [&](std::size_t i) { return i < p ? 1 : -1; };
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < rank; ++j) {
        std::size_t eq = i * rank + j;
        Mat<Rational> m1 = iota1;
        if (sgn(j) < 0) m1 = m1.scaled(Rational(-1));
        sys.add(eq, j, i, m1);
        Mat<Rational> m2 = Mat<Rational>::identity(alg->dim());
        if (sgn(i) < 0) m2 = m2.scaled(Rational(-1));
        sys.add(eq, i, j, m2);
      }
  };
  return prob.solve_all();
}

template <class S>
AlgebraRef<S> entry_algebra(char field) {
  switch (field) {
    case 'R': return make_algebra<S>(AlgebraName::Cl0R);
    case 'C': return make_algebra<S>(AlgebraName::Cl0C);
    case 'H': return make_algebra<S>(AlgebraName::Cl4R);
  }
  throw std::invalid_argument("unknown field");
}

// the base field of a complex family is Q(i); entries are plain scalars
AlgebraRef<Gaussian> scalar_algebra_c() { return make_algebra_complex(AlgebraName::Cl0C); }

template <class S>
LieSpan<S> realize_impl(const FamilyTag& tag, const AlgebraRef<S>& alg) {
  const auto& p = tag.params;
  switch (tag.kind) {
    case FamilyKind::GL:
      return gl_d_span(DModule<S>::right(alg, p[0], p[1]));
    case FamilyKind::Q:
      return solve_fixed_point(DModule<S>::right(alg, p[0], p[0]), FixedPointKind::Pi,
                               op_identity(alg));
    case FamilyKind::QBar:
      return solve_fixed_point(DModule<S>::right(alg, p[0], p[0]), FixedPointKind::SigmaPi,
                               op_conj(alg));
    case FamilyKind::P:
      return solve_fixed_point(DModule<S>::right(alg, p[0], p[0]), FixedPointKind::MinusStPi,
                               op_identity(alg));
    case FamilyKind::PBar:
    case FamilyKind::PStar:
      return solve_fixed_point(DModule<S>::right(alg, p[0], p[0]),
                               FixedPointKind::MinusStPiSigma, op_conj(alg));
    case FamilyKind::OSp: {
      std::size_t n0 = tag.field == 'R' ? p[0] + p[1] : p[0];
      std::size_t m = tag.field == 'R' ? p[2] : p[1];
      auto g0 = tag.field == 'R' ? diag_units(alg, p[0], p[1], false)
                                 : diag_units(alg, n0, 0, false);
      return solve_block_form(DModule<S>::right(alg, n0, m), n0, g0, j_block(alg, m),
                              op_identity(alg));
    }
    case FamilyKind::SpO: {
      std::size_t n = p[0];
      std::size_t n1 = tag.field == 'R' ? p[1] + p[2] : p[1];
      auto g1 = tag.field == 'R' ? diag_units(alg, p[1], p[2], false)
                                 : diag_units(alg, n1, 0, false);
      return solve_block_form(DModule<S>::right(alg, n, n1), n, j_block(alg, n), g1,
                              op_identity(alg));
    }
    case FamilyKind::U:
      return solve_block_form(DModule<S>::right(alg, p[0] + p[1], p[2] + p[3]), p[0] + p[1],
                              diag_units(alg, p[0], p[1], false),
                              diag_units(alg, p[2], p[3], true), op_conj(alg));
    case FamilyKind::SpOStar:
      return solve_block_form(DModule<S>::right(alg, p[0] + p[1], p[2]), p[0] + p[1],
                              diag_units(alg, p[0], p[1], false),
                              diag_units(alg, p[2], 0, true), op_conj(alg));
    case FamilyKind::OSpStar:
      return solve_block_form(DModule<S>::right(alg, p[0], p[1] + p[2]), p[0],
                              diag_units(alg, p[0], 0, true),
                              diag_units(alg, p[1], p[2], false), op_conj(alg));
    default:
      throw std::invalid_argument("realize_impl: unhandled family");
  }
}

}  // namespace

const char* family_kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::GL: return "gl";
    case FamilyKind::Q: return "q";
    case FamilyKind::QBar: return "qbar";
    case FamilyKind::P: return "p";
    case FamilyKind::PBar: return "pbar";
    case FamilyKind::PStar: return "p-star";
    case FamilyKind::OSp: return "osp";
    case FamilyKind::SpO: return "spo";
    case FamilyKind::U: return "u";
    case FamilyKind::SpOStar: return "spo-star";
    case FamilyKind::OSpStar: return "osp-star";
    case FamilyKind::QSig: return "q";  // distinguished by parameter count
  }
  return "?";
}

std::optional<FamilyKind> parse_family_kind(const std::string& s) {
  if (s == "gl") return FamilyKind::GL;
  if (s == "q") return FamilyKind::Q;  // promoted to QSig by parameter count
  if (s == "qbar") return FamilyKind::QBar;
  if (s == "p") return FamilyKind::P;
  if (s == "pbar") return FamilyKind::PBar;
  if (s == "p-star" || s == "pstar") return FamilyKind::PStar;
  if (s == "osp") return FamilyKind::OSp;
  if (s == "spo") return FamilyKind::SpO;
  if (s == "u") return FamilyKind::U;
  if (s == "spo-star" || s == "spostar") return FamilyKind::SpOStar;
  if (s == "osp-star" || s == "ospstar") return FamilyKind::OSpStar;
  if (s == "q-sig" || s == "qsig") return FamilyKind::QSig;
  return std::nullopt;
}

std::string FamilyTag::str() const {
  std::ostringstream os;
  os << family_kind_name(kind) << "(";
  for (std::size_t i = 0; i < params.size(); ++i) os << (i ? "," : "") << params[i];
  os << ")";
  if (kind == FamilyKind::GL || kind == FamilyKind::Q || kind == FamilyKind::P ||
      kind == FamilyKind::OSp || kind == FamilyKind::SpO)
    os << "/" << field;
  return os.str();
}

bool family_is_complex(const FamilyTag& tag) {
  switch (tag.kind) {
    case FamilyKind::GL:
    case FamilyKind::Q:
    case FamilyKind::P:
    case FamilyKind::OSp:
    case FamilyKind::SpO:
      return tag.field == 'C';
    default:
      return false;
  }
}

void validate_family(const FamilyTag& tag) {
  auto need = [&](std::size_t n) {
    if (tag.params.size() != n)
      throw std::invalid_argument("family " + std::string(family_kind_name(tag.kind)) +
                                  ": wrong parameter count");
  };
  auto positive_total = [&] {
    std::size_t t = 0;
    for (auto x : tag.params) t += x;
    if (!t) throw std::invalid_argument("family: empty parameters");
  };
  switch (tag.kind) {
    case FamilyKind::GL: need(2); break;
    case FamilyKind::Q:
    case FamilyKind::QBar:
    case FamilyKind::P:
    case FamilyKind::PBar:
    case FamilyKind::PStar:
      need(1);
      break;
    case FamilyKind::OSp:
      if (tag.field == 'R') {
        need(3);
        if (tag.params[2] % 2) throw std::invalid_argument("osp: odd symplectic rank");
      } else {
        need(2);
        if (tag.params[1] % 2) throw std::invalid_argument("osp: odd symplectic rank");
      }
      break;
    case FamilyKind::SpO:
      if (tag.field == 'R') {
        need(3);
        if (tag.params[0] % 2) throw std::invalid_argument("spo: odd symplectic rank");
      } else {
        need(2);
        if (tag.params[0] % 2) throw std::invalid_argument("spo: odd symplectic rank");
      }
      break;
    case FamilyKind::U: need(4); break;
    case FamilyKind::SpOStar: need(3); break;
    case FamilyKind::OSpStar: need(3); break;
    case FamilyKind::QSig: need(2); break;
  }
  if (tag.kind == FamilyKind::GL || tag.kind == FamilyKind::Q) {
    if (tag.field != 'R' && tag.field != 'C' && tag.field != 'H')
      throw std::invalid_argument("family: field must be R, C or H");
  } else if (tag.kind == FamilyKind::P || tag.kind == FamilyKind::OSp ||
             tag.kind == FamilyKind::SpO) {
    if (tag.field != 'R' && tag.field != 'C')
      throw std::invalid_argument("family: field must be R or C");
  }
  positive_total();
}

std::pair<std::size_t, std::size_t> family_expected_dim(const FamilyTag& tag) {
  const auto& p = tag.params;
  auto sq = [](std::size_t x) { return x * x; };
  switch (tag.kind) {
    case FamilyKind::GL: {
      std::size_t d = tag.field == 'R' ? 1 : tag.field == 'C' ? (family_is_complex(tag) ? 1 : 2) : 4;
      return {d * (sq(p[0]) + sq(p[1])), d * 2 * p[0] * p[1]};
    }
    case FamilyKind::Q: {
      std::size_t d = tag.field == 'R' ? 1 : tag.field == 'C' ? 1 : 4;
      return {d * sq(p[0]), d * sq(p[0])};
    }
    case FamilyKind::QBar: return {2 * sq(p[0]), 2 * sq(p[0])};
    case FamilyKind::P: return {sq(p[0]), sq(p[0])};
    case FamilyKind::PBar: return {2 * sq(p[0]), 2 * sq(p[0])};
    case FamilyKind::PStar: return {4 * sq(p[0]), 4 * sq(p[0])};
    case FamilyKind::OSp: {
      std::size_t n = tag.field == 'R' ? p[0] + p[1] : p[0];
      std::size_t m = tag.field == 'R' ? p[2] : p[1];
      return {n * (n - 1) / 2 + m * (m + 1) / 2, n * m};
    }
    case FamilyKind::SpO: {
      std::size_t n = p[0];
      std::size_t m = tag.field == 'R' ? p[1] + p[2] : p[1];
      return {n * (n + 1) / 2 + m * (m - 1) / 2, n * m};
    }
    case FamilyKind::U: {
      std::size_t n = p[0] + p[1], m = p[2] + p[3];
      return {sq(n) + sq(m), 2 * n * m};
    }
    case FamilyKind::SpOStar: {
      std::size_t n = p[0] + p[1], m = p[2];
      return {n * (2 * n + 1) + m * (2 * m - 1), 4 * n * m};
    }
    case FamilyKind::OSpStar: {
      std::size_t a = p[0], m = p[1] + p[2];
      return {a * (2 * a - 1) + m * (2 * m + 1), 4 * a * m};
    }
    case FamilyKind::QSig: {
      std::size_t n = p[0] + p[1];
      return {sq(n), sq(n)};
    }
  }
  return {0, 0};
}

LieSpan<Rational> realize_real(const FamilyTag& tag) {
  validate_family(tag);
  if (family_is_complex(tag)) throw std::invalid_argument("realize_real: complex family");
  switch (tag.kind) {
    case FamilyKind::QSig:
      return solve_q_signature(tag.params[0], tag.params[1]);
    case FamilyKind::QBar:
    case FamilyKind::PBar:
    case FamilyKind::U:
      return realize_impl(tag, entry_algebra<Rational>('C'));
    case FamilyKind::PStar:
    case FamilyKind::SpOStar:
    case FamilyKind::OSpStar:
      return realize_impl(tag, entry_algebra<Rational>('H'));
    default:
      return realize_impl(tag, entry_algebra<Rational>(tag.field));
  }
}

LieSpan<Gaussian> realize_complex(const FamilyTag& tag) {
  validate_family(tag);
  if (!family_is_complex(tag)) throw std::invalid_argument("realize_complex: real family");
  return realize_impl(tag, scalar_algebra_c());
}

CrosscheckReport crosscheck(const FamilyTag& tag) {
  validate_family(tag);
  CrosscheckReport rep;
  rep.tag = tag;
  const auto& p = tag.params;

  if (family_is_complex(tag)) {
    auto rz = realize_complex(tag);
    rep.dim_realize = rz.graded_dim();
    rep.bracket_closed_ok = bracket_closed(rz);
    LieSpan<Gaussian> ref;
    if (tag.kind == FamilyKind::GL) {
      ref = gl_d_span(DModule<Gaussian>::right(scalar_algebra_c(), p[0], p[1]));
      rep.reference_route = "gl_D";
    } else if (tag.kind == FamilyKind::Q) {
      ref = gl_d_span(DModule<Gaussian>::right(make_algebra_complex(AlgebraName::Cl1C), p[0], 0));
      rep.reference_route = "gl_D";
    } else {
      auto alg = scalar_algebra_c();
      auto ivs = superinvolutions(alg);
      SuperhermitianForm<Gaussian> f = [&] {
        switch (tag.kind) {
          case FamilyKind::P:
            return standard_form<Gaussian>(alg, ivs[0], +1, 1, ModuleSide::Right, {p[0]});
          case FamilyKind::OSp:
            return standard_form<Gaussian>(alg, ivs[0], +1, 0, ModuleSide::Right,
                                           {p[0], 0, p[1]});
          case FamilyKind::SpO:
            return standard_form<Gaussian>(alg, ivs[0], -1, 0, ModuleSide::Right,
                                           {p[0], p[1], 0});
          default:
            throw std::logic_error("crosscheck: unexpected complex family");
        }
      }();
      ref = g_of_form(f).span;
      rep.reference_route = "g_of_form";
    }
    rep.dim_reference = ref.graded_dim();
    rep.spans_equal = span_equal(rz, ref);
    return rep;
  }

  auto rz = realize_real(tag);
  rep.dim_realize = rz.graded_dim();
  rep.bracket_closed_ok = bracket_closed(rz);
  LieSpan<Rational> ref;
  auto form_route = [&](AlgebraName an, const char* ivtag, int sign, Parity parity,
                        std::vector<std::size_t> shape) {
    auto alg = make_algebra<Rational>(an);
    for (const auto& iv : superinvolutions(alg))
      if (iv.tag == ivtag)
        return g_of_form(standard_form<Rational>(alg, iv, sign, parity, ModuleSide::Right,
                                                 shape))
            .span;
    throw std::logic_error("crosscheck: involution not found");
  };
  switch (tag.kind) {
    case FamilyKind::GL: {
      auto alg = entry_algebra<Rational>(tag.field);
      ref = gl_d_span(DModule<Rational>::right(alg, p[0], p[1]));
      rep.reference_route = "gl_D";
      break;
    }
    case FamilyKind::Q: {
      AlgebraName an = tag.field == 'R' ? AlgebraName::Cl7R : AlgebraName::Cl3R;
      ref = gl_d_span(DModule<Rational>::right(make_algebra<Rational>(an), p[0], 0));
      rep.reference_route = "gl_D";
      break;
    }
    case FamilyKind::QBar: {
      // Identify Cl6R^n with the right C-module C^{n|n} via f_a = w_a eps.
      // Since eps i = -i eps, the coordinate f_a i corresponds to -w_a (i eps),
      // so the comparison basis flips the sign of every (a, i*eps) coordinate.
      auto alg6 = make_algebra<Rational>(AlgebraName::Cl6R);
      auto mod = DModule<Rational>::right(alg6, p[0], 0);
      ref = gl_d_span(mod);
      RealifiedBasis<Rational> basis(mod);
      std::vector<int> flip(basis.pairs.size(), 1);
      for (std::size_t t = 0; t < basis.pairs.size(); ++t)
        if (alg6->symbol(basis.pairs[t].second) == "ie") flip[t] = -1;
      for (auto& m : ref.basis)
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j)
            if (flip[i] * flip[j] < 0) m(i, j) = -m(i, j);
      rep.reference_route = "gl_D";
      break;
    }
    case FamilyKind::P:
      ref = form_route(AlgebraName::Cl0R, "triv", +1, 1, {p[0]});
      rep.reference_route = "g_of_form";
      break;
    case FamilyKind::PBar:
      ref = form_route(AlgebraName::Cl0C, "conj", +1, 1, {p[0]});
      rep.reference_route = "g_of_form";
      break;
    case FamilyKind::PStar:
      ref = form_route(AlgebraName::Cl4R, "conj", +1, 1, {p[0]});
      rep.reference_route = "g_of_form";
      break;
    case FamilyKind::OSp:
      ref = form_route(AlgebraName::Cl0R, "triv", +1, 0, {p[0], p[1], p[2]});
      rep.reference_route = "g_of_form";
      break;
    case FamilyKind::SpO:
      ref = form_route(AlgebraName::Cl0R, "triv", -1, 0, {p[0], p[1], p[2]});
      rep.reference_route = "g_of_form";
      break;
    case FamilyKind::U:
      ref = form_route(AlgebraName::Cl0C, "conj", +1, 0, {p[0], p[1], p[2], p[3]});
      rep.reference_route = "g_of_form";
      break;
    case FamilyKind::SpOStar:
      ref = form_route(AlgebraName::Cl4R, "conj", +1, 0, {p[0], p[1], p[2]});
      rep.reference_route = "g_of_form";
      break;
    case FamilyKind::OSpStar:
      ref = form_route(AlgebraName::Cl4R, "conj", -1, 0, {p[0], p[1], p[2]});
      rep.reference_route = "g_of_form";
      break;
    case FamilyKind::QSig:
      ref = form_route(AlgebraName::Cl1C, "iota1", +1, 0, {p[0], p[1]});
      rep.reference_route = "g_of_form";
      break;
  }
  rep.dim_reference = ref.graded_dim();
  rep.spans_equal = span_equal(rz, ref);
  return rep;
}

// --- embedding maps ----------------------------------------------------------

Mat<Rational> embed_xi(const Mat<Gaussian>& m) {
  const std::size_t t = m.rows();
  Mat<Rational> out(2 * t, 2 * t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) {
      out(i, j) = m(i, j).re;
      out(i, t + j) = m(i, j).im;
      out(t + i, j) = -m(i, j).im;
      out(t + i, t + j) = m(i, j).re;
    }
  return out;
}

Mat<Gaussian> embed_xi_prime(const QuaternionMat& m) {
  const std::size_t t = m.size();
  Mat<Gaussian> out(2 * t, 2 * t);
  auto cplx = [](const Rational& re, const Rational& im) { return Gaussian(re, im); };
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) {
      out(i, j) = cplx(m.a(i, j), m.b(i, j));
      out(i, t + j) = cplx(-m.c(i, j), m.d(i, j));
      out(t + i, j) = cplx(m.c(i, j), m.d(i, j));
      out(t + i, t + j) = cplx(m.a(i, j), -m.b(i, j));
    }
  return out;
}

Mat<Gaussian> embed_psi_check(const Mat<Gaussian>& a, const Mat<Gaussian>& b) {
  const std::size_t n = a.rows();
  Mat<Gaussian> m(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = a(i, j);
      m(i, n + j) = b(i, j);
      m(n + i, j) = b(i, j).conj();
      m(n + i, n + j) = a(i, j).conj();
    }
  return m;
}

Mat<Gaussian> embed_psi_check_prime(const Mat<Gaussian>& a, const Mat<Gaussian>& b) {
  const std::size_t n = a.rows();
  Mat<Gaussian> m(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = a(i, j);
      m(i, n + j) = b(i, j);
      m(n + i, j) = -b(i, j).conj();
      m(n + i, n + j) = a(i, j).conj();
    }
  return m;
}

Mat<Gaussian> block_sigma(const Mat<Gaussian>& x) {
  Mat<Gaussian> m(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) m(i, j) = x(i, j).conj();
  return m;
}

}  // namespace spodual
