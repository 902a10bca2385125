#pragma once

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "spodual/forms.hpp"

namespace spodual {

template <class S>
struct DualPairInstance {
  BilinearSpace<S> e;
  LieSpan<S> g, g_prime;
  int pair_type = 1;  // 1 = Type I, 2 = Type II
  std::string provenance;
};

/// Solutions T of T o lam_i = (-1)^{|T| |X_i|} pi_i o T, the signed
/// convention for graded Hom spaces.
template <class S>
std::vector<std::pair<Parity, Mat<S>>> hom_intertwiners(
    const std::vector<Mat<S>>& lam, const std::vector<Parity>& beta,
    const std::vector<Mat<S>>& pi, const std::vector<Parity>& dom_par,
    const std::vector<Parity>& cod_par) {
  const std::size_t m = dom_par.size(), n = cod_par.size();
  std::vector<std::pair<Parity, Mat<S>>> out;
  for (Parity alpha : {0, 1}) {
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < m; ++c)
        if ((cod_par[r] + dom_par[c]) % 2 == alpha) slots.emplace_back(r, c);
    if (slots.empty()) continue;
    Mat<S> sys(lam.size() * n * m, slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s) {
      auto [r, c] = slots[s];
      for (std::size_t i = 0; i < lam.size(); ++i) {
        bool flip = (alpha * beta[i]) % 2;
        // (T lam)_{r j}: T_{rc} contributes lam_{c j}
        for (std::size_t j = 0; j < m; ++j)
          if (!lam[i](c, j).is_zero()) sys(i * n * m + r * m + j, s) += lam[i](c, j);
        // -(+-)(pi T)_{k c}: T_{rc} contributes pi_{k r}
        for (std::size_t k = 0; k < n; ++k)
          if (!pi[i](k, r).is_zero()) {
            S v = pi[i](k, r);
            if (!flip) v = -v;
            sys(i * n * m + k * m + c, s) += v;
          }
      }
    }
    for (const auto& v : nullspace(sys)) {
      Mat<S> t(n, m);
      for (std::size_t s = 0; s < slots.size(); ++s) t(slots[s].first, slots[s].second) = v[s];
      out.emplace_back(alpha, std::move(t));
    }
  }
  return out;
}

namespace detail {

/// Action of X in gl_D(U) (left module) on the tensor triples (a,k,c):
/// X . (w_a x_k (x) u_c) = (-1)^{|X|(|w_a|+|x_k|)} w_a x_k (x) X(u_c).
template <class S>
Mat<S> act_on_u_factor(const TensorSpace<S>& ts, const DSuperMatrix<S>& x) {
  auto px = x.parity();
  if (!px) throw std::invalid_argument("act_on_u_factor: inhomogeneous");
  const auto& alg = *ts.u_module.alg;
  const std::size_t n = ts.triples.size(), d = alg.dim();
  Mat<S> out(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    auto [a, k, c] = ts.triples[col];
    bool neg = (*px * (ts.w_module.gen_parities[a] + alg.parity(k))) % 2;
    for (std::size_t e = 0; e < ts.u_module.rank(); ++e) {
      const auto& xec = x.entries[e][c];
      if (xec.is_zero()) continue;
      auto prod = alg.mul_coords(
          DElement<S>::basis(ts.u_module.alg, k).coords, xec.coords);
      for (std::size_t mm = 0; mm < d; ++mm)
        if (!prod[mm].is_zero())
          out(ts.index[a][mm][e], col) += neg ? -prod[mm] : prod[mm];
    }
  }
  return out;
}

/// Action of Y in gl_D(W) (right module): Y . (w_a x_k (x) u_c) = Y(w_a) x_k (x) u_c.
template <class S>
Mat<S> act_on_w_factor(const TensorSpace<S>& ts, const DSuperMatrix<S>& y) {
  const auto& alg = *ts.w_module.alg;
  const std::size_t n = ts.triples.size(), d = alg.dim();
  Mat<S> out(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    auto [a, k, c] = ts.triples[col];
    for (std::size_t b = 0; b < ts.w_module.rank(); ++b) {
      const auto& yba = y.entries[b][a];
      if (yba.is_zero()) continue;
      auto prod = alg.mul_coords(yba.coords, DElement<S>::basis(ts.w_module.alg, k).coords);
      for (std::size_t mm = 0; mm < d; ++mm)
        if (!prod[mm].is_zero()) out(ts.index[b][mm][c], col) += prod[mm];
    }
  }
  return out;
}

/// Plain tensor basis (no form): used by Type II.
template <class S>
TensorSpace<S> bare_tensor(const DModule<S>& w, const DModule<S>& u) {
  TensorSpace<S> ts;
  ts.w_module = w;
  ts.u_module = u;
  const std::size_t d = w.alg->dim();
  ts.index.assign(w.rank(), std::vector<std::vector<std::size_t>>(
                                d, std::vector<std::size_t>(u.rank())));
  for (Parity want : {0, 1})
    for (std::size_t a = 0; a < w.rank(); ++a)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t c = 0; c < u.rank(); ++c) {
          Parity p = (w.gen_parities[a] + w.alg->parity(k) + u.gen_parities[c]) % 2;
          if (p != want) continue;
          ts.index[a][k][c] = ts.triples.size();
          ts.triples.emplace_back(a, k, c);
        }
  return ts;
}

template <class S>
std::vector<Parity> triple_parities(const TensorSpace<S>& ts) {
  std::vector<Parity> par;
  for (auto [a, k, c] : ts.triples)
    par.push_back((ts.w_module.gen_parities[a] + ts.w_module.alg->parity(k) +
                   ts.u_module.gen_parities[c]) % 2);
  return par;
}

}  // namespace detail

/// Type I pair: E = realify(W (x)_D U) with B = Re(gamma' (x) gamma);
/// g acts through the U factor with the sign rule, g' through the W factor.
template <class S>
DualPairInstance<S> build_type_I(const SuperhermitianForm<S>& gamma_u,
                                 const SuperhermitianForm<S>& gamma_w,
                                 std::string provenance = "") {
  if (gamma_u.module.rank() == 0 || gamma_w.module.rank() == 0)
    throw std::invalid_argument("build_type_I: zero module");
  auto ts = tensor_form(gamma_w, gamma_u);

  DualPairInstance<S> out;
  out.e = ts.bilinear;
  out.pair_type = 1;
  out.provenance = std::move(provenance);

  auto gu = g_of_form(gamma_u);
  auto gw = g_of_form(gamma_w);
  out.g = LieSpan<S>{ts.bilinear.space, {}, {}};
  out.g_prime = LieSpan<S>{ts.bilinear.space, {}, {}};
  for (std::size_t i = 0; i < gu.dbasis.size(); ++i) {
    Mat<S> m = detail::act_on_u_factor(ts, gu.dbasis[i]);
    if (!in_spo(ts.bilinear, m, gu.dparities[i]))
      throw std::logic_error("build_type_I: g embedding left spo");
    out.g.push(gu.dparities[i], std::move(m));
  }
  for (std::size_t i = 0; i < gw.dbasis.size(); ++i) {
    Mat<S> m = detail::act_on_w_factor(ts, gw.dbasis[i]);
    if (!in_spo(ts.bilinear, m, gw.dparities[i]))
      throw std::logic_error("build_type_I: g' embedding left spo");
    out.g_prime.push(gw.dparities[i], std::move(m));
  }
  return out;
}

/// Type II pair: E = T + T^* for T = realify(W (x)_D U), with the canonical
/// pairing (skew on the even part, symmetric on the odd part);
/// g = gl_D(U), g' = gl_D(W), extended to T^* by B-invariance.
template <class S>
DualPairInstance<S> build_type_II(const DModule<S>& u, const DModule<S>& w,
                                  std::string provenance = "") {
  if (u.side != ModuleSide::Left || w.side != ModuleSide::Right)
    throw std::invalid_argument("build_type_II: U must be a left module, W a right module");
  auto ts = detail::bare_tensor(w, u);
  auto tpar = detail::triple_parities(ts);
  const std::size_t nt = tpar.size();
  std::size_t te = 0;
  for (Parity p : tpar) te += (p == 0);
  std::size_t to = nt - te;

  // E-basis: [T_even, T*_even, T_odd, T*_odd]; triples are already even-first.
  auto tmap = [&](std::size_t i) { return i < te ? i : te + i; };
  auto smap = [&](std::size_t i) { return i < te ? te + i : te + to + i; };
  std::vector<Parity> epar(2 * te, 0);
  epar.insert(epar.end(), 2 * to, 1);
  SuperSpace espace{epar};

  Mat<S> gram(2 * nt, 2 * nt);
  for (std::size_t i = 0; i < nt; ++i) {
    gram(smap(i), tmap(i)) = scalar_traits<S>::one();
    gram(tmap(i), smap(i)) =
        tpar[i] == 0 ? -scalar_traits<S>::one() : scalar_traits<S>::one();
  }
  BilinearSpace<S> e(espace, std::move(gram));

  auto extend = [&](const Mat<S>& a, Parity px) {
    Mat<S> m(2 * nt, 2 * nt);
    for (std::size_t r = 0; r < nt; ++r)
      for (std::size_t c = 0; c < nt; ++c) {
        if (!a(r, c).is_zero()) m(tmap(r), tmap(c)) = a(r, c);
        // X(t*_c) = sum_r C_{rc} t*_r with C_{rc} = -(-1)^{|X||t_c|} a_{cr}
        if (!a(c, r).is_zero()) {
          S v = -a(c, r);
          if ((px * tpar[c]) % 2) v = -v;
          m(smap(r), smap(c)) = v;
        }
      }
    return m;
  };

  DualPairInstance<S> out;
  out.e = e;
  out.pair_type = 2;
  out.provenance = std::move(provenance);
  out.g = LieSpan<S>{espace, {}, {}};
  out.g_prime = LieSpan<S>{espace, {}, {}};

  for (std::size_t a = 0; a < u.rank(); ++a)
    for (std::size_t b = 0; b < u.rank(); ++b)
      for (std::size_t k = 0; k < u.alg->dim(); ++k) {
        auto x = DSuperMatrix<S>::zero(u);
        x.entries[a][b] = DElement<S>::basis(u.alg, k);
        Parity px = (u.gen_parities[a] + u.gen_parities[b] + u.alg->parity(k)) % 2;
        Mat<S> act = extend(detail::act_on_u_factor(ts, x), px);
        if (!in_spo(e, act, px)) throw std::logic_error("build_type_II: g left spo");
        out.g.push(px, std::move(act));
      }
  for (std::size_t a = 0; a < w.rank(); ++a)
    for (std::size_t b = 0; b < w.rank(); ++b)
      for (std::size_t k = 0; k < w.alg->dim(); ++k) {
        auto y = DSuperMatrix<S>::zero(w);
        y.entries[a][b] = DElement<S>::basis(w.alg, k);
        Parity py = (w.gen_parities[a] + w.gen_parities[b] + w.alg->parity(k)) % 2;
        Mat<S> act = extend(detail::act_on_w_factor(ts, y), py);
        if (!in_spo(e, act, py)) throw std::logic_error("build_type_II: g' left spo");
        out.g_prime.push(py, std::move(act));
      }
  return out;
}

struct PairReport {
  bool brackets_vanish = false;
  bool centralizer_g_ok = false;       // C(g) = g'
  bool centralizer_gprime_ok = false;  // C(g') = g
  bool double_commutant_ok = false;    // C(C(g)) = g
  std::pair<std::size_t, std::size_t> dim_g, dim_gprime, dim_cg, dim_cgprime;
  std::size_t dim_spo = 0;

  bool all_ok() const {
    return brackets_vanish && centralizer_g_ok && centralizer_gprime_ok && double_commutant_ok;
  }
};

template <class S>
PairReport verify_dual_pair(const DualPairInstance<S>& p) {
  PairReport rep;
  rep.brackets_vanish = true;
  for (std::size_t i = 0; i < p.g.dim() && rep.brackets_vanish; ++i)
    for (std::size_t j = 0; j < p.g_prime.dim(); ++j) {
      Mat<S> xy = p.g.basis[i] * p.g_prime.basis[j];
      Mat<S> yx = p.g_prime.basis[j] * p.g.basis[i];
      Mat<S> br = (p.g.parities[i] * p.g_prime.parities[j]) % 2 ? xy + yx : xy - yx;
      if (!br.is_zero()) {
        rep.brackets_vanish = false;
        break;
      }
    }
  auto ambient = spo_ambient(p.e);
  rep.dim_spo = ambient.dim();
  auto cg = supercommutant(p.g, ambient);
  auto cgp = supercommutant(p.g_prime, ambient);
  rep.centralizer_g_ok = span_equal(cg, p.g_prime);
  rep.centralizer_gprime_ok = span_equal(cgp, p.g);
  auto ccg = supercommutant(cg, ambient);
  rep.double_commutant_ok = span_equal(ccg, p.g);
  rep.dim_g = p.g.graded_dim();
  rep.dim_gprime = p.g_prime.graded_dim();
  rep.dim_cg = cg.graded_dim();
  rep.dim_cgprime = cgp.graded_dim();
  return rep;
}

// --- module factorization and isotypic machinery ----------------------------

/// Grows the submodule generated by seed vectors under the action matrices.
template <class S>
std::vector<std::vector<S>> generate_submodule(const LieSpan<S>& g,
                                               std::vector<std::vector<S>> seeds) {
  const std::size_t n = g.ambient.dim();
  std::vector<std::vector<S>> basis;
  for (auto& s : seeds)
    if (!in_span(echelonize(basis, n), s)) basis.push_back(std::move(s));
  bool grew = true;
  while (grew) {
    grew = false;
    auto ech = echelonize(basis, n);
    std::vector<std::vector<S>> next = basis;
    for (const auto& x : g.basis)
      for (const auto& v : basis) {
        auto w = x.apply(v);
        if (!in_span(echelonize(next, n), w)) {
          next.push_back(w);
          grew = true;
        }
      }
    basis = std::move(next);
  }
  return basis;
}

template <class S>
struct FactorizationResult {
  std::vector<std::pair<Parity, Mat<S>>> endo_basis;   // D = End_g(U) in U-coordinates
  std::vector<std::pair<Parity, Mat<S>>> hom_basis;    // W = Hom_g(U, E)
  bool evaluation_bijective = false;
  std::pair<std::size_t, std::size_t> dim_d, dim_w;
};

/// Tensor factorization data for a g-invariant irreducible U inside E:
/// D = End_g(U), W = Hom_g(U, E), and the evaluation-map certificate.
/// U is given by coordinate vectors (homogeneous). Verifies invariance and
/// irreducibility (the submodule generated by each basis vector is all of U).
template <class S>
FactorizationResult<S> factorize(const LieSpan<S>& g,
                                 const std::vector<std::vector<S>>& u_basis) {
  const std::size_t n = g.ambient.dim();
  if (u_basis.empty()) throw std::invalid_argument("factorize: empty U");
  auto uech = echelonize(u_basis, n);
  if (uech.pivots.size() != u_basis.size())
    throw std::invalid_argument("factorize: U basis dependent");

  std::vector<Parity> upar;
  for (const auto& v : u_basis) {
    std::optional<Parity> p;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i].is_zero()) continue;
      if (!p)
        p = g.ambient.parity(i);
      else if (*p != g.ambient.parity(i))
        throw std::invalid_argument("factorize: U basis vector inhomogeneous");
    }
    upar.push_back(p.value_or(0));
  }

  // invariance + restricted action matrices
  Mat<S> bu(n, u_basis.size());
  for (std::size_t j = 0; j < u_basis.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) bu(i, j) = u_basis[j][i];
  std::vector<Mat<S>> lam;
  for (const auto& x : g.basis) {
    Mat<S> l(u_basis.size(), u_basis.size());
    for (std::size_t j = 0; j < u_basis.size(); ++j) {
      auto img = x.apply(u_basis[j]);
      auto coef = solve(bu, img);
      if (!coef) throw std::invalid_argument("factorize: U not invariant");
      for (std::size_t i = 0; i < u_basis.size(); ++i) l(i, j) = (*coef)[i];
    }
    lam.push_back(std::move(l));
  }

  // irreducibility: each basis vector regenerates U
  LieSpan<S> gu{SuperSpace(upar), g.parities, lam};
  for (std::size_t j = 0; j < u_basis.size(); ++j) {
    std::vector<S> seed(u_basis.size(), scalar_traits<S>::zero());
    seed[j] = scalar_traits<S>::one();
    if (generate_submodule(gu, {seed}).size() != u_basis.size())
      throw std::invalid_argument("factorize: U not irreducible");
  }

  FactorizationResult<S> out;
  out.endo_basis = hom_intertwiners(lam, g.parities, lam, upar, upar);
  std::vector<Mat<S>> pi = g.basis;
  out.hom_basis = hom_intertwiners(lam, g.parities, pi, upar, g.ambient.parities());

  // D must be a division superalgebra: homogeneous basis elements invertible
  for (const auto& [p, m] : out.endo_basis)
    if (rank(m) != u_basis.size())
      throw std::logic_error("factorize: non-invertible homogeneous endomorphism");

  std::size_t de = 0, dw = 0;
  for (const auto& [p, m] : out.endo_basis) de += (p == 0);
  for (const auto& [p, m] : out.hom_basis) dw += (p == 0);
  out.dim_d = {de, out.endo_basis.size() - de};
  out.dim_w = {dw, out.hom_basis.size() - dw};

  // evaluation map W (x)_D U -> E: spanning + dimension count certificate
  std::vector<std::vector<S>> images;
  for (const auto& [p, t] : out.hom_basis)
    for (std::size_t j = 0; j < u_basis.size(); ++j) {
      std::vector<S> unitv(u_basis.size(), scalar_traits<S>::zero());
      unitv[j] = scalar_traits<S>::one();
      images.push_back(t.apply(unitv));  // t maps U-coordinates to E-coordinates
    }
  bool spanning = echelonize(images, n).pivots.size() == n;
  bool counts = out.hom_basis.size() * u_basis.size() == n * out.endo_basis.size();
  out.evaluation_bijective = spanning && counts;
  return out;
}

template <class S>
struct IsotypicComponent {
  std::vector<std::vector<S>> basis;
  bool nondegenerate = false;
  int partner = -1;  // index of the paired isotropic component
};

template <class S>
struct IsotypicSplit {
  std::vector<IsotypicComponent<S>> components;
  std::vector<std::vector<bool>> orthogonality;  // B(W_i, W_j) != 0

  std::size_t size() const { return components.size(); }
  const IsotypicComponent<S>& operator[](std::size_t i) const { return components[i]; }
};

/// Splits E into g-isotypic components and reports the B-profile of each.
template <class S>
IsotypicSplit<S> isotypic_split(const LieSpan<S>& g,
                                const BilinearSpace<S>& e) {
  if (g.ambient != e.space) throw std::invalid_argument("isotypic_split: space mismatch");
  const std::size_t n = e.space.dim();
  std::vector<IsotypicComponent<S>> comps;
  std::vector<std::vector<S>> total;

  while (echelonize(total, n).pivots.size() < n) {
    // smallest submodule generated from an unused coordinate seed
    std::vector<std::vector<S>> best;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<S> seed(n, scalar_traits<S>::zero());
      seed[j] = scalar_traits<S>::one();
      if (in_span(echelonize(total, n), seed)) continue;
      auto m = generate_submodule(g, {seed});
      if (best.empty() || m.size() < best.size()) best = std::move(m);
    }
    if (best.empty()) throw std::logic_error("isotypic_split: decomposition incomplete");

    // irreducibility of the generator module
    {
      auto fact = [&] {
        try {
          factorize(g, best);
          return true;
        } catch (const std::invalid_argument&) {
          return false;
        }
      }();
      if (!fact)
        throw std::invalid_argument(
            "isotypic_split: seed module not irreducible (non-semisimple action?)");
    }

    // isotypic component: span of images of Hom_g(U, E)
    Mat<S> bu(n, best.size());
    for (std::size_t j = 0; j < best.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) bu(i, j) = best[j][i];
    std::vector<Mat<S>> lam;
    std::vector<Parity> upar;
    for (const auto& v : best) {
      std::optional<Parity> p;
      for (std::size_t i = 0; i < n; ++i)
        if (!v[i].is_zero()) { p = e.space.parity(i); break; }
      upar.push_back(p.value_or(0));
    }
    for (const auto& x : g.basis) {
      Mat<S> l(best.size(), best.size());
      for (std::size_t j = 0; j < best.size(); ++j) {
        auto coef = solve(bu, x.apply(best[j]));
        if (!coef) throw std::logic_error("isotypic_split: invariance lost");
        for (std::size_t i = 0; i < best.size(); ++i) l(i, j) = (*coef)[i];
      }
      lam.push_back(std::move(l));
    }
    auto homs = hom_intertwiners(lam, g.parities, g.basis, upar, e.space.parities());
    std::vector<std::vector<S>> comp_rows;
    for (const auto& [p, t] : homs)
      for (std::size_t j = 0; j < best.size(); ++j) {
        std::vector<S> unitv(best.size(), scalar_traits<S>::zero());
        unitv[j] = scalar_traits<S>::one();
        comp_rows.push_back(t.apply(unitv));
      }
    auto ech = echelonize(comp_rows, n);
    std::vector<std::vector<S>> comp;
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
      std::vector<S> row(n);
      for (std::size_t j = 0; j < n; ++j) row[j] = ech.mat(i, j);
      comp.push_back(std::move(row));
    }

    for (const auto& r : comp) total.push_back(r);
    IsotypicComponent<S> c;
    c.basis = std::move(comp);
    comps.push_back(std::move(c));
  }

  // B-profile: each component is non-degenerate or isotropic with a unique partner
  auto block = [&](const IsotypicComponent<S>& a, const IsotypicComponent<S>& b) {
    Mat<S> m(a.basis.size(), b.basis.size());
    for (std::size_t i = 0; i < a.basis.size(); ++i)
      for (std::size_t j = 0; j < b.basis.size(); ++j) m(i, j) = e.eval(a.basis[i], b.basis[j]);
    return m;
  };
  IsotypicSplit<S> out;
  out.orthogonality.assign(comps.size(), std::vector<bool>(comps.size(), false));
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t j = 0; j < comps.size(); ++j)
      out.orthogonality[i][j] = !block(comps[i], comps[j]).is_zero();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    Mat<S> self = block(comps[i], comps[i]);
    if (self.is_zero()) {
      comps[i].nondegenerate = false;
      for (std::size_t j = 0; j < comps.size(); ++j) {
        if (j == i) continue;
        if (out.orthogonality[i][j]) {
          if (comps[i].partner != -1)
            throw std::logic_error("isotypic_split: isotropic component pairs twice");
          comps[i].partner = static_cast<int>(j);
        }
      }
      if (comps[i].partner == -1)
        throw std::logic_error("isotypic_split: isotropic component without partner");
    } else {
      if (rank(self) != comps[i].basis.size())
        throw std::logic_error("isotypic_split: component neither zero nor non-degenerate");
      comps[i].nondegenerate = true;
    }
  }
  out.components = std::move(comps);
  return out;
}

}  // namespace spodual
