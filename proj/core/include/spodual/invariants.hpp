#pragma once

#include <algorithm>
#include <future>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spodual/dual_pairs.hpp"
#include "spodual/weyl.hpp"

namespace spodual {

/// Harish-Chandra pair data used for invariant computations: the full
/// superalgebra plus representatives of the group's component group.
template <class S>
struct HCPair {
  LieSpan<S> g_full;
  std::vector<GroupElement<S>> component_reps;
};

namespace detail {

template <class S>
std::vector<S> element_coords(const WCElement<S>& x,
                              const std::map<WCMonomial, std::size_t>& index) {
  std::vector<S> v(index.size(), scalar_traits<S>::zero());
  for (const auto& [m, c] : x.terms()) {
    auto it = index.find(m);
    if (it == index.end()) throw std::logic_error("element_coords: monomial outside window");
    v[it->second] = c;
  }
  return v;
}

}  // namespace detail

/// Exact basis of WC_d^G: elements killed by ad(beta(X)) for every X in the
/// superalgebra and fixed by every component representative. Solved
/// degree-window-wide as a nullspace in monomial coordinates, per parity.
template <class S>
std::vector<WCElement<S>> wc_invariants(const HCPair<S>& pair,
                                        const typename WCAlgebra<S>::Ref& alg,
                                        std::size_t d) {
  auto monos = monomials_up_to(alg->n_even, alg->n_odd, d);
  std::map<WCMonomial, std::size_t> index;
  for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;

  std::vector<WCElement<S>> betas;
  for (std::size_t i = 0; i < pair.g_full.dim(); ++i)
    betas.push_back(beta<S>(alg, pair.g_full.basis[i], pair.g_full.parities[i]));

  std::vector<WCElement<S>> out;
  for (Parity alpha : {0, 1}) {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < monos.size(); ++i)
      if (monos[i].parity() == alpha) cols.push_back(i);
    if (cols.empty()) continue;
    std::size_t n_rows = (betas.size() + pair.component_reps.size()) * monos.size();
    Mat<S> sys(n_rows, cols.size());
    for (std::size_t t = 0; t < cols.size(); ++t) {
      WCElement<S> m(alg);
      m.add_term(monos[cols[t]], scalar_traits<S>::one());
      for (std::size_t bi = 0; bi < betas.size(); ++bi) {
        // ad: beta(X) m - (-1)^{|X||m|} m beta(X)
        auto lhs = wc_mul(betas[bi], m);
        auto rhs = wc_mul(m, betas[bi]);
        auto br = (pair.g_full.parities[bi] * alpha) % 2 ? lhs + rhs : lhs - rhs;
        auto co = detail::element_coords(br, index);
        for (std::size_t r = 0; r < co.size(); ++r)
          if (!co[r].is_zero()) sys(bi * monos.size() + r, t) = co[r];
      }
      for (std::size_t ci = 0; ci < pair.component_reps.size(); ++ci) {
        auto moved = group_act(pair.component_reps[ci], m) - m;
        auto co = detail::element_coords(moved, index);
        for (std::size_t r = 0; r < co.size(); ++r)
          if (!co[r].is_zero())
            sys((betas.size() + ci) * monos.size() + r, t) = co[r];
      }
    }
    for (const auto& v : nullspace(sys)) {
      WCElement<S> x(alg);
      for (std::size_t t = 0; t < cols.size(); ++t)
        if (!v[t].is_zero()) x.add_term(monos[cols[t]], v[t]);
      out.push_back(std::move(x));
    }
  }
  return out;
}

/// Span of the filtered subalgebra generated by beta(g') and scalars inside
/// WC_d: saturated under products and superbrackets until stable.
template <class S>
std::vector<WCElement<S>> generated_span(const LieSpan<S>& gprime,
                                         const typename WCAlgebra<S>::Ref& alg,
                                         std::size_t d) {
  auto monos = monomials_up_to(alg->n_even, alg->n_odd, d);
  std::map<WCMonomial, std::size_t> index;
  for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;

  std::vector<WCElement<S>> basis;
  std::vector<std::vector<S>> rows;
  auto try_add = [&](const WCElement<S>& x) {
    if (x.is_zero() || x.degree() > d) return false;
    auto co = detail::element_coords(x, index);
    if (in_span(echelonize(rows, monos.size()), co)) return false;
    rows.push_back(std::move(co));
    basis.push_back(x);
    return true;
  };

  try_add(WCElement<S>::scalar(alg, scalar_traits<S>::one()));
  for (std::size_t i = 0; i < gprime.dim(); ++i)
    try_add(beta<S>(alg, gprime.basis[i], gprime.parities[i]));

  bool grew = true;
  while (grew) {
    grew = false;
    std::size_t sz = basis.size();
    for (std::size_t i = 0; i < sz; ++i)
      for (std::size_t j = 0; j < sz; ++j) {
        auto prod = wc_mul(basis[i], basis[j]);
        if (prod.degree() <= d) grew |= try_add(prod);
        auto pi = basis[i].parity(), pj = basis[j].parity();
        if (pi && pj) {
          auto rev = wc_mul(basis[j], basis[i]);
          auto br = (*pi * *pj) % 2 ? prod + rev : prod - rev;
          if (br.degree() <= d) grew |= try_add(br);
        }
      }
  }
  return basis;
}

struct DegreeLine {
  std::size_t degree = 0;
  std::size_t dim_invariants = 0;
  std::size_t dim_generated = 0;
  bool generated_inside_invariants = false;
  bool equal = false;
};

struct InvariantReport {
  std::vector<DegreeLine> per_degree;
  bool all_equal = true;
};

/// Double Commutant check: WC^G vs <beta(g')> per degree <= d. Real
/// instances must be complexified by the caller first (the real statement
/// reduces to the complex one). Per-degree solves are independent; jobs > 1
/// runs them concurrently and merges by degree.
template <class S>
InvariantReport double_commutant_check(const DualPairInstance<S>& inst,
                                       const std::vector<GroupElement<S>>& reps,
                                       std::size_t d, unsigned jobs = 1) {
  auto alg = WCAlgebra<S>::make(inst.e.space, inst.e.gram);
  for (const auto& r : reps)
    if (!preserves_form(inst.e, r.mat))
      throw std::invalid_argument("double_commutant_check: rep does not preserve B");
  HCPair<S> pair{inst.g, reps};

  auto run_degree = [&](std::size_t k) {
    auto monos = monomials_up_to(alg->n_even, alg->n_odd, k);
    std::map<WCMonomial, std::size_t> index;
    for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
    auto inv = wc_invariants(pair, alg, k);
    auto gen = generated_span(inst.g_prime, alg, k);
    std::vector<std::vector<S>> inv_rows, gen_rows;
    for (const auto& x : inv) inv_rows.push_back(detail::element_coords(x, index));
    for (const auto& x : gen) gen_rows.push_back(detail::element_coords(x, index));
    DegreeLine line;
    line.degree = k;
    line.dim_invariants = echelonize(inv_rows, monos.size()).pivots.size();
    line.dim_generated = echelonize(gen_rows, monos.size()).pivots.size();
    auto inv_ech = echelonize(inv_rows, monos.size());
    line.generated_inside_invariants = true;
    for (const auto& r : gen_rows)
      if (!in_span(inv_ech, r)) line.generated_inside_invariants = false;
    line.equal = line.generated_inside_invariants && line.dim_invariants == line.dim_generated;
    return line;
  };

  InvariantReport rep;
  rep.per_degree.resize(d + 1);
  if (jobs <= 1) {
    for (std::size_t k = 0; k <= d; ++k) rep.per_degree[k] = run_degree(k);
  } else {
    std::vector<std::future<DegreeLine>> futs;
    for (std::size_t k = 0; k <= d; ++k)
      futs.push_back(std::async(std::launch::async, run_degree, k));
    for (std::size_t k = 0; k <= d; ++k) rep.per_degree[k] = futs[k].get();
  }
  for (const auto& line : rep.per_degree) rep.all_equal &= line.equal;
  return rep;
}

// --- complexification --------------------------------------------------------

inline Mat<Gaussian> complexify(const Mat<Rational>& m) {
  Mat<Gaussian> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Gaussian(m(i, j));
  return out;
}

inline LieSpan<Gaussian> complexify(const LieSpan<Rational>& g) {
  LieSpan<Gaussian> out{g.ambient, g.parities, {}};
  for (const auto& m : g.basis) out.basis.push_back(complexify(m));
  return out;
}

inline BilinearSpace<Gaussian> complexify(const BilinearSpace<Rational>& e) {
  return BilinearSpace<Gaussian>(e.space, complexify(e.gram));
}

inline DualPairInstance<Gaussian> complexify(const DualPairInstance<Rational>& p) {
  DualPairInstance<Gaussian> out;
  out.e = complexify(p.e);
  out.g = complexify(p.g);
  out.g_prime = complexify(p.g_prime);
  out.pair_type = p.pair_type;
  out.provenance = p.provenance + " (complexified)";
  return out;
}

inline GroupElement<Gaussian> complexify(const GroupElement<Rational>& g) {
  return GroupElement<Gaussian>{complexify(g.mat), g.tag + "_C"};
}

/// Applies a basis permutation to an instance: new basis j = old basis
/// perm[j]. Used to put E into the (V before V*) order the Fock model wants.
template <class S>
DualPairInstance<S> permute_basis(const DualPairInstance<S>& p,
                                  const std::vector<std::size_t>& perm) {
  const std::size_t n = p.e.space.dim();
  if (perm.size() != n) throw std::invalid_argument("permute_basis: size mismatch");
  std::vector<Parity> par(n);
  for (std::size_t i = 0; i < n; ++i) par[i] = p.e.space.parity(perm[i]);
  SuperSpace sp(par);
  auto remap = [&](const Mat<S>& m) {
    Mat<S> out(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) = m(perm[i], perm[j]);
    return out;
  };
  DualPairInstance<S> out;
  out.e = BilinearSpace<S>(sp, remap(p.e.gram));
  out.g = LieSpan<S>{sp, p.g.parities, {}};
  for (const auto& m : p.g.basis) out.g.basis.push_back(remap(m));
  out.g_prime = LieSpan<S>{sp, p.g_prime.parities, {}};
  for (const auto& m : p.g_prime.basis) out.g_prime.basis.push_back(remap(m));
  out.pair_type = p.pair_type;
  out.provenance = p.provenance;
  return out;
}

// --- Howe duality at desk scale ----------------------------------------------

struct HoweDegreeLine {
  std::size_t degree = 0;
  std::size_t dim_sd = 0;            // dim S^d(V)
  std::size_t dim_commutant = 0;     // dim End_G(S^d)
  std::size_t dim_generated = 0;     // restricted degree-preserving <beta(g')>
  bool commutant_matches = false;
  bool invariant_under_g = false;    // S^d is a G-submodule
};

struct HoweReport {
  std::size_t n = 0, k = 0, l = 0, max_degree = 0;
  std::vector<HoweDegreeLine> per_degree;
  bool fingerprints_distinct = false;  // Hom_G(S^a, S^b) = 0 for a != b
  bool all_ok = false;
};

/// Builds the (SpO(2n|1), OSp(2k|2l)) pair inside SpO(C^{2k|2l} x C^{2n|1}),
/// acts on S(V) for V = C^{k|l} x C^{2n|1}, and checks Howe duality
/// degree-by-degree: commutant of the spo action vs the restricted image of
/// the degree-preserving part of <beta(g')>.
HoweReport howe_decompose(std::size_t n, std::size_t k, std::size_t l, std::size_t d,
                          std::size_t monomial_guard = 20000);

}  // namespace spodual
