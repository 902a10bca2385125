#include "spodual/invariants.hpp"

namespace spodual {

namespace {

using G = Gaussian;

// Flattened matrix span comparison.
bool matrix_spans_equal(const std::vector<Mat<G>>& a, const std::vector<Mat<G>>& b,
                        std::size_t n) {
  std::vector<std::vector<G>> ra, rb;
  for (const auto& m : a) ra.push_back(m.flatten());
  for (const auto& m : b) rb.push_back(m.flatten());
  return span_equal(ra, rb, n * n);
}

Mat<G> block_of(const Mat<G>& m, std::size_t off, std::size_t len) {
  Mat<G> out(len, len);
  for (std::size_t i = 0; i < len; ++i)
    for (std::size_t j = 0; j < len; ++j) out(i, j) = m(off + i, off + j);
  return out;
}

bool block_diagonal_at(const Mat<G>& m, const std::vector<std::size_t>& offsets) {
  // offsets partitions [0, dim): entries across different blocks must vanish
  auto block_id = [&](std::size_t i) {
    std::size_t b = 0;
    while (b + 1 < offsets.size() && i >= offsets[b + 1]) ++b;
    return b;
  };
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero() && block_id(i) != block_id(j)) return false;
  return true;
}

}  // namespace

HoweReport howe_decompose(std::size_t n, std::size_t k, std::size_t l, std::size_t d,
                          std::size_t monomial_guard) {
  if (n < 1 || k < 1) throw std::invalid_argument("howe_decompose: need n, k >= 1");
  HoweReport report;
  report.n = n;
  report.k = k;
  report.l = l;
  report.max_degree = d;

  // U = C^{2n|1} with gamma (triv,-1): J_{2n} + Id_1;
  // W = C^{2k|2l} with gamma' (triv,+1): split symmetric + J_{2l}.
  auto alg_c = make_algebra_complex(AlgebraName::Cl0C);
  auto ivs = superinvolutions(alg_c);
  auto gamma_u = standard_form<G>(alg_c, ivs[0], -1, 0, ModuleSide::Left, {2 * n, 1, 0});
  auto gamma_w =
      standard_form<G>(alg_c, ivs[0], +1, 0, ModuleSide::Right, {2 * k, 0, 2 * l}, true);
  auto inst = build_type_I(gamma_u, gamma_w, "SpO(2n|1) x OSp(2k|2l)");

  // V = C^{k|l} (x) C^{2n|1}: the W-generators 0..k-1 (even) and 2k..2k+l-1
  // (odd) span the isotropic half V_W, their partners span V_W^*.
  auto ts = tensor_form(gamma_w, gamma_u);
  auto in_vw = [&](std::size_t a) { return a < k || (a >= 2 * k && a < 2 * k + l); };
  std::vector<std::size_t> perm;
  std::vector<std::size_t> v_new, vstar_new;
  for (Parity want : {0, 1}) {
    std::vector<std::size_t> vpart, spart;
    for (std::size_t t = 0; t < ts.triples.size(); ++t) {
      auto [a, kk, c] = ts.triples[t];
      Parity pt = (ts.w_module.gen_parities[a] + ts.u_module.gen_parities[c]) % 2;
      if (pt != want) continue;
      (in_vw(a) ? vpart : spart).push_back(t);
    }
    for (auto t : vpart) {
      v_new.push_back(perm.size());
      perm.push_back(t);
    }
    for (auto t : spart) {
      vstar_new.push_back(perm.size());
      perm.push_back(t);
    }
  }
  auto pinst = permute_basis(inst, perm);
  auto alg = WCAlgebra<G>::make(pinst.e.space, pinst.e.gram);
  auto fock = FockBasis<G>::make(alg, pinst.e, v_new, vstar_new, d);
  if (fock.dim() > monomial_guard)
    throw std::runtime_error("howe_decompose: resource guard exceeded");

  // sanity: per-degree dimension formula
  // pi(X) = fock_act(beta(X)) for the spo(2n|1) side
  std::vector<Mat<G>> pis;
  for (std::size_t i = 0; i < pinst.g.dim(); ++i)
    pis.push_back(fock_act(beta<G>(alg, pinst.g.basis[i], pinst.g.parities[i]), fock));

  // component representative: -1 on the odd generator of U, extended to E,
  // then to S(V) (diagonal on monomials).
  std::vector<int> ediag(perm.size(), 1);
  for (std::size_t t = 0; t < ts.triples.size(); ++t) {
    auto [a, kk, c] = ts.triples[t];
    (void)a;
    (void)kk;
    if (ts.u_module.gen_parities[c] == 1) ediag[t] = -1;
  }
  std::vector<int> pdiag(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) pdiag[i] = ediag[perm[i]];
  // reflection restricted to V, extended multiplicatively to monomials
  std::vector<int> eig_even, eig_odd;
  for (auto vi : fock.v_idx)
    (alg->space.parity(vi) == 0 ? eig_even : eig_odd).push_back(pdiag[vi]);
  Mat<G> refl(fock.dim(), fock.dim());
  for (std::size_t m = 0; m < fock.dim(); ++m) {
    int s = 1;
    const auto& mono = fock.monos[m];
    for (std::size_t slot = 0; slot < fock.v_even; ++slot)
      if (mono.exp[slot] % 2 && eig_even[slot] < 0) s = -s;
    for (auto o : mono.odd)
      if (eig_odd[o] < 0) s = -s;
    refl(m, m) = s < 0 ? -Gaussian(1) : Gaussian(1);
  }

  std::vector<std::size_t> offsets(fock.truncation + 1);
  for (std::size_t dd = 0; dd <= fock.truncation; ++dd) offsets[dd] = fock.degree_offset[dd];

  // Degree-preserving part of <beta(g')>. An operator that preserves degree
  // on S^{<=d} is a combination of normal-ordered monomials with at most d
  // raising and d lowering factors, so filtration degree 2d suffices.
  std::size_t dgen = 2 * d;
  auto gen = generated_span(pinst.g_prime, alg, dgen);
  // a monomial is degree-preserving when its V-degree equals its V*-degree
  std::vector<bool> even_is_v(alg->n_even, false), odd_is_v(alg->n_odd, false);
  for (auto vi : v_new) {
    if (alg->space.parity(vi) == 0)
      even_is_v[vi] = true;
    else
      odd_is_v[vi - alg->n_even] = true;
  }
  auto is_deg_preserving_mono = [&](const WCMonomial& m) {
    long bal = 0;
    for (std::size_t s = 0; s < alg->n_even; ++s) bal += even_is_v[s] ? m.exp[s] : -long(m.exp[s]);
    for (auto o : m.odd) bal += odd_is_v[o] ? 1 : -1;
    return bal == 0;
  };
  // intersect the generated span with the degree-preserving monomial subspace
  auto monos_all = monomials_up_to(alg->n_even, alg->n_odd, dgen);
  std::map<WCMonomial, std::size_t> midx;
  for (std::size_t i = 0; i < monos_all.size(); ++i) midx[monos_all[i]] = i;
  std::vector<std::size_t> bad_cols;
  for (std::size_t i = 0; i < monos_all.size(); ++i)
    if (!is_deg_preserving_mono(monos_all[i])) bad_cols.push_back(i);
  Mat<G> bad(gen.size(), bad_cols.size());
  for (std::size_t r = 0; r < gen.size(); ++r) {
    auto co = detail::element_coords(gen[r], midx);
    for (std::size_t c = 0; c < bad_cols.size(); ++c) bad(r, c) = co[bad_cols[c]];
  }
  std::vector<WCElement<G>> gen_dp;
  {
    Mat<G> badT(bad.cols(), bad.rows());
    for (std::size_t i = 0; i < bad.rows(); ++i)
      for (std::size_t j = 0; j < bad.cols(); ++j) badT(j, i) = bad(i, j);
    for (const auto& comb : nullspace(badT)) {
      WCElement<G> x(alg);
      for (std::size_t r = 0; r < gen.size(); ++r)
        if (!comb[r].is_zero()) x = x + gen[r].scaled(comb[r]);
      if (!x.is_zero()) gen_dp.push_back(std::move(x));
    }
  }
  std::vector<Mat<G>> gen_ops;
  for (const auto& x : gen_dp) gen_ops.push_back(fock_act(x, fock));

  report.all_ok = true;
  for (std::size_t dd = 0; dd <= d; ++dd) {
    HoweDegreeLine line;
    line.degree = dd;
    line.dim_sd = fock.dim_degree(dd);
    std::size_t off = offsets[dd], len = line.dim_sd;

    line.invariant_under_g = true;
    for (const auto& m : pis)
      if (!block_diagonal_at(m, offsets)) line.invariant_under_g = false;

    // commutant of the G-action on S^dd, in the signed Hom convention,
    // including the component representative
    std::vector<Mat<G>> lam;
    std::vector<Parity> beta_par;
    for (std::size_t i = 0; i < pis.size(); ++i) {
      lam.push_back(block_of(pis[i], off, len));
      beta_par.push_back(pinst.g.parities[i]);
    }
    lam.push_back(block_of(refl, off, len));
    beta_par.push_back(0);
    std::vector<Parity> spar;
    for (std::size_t i = 0; i < len; ++i) spar.push_back(fock.monos[off + i].parity());
    auto comm = hom_intertwiners(lam, beta_par, lam, spar, spar);
    std::vector<Mat<G>> comm_mats;
    for (auto& [pp, m] : comm) comm_mats.push_back(m);
    line.dim_commutant = comm_mats.size();

    std::vector<Mat<G>> gen_blocks;
    std::vector<std::vector<G>> rows;
    for (const auto& m : gen_ops) {
      auto blk = block_of(m, off, len);
      if (blk.is_zero()) continue;
      auto fl = blk.flatten();
      if (!in_span(echelonize(rows, len * len), fl)) {
        rows.push_back(fl);
        gen_blocks.push_back(blk);
      }
    }
    line.dim_generated = gen_blocks.size();
    line.commutant_matches = matrix_spans_equal(comm_mats, gen_blocks, len);
    report.all_ok &= line.commutant_matches && line.invariant_under_g;
    report.per_degree.push_back(line);
  }

  // Fingerprint separation: Hom_G(S^a, S^b) = 0 for a != b. The degree blocks
  // are whole isotypic components exactly when this holds (as at l = 0); it is
  // reported alongside the commutant results, not folded into them.
  report.fingerprints_distinct = true;
  for (std::size_t a = 0; a <= d; ++a)
    for (std::size_t b = 0; b <= d; ++b) {
      if (a == b) continue;
      std::size_t offa = offsets[a], la = fock.dim_degree(a);
      std::size_t offb = offsets[b], lb = fock.dim_degree(b);
      std::vector<Mat<G>> lam, pi;
      std::vector<Parity> bp;
      for (std::size_t i = 0; i < pis.size(); ++i) {
        lam.push_back(block_of(pis[i], offa, la));
        pi.push_back(block_of(pis[i], offb, lb));
        bp.push_back(pinst.g.parities[i]);
      }
      lam.push_back(block_of(refl, offa, la));
      pi.push_back(block_of(refl, offb, lb));
      bp.push_back(0);
      std::vector<Parity> pa, pb;
      for (std::size_t i = 0; i < la; ++i) pa.push_back(fock.monos[offa + i].parity());
      for (std::size_t i = 0; i < lb; ++i) pb.push_back(fock.monos[offb + i].parity());
      if (!hom_intertwiners(lam, bp, pi, pa, pb).empty()) report.fingerprints_distinct = false;
    }
  return report;
}

}  // namespace spodual
