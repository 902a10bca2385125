#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spodual/spo.hpp"

namespace spodual {

/// Normal-ordered monomial: exponents on the even generators, a sorted
/// squarefree index set on the odd generators. Generators are globally
/// ordered even-first, so every word sorted by basis order has this shape.
struct WCMonomial {
  std::vector<std::uint16_t> exp;   // per even slot
  std::vector<std::uint16_t> odd;   // strictly increasing odd-slot indices

  std::size_t degree() const {
    std::size_t d = odd.size();
    for (auto e : exp) d += e;
    return d;
  }
  Parity parity() const { return static_cast<Parity>(odd.size() % 2); }

  friend bool operator<(const WCMonomial& a, const WCMonomial& b) {
    if (a.exp != b.exp) return a.exp < b.exp;
    return a.odd < b.odd;
  }
  friend bool operator==(const WCMonomial& a, const WCMonomial& b) {
    return a.exp == b.exp && a.odd == b.odd;
  }
};

/// The algebra WC(E,B) = T(E)/(xy - (-1)^{|x||y|}yx - B(x,y)); with a zero
/// form this is the supersymmetric algebra S(E), which is how the symbol
/// map's codomain is represented.
template <class S>
struct WCAlgebra {
  using Ref = std::shared_ptr<const WCAlgebra<S>>;

  SuperSpace space;   // even basis vectors first
  Mat<S> gram;        // B(e_i, e_j); may be zero (S(E))
  std::size_t n_even = 0, n_odd = 0;

  static Ref make(const SuperSpace& sp, Mat<S> gram) {
    auto a = std::make_shared<WCAlgebra<S>>();
    a->space = sp;
    a->gram = std::move(gram);
    for (std::size_t i = 0; i < sp.dim(); ++i) {
      if (sp.parity(i) == 0) {
        if (a->n_odd) throw std::invalid_argument("WCAlgebra: basis must be even-first");
        ++a->n_even;
      } else {
        ++a->n_odd;
      }
    }
    return a;
  }
  static Ref symmetric_of(const WCAlgebra<S>& o) {
    return make(o.space, Mat<S>(o.space.dim(), o.space.dim()));
  }

  WCMonomial one() const { return WCMonomial{std::vector<std::uint16_t>(n_even, 0), {}}; }
};

template <class S>
class WCElement {
 public:
  using AlgRef = typename WCAlgebra<S>::Ref;

  WCElement() = default;
  explicit WCElement(AlgRef alg) : alg_(std::move(alg)) {}

  static WCElement scalar(const AlgRef& alg, const S& c) {
    WCElement e(alg);
    if (!c.is_zero()) e.terms_[alg->one()] = c;
    return e;
  }
  static WCElement generator(const AlgRef& alg, std::size_t index) {
    WCElement e(alg);
    WCMonomial m = alg->one();
    if (index < alg->n_even)
      m.exp[index] = 1;
    else
      m.odd.push_back(static_cast<std::uint16_t>(index - alg->n_even));
    e.terms_[m] = scalar_traits<S>::one();
    return e;
  }
  /// Degree-1 element from coordinates over the E-basis.
  static WCElement vector(const AlgRef& alg, const std::vector<S>& coords) {
    WCElement e(alg);
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (!coords[i].is_zero()) e = e + generator(alg, i).scaled(coords[i]);
    return e;
  }

  const AlgRef& algebra() const { return alg_; }
  const std::map<WCMonomial, S>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }
  /// Parity when homogeneous, nullopt otherwise.
  std::optional<Parity> parity() const {
    std::optional<Parity> p;
    for (const auto& [m, c] : terms_) {
      if (!p)
        p = m.parity();
      else if (*p != m.parity())
        return std::nullopt;
    }
    return p ? p : std::optional<Parity>(0);
  }

  WCElement scaled(const S& c) const {
    WCElement r(alg_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) r.terms_[m] = v * c;
    return r;
  }
  WCElement operator-() const { return scaled(-scalar_traits<S>::one()); }
  friend WCElement operator+(const WCElement& a, const WCElement& b) {
    WCElement r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  friend WCElement operator-(const WCElement& a, const WCElement& b) {
    WCElement r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
  }
  friend bool operator==(const WCElement& a, const WCElement& b) {
    return a.terms_ == b.terms_;
  }

  void add_term(const WCMonomial& m, const S& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_[m] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Keeps only monomials of degree exactly d (resp. at most d).
  WCElement graded_part(std::size_t d) const {
    WCElement r(alg_);
    for (const auto& [m, c] : terms_)
      if (m.degree() == d) r.terms_[m] = c;
    return r;
  }
  WCElement truncated(std::size_t d) const {
    WCElement r(alg_);
    for (const auto& [m, c] : terms_)
      if (m.degree() <= d) r.terms_[m] = c;
    return r;
  }

 private:
  AlgRef alg_;
  std::map<WCMonomial, S> terms_;
};

namespace detail {

// (normal monomial) * e_g for an even generator, rewriting out-of-order pairs
// with x_j x_g = x_g x_j + B(x_j, x_g).
template <class S>
void append_even(const WCAlgebra<S>& alg, const WCMonomial& m, const S& c, std::size_t g,
                 std::map<WCMonomial, S>& out) {
  std::size_t j = alg.n_even;
  for (std::size_t t = alg.n_even; t-- > g + 1;)
    if (m.exp[t] > 0) { j = t; break; }
  if (j == alg.n_even) {
    WCMonomial r = m;
    r.exp[g] += 1;
    auto it = out.find(r);
    if (it == out.end()) out[r] = c;
    else { it->second += c; if (it->second.is_zero()) out.erase(it); }
    return;
  }
  WCMonomial m1 = m;
  m1.exp[j] -= 1;
  std::map<WCMonomial, S> tmp;
  append_even(alg, m1, c, g, tmp);
  for (auto& [mm, cc] : tmp) {
    WCMonomial r = mm;
    r.exp[j] += 1;
    auto it = out.find(r);
    if (it == out.end()) out[r] = cc;
    else { it->second += cc; if (it->second.is_zero()) out.erase(it); }
  }
  const S& b = alg.gram(j, g);
  if (!b.is_zero()) {
    S v = c * b;
    auto it = out.find(m1);
    if (it == out.end()) out[m1] = v;
    else { it->second += v; if (it->second.is_zero()) out.erase(it); }
  }
}

// (normal monomial) * f_g for an odd generator (g is an odd-slot index):
// f_h f_g = -f_g f_h + B(f_h, f_g) and f_g^2 = B(f_g, f_g)/2.
template <class S>
void append_odd(const WCAlgebra<S>& alg, const WCMonomial& m, const S& c, std::size_t g,
                std::map<WCMonomial, S>& out) {
  auto add = [&out](const WCMonomial& mm, const S& cc) {
    if (cc.is_zero()) return;
    auto it = out.find(mm);
    if (it == out.end()) out[mm] = cc;
    else { it->second += cc; if (it->second.is_zero()) out.erase(it); }
  };
  if (m.odd.empty() || m.odd.back() < g) {
    WCMonomial r = m;
    r.odd.push_back(static_cast<std::uint16_t>(g));
    add(r, c);
    return;
  }
  std::size_t h = m.odd.back();
  WCMonomial m1 = m;
  m1.odd.pop_back();
  if (h == g) {
    const S& b = alg.gram(alg.n_even + g, alg.n_even + g);
    if (!b.is_zero()) add(m1, c * b / S(2));
    return;
  }
  std::map<WCMonomial, S> tmp;
  append_odd(alg, m1, -c, g, tmp);
  for (auto& [mm, cc] : tmp) {
    WCMonomial r = mm;
    r.odd.push_back(static_cast<std::uint16_t>(h));
    add(r, cc);
  }
  const S& b = alg.gram(alg.n_even + h, alg.n_even + g);
  if (!b.is_zero()) add(m1, c * b);
}

template <class S>
std::map<WCMonomial, S> append_generator(const WCAlgebra<S>& alg,
                                         const std::map<WCMonomial, S>& cur, std::size_t g) {
  std::map<WCMonomial, S> out;
  for (const auto& [m, c] : cur) {
    if (g < alg.n_even)
      append_even(alg, m, c, g, out);
    else
      append_odd(alg, m, c, g - alg.n_even, out);
  }
  return out;
}

}  // namespace detail

/// Normal-ordered product in WC(E,B).
template <class S>
WCElement<S> wc_mul(const WCElement<S>& a, const WCElement<S>& b) {
  if (a.algebra() != b.algebra())
    throw std::invalid_argument("wc_mul: different algebras");
  const auto& alg = *a.algebra();
  WCElement<S> result(a.algebra());
  for (const auto& [mb, cb] : b.terms()) {
    // state = a * cb, then append mb's generators left to right
    std::map<WCMonomial, S> state;
    for (const auto& [ma, ca] : a.terms()) state[ma] = ca * cb;
    for (std::size_t g = 0; g < alg.n_even; ++g)
      for (std::uint16_t t = 0; t < mb.exp[g]; ++t)
        state = detail::append_generator(alg, state, g);
    for (auto o : mb.odd) state = detail::append_generator(alg, state, alg.n_even + o);
    for (const auto& [m, c] : state) result.add_term(m, c);
  }
  return result;
}

/// Supercommutator [a,b] for homogeneous a.
template <class S>
WCElement<S> wc_bracket(const WCElement<S>& a, const WCElement<S>& b) {
  auto pa = a.parity(), pb = b.parity();
  if (!pa || !pb) throw std::invalid_argument("wc_bracket: inhomogeneous input");
  auto ab = wc_mul(a, b);
  auto ba = wc_mul(b, a);
  return (*pa * *pb) % 2 ? ab + ba : ab - ba;
}

/// Coordinates of a degree-<=1 element over {1} u E-basis; throws otherwise.
template <class S>
std::vector<S> linear_coords(const WCElement<S>& a) {
  const auto& alg = *a.algebra();
  std::vector<S> out(1 + alg.space.dim(), scalar_traits<S>::zero());
  for (const auto& [m, c] : a.terms()) {
    if (m.degree() == 0) {
      out[0] = c;
    } else if (m.degree() == 1) {
      if (!m.odd.empty())
        out[1 + alg.n_even + m.odd[0]] = c;
      else
        for (std::size_t g = 0; g < alg.n_even; ++g)
          if (m.exp[g]) out[1 + g] = c;
    } else {
      throw std::invalid_argument("linear_coords: degree > 1");
    }
  }
  return out;
}

/// Spanning set of Omega (the degree-2 copy of spo(E,B)): anticommutators of
/// even generators, commutators of odd generators, mixed products.
template <class S>
std::vector<WCElement<S>> omega_spanning(const typename WCAlgebra<S>::Ref& alg) {
  std::vector<WCElement<S>> out;
  const std::size_t ne = alg->n_even, no = alg->n_odd;
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t j = i; j < ne; ++j) {
      auto a = WCElement<S>::generator(alg, i), b = WCElement<S>::generator(alg, j);
      out.push_back(wc_mul(a, b) + wc_mul(b, a));
    }
  for (std::size_t i = 0; i < no; ++i)
    for (std::size_t j = i + 1; j < no; ++j) {
      auto a = WCElement<S>::generator(alg, ne + i), b = WCElement<S>::generator(alg, ne + j);
      out.push_back(wc_mul(a, b) - wc_mul(b, a));
    }
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t j = 0; j < no; ++j)
      out.push_back(wc_mul(WCElement<S>::generator(alg, i),
                           WCElement<S>::generator(alg, ne + j)));
  return out;
}

/// The unique element of Omega with [beta(X), iota(v)] = iota(X v) for all v;
/// computed by inverting the linear map Omega -> spo rather than by a closed
/// formula. Throws if X does not lie in spo(E,B).
template <class S>
WCElement<S> beta(const typename WCAlgebra<S>::Ref& alg, const Mat<S>& x, Parity px) {
  const std::size_t n = alg->space.dim();
  auto span = omega_spanning<S>(alg);
  // keep only spanning elements whose parity matches |X|
  std::vector<WCElement<S>> gens;
  for (auto& w : span)
    if (w.is_zero() || *w.parity() == px) gens.push_back(std::move(w));

  Mat<S> sys(n * (1 + n), gens.size());
  std::vector<S> rhs(n * (1 + n), scalar_traits<S>::zero());
  for (std::size_t b = 0; b < n; ++b) {
    auto v = WCElement<S>::generator(alg, b);
    for (std::size_t gidx = 0; gidx < gens.size(); ++gidx) {
      auto br = wc_bracket(gens[gidx], v);
      auto co = linear_coords(br);
      for (std::size_t k = 0; k < co.size(); ++k)
        if (!co[k].is_zero()) sys(b * (1 + n) + k, gidx) = co[k];
    }
    for (std::size_t r = 0; r < n; ++r)
      if (!x(r, b).is_zero()) rhs[b * (1 + n) + 1 + r] = x(r, b);
  }
  auto sol = solve(sys, rhs);
  if (!sol) throw std::invalid_argument("beta: X is not in spo(E,B)");
  WCElement<S> out(alg);
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (!(*sol)[g].is_zero()) out = out + gens[g].scaled((*sol)[g]);
  return out;
}

/// Symbol map into S(E) (same monomial data, zero form), degree-bounded.
template <class S>
WCElement<S> symbol(const WCElement<S>& a, std::size_t k,
                    const typename WCAlgebra<S>::Ref& sym_alg) {
  if (a.degree() > k) throw std::invalid_argument("symbol: degree exceeds bound");
  WCElement<S> out(sym_alg);
  for (const auto& [m, c] : a.terms()) out.add_term(m, c);
  return out;
}

/// Form-preserving even group element acting by algebra automorphisms.
template <class S>
struct GroupElement {
  Mat<S> mat;
  std::string tag;
};

template <class S>
bool preserves_form(const BilinearSpace<S>& e, const Mat<S>& g) {
  for (std::size_t i = 0; i < e.space.dim(); ++i)
    for (std::size_t j = 0; j < e.space.dim(); ++j) {
      if (!g(i, j).is_zero() && e.space.parity(i) != e.space.parity(j)) return false;  // even
    }
  return g.transposed() * e.gram * g == e.gram;
}

/// Extends g multiplicatively to normal-ordered monomials; well-defined
/// because g preserves B.
template <class S>
WCElement<S> group_act(const GroupElement<S>& g, const WCElement<S>& a) {
  const auto& alg = *a.algebra();
  const std::size_t n = alg.space.dim();
  WCElement<S> out(a.algebra());
  for (const auto& [m, c] : a.terms()) {
    std::map<WCMonomial, S> state;
    state[alg.one()] = c;
    auto push_token = [&](std::size_t t) {
      std::map<WCMonomial, S> next;
      for (const auto& [mm, cc] : state)
        for (std::size_t r = 0; r < n; ++r) {
          if (g.mat(r, t).is_zero()) continue;
          if (r < alg.n_even)
            detail::append_even(alg, mm, cc * g.mat(r, t), r, next);
          else
            detail::append_odd(alg, mm, cc * g.mat(r, t), r - alg.n_even, next);
        }
      state = std::move(next);
    };
    for (std::size_t t = 0; t < alg.n_even; ++t)
      for (std::uint16_t k = 0; k < m.exp[t]; ++k) push_token(t);
    for (auto o : m.odd) push_token(alg.n_even + o);
    for (const auto& [mm, cc] : state) out.add_term(mm, cc);
  }
  return out;
}

/// All monomials over (n_even, n_odd) slots of degree <= d.
inline std::vector<WCMonomial> monomials_up_to(std::size_t n_even, std::size_t n_odd,
                                               std::size_t d) {
  std::vector<WCMonomial> out;
  std::vector<std::uint16_t> exp(n_even, 0);
  std::vector<std::uint16_t> odd;
  auto rec_odd = [&](auto&& self, std::size_t start, std::size_t budget) -> void {
    out.push_back(WCMonomial{exp, odd});
    if (!budget) return;
    for (std::size_t i = start; i < n_odd; ++i) {
      odd.push_back(static_cast<std::uint16_t>(i));
      self(self, i + 1, budget - 1);
      odd.pop_back();
    }
  };
  auto rec_even = [&](auto&& self, std::size_t slot, std::size_t budget) -> void {
    if (slot == n_even) {
      rec_odd(rec_odd, 0, budget);
      return;
    }
    for (std::size_t e = 0; e <= budget; ++e) {
      exp[slot] = static_cast<std::uint16_t>(e);
      self(self, slot + 1, budget - e);
    }
    exp[slot] = 0;
  };
  rec_even(rec_even, 0, d);
  return out;
}

// --- Fock model --------------------------------------------------------------

/// Monomial basis of S^{<=N}(V) for a maximal isotropic V in E = V + V*,
/// together with the data needed to act by multiplication and derivation
/// operators. E-basis indices are partitioned into the V part and the V*
/// part; the V*-vectors pair against V through B.
template <class S>
struct FockBasis {
  typename WCAlgebra<S>::Ref alg;
  std::vector<std::size_t> v_idx;      // E-indices spanning V (even first)
  std::vector<std::size_t> vstar_idx;  // E-indices spanning V*
  std::size_t v_even = 0, v_odd = 0;
  Mat<S> pairing;                      // pairing(i,j) = B(vstar[i], v[j])
  std::size_t truncation = 0;
  std::vector<WCMonomial> monos;       // sorted by (degree, order)
  std::map<WCMonomial, std::size_t> index;
  std::vector<std::size_t> degree_offset;  // monos in [off[d], off[d+1]) have degree d

  static FockBasis make(const typename WCAlgebra<S>::Ref& alg, const BilinearSpace<S>& e,
                        std::vector<std::size_t> v, std::vector<std::size_t> vstar,
                        std::size_t n) {
    FockBasis f;
    f.alg = alg;
    f.v_idx = std::move(v);
    f.vstar_idx = std::move(vstar);
    f.truncation = n;
    if (f.v_idx.size() != f.vstar_idx.size() ||
        f.v_idx.size() * 2 != e.space.dim())
      throw std::invalid_argument("FockBasis: V must be a maximal isotropic half");
    for (auto i : f.v_idx) (e.space.parity(i) == 0 ? f.v_even : f.v_odd) += 1;
    // within each parity class, V-indices must precede V*-indices; the
    // derivations-first application order in fock_act depends on it
    for (auto vi : f.v_idx)
      for (auto si : f.vstar_idx)
        if (e.space.parity(vi) == e.space.parity(si) && si < vi)
          throw std::invalid_argument("FockBasis: V must precede V* within each parity");
    // isotropy of both halves
    auto zero_block = [&](const std::vector<std::size_t>& a) {
      for (auto i : a)
        for (auto j : a)
          if (!e.gram(i, j).is_zero()) return false;
      return true;
    };
    if (!zero_block(f.v_idx) || !zero_block(f.vstar_idx))
      throw std::invalid_argument("FockBasis: V or V* not isotropic");
    f.pairing = Mat<S>(f.v_idx.size(), f.v_idx.size());
    for (std::size_t i = 0; i < f.vstar_idx.size(); ++i)
      for (std::size_t j = 0; j < f.v_idx.size(); ++j)
        f.pairing(i, j) = e.gram(f.vstar_idx[i], f.v_idx[j]);
    if (rank(f.pairing) != f.v_idx.size())
      throw std::invalid_argument("FockBasis: degenerate V*-V pairing");

    auto all_m = monomials_up_to(f.v_even, f.v_odd, n);
    std::stable_sort(all_m.begin(), all_m.end(), [](const WCMonomial& a, const WCMonomial& b) {
      if (a.degree() != b.degree()) return a.degree() < b.degree();
      return a < b;
    });
    f.degree_offset.assign(n + 2, 0);
    for (std::size_t i = 0; i < all_m.size(); ++i) f.index[all_m[i]] = i;
    for (const auto& m : all_m) f.degree_offset[m.degree() + 1] += 1;
    for (std::size_t d = 1; d < f.degree_offset.size(); ++d)
      f.degree_offset[d] += f.degree_offset[d - 1];
    f.monos = std::move(all_m);
    return f;
  }

  std::size_t dim() const { return monos.size(); }
  std::size_t dim_degree(std::size_t d) const {
    return degree_offset[d + 1] - degree_offset[d];
  }
};

/// Matrix of a WC element acting on S^{<=N}(V). Components leaving the
/// truncation window are dropped; within the window the matrix is exact,
/// because each monomial is applied derivations-first (tokens of opposite
/// parity commute exactly, B being even), so intermediate states never
/// exceed max(input, output) degree.
template <class S>
Mat<S> fock_act(const WCElement<S>& a, const FockBasis<S>& f) {
  const auto& alg = *a.algebra();
  const std::size_t nv = f.v_idx.size();
  // position of an E-index inside V / V*, or npos
  std::vector<std::size_t> vpos(alg.space.dim(), static_cast<std::size_t>(-1));
  std::vector<std::size_t> spos(alg.space.dim(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < nv; ++i) {
    vpos[f.v_idx[i]] = i;
    spos[f.vstar_idx[i]] = i;
  }
  // V slots: even V-vectors get slots 0..v_even-1 in order, odd similarly
  std::vector<std::size_t> vslot(nv);
  {
    std::size_t e = 0, o = 0;
    for (std::size_t i = 0; i < nv; ++i)
      if (alg.space.parity(f.v_idx[i]) == 0)
        vslot[i] = e++;
      else
        vslot[i] = o++;
  }

  auto mul_v = [&](const WCMonomial& m, std::size_t vi, WCMonomial& r, int& sign) {
    // multiplication by V-vector vi (prepend)
    r = m;
    sign = 1;
    if (alg.space.parity(f.v_idx[vi]) == 0) {
      r.exp[vslot[vi]] += 1;
      return true;
    }
    std::uint16_t s = static_cast<std::uint16_t>(vslot[vi]);
    std::size_t pos = 0;
    for (auto o : m.odd) {
      if (o == s) return false;  // squarefree
      if (o < s) ++pos;
    }
    r.odd.insert(r.odd.begin() + pos, s);
    if (pos % 2) sign = -1;
    return true;
  };
  auto deriv_slot = [&](const WCMonomial& m, std::size_t slot, bool odd_slot, WCMonomial& r,
                        S& factor) {
    r = m;
    if (!odd_slot) {
      if (!m.exp[slot]) return false;
      factor = S(static_cast<long>(m.exp[slot]));
      r.exp[slot] -= 1;
      return true;
    }
    std::size_t pos = 0;
    for (std::size_t t = 0; t < m.odd.size(); ++t)
      if (m.odd[t] == slot) {
        r.odd.erase(r.odd.begin() + t);
        factor = pos % 2 ? -scalar_traits<S>::one() : scalar_traits<S>::one();
        return true;
      } else if (m.odd[t] < slot) {
        ++pos;
      }
    return false;
  };

  Mat<S> out(f.dim(), f.dim());
  for (std::size_t col = 0; col < f.dim(); ++col) {
    for (const auto& [word, coeff] : a.terms()) {
      std::map<WCMonomial, S> state;
      state[f.monos[col]] = coeff;
      // Application order: even derivations, odd derivations, odd
      // multiplications, even multiplications. Same-parity relative order is
      // the word order (V* tokens already follow V tokens within a parity),
      // and cross-parity swaps are exact.
      std::vector<std::size_t> app_order;
      auto is_v = [&](std::size_t e_index) {
        return vpos[e_index] != static_cast<std::size_t>(-1);
      };
      for (int pass = 0; pass < 4; ++pass) {
        bool want_v = pass >= 2;
        bool want_even = pass == 0 || pass == 3;
        if (want_even) {
          for (std::size_t t = alg.n_even; t-- > 0;) {
            if (is_v(t) != want_v) continue;
            for (std::uint16_t k = 0; k < word.exp[t]; ++k) app_order.push_back(t);
          }
        } else {
          for (std::size_t oi = word.odd.size(); oi-- > 0;) {
            std::size_t e_index = alg.n_even + word.odd[oi];
            if (is_v(e_index) == want_v) app_order.push_back(e_index);
          }
        }
      }
      for (std::size_t e_index : app_order) {
        std::map<WCMonomial, S> next;
        auto add = [&](const WCMonomial& mm, const S& cc) {
          if (cc.is_zero() || mm.degree() > f.truncation) return;
          auto it = next.find(mm);
          if (it == next.end()) next[mm] = cc;
          else { it->second += cc; if (it->second.is_zero()) next.erase(it); }
        };
        if (vpos[e_index] != static_cast<std::size_t>(-1)) {
          std::size_t vi = vpos[e_index];
          for (const auto& [mm, cc] : state) {
            WCMonomial r;
            int sg;
            if (mul_v(mm, vi, r, sg)) add(r, sg < 0 ? -cc : cc);
          }
        } else if (spos[e_index] != static_cast<std::size_t>(-1)) {
          std::size_t si = spos[e_index];
          for (const auto& [mm, cc] : state)
            for (std::size_t j = 0; j < nv; ++j) {
              if (f.pairing(si, j).is_zero()) continue;
              WCMonomial r;
              S factor = scalar_traits<S>::one();
              bool odd_slot = alg.space.parity(f.v_idx[j]) == 1;
              if (deriv_slot(mm, vslot[j], odd_slot, r, factor))
                add(r, cc * f.pairing(si, j) * factor);
            }
        } else {
          throw std::logic_error("fock_act: E-index neither in V nor V*");
        }
        state = std::move(next);
      }
      for (const auto& [mm, cc] : state) out(f.index.at(mm), col) += cc;
    }
  }
  return out;
}

}  // namespace spodual
