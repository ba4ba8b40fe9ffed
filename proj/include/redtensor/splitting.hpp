// Exact decomposition of idempotents in semisimple endomorphism algebras.
//
// The algebra is given by a basis of matrices acting on a vector space.  An
// idempotent is refined by probing elements: coprime factor splits of minimal
// polynomials (squarefree decomposition, Fitting splits, exact roots found by
// candidate testing and numerically guided recognition), applied recursively.
// In float mode the same pipeline runs with Durand-Kerner roots, which is an
// eigen-decomposition with tolerance.

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "redtensor/linalg.hpp"

namespace rtp {

struct NotIdempotent : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IncompleteDecomposition : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// deterministic pseudo-random stream (splitmix64)
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  long small(long lo, long hi) { return lo + (long)(next() % (std::uint64_t)(hi - lo + 1)); }
};

// exact roots of a monic polynomial over Cyc; returns all roots with
// multiplicity if the polynomial splits over candidates the toolkit can
// produce, otherwise nullopt.
std::optional<std::vector<Cyc>> exact_roots(const Poly<Cyc>& p);

inline std::optional<std::vector<NumF>> field_roots(const Poly<NumF>& p) {
  std::vector<std::complex<double>> monic(p.a.size());
  for (std::size_t i = 0; i < p.a.size(); ++i) monic[i] = p.a[i].v / p.a.back().v;
  auto rs = durand_kerner(monic);
  std::vector<NumF> out;
  for (auto r : rs) out.push_back(NumF(r));
  return out;
}
inline std::optional<std::vector<Cyc>> field_roots(const Poly<Cyc>& p) { return exact_roots(p); }

// Splits the idempotent e into primitive orthogonal idempotents relative to
// the algebra spanned by `gens` (matrices on the same space, closed under
// product in the semisimple closure).  All returned idempotents commute with
// the Z-constraints encoded in gens only if e and gens do; the caller is
// responsible for supplying the right algebra.
template <class F>
std::vector<Matrix<F>> split_idempotent_in_algebra(const Matrix<F>& e,
                                                   const std::vector<Matrix<F>>& gens,
                                                   Rng& rng) {
  const std::size_t n = e.rows();
  if (e * e != e) throw NotIdempotent("split: input is not idempotent");
  if (e.is_zero()) return {};

  // image coordinates of e
  Matrix<F> ecopy = e;
  auto piv = ecopy.column_basis();
  Matrix<F> iota(n, piv.size());
  for (std::size_t k = 0; k < piv.size(); ++k)
    for (std::size_t i = 0; i < n; ++i) iota.at(i, k) = e.at(i, piv[k]);
  auto proj_opt = iota.solve(e);  // p with iota p = e
  if (!proj_opt) throw std::logic_error("split: projection solve failed");
  Matrix<F> proj = *proj_opt;

  // corner algebra basis in image coordinates
  std::vector<Matrix<F>> corner;
  {
    std::vector<Matrix<F>> flat;
    for (auto& g : gens) {
      Matrix<F> c = proj * g * iota;
      flat.push_back(c);
    }
    // linear span basis
    std::size_t d = piv.size();
    Matrix<F> stack(flat.size(), d * d);
    for (std::size_t i = 0; i < flat.size(); ++i)
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) stack.at(i, r * d + c) = flat[i].at(r, c);
    Matrix<F> st = stack;
    auto pivots = st.rref();
    // use the reduced rows as a clean basis
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      Matrix<F> b(d, d);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) b.at(r, c) = st.at(k, r * d + c);
      corner.push_back(b);
    }
  }
  if (corner.size() <= 1) return {e};  // End = F, primitive

  const std::size_t d = piv.size();

  auto try_split_with = [&](const Matrix<F>& u) -> std::optional<std::pair<Matrix<F>, Matrix<F>>> {
    Poly<F> mp = minimal_polynomial(u);
    if (mp.degree() <= 1) return std::nullopt;
    const F one = FieldOps<F>::one(), zeroF = FieldOps<F>::zero();
    // collect a pairwise-coprime factorization of mp
    std::vector<Poly<F>> factors;
    Poly<F> sf = mp.squarefree_part();
    auto roots = field_roots(sf);
    if (roots && (long)roots->size() == sf.degree()) {
      for (const F& r : *roots) {
        Poly<F> lin(std::vector<F>{zeroF - r, one});
        Poly<F> acc = Poly<F>::constant(one);
        Poly<F> cur = mp;
        while (true) {
          auto [q, rem] = cur.divmod(lin);
          if (!rem.is_zero()) break;
          acc = acc * lin;
          cur = q;
        }
        factors.push_back(acc);
      }
    } else if (FieldOps<F>::is_zero(mp.a[0])) {
      // Fitting split: t^k against the unit-constant rest
      Poly<F> t(std::vector<F>{zeroF, one});
      Poly<F> tk = Poly<F>::constant(one);
      Poly<F> rest = mp;
      while (rest.degree() >= 1 && FieldOps<F>::is_zero(rest.a[0])) {
        rest = rest.divmod(t).first;
        tk = tk * t;
      }
      if (tk.degree() >= 1 && rest.degree() >= 1) {
        factors.push_back(tk);
        factors.push_back(rest);
      }
    }
    if (factors.size() < 2) return std::nullopt;
    // Bezout idempotent for factors[0] vs product of the rest
    Poly<F> p1 = factors[0], p2 = Poly<F>::constant(FieldOps<F>::one());
    for (std::size_t i = 1; i < factors.size(); ++i) p2 = p2 * factors[i];
    Poly<F> g, a, b;
    Poly<F>::ext_gcd(p1, p2, g, a, b);
    if (g.degree() != 0) return std::nullopt;
    Poly<F> h = b * p2;  // 1 on ker p1(u), 0 on ker p2(u)
    Matrix<F> idem = h.eval(u);
    if (idem * idem != idem) return std::nullopt;
    Matrix<F> zero(d, d);
    if (idem == zero || idem == Matrix<F>::identity(d)) return std::nullopt;
    return std::make_pair(idem, Matrix<F>::identity(d) - idem);
  };

  std::optional<std::pair<Matrix<F>, Matrix<F>>> split;
  for (auto& u : corner) {
    split = try_split_with(u);
    if (split) break;
  }
  for (int attempt = 0; attempt < 24 && !split; ++attempt) {
    Matrix<F> u(d, d);
    for (auto& g : corner) {
      long c = rng.small(-3, 3);
      if (c == 0) continue;
      u = u + g.scaled(FieldOps<F>::from_rational(Rat(c)));
    }
    split = try_split_with(u);
  }
  if (!split)
    throw IncompleteDecomposition("endomorphism algebra did not split with available probes");

  auto lift = [&](const Matrix<F>& h) { return iota * h * proj; };
  Matrix<F> e1 = lift(split->first), e2 = lift(split->second);
  if (e1 * e1 != e1 || e2 * e2 != e2 || !(e1 * e2).is_zero())
    throw std::logic_error("split produced non-orthogonal idempotents");
  std::vector<Matrix<F>> out;
  for (auto& part : {e1, e2}) {
    auto sub = split_idempotent_in_algebra(part, gens, rng);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

}  // namespace rtp
