#include "redtensor/centre.hpp"

#include <algorithm>
#include <cmath>

namespace rtp {

// ---- exact root extraction ----------------------------------------------------

namespace {

Rat snap_rat(double x, long max_den, double tol) {
  Rat best(0);
  double err = 1e18;
  for (long q = 1; q <= max_den; ++q) {
    long p = (long)std::llround(x * (double)q);
    double e = std::abs(x - (double)p / (double)q);
    if (e < err - 1e-15) {
      err = e;
      best = Rat(p, q);
    }
  }
  if (err > tol) return Rat(0);
  best.canonicalize();
  return best;
}

std::vector<Cyc> root_candidates_near(std::complex<double> z) {
  std::vector<Cyc> cands;
  double r2 = std::norm(z);
  if (r2 < 1e-12) {
    cands.push_back(Cyc(0));
    return cands;
  }
  Rat r2q = snap_rat(r2, 64, 1e-6);
  if (r2q == 0) return cands;
  Cyc mag = Cyc::sqrt_rational(r2q);  // |z|
  double theta = std::arg(z) / (2.0 * M_PI);
  if (theta < 0) theta += 1.0;
  for (long N : {1L, 2L, 3L, 4L, 5L, 8L, 12L, 16L, 24L, 48L}) {
    long k = (long)std::llround(theta * (double)N);
    double err = std::abs(theta * (double)N - (double)k);
    if (err > 1e-6) continue;
    Cyc cand = mag * Cyc::root_of_unity(N, k % N);
    cands.push_back(cand);
    cands.push_back(-cand);
  }
  return cands;
}

}  // namespace

std::optional<std::vector<Cyc>> exact_roots(const Poly<Cyc>& p) {
  if (p.degree() <= 0) return std::vector<Cyc>{};
  Poly<Cyc> cur = p.monic();
  std::vector<Cyc> roots;
  while (cur.degree() > 0) {
    if (cur.degree() == 1) {
      roots.push_back(Cyc(0) - cur.a[0]);
      break;
    }
    // numeric roots guide exact candidates
    std::vector<std::complex<double>> monic(cur.a.size());
    for (std::size_t i = 0; i < cur.a.size(); ++i) monic[i] = cur.a[i].to_complex();
    auto numeric = durand_kerner(monic);
    bool found = false;
    for (auto z : numeric) {
      for (const Cyc& cand : root_candidates_near(z)) {
        if (!cur.eval(cand).is_zero()) continue;
        roots.push_back(cand);
        Poly<Cyc> lin(std::vector<Cyc>{-cand, Cyc(1)});
        cur = cur.divmod(lin).first;
        found = true;
        break;
      }
      if (found) break;
    }
    if (found) continue;
    if (cur.degree() == 2) {
      // quadratic formula with exact square roots
      Cyc b = cur.a[1], c0 = cur.a[0];
      Cyc disc = b * b - Cyc(4) * c0;
      auto sq = disc.sqrt();
      if (sq) {
        Cyc half(Rat(1, 2));
        roots.push_back((-b + *sq) * half);
        roots.push_back((-b - *sq) * half);
        return roots;
      }
    }
    return std::nullopt;  // cannot split further over available candidates
  }
  return roots;
}

// ---- CentreOps ----------------------------------------------------------------

template <class F>
CentreOps<F>::CentreOps(const Engine<F>& eng, std::uint64_t seed) : eng_(&eng), seed_(seed) {
  if (!A().symmetric)
    throw std::logic_error("centre construction requires a symmetric ambient category");
}

template <class F>
std::vector<Word> CentreOps<F>::part_words(const std::vector<Label>& parts) const {
  std::vector<Word> ws;
  for (Label p : parts) ws.push_back(Word{std::vector<Label>{p}});
  return ws;
}

template <class F>
SumMor<F> CentreOps<F>::part_mor(const std::vector<Label>& src, const std::vector<Label>& dst,
                                 const Matrix<F>& m) const {
  SumMor<F> out = eng_->zero_sum(part_words(src), part_words(dst));
  for (std::size_t i = 0; i < dst.size(); ++i)
    for (std::size_t j = 0; j < src.size(); ++j) {
      if (FieldOps<F>::is_zero(m.at(i, j))) continue;
      if (dst[i] != src[j])
        throw std::logic_error("part_mor: nonzero entry between distinct simples");
      out.blk[i][j].blk[dst[i]].at(0, 0) = m.at(i, j);
    }
  return out;
}

template <class F>
Matrix<F> CentreOps<F>::part_matrix(const SumMor<F>& m) const {
  Matrix<F> out(m.dst.size(), m.src.size());
  for (std::size_t i = 0; i < m.dst.size(); ++i)
    for (std::size_t j = 0; j < m.src.size(); ++j) {
      if (m.dst[i].size() != 1 || m.src[j].size() != 1)
        throw std::logic_error("part_matrix: not a morphism of simple parts");
      if (m.dst[i].ls[0] != m.src[j].ls[0]) {
        if (!m.blk[i][j].is_zero())
          throw std::logic_error("part_matrix: nonzero block between distinct simples");
        continue;
      }
      auto it = m.blk[i][j].blk.find(m.dst[i].ls[0]);
      if (it != m.blk[i][j].blk.end()) out.at(i, j) = it->second.at(0, 0);
    }
  return out;
}

template <class F>
CentreObj<F> CentreOps<F>::trivial() const {
  CentreObj<F> z;
  z.parts = {A().unit};
  for (Label x = 0; x < (Label)A().rank(); ++x) {
    SumMor<F> b = eng_->zero_sum({Word{x, A().unit}}, {Word{A().unit, x}});
    b.blk[0][0].blk[x].at(0, 0) = FieldOps<F>::one();
    z.beta[x] = b;
  }
  return z;
}

template <class F>
CentreObj<F> CentreOps<F>::embed_symmetric(Label a) const {
  CentreObj<F> z;
  z.parts = {a};
  for (Label x = 0; x < (Label)A().rank(); ++x)
    z.beta[x] = SumMor<F>::from(eng_->braid(x, a));
  return z;
}

template <class F>
SumMor<F> CentreOps<F>::beta_at(const CentreObj<F>& z, const std::vector<Label>& at) const {
  // (at) (x) (z.parts) -> (z.parts) (x) (at), assembled from the simple components
  std::vector<Word> src, dst;
  for (Label x : at)
    for (Label p : z.parts) src.push_back(Word{x, p});
  for (Label p : z.parts)
    for (Label x : at) dst.push_back(Word{p, x});
  SumMor<F> out = eng_->zero_sum(src, dst);
  const std::size_t np = z.parts.size(), nx = at.size();
  for (std::size_t xi = 0; xi < nx; ++xi) {
    const SumMor<F>& bx = z.beta.at(at[xi]);
    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t j = 0; j < np; ++j)
        out.blk[i * nx + xi][xi * np + j] = bx.blk[i][j];
  }
  return out;
}

template <class F>
void CentreOps<F>::require_valid(const CentreObj<F>& z) const {
  const Label R = (Label)A().rank();
  auto pw = part_words(z.parts);
  // unit component is the identity
  {
    const SumMor<F>& b1 = z.beta.at(A().unit);
    SumMor<F> expect = eng_->zero_sum(b1.src, b1.dst);
    for (std::size_t i = 0; i < z.parts.size(); ++i)
      expect.blk[i][i].blk[z.parts[i]].at(0, 0) = FieldOps<F>::one();
    if (b1 != expect) throw HalfBraidingViolation("unit component is not the identity");
  }
  // invertibility: each beta_x has invertible root blocks
  for (Label x = 0; x < R; ++x) {
    const SumMor<F>& bx = z.beta.at(x);
    for (Label s = 0; s < R; ++s) {
      std::size_t ds = 0, dd = 0;
      for (auto& w : bx.src) ds += eng_->treedim(w, s);
      for (auto& w : bx.dst) dd += eng_->treedim(w, s);
      if (ds != dd) throw HalfBraidingViolation("half-braiding root blocks are not square");
      if (ds == 0) continue;
      Matrix<F> big(dd, ds);
      std::size_t roff = 0;
      for (std::size_t i = 0; i < bx.dst.size(); ++i) {
        std::size_t coff = 0;
        std::size_t rd = eng_->treedim(bx.dst[i], s);
        for (std::size_t j = 0; j < bx.src.size(); ++j) {
          std::size_t cd = eng_->treedim(bx.src[j], s);
          auto it = bx.blk[i][j].blk.find(s);
          if (it != bx.blk[i][j].blk.end())
            for (std::size_t r = 0; r < rd; ++r)
              for (std::size_t c = 0; c < cd; ++c) big.at(roff + r, coff + c) = it->second.at(r, c);
          coff += cd;
        }
        roff += rd;
      }
      if (!big.inverse()) throw HalfBraidingViolation("half-braiding is not invertible");
    }
  }
  // multiplicativity on all simple pairs
  for (Label x = 0; x < R; ++x)
    for (Label y = 0; y < R; ++y) {
      SumMor<F> lhs = eng_->compose(
          eng_->tensor(z.beta.at(x), SumMor<F>::from(eng_->identity(Word{y}))),
          eng_->tensor(SumMor<F>::from(eng_->identity(Word{x})), z.beta.at(y)));
      SumMor<F> rhs = eng_->zero_sum(lhs.src, lhs.dst);
      for (Label c = 0; c < R; ++c) {
        std::size_t nch = eng_->treedim(Word{x, y}, c);
        for (std::size_t mu = 0; mu < nch; ++mu) {
          SumMor<F> proj = SumMor<F>::from(eng_->tree_project(Word{x, y}, c, mu));
          SumMor<F> incl = SumMor<F>::from(eng_->tree_include(Word{x, y}, c, mu));
          SumMor<F> term = eng_->compose(
              eng_->tensor(eng_->identity(pw), incl),
              eng_->compose(z.beta.at(c), eng_->tensor(proj, eng_->identity(pw))));
          rhs = rhs + term;
        }
      }
      if (lhs != rhs)
        throw HalfBraidingViolation("multiplicativity fails at pair (" + A().labels[x] + "," +
                                    A().labels[y] + ")");
    }
}

template <class F>
std::vector<Matrix<F>> CentreOps<F>::zhom(const CentreObj<F>& z1, const CentreObj<F>& z2) const {
  // unknown entries: (i,j) with matching labels
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  for (std::size_t i = 0; i < z2.parts.size(); ++i)
    for (std::size_t j = 0; j < z1.parts.size(); ++j)
      if (z2.parts[i] == z1.parts[j]) unknowns.emplace_back(i, j);
  if (unknowns.empty()) return {};
  const Label R = (Label)A().rank();

  std::vector<Matrix<F>> cols;
  std::size_t eqrows = 0;
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    Matrix<F> E(z2.parts.size(), z1.parts.size());
    E.at(unknowns[u].first, unknowns[u].second) = FieldOps<F>::one();
    SumMor<F> Es = part_mor(z1.parts, z2.parts, E);
    Matrix<F> stacked(0, 1);
    std::vector<Matrix<F>> pieces;
    std::size_t total = 0;
    for (Label x = 0; x < R; ++x) {
      SumMor<F> lhs = eng_->compose(eng_->tensor(Es, SumMor<F>::from(eng_->identity(Word{x}))), z1.beta.at(x));
      SumMor<F> rhs =
          eng_->compose(z2.beta.at(x), eng_->tensor(SumMor<F>::from(eng_->identity(Word{x})), Es));
      Matrix<F> v = eng_->sum_to_vec(lhs - rhs);
      pieces.push_back(v);
      total += v.rows();
    }
    Matrix<F> col(total, 1);
    std::size_t off = 0;
    for (auto& v : pieces) {
      for (std::size_t r = 0; r < v.rows(); ++r) col.at(off + r, 0) = v.at(r, 0);
      off += v.rows();
    }
    cols.push_back(col);
    eqrows = total;
  }
  Matrix<F> sys(eqrows, unknowns.size());
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    for (std::size_t r = 0; r < eqrows; ++r) sys.at(r, u) = cols[u].at(r, 0);
  Matrix<F> ker = sys.nullspace();
  std::vector<Matrix<F>> out;
  for (std::size_t k = 0; k < ker.cols(); ++k) {
    Matrix<F> M(z2.parts.size(), z1.parts.size());
    for (std::size_t u = 0; u < unknowns.size(); ++u)
      M.at(unknowns[u].first, unknowns[u].second) = ker.at(u, k);
    out.push_back(M);
  }
  return out;
}

template <class F>
bool CentreOps<F>::isomorphic(const CentreObj<F>& z1, const CentreObj<F>& z2) const {
  // for simples, any nonzero hom is an iso; compare cheap invariants first
  std::map<Label, int> m1, m2;
  for (Label p : z1.parts) m1[p]++;
  for (Label p : z2.parts) m2[p]++;
  if (m1 != m2) return false;
  return zhom_dim(z1, z2) >= 1;
}

template <class F>
CentreObj<F> CentreOps<F>::tensor_c(const CentreObj<F>& z1, const CentreObj<F>& z2) const {
  std::vector<Word> pair_words;
  for (Label p : z1.parts)
    for (Label q : z2.parts) pair_words.push_back(Word{p, q});
  auto n = eng_->normalize(pair_words);
  CentreObj<F> z;
  z.parts = n.parts;
  auto pw1 = part_words(z1.parts), pw2 = part_words(z2.parts);
  for (Label x = 0; x < (Label)A().rank(); ++x) {
    // [x] . (p q) -> (p x) q -> p (q x): consecutive half-braiding
    SumMor<F> first = eng_->tensor(z1.beta.at(x), eng_->identity(pw2));
    SumMor<F> second = eng_->tensor(eng_->identity(pw1), z2.beta.at(x));
    SumMor<F> word_level = eng_->compose(second, first);
    // conjugate into normalized parts
    SumMor<F> left = eng_->tensor(n.project, SumMor<F>::from(eng_->identity(Word{x})));
    SumMor<F> right = eng_->tensor(SumMor<F>::from(eng_->identity(Word{x})), n.include);
    z.beta[x] = eng_->compose(left, eng_->compose(word_level, right));
  }
  return z;
}

template <class F>
F CentreOps<F>::twist_of(const CentreObj<F>& z) const {
  // quantum trace of the self-braiding; theta * qdim for simple z
  SumMor<F> b = beta_at(z, z.parts);
  return eng_->trace_sum(b) / z.qdim(A());
}

template <class F>
SumMor<F> CentreOps<F>::braiding(const CentreObj<F>& z1, const CentreObj<F>& z2) const {
  return beta_at(z2, z1.parts);
}

template <class F>
F CentreOps<F>::traced_monodromy(const CentreObj<F>& z1, const CentreObj<F>& z2) const {
  SumMor<F> m = eng_->compose(braiding(z2, z1), braiding(z1, z2));
  return eng_->trace_sum(m);
}

// ---- I_s ---------------------------------------------------------------------

template <class F>
CentreObj<F> CentreOps<F>::build_unit_s(int ratio_exp, int dy_exp) const {
  const Label R = (Label)A().rank();
  std::vector<Word> words;
  for (Label x = 0; x < R; ++x) words.push_back(Word{A().dual[x], x});
  auto n = eng_->normalize(words);
  CentreObj<F> z;
  z.parts = n.parts;
  for (Label y = 0; y < R; ++y) {
    // word-level component: [y, x*, x] -> [x'*, x', y]
    std::vector<Word> src, dst;
    for (Label x = 0; x < R; ++x) src.push_back(Word{y, A().dual[x], x});
    for (Label xp = 0; xp < R; ++xp) dst.push_back(Word{A().dual[xp], xp, y});
    SumMor<F> g = eng_->zero_sum(src, dst);
    for (Label x = 0; x < R; ++x)
      for (Label xp = 0; xp < R; ++xp) {
        std::size_t nch = eng_->treedim(Word{xp, y}, x);
        if (nch == 0) continue;
        F w = FieldOps<F>::one();
        F rx = A().dim[xp] / A().dim[x];
        if (ratio_exp == 1) w = rx;
        if (ratio_exp == -1) w = FieldOps<F>::one() / rx;
        if (dy_exp == 1) w = w / A().dim[y];
        for (std::size_t mu = 0; mu < nch; ++mu) {
          // tau_R: [x] -> [x', y]
          Mor<F> tauR = eng_->tree_include(Word{xp, y}, x, mu);
          // tau_L: [y, x*] -> [x'*]
          Mor<F> fuse = eng_->tree_project(Word{xp, y}, x, mu);  // [x', y] -> [x]
          Mor<F> tauL = eng_->compose(
              eng_->tensor(eng_->identity(Word{A().dual[xp]}), eng_->ev(x)),
              eng_->compose(
                  eng_->tensor(eng_->identity(Word{A().dual[xp]}),
                               eng_->tensor(fuse, eng_->identity(Word{A().dual[x]}))),
                  eng_->tensor(eng_->coev_left(xp), eng_->identity(Word{y, A().dual[x]}))));
          g.blk[xp][x] = g.blk[xp][x] + eng_->tensor(tauL, tauR).scaled(w);
        }
      }
    SumMor<F> left = eng_->tensor(n.project, SumMor<F>::from(eng_->identity(Word{y})));
    SumMor<F> right = eng_->tensor(SumMor<F>::from(eng_->identity(Word{y})), n.include);
    z.beta[y] = eng_->compose(left, eng_->compose(g, right));
  }
  return z;
}

template <class F>
const CentreObj<F>& CentreOps<F>::unit_s() const {
  if (unit_s_) return *unit_s_;
  for (int ratio_exp : {1, 0, -1})
    for (int dy_exp : {0, 1}) {
      CentreObj<F> cand = build_unit_s(ratio_exp, dy_exp);
      try {
        require_valid(cand);
      } catch (const HalfBraidingViolation&) {
        continue;
      }
      unit_s_ = std::move(cand);
      return *unit_s_;
    }
  throw HalfBraidingViolation("no normalization of the I_s half-braiding is multiplicative");
}

// ---- cloaking idempotent -------------------------------------------------------

template <class F>
SumMor<F> CentreOps<F>::pi_unnormalized(const CentreObj<F>& z1, const CentreObj<F>& z2) const {
  std::vector<Word> ws12;
  for (Label p : z1.parts)
    for (Label q : z2.parts) ws12.push_back(Word{p, q});
  auto pw1 = part_words(z1.parts), pw2 = part_words(z2.parts);
  SumMor<F> P = eng_->zero_sum(ws12, ws12);
  const Label R = (Label)A().rank();
  for (Label i = 0; i < R; ++i) {
    Label id_ = A().dual[i];
    // open: [p,q] -> [i*, i, p, q]
    SumMor<F> open = eng_->tensor(SumMor<F>::from(eng_->coev_left(i)), eng_->identity(ws12));
    // pass i through parts1 then parts2 with the half-braidings
    SumMor<F> pass1 = eng_->tensor(
        eng_->tensor(SumMor<F>::from(eng_->identity(Word{id_})), z1.beta.at(i)), eng_->identity(pw2));
    SumMor<F> pass2 = eng_->tensor(eng_->tensor(SumMor<F>::from(eng_->identity(Word{id_})), eng_->identity(pw1)),
                                   z2.beta.at(i));
    // return i* through parts1 then parts2 with the symmetry
    auto sym_pass = [&](const std::vector<Label>& parts) {
      std::vector<Word> s, d;
      for (Label p : parts) {
        s.push_back(Word{id_, p});
        d.push_back(Word{p, id_});
      }
      SumMor<F> m = eng_->zero_sum(s, d);
      for (std::size_t k = 0; k < parts.size(); ++k) m.blk[k][k] = eng_->braid(id_, parts[k]);
      return m;
    };
    SumMor<F> ret1 = eng_->tensor(sym_pass(z1.parts), eng_->identity(pw2));
    SumMor<F> ret1_full = eng_->tensor(ret1, SumMor<F>::from(eng_->identity(Word{i})));
    SumMor<F> ret2 = eng_->tensor(eng_->identity(pw1), sym_pass(z2.parts));
    SumMor<F> ret2_full = eng_->tensor(ret2, SumMor<F>::from(eng_->identity(Word{i})));
    // close: [p, q, i*, i] -> [p, q]
    SumMor<F> close = eng_->tensor(eng_->identity(ws12), SumMor<F>::from(eng_->ev_left(i)));
    SumMor<F> term = open;
    term = eng_->compose(pass1, term);
    term = eng_->compose(pass2, term);
    term = eng_->compose(ret1_full, term);
    term = eng_->compose(ret2_full, term);
    term = eng_->compose(close, term);
    P = P + term.scaled(FieldOps<F>::one() / A().dim[i]);
  }
  return P;
}

template <class F>
SumMor<F> CentreOps<F>::pi_idempotent(const CentreObj<F>& z1, const CentreObj<F>& z2) const {
  SumMor<F> P = pi_unnormalized(z1, z2);
  Matrix<F> v = eng_->sum_to_vec(P);
  SumMor<F> P2 = eng_->compose(P, P);
  Matrix<F> v2 = eng_->sum_to_vec(P2);
  F lambda = FieldOps<F>::zero();
  bool found = false;
  for (std::size_t r = 0; r < v.rows() && !found; ++r)
    if (!FieldOps<F>::is_zero(v.at(r, 0))) {
      lambda = v2.at(r, 0) / v.at(r, 0);
      found = true;
    }
  if (!found) return P;  // zero morphism: empty image
  if (FieldOps<F>::is_zero(lambda)) throw NonProjection("P squared vanished against P");
  if (P2 != P.scaled(lambda)) throw NonProjection("P.P is not a scalar multiple of P");
  return P.scaled(FieldOps<F>::one() / lambda);
}

// ---- splitting -----------------------------------------------------------------

template <class F>
std::vector<CentrePiece<F>> CentreOps<F>::split_object(const CentreObj<F>& ambient,
                                                       const Matrix<F>& idem) const {
  if (idem * idem != idem) throw NotIdempotent("split_object: not an idempotent");
  // column basis per label sector keeps parts canonically ordered
  Matrix<F> copy = idem;
  auto piv = copy.column_basis();
  std::vector<Label> parts;
  std::vector<std::size_t> chosen;
  for (Label lab = 0; lab < (Label)A().rank(); ++lab)
    for (std::size_t c : piv)
      if (ambient.parts[c] == lab) {
        parts.push_back(lab);
        chosen.push_back(c);
      }
  if (parts.empty()) return {};
  Matrix<F> iota(ambient.parts.size(), parts.size());
  for (std::size_t k = 0; k < chosen.size(); ++k)
    for (std::size_t i = 0; i < ambient.parts.size(); ++i) iota.at(i, k) = idem.at(i, chosen[k]);
  auto proj_opt = iota.solve(idem);
  if (!proj_opt) throw std::logic_error("split_object: projection solve failed");
  Matrix<F> proj = *proj_opt;

  CentrePiece<F> piece;
  piece.include = iota;
  piece.project = proj;
  piece.obj.parts = parts;
  SumMor<F> iota_s = part_mor(parts, ambient.parts, iota);
  SumMor<F> proj_s = part_mor(ambient.parts, parts, proj);
  for (Label x = 0; x < (Label)A().rank(); ++x) {
    SumMor<F> b = eng_->compose(
        eng_->tensor(proj_s, SumMor<F>::from(eng_->identity(Word{x}))),
        eng_->compose(ambient.beta.at(x), eng_->tensor(SumMor<F>::from(eng_->identity(Word{x})), iota_s)));
    piece.obj.beta[x] = b;
  }
  return {piece};
}

template <class F>
std::vector<CentrePiece<F>> CentreOps<F>::decompose(const CentreObj<F>& z) const {
  std::vector<Matrix<F>> gens = zhom(z, z);
  Rng rng(seed_ ^ 0x5eedc0deull);
  std::vector<Matrix<F>> idems =
      split_idempotent_in_algebra(Matrix<F>::identity(z.parts.size()), gens, rng);
  std::vector<CentrePiece<F>> out;
  for (auto& e : idems) {
    auto piece = split_object(z, e);
    for (auto& p : piece) {
      require_valid(p.obj);
      out.push_back(std::move(p));
    }
  }
  return out;
}

// ---- tensor_s ------------------------------------------------------------------

template <class F>
std::vector<std::pair<CentreObj<F>, int>> CentreOps<F>::tensor_s(const CentreObj<F>& z1,
                                                                 const CentreObj<F>& z2) const {
  SumMor<F> Pi = pi_idempotent(z1, z2);
  if (Pi.is_zero()) return {};
  std::vector<Word> ws12 = Pi.src;
  auto n12 = eng_->normalize(ws12);
  Matrix<F> Pi_parts =
      part_matrix(eng_->compose(n12.project, eng_->compose(Pi, n12.include)));

  // ambient with the product half-braiding of z1 and the symmetric structure on
  // the second factor; its restriction to the image is the (x)_s half-braiding
  CentreObj<F> mixed;
  {
    CentreObj<F> sym2;
    sym2.parts = z2.parts;
    for (Label x = 0; x < (Label)A().rank(); ++x) {
      std::vector<Word> s, d;
      for (Label p : z2.parts) {
        s.push_back(Word{x, p});
        d.push_back(Word{p, x});
      }
      SumMor<F> m = eng_->zero_sum(s, d);
      for (std::size_t k = 0; k < z2.parts.size(); ++k) m.blk[k][k] = eng_->braid(x, z2.parts[k]);
      sym2.beta[x] = m;
    }
    mixed = tensor_c(z1, sym2);
  }

  std::vector<CentrePiece<F>> image = split_object(mixed, Pi_parts);
  std::vector<std::pair<CentreObj<F>, int>> out;
  for (auto& piece : image) {
    require_valid(piece.obj);  // the convention checks: image must be a centre object
    for (auto& simple : decompose(piece.obj)) {
      bool matched = false;
      for (auto& [rep, mult] : out)
        if (isomorphic(rep, simple.obj)) {
          ++mult;
          matched = true;
          break;
        }
      if (!matched) out.emplace_back(simple.obj, 1);
    }
  }
  return out;
}

// ---- the full centre -------------------------------------------------------------

namespace {

template <class F>
std::string canonical_scalar_key(const F& x);
template <>
std::string canonical_scalar_key<Cyc>(const Cyc& x) {
  return x.canonical().str();
}
template <>
std::string canonical_scalar_key<NumF>(const NumF& x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f,%.9f", x.v.real(), x.v.imag());
  return buf;
}

template <class F>
double twist_angle(const F& t) {
  auto z = FieldOps<F>::numeric(t);
  double a = std::arg(z) / (2 * M_PI);
  if (a < -1e-12) a += 1.0;
  return a;
}

}  // namespace

template <class F>
CentreCategoryT<F> CentreOps<F>::centre_simples() const {
  const Label R = (Label)A().rank();
  const CentreObj<F>& Is = unit_s();
  std::vector<CentreObj<F>> simples;
  for (Label a = 0; a < R; ++a) {
    CentreObj<F> seed = tensor_c(embed_symmetric(a), Is);
    for (auto& piece : decompose(seed)) {
      bool known = false;
      for (auto& z : simples)
        if (isomorphic(z, piece.obj)) {
          known = true;
          break;
        }
      if (!known) simples.push_back(piece.obj);
    }
  }
  // completeness: sum of squared dims must equal (dim A)^2
  F dimA = A().global_dim2();
  F total = FieldOps<F>::zero();
  for (auto& z : simples) {
    F d = z.qdim(A());
    total += d * d;
  }
  if (total != dimA * dimA)
    throw IncompleteDecomposition("centre simples do not close: dim Z(A) != (dim A)^2");

  // canonical order: unit first, then by (qdim, twist angle, underlying)
  CentreObj<F> triv = trivial();
  std::vector<std::pair<std::tuple<int, double, double, std::string, std::string>, std::size_t>>
      keys;
  for (std::size_t k = 0; k < simples.size(); ++k) {
    bool is_unit = isomorphic(simples[k], triv);
    F d = simples[k].qdim(A());
    F th = twist_of(simples[k]);
    std::string parts_key;
    for (Label p : simples[k].parts) parts_key += A().labels[p] + ",";
    keys.push_back({{is_unit ? 0 : 1, FieldOps<F>::numeric(d).real(), twist_angle(th),
                     canonical_scalar_key(th), parts_key},
                    k});
  }
  std::sort(keys.begin(), keys.end());
  CentreCategoryT<F> out;
  for (auto& [key, idx] : keys) out.simples.push_back(simples[idx]);
  const std::size_t rank = out.simples.size();
  out.names.resize(rank);
  for (std::size_t i = 0; i < rank; ++i)
    out.names[i] = i == 0 ? "1" : ("z" + std::to_string(i + 1));
  for (auto& z : out.simples) {
    out.dim.push_back(z.qdim(A()));
    out.twist.push_back(twist_of(z));
  }
  // S from traced monodromy; D = sqrt(dim Z) = dim A is exact
  Matrix<F> S(rank, rank);
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j)
      S.at(i, j) = traced_monodromy(out.simples[i], out.simples[j]) / dimA;
  out.md.rank = rank;
  out.md.S = S;
  out.md.T = out.twist;
  out.md.modular = !FieldOps<F>::is_zero(S.det());
  F gauss = FieldOps<F>::zero();
  for (std::size_t i = 0; i < rank; ++i) gauss += out.dim[i] * out.dim[i] * out.twist[i];
  out.md.gauss_sum = gauss;
  if (out.md.modular) {
    if constexpr (std::is_same_v<F, Cyc>)
      out.md.central_charge = central_charge_exact(gauss, dimA * dimA);
    else
      out.md.central_charge = central_charge_numeric(gauss);
  }
  // fusion rules via the Verlinde formula (S is exact and unitary here)
  if (!out.md.modular)
    throw IncompleteDecomposition("centre is not modular; fusion assembly aborted");
  out.N.assign(rank, std::vector<std::vector<int>>(rank, std::vector<int>(rank, 0)));
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j)
      for (std::size_t k = 0; k < rank; ++k) {
        F acc = FieldOps<F>::zero();
        for (std::size_t r = 0; r < rank; ++r)
          acc += S.at(i, r) * S.at(j, r) * FieldOps<F>::conj(S.at(k, r)) / S.at(0, r);
        // must be a non-negative integer
        auto z = FieldOps<F>::numeric(acc);
        long n = (long)std::llround(z.real());
        if (std::abs(z.real() - (double)n) > 1e-6 || std::abs(z.imag()) > 1e-6 || n < 0)
          throw IncompleteDecomposition("Verlinde formula gave a non-integer");
        F back = FieldOps<F>::zero();
        for (long t = 0; t < n; ++t) back += FieldOps<F>::one();
        if (back != acc) throw IncompleteDecomposition("Verlinde formula gave a non-integer");
        out.N[i][j][k] = (int)n;
      }
  return out;
}

template <class F>
std::vector<CentreObj<F>> CentreOps<F>::half_braiding_space(const ObjectExpr& o) const {
  std::vector<Label> parts;
  for (auto& [lab, m] : o.mult)
    for (long k = 0; k < m; ++k) parts.push_back(lab);
  if (parts.empty()) return {};
  CentreObj<F> sym;
  sym.parts = parts;
  for (Label x = 0; x < (Label)A().rank(); ++x) {
    std::vector<Word> s, d;
    for (Label p : parts) {
      s.push_back(Word{x, p});
      d.push_back(Word{p, x});
    }
    SumMor<F> m = eng_->zero_sum(s, d);
    for (std::size_t k = 0; k < parts.size(); ++k) m.blk[k][k] = eng_->braid(x, parts[k]);
    sym.beta[x] = m;
  }
  CentreObj<F> seed = tensor_c(sym, unit_s());
  std::map<Label, int> want;
  for (Label p : parts) want[p]++;
  std::vector<CentreObj<F>> out;
  for (auto& piece : decompose(seed)) {
    std::map<Label, int> got;
    for (Label p : piece.obj.parts) got[p]++;
    if (got != want) continue;
    bool known = false;
    for (auto& z : out)
      if (isomorphic(z, piece.obj)) known = true;
    if (!known) out.push_back(piece.obj);
  }
  return out;
}

template class CentreOps<Cyc>;
template class CentreOps<NumF>;

}  // namespace rtp
