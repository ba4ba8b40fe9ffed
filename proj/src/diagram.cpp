#include "redtensor/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace rtp {

// ---- Mor / SumMor -----------------------------------------------------------

template <class F>
bool Mor<F>::operator==(const Mor& o) const {
  if (!(src == o.src) || !(dst == o.dst)) return false;
  for (auto& [s, m] : blk) {
    auto it = o.blk.find(s);
    if (it == o.blk.end()) {
      if (!m.is_zero()) return false;
    } else if (m != it->second)
      return false;
  }
  for (auto& [s, m] : o.blk)
    if (!blk.count(s) && !m.is_zero()) return false;
  return true;
}

template <class F>
Mor<F> Mor<F>::operator+(const Mor& o) const {
  Mor m = *this;
  for (auto& [s, b] : o.blk) {
    auto it = m.blk.find(s);
    if (it == m.blk.end())
      m.blk[s] = b;
    else
      it->second = it->second + b;
  }
  return m;
}

template <class F>
Mor<F> Mor<F>::operator-(const Mor& o) const {
  return *this + o.scaled(F(FieldOps<F>::zero() - FieldOps<F>::one()));
}

template <class F>
bool SumMor<F>::operator==(const SumMor& o) const {
  if (src.size() != o.src.size() || dst.size() != o.dst.size()) return false;
  for (std::size_t i = 0; i < dst.size(); ++i)
    for (std::size_t j = 0; j < src.size(); ++j)
      if (blk[i][j] != o.blk[i][j]) return false;
  return true;
}

template <class F>
SumMor<F> SumMor<F>::operator+(const SumMor& o) const {
  SumMor m = *this;
  for (std::size_t i = 0; i < dst.size(); ++i)
    for (std::size_t j = 0; j < src.size(); ++j) m.blk[i][j] = m.blk[i][j] + o.blk[i][j];
  return m;
}

template <class F>
SumMor<F> SumMor<F>::operator-(const SumMor& o) const {
  return *this + o.scaled(FieldOps<F>::zero() - FieldOps<F>::one());
}

// ---- trees ------------------------------------------------------------------

template <class F>
const std::vector<TreePath>& Engine<F>::trees(const Word& w, Label s) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto key = std::make_pair(w.ls, s);
  auto it = tree_cache_.find(key);
  if (it != tree_cache_.end()) return it->second;
  std::vector<TreePath> out;
  if (w.size() == 0) {
    if (s == C_->unit) out.push_back({});
  } else if (w.size() == 1) {
    if (s == w.ls[0]) out.push_back({});
  } else {
    // depth-first over (intermediate, multiplicity) in lexicographic order
    std::vector<std::pair<Label, int>> cur;
    std::function<void(Label, std::size_t)> rec = [&](Label m, std::size_t pos) {
      if (pos == w.size()) {
        if (m == s) out.push_back({cur});
        return;
      }
      for (Label nxt = 0; nxt < (Label)C_->rank(); ++nxt) {
        int n = C_->n(m, w.ls[pos], nxt);
        for (int mu = 0; mu < n; ++mu) {
          cur.emplace_back(nxt, mu);
          rec(nxt, pos + 1);
          cur.pop_back();
        }
      }
    };
    rec(w.ls[0], 1);
  }
  return tree_cache_.emplace(key, std::move(out)).first->second;
}

template <class F>
long Engine<F>::tree_index(const Word& w, Label s, const TreePath& p) const {
  const auto& ts = trees(w, s);
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (ts[i] == p) return (long)i;
  return -1;
}

template <class F>
std::size_t Engine<F>::homdim(const Word& src, const Word& dst) const {
  std::size_t d = 0;
  for (Label s = 0; s < (Label)C_->rank(); ++s) d += treedim(src, s) * treedim(dst, s);
  return d;
}

// ---- basic morphisms --------------------------------------------------------

template <class F>
Mor<F> Engine<F>::zero(const Word& src, const Word& dst) const {
  Mor<F> m;
  m.src = src;
  m.dst = dst;
  for (Label s = 0; s < (Label)C_->rank(); ++s) {
    std::size_t r = treedim(dst, s), c = treedim(src, s);
    if (r && c) m.blk[s] = Matrix<F>(r, c);
  }
  return m;
}

template <class F>
Mor<F> Engine<F>::identity(const Word& w) const {
  Mor<F> m = zero(w, w);
  for (auto& [s, b] : m.blk) b = Matrix<F>::identity(b.rows());
  return m;
}

template <class F>
Mor<F> Engine<F>::compose(const Mor<F>& g, const Mor<F>& f) const {
  if (!(f.dst == g.src)) throw TypeMismatch("compose: middle words differ");
  Mor<F> m = zero(f.src, g.dst);
  for (auto& [s, b] : m.blk) {
    auto ig = g.blk.find(s), iff = f.blk.find(s);
    if (ig == g.blk.end() || iff == f.blk.end()) continue;
    b = ig->second * iff->second;
  }
  return m;
}

template <class F>
Mor<F> Engine<F>::tree_project(const Word& w, Label s, std::size_t idx) const {
  Mor<F> m = zero(w, Word{std::vector<Label>{s}});
  m.blk[s].at(0, idx) = FieldOps<F>::one();
  return m;
}

template <class F>
Mor<F> Engine<F>::tree_include(const Word& w, Label s, std::size_t idx) const {
  Mor<F> m = zero(Word{std::vector<Label>{s}}, w);
  m.blk[s].at(idx, 0) = FieldOps<F>::one();
  return m;
}

// ---- bridges ----------------------------------------------------------------

template <class F>
const typename Engine<F>::Bridge& Engine<F>::bridge(const Word& u, const Word& v) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = bridge_cache_.find(std::make_pair(u.ls, v.ls));
    if (it != bridge_cache_.end()) return it->second;
  }
  Bridge br;
  const Label R = (Label)C_->rank();
  Word uv = u.concat(v);

  for (Label s = 0; s < R; ++s) {
    std::vector<std::array<long, 5>> cols;
    for (Label p = 0; p < R; ++p) {
      std::size_t du = treedim(u, p);
      if (!du) continue;
      for (long iu = 0; iu < (long)du; ++iu)
        for (Label q = 0; q < R; ++q) {
          std::size_t dv = treedim(v, q);
          if (!dv) continue;
          for (long iv = 0; iv < (long)dv; ++iv)
            for (int mu = 0; mu < C_->n(p, q, s); ++mu)
              cols.push_back({p, iu, q, iv, mu});
        }
    }
    std::size_t nrows = treedim(uv, s);
    if (nrows != cols.size())
      throw std::logic_error("bridge dimension mismatch; fusion ring not associative?");
    br.cols[s] = cols;
    for (long i = 0; i < (long)cols.size(); ++i) br.col_index[s][cols[i]] = i;
    br.fwd[s] = Matrix<F>(nrows, cols.size());
  }

  if (u.size() == 0 || v.size() == 0) {
    for (Label s = 0; s < R; ++s) {
      auto& cols = br.cols[s];
      for (long j = 0; j < (long)cols.size(); ++j) {
        // the only columns have p or q equal to the unit and iu/iv matching rows
        long row = u.size() == 0 ? cols[j][3] : cols[j][1];
        br.fwd[s].at(row, j) = FieldOps<F>::one();
      }
    }
  } else if (v.size() == 1) {
    Label y = v.ls[0];
    for (Label s = 0; s < R; ++s) {
      auto& cols = br.cols[s];
      for (long j = 0; j < (long)cols.size(); ++j) {
        auto [p, iu, q, iv, mu] = cols[j];
        (void)q;
        (void)iv;
        TreePath path = trees(u, p)[iu];
        path.steps.emplace_back(s, (int)mu);
        long row = tree_index(uv, s, path);
        if (row < 0) throw std::logic_error("bridge: missing extended tree");
        br.fwd[s].at(row, j) = FieldOps<F>::one();
        (void)y;
      }
    }
  } else {
    Word vp{std::vector<Label>(v.ls.begin(), v.ls.end() - 1)};
    Label y = v.ls.back();
    const Bridge& inner = bridge(u, vp);
    Word uvp = u.concat(vp);
    for (Label s = 0; s < R; ++s) {
      auto& cols = br.cols[s];
      for (long j = 0; j < (long)cols.size(); ++j) {
        auto [p, iu, q, iv, muP] = cols[j];
        const TreePath& tv = trees(v, q)[iv];
        // split tv into a tree of v' and the final step
        TreePath tvp{std::vector<std::pair<Label, int>>(tv.steps.begin(), tv.steps.end() - 1)};
        Label qp = vp.size() == 1 ? vp.ls[0] : tvp.steps.back().first;
        auto [qFinal, nuP] = tv.steps.back();
        if (qFinal != q) throw std::logic_error("bridge: inconsistent tree root");
        long ivp = tree_index(vp, qp, tvp);
        if (ivp < 0) throw std::logic_error("bridge: missing prefix tree");
        // F^{p q' y}_s expansion of the (q, nu', mu') column
        Matrix<F> Fm = C_->fmatrix(p, qp, y, s);
        auto finv = Fm.inverse();
        if (!finv) throw std::runtime_error("singular F-matrix in bridge construction");
        auto rows_lhs = C_->f_rows(p, qp, y, s);   // (e, alpha, beta)
        auto cols_rhs = C_->f_cols(p, qp, y, s);   // (f, mu, nu) = (q, nu', mu')
        long pos_rhs = -1;
        for (long t = 0; t < (long)cols_rhs.size(); ++t) {
          auto [ff, m1, n1] = cols_rhs[t];
          if (ff == q && m1 == nuP && n1 == (int)muP) {
            pos_rhs = t;
            break;
          }
        }
        if (pos_rhs < 0) throw std::logic_error("bridge: F column not found");
        for (long t = 0; t < (long)rows_lhs.size(); ++t) {
          auto [e, alpha, beta] = rows_lhs[t];
          F coef = finv->at(pos_rhs, t);
          if (FieldOps<F>::is_zero(coef)) continue;
          long cidx = inner.col_index.at(e).at({p, iu, qp, ivp, alpha});
          const Matrix<F>& ib = inner.fwd.at(e);
          for (std::size_t rr = 0; rr < ib.rows(); ++rr) {
            const F& bv = ib.at(rr, cidx);
            if (FieldOps<F>::is_zero(bv)) continue;
            TreePath path = trees(uvp, e)[rr];
            path.steps.emplace_back(s, beta);
            long row = tree_index(uv, s, path);
            if (row < 0) throw std::logic_error("bridge: missing composite tree");
            br.fwd[s].at(row, j) += coef * bv;
          }
        }
      }
    }
  }

  for (Label s = 0; s < R; ++s) {
    if (br.fwd[s].rows() == 0) {
      br.inv[s] = Matrix<F>(0, 0);
      continue;
    }
    auto inv = br.fwd[s].inverse();
    if (!inv) throw std::runtime_error("bridge matrix not invertible");
    br.inv[s] = *inv;
  }

  std::lock_guard<std::mutex> lock(mutex_);
  return bridge_cache_.emplace(std::make_pair(u.ls, v.ls), std::move(br)).first->second;
}

template <class F>
Mor<F> Engine<F>::tensor(const Mor<F>& f, const Mor<F>& g) const {
  const Bridge& bin = bridge(f.src, g.src);
  const Bridge& bout = bridge(f.dst, g.dst);
  Mor<F> m = zero(f.src.concat(g.src), f.dst.concat(g.dst));
  for (auto& [s, out] : m.blk) {
    const auto& ci = bin.cols.at(s);
    const auto& co = bout.cols.at(s);
    Matrix<F> D(co.size(), ci.size());
    for (std::size_t j = 0; j < ci.size(); ++j) {
      auto [p, iu, q, iv, mu] = ci[j];
      auto fb = f.blk.find(p);
      auto gb = g.blk.find(q);
      if (fb == f.blk.end() || gb == g.blk.end()) continue;
      for (std::size_t i = 0; i < co.size(); ++i) {
        auto [pp, iup, qp, ivp, mup] = co[i];
        if (pp != p || qp != q || mup != mu) continue;
        D.at(i, j) = fb->second.at(iup, iu) * gb->second.at(ivp, iv);
      }
    }
    out = bout.fwd.at(s) * D * bin.inv.at(s);
  }
  return m;
}

// ---- braids and caps --------------------------------------------------------

template <class F>
Mor<F> Engine<F>::braid(Label a, Label b) const {
  Mor<F> m = zero(Word{a, b}, Word{b, a});
  for (auto& [c, blkm] : m.blk) blkm = C_->rsym(a, b, c);
  return m;
}

template <class F>
Mor<F> Engine<F>::braid_inv(Label a, Label b) const {
  Mor<F> m = zero(Word{b, a}, Word{a, b});
  for (auto& [c, blkm] : m.blk) {
    auto inv = C_->rsym(a, b, c).inverse();
    if (!inv) throw std::runtime_error("singular R-matrix");
    blkm = *inv;
  }
  return m;
}

template <class F>
Mor<F> Engine<F>::braid_word(const Word& u, const Word& v) const {
  if (u.size() == 0 || v.size() == 0) {
    Mor<F> m = identity(u.concat(v));
    m.src = u.concat(v);
    m.dst = v.concat(u);
    return m;
  }
  if (v.size() == 1) {
    Label y = v.ls[0];
    Mor<F> acc = identity(u.concat(v));
    for (long i = (long)u.size() - 1; i >= 0; --i) {
      // current word: u[0..i) y u[i..]; swap (u[i], y) at positions i, i+1
      Word pre{std::vector<Label>(u.ls.begin(), u.ls.begin() + i)};
      Word post{std::vector<Label>(u.ls.begin() + i + 1, u.ls.end())};
      Mor<F> step = tensor(tensor(identity(pre), braid(u.ls[i], y)), identity(post));
      acc = compose(step, acc);
    }
    return acc;
  }
  Word vp{std::vector<Label>(v.ls.begin(), v.ls.end() - 1)};
  Word y{v.ls.back()};
  Mor<F> first = tensor(braid_word(u, vp), identity(y));
  Mor<F> second = tensor(identity(vp), braid_word(u, y));
  return compose(second, first);
}

template <class F>
Mor<F> Engine<F>::braid_word_inv(const Word& u, const Word& v) const {
  if (u.size() == 0 || v.size() == 0) {
    Mor<F> m = identity(u.concat(v));
    m.src = u.concat(v);
    m.dst = v.concat(u);
    return m;
  }
  if (v.size() == 1) {
    Label y = v.ls[0];
    Mor<F> acc = identity(u.concat(v));
    for (long i = (long)u.size() - 1; i >= 0; --i) {
      Word pre{std::vector<Label>(u.ls.begin(), u.ls.begin() + i)};
      Word post{std::vector<Label>(u.ls.begin() + i + 1, u.ls.end())};
      Mor<F> step = tensor(tensor(identity(pre), braid_inv(y, u.ls[i])), identity(post));
      acc = compose(step, acc);
    }
    return acc;
  }
  Word vp{std::vector<Label>(v.ls.begin(), v.ls.end() - 1)};
  Word y{v.ls.back()};
  Mor<F> first = tensor(braid_word_inv(u, vp), identity(y));
  Mor<F> second = tensor(identity(vp), braid_word_inv(u, y));
  return compose(second, first);
}

template <class F>
F Engine<F>::raw_zigzag(Label a, bool left_pair, bool on_first) const {
  Label ad = C_->dual[a];
  // raw caps with unit scale
  Mor<F> capL = zero(Word{ad, a}, Word{});      // ev_left
  capL.blk[C_->unit].at(0, 0) = FieldOps<F>::one();
  Mor<F> cupL = zero(Word{}, Word{a, ad});      // coev
  cupL.blk[C_->unit].at(0, 0) = FieldOps<F>::one();
  Mor<F> capR = zero(Word{a, ad}, Word{});      // ev
  capR.blk[C_->unit].at(0, 0) = FieldOps<F>::one();
  Mor<F> cupR = zero(Word{}, Word{ad, a});      // coev_left
  cupR.blk[C_->unit].at(0, 0) = FieldOps<F>::one();

  Mor<F> z;
  if (left_pair) {
    if (on_first)  // (id_a (x) capL) . (cupL (x) id_a) : a -> a
      z = compose(tensor(identity(Word{a}), capL), tensor(cupL, identity(Word{a})));
    else  // (capL (x) id_ad) . (id_ad (x) cupL) : ad -> ad
      z = compose(tensor(capL, identity(Word{ad})), tensor(identity(Word{ad}), cupL));
  } else {
    if (on_first)  // (capR (x) id_a) . (id_a (x) cupR) : a -> a
      z = compose(tensor(capR, identity(Word{a})), tensor(identity(Word{a}), cupR));
    else  // (id_ad (x) capR) . (cupR (x) id_ad) : ad -> ad
      z = compose(tensor(identity(Word{ad}), capR), tensor(cupR, identity(Word{ad})));
  }
  Label root = on_first ? a : ad;
  return z.blk.at(root).at(0, 0);
}

template <class F>
void Engine<F>::calibrate() {
  const Label R = (Label)C_->rank();
  evl_.assign(R, FieldOps<F>::one());
  coevl_.assign(R, FieldOps<F>::one());
  evr_.assign(R, FieldOps<F>::one());
  coevr_.assign(R, FieldOps<F>::one());
  for (Label a = 0; a < R; ++a) {
    Label ad = C_->dual[a];
    F zL1 = raw_zigzag(a, true, true), zL2 = raw_zigzag(a, true, false);
    F zR1 = raw_zigzag(a, false, true), zR2 = raw_zigzag(a, false, false);
    if (zL1 != zL2 || zR1 != zR2)
      throw std::runtime_error("zig-zag scalars disagree; F data is not pivotal in " + C_->name);
    // raw loops
    Mor<F> cupL = zero(Word{}, Word{a, ad});
    cupL.blk[C_->unit].at(0, 0) = FieldOps<F>::one();
    Mor<F> capR = zero(Word{a, ad}, Word{});
    capR.blk[C_->unit].at(0, 0) = FieldOps<F>::one();
    Mor<F> cupR = zero(Word{}, Word{ad, a});
    cupR.blk[C_->unit].at(0, 0) = FieldOps<F>::one();
    Mor<F> capL = zero(Word{ad, a}, Word{});
    capL.blk[C_->unit].at(0, 0) = FieldOps<F>::one();
    F rR = compose(capR, cupL).blk.at(C_->unit).at(0, 0);
    F rL = compose(capL, cupR).blk.at(C_->unit).at(0, 0);
    F d = C_->dim[a];
    if (rR * rL != d * d * zL1 * zR1)
      throw std::runtime_error("duality data is not spherical in " + C_->name);
    coevl_[a] = FieldOps<F>::one();
    evr_[a] = d / rR;
    coevr_[a] = rR / (d * zR1);
    evl_[a] = FieldOps<F>::one() / zL1;
  }
}

template <class F>
Mor<F> Engine<F>::ev(Label a) const {
  Mor<F> m = zero(Word{a, C_->dual[a]}, Word{});
  m.blk[C_->unit].at(0, 0) = evr_[a];
  return m;
}
template <class F>
Mor<F> Engine<F>::coev(Label a) const {
  Mor<F> m = zero(Word{}, Word{a, C_->dual[a]});
  m.blk[C_->unit].at(0, 0) = coevl_[a];
  return m;
}
template <class F>
Mor<F> Engine<F>::ev_left(Label a) const {
  Mor<F> m = zero(Word{C_->dual[a], a}, Word{});
  m.blk[C_->unit].at(0, 0) = evl_[a];
  return m;
}
template <class F>
Mor<F> Engine<F>::coev_left(Label a) const {
  Mor<F> m = zero(Word{}, Word{C_->dual[a], a});
  m.blk[C_->unit].at(0, 0) = coevr_[a];
  return m;
}

template <class F>
Mor<F> Engine<F>::inverse(const Mor<F>& f) const {
  Mor<F> m = zero(f.dst, f.src);
  for (auto& [s, b] : m.blk) {
    auto it = f.blk.find(s);
    if (it == f.blk.end()) throw std::runtime_error("inverse of singular morphism");
    auto inv = it->second.inverse();
    if (!inv) throw std::runtime_error("inverse of singular morphism");
    b = *inv;
  }
  return m;
}

template <class F>
F Engine<F>::trace(const Mor<F>& f) const {
  if (!(f.src == f.dst)) throw TypeMismatch("trace of a non-endomorphism");
  F t = FieldOps<F>::zero();
  for (auto& [s, b] : f.blk) t += C_->dim[s] * b.trace();
  return t;
}

template <class F>
Mor<F> Engine<F>::ptrace_right(const Mor<F>& f) const {
  if (f.src.size() == 0 || f.dst.size() == 0 || f.src.ls.back() != f.dst.ls.back())
    throw TypeMismatch("ptrace_right needs matching last strands");
  Label a = f.src.ls.back();
  Word ws{std::vector<Label>(f.src.ls.begin(), f.src.ls.end() - 1)};
  Word wd{std::vector<Label>(f.dst.ls.begin(), f.dst.ls.end() - 1)};
  Label ad = C_->dual[a];
  Mor<F> lifted = tensor(f, identity(Word{ad}));
  Mor<F> open = tensor(identity(ws), coev(a));
  Mor<F> close = tensor(identity(wd), ev(a));
  return compose(close, compose(lifted, open));
}

// ---- sum-level --------------------------------------------------------------

template <class F>
SumMor<F> Engine<F>::identity(const std::vector<Word>& ws) const {
  SumMor<F> m;
  m.src = m.dst = ws;
  m.blk.assign(ws.size(), std::vector<Mor<F>>(ws.size()));
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (std::size_t j = 0; j < ws.size(); ++j)
      m.blk[i][j] = i == j ? identity(ws[i]) : zero(ws[j], ws[i]);
  return m;
}

template <class F>
SumMor<F> Engine<F>::zero_sum(const std::vector<Word>& src, const std::vector<Word>& dst) const {
  SumMor<F> m;
  m.src = src;
  m.dst = dst;
  m.blk.assign(dst.size(), std::vector<Mor<F>>(src.size()));
  for (std::size_t i = 0; i < dst.size(); ++i)
    for (std::size_t j = 0; j < src.size(); ++j) m.blk[i][j] = zero(src[j], dst[i]);
  return m;
}

template <class F>
SumMor<F> Engine<F>::compose(const SumMor<F>& g, const SumMor<F>& f) const {
  if (f.dst.size() != g.src.size()) throw TypeMismatch("sum compose: shapes differ");
  SumMor<F> m = zero_sum(f.src, g.dst);
  for (std::size_t i = 0; i < g.dst.size(); ++i)
    for (std::size_t j = 0; j < f.src.size(); ++j)
      for (std::size_t k = 0; k < f.dst.size(); ++k)
        m.blk[i][j] = m.blk[i][j] + compose(g.blk[i][k], f.blk[k][j]);
  return m;
}

template <class F>
SumMor<F> Engine<F>::tensor(const SumMor<F>& f, const SumMor<F>& g) const {
  SumMor<F> m;
  for (auto& wf : f.src)
    for (auto& wg : g.src) m.src.push_back(wf.concat(wg));
  for (auto& wf : f.dst)
    for (auto& wg : g.dst) m.dst.push_back(wf.concat(wg));
  m.blk.assign(m.dst.size(), std::vector<Mor<F>>(m.src.size()));
  for (std::size_t i1 = 0; i1 < f.dst.size(); ++i1)
    for (std::size_t i2 = 0; i2 < g.dst.size(); ++i2)
      for (std::size_t j1 = 0; j1 < f.src.size(); ++j1)
        for (std::size_t j2 = 0; j2 < g.src.size(); ++j2)
          m.blk[i1 * g.dst.size() + i2][j1 * g.src.size() + j2] =
              tensor(f.blk[i1][j1], g.blk[i2][j2]);
  return m;
}

template <class F>
F Engine<F>::trace_sum(const SumMor<F>& f) const {
  if (f.src.size() != f.dst.size()) throw TypeMismatch("trace_sum of a non-endomorphism");
  F t = FieldOps<F>::zero();
  for (std::size_t i = 0; i < f.src.size(); ++i) {
    if (!(f.src[i] == f.dst[i])) throw TypeMismatch("trace_sum of a non-endomorphism");
    t += trace(f.blk[i][i]);
  }
  return t;
}

template <class F>
SumMor<F> Engine<F>::ptrace_right_sum(const SumMor<F>& f) const {
  std::vector<Word> src, dst;
  for (auto& w : f.src) {
    if (w.size() == 0) throw TypeMismatch("ptrace_right_sum: empty word");
    src.push_back(Word{std::vector<Label>(w.ls.begin(), w.ls.end() - 1)});
  }
  for (auto& w : f.dst) {
    if (w.size() == 0) throw TypeMismatch("ptrace_right_sum: empty word");
    dst.push_back(Word{std::vector<Label>(w.ls.begin(), w.ls.end() - 1)});
  }
  SumMor<F> out = zero_sum(src, dst);
  for (std::size_t i = 0; i < dst.size(); ++i)
    for (std::size_t j = 0; j < src.size(); ++j) {
      if (f.dst[i].ls.back() != f.src[j].ls.back()) continue;  // no closure across labels
      out.blk[i][j] = ptrace_right(f.blk[i][j]);
    }
  return out;
}

template <class F>
std::vector<std::pair<std::array<std::size_t, 2>, std::array<std::size_t, 3>>>
Engine<F>::sum_basis(const std::vector<Word>& src, const std::vector<Word>& dst) const {
  std::vector<std::pair<std::array<std::size_t, 2>, std::array<std::size_t, 3>>> out;
  for (std::size_t i = 0; i < dst.size(); ++i)
    for (std::size_t j = 0; j < src.size(); ++j)
      for (Label s = 0; s < (Label)C_->rank(); ++s) {
        std::size_t r = treedim(dst[i], s), c = treedim(src[j], s);
        for (std::size_t rr = 0; rr < r; ++rr)
          for (std::size_t cc = 0; cc < c; ++cc)
            out.push_back({{i, j}, {(std::size_t)s, rr, cc}});
      }
  return out;
}

template <class F>
Matrix<F> Engine<F>::sum_to_vec(const SumMor<F>& m) const {
  auto basis = sum_basis(m.src, m.dst);
  Matrix<F> v(basis.size(), 1);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    auto [ij, src] = basis[k];
    auto it = m.blk[ij[0]][ij[1]].blk.find((Label)src[0]);
    if (it != m.blk[ij[0]][ij[1]].blk.end()) v.at(k, 0) = it->second.at(src[1], src[2]);
  }
  return v;
}

template <class F>
SumMor<F> Engine<F>::vec_to_sum(const std::vector<Word>& src, const std::vector<Word>& dst,
                                const Matrix<F>& v) const {
  SumMor<F> m = zero_sum(src, dst);
  auto basis = sum_basis(src, dst);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    auto [ij, sc] = basis[k];
    auto it = m.blk[ij[0]][ij[1]].blk.find((Label)sc[0]);
    if (it != m.blk[ij[0]][ij[1]].blk.end()) it->second.at(sc[1], sc[2]) = v.at(k, 0);
  }
  return m;
}

template <class F>
typename Engine<F>::Normalized Engine<F>::normalize(const std::vector<Word>& ws) const {
  Normalized n;
  std::vector<Word> part_words;
  std::vector<std::tuple<std::size_t, Label, std::size_t>> origin;  // word idx, root, tree idx
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (Label s = 0; s < (Label)C_->rank(); ++s)
      for (std::size_t t = 0; t < treedim(ws[i], s); ++t) {
        n.parts.push_back(s);
        part_words.push_back(Word{std::vector<Label>{s}});
        origin.emplace_back(i, s, t);
      }
  n.include = zero_sum(part_words, ws);
  n.project = zero_sum(ws, part_words);
  for (std::size_t k = 0; k < n.parts.size(); ++k) {
    auto [i, s, t] = origin[k];
    n.include.blk[i][k] = tree_include(ws[i], s, t);
    n.project.blk[k][i] = tree_project(ws[i], s, t);
  }
  return n;
}

// ---- diagram AST ------------------------------------------------------------

namespace {

struct DiagParser {
  const std::string& s;
  std::size_t i = 0;
  explicit DiagParser(const std::string& text) : s(text) {}

  std::pair<std::size_t, std::size_t> linecol(std::size_t pos) const {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < pos && k < s.size(); ++k) {
      if (s[k] == '\n') {
        ++line;
        col = 1;
      } else
        ++col;
    }
    return {line, col};
  }
  [[noreturn]] void fail(std::size_t pos, const std::string& msg) const {
    auto [l, c] = linecol(pos);
    throw DiagramParseError(l, c, msg);
  }
  void skip() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c, const std::string& what) {
    if (!eat(c)) fail(i, "expected '" + std::string(1, c) + "' " + what);
  }
  std::string ident() {
    skip();
    std::size_t start = i;
    while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_')) ++i;
    if (i == start) fail(start, "expected identifier");
    return s.substr(start, i - start);
  }

  DiagramTerm terms() {
    DiagramTerm t = term();
    skip();
    if (i < s.size() && s[i] == ';') {
      DiagramTerm comp;
      comp.kind = DiagramTerm::Kind::Compose;
      comp.children.push_back(std::move(t));
      while (eat(';')) comp.children.push_back(term());
      return comp;
    }
    return t;
  }
  DiagramTerm term() {
    DiagramTerm t = factor();
    skip();
    if (i < s.size() && s[i] == '*') {
      DiagramTerm tens;
      tens.kind = DiagramTerm::Kind::Tensor;
      tens.children.push_back(std::move(t));
      while (eat('*')) tens.children.push_back(factor());
      return tens;
    }
    return t;
  }
  DiagramTerm factor() {
    skip();
    if (i >= s.size()) fail(i, "unexpected end of diagram");
    if (s[i] == '(') {
      ++i;
      DiagramTerm t = terms();
      expect(')', "to close group");
      return t;
    }
    std::string id = ident();
    DiagramTerm t;
    if (id == "id") {
      t.kind = DiagramTerm::Kind::Id;
      expect('(', "after id");
      t.word.push_back(ident());
      while (eat(',')) t.word.push_back(ident());
      expect(')', "to close id(...)");
    } else if (id == "braid") {
      bool invf = eat('~');
      t.kind = invf ? DiagramTerm::Kind::BraidInv : DiagramTerm::Kind::Braid;
      expect('(', "after braid");
      t.a = ident();
      expect(',', "between braid labels");
      t.b = ident();
      expect(')', "to close braid(...)");
    } else if (id == "ev" || id == "coev") {
      t.kind = id == "ev" ? DiagramTerm::Kind::Ev : DiagramTerm::Kind::Coev;
      expect('(', "after ev/coev");
      t.a = ident();
      expect(')', "to close ev/coev(...)");
    } else if (id == "prim") {
      t.kind = DiagramTerm::Kind::Prim;
      expect('(', "after prim");
      t.prim_name = ident();
      expect(')', "to close prim(...)");
    } else {
      fail(i - id.size(), "unknown diagram constructor " + id);
    }
    return t;
  }
};

}  // namespace

DiagramTerm parse_diagram(const std::string& text) {
  DiagParser p(text);
  DiagramTerm t = p.terms();
  p.skip();
  if (p.i != text.size()) p.fail(p.i, "trailing characters in diagram");
  return t;
}

template <class F>
Mor<F> Engine<F>::evaluate(const DiagramTerm& t,
                           const std::map<std::string, Mor<F>>* prims) const {
  auto lbl = [&](const std::string& s) -> Label {
    for (Label i = 0; i < (Label)C_->rank(); ++i)
      if (C_->labels[i] == s) return i;
    throw UnknownLabel("unknown label " + s + " in category " + C_->name);
  };
  switch (t.kind) {
    case DiagramTerm::Kind::Id: {
      std::vector<Label> w;
      for (auto& s : t.word) w.push_back(lbl(s));
      return identity(Word{w});
    }
    case DiagramTerm::Kind::Compose: {
      Mor<F> acc = evaluate(t.children[0], prims);
      for (std::size_t k = 1; k < t.children.size(); ++k) {
        Mor<F> next = evaluate(t.children[k], prims);
        if (!(acc.dst == next.src))
          throw TypeMismatch("composition of diagrams with mismatched words");
        acc = compose(next, acc);
      }
      return acc;
    }
    case DiagramTerm::Kind::Tensor: {
      Mor<F> acc = evaluate(t.children[0], prims);
      for (std::size_t k = 1; k < t.children.size(); ++k)
        acc = tensor(acc, evaluate(t.children[k], prims));
      return acc;
    }
    case DiagramTerm::Kind::Braid:
      return braid(lbl(t.a), lbl(t.b));
    case DiagramTerm::Kind::BraidInv:
      return braid_inv(lbl(t.a), lbl(t.b));
    case DiagramTerm::Kind::Ev:
      return ev(lbl(t.a));
    case DiagramTerm::Kind::Coev:
      return coev(lbl(t.a));
    case DiagramTerm::Kind::Prim: {
      if (!prims || !prims->count(t.prim_name))
        throw TypeMismatch("unbound prim " + t.prim_name);
      return prims->at(t.prim_name);
    }
  }
  throw std::logic_error("unreachable diagram kind");
}

template <class F>
Engine<F>::Engine(const FusionData<F>& cat) : C_(&cat) {
  calibrate();
}

template class Engine<Cyc>;
template class Engine<NumF>;
template struct Mor<Cyc>;
template struct Mor<NumF>;
template struct SumMor<Cyc>;
template struct SumMor<NumF>;

}  // namespace rtp
