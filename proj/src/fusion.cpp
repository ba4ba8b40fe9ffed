#include "redtensor/fusion.hpp"

#include <cmath>
#include <sstream>

namespace rtp {

bool ObjectExpr::is_zero() const {
  for (auto& [a, m] : mult)
    if (m > 0) return false;
  return true;
}

ObjectExpr ObjectExpr::operator+(const ObjectExpr& o) const {
  ObjectExpr r = *this;
  for (auto& [a, m] : o.mult) r.mult[a] += m;
  return r;
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  for (const Violation& v : violations) {
    os << v.axiom;
    for (const std::string& l : v.labels) os << " " << l;
    os << " residual=" << v.residual << "\n";
  }
  return os.str();
}

std::string residual_str(const NumF& x) {
  std::ostringstream os;
  os << x.v.real();
  if (x.v.imag() != 0.0) os << (x.v.imag() > 0 ? "+" : "") << x.v.imag() << "i";
  return os.str();
}

template <class F>
Label FusionData<F>::label_index(const std::string& s) const {
  for (Label i = 0; i < (Label)labels.size(); ++i)
    if (labels[i] == s) return i;
  throw std::out_of_range("unknown label " + s + " in category " + name);
}

template <class F>
std::vector<std::tuple<Label, int, int>> FusionData<F>::f_rows(Label a, Label b, Label c,
                                                               Label d) const {
  std::vector<std::tuple<Label, int, int>> out;
  for (Label e = 0; e < (Label)rank(); ++e)
    for (int alpha = 0; alpha < N[a][b][e]; ++alpha)
      for (int beta = 0; beta < N[e][c][d]; ++beta) out.emplace_back(e, alpha, beta);
  return out;
}

template <class F>
std::vector<std::tuple<Label, int, int>> FusionData<F>::f_cols(Label a, Label b, Label c,
                                                               Label d) const {
  std::vector<std::tuple<Label, int, int>> out;
  for (Label f = 0; f < (Label)rank(); ++f)
    for (int mu = 0; mu < N[b][c][f]; ++mu)
      for (int nu = 0; nu < N[a][f][d]; ++nu) out.emplace_back(f, mu, nu);
  return out;
}

template <class F>
Matrix<F> FusionData<F>::fmatrix(Label a, Label b, Label c, Label d) const {
  auto rows = f_rows(a, b, c, d);
  auto cols = f_cols(a, b, c, d);
  Matrix<F> m(rows.size(), cols.size());
  if (rows.empty() || cols.empty()) return m;
  if (a == unit || b == unit || c == unit) {
    // unit-leg F-moves are identities; both index sets enumerate the same
    // multiplicity space in the same order
    if (rows.size() != cols.size())
      throw std::logic_error("unit-leg F-matrix is not square; invalid N table");
    for (std::size_t i = 0; i < rows.size(); ++i) m.at(i, i) = FieldOps<F>::one();
    return m;
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      auto [e, alpha, beta] = rows[i];
      auto [f, mu, nu] = cols[j];
      auto it = Fsym.find({a, b, c, d, e, f});
      if (it == Fsym.end())
        throw MissingSymbol("missing F[" + labels[a] + "," + labels[b] + "," + labels[c] + ";" +
                            labels[d] + ";" + labels[e] + "," + labels[f] + "] in " + name);
      std::size_t r = (std::size_t)alpha * N[e][c][d] + beta;
      std::size_t cI = (std::size_t)mu * N[a][f][d] + nu;
      m.at(i, j) = it->second.at(r, cI);
    }
  return m;
}

template <class F>
Matrix<F> FusionData<F>::fsym(Label a, Label b, Label c, Label d, Label e, Label f) const {
  std::size_t nr = (std::size_t)N[a][b][e] * N[e][c][d];
  std::size_t nc = (std::size_t)N[b][c][f] * N[a][f][d];
  Matrix<F> m(nr, nc);
  if (nr == 0 || nc == 0) return m;
  if (a == unit || b == unit || c == unit) {
    bool diag = (a == unit && e == b && f == d) || (b == unit && e == a && f == c) ||
                (c == unit && e == d && f == b);
    if (diag)
      for (std::size_t i = 0; i < std::min(nr, nc); ++i) m.at(i, i) = FieldOps<F>::one();
    return m;
  }
  auto it = Fsym.find({a, b, c, d, e, f});
  if (it == Fsym.end())
    throw MissingSymbol("missing F[" + labels[a] + "," + labels[b] + "," + labels[c] + ";" +
                        labels[d] + ";" + labels[e] + "," + labels[f] + "] in " + name);
  return it->second;
}

template <class F>
Matrix<F> FusionData<F>::rsym(Label a, Label b, Label c) const {
  std::size_t n1 = N[a][b][c], n2 = N[b][a][c];
  Matrix<F> m(n2, n1);
  if (n1 == 0 || n2 == 0) return m;
  if (a == unit || b == unit) {
    for (std::size_t i = 0; i < std::min(n1, n2); ++i) m.at(i, i) = FieldOps<F>::one();
    return m;
  }
  auto it = Rsym.find({a, b, c});
  if (it == Rsym.end())
    throw MissingSymbol("missing R[" + labels[a] + "," + labels[b] + ";" + labels[c] + "] in " +
                        name);
  return it->second;
}

namespace {

template <class F>
std::string rstr(const F& x) {
  return residual_str(x);
}

template <class F>
void check_pentagon(const FusionData<F>& C, ValidationReport& rep, Label a, Label b, Label c,
                    Label d, Label E) {
  // start basis: (e1, alpha, e2, beta, gamma); end basis: (f1, delta, f2, zeta, eta)
  struct Idx5 {
    Label x, y;
    int i, j, k;
    auto key() const { return std::tie(x, i, y, j, k); }
    bool operator<(const Idx5& o) const { return key() < o.key(); }
  };
  using Map = std::map<std::pair<Idx5, Idx5>, F>;  // (start, end) -> coefficient

  auto add = [](Map& m, const Idx5& s, const Idx5& e, const F& v) {
    if (FieldOps<F>::is_zero(v)) return;
    auto [it, fresh] = m.emplace(std::make_pair(s, e), v);
    if (!fresh) it->second += v;
  };

  const Label R = (Label)C.rank();
  Map route1, route2;

  for (Label e1 = 0; e1 < R; ++e1)
    for (int alpha = 0; alpha < C.n(a, b, e1); ++alpha)
      for (Label e2 = 0; e2 < R; ++e2)
        for (int beta = 0; beta < C.n(e1, c, e2); ++beta)
          for (int gamma = 0; gamma < C.n(e2, d, E); ++gamma) {
            Idx5 start{e1, e2, alpha, beta, gamma};
            // route 1: F^{e1 c d}_E then F^{a b f1}_E
            for (Label f1 = 0; f1 < R; ++f1)
              for (int delta = 0; delta < C.n(c, d, f1); ++delta)
                for (int eps = 0; eps < C.n(e1, f1, E); ++eps) {
                  Matrix<F> F1 = C.fsym(e1, c, d, E, e2, f1);
                  F v1 = F1.at((std::size_t)beta * C.n(e2, d, E) + gamma,
                               (std::size_t)delta * C.n(e1, f1, E) + eps);
                  if (FieldOps<F>::is_zero(v1)) continue;
                  for (Label f2 = 0; f2 < R; ++f2)
                    for (int zeta = 0; zeta < C.n(b, f1, f2); ++zeta)
                      for (int eta = 0; eta < C.n(a, f2, E); ++eta) {
                        Matrix<F> F2 = C.fsym(a, b, f1, E, e1, f2);
                        F v2 = F2.at((std::size_t)alpha * C.n(e1, f1, E) + eps,
                                     (std::size_t)zeta * C.n(a, f2, E) + eta);
                        if (FieldOps<F>::is_zero(v2)) continue;
                        add(route1, start, Idx5{f1, f2, delta, zeta, eta}, v1 * v2);
                      }
                }
            // route 2: F^{abc}_{e2}, F^{a h d}_E, F^{bcd}_{f2}
            for (Label h = 0; h < R; ++h)
              for (int sigma = 0; sigma < C.n(b, c, h); ++sigma)
                for (int tau = 0; tau < C.n(a, h, e2); ++tau) {
                  Matrix<F> S1 = C.fsym(a, b, c, e2, e1, h);
                  F v1 = S1.at((std::size_t)alpha * C.n(e1, c, e2) + beta,
                               (std::size_t)sigma * C.n(a, h, e2) + tau);
                  if (FieldOps<F>::is_zero(v1)) continue;
                  for (Label f2 = 0; f2 < R; ++f2)
                    for (int kappa = 0; kappa < C.n(h, d, f2); ++kappa)
                      for (int eta = 0; eta < C.n(a, f2, E); ++eta) {
                        Matrix<F> S2 = C.fsym(a, h, d, E, e2, f2);
                        F v2 = S2.at((std::size_t)tau * C.n(e2, d, E) + gamma,
                                     (std::size_t)kappa * C.n(a, f2, E) + eta);
                        if (FieldOps<F>::is_zero(v2)) continue;
                        for (Label f1 = 0; f1 < R; ++f1)
                          for (int delta = 0; delta < C.n(c, d, f1); ++delta)
                            for (int zeta = 0; zeta < C.n(b, f1, f2); ++zeta) {
                              Matrix<F> S3 = C.fsym(b, c, d, f2, h, f1);
                              F v3 = S3.at((std::size_t)sigma * C.n(h, d, f2) + kappa,
                                           (std::size_t)delta * C.n(b, f1, f2) + zeta);
                              if (FieldOps<F>::is_zero(v3)) continue;
                              add(route2, start, Idx5{f1, f2, delta, zeta, eta}, v1 * v2 * v3);
                            }
                      }
                }
          }

  // compare
  for (auto& [k, v] : route2) {
    auto it = route1.find(k);
    F r = it == route1.end() ? -v : (it->second - v);
    if (!FieldOps<F>::is_zero(r)) {
      rep.violations.push_back({"pentagon",
                                {C.labels[a], C.labels[b], C.labels[c], C.labels[d], C.labels[E]},
                                rstr(r)});
      return;
    }
  }
  for (auto& [k, v] : route1) {
    if (route2.find(k) == route2.end() && !FieldOps<F>::is_zero(v)) {
      rep.violations.push_back({"pentagon",
                                {C.labels[a], C.labels[b], C.labels[c], C.labels[d], C.labels[E]},
                                rstr(v)});
      return;
    }
  }
}

// hexagon for the moving object c across a*b, inside total d.
// sign=+1 uses the braiding, sign=-1 the inverse braiding.
template <class F>
void check_hexagon(const FusionData<F>& C, ValidationReport& rep, Label c, Label a, Label b,
                   Label d, int sign) {
  const Label R = (Label)C.rank();
  auto braid = [&](Label x, Label y, Label ch) -> Matrix<F> {
    // matrix of the braiding x (x) y -> y (x) x on channel ch
    if (sign > 0) return C.rsym(x, y, ch);
    auto inv = C.rsym(y, x, ch).inverse();
    if (!inv) throw std::runtime_error("singular R-matrix in " + C.name);
    return *inv;
  };
  struct Idx3 {
    Label e;
    int m, n;
    bool operator<(const Idx3& o) const { return std::tie(e, m, n) < std::tie(o.e, o.m, o.n); }
  };
  using Map = std::map<std::pair<Idx3, Idx3>, F>;
  auto add = [](Map& mp, const Idx3& s, const Idx3& e, const F& v) {
    if (FieldOps<F>::is_zero(v)) return;
    auto [it, fresh] = mp.emplace(std::make_pair(s, e), v);
    if (!fresh) it->second += v;
  };
  Map lhs, rhs;
  for (Label e = 0; e < R; ++e)
    for (int mu = 0; mu < C.n(c, a, e); ++mu)
      for (int nu = 0; nu < C.n(e, b, d); ++nu) {
        Idx3 start{e, mu, nu};
        // LHS: F^{cab}_d ; R^{cf}_d ; F^{abc}_d
        for (Label f = 0; f < R; ++f)
          for (int sg = 0; sg < C.n(a, b, f); ++sg)
            for (int ta = 0; ta < C.n(c, f, d); ++ta) {
              F v1 = C.fsym(c, a, b, d, e, f).at((std::size_t)mu * C.n(e, b, d) + nu,
                                                 (std::size_t)sg * C.n(c, f, d) + ta);
              if (FieldOps<F>::is_zero(v1)) continue;
              Matrix<F> Rm = braid(c, f, d);
              for (int ta2 = 0; ta2 < C.n(f, c, d); ++ta2) {
                F v2 = Rm.at(ta2, ta);
                if (FieldOps<F>::is_zero(v2)) continue;
                for (Label g = 0; g < R; ++g)
                  for (int rh = 0; rh < C.n(b, c, g); ++rh)
                    for (int pi = 0; pi < C.n(a, g, d); ++pi) {
                      F v3 = C.fsym(a, b, c, d, f, g).at((std::size_t)sg * C.n(f, c, d) + ta2,
                                                         (std::size_t)rh * C.n(a, g, d) + pi);
                      if (FieldOps<F>::is_zero(v3)) continue;
                      add(lhs, start, Idx3{g, rh, pi}, v1 * v2 * v3);
                    }
              }
            }
        // RHS: R^{ca}_e ; F^{acb}_d ; R^{cb}_g
        Matrix<F> R1 = braid(c, a, e);
        for (int mu2 = 0; mu2 < C.n(a, c, e); ++mu2) {
          F v1 = R1.at(mu2, mu);
          if (FieldOps<F>::is_zero(v1)) continue;
          for (Label g = 0; g < R; ++g)
            for (int ka = 0; ka < C.n(c, b, g); ++ka)
              for (int pi = 0; pi < C.n(a, g, d); ++pi) {
                F v2 = C.fsym(a, c, b, d, e, g).at((std::size_t)mu2 * C.n(e, b, d) + nu,
                                                   (std::size_t)ka * C.n(a, g, d) + pi);
                if (FieldOps<F>::is_zero(v2)) continue;
                Matrix<F> R2 = braid(c, b, g);
                for (int rh = 0; rh < C.n(b, c, g); ++rh) {
                  F v3 = R2.at(rh, ka);
                  if (FieldOps<F>::is_zero(v3)) continue;
                  add(rhs, start, Idx3{g, rh, pi}, v1 * v2 * v3);
                }
              }
        }
      }
  for (auto& [k, v] : rhs) {
    auto it = lhs.find(k);
    F r = it == lhs.end() ? -v : (it->second - v);
    if (!FieldOps<F>::is_zero(r)) {
      rep.violations.push_back({sign > 0 ? "hexagon" : "hexagon_inverse",
                                {C.labels[c], C.labels[a], C.labels[b], C.labels[d]},
                                rstr(r)});
      return;
    }
  }
  for (auto& [k, v] : lhs)
    if (rhs.find(k) == rhs.end() && !FieldOps<F>::is_zero(v)) {
      rep.violations.push_back({sign > 0 ? "hexagon" : "hexagon_inverse",
                                {C.labels[c], C.labels[a], C.labels[b], C.labels[d]},
                                rstr(v)});
      return;
    }
}

}  // namespace

template <class F>
ValidationReport validate(const FusionData<F>& C) {
  ValidationReport rep;
  const Label R = (Label)C.rank();
  const F one = FieldOps<F>::one();

  // unit fusion rules
  for (Label a = 0; a < R; ++a)
    for (Label b = 0; b < R; ++b) {
      int want = a == b ? 1 : 0;
      if (C.n(C.unit, a, b) != want || C.n(a, C.unit, b) != want)
        rep.violations.push_back({"unit_fusion", {C.labels[a], C.labels[b]}, "1"});
    }
  // duality
  for (Label a = 0; a < R; ++a) {
    if (C.dual[C.dual[a]] != a)
      rep.violations.push_back({"dual_involution", {C.labels[a]}, "1"});
    if (C.n(a, C.dual[a], C.unit) < 1)
      rep.violations.push_back({"dual_pairing", {C.labels[a]}, "1"});
  }
  // fusion ring associativity (needed for everything downstream)
  for (Label a = 0; a < R; ++a)
    for (Label b = 0; b < R; ++b)
      for (Label c = 0; c < R; ++c)
        for (Label d = 0; d < R; ++d) {
          long lhs = 0, rhs = 0;
          for (Label e = 0; e < R; ++e) {
            lhs += (long)C.n(a, b, e) * C.n(e, c, d);
            rhs += (long)C.n(b, c, e) * C.n(a, e, d);
          }
          if (lhs != rhs)
            rep.violations.push_back(
                {"fusion_assoc",
                 {C.labels[a], C.labels[b], C.labels[c], C.labels[d]},
                 std::to_string(lhs - rhs)});
        }
  if (!rep.ok()) return rep;  // structural failures make the rest meaningless

  // dimensions
  if (C.dim.size() != (std::size_t)R) {
    rep.violations.push_back({"dimension_table", {}, "missing"});
    return rep;
  }
  if (C.dim[C.unit] != one)
    rep.violations.push_back({"dimension_unit", {C.labels[C.unit]}, rstr<F>(C.dim[C.unit] - one)});
  for (Label a = 0; a < R; ++a)
    for (Label b = 0; b < R; ++b) {
      F s = FieldOps<F>::zero();
      for (Label c = 0; c < R; ++c) {
        F m = FieldOps<F>::zero();
        for (int k = 0; k < C.n(a, b, c); ++k) m += one;
        s += m * C.dim[c];
      }
      F r = C.dim[a] * C.dim[b] - s;
      if (!FieldOps<F>::is_zero(r))
        rep.violations.push_back({"dimension", {C.labels[a], C.labels[b]}, rstr(r)});
    }
  for (Label a = 0; a < R; ++a) {
    std::complex<double> z = FieldOps<F>::numeric(C.dim[a]);
    if (std::abs(z.imag()) > 1e-9 || z.real() <= 1e-9)
      rep.violations.push_back({"dimension_positive", {C.labels[a]}, rstr(C.dim[a])});
  }

  // F-matrix invertibility (pivotality of the data)
  for (Label a = 0; a < R; ++a)
    for (Label b = 0; b < R; ++b)
      for (Label c = 0; c < R; ++c)
        for (Label d = 0; d < R; ++d) {
          Matrix<F> m = C.fmatrix(a, b, c, d);
          if (m.rows() != m.cols())
            rep.violations.push_back(
                {"f_shape", {C.labels[a], C.labels[b], C.labels[c], C.labels[d]}, "1"});
          else if (m.rows() > 0 && !m.inverse())
            rep.violations.push_back(
                {"f_invertible", {C.labels[a], C.labels[b], C.labels[c], C.labels[d]}, "0"});
        }
  if (!rep.ok()) return rep;

  // pentagon, exhaustive
  for (Label a = 0; a < R; ++a)
    for (Label b = 0; b < R; ++b)
      for (Label c = 0; c < R; ++c)
        for (Label d = 0; d < R; ++d)
          for (Label E = 0; E < R; ++E) check_pentagon(C, rep, a, b, c, d, E);

  if (C.braided) {
    for (Label c = 0; c < R; ++c)
      for (Label a = 0; a < R; ++a)
        for (Label b = 0; b < R; ++b)
          for (Label d = 0; d < R; ++d) {
            check_hexagon(C, rep, c, a, b, d, +1);
            check_hexagon(C, rep, c, a, b, d, -1);
          }
    if (!C.twist.empty()) {
      std::vector<F> th = twists_from_R(C);
      for (Label a = 0; a < R; ++a) {
        F r = th[a] - C.twist[a];
        if (!FieldOps<F>::is_zero(r))
          rep.violations.push_back({"twist", {C.labels[a]}, rstr(r)});
      }
    }
    if (C.symmetric) {
      for (Label a = 0; a < R; ++a)
        for (Label b = 0; b < R; ++b)
          for (Label c = 0; c < R; ++c) {
            if (C.n(a, b, c) == 0) continue;
            Matrix<F> m = C.rsym(b, a, c) * C.rsym(a, b, c);
            if (m != Matrix<F>::identity(m.rows()))
              rep.violations.push_back(
                  {"symmetry", {C.labels[a], C.labels[b], C.labels[c]}, "1"});
          }
    }
  }
  return rep;
}

template <class F>
std::vector<F> twists_from_R(const FusionData<F>& C) {
  if (!C.braided) throw std::logic_error("twists_from_R needs a braided category");
  std::vector<F> th(C.rank());
  for (Label a = 0; a < (Label)C.rank(); ++a) {
    F s = FieldOps<F>::zero();
    for (Label c = 0; c < (Label)C.rank(); ++c) {
      if (C.n(a, a, c) == 0) continue;
      s += C.dim[c] * C.rsym(a, a, c).trace();
    }
    th[a] = s / C.dim[a];
  }
  return th;
}

std::optional<Rat> central_charge_exact(const Cyc& gauss, const Cyc& dim2) {
  if (gauss.is_zero()) return std::nullopt;
  // gauss = |gauss| e^{2 pi i c / 8}; gauss/conj(gauss) = e^{2 pi i (2c) / 8}
  Cyc ratio = gauss / gauss.conj();
  auto rou = ratio.as_root_of_unity();
  if (!rou) return std::nullopt;
  auto [t, s] = *rou;
  // 2c/8 = s/t (mod 1)  =>  c = 4 s / t (mod 4); resolve mod 8 numerically
  Rat c(4 * s, t);
  c.canonicalize();
  double target = std::arg(gauss.to_complex()) * 4.0 / M_PI;  // c mod 8 numerically
  while (target < 0) target += 8.0;
  double c0 = c.get_d();
  while (c0 >= 8.0) c0 -= 8.0;
  double alt = c0 + 4.0 >= 8.0 ? c0 - 4.0 : c0 + 4.0;
  Rat out = std::abs(c0 - target) <= std::abs(alt - target) ? c : c + 4;
  // verify exactly: gauss^{2q} = (dim2)^q * E(4)^p for out = p/q
  Rat norm = out;
  while (norm >= 8) norm -= 8;
  while (norm < 0) norm += 8;
  long q = (long)norm.get_den().get_si(), p = (long)norm.get_num().get_si();
  Cyc lhs = gauss.pow(2 * q);
  Cyc rhs = dim2.pow(q) * Cyc::root_of_unity(4, p);
  if (lhs != rhs) throw std::runtime_error("central charge verification failed");
  return norm;
}

namespace {

Rat snap_to_rational(double x, long max_den) {
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
  best.canonicalize();
  return best;
}

std::optional<Rat> charge_for(const FusionData<Cyc>&, const Cyc& gauss, const Cyc& dim2) {
  return central_charge_exact(gauss, dim2);
}
std::optional<Rat> charge_for(const FusionData<NumF>&, const NumF& gauss, const NumF&) {
  return central_charge_numeric(gauss);
}

Cyc sqrt_for(const FusionData<Cyc>&, const Cyc& x) {
  auto s = x.sqrt();
  if (!s) throw std::runtime_error("global dimension has no cyclotomic square root");
  return *s;
}
NumF sqrt_for(const FusionData<NumF>&, const NumF& x) { return NumF(std::sqrt(x.v)); }

}  // namespace

std::optional<Rat> central_charge_numeric(const NumF& gauss) {
  if (std::abs(gauss.v) < NumF::tolerance) return std::nullopt;
  double c = std::arg(gauss.v) * 4.0 / M_PI;
  while (c < 0) c += 8.0;
  return snap_to_rational(c, 96);
}

template <class F>
ModularDataT<F> modular_data_balancing(const FusionData<F>& C) {
  if (!C.braided) throw std::logic_error("modular data needs a braided category");
  std::vector<F> th = C.twist.empty() ? twists_from_R(C) : C.twist;
  const Label R = (Label)C.rank();
  ModularDataT<F> md;
  md.rank = R;
  md.T = th;
  F dim2 = C.global_dim2();
  if (FieldOps<F>::is_zero(dim2)) throw ZeroGlobalDimension("zero global dimension");
  F D = sqrt_for(C, dim2);
  Matrix<F> S(R, R);
  for (Label a = 0; a < R; ++a)
    for (Label b = 0; b < R; ++b) {
      F s = FieldOps<F>::zero();
      Label bd = C.dual[b];
      for (Label c = 0; c < R; ++c) {
        F m = FieldOps<F>::zero();
        for (int k = 0; k < C.n(a, bd, c); ++k) m += FieldOps<F>::one();
        if (FieldOps<F>::is_zero(m)) continue;
        s += m * C.dim[c] * th[c];
      }
      S.at(a, b) = s / (th[a] * th[b] * D);
    }
  md.S = S;
  md.modular = !FieldOps<F>::is_zero(S.det());
  F gauss = FieldOps<F>::zero();
  for (Label a = 0; a < R; ++a) gauss += C.dim[a] * C.dim[a] * th[a];
  md.gauss_sum = gauss;
  if (md.modular) md.central_charge = charge_for(C, gauss, dim2);
  return md;
}

template <class F>
std::vector<Label> mueger_centre(const FusionData<F>& C) {
  if (!C.braided) throw std::logic_error("mueger_centre needs a braided category");
  std::vector<Label> out;
  for (Label c = 0; c < (Label)C.rank(); ++c) {
    bool transparent = true;
    for (Label b = 0; b < (Label)C.rank() && transparent; ++b)
      for (Label e = 0; e < (Label)C.rank() && transparent; ++e) {
        if (C.n(c, b, e) == 0) continue;
        Matrix<F> m = C.rsym(b, c, e) * C.rsym(c, b, e);
        if (m != Matrix<F>::identity(m.rows())) transparent = false;
      }
    if (transparent) out.push_back(c);
  }
  return out;
}

FusionData<NumF> to_numeric(const FusionCategory& C) {
  FusionData<NumF> out;
  out.name = C.name;
  out.labels = C.labels;
  out.unit = C.unit;
  out.dual = C.dual;
  out.N = C.N;
  out.braided = C.braided;
  out.symmetric = C.symmetric;
  auto conv = [](const Matrix<Cyc>& m) {
    Matrix<NumF> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = NumF(m.at(i, j).to_complex());
    return r;
  };
  for (auto& [k, v] : C.Fsym) out.Fsym[k] = conv(v);
  for (auto& [k, v] : C.Rsym) out.Rsym[k] = conv(v);
  for (auto& d : C.dim) out.dim.push_back(NumF(d.to_complex()));
  for (auto& t : C.twist) out.twist.push_back(NumF(t.to_complex()));
  return out;
}

template struct FusionData<Cyc>;
template struct FusionData<NumF>;
template ValidationReport validate<Cyc>(const FusionData<Cyc>&);
template ValidationReport validate<NumF>(const FusionData<NumF>&);
template std::vector<Cyc> twists_from_R<Cyc>(const FusionData<Cyc>&);
template std::vector<NumF> twists_from_R<NumF>(const FusionData<NumF>&);
template ModularDataT<Cyc> modular_data_balancing<Cyc>(const FusionData<Cyc>&);
template ModularDataT<NumF> modular_data_balancing<NumF>(const FusionData<NumF>&);
template std::vector<Label> mueger_centre<Cyc>(const FusionData<Cyc>&);
template std::vector<Label> mueger_centre<NumF>(const FusionData<NumF>&);

}  // namespace rtp
