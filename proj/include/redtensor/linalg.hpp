// Dense exact linear algebra and polynomial utilities over an abstract field.
//
// Two field types are used in practice: rtp::Cyc (exact cyclotomic scalars)
// and rtp::NumF (complex doubles with a tolerance, the float cross-check
// mode).  FieldOps<F> supplies the few operations that differ.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "redtensor/cyclotomic.hpp"

namespace rtp {

template <class F>
struct FieldOps;  // zero(), one(), is_zero(), pivot_size(), conj(), from_rational()

template <>
struct FieldOps<Cyc> {
  static Cyc zero() { return Cyc(0); }
  static Cyc one() { return Cyc(1); }
  static bool is_zero(const Cyc& x) { return x.is_zero(); }
  static double pivot_size(const Cyc& x) { return is_zero(x) ? 0.0 : 1.0; }
  static Cyc conj(const Cyc& x) { return x.conj(); }
  static Cyc from_rational(const Rat& r) { return Cyc(r); }
  static std::complex<double> numeric(const Cyc& x) { return x.to_complex(); }
};

template <>
struct FieldOps<Rat> {
  static Rat zero() { return Rat(0); }
  static Rat one() { return Rat(1); }
  static bool is_zero(const Rat& x) { return x == 0; }
  static double pivot_size(const Rat& x) { return x == 0 ? 0.0 : 1.0; }
  static Rat conj(const Rat& x) { return x; }
  static Rat from_rational(const Rat& r) { return r; }
  static std::complex<double> numeric(const Rat& x) { return {x.get_d(), 0.0}; }
};

// float cross-check scalar: complex double with tolerance equality
struct NumF {
  std::complex<double> v{0.0, 0.0};
  static double tolerance;  // set from RunConfig; 1e-9 by default

  NumF() = default;
  NumF(double x) : v(x, 0.0) {}
  NumF(std::complex<double> x) : v(x) {}

  NumF operator-() const { return NumF(-v); }
  NumF operator+(const NumF& o) const { return NumF(v + o.v); }
  NumF operator-(const NumF& o) const { return NumF(v - o.v); }
  NumF operator*(const NumF& o) const { return NumF(v * o.v); }
  NumF operator/(const NumF& o) const { return NumF(v / o.v); }
  NumF& operator+=(const NumF& o) { v += o.v; return *this; }
  NumF& operator-=(const NumF& o) { v -= o.v; return *this; }
  NumF& operator*=(const NumF& o) { v *= o.v; return *this; }
  NumF& operator/=(const NumF& o) { v /= o.v; return *this; }
  bool operator==(const NumF& o) const { return std::abs(v - o.v) <= tolerance; }
  bool operator!=(const NumF& o) const { return !(*this == o); }
};

template <>
struct FieldOps<NumF> {
  static NumF zero() { return NumF(); }
  static NumF one() { return NumF(1.0); }
  static bool is_zero(const NumF& x) { return std::abs(x.v) <= NumF::tolerance; }
  static double pivot_size(const NumF& x) { return std::abs(x.v); }
  static NumF conj(const NumF& x) { return NumF(std::conj(x.v)); }
  static NumF from_rational(const Rat& r) { return NumF(r.get_d()); }
  static std::complex<double> numeric(const NumF& x) { return x.v; }
};

// ---------------------------------------------------------------------------

template <class F>
class Matrix {
 public:
  Matrix() : r_(0), c_(0) {}
  Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), d_(r * c, FieldOps<F>::zero()) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = FieldOps<F>::one();
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  F& at(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
  const F& at(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }

  bool operator==(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) return false;
    for (std::size_t i = 0; i < d_.size(); ++i)
      if (d_[i] != o.d_[i]) return false;
    return true;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const F& x : d_)
      if (!FieldOps<F>::is_zero(x)) return false;
    return true;
  }

  Matrix operator+(const Matrix& o) const {
    Matrix m = *this;
    for (std::size_t i = 0; i < d_.size(); ++i) m.d_[i] += o.d_[i];
    return m;
  }
  Matrix operator-(const Matrix& o) const {
    Matrix m = *this;
    for (std::size_t i = 0; i < d_.size(); ++i) m.d_[i] -= o.d_[i];
    return m;
  }
  Matrix operator*(const Matrix& o) const {
    if (c_ != o.r_) throw std::logic_error("Matrix product shape mismatch");
    Matrix m(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < c_; ++k) {
        const F& aik = at(i, k);
        if (FieldOps<F>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < o.c_; ++j) m.at(i, j) += aik * o.at(k, j);
      }
    return m;
  }
  Matrix scaled(const F& s) const {
    Matrix m = *this;
    for (F& x : m.d_) x *= s;
    return m;
  }
  Matrix transpose() const {
    Matrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
  }
  Matrix conj_transpose() const {
    Matrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m.at(j, i) = FieldOps<F>::conj(at(i, j));
    return m;
  }
  Matrix kron(const Matrix& o) const {
    Matrix m(r_ * o.r_, c_ * o.c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) {
        if (FieldOps<F>::is_zero(at(i, j))) continue;
        for (std::size_t k = 0; k < o.r_; ++k)
          for (std::size_t l = 0; l < o.c_; ++l)
            m.at(i * o.r_ + k, j * o.c_ + l) = at(i, j) * o.at(k, l);
      }
    return m;
  }
  F trace() const {
    F t = FieldOps<F>::zero();
    for (std::size_t i = 0; i < r_ && i < c_; ++i) t += at(i, i);
    return t;
  }

  // Gauss-Jordan; returns pivot columns.  Operates in place.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t prow = 0;
    for (std::size_t j = 0; j < c_ && prow < r_; ++j) {
      std::size_t sel = r_;
      double best = 0.0;
      for (std::size_t i = prow; i < r_; ++i) {
        double sz = FieldOps<F>::pivot_size(at(i, j));
        if (sz > best) {
          best = sz;
          sel = i;
        }
      }
      if (sel == r_) continue;
      if (sel != prow)
        for (std::size_t jj = 0; jj < c_; ++jj) std::swap(at(sel, jj), at(prow, jj));
      F inv = FieldOps<F>::one() / at(prow, j);
      for (std::size_t jj = 0; jj < c_; ++jj) at(prow, jj) *= inv;
      for (std::size_t i = 0; i < r_; ++i) {
        if (i == prow) continue;
        F f = at(i, j);
        if (FieldOps<F>::is_zero(f)) continue;
        for (std::size_t jj = 0; jj < c_; ++jj) at(i, jj) -= f * at(prow, jj);
      }
      pivots.push_back(j);
      ++prow;
    }
    return pivots;
  }

  std::size_t rank() const {
    Matrix m = *this;
    return m.rref().size();
  }

  std::optional<Matrix> inverse() const {
    if (r_ != c_) return std::nullopt;
    Matrix aug(r_, 2 * c_);
    for (std::size_t i = 0; i < r_; ++i) {
      for (std::size_t j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, c_ + i) = FieldOps<F>::one();
    }
    auto piv = aug.rref();
    if (piv.size() != r_) return std::nullopt;
    Matrix inv(r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) inv.at(i, j) = aug.at(i, c_ + j);
    return inv;
  }

  F det() const {
    if (r_ != c_) throw std::logic_error("det of non-square matrix");
    Matrix m = *this;
    F d = FieldOps<F>::one();
    std::size_t prow = 0;
    for (std::size_t j = 0; j < c_; ++j) {
      std::size_t sel = r_;
      double best = 0.0;
      for (std::size_t i = prow; i < r_; ++i) {
        double sz = FieldOps<F>::pivot_size(m.at(i, j));
        if (sz > best) {
          best = sz;
          sel = i;
        }
      }
      if (sel == r_) return FieldOps<F>::zero();
      if (sel != prow) {
        for (std::size_t jj = 0; jj < c_; ++jj) std::swap(m.at(sel, jj), m.at(prow, jj));
        d = -d;
      }
      d *= m.at(prow, j);
      F inv = FieldOps<F>::one() / m.at(prow, j);
      for (std::size_t i = prow + 1; i < r_; ++i) {
        F f = m.at(i, j) * inv;
        if (FieldOps<F>::is_zero(f)) continue;
        for (std::size_t jj = j; jj < c_; ++jj) m.at(i, jj) -= f * m.at(prow, jj);
      }
      ++prow;
    }
    return d;
  }

  // one solution of (*this) X = B, or nullopt if inconsistent
  std::optional<Matrix> solve(const Matrix& B) const {
    if (r_ != B.r_) throw std::logic_error("solve: shape mismatch");
    Matrix aug(r_, c_ + B.c_);
    for (std::size_t i = 0; i < r_; ++i) {
      for (std::size_t j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
      for (std::size_t j = 0; j < B.c_; ++j) aug.at(i, c_ + j) = B.at(i, j);
    }
    auto piv = aug.rref();
    // pivots past the coefficient block mean inconsistency
    for (std::size_t p : piv)
      if (p >= c_) return std::nullopt;
    Matrix X(c_, B.c_);
    for (std::size_t k = 0; k < piv.size(); ++k)
      for (std::size_t j = 0; j < B.c_; ++j) X.at(piv[k], j) = aug.at(k, c_ + j);
    return X;
  }

  // columns span the kernel
  Matrix nullspace() const {
    Matrix m = *this;
    auto piv = m.rref();
    std::vector<bool> is_piv(c_, false);
    for (std::size_t p : piv) is_piv[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < c_; ++j)
      if (!is_piv[j]) free_cols.push_back(j);
    Matrix K(c_, free_cols.size());
    for (std::size_t t = 0; t < free_cols.size(); ++t) {
      std::size_t fc = free_cols[t];
      K.at(fc, t) = FieldOps<F>::one();
      for (std::size_t k = 0; k < piv.size(); ++k) K.at(piv[k], t) = -m.at(k, fc);
    }
    return K;
  }

  // indices of a column basis of the column space
  std::vector<std::size_t> column_basis() const {
    Matrix m = *this;
    return m.rref();
  }

  Matrix col(std::size_t j) const {
    Matrix v(r_, 1);
    for (std::size_t i = 0; i < r_; ++i) v.at(i, 0) = at(i, j);
    return v;
  }

  static Matrix hstack(const Matrix& a, const Matrix& b) {
    Matrix m(a.r_, a.c_ + b.c_);
    for (std::size_t i = 0; i < a.r_; ++i) {
      for (std::size_t j = 0; j < a.c_; ++j) m.at(i, j) = a.at(i, j);
      for (std::size_t j = 0; j < b.c_; ++j) m.at(i, a.c_ + j) = b.at(i, j);
    }
    return m;
  }

 private:
  std::size_t r_, c_;
  std::vector<F> d_;
};

// ---------------------------------------------------------------------------

template <class F>
struct Poly {
  std::vector<F> a;  // a[0] + a[1] t + ...

  Poly() = default;
  explicit Poly(std::vector<F> coeffs) : a(std::move(coeffs)) { trim(); }
  static Poly constant(const F& c) { return Poly(std::vector<F>{c}); }

  void trim() {
    while (!a.empty() && FieldOps<F>::is_zero(a.back())) a.pop_back();
  }
  long degree() const { return (long)a.size() - 1; }
  bool is_zero() const { return a.empty(); }
  const F& leading() const { return a.back(); }

  Poly monic() const {
    Poly p = *this;
    if (p.is_zero()) return p;
    F inv = FieldOps<F>::one() / p.a.back();
    for (F& x : p.a) x *= inv;
    return p;
  }

  Poly operator+(const Poly& o) const {
    Poly p;
    p.a.resize(std::max(a.size(), o.a.size()), FieldOps<F>::zero());
    for (std::size_t i = 0; i < a.size(); ++i) p.a[i] += a[i];
    for (std::size_t i = 0; i < o.a.size(); ++i) p.a[i] += o.a[i];
    p.trim();
    return p;
  }
  Poly operator-(const Poly& o) const {
    Poly p;
    p.a.resize(std::max(a.size(), o.a.size()), FieldOps<F>::zero());
    for (std::size_t i = 0; i < a.size(); ++i) p.a[i] += a[i];
    for (std::size_t i = 0; i < o.a.size(); ++i) p.a[i] -= o.a[i];
    p.trim();
    return p;
  }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    Poly p;
    p.a.assign(a.size() + o.a.size() - 1, FieldOps<F>::zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (FieldOps<F>::is_zero(a[i])) continue;
      for (std::size_t j = 0; j < o.a.size(); ++j) p.a[i + j] += a[i] * o.a[j];
    }
    p.trim();
    return p;
  }

  // division with remainder; divisor must have invertible leading coefficient
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("Poly division by zero");
    Poly rem = *this, quot;
    if (degree() < d.degree()) return {Poly(), rem};
    quot.a.assign(degree() - d.degree() + 1, FieldOps<F>::zero());
    F lead_inv = FieldOps<F>::one() / d.a.back();
    for (long i = (long)quot.a.size() - 1; i >= 0; --i) {
      if ((long)rem.a.size() - 1 < i + d.degree()) continue;
      F f = rem.a[i + d.degree()] * lead_inv;
      if (FieldOps<F>::is_zero(f)) continue;
      quot.a[i] = f;
      for (long j = 0; j <= d.degree(); ++j) rem.a[i + j] -= f * d.a[j];
    }
    rem.trim();
    quot.trim();
    return {quot, rem};
  }

  Poly derivative() const {
    Poly p;
    if (a.size() <= 1) return p;
    p.a.resize(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) {
      F k = FieldOps<F>::zero();
      for (std::size_t t = 0; t < i; ++t) k += FieldOps<F>::one();
      p.a[i - 1] = a[i] * k;
    }
    p.trim();
    return p;
  }

  F eval(const F& x) const {
    F acc = FieldOps<F>::zero();
    for (long i = (long)a.size() - 1; i >= 0; --i) acc = acc * x + a[i];
    return acc;
  }
  Matrix<F> eval(const Matrix<F>& M) const {
    Matrix<F> acc(M.rows(), M.cols());
    for (long i = (long)a.size() - 1; i >= 0; --i) {
      acc = acc * M;
      for (std::size_t k = 0; k < M.rows(); ++k) acc.at(k, k) += a[i];
    }
    return acc;
  }

  static Poly gcd(Poly x, Poly y) {
    while (!y.is_zero()) {
      Poly r = x.divmod(y).second;
      x = y;
      y = r;
    }
    return x.monic();
  }

  // g = u*x + v*y
  static void ext_gcd(const Poly& x, const Poly& y, Poly& g, Poly& u, Poly& v) {
    Poly r0 = x, r1 = y;
    Poly s0 = constant(FieldOps<F>::one()), s1;
    Poly t0, t1 = constant(FieldOps<F>::one());
    while (!r1.is_zero()) {
      auto [q, r2] = r0.divmod(r1);
      Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
      r0 = r1; r1 = r2;
      s0 = s1; s1 = s2;
      t0 = t1; t1 = t2;
    }
    // normalize to monic gcd
    F lead = r0.a.back();
    F inv = FieldOps<F>::one() / lead;
    for (F& c : r0.a) c *= inv;
    for (F& c : s0.a) c *= inv;
    for (F& c : t0.a) c *= inv;
    g = r0;
    u = s0;
    v = t0;
  }

  Poly squarefree_part() const { return divmod(gcd(*this, derivative())).first.monic(); }
};

// minimal polynomial of a square matrix (monic), via Krylov on the flattened powers
template <class F>
Poly<F> minimal_polynomial(const Matrix<F>& M) {
  std::size_t n = M.rows();
  std::vector<Matrix<F>> powers;
  powers.push_back(Matrix<F>::identity(n));
  for (std::size_t k = 1; k <= n; ++k) {
    powers.push_back(powers.back() * M);
    // try to express powers[k] in span(powers[0..k-1])
    Matrix<F> A(n * n, k);
    Matrix<F> b(n * n, 1);
    for (std::size_t idx = 0; idx < k; ++idx)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A.at(i * n + j, idx) = powers[idx].at(i, j);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b.at(i * n + j, 0) = powers[k].at(i, j);
    auto sol = A.solve(b);
    if (sol) {
      std::vector<F> coeffs(k + 1, FieldOps<F>::zero());
      for (std::size_t idx = 0; idx < k; ++idx) coeffs[idx] = -sol->at(idx, 0);
      coeffs[k] = FieldOps<F>::one();
      return Poly<F>(std::move(coeffs));
    }
  }
  throw std::logic_error("minimal_polynomial: no dependency found");
}

// Durand-Kerner roots of a monic polynomial with complex coefficients
inline std::vector<std::complex<double>> durand_kerner(
    const std::vector<std::complex<double>>& monic) {
  using C = std::complex<double>;
  long deg = (long)monic.size() - 1;
  if (deg <= 0) return {};
  auto eval = [&](C x) {
    C acc = 0.0;
    for (long i = deg; i >= 0; --i) acc = acc * x + monic[i];
    return acc;
  };
  std::vector<C> z(deg);
  C seed(0.4, 0.9);
  C cur(1.0, 0.0);
  for (long i = 0; i < deg; ++i) {
    cur *= seed;
    z[i] = cur;
  }
  for (int iter = 0; iter < 500; ++iter) {
    double shift = 0.0;
    for (long i = 0; i < deg; ++i) {
      C denom = 1.0;
      for (long j = 0; j < deg; ++j)
        if (j != i) denom *= (z[i] - z[j]);
      C delta = eval(z[i]) / denom;
      z[i] -= delta;
      shift = std::max(shift, std::abs(delta));
    }
    if (shift < 1e-14) break;
  }
  return z;
}

}  // namespace rtp
