// Exact scalars in cyclotomic fields Q(zeta_n).
//
// A value is stored as a rational-coefficient vector in the power basis
// 1, z, z^2, ..., z^{phi(n)-1} of Q(zeta_n), z = exp(2*pi*i/n).  Conductors
// are kept admissible (n = 1 or n >= 3 with n != 2 mod 4); canonicalize()
// reduces to the minimal conductor, which makes the representation unique.

#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rtp {

using Rat = mpq_class;

struct ScalarParseError : std::runtime_error {
  std::size_t pos;
  ScalarParseError(std::size_t p, const std::string& msg)
      : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

class Cyc {
 public:
  Cyc() : n_(1), c_(1, Rat(0)) {}
  Cyc(long v) : n_(1), c_(1, Rat(v)) {}
  Cyc(const Rat& v) : n_(1), c_(1, v) { c_[0].canonicalize(); }

  static Cyc root_of_unity(long n, long k = 1);  // E(n)^k
  static long phi(long n);

  long conductor() const { return n_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  Cyc operator-() const;
  Cyc operator+(const Cyc& o) const;
  Cyc operator-(const Cyc& o) const;
  Cyc operator*(const Cyc& o) const;
  Cyc operator/(const Cyc& o) const { return *this * o.inv(); }
  Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
  Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
  Cyc& operator*=(const Cyc& o) { return *this = *this * o; }
  Cyc& operator/=(const Cyc& o) { return *this = *this / o; }

  bool operator==(const Cyc& o) const;
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  bool is_zero() const;
  bool is_one() const { return *this == Cyc(1); }
  bool is_rational() const;
  std::optional<Rat> as_rational() const;

  Cyc conj() const;   // complex conjugate (zeta -> zeta^{-1})
  Cyc inv() const;    // multiplicative inverse, throws on zero
  Cyc pow(long e) const;
  Cyc galois(long k) const;  // zeta -> zeta^k, gcd(k, n) = 1

  // Unique minimal-conductor representative.  Idempotent.
  Cyc canonical() const;
  void canonicalize();

  // total order on canonical forms, usable as a map key
  int compare(const Cyc& o) const;
  bool operator<(const Cyc& o) const { return compare(o) < 0; }

  std::complex<double> to_complex() const;
  bool is_real() const { return *this == conj(); }
  bool is_real_positive() const;

  // x == E(N)^k with N the exact multiplicative order; nullopt otherwise
  std::optional<std::pair<long, long>> as_root_of_unity() const;

  // exact square roots (results are again cyclotomic)
  static Cyc sqrt_rational(const Rat& r);
  // defined when *this = rational * root of unity; branch has Re > 0, or Re = 0 and Im > 0
  std::optional<Cyc> sqrt() const;

  std::string str() const;  // canonical scalar expression, parseable
  static Cyc parse(const std::string& text);

 private:
  long n_;              // conductor, admissible
  std::vector<Rat> c_;  // phi(n_) coefficients in the power basis

  Cyc(long n, std::vector<Rat> c) : n_(n), c_(std::move(c)) {}
  Cyc lifted(long m) const;       // rewrite at conductor m, n_ | m
  bool descend(long m);           // try to rewrite at conductor m | n_
  static const std::vector<std::vector<Rat>>& reduction_rows(long n);

  friend struct CycHash;
};

inline Cyc operator*(long a, const Cyc& x) { return Cyc(a) * x; }
inline Cyc operator+(long a, const Cyc& x) { return Cyc(a) + x; }
inline Cyc operator-(long a, const Cyc& x) { return Cyc(a) - x; }
inline Cyc operator*(const Rat& a, const Cyc& x) { return Cyc(a) * x; }
inline Cyc operator+(const Rat& a, const Cyc& x) { return Cyc(a) + x; }
inline Cyc operator-(const Rat& a, const Cyc& x) { return Cyc(a) - x; }

std::ostream& operator<<(std::ostream& os, const Cyc& x);

}  // namespace rtp
