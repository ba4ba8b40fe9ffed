#include "redtensor/cyclotomic.hpp"

#include "redtensor/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace rtp {

double NumF::tolerance = 1e-9;

namespace {

long phi_of(long n) {
  long result = n, m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

std::vector<long> prime_divisors(long n) {
  std::vector<long> ps;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

// integer-coefficient cyclotomic polynomial Phi_n, computed by exact division
std::vector<Rat> cyclo_poly(long n, std::map<long, std::vector<Rat>>& cache) {
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // x^n - 1
  std::vector<Rat> num(n + 1, Rat(0));
  num[0] = -1;
  num[n] = 1;
  for (long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    std::vector<Rat> div = cyclo_poly(d, cache);
    // exact polynomial division num /= div
    std::vector<Rat> quot(num.size() - div.size() + 1, Rat(0));
    std::vector<Rat> rem = num;
    for (long i = (long)quot.size() - 1; i >= 0; --i) {
      Rat q = rem[i + div.size() - 1] / div.back();
      quot[i] = q;
      if (q != 0)
        for (std::size_t j = 0; j < div.size(); ++j) rem[i + j] -= q * div[j];
    }
    num = quot;
  }
  cache[n] = num;
  return num;
}

struct ConductorData {
  long phi;
  // row k (0 <= k < n): zeta^k expressed in the power basis (phi entries)
  std::vector<std::vector<Rat>> pow_rows;
};

std::map<long, ConductorData> g_cond;
std::map<long, std::vector<Rat>> g_cyclo;
std::mutex g_mutex;

const ConductorData& conductor_data(long n) {
  std::lock_guard<std::mutex> lock(g_mutex);
  auto it = g_cond.find(n);
  if (it != g_cond.end()) return it->second;
  ConductorData d;
  d.phi = phi_of(n);
  std::vector<Rat> cp = cyclo_poly(n, g_cyclo);  // degree phi, monic
  d.pow_rows.resize(n);
  for (long k = 0; k < d.phi && k < n; ++k) {
    d.pow_rows[k].assign(d.phi, Rat(0));
    d.pow_rows[k][k] = 1;
  }
  // zeta^k = zeta^{k-phi} * zeta^phi with zeta^phi = -(cp[0] + ... + cp[phi-1] x^{phi-1})
  for (long k = d.phi; k < n; ++k) {
    const std::vector<Rat>& prev = d.pow_rows[k - 1];
    std::vector<Rat> cur(d.phi, Rat(0));
    // multiply prev by x, reduce
    Rat top = prev[d.phi - 1];
    for (long j = d.phi - 1; j >= 1; --j) cur[j] = prev[j - 1];
    cur[0] = 0;
    if (top != 0)
      for (long j = 0; j < d.phi; ++j) cur[j] -= top * cp[j];
    d.pow_rows[k] = cur;
  }
  return g_cond.emplace(n, std::move(d)).first->second;
}

bool admissible(long n) { return n == 1 || (n >= 3 && n % 4 != 2); }

// exact rational linear solve A x = b; A given column-wise. Returns x or empty.
std::optional<std::vector<Rat>> solve_rat(std::vector<std::vector<Rat>> cols,
                                          std::vector<Rat> b) {
  std::size_t rows = b.size(), ncols = cols.size();
  std::size_t prow = 0;
  std::vector<std::size_t> pivot_rows;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t j = 0; j < ncols && prow < rows; ++j) {
    std::size_t sel = rows;
    for (std::size_t i = prow; i < rows; ++i)
      if (cols[j][i] != 0) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    for (std::size_t jj = 0; jj < ncols; ++jj) std::swap(cols[jj][sel], cols[jj][prow]);
    std::swap(b[sel], b[prow]);
    Rat d = cols[j][prow];
    for (std::size_t jj = 0; jj < ncols; ++jj) cols[jj][prow] /= d;
    b[prow] /= d;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == prow) continue;
      Rat f = cols[j][i];
      if (f == 0) continue;
      for (std::size_t jj = 0; jj < ncols; ++jj) cols[jj][i] -= f * cols[jj][prow];
      b[i] -= f * b[prow];
    }
    pivot_rows.push_back(prow);
    pivot_cols.push_back(j);
    ++prow;
  }
  for (std::size_t i = prow; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<Rat> x(ncols, Rat(0));
  for (std::size_t k = 0; k < pivot_cols.size(); ++k) x[pivot_cols[k]] = b[pivot_rows[k]];
  return x;
}

long gcd_l(long a, long b) { return std::gcd(a, b); }
long lcm_l(long a, long b) { return a / std::gcd(a, b) * b; }

}  // namespace

const std::vector<std::vector<Rat>>& Cyc::reduction_rows(long n) {
  return conductor_data(n).pow_rows;
}

long Cyc::phi(long n) { return phi_of(n); }

Cyc Cyc::root_of_unity(long n, long k) {
  if (n <= 0) throw std::invalid_argument("root_of_unity: n must be positive");
  k %= n;
  if (k < 0) k += n;
  long g = gcd_l(n, k == 0 ? n : k);
  n /= g;
  k /= g;  // primitive n-th root to the k-th power, gcd(k, n) = 1 or k = 0
  if (k == 0) return Cyc(1);
  if (n == 1) return Cyc(1);
  if (n == 2) return Cyc(-1);
  if (n % 4 == 2) {
    // zeta_{2m} = -zeta_m^{(m+1)/2} for odd m
    long m = n / 2;
    Cyc z = root_of_unity(m, ((m + 1) / 2 * k) % m);
    return (k % 2 == 0) ? z : -z;
  }
  const ConductorData& d = conductor_data(n);
  std::vector<Rat> c = d.pow_rows[k];
  return Cyc(n, std::move(c));
}

Cyc Cyc::operator-() const {
  Cyc r = *this;
  for (Rat& v : r.c_) v = -v;
  return r;
}

Cyc Cyc::lifted(long m) const {
  if (m == n_) return *this;
  const ConductorData& d = conductor_data(m);
  long step = m / n_;
  std::vector<Rat> out(d.phi, Rat(0));
  for (long j = 0; j < (long)c_.size(); ++j) {
    if (c_[j] == 0) continue;
    const std::vector<Rat>& row = d.pow_rows[(j * step) % m];
    for (long t = 0; t < d.phi; ++t) out[t] += c_[j] * row[t];
  }
  return Cyc(m, std::move(out));
}

Cyc Cyc::operator+(const Cyc& o) const {
  long m = lcm_l(n_, o.n_);
  Cyc a = lifted(m), b = o.lifted(m);
  for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  return a;
}

Cyc Cyc::operator-(const Cyc& o) const { return *this + (-o); }

Cyc Cyc::operator*(const Cyc& o) const {
  long m = lcm_l(n_, o.n_);
  Cyc a = lifted(m), b = o.lifted(m);
  const ConductorData& d = conductor_data(m);
  std::vector<Rat> out(d.phi, Rat(0));
  for (long i = 0; i < d.phi; ++i) {
    if (a.c_[i] == 0) continue;
    for (long j = 0; j < d.phi; ++j) {
      if (b.c_[j] == 0) continue;
      Rat f = a.c_[i] * b.c_[j];
      const std::vector<Rat>& row = d.pow_rows[(i + j) % m];
      for (long t = 0; t < d.phi; ++t) out[t] += f * row[t];
    }
  }
  return Cyc(m, std::move(out));
}

bool Cyc::operator==(const Cyc& o) const {
  long m = lcm_l(n_, o.n_);
  Cyc a = lifted(m), b = o.lifted(m);
  return a.c_ == b.c_;
}

bool Cyc::is_zero() const {
  for (const Rat& v : c_)
    if (v != 0) return false;
  return true;
}

bool Cyc::is_rational() const { return canonical().n_ == 1; }

std::optional<Rat> Cyc::as_rational() const {
  Cyc c = canonical();
  if (c.n_ != 1) return std::nullopt;
  return c.c_[0];
}

Cyc Cyc::galois(long k) const {
  k %= n_;
  if (k < 0) k += n_;
  if (gcd_l(k, n_) != 1) throw std::invalid_argument("galois: k not coprime to conductor");
  const ConductorData& d = conductor_data(n_);
  std::vector<Rat> out(d.phi, Rat(0));
  for (long j = 0; j < (long)c_.size(); ++j) {
    if (c_[j] == 0) continue;
    const std::vector<Rat>& row = d.pow_rows[(j * k) % n_];
    for (long t = 0; t < d.phi; ++t) out[t] += c_[j] * row[t];
  }
  return Cyc(n_, std::move(out));
}

Cyc Cyc::conj() const { return n_ == 1 ? *this : galois(n_ - 1); }

Cyc Cyc::inv() const {
  if (is_zero()) throw std::domain_error("Cyc::inv of zero");
  if (n_ == 1) return Cyc(Rat(1) / c_[0]);
  // extended euclid of a(x) and Phi_n(x) in Q[x]
  std::vector<Rat> phi_poly;
  {
    std::lock_guard<std::mutex> lock(g_mutex);
    phi_poly = cyclo_poly(n_, g_cyclo);
  }
  std::vector<Rat> r0 = phi_poly, r1 = c_;
  while (!r1.empty() && r1.back() == 0) r1.pop_back();
  std::vector<Rat> s0{Rat(0)}, s1{Rat(1)};  // coefficients w.r.t. a(x)
  auto degree = [](const std::vector<Rat>& p) { return (long)p.size() - 1; };
  while (degree(r1) > 0) {
    // r0 = q r1 + r2
    std::vector<Rat> q(std::max<long>(degree(r0) - degree(r1) + 1, 0), Rat(0));
    std::vector<Rat> rem = r0;
    for (long i = (long)q.size() - 1; i >= 0; --i) {
      Rat f = rem[i + r1.size() - 1] / r1.back();
      q[i] = f;
      if (f != 0)
        for (std::size_t j = 0; j < r1.size(); ++j) rem[i + j] -= f * r1[j];
    }
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    if (rem.empty()) throw std::logic_error("Cyc::inv: unexpected zero remainder");
    // s2 = s0 - q s1
    std::vector<Rat> s2 = s0;
    s2.resize(std::max(s2.size(), q.size() + s1.size() - 1), Rat(0));
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
    }
    r0 = r1;
    r1 = rem;
    s0 = s1;
    s1 = s2;
  }
  // r1 is a nonzero constant: a * s1 = r1 (mod Phi)
  Rat cst = r1[0];
  const ConductorData& d = conductor_data(n_);
  std::vector<Rat> out(d.phi, Rat(0));
  for (std::size_t j = 0; j < s1.size(); ++j) {
    if (s1[j] == 0) continue;
    Rat f = s1[j] / cst;
    const std::vector<Rat>& row = d.pow_rows[j % n_];  // j < phi always here
    for (long t = 0; t < d.phi; ++t) out[t] += f * row[t];
  }
  return Cyc(n_, std::move(out));
}

Cyc Cyc::pow(long e) const {
  if (e == 0) return Cyc(1);
  Cyc base = e < 0 ? inv() : *this;
  unsigned long k = e < 0 ? -(unsigned long)e : (unsigned long)e;
  Cyc acc(1);
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

bool Cyc::descend(long m) {
  if (m == n_) return true;
  if (n_ % m != 0) return false;
  const ConductorData& dm = conductor_data(m);
  long step = n_ / m;
  std::vector<std::vector<Rat>> cols;
  cols.reserve(dm.phi);
  const ConductorData& dn = conductor_data(n_);
  for (long i = 0; i < dm.phi; ++i) {
    cols.push_back(dn.pow_rows[(i * step) % n_]);
  }
  auto sol = solve_rat(std::move(cols), c_);
  if (!sol) return false;
  n_ = m;
  c_ = std::move(*sol);
  return true;
}

void Cyc::canonicalize() {
  bool changed = true;
  while (changed && n_ > 1) {
    changed = false;
    for (long p : prime_divisors(n_)) {
      long m = n_ / p;
      if (m % 4 == 2) m /= 2;
      if (m < 1) m = 1;
      if (!admissible(m)) continue;
      if (descend(m)) {
        changed = true;
        break;
      }
    }
  }
}

Cyc Cyc::canonical() const {
  Cyc r = *this;
  r.canonicalize();
  return r;
}

int Cyc::compare(const Cyc& o) const {
  Cyc a = canonical(), b = o.canonical();
  if (a.n_ != b.n_) return a.n_ < b.n_ ? -1 : 1;
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    int c = cmp(a.c_[i], b.c_[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::complex<double> Cyc::to_complex() const {
  std::complex<double> z = std::polar(1.0, 2.0 * M_PI / (double)n_);
  std::complex<double> acc(0.0, 0.0);
  for (long j = (long)c_.size() - 1; j >= 0; --j) acc = acc * z + c_[j].get_d();
  return acc;
}

bool Cyc::is_real_positive() const {
  if (!is_real() || is_zero()) return false;
  double v = to_complex().real();
  if (std::abs(v) < 1e-9) throw std::runtime_error("is_real_positive: value too close to zero");
  return v > 0;
}

std::optional<std::pair<long, long>> Cyc::as_root_of_unity() const {
  if (is_zero()) return std::nullopt;
  if ((*this * conj()) != Cyc(1)) return std::nullopt;
  long bound = 2 * n_;
  std::vector<long> divs;
  for (long d = 1; d <= bound; ++d)
    if (bound % d == 0) divs.push_back(d);
  for (long d : divs) {
    if (pow(d) == Cyc(1)) {
      // order is exactly d here because divisors are scanned in increasing order
      for (long k = 0; k < d; ++k) {
        if (d > 1 && gcd_l(k, d) != 1) continue;
        if (*this == root_of_unity(d, k)) return std::make_pair(d, k);
      }
      return std::nullopt;  // modulus-one non-root (cannot happen for true roots)
    }
  }
  return std::nullopt;
}

Cyc Cyc::sqrt_rational(const Rat& r) {
  if (r == 0) return Cyc(0);
  Cyc sign_factor(1);
  Rat v = r;
  if (v < 0) {
    v = -v;
    sign_factor = root_of_unity(4, 1);
  }
  mpz_class num = v.get_num(), den = v.get_den();
  // sqrt(num/den) = sqrt(num*den)/den
  mpz_class m = num * den;
  Cyc acc(Rat(1, den));
  // factor m
  mpz_class rest = m;
  for (mpz_class p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    long e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    mpz_class half = 1;
    for (long i = 0; i < e / 2; ++i) half *= p;
    acc *= Cyc(Rat(half));
    if (e % 2 == 1) {
      long pl = (long)p.get_si();
      if (pl == 2) {
        acc *= root_of_unity(8, 1) + root_of_unity(8, 7);  // sqrt(2)
      } else {
        // quadratic Gauss sum
        Cyc g(0);
        for (long k = 1; k < pl; ++k) {
          long sym = 1;
          {  // Legendre symbol via Euler's criterion
            long acc2 = 1, base = k % pl, e2 = (pl - 1) / 2;
            while (e2) {
              if (e2 & 1) acc2 = (acc2 * base) % pl;
              base = (base * base) % pl;
              e2 >>= 1;
            }
            sym = (acc2 == 1) ? 1 : -1;
          }
          g += Rat(sym) * root_of_unity(pl, k);
        }
        if (pl % 4 == 1)
          acc *= g;  // g = sqrt(p)
        else
          acc *= g * root_of_unity(4, 3);  // g = i sqrt(p)
      }
    }
  }
  if (rest > 1) {
    long pl = (long)rest.get_si();
    if (pl == 2) {
      acc *= root_of_unity(8, 1) + root_of_unity(8, 7);
    } else {
      Cyc g(0);
      for (long k = 1; k < pl; ++k) {
        long acc2 = 1, base = k % pl, e2 = (pl - 1) / 2;
        while (e2) {
          if (e2 & 1) acc2 = (acc2 * base) % pl;
          base = (base * base) % pl;
          e2 >>= 1;
        }
        g += Rat(acc2 == 1 ? 1 : -1) * root_of_unity(pl, k);
      }
      if (pl % 4 == 1)
        acc *= g;
      else
        acc *= g * root_of_unity(4, 3);
    }
  }
  return acc * sign_factor;
}

std::optional<Cyc> Cyc::sqrt() const {
  // Supports values of the form r * E(N)^k with rational r.
  if (is_zero()) return Cyc(0);
  auto m = (*this * conj()).as_rational();
  if (!m) return std::nullopt;
  auto r = sqrt_rational(*m).as_rational();  // |x|, usable only when rational
  if (!r) return std::nullopt;
  Cyc phase = *this / Cyc(*r);
  auto rou = phase.as_root_of_unity();
  if (!rou) return std::nullopt;
  Cyc cand = sqrt_rational(*r) * root_of_unity(2 * rou->first, rou->second);
  if (cand * cand != *this) return std::nullopt;
  std::complex<double> z = cand.to_complex();
  if (z.real() < -1e-12 || (std::abs(z.real()) <= 1e-12 && z.imag() < 0)) cand = -cand;
  return cand;
}

namespace {

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace

std::string Cyc::str() const {
  Cyc c = canonical();
  if (c.n_ == 1) return rat_str(c.c_[0]);
  std::ostringstream os;
  bool first = true;
  for (long j = 0; j < (long)c.c_.size(); ++j) {
    const Rat& v = c.c_[j];
    if (v == 0) continue;
    Rat a = v;
    bool neg = a < 0;
    if (neg) a = -a;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? "-" : "+");
    }
    if (j == 0) {
      os << rat_str(a);
    } else {
      if (a != 1) os << rat_str(a) << "*";
      os << "E(" << c.n_ << ")";
      if (j > 1) os << "^" << j;
    }
  }
  if (first) return "0";
  return os.str();
}

namespace {

struct Parser {
  const std::string& s;
  std::size_t i = 0;
  explicit Parser(const std::string& text) : s(text) {}

  void skip() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool peek(char c) {
    skip();
    return i < s.size() && s[i] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++i;
      return true;
    }
    return false;
  }
  long integer() {
    skip();
    std::size_t start = i;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
    if (i == start) throw ScalarParseError(start, "expected integer");
    return std::stol(s.substr(start, i - start));
  }

  Cyc expr() {
    bool neg = eat('-');
    Cyc acc = term();
    if (neg) acc = -acc;
    while (true) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }
  Cyc term() {
    Cyc acc = factor();
    while (true) {
      if (eat('*'))
        acc *= factor();
      else if (eat('/')) {
        Cyc d = factor();
        if (d.is_zero()) throw ScalarParseError(i, "division by zero");
        acc /= d;
      } else
        break;
    }
    return acc;
  }
  Cyc factor() {
    Cyc base = primary();
    skip();
    if (eat('^')) {
      bool neg = eat('-');
      long e = integer();
      base = base.pow(neg ? -e : e);
    }
    return base;
  }
  Cyc primary() {
    skip();
    if (i >= s.size()) throw ScalarParseError(i, "unexpected end of scalar expression");
    if (s[i] == '(') {
      std::size_t open = i;
      ++i;
      Cyc v = expr();
      if (!eat(')')) throw ScalarParseError(open, "unclosed parenthesis");
      return v;
    }
    if (s[i] == '-') {
      ++i;
      return -primary();
    }
    if (s[i] == 'E') {
      ++i;
      if (!eat('(')) throw ScalarParseError(i, "expected ( after E");
      long n = integer();
      if (!eat(')')) throw ScalarParseError(i, "unclosed parenthesis in E(n)");
      if (n <= 0) throw ScalarParseError(i, "E(n) needs n >= 1");
      return Cyc::root_of_unity(n, 1);
    }
    if (std::isdigit((unsigned char)s[i])) return Cyc(Rat(integer()));
    throw ScalarParseError(i, "unexpected character in scalar expression");
  }
};

}  // namespace

Cyc Cyc::parse(const std::string& text) {
  Parser p(text);
  Cyc v = p.expr();
  p.skip();
  if (p.i != text.size()) throw ScalarParseError(p.i, "trailing characters in scalar expression");
  return v;
}

std::ostream& operator<<(std::ostream& os, const Cyc& x) { return os << x.str(); }

}  // namespace rtp
