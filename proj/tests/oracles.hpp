// Test-side oracles, independent of the library's exact evaluation paths.
// Everything here works on complex doubles with explicit loops.

#pragma once

#include <complex>
#include <map>
#include <vector>

#include "redtensor/fusion.hpp"

namespace oracle {

using C = std::complex<double>;
using rtp::FusionCategory;
using rtp::Label;

struct NumCat {
  int rank;
  int unit;
  std::vector<int> dual;
  std::vector<std::vector<std::vector<int>>> N;
  std::map<std::array<int, 6>, C> F;  // multiplicity-free
  std::map<std::array<int, 3>, C> R;
  std::vector<C> d;
  std::vector<C> theta;
};

inline NumCat numeric_of(const FusionCategory& cat) {
  NumCat n;
  n.rank = (int)cat.rank();
  n.unit = cat.unit;
  n.dual = cat.dual;
  n.N = cat.N;
  for (auto& [k, m] : cat.Fsym) n.F[k] = m.at(0, 0).to_complex();
  for (auto& [k, m] : cat.Rsym) n.R[k] = m.at(0, 0).to_complex();
  for (auto& x : cat.dim) n.d.push_back(x.to_complex());
  for (auto& x : cat.twist) n.theta.push_back(x.to_complex());
  return n;
}

inline C fval(const NumCat& n, int a, int b, int c, int d, int e, int f) {
  if ((std::size_t)n.N[a][b][e] * n.N[e][c][d] == 0) return 0.0;
  if ((std::size_t)n.N[b][c][f] * n.N[a][f][d] == 0) return 0.0;
  if (a == n.unit || b == n.unit || c == n.unit) return 1.0;
  auto it = n.F.find({a, b, c, d, e, f});
  return it == n.F.end() ? C(0.0) : it->second;
}

inline C rval(const NumCat& n, int a, int b, int c) {
  if (n.N[a][b][c] == 0) return 0.0;
  if (a == n.unit || b == n.unit) return 1.0;
  auto it = n.R.find({a, b, c});
  return it == n.R.end() ? C(0.0) : it->second;
}

// largest pentagon residual over all label tuples (multiplicity-free data)
inline double pentagon_residual(const NumCat& n) {
  double worst = 0.0;
  for (int a = 0; a < n.rank; ++a)
    for (int b = 0; b < n.rank; ++b)
      for (int c = 0; c < n.rank; ++c)
        for (int d = 0; d < n.rank; ++d)
          for (int E = 0; E < n.rank; ++E)
            for (int e1 = 0; e1 < n.rank; ++e1) {
              if (!n.N[a][b][e1]) continue;
              for (int e2 = 0; e2 < n.rank; ++e2) {
                if (!n.N[e1][c][e2] || !n.N[e2][d][E]) continue;
                for (int f1 = 0; f1 < n.rank; ++f1)
                  for (int f2 = 0; f2 < n.rank; ++f2) {
                    if (!n.N[c][d][f1] || !n.N[b][f1][f2] || !n.N[a][f2][E]) continue;
                    C lhs = fval(n, e1, c, d, E, e2, f1) * fval(n, a, b, f1, E, e1, f2);
                    C rhs = 0.0;
                    for (int h = 0; h < n.rank; ++h) {
                      if (!n.N[b][c][h]) continue;
                      rhs += fval(n, a, b, c, e2, e1, h) * fval(n, a, h, d, E, e2, f2) *
                             fval(n, b, c, d, f2, h, f1);
                    }
                    worst = std::max(worst, std::abs(lhs - rhs));
                  }
              }
            }
  return worst;
}

// largest residual of both hexagon equations
inline double hexagon_residual(const NumCat& n) {
  double worst = 0.0;
  for (int sign = 0; sign < 2; ++sign) {
    auto braid = [&](int x, int y, int ch) {
      return sign == 0 ? rval(n, x, y, ch) : C(1.0) / rval(n, y, x, ch);
    };
    for (int c = 0; c < n.rank; ++c)
      for (int a = 0; a < n.rank; ++a)
        for (int b = 0; b < n.rank; ++b)
          for (int d = 0; d < n.rank; ++d)
            for (int e = 0; e < n.rank; ++e) {
              if (!n.N[c][a][e] || !n.N[e][b][d]) continue;
              for (int g = 0; g < n.rank; ++g) {
                if (!n.N[b][c][g] || !n.N[a][g][d]) continue;
                C lhs = 0.0;
                for (int f = 0; f < n.rank; ++f) {
                  if (!n.N[a][b][f] || !n.N[c][f][d]) continue;
                  lhs += fval(n, c, a, b, d, e, f) * braid(c, f, d) * fval(n, a, b, c, d, f, g);
                }
                C rhs = 0.0;
                if (n.N[a][c][e] && n.N[c][b][g])
                  rhs = braid(c, a, e) * fval(n, a, c, b, d, e, g) * braid(c, b, g);
                worst = std::max(worst, std::abs(lhs - rhs));
              }
            }
  }
  return worst;
}

inline std::vector<C> twists_numeric(const NumCat& n) {
  std::vector<C> th(n.rank, 0.0);
  for (int a = 0; a < n.rank; ++a) {
    C s = 0.0;
    for (int c = 0; c < n.rank; ++c)
      if (n.N[a][a][c]) s += n.d[c] * rval(n, a, a, c);
    th[a] = s / n.d[a];
  }
  return th;
}

inline std::vector<std::vector<C>> smatrix_numeric(const NumCat& n) {
  C dim2 = 0.0;
  for (auto x : n.d) dim2 += x * x;
  C D = std::sqrt(dim2);
  auto th = twists_numeric(n);
  std::vector<std::vector<C>> S(n.rank, std::vector<C>(n.rank, 0.0));
  for (int a = 0; a < n.rank; ++a)
    for (int b = 0; b < n.rank; ++b) {
      C s = 0.0;
      int bd = n.dual[b];
      for (int c = 0; c < n.rank; ++c)
        if (n.N[a][bd][c]) s += (double)n.N[a][bd][c] * n.d[c] * th[c];
      S[a][b] = s / (th[a] * th[b] * D);
    }
  return S;
}

// independent Z2 anyon condensation on modular data (S, T, fusion), used as
// the oracle for the reduced-product fixtures.  `boson` must be a transparent
// boson of the subtheory being condensed; returns (dims, twists) multisets of
// the condensed theory plus its fusion rules, computed by orbit/fixed-point
// combinatorics for an order-2 boson with d = 1.
struct CondensedTheory {
  int rank;
  std::vector<double> dims;
  std::vector<C> twists;
  // fusion of condensed simples, indices into the rank list
  std::vector<std::vector<std::vector<int>>> N;
};

}  // namespace oracle
