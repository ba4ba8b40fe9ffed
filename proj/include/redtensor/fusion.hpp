// Skeletal fusion-category data: simple labels, fusion multiplicities N,
// F- and R-symbols with multiplicity indices, quantum dimensions and twists,
// plus axiom verification and modular-data extraction.
//
// Conventions (fixed project-wide):
//   * F^{abc}_d relates the two bracketings of a*b*c fused into d:
//       |(ab)_e c -> d; alpha: ab->e, beta: ec->d>
//         = sum_{f,mu,nu} [F^{abc}_d]_{(e,alpha,beta),(f,mu,nu)}
//             |a (bc)_f -> d; mu: bc->f, nu: af->d>
//   * R^{ab}_c is the braiding a (x) b -> b (x) a on fusion channel c, with
//     "a passes over b"; the monodromy of (a,b) on c is R^{ba}_c R^{ab}_c.
//   * F- and R-entries with a unit leg are identity matrices and are not
//     stored.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "redtensor/linalg.hpp"

namespace rtp {

using Label = int;

// formal non-negative-integer combination of simple labels
struct ObjectExpr {
  std::map<Label, long> mult;

  ObjectExpr() = default;
  static ObjectExpr simple(Label a) {
    ObjectExpr e;
    e.mult[a] = 1;
    return e;
  }
  bool is_zero() const;
  long multiplicity(Label a) const {
    auto it = mult.find(a);
    return it == mult.end() ? 0 : it->second;
  }
  ObjectExpr operator+(const ObjectExpr& o) const;
  bool operator==(const ObjectExpr& o) const { return mult == o.mult; }
};

struct Violation {
  std::string axiom;
  std::vector<std::string> labels;
  std::string residual;  // canonical scalar expression (or numeric in float mode)
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string str() const;  // one line per violation
};

struct MissingSymbol : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroGlobalDimension : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
struct ModularDataT {
  std::size_t rank = 0;
  Matrix<F> S;             // normalized: S S^{*T} = 1 when modular
  std::vector<F> T;        // twist diagonal
  F gauss_sum;
  bool modular = false;
  std::optional<Rat> central_charge;  // mod 8; exact in exact mode
};

template <class F>
struct FusionData {
  std::string name;
  std::vector<std::string> labels;
  Label unit = 0;
  std::vector<Label> dual;
  std::vector<std::vector<std::vector<int>>> N;  // N[a][b][c]
  std::map<std::array<Label, 6>, Matrix<F>> Fsym;
  std::map<std::array<Label, 3>, Matrix<F>> Rsym;
  std::vector<F> dim;
  std::vector<F> twist;  // empty when not braided
  bool braided = false;
  bool symmetric = false;

  std::size_t rank() const { return labels.size(); }
  int n(Label a, Label b, Label c) const { return N[a][b][c]; }
  Label dual_of(Label a) const { return dual[a]; }
  Label label_index(const std::string& s) const;

  std::vector<Label> channels(Label a, Label b) const {
    std::vector<Label> out;
    for (Label c = 0; c < (Label)rank(); ++c)
      if (N[a][b][c] > 0) out.push_back(c);
    return out;
  }

  // full F-matrix for (a,b,c;d), including synthesized unit-leg identities;
  // rows indexed by (e, alpha, beta), columns by (f, mu, nu), both in
  // lexicographic order (e ascending, then alpha, then beta).
  Matrix<F> fmatrix(Label a, Label b, Label c, Label d) const;
  // single block of fmatrix
  Matrix<F> fsym(Label a, Label b, Label c, Label d, Label e, Label f) const;
  // R-matrix on channel c (mult x mult), unit legs synthesized
  Matrix<F> rsym(Label a, Label b, Label c) const;

  // row/column enumeration helpers for fmatrix
  std::vector<std::tuple<Label, int, int>> f_rows(Label a, Label b, Label c, Label d) const;
  std::vector<std::tuple<Label, int, int>> f_cols(Label a, Label b, Label c, Label d) const;

  F global_dim2() const {  // sum of squared quantum dimensions
    F s = FieldOps<F>::zero();
    for (const F& d : dim) s += d * d;
    return s;
  }
};

using FusionCategory = FusionData<Cyc>;

// exhaustive axiom verification; empty report iff valid
template <class F>
ValidationReport validate(const FusionData<F>& C);

// ribbon twists from R-symbols: theta_a = d_a^{-1} sum_c d_c tr R^{aa}_c
template <class F>
std::vector<F> twists_from_R(const FusionData<F>& C);

// S, T, Gauss sum, central charge via the balancing formula
template <class F>
ModularDataT<F> modular_data_balancing(const FusionData<F>& C);

// labels with trivial monodromy against every simple
template <class F>
std::vector<Label> mueger_centre(const FusionData<F>& C);

// numeric twin of a category, for float-mode cross-checks
FusionData<NumF> to_numeric(const FusionCategory& C);

// central charge mod 8 from the Gauss sum and the global dimension
std::optional<Rat> central_charge_exact(const Cyc& gauss, const Cyc& dim2);
std::optional<Rat> central_charge_numeric(const NumF& gauss);

using ModularData = ModularDataT<Cyc>;

// residual rendering
inline std::string residual_str(const Cyc& x) { return x.canonical().str(); }
std::string residual_str(const NumF& x);

extern template struct FusionData<Cyc>;
extern template struct FusionData<NumF>;
extern template ValidationReport validate<Cyc>(const FusionData<Cyc>&);
extern template ValidationReport validate<NumF>(const FusionData<NumF>&);
extern template std::vector<Cyc> twists_from_R<Cyc>(const FusionData<Cyc>&);
extern template std::vector<NumF> twists_from_R<NumF>(const FusionData<NumF>&);
extern template ModularDataT<Cyc> modular_data_balancing<Cyc>(const FusionData<Cyc>&);
extern template ModularDataT<NumF> modular_data_balancing<NumF>(const FusionData<NumF>&);
extern template std::vector<Label> mueger_centre<Cyc>(const FusionData<Cyc>&);
extern template std::vector<Label> mueger_centre<NumF>(const FusionData<NumF>&);

}  // namespace rtp
