// The Drinfeld centre Z(A) of a symmetric fusion category from skeletal data:
// half-braiding solutions, the convolution product (x)_c, the symmetric
// product (x)_s cut out by the cloaking idempotent, the unit I_s, and exact
// idempotent splitting.

#pragma once

#include <cstdint>
#include <optional>

#include "redtensor/diagram.hpp"
#include "redtensor/splitting.hpp"

namespace rtp {

struct NonProjection : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct HalfBraidingViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
struct CentreObj {
  std::vector<Label> parts;         // underlying object, a sum of simples
  std::map<Label, SumMor<F>> beta;  // per simple x: [x] (x) parts -> parts (x) [x]
  F qdim(const FusionData<F>& A) const {
    F d = FieldOps<F>::zero();
    for (Label p : parts) d += A.dim[p];
    return d;
  }
};

template <class F>
struct CentreCategoryT {
  std::vector<CentreObj<F>> simples;
  std::vector<std::string> names;
  std::vector<std::vector<std::vector<int>>> N;
  std::vector<F> dim, twist;
  ModularDataT<F> md;  // S from traced monodromy, T = twists
  std::size_t rank() const { return simples.size(); }
};

using CentreCategory = CentreCategoryT<Cyc>;

// a subobject cut out of an ambient centre object by an idempotent
template <class F>
struct CentrePiece {
  CentreObj<F> obj;
  Matrix<F> include;  // parts(obj) -> parts(ambient)
  Matrix<F> project;  // parts(ambient) -> parts(obj)
};

template <class F>
class CentreOps {
 public:
  CentreOps(const Engine<F>& eng, std::uint64_t seed = 0);

  const Engine<F>& engine() const { return *eng_; }
  const FusionData<F>& A() const { return eng_->category(); }

  // ---- objects ----
  CentreObj<F> trivial() const;               // unit of (Z(A), (x)_c)
  CentreObj<F> embed_symmetric(Label a) const;  // (a, s), the canonical inclusion
  const CentreObj<F>& unit_s() const;           // I_s, underlying sum of x* x

  // checks the defining equations of a half-braiding; throws
  // HalfBraidingViolation on failure
  void require_valid(const CentreObj<F>& z) const;

  // ---- tensor structures ----
  CentreObj<F> tensor_c(const CentreObj<F>& z1, const CentreObj<F>& z2) const;
  // cloaking sum P before normalization, on the concatenated part words
  SumMor<F> pi_unnormalized(const CentreObj<F>& z1, const CentreObj<F>& z2) const;
  // normalized idempotent (P/lambda from P.P = lambda P); throws NonProjection
  SumMor<F> pi_idempotent(const CentreObj<F>& z1, const CentreObj<F>& z2) const;
  // the image of the cloaking idempotent, decomposed into simples
  std::vector<std::pair<CentreObj<F>, int>> tensor_s(const CentreObj<F>& z1,
                                                     const CentreObj<F>& z2) const;

  // ---- homs and invariants ----
  std::vector<Matrix<F>> zhom(const CentreObj<F>& z1, const CentreObj<F>& z2) const;
  std::size_t zhom_dim(const CentreObj<F>& z1, const CentreObj<F>& z2) const {
    return zhom(z1, z2).size();
  }
  bool isomorphic(const CentreObj<F>& z1, const CentreObj<F>& z2) const;
  F twist_of(const CentreObj<F>& z) const;
  SumMor<F> braiding(const CentreObj<F>& z1, const CentreObj<F>& z2) const;
  F traced_monodromy(const CentreObj<F>& z1, const CentreObj<F>& z2) const;

  // ---- splitting ----
  // split an exact idempotent on a sum of simples into primitive pieces
  std::vector<CentrePiece<F>> split_object(const CentreObj<F>& ambient,
                                           const Matrix<F>& idem) const;
  std::vector<CentrePiece<F>> decompose(const CentreObj<F>& z) const;  // into simples

  // the full centre: seeds (a,s) (x)_c I_s over all simples a, decomposes,
  // deduplicates, and assembles fusion and modular data
  CentreCategoryT<F> centre_simples() const;

  // half-braiding families on an underlying object isomorphic to `o`
  std::vector<CentreObj<F>> half_braiding_space(const ObjectExpr& o) const;

  // A-morphisms between part sums as label-graded matrices
  SumMor<F> part_mor(const std::vector<Label>& src, const std::vector<Label>& dst,
                     const Matrix<F>& m) const;
  Matrix<F> part_matrix(const SumMor<F>& m) const;
  std::vector<Word> part_words(const std::vector<Label>& parts) const;

  std::uint64_t seed() const { return seed_; }

  // half-braiding of z evaluated at a composite object with the given parts:
  // (at_parts) (x) (z.parts) -> (z.parts) (x) (at_parts)
  SumMor<F> beta_at(const CentreObj<F>& z, const std::vector<Label>& at_parts) const;

 private:
  const Engine<F>* eng_;
  std::uint64_t seed_;
  mutable std::optional<CentreObj<F>> unit_s_;

  CentreObj<F> build_unit_s(int ratio_exp, int dy_exp) const;
};

using CentreOpsC = CentreOps<Cyc>;

extern template class CentreOps<Cyc>;
extern template class CentreOps<NumF>;

}  // namespace rtp
