// Exact evaluation of string diagrams as matrices between fusion-tree bases.
//
// Words are tensor words of simple labels; every hom-space carries the basis
// of left-comb fusion trees, enumerated in lexicographic order of the
// (intermediate label, multiplicity index) sequence.  A morphism is stored as
// one matrix per root simple, and composition is block matrix multiplication
// (tree bases are biorthonormal by convention; all recoupling sits in the
// bridge matrices built from F-moves).

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "redtensor/fusion.hpp"

namespace rtp {

struct Word {
  std::vector<Label> ls;
  Word() = default;
  Word(std::initializer_list<Label> l) : ls(l) {}
  explicit Word(std::vector<Label> l) : ls(std::move(l)) {}
  std::size_t size() const { return ls.size(); }
  bool operator==(const Word& o) const { return ls == o.ls; }
  bool operator<(const Word& o) const { return ls < o.ls; }
  Word concat(const Word& o) const {
    Word w = *this;
    w.ls.insert(w.ls.end(), o.ls.begin(), o.ls.end());
    return w;
  }
};

// left-comb fusion tree: the (intermediate, multiplicity) steps after the
// first strand; empty for words of length <= 1
struct TreePath {
  std::vector<std::pair<Label, int>> steps;
  bool operator<(const TreePath& o) const { return steps < o.steps; }
  bool operator==(const TreePath& o) const { return steps == o.steps; }
};

struct TypeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownLabel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
struct Mor {
  Word src, dst;
  std::map<Label, Matrix<F>> blk;  // root simple -> dim(dst,root) x dim(src,root)

  bool is_zero() const {
    for (auto& [s, m] : blk)
      if (!m.is_zero()) return false;
    return true;
  }
  bool operator==(const Mor& o) const;
  bool operator!=(const Mor& o) const { return !(*this == o); }
  Mor operator+(const Mor& o) const;
  Mor operator-(const Mor& o) const;
  Mor scaled(const F& s) const {
    Mor m = *this;
    for (auto& [r, b] : m.blk) b = b.scaled(s);
    return m;
  }
};

// morphism between formal direct sums of words
template <class F>
struct SumMor {
  std::vector<Word> src, dst;
  std::vector<std::vector<Mor<F>>> blk;  // blk[i][j]: dst[i] <- src[j]

  static SumMor from(Mor<F> m) {
    SumMor s;
    s.src = {m.src};
    s.dst = {m.dst};
    s.blk = {{std::move(m)}};
    return s;
  }
  bool is_zero() const {
    for (auto& row : blk)
      for (auto& m : row)
        if (!m.is_zero()) return false;
    return true;
  }
  bool operator==(const SumMor& o) const;
  bool operator!=(const SumMor& o) const { return !(*this == o); }
  SumMor operator+(const SumMor& o) const;
  SumMor operator-(const SumMor& o) const;
  SumMor scaled(const F& s) const {
    SumMor m = *this;
    for (auto& row : m.blk)
      for (auto& b : row) b = b.scaled(s);
    return m;
  }
};

// diagram DSL / AST ----------------------------------------------------------

struct DiagramParseError : std::runtime_error {
  std::size_t line, col;
  DiagramParseError(std::size_t l, std::size_t c, const std::string& m)
      : std::runtime_error("syntax error at line " + std::to_string(l) + ", column " +
                           std::to_string(c) + ": " + m),
        line(l),
        col(c) {}
};

struct DiagramTerm {
  enum class Kind { Id, Compose, Tensor, Braid, BraidInv, Ev, Coev, Prim };
  Kind kind = Kind::Id;
  std::vector<std::string> word;      // Id
  std::string a, b;                   // Braid/BraidInv (a,b) and Ev/Coev (a)
  std::string prim_name;              // Prim
  std::vector<DiagramTerm> children;  // Compose (applied left to right), Tensor
};

DiagramTerm parse_diagram(const std::string& text);

// the evaluator --------------------------------------------------------------

template <class F>
class Engine {
 public:
  explicit Engine(const FusionData<F>& cat);

  const FusionData<F>& category() const { return *C_; }

  const std::vector<TreePath>& trees(const Word& w, Label s) const;
  std::size_t treedim(const Word& w, Label s) const { return trees(w, s).size(); }
  std::size_t homdim(const Word& src, const Word& dst) const;
  long tree_index(const Word& w, Label s, const TreePath& p) const;

  Mor<F> zero(const Word& src, const Word& dst) const;
  Mor<F> identity(const Word& w) const;
  Mor<F> compose(const Mor<F>& g, const Mor<F>& f) const;  // g after f
  Mor<F> tensor(const Mor<F>& f, const Mor<F>& g) const;
  Mor<F> braid(Label a, Label b) const;      // [a,b] -> [b,a]
  Mor<F> braid_inv(Label a, Label b) const;  // [b,a] -> [a,b], inverse morphism of braid
  Mor<F> ev(Label a) const;                  // [a, a*] -> []
  Mor<F> coev(Label a) const;                // [] -> [a, a*]
  Mor<F> ev_left(Label a) const;             // [a*, a] -> []
  Mor<F> coev_left(Label a) const;           // [] -> [a*, a]
  Mor<F> inverse(const Mor<F>& f) const;     // blockwise inverse, throws if singular

  // braiding of composite words, built strandwise
  Mor<F> braid_word(const Word& u, const Word& v) const;      // u v -> v u
  Mor<F> braid_word_inv(const Word& u, const Word& v) const;  // u v -> v u, inverse crossing

  F trace(const Mor<F>& f) const;  // quantum trace of an endomorphism
  Mor<F> ptrace_right(const Mor<F>& f) const;  // traces out the last strand

  // basis morphisms: the tree projection w -> [s] and inclusion [s] -> w
  Mor<F> tree_project(const Word& w, Label s, std::size_t idx) const;
  Mor<F> tree_include(const Word& w, Label s, std::size_t idx) const;

  // sum-level operations
  SumMor<F> identity(const std::vector<Word>& ws) const;
  SumMor<F> compose(const SumMor<F>& g, const SumMor<F>& f) const;
  SumMor<F> tensor(const SumMor<F>& f, const SumMor<F>& g) const;
  SumMor<F> zero_sum(const std::vector<Word>& src, const std::vector<Word>& dst) const;
  F trace_sum(const SumMor<F>& f) const;               // quantum trace, src == dst
  SumMor<F> ptrace_right_sum(const SumMor<F>& f) const;  // trace out last strands

  // flatten a SumMor into a coefficient vector and back (fixed basis order)
  std::vector<std::pair<std::array<std::size_t, 2>, std::array<std::size_t, 3>>> sum_basis(
      const std::vector<Word>& src, const std::vector<Word>& dst) const;
  Matrix<F> sum_to_vec(const SumMor<F>& m) const;
  SumMor<F> vec_to_sum(const std::vector<Word>& src, const std::vector<Word>& dst,
                       const Matrix<F>& v) const;

  // normal form: a direct sum of words decomposed into simple parts
  struct Normalized {
    std::vector<Label> parts;       // simple labels with repetition
    SumMor<F> include;              // parts (as single-label words) -> words
    SumMor<F> project;              // words -> parts
  };
  Normalized normalize(const std::vector<Word>& ws) const;

  Mor<F> evaluate(const DiagramTerm& t,
                  const std::map<std::string, Mor<F>>* prims = nullptr) const;

 private:
  const FusionData<F>* C_;
  std::vector<F> evl_, coevl_, evr_, coevr_;  // calibrated cap/cup scales

  struct Bridge {
    // per root simple: rows = trees(u.v, s), cols = (p, t_u, q, t_v, mu)
    std::map<Label, Matrix<F>> fwd;
    std::map<Label, Matrix<F>> inv;
    // column enumeration: list of (p, iu, q, iv, mu)
    std::map<Label, std::vector<std::array<long, 5>>> cols;
    std::map<Label, std::map<std::array<long, 5>, long>> col_index;
  };
  const Bridge& bridge(const Word& u, const Word& v) const;

  mutable std::map<std::pair<std::vector<Label>, Label>, std::vector<TreePath>> tree_cache_;
  mutable std::map<std::pair<std::vector<Label>, std::vector<Label>>, Bridge> bridge_cache_;
  mutable std::mutex mutex_;

  void calibrate();
  F raw_zigzag(Label a, bool left_pair, bool on_first) const;
};

using DiagramEngine = Engine<Cyc>;

extern template class Engine<Cyc>;
extern template class Engine<NumF>;
extern template struct Mor<Cyc>;
extern template struct Mor<NumF>;
extern template struct SumMor<Cyc>;
extern template struct SumMor<NumF>;

}  // namespace rtp
