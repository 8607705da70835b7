#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ph/limits.hpp"
#include "ph/semilinear.hpp"
#include "ph/vector_automaton.hpp"

namespace ph {

using Letter = unsigned;
using Word = std::vector<Letter>;

// A semilinear set, possibly read through a linear map: n is accepted iff
// sum_i n_i * map[i] lies in base. Without a map the dimension is base.dim().
struct Constraint {
  SemilinearSet base;
  std::optional<std::vector<NVec>> map;  // one column of dimension base.dim() per coordinate

  Constraint() = default;
  Constraint(SemilinearSet s) : base(std::move(s)) {}  // NOLINT implicit on purpose
  Constraint(SemilinearSet s, std::vector<NVec> columns);

  size_t dim() const { return map ? map->size() : base.dim(); }
  bool is_plain() const { return !map.has_value(); }
  NVec apply(const NVec& n) const;
  bool contains(const NVec& n) const;
  friend bool operator==(const Constraint& a, const Constraint& b);
};

Constraint concat_product(const Constraint& a, const Constraint& b);

struct PATransition {
  size_t from;
  Letter letter;
  NVec vec;
  size_t to;
  friend bool operator==(const PATransition&, const PATransition&) = default;
};

struct ParikhAutomaton {
  std::vector<std::string> alphabet;
  size_t num_states = 0;
  size_t initial = 0;
  std::vector<bool> final;
  Constraint constraint;
  std::vector<PATransition> transitions;

  size_t dim() const { return constraint.dim(); }
  void validate() const;
  unsigned norm_inf() const;  // ||A||: largest entry of vectors, constants and periods
  size_t size() const;        // |Q| + |Delta| + p + sum |P_i|
  std::string spell(const Word& w) const;
  Word parse_word(const std::string& s) const;  // letters must be single characters
  friend bool operator==(const ParikhAutomaton&, const ParikhAutomaton&) = default;
};

// a run as the list of transition indices it uses
using Run = std::vector<size_t>;

std::vector<Run> accepts(const ParikhAutomaton& a, const Word& w);

class CountTable {
public:
  CountTable(size_t num_states, NVec caps) : num_states_(num_states), caps_(std::move(caps)) {}
  const Int& at(size_t state, const NVec& v) const;
  const NVec& caps() const { return caps_; }
  // nonzero entries, lexicographic order of vectors
  const std::map<NVec, std::vector<Int>>& entries() const { return table_; }
  std::map<NVec, std::vector<Int>>& entries() { return table_; }

private:
  size_t num_states_;
  NVec caps_;
  std::map<NVec, std::vector<Int>> table_;
};

CountTable count_vectors(const VectorAutomaton& v, unsigned K);
CountTable count_vectors(const VectorAutomaton& v, const NVec& caps);

// the (d+1)-dimensional vector automaton of runs: (1, vec) per transition
VectorAutomaton run_vector_automaton(const ParikhAutomaton& a);

std::vector<Int> count_words(const ParikhAutomaton& a, unsigned n);
std::vector<Int> brute_force_count(const ParikhAutomaton& a, unsigned n);
// number of accepting runs of w, by configuration multiset simulation
Int count_runs(const ParikhAutomaton& a, const Word& w);
// every word of length <= n with at least one accepting run
std::vector<Word> accepted_words(const ParikhAutomaton& a, unsigned n);

ParikhAutomaton intersect(const ParikhAutomaton& a, const ParikhAutomaton& b);
ParikhAutomaton ambiguity_product(const ParikhAutomaton& a);

struct EmptinessResult {
  enum class Kind { Empty, NonEmpty, ResourceExceeded } kind;
  std::optional<Run> witness_run;
  std::optional<Word> witness;
  std::string detail;           // which stage decided, and the small-solution bound used
  std::string solution_bound;   // decimal, "" when the exact engine was not needed
  size_t supports_examined = 0;
};

EmptinessResult pa_is_empty(const ParikhAutomaton& a, const EmptinessLimits& limits = {});

struct UnambiguityResult {
  enum class Kind { Yes, No, ResourceExceeded } kind;
  std::optional<Word> witness;
  std::string detail;
};

UnambiguityResult is_weakly_unambiguous(const ParikhAutomaton& a, const EmptinessLimits& limits = {});

ParikhAutomaton normalize_unit_vectors(const ParikhAutomaton& a);

struct RCMTransition {
  size_t from;
  Letter letter;  // index into gamma
  size_t to;
  friend bool operator==(const RCMTransition&, const RCMTransition&) = default;
};

struct RCM {
  std::vector<std::string> gamma;
  std::vector<std::string> sigma;
  std::vector<Letter> morphism;  // gamma index -> sigma index
  size_t num_states = 0;
  size_t initial = 0;
  std::vector<bool> final;
  std::vector<RCMTransition> transitions;
  Constraint constraint;  // dimension |gamma|

  void validate() const;
  friend bool operator==(const RCM&, const RCM&) = default;
};

ParikhAutomaton rcm_to_pa(const RCM& r);
RCM pa_to_rcm(const ParikhAutomaton& a);

}  // namespace ph
