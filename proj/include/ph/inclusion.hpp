#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "ph/automata.hpp"
#include "ph/holonomic.hpp"
#include "ph/limits.hpp"

namespace ph {

struct AmbiguityError : std::runtime_error {
  Word witness;
  AmbiguityError(const std::string& what, Word w) : std::runtime_error(what), witness(std::move(w)) {}
};

struct DifferenceRecurrence {
  LinearODE ode;  // annihilates A(x) - C(x)
  PRecurrence rec;
  BoundReport report;
};

// recurrence for d_n = #L(a)_n - #(L(a) ∩ L(b))_n; both automata must be weakly unambiguous
DifferenceRecurrence difference_recurrence(const ParikhAutomaton& a, const ParikhAutomaton& b, const Limits& lim = {});

struct WitnessBound {
  Int formula;     // s + S + ||t_S|| + 1
  Int refined;     // s + S + (largest nonnegative integer root of t_S) + 1, or s + S without roots
  bool root_scan;  // false when the scan was skipped and refined = formula
};
WitnessBound witness_bound(const PRecurrence& rec);

struct InclusionCertificate {
  PRecurrence recurrence;
  WitnessBound W;
  BoundReport report;
  std::string note;
};

struct InclusionVerdict {
  enum class Kind { Included, NotIncluded, Inconclusive } kind;
  std::string mode;          // "self", "certified", "counting"
  unsigned checked_up_to = 0;
  std::optional<InclusionCertificate> certificate;
  std::optional<unsigned> witness_length;
  std::optional<Word> witness_word;
  std::string reason;
};

InclusionVerdict decide_inclusion(const ParikhAutomaton& a, const ParikhAutomaton& b, unsigned cap,
                                  const Limits& lim = {});

}  // namespace ph
