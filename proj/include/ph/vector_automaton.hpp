#pragma once

#include <cstddef>
#include <vector>

#include "ph/algebra.hpp"

namespace ph {

using NVec = MultiIndex;  // vector of naturals

struct VTransition {
  size_t from;
  NVec label;
  size_t to;
};

// automaton over nonzero vectors of N^d, no letters
struct VectorAutomaton {
  size_t dim = 0;
  size_t num_states = 0;
  size_t initial = 0;
  std::vector<bool> final;
  std::vector<VTransition> transitions;

  // throws std::invalid_argument on a broken invariant (zero label, bad endpoint, dimension)
  void validate() const;
  unsigned norm_inf() const;  // largest label entry
  size_t max_out_degree() const;
};

}  // namespace ph
