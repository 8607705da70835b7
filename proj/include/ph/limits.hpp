#pragma once

#include <cstddef>

namespace ph {

struct EmptinessLimits {
  unsigned witness_search_length = 10;  // bounded run search before the exact engine
  size_t max_supports = 20000;          // (state set, spanning tree) pairs
  size_t max_bb_nodes = 20000;          // branch and bound nodes over all supports
};

struct HadamardLimits {
  unsigned max_ansatz = 12;         // largest N' tried for the ansatz
  size_t max_columns = 6000;        // unknowns per linear system
  unsigned max_certificate_degree = 40;
  unsigned max_certificate_order = 4;
  size_t max_certificate_columns = 200000;
  unsigned max_primes = 400;
  double max_seconds = 600;  // checked between linear systems; 0 disables
};

struct Limits {
  EmptinessLimits emptiness;
  HadamardLimits hadamard;
  unsigned count_cap = 40;        // longest length used by count comparisons
  unsigned unambiguity_bound = 6;  // box used to validate constraint presentations
  unsigned bound_bits = 1u << 20;  // bounds above this many bits are reported as log2
};

}  // namespace ph
