#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ph/algebra.hpp"

namespace ph {

// sparse integer column: (row, value) pairs, rows unique
using SparseColumn = std::vector<std::pair<uint32_t, Int>>;

struct Dependency {
  size_t column = 0;     // the first dependent column at or after first_main
  std::vector<Int> v;    // primitive integer kernel vector, v[column] > 0, zero on later columns
  unsigned primes_used = 0;
};

struct KernelLimits {
  unsigned max_primes = 400;
};

// Finds the first column index c >= first_main that is a rational linear combination of
// the columns before it, and returns the exact kernel vector of that relation.
// Columns before first_main are helpers: they may appear in the relation but are never
// reported as the dependent column. Candidate relations are located modulo word-size primes
// and accepted only after exact verification over Z.
std::optional<Dependency> first_dependency(const std::vector<SparseColumn>& cols, size_t first_main,
                                           const KernelLimits& lim = {});

// rank of the column set modulo a fixed prime (a lower bound for the rank over Q)
size_t rank_mod_prime(const std::vector<SparseColumn>& cols);

// exact check of sum v_j col_j = 0
bool verify_kernel(const std::vector<SparseColumn>& cols, const std::vector<Int>& v);

// r/s with |r|,s <= sqrt(m/2) and r = a s mod m, if one exists
std::optional<Rat> rational_reconstruct(const Int& a, const Int& m);

}  // namespace ph
