#pragma once

#include <optional>
#include <vector>

#include "ph/algebra.hpp"

// exact linear and integer feasibility for small systems A x = b, lo <= x <= hi
namespace ph::lp {

struct Problem {
  size_t nvars = 0;
  std::vector<std::vector<Int>> A;
  std::vector<Int> b;
  std::vector<Int> lo;                 // defaults to 0 when empty
  std::vector<std::optional<Int>> hi;  // defaults to unbounded when empty
};

// a vertex of the polyhedron, or nullopt when it is empty (Bland's rule, two phases)
std::optional<std::vector<Rat>> feasible(const Problem& p);

enum class IntStatus { Found, Infeasible, NodeLimit };

struct IntResult {
  IntStatus status;
  std::vector<Int> x;
};

// depth first branch and bound on the LP relaxation; nodes_left is shared across calls
IntResult integer_solve(const Problem& p, size_t& nodes_left);

// n (m a)^(2m+1): if A x = b has a solution in N^n it has one with entries below this
Int small_solution_bound(const Problem& p);

}  // namespace ph::lp
