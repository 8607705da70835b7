#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ph/algebra.hpp"
#include "ph/automata.hpp"
#include "ph/limits.hpp"
#include "ph/vector_automaton.hpp"

namespace ph {

// sum_i coeffs[i] * d^i/dz^i f = 0 with z = vars()[var]
struct LinearODE {
  size_t var = 0;
  std::vector<MPoly> coeffs;

  LinearODE() = default;
  LinearODE(size_t v, std::vector<MPoly> c);

  const std::vector<std::string>& vars() const { return coeffs.at(0).vars(); }
  const std::string& var_name() const { return vars().at(var); }
  size_t order() const { return coeffs.size() - 1; }
  void validate() const;  // nonzero leading coefficient, shared variables
  bool is_univariate() const;
  // applies the operator; the result is exact up to cap - order
  TruncatedSeries apply(const TruncatedSeries& f) const;
  bool annihilates(const TruncatedSeries& f) const;
  std::string to_string() const;
  friend bool operator==(const LinearODE&, const LinearODE&) = default;
};

// sum_{k=-s}^{S} t_k(n) u_{n+k} = 0 for n >= n0; t[k+s] lists coefficients of n^0, n^1, ...
struct PRecurrence {
  unsigned s = 0, S = 0;
  std::vector<std::vector<Int>> t;
  unsigned n0 = 0;

  const std::vector<Int>& at(int k) const { return t.at(size_t(k + int(s))); }
  const std::vector<Int>& leading() const { return t.back(); }
  void validate() const;
  static Int eval(const std::vector<Int>& poly, const Int& n);
  // checks every n in [n0, n_max] with n + S inside u
  bool annihilates(const std::vector<Rat>& u, unsigned n_max) const;
  bool annihilates(const std::vector<Int>& u, unsigned n_max) const;
  std::string to_string() const;
  friend bool operator==(const PRecurrence&, const PRecurrence&) = default;
};

// exact below the bit threshold, otherwise only an upper bound on log2
struct BoundValue {
  std::optional<Int> exact;
  Rat log2_upper;

  static BoundValue of(const Int& v, unsigned max_bits);
  static BoundValue log2(const Rat& l) { return {std::nullopt, l}; }
  // true when v <= bound is proven
  bool dominates(const Int& v) const;
  std::string to_string() const;
};

struct BoundEntry {
  std::string name;
  BoundValue bound;
  std::optional<Int> measured;
  bool holds() const { return !measured || bound.dominates(*measured); }
};

struct BoundReport {
  std::vector<BoundEntry> entries;
  std::vector<std::string> notes;

  void add(std::string name, BoundValue b, std::optional<Int> measured = std::nullopt);
  void append(const BoundReport& o, const std::string& prefix);
  bool all_hold() const;
  std::vector<std::string> violations() const;
  const BoundEntry* find(const std::string& name) const;
};

// numerator and denominator from the determinant formula, without cancellation
RatFun gf_vector_automaton(const VectorAutomaton& v, const std::vector<std::string>& vars);
RatFun gf_vector_automaton(const VectorAutomaton& v);
// the two clauses of the conversion lemma measured on f
BoundReport gf_bounds(const VectorAutomaton& v, const RatFun& f, unsigned max_bits = 1u << 20);

// (Abar, Cbar) over (x, y1..yd) with f = Abar ⊙ Cbar the weighted series
std::pair<RatFun, RatFun> weighted_series_factors(const ParikhAutomaton& a);
BoundReport factor_bounds(const ParikhAutomaton& a, const std::pair<RatFun, RatFun>& f, unsigned max_bits = 1u << 20);

struct HadamardResult {
  LinearODE ode;
  BoundReport report;
  std::string method;  // "rational", "ansatz" or "certificate"
};

// an ODE in vars[j] annihilating f1 ⊙ f2 (same variable list, denominators with constant term)
HadamardResult hadamard_ode(const RatFun& f1, const RatFun& f2, size_t j, const HadamardLimits& lim = {},
                            unsigned max_bits = 1u << 20);

// an ODE for a rational function directly
LinearODE rational_ode(const RatFun& f, size_t j);

LinearODE specialize_ode_to_one(const LinearODE& ode, const std::vector<size_t>& vars_to_fix);
BoundReport specialization_bounds(const LinearODE& in, const LinearODE& out, size_t fixed, unsigned max_bits = 1u << 20);

LinearODE ode_sum(const LinearODE& a, const LinearODE& b);
BoundReport sum_bounds(const LinearODE& a, const LinearODE& b, const LinearODE& out, unsigned max_bits = 1u << 20);

PRecurrence ode_to_recurrence(const LinearODE& ode);
BoundReport recurrence_bounds(const LinearODE& ode, const PRecurrence& rec, unsigned max_bits = 1u << 20);

struct PipelineResult {
  LinearODE ode;  // univariate in x
  BoundReport report;
};
PipelineResult pa_ode(const ParikhAutomaton& a, const Limits& lim = {});

struct HadamardInputs {
  unsigned n = 1;   // variables of the two rational functions
  unsigned M = 1;   // maxdegree bound of the F-level polynomials (strict)
  Int S = 1;        // coefficient bound of the inputs
};
struct AutomatonInputs {
  Int size = 1;     // |A|
  Int norm = 1;     // ||A||
};
// N, N*M, the kernel log bound; the factor bounds of a PA when given
BoundReport explicit_bounds(const HadamardInputs& h, const std::optional<AutomatonInputs>& a = std::nullopt,
                            unsigned max_bits = 1u << 20);
Int ansatz_bound_N(unsigned n, unsigned M);

}  // namespace ph
