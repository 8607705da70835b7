#pragma once

#include <optional>
#include <vector>

#include "ph/algebra.hpp"
#include "ph/vector_automaton.hpp"

namespace ph {

struct LinearSet {
  NVec constant;
  std::vector<NVec> periods;
};

class SemilinearSet {
public:
  SemilinearSet() = default;
  // validates dimensions, rejects zero and repeated periods
  SemilinearSet(size_t dim, std::vector<LinearSet> components, bool unambiguous);

  size_t dim() const { return dim_; }
  const std::vector<LinearSet>& components() const { return comps_; }
  bool unambiguous() const { return unambiguous_; }
  size_t num_periods() const;  // sum of |P_i|
  unsigned norm_inf() const;   // largest entry of any constant or period

  // the whole of N^d: 0 + {e_1..e_d}*
  static SemilinearSet everything(size_t dim);
  friend bool operator==(const SemilinearSet& a, const SemilinearSet& b);

private:
  size_t dim_ = 0;
  std::vector<LinearSet> comps_;
  bool unambiguous_ = true;
};

bool contains(const SemilinearSet& s, const NVec& v);
// every (component, lambda) decomposition of v
std::vector<std::pair<size_t, std::vector<unsigned>>> decompositions(const SemilinearSet& s, const NVec& v);

RatFun characteristic_series(const SemilinearSet& s, const std::vector<std::string>& vars);
RatFun characteristic_series(const SemilinearSet& s);

SemilinearSet concat_product(const SemilinearSet& a, const SemilinearSet& b);

bool check_unambiguous(const SemilinearSet& s, unsigned bound);

VectorAutomaton to_vector_automaton(const SemilinearSet& s);

}  // namespace ph
