#include "ph/semilinear.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace ph {

void VectorAutomaton::validate() const {
  if (initial >= num_states) throw std::invalid_argument("vector automaton: initial state out of range");
  if (final.size() != num_states) throw std::invalid_argument("vector automaton: final flags size");
  for (auto& t : transitions) {
    if (t.from >= num_states || t.to >= num_states)
      throw std::invalid_argument("vector automaton: transition endpoint out of range");
    if (t.label.size() != dim) throw std::invalid_argument("vector automaton: label dimension");
    if (std::all_of(t.label.begin(), t.label.end(), [](unsigned x) { return x == 0; }))
      throw std::invalid_argument("vector automaton: zero label");
  }
}

unsigned VectorAutomaton::norm_inf() const {
  unsigned m = 0;
  for (auto& t : transitions) m = std::max(m, max_degree(t.label));
  return m;
}

size_t VectorAutomaton::max_out_degree() const {
  std::vector<size_t> deg(num_states, 0);
  for (auto& t : transitions) ++deg[t.from];
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

namespace {

bool is_zero(const NVec& v) {
  return std::all_of(v.begin(), v.end(), [](unsigned x) { return x == 0; });
}

// enumerate lambda with c + sum lambda_i p_i = v
void search(const std::vector<NVec>& periods, size_t i, NVec& rest, std::vector<unsigned>& lambda,
            const std::function<bool(const std::vector<unsigned>&)>& found) {
  if (i == periods.size()) {
    if (is_zero(rest)) found(lambda);
    return;
  }
  const NVec& p = periods[i];
  unsigned k = 0;
  while (true) {
    lambda[i] = k;
    search(periods, i + 1, rest, lambda, found);
    bool fits = true;
    for (size_t j = 0; j < p.size() && fits; ++j) fits = rest[j] >= p[j];
    if (!fits) break;
    for (size_t j = 0; j < p.size(); ++j) rest[j] -= p[j];
    ++k;
  }
  for (size_t j = 0; j < p.size(); ++j) rest[j] += k * p[j];
  lambda[i] = 0;
}

}  // namespace

SemilinearSet::SemilinearSet(size_t dim, std::vector<LinearSet> components, bool unambiguous)
    : dim_(dim), comps_(std::move(components)), unambiguous_(unambiguous) {
  for (auto& c : comps_) {
    if (c.constant.size() != dim_) throw std::invalid_argument("semilinear set: constant dimension");
    std::set<NVec> seen;
    for (auto& p : c.periods) {
      if (p.size() != dim_) throw std::invalid_argument("semilinear set: period dimension");
      if (is_zero(p)) throw std::invalid_argument("semilinear set: zero period vector");
      if (!seen.insert(p).second) throw std::invalid_argument("semilinear set: repeated period");
    }
  }
}

size_t SemilinearSet::num_periods() const {
  size_t n = 0;
  for (auto& c : comps_) n += c.periods.size();
  return n;
}

unsigned SemilinearSet::norm_inf() const {
  unsigned m = 0;
  for (auto& c : comps_) {
    m = std::max(m, max_degree(c.constant));
    for (auto& p : c.periods) m = std::max(m, max_degree(p));
  }
  return m;
}

SemilinearSet SemilinearSet::everything(size_t dim) {
  LinearSet l{NVec(dim, 0), {}};
  for (size_t i = 0; i < dim; ++i) {
    NVec e(dim, 0);
    e[i] = 1;
    l.periods.push_back(e);
  }
  return SemilinearSet(dim, {l}, true);
}

bool operator==(const SemilinearSet& a, const SemilinearSet& b) {
  if (a.dim_ != b.dim_ || a.unambiguous_ != b.unambiguous_ || a.comps_.size() != b.comps_.size()) return false;
  for (size_t i = 0; i < a.comps_.size(); ++i)
    if (a.comps_[i].constant != b.comps_[i].constant || a.comps_[i].periods != b.comps_[i].periods) return false;
  return true;
}

std::vector<std::pair<size_t, std::vector<unsigned>>> decompositions(const SemilinearSet& s, const NVec& v) {
  if (v.size() != s.dim()) throw std::invalid_argument("semilinear set: dimension mismatch");
  std::vector<std::pair<size_t, std::vector<unsigned>>> out;
  for (size_t i = 0; i < s.components().size(); ++i) {
    const LinearSet& l = s.components()[i];
    NVec rest = v;
    bool ok = true;
    for (size_t j = 0; j < v.size() && ok; ++j) {
      ok = v[j] >= l.constant[j];
      if (ok) rest[j] = v[j] - l.constant[j];
    }
    if (!ok) continue;
    std::vector<unsigned> lambda(l.periods.size(), 0);
    search(l.periods, 0, rest, lambda, [&](const std::vector<unsigned>& lam) {
      out.emplace_back(i, lam);
      return true;
    });
  }
  return out;
}

bool contains(const SemilinearSet& s, const NVec& v) { return !decompositions(s, v).empty(); }

RatFun characteristic_series(const SemilinearSet& s, const std::vector<std::string>& vars) {
  if (!s.unambiguous()) throw std::invalid_argument("characteristic_series: ambiguous presentation");
  if (vars.size() != s.dim()) throw std::invalid_argument("characteristic_series: variable count");
  // common denominator: product over the distinct period vectors
  std::vector<NVec> distinct;
  for (auto& c : s.components())
    for (auto& p : c.periods)
      if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) distinct.push_back(p);
  auto factor = [&](const NVec& p) { return MPoly::constant(vars, 1) - MPoly::monomial(vars, p); };
  MPoly den = MPoly::constant(vars, 1);
  for (auto& p : distinct) den = den * factor(p);
  MPoly num(vars);
  for (auto& c : s.components()) {
    MPoly t = MPoly::monomial(vars, c.constant);
    for (auto& p : distinct)
      if (std::find(c.periods.begin(), c.periods.end(), p) == c.periods.end()) t = t * factor(p);
    num += t;
  }
  return RatFun(num, den);
}

RatFun characteristic_series(const SemilinearSet& s) { return characteristic_series(s, make_vars("y", s.dim())); }

SemilinearSet concat_product(const SemilinearSet& a, const SemilinearSet& b) {
  const size_t d = a.dim() + b.dim();
  std::vector<LinearSet> comps;
  for (auto& ca : a.components()) {
    for (auto& cb : b.components()) {
      LinearSet l;
      l.constant = ca.constant;
      l.constant.insert(l.constant.end(), cb.constant.begin(), cb.constant.end());
      for (auto& p : ca.periods) {
        NVec q = p;
        q.resize(d, 0);
        l.periods.push_back(q);
      }
      for (auto& p : cb.periods) {
        NVec q(a.dim(), 0);
        q.insert(q.end(), p.begin(), p.end());
        l.periods.push_back(q);
      }
      comps.push_back(std::move(l));
    }
  }
  return SemilinearSet(d, std::move(comps), a.unambiguous() && b.unambiguous());
}

bool check_unambiguous(const SemilinearSet& s, unsigned bound) {
  std::map<NVec, unsigned> hits;
  for (auto& l : s.components()) {
    if (max_degree(l.constant) > bound) continue;
    // all lambda with c + sum lambda p inside the box
    std::vector<unsigned> lambda(l.periods.size(), 0);
    NVec cur = l.constant;
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
      if (i == l.periods.size()) return ++hits[cur] < 2;
      const NVec& p = l.periods[i];
      unsigned k = 0;
      bool ok = true;
      while (ok) {
        if (!rec(i + 1)) ok = false;
        bool fits = true;
        for (size_t j = 0; j < p.size() && fits; ++j) fits = cur[j] + p[j] <= bound;
        if (!fits || !ok) break;
        for (size_t j = 0; j < p.size(); ++j) cur[j] += p[j];
        ++k;
      }
      for (size_t j = 0; j < p.size(); ++j) cur[j] -= k * p[j];
      return ok;
    };
    if (!rec(0)) return false;
  }
  return true;
}

VectorAutomaton to_vector_automaton(const SemilinearSet& s) {
  if (!s.unambiguous()) throw std::invalid_argument("to_vector_automaton: ambiguous presentation");
  VectorAutomaton va;
  va.dim = s.dim();
  va.initial = 0;
  va.num_states = 1;
  va.final.push_back(false);
  auto add_state = [&] {
    va.final.push_back(true);
    return va.num_states++;
  };
  for (auto& l : s.components()) {
    // state 0 of the component stands for "no period used yet"
    size_t base;
    if (is_zero(l.constant)) {
      base = va.initial;
      va.final[base] = true;
    } else {
      base = add_state();
      va.transitions.push_back({va.initial, l.constant, base});
    }
    std::vector<size_t> st;
    for (size_t k = 0; k < l.periods.size(); ++k) st.push_back(add_state());
    // the state remembers the last period used; periods are consumed in nondecreasing order
    for (size_t k = 0; k < l.periods.size(); ++k) {
      va.transitions.push_back({base, l.periods[k], st[k]});
      for (size_t k2 = 0; k2 <= k; ++k2) va.transitions.push_back({st[k2], l.periods[k], st[k]});
    }
  }
  va.validate();
  return va;
}

}  // namespace ph
