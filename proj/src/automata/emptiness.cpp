#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "lp.hpp"
#include "ph/automata.hpp"

namespace ph {

namespace {

using Config = std::pair<size_t, NVec>;

std::vector<bool> live_states(const ParikhAutomaton& a) {
  const size_t n = a.num_states;
  std::vector<bool> fw(n, false), bw(n, false);
  std::vector<size_t> st{a.initial};
  fw[a.initial] = true;
  while (!st.empty()) {
    size_t q = st.back();
    st.pop_back();
    for (auto& t : a.transitions)
      if (t.from == q && !fw[t.to]) fw[t.to] = true, st.push_back(t.to);
  }
  for (size_t q = 0; q < n; ++q)
    if (a.final[q]) bw[q] = true, st.push_back(q);
  while (!st.empty()) {
    size_t q = st.back();
    st.pop_back();
    for (auto& t : a.transitions)
      if (t.to == q && !bw[t.from]) bw[t.from] = true, st.push_back(t.from);
  }
  std::vector<bool> live(n);
  for (size_t q = 0; q < n; ++q) live[q] = fw[q] && bw[q];
  return live;
}

// breadth first over configurations; vectors are already mapped into the base dimension
std::optional<Run> bounded_search(const ParikhAutomaton& a, const std::vector<NVec>& w, const std::vector<bool>& live,
                                  unsigned L) {
  const size_t max_configs = 200000;
  std::vector<std::map<Config, std::pair<Config, size_t>>> layers(1);
  layers[0][{a.initial, NVec(a.constraint.base.dim(), 0)}] = {{0, {}}, SIZE_MAX};
  size_t total = 1;
  for (unsigned k = 0;; ++k) {
    for (auto& [c, par] : layers[k]) {
      if (!a.final[c.first] || !contains(a.constraint.base, c.second)) continue;
      Run run;
      Config cur = c;
      for (unsigned j = k; j > 0; --j) {
        auto& p = layers[j].at(cur);
        run.push_back(p.second);
        cur = p.first;
      }
      std::reverse(run.begin(), run.end());
      return run;
    }
    if (k == L || total > max_configs) return std::nullopt;
    layers.emplace_back();
    for (auto& [c, par] : layers[k])
      for (size_t i = 0; i < a.transitions.size(); ++i) {
        auto& t = a.transitions[i];
        if (t.from != c.first || !live[t.to]) continue;
        NVec v = c.second;
        for (size_t j = 0; j < v.size(); ++j) v[j] += w[i][j];
        layers[k + 1].try_emplace({t.to, v}, std::make_pair(c, i));
      }
    total += layers[k + 1].size();
    if (layers[k + 1].empty()) return std::nullopt;
  }
}

// Euler path from r to f through the multigraph with x[k] copies of transition ids[k]
Run euler_path(const ParikhAutomaton& a, const std::vector<size_t>& ids, const std::vector<Int>& x, size_t r) {
  std::map<size_t, std::vector<size_t>> adj;  // state -> transition ids, one per copy
  for (size_t k = 0; k < ids.size(); ++k)
    for (Int c = 0; c < x[k]; ++c) adj[a.transitions[ids[k]].from].push_back(ids[k]);
  // Hierholzer, iterative; edges are popped from the back
  std::vector<std::pair<size_t, size_t>> stack{{r, SIZE_MAX}};
  Run out;
  while (!stack.empty()) {
    size_t q = stack.back().first;
    auto& v = adj[q];
    if (!v.empty()) {
      size_t t = v.back();
      v.pop_back();
      stack.emplace_back(a.transitions[t].to, t);
    } else {
      if (stack.back().second != SIZE_MAX) out.push_back(stack.back().second);
      stack.pop_back();
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool run_accepts(const ParikhAutomaton& a, const Run& run) {
  size_t q = a.initial;
  NVec v(a.dim(), 0);
  for (size_t t : run) {
    auto& tr = a.transitions[t];
    if (tr.from != q) return false;
    for (size_t j = 0; j < v.size(); ++j) v[j] += tr.vec[j];
    q = tr.to;
  }
  return a.final[q] && a.constraint.contains(v);
}

}  // namespace

EmptinessResult pa_is_empty(const ParikhAutomaton& a, const EmptinessLimits& lim) {
  a.validate();
  EmptinessResult res{EmptinessResult::Kind::Empty, {}, {}, {}, {}, 0};
  auto finish_witness = [&](Run run, const std::string& how) {
    res.kind = EmptinessResult::Kind::NonEmpty;
    Word w;
    for (size_t t : run) w.push_back(a.transitions[t].letter);
    res.witness = w;
    res.witness_run = std::move(run);
    res.detail = how;
    return res;
  };
  auto live = live_states(a);
  if (!live[a.initial]) {
    res.detail = "no final state is reachable";
    return res;
  }
  std::vector<NVec> w;
  for (auto& t : a.transitions) w.push_back(a.constraint.apply(t.vec));

  if (auto run = bounded_search(a, w, live, lim.witness_search_length))
    return finish_witness(*run, "bounded run search");

  const SemilinearSet& C = a.constraint.base;
  const size_t D = C.dim();
  std::vector<size_t> states;
  for (size_t q = 0; q < a.num_states; ++q)
    if (live[q] && q != a.initial) states.push_back(q);
  if (states.size() > 24) {
    res.kind = EmptinessResult::Kind::ResourceExceeded;
    res.detail = "too many live states for support enumeration";
    return res;
  }
  const size_t r = a.initial;
  size_t nodes_left = lim.max_bb_nodes;
  bool exhausted = false;
  Int max_bound = 0;

  for (uint64_t mask = 0; mask < (uint64_t(1) << states.size()); ++mask) {
    std::vector<size_t> U{r};
    for (size_t i = 0; i < states.size(); ++i)
      if (mask >> i & 1) U.push_back(states[i]);
    std::vector<bool> inU(a.num_states, false);
    for (size_t q : U) inU[q] = true;
    std::vector<size_t> T;
    for (size_t i = 0; i < a.transitions.size(); ++i)
      if (inU[a.transitions[i].from] && inU[a.transitions[i].to]) T.push_back(i);
    std::map<size_t, size_t> row_of;
    for (size_t k = 0; k < U.size(); ++k) row_of[U[k]] = k;

    for (size_t f : U) {
      if (!a.final[f]) continue;
      for (size_t j = 0; j < C.components().size(); ++j) {
        const LinearSet& comp = C.components()[j];
        // variables: x_t for t in T, lambda for the periods, then inflow slacks
        const size_t nx = T.size(), nl = comp.periods.size(), ns = U.size() - 1;
        lp::Problem p;
        p.nvars = nx + nl + ns;
        auto add_row = [&](std::vector<Int> row, Int rhs) {
          p.A.push_back(std::move(row));
          p.b.push_back(std::move(rhs));
        };
        for (size_t k = 0; k < U.size(); ++k) {
          std::vector<Int> row(p.nvars, 0);
          for (size_t m = 0; m < nx; ++m) {
            auto& t = a.transitions[T[m]];
            if (t.from == U[k]) row[m] += 1;
            if (t.to == U[k]) row[m] -= 1;
          }
          add_row(row, Int(U[k] == r ? 1 : 0) - Int(U[k] == f ? 1 : 0));
        }
        for (size_t i = 0; i < D; ++i) {
          std::vector<Int> row(p.nvars, 0);
          for (size_t m = 0; m < nx; ++m) row[m] = w[T[m]][i];
          for (size_t m = 0; m < nl; ++m) row[nx + m] = -Int(comp.periods[m][i]);
          add_row(row, comp.constant[i]);
        }
        // relaxation: every state of U other than r has positive inflow
        lp::Problem relaxed = p;
        for (size_t k = 1; k < U.size(); ++k) {
          std::vector<Int> row(p.nvars, 0);
          for (size_t m = 0; m < nx; ++m)
            if (a.transitions[T[m]].to == U[k]) row[m] = 1;
          row[nx + nl + k - 1] = -1;
          relaxed.A.push_back(row);
          relaxed.b.push_back(1);
        }
        if (!lp::feasible(relaxed)) continue;

        // spanning trees rooted at r: one parent transition per state of U \ {r}
        p.nvars = nx + nl;
        for (auto& row : p.A) row.resize(p.nvars);
        std::vector<std::vector<size_t>> parents(U.size());
        for (size_t m = 0; m < nx; ++m) {
          auto& t = a.transitions[T[m]];
          if (t.from != t.to && t.to != r) parents[row_of[t.to]].push_back(m);
        }
        std::vector<size_t> choice(U.size(), SIZE_MAX);
        std::optional<EmptinessResult> found;
        std::function<void(size_t)> rec = [&](size_t k) {
          if (found || exhausted) return;
          if (k < U.size()) {
            for (size_t m : parents[k]) {
              choice[k] = m;
              rec(k + 1);
              if (found || exhausted) return;
            }
            return;
          }
          // acyclic: every state reaches r through parents
          for (size_t s = 1; s < U.size(); ++s) {
            size_t cur = s, steps = 0;
            while (cur != 0 && steps <= U.size()) {
              cur = row_of[a.transitions[T[choice[cur]]].from];
              ++steps;
            }
            if (cur != 0) return;
          }
          if (++res.supports_examined > lim.max_supports) {
            exhausted = true;
            return;
          }
          lp::Problem q = p;
          q.lo.assign(q.nvars, 0);
          for (size_t s = 1; s < U.size(); ++s) q.lo[choice[s]] = 1;
          // shifted system for the small-solution bound
          lp::Problem shifted = q;
          for (size_t i = 0; i < q.A.size(); ++i)
            for (size_t m = 0; m < q.nvars; ++m) shifted.b[i] -= q.A[i][m] * q.lo[m];
          Int B = lp::small_solution_bound(shifted);
          if (B > max_bound) max_bound = B;
          q.hi.assign(q.nvars, std::nullopt);
          for (size_t m = 0; m < q.nvars; ++m) q.hi[m] = q.lo[m] + B;
          auto sol = lp::integer_solve(q, nodes_left);
          if (sol.status == lp::IntStatus::NodeLimit) {
            exhausted = true;
            return;
          }
          if (sol.status != lp::IntStatus::Found) return;
          std::vector<size_t> ids(T.begin(), T.end());
          std::vector<Int> xs(sol.x.begin(), sol.x.begin() + nx);
          Run run = euler_path(a, ids, xs, r);
          if (!run_accepts(a, run)) throw std::logic_error("pa_is_empty: reconstructed run is not accepting");
          found = finish_witness(run, "support enumeration with integer solve");
        };
        rec(1);
        if (found) {
          found->solution_bound = max_bound.get_str();
          found->supports_examined = res.supports_examined;
          return *found;
        }
        if (exhausted) {
          res.kind = EmptinessResult::Kind::ResourceExceeded;
          res.detail = "support or branch and bound limit reached";
          res.solution_bound = max_bound.get_str();
          return res;
        }
      }
    }
  }
  res.detail = "no support admits a solution";
  res.solution_bound = max_bound.get_str();
  return res;
}

UnambiguityResult is_weakly_unambiguous(const ParikhAutomaton& a, const EmptinessLimits& limits) {
  auto e = pa_is_empty(ambiguity_product(a), limits);
  switch (e.kind) {
    case EmptinessResult::Kind::Empty:
      return {UnambiguityResult::Kind::Yes, std::nullopt, e.detail};
    case EmptinessResult::Kind::NonEmpty:
      return {UnambiguityResult::Kind::No, e.witness, e.detail};
    default:
      return {UnambiguityResult::Kind::ResourceExceeded, std::nullopt, e.detail};
  }
}

}  // namespace ph
