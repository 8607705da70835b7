#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "ph/automata.hpp"

namespace ph {

namespace {

NVec concat(const NVec& a, const NVec& b) {
  NVec r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

}  // namespace

Constraint::Constraint(SemilinearSet s, std::vector<NVec> columns) : base(std::move(s)), map(std::move(columns)) {
  for (auto& c : *map)
    if (c.size() != base.dim()) throw std::invalid_argument("constraint: map column dimension");
}

NVec Constraint::apply(const NVec& n) const {
  if (n.size() != dim()) throw std::invalid_argument("constraint: dimension mismatch");
  if (!map) return n;
  NVec r(base.dim(), 0);
  for (size_t i = 0; i < n.size(); ++i)
    for (size_t j = 0; j < r.size(); ++j) r[j] += n[i] * (*map)[i][j];
  return r;
}

bool Constraint::contains(const NVec& n) const { return ph::contains(base, apply(n)); }

bool operator==(const Constraint& a, const Constraint& b) { return a.base == b.base && a.map == b.map; }

Constraint concat_product(const Constraint& a, const Constraint& b) {
  SemilinearSet s = concat_product(a.base, b.base);
  if (a.is_plain() && b.is_plain()) return Constraint(s);
  std::vector<NVec> cols;
  auto columns = [](const Constraint& c) {
    if (c.map) return *c.map;
    std::vector<NVec> id;
    for (size_t i = 0; i < c.base.dim(); ++i) {
      NVec e(c.base.dim(), 0);
      e[i] = 1;
      id.push_back(e);
    }
    return id;
  };
  for (auto& c : columns(a)) cols.push_back(concat(c, NVec(b.base.dim(), 0)));
  for (auto& c : columns(b)) cols.push_back(concat(NVec(a.base.dim(), 0), c));
  return Constraint(s, cols);
}

void ParikhAutomaton::validate() const {
  if (num_states == 0 || initial >= num_states) throw std::invalid_argument("PA: initial state out of range");
  if (final.size() != num_states) throw std::invalid_argument("PA: final flags size");
  for (auto& t : transitions) {
    if (t.from >= num_states || t.to >= num_states) throw std::invalid_argument("PA: transition endpoint out of range");
    if (t.letter >= alphabet.size()) throw std::invalid_argument("PA: letter out of range");
    if (t.vec.size() != dim()) throw std::invalid_argument("PA: vector dimension");
  }
}

unsigned ParikhAutomaton::norm_inf() const {
  unsigned m = constraint.base.norm_inf();
  for (auto& t : transitions) m = std::max(m, max_degree(t.vec));
  return m;
}

size_t ParikhAutomaton::size() const {
  return num_states + transitions.size() + constraint.base.components().size() + constraint.base.num_periods();
}

std::string ParikhAutomaton::spell(const Word& w) const {
  std::string s;
  for (Letter l : w) s += alphabet.at(l);
  return s;
}

Word ParikhAutomaton::parse_word(const std::string& s) const {
  Word w;
  for (char c : s) {
    auto it = std::find(alphabet.begin(), alphabet.end(), std::string(1, c));
    if (it == alphabet.end()) throw std::invalid_argument(std::string("foreign letter '") + c + "'");
    w.push_back(Letter(it - alphabet.begin()));
  }
  return w;
}

std::vector<Run> accepts(const ParikhAutomaton& a, const Word& w) {
  for (Letter l : w)
    if (l >= a.alphabet.size()) throw std::invalid_argument("accepts: foreign letter");
  std::vector<Run> out;
  Run cur;
  NVec v(a.dim(), 0);
  std::function<void(size_t, size_t)> go = [&](size_t q, size_t i) {
    if (i == w.size()) {
      if (a.final[q] && a.constraint.contains(v)) out.push_back(cur);
      return;
    }
    for (size_t k = 0; k < a.transitions.size(); ++k) {
      auto& t = a.transitions[k];
      if (t.from != q || t.letter != w[i]) continue;
      cur.push_back(k);
      for (size_t j = 0; j < v.size(); ++j) v[j] += t.vec[j];
      go(t.to, i + 1);
      for (size_t j = 0; j < v.size(); ++j) v[j] -= t.vec[j];
      cur.pop_back();
    }
  };
  go(a.initial, 0);
  return out;
}

const Int& CountTable::at(size_t state, const NVec& v) const {
  static const Int zero = 0;
  auto it = table_.find(v);
  if (it == table_.end() || state >= num_states_) return zero;
  return it->second[state];
}

CountTable count_vectors(const VectorAutomaton& v, unsigned K) { return count_vectors(v, NVec(v.dim, K)); }

CountTable count_vectors(const VectorAutomaton& v, const NVec& caps) {
  v.validate();
  if (caps.size() != v.dim) throw std::invalid_argument("count_vectors: caps dimension");
  CountTable ct(v.num_states, caps);
  auto& tab = ct.entries();
  std::vector<std::vector<const VTransition*>> out(v.num_states);
  for (auto& t : v.transitions) out[t.from].push_back(&t);
  tab[NVec(v.dim, 0)].assign(v.num_states, 0);
  tab[NVec(v.dim, 0)][v.initial] = 1;
  // every label is nonzero, so v - u precedes v lexicographically: pushing forward from
  // the smallest unprocessed vector sees each entry only once it is complete
  for (auto it = tab.begin(); it != tab.end(); ++it) {
    const NVec& x = it->first;
    for (size_t q = 0; q < v.num_states; ++q) {
      if (it->second[q] == 0) continue;
      for (auto* t : out[q]) {
        NVec y = x;
        bool ok = true;
        for (size_t j = 0; j < y.size() && ok; ++j) {
          y[j] += t->label[j];
          ok = y[j] <= caps[j];
        }
        if (!ok) continue;
        auto& slot = tab[y];
        if (slot.empty()) slot.assign(v.num_states, 0);
        slot[t->to] += it->second[q];
      }
    }
  }
  return ct;
}

VectorAutomaton run_vector_automaton(const ParikhAutomaton& a) {
  VectorAutomaton va;
  va.dim = a.dim() + 1;
  va.num_states = a.num_states;
  va.initial = a.initial;
  va.final = a.final;
  for (auto& t : a.transitions) va.transitions.push_back({t.from, concat({1}, t.vec), t.to});
  return va;
}

std::vector<Int> count_words(const ParikhAutomaton& a, unsigned n) {
  a.validate();
  const size_t d = a.dim();
  unsigned K = 0;
  for (auto& t : a.transitions) K = std::max(K, max_degree(t.vec));
  K *= n;
  NVec caps(d + 1, K);
  caps[0] = n;
  auto runs = count_vectors(run_vector_automaton(a), caps);
  // membership indicator of C from its own vector automaton when the constraint is plain
  std::optional<std::map<NVec, bool>> ind;
  if (a.constraint.is_plain() && a.constraint.base.unambiguous()) {
    auto cva = to_vector_automaton(a.constraint.base);
    auto ct = count_vectors(cva, NVec(d, K));
    ind.emplace();
    for (auto& [v, row] : ct.entries()) {
      Int hits = 0;
      for (size_t q = 0; q < cva.num_states; ++q)
        if (cva.final[q]) hits += row[q];
      if (hits != 0) (*ind)[v] = true;
    }
  }
  std::vector<size_t> finals;
  for (size_t q = 0; q < a.num_states; ++q)
    if (a.final[q]) finals.push_back(q);
  std::vector<Int> u(n + 1, 0);
  for (auto& [v, row] : runs.entries()) {
    Int r = 0;
    for (size_t q : finals) r += row[q];
    if (r == 0) continue;
    NVec tail(v.begin() + 1, v.end());
    bool in = ind ? ind->count(tail) > 0 : a.constraint.contains(tail);
    if (in) u[v[0]] += r;
  }
  return u;
}

namespace {

using Config = std::pair<size_t, NVec>;

template <class F>
void walk_words(const ParikhAutomaton& a, unsigned n, F&& visit) {
  std::vector<std::vector<const PATransition*>> out(a.num_states);
  for (auto& t : a.transitions) out[t.from].push_back(&t);
  Word w;
  std::function<void(const std::set<Config>&)> go = [&](const std::set<Config>& cur) {
    bool acc = false;
    for (auto& [q, v] : cur)
      if (a.final[q] && a.constraint.contains(v)) {
        acc = true;
        break;
      }
    visit(w, acc);
    if (w.size() == n) return;
    for (Letter l = 0; l < a.alphabet.size(); ++l) {
      std::set<Config> next;
      for (auto& [q, v] : cur)
        for (auto* t : out[q]) {
          if (t->letter != l) continue;
          NVec u = v;
          for (size_t j = 0; j < u.size(); ++j) u[j] += t->vec[j];
          next.emplace(t->to, std::move(u));
        }
      if (next.empty()) continue;
      w.push_back(l);
      go(next);
      w.pop_back();
    }
  };
  go({{a.initial, NVec(a.dim(), 0)}});
}

}  // namespace

std::vector<Int> brute_force_count(const ParikhAutomaton& a, unsigned n) {
  a.validate();
  std::vector<Int> u(n + 1, 0);
  walk_words(a, n, [&](const Word& w, bool acc) {
    if (acc) ++u[w.size()];
  });
  return u;
}

std::vector<Word> accepted_words(const ParikhAutomaton& a, unsigned n) {
  a.validate();
  std::vector<Word> out;
  walk_words(a, n, [&](const Word& w, bool acc) {
    if (acc) out.push_back(w);
  });
  return out;
}

Int count_runs(const ParikhAutomaton& a, const Word& w) {
  std::map<Config, Int> cur{{{a.initial, NVec(a.dim(), 0)}, 1}};
  for (Letter l : w) {
    std::map<Config, Int> next;
    for (auto& [c, m] : cur)
      for (auto& t : a.transitions) {
        if (t.from != c.first || t.letter != l) continue;
        NVec u = c.second;
        for (size_t j = 0; j < u.size(); ++j) u[j] += t.vec[j];
        next[{t.to, u}] += m;
      }
    cur.swap(next);
  }
  Int r = 0;
  for (auto& [c, m] : cur)
    if (a.final[c.first] && a.constraint.contains(c.second)) r += m;
  return r;
}

ParikhAutomaton intersect(const ParikhAutomaton& a, const ParikhAutomaton& b) {
  a.validate();
  b.validate();
  if (a.alphabet != b.alphabet) throw std::invalid_argument("intersect: alphabet mismatch");
  ParikhAutomaton c;
  c.alphabet = a.alphabet;
  c.constraint = concat_product(a.constraint, b.constraint);
  // reachable part of the product only
  std::map<std::pair<size_t, size_t>, size_t> id;
  std::vector<std::pair<size_t, size_t>> todo;
  auto get = [&](size_t p, size_t q) {
    auto [it, fresh] = id.try_emplace({p, q}, id.size());
    if (fresh) {
      todo.emplace_back(p, q);
      c.final.push_back(a.final[p] && b.final[q]);
    }
    return it->second;
  };
  c.initial = get(a.initial, b.initial);
  for (size_t k = 0; k < todo.size(); ++k) {
    auto [p, q] = todo[k];
    size_t from = id.at({p, q});
    for (auto& s : a.transitions) {
      if (s.from != p) continue;
      for (auto& t : b.transitions) {
        if (t.from != q || t.letter != s.letter) continue;
        size_t to = get(s.to, t.to);
        c.transitions.push_back({from, s.letter, concat(s.vec, t.vec), to});
      }
    }
  }
  c.num_states = id.size();
  return c;
}

ParikhAutomaton ambiguity_product(const ParikhAutomaton& a) {
  a.validate();
  ParikhAutomaton c;
  c.alphabet = a.alphabet;
  // C x C with an extra coordinate that must be positive: constant 1, period e_last
  SemilinearSet sq = concat_product(a.constraint.base, a.constraint.base);
  const size_t D = sq.dim() + 1;
  NVec elast(D, 0);
  elast[D - 1] = 1;
  std::vector<LinearSet> comps;
  for (auto& l : sq.components()) {
    LinearSet m;
    m.constant = concat(l.constant, {1});
    for (auto& p : l.periods) m.periods.push_back(concat(p, {0}));
    m.periods.push_back(elast);
    comps.push_back(std::move(m));
  }
  SemilinearSet base(D, comps, sq.unambiguous());
  if (a.constraint.is_plain()) {
    c.constraint = Constraint(base);
  } else {
    std::vector<NVec> cols;
    const size_t bd = a.constraint.base.dim();
    for (auto& col : *a.constraint.map) cols.push_back(concat(concat(col, NVec(bd, 0)), {0}));
    for (auto& col : *a.constraint.map) cols.push_back(concat(concat(NVec(bd, 0), col), {0}));
    cols.push_back(elast);
    c.constraint = Constraint(base, cols);
  }
  std::map<std::pair<size_t, size_t>, size_t> id;
  std::vector<std::pair<size_t, size_t>> todo;
  auto get = [&](size_t p, size_t q) {
    auto [it, fresh] = id.try_emplace({p, q}, id.size());
    if (fresh) {
      todo.emplace_back(p, q);
      c.final.push_back(a.final[p] && a.final[q]);
    }
    return it->second;
  };
  c.initial = get(a.initial, a.initial);
  for (size_t k = 0; k < todo.size(); ++k) {
    auto [p, q] = todo[k];
    size_t from = id.at({p, q});
    for (size_t i = 0; i < a.transitions.size(); ++i) {
      auto& s = a.transitions[i];
      if (s.from != p) continue;
      for (size_t j = 0; j < a.transitions.size(); ++j) {
        auto& t = a.transitions[j];
        if (t.from != q || t.letter != s.letter) continue;
        size_t to = get(s.to, t.to);
        NVec v = concat(concat(s.vec, t.vec), {i != j ? 1u : 0u});
        c.transitions.push_back({from, s.letter, v, to});
      }
    }
  }
  c.num_states = id.size();
  return c;
}

ParikhAutomaton normalize_unit_vectors(const ParikhAutomaton& a) {
  a.validate();
  std::vector<NVec> distinct;
  for (auto& t : a.transitions) {
    bool zero = max_degree(t.vec) == 0;
    if (!zero && std::find(distinct.begin(), distinct.end(), t.vec) == distinct.end()) distinct.push_back(t.vec);
  }
  ParikhAutomaton r = a;
  const size_t k = distinct.size();
  for (auto& t : r.transitions) {
    NVec e(k, 0);
    auto it = std::find(distinct.begin(), distinct.end(), t.vec);
    if (it != distinct.end()) e[it - distinct.begin()] = 1;
    t.vec = e;
  }
  // column i of the new map is the image of v_i under the old map
  std::vector<NVec> cols;
  for (auto& v : distinct) cols.push_back(a.constraint.apply(v));
  r.constraint = Constraint(a.constraint.base, cols);
  return r;
}

void RCM::validate() const {
  if (num_states == 0 || initial >= num_states) throw std::invalid_argument("RCM: initial state out of range");
  if (final.size() != num_states) throw std::invalid_argument("RCM: final flags size");
  if (morphism.size() != gamma.size()) throw std::invalid_argument("RCM: morphism must be total on the working alphabet");
  for (auto m : morphism)
    if (m >= sigma.size()) throw std::invalid_argument("RCM: morphism image out of range");
  for (auto& t : transitions)
    if (t.from >= num_states || t.to >= num_states || t.letter >= gamma.size())
      throw std::invalid_argument("RCM: transition out of range");
  if (constraint.dim() != gamma.size()) throw std::invalid_argument("RCM: constraint dimension must equal |gamma|");
}

ParikhAutomaton rcm_to_pa(const RCM& r) {
  r.validate();
  ParikhAutomaton a;
  a.alphabet = r.sigma;
  a.num_states = r.num_states;
  a.initial = r.initial;
  a.final = r.final;
  a.constraint = r.constraint;
  for (auto& t : r.transitions) {
    NVec e(r.gamma.size(), 0);
    e[t.letter] = 1;
    a.transitions.push_back({t.from, r.morphism[t.letter], e, t.to});
  }
  return a;
}

RCM pa_to_rcm(const ParikhAutomaton& a) {
  a.validate();
  RCM r;
  r.sigma = a.alphabet;
  r.num_states = a.num_states;
  r.initial = a.initial;
  r.final = a.final;
  const size_t d = a.dim();
  // gamma = sigma x {e_1..e_d, 0}, only the pairs that occur
  std::map<std::pair<Letter, size_t>, Letter> gid;
  std::vector<NVec> cols;
  for (auto& t : a.transitions) {
    size_t idx = d;  // d stands for the zero vector
    unsigned ones = 0;
    for (size_t j = 0; j < d; ++j) {
      if (t.vec[j] > 1) throw std::invalid_argument("pa_to_rcm: non-unit vector");
      if (t.vec[j] == 1) {
        ++ones;
        idx = j;
      }
    }
    if (ones > 1) throw std::invalid_argument("pa_to_rcm: non-unit vector");
    auto [it, fresh] = gid.try_emplace({t.letter, idx}, Letter(gid.size()));
    if (fresh) {
      r.gamma.push_back(a.alphabet[t.letter] + (idx == d ? std::string("#0") : "#" + std::to_string(idx + 1)));
      r.morphism.push_back(t.letter);
      cols.push_back(t.vec);
    }
    r.transitions.push_back({t.from, it->second, t.to});
  }
  // Parikh vector over gamma maps back to N^d, then through the PA's own map
  std::vector<NVec> composed;
  for (auto& c : cols) composed.push_back(a.constraint.apply(c));
  r.constraint = Constraint(a.constraint.base, composed);
  return r;
}

}  // namespace ph
