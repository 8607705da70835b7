#pragma once

#include <random>

#include "ph/automata.hpp"
#include "ph/algebra.hpp"
#include "ph/io.hpp"

#ifndef PH_FIXTURE_DIR
#define PH_FIXTURE_DIR "fixtures"
#endif

namespace testutil {

inline ph::MPoly random_poly(std::mt19937& rng, const std::vector<std::string>& vars, unsigned max_deg_m,
                             unsigned max_terms, int coeff_range) {
  std::uniform_int_distribution<unsigned> e(0, max_deg_m), nt(1, max_terms);
  std::uniform_int_distribution<int> c(-coeff_range, coeff_range);
  ph::MPoly p(vars);
  unsigned k = nt(rng);
  for (unsigned i = 0; i < k; ++i) {
    ph::MultiIndex m(vars.size());
    for (auto& x : m) x = e(rng);
    p.add_term(m, c(rng));
  }
  return p;
}

inline std::vector<ph::Rat> random_point(std::mt19937& rng, size_t n) {
  std::uniform_int_distribution<int> d(-7, 7);
  std::vector<ph::Rat> pt;
  for (size_t i = 0; i < n; ++i) pt.emplace_back(d(rng), 1 + (d(rng) + 7) % 5);
  for (auto& x : pt) x.canonicalize();
  return pt;
}

inline ph::ParikhAutomaton fixture(const std::string& name) {
  return ph::io::pa_from_json(ph::io::read_file(std::string(PH_FIXTURE_DIR) + "/" + name + ".json"));
}

inline ph::RCM rcm_fixture(const std::string& name) {
  return ph::io::rcm_from_json(ph::io::read_file(std::string(PH_FIXTURE_DIR) + "/" + name + ".json"));
}

inline const std::vector<std::string>& pa_fixture_names() {
  static const std::vector<std::string> names{"intro", "rmk_comp", "l3",     "leven", "d",
                                              "s",     "astar",    "aastar", "abstar", "anbn", "sigma_star"};
  return names;
}

// random semilinear set; presentation checked unambiguous on the box of side `check`
inline ph::SemilinearSet random_semilinear(std::mt19937& rng, size_t d, unsigned max_comps, unsigned max_periods,
                                           unsigned max_entry, unsigned check = 6) {
  std::uniform_int_distribution<unsigned> nc(1, max_comps), np(0, max_periods), e(0, max_entry);
  while (true) {
    std::vector<ph::LinearSet> comps;
    unsigned k = nc(rng);
    for (unsigned c = 0; c < k; ++c) {
      ph::LinearSet l;
      l.constant.resize(d);
      for (auto& x : l.constant) x = e(rng);
      unsigned m = np(rng);
      for (unsigned j = 0; j < m; ++j) {
        ph::NVec p(d);
        for (auto& x : p) x = e(rng);
        if (ph::max_degree(p) == 0 || std::find(l.periods.begin(), l.periods.end(), p) != l.periods.end()) continue;
        l.periods.push_back(p);
      }
      comps.push_back(l);
    }
    ph::SemilinearSet s(d, comps, false);
    if (ph::check_unambiguous(s, check)) return ph::SemilinearSet(d, comps, true);
  }
}

inline ph::ParikhAutomaton random_pa(std::mt19937& rng, unsigned max_states, unsigned max_letters, unsigned max_dim,
                                     unsigned max_transitions = 7) {
  std::uniform_int_distribution<unsigned> ns(1, max_states), nl(1, max_letters), nd(1, max_dim),
      nt(1, max_transitions), bit(0, 1);
  ph::ParikhAutomaton a;
  unsigned L = nl(rng);
  for (unsigned i = 0; i < L; ++i) a.alphabet.push_back(std::string(1, char('a' + i)));
  a.num_states = ns(rng);
  a.initial = 0;
  a.final.resize(a.num_states);
  for (size_t q = 0; q < a.num_states; ++q) a.final[q] = bit(rng);
  size_t d = nd(rng);
  a.constraint = random_semilinear(rng, d, 2, 2, 2, 5);
  std::uniform_int_distribution<size_t> st(0, a.num_states - 1);
  std::uniform_int_distribution<unsigned> let(0, L - 1);
  unsigned k = nt(rng);
  for (unsigned i = 0; i < k; ++i) {
    ph::NVec v(d);
    for (auto& x : v) x = bit(rng);
    a.transitions.push_back({st(rng), let(rng), v, st(rng)});
  }
  return a;
}

// all words of length exactly n
inline std::vector<ph::Word> all_words(size_t letters, size_t n) {
  std::vector<ph::Word> out{{}};
  for (size_t i = 0; i < n; ++i) {
    std::vector<ph::Word> next;
    for (auto& w : out)
      for (ph::Letter l = 0; l < letters; ++l) {
        next.push_back(w);
        next.back().push_back(l);
      }
    out.swap(next);
  }
  return out;
}

}  // namespace testutil
