#include <map>
#include <random>

#include "doctest.h"
#include "ph/semilinear.hpp"

using namespace ph;

namespace {

SemilinearSet intro_set() { return SemilinearSet(3, {{{0, 0, 0}, {{1, 0, 1}, {0, 1, 1}}}}, true); }

// run counts of a vector automaton by plain path enumeration, vectors inside the box only
std::map<NVec, unsigned> enumerate_runs(const VectorAutomaton& va, unsigned K) {
  std::map<NVec, unsigned> out;
  std::function<void(size_t, NVec&)> go = [&](size_t q, NVec& v) {
    if (va.final[q]) ++out[v];
    for (auto& t : va.transitions) {
      if (t.from != q) continue;
      NVec w = v;
      bool ok = true;
      for (size_t i = 0; i < w.size(); ++i) {
        w[i] += t.label[i];
        ok = ok && w[i] <= K;
      }
      if (ok) go(t.to, w);
    }
  };
  NVec z(va.dim, 0);
  go(va.initial, z);
  return out;
}

void for_box(size_t d, unsigned K, const std::function<void(const NVec&)>& f) {
  NVec v(d, 0);
  while (true) {
    f(v);
    size_t i = 0;
    while (i < d && v[i] == K) v[i++] = 0;
    if (i == d) return;
    ++v[i];
  }
}

SemilinearSet random_set(std::mt19937& rng, bool want_unambiguous) {
  std::uniform_int_distribution<unsigned> dd(1, 3), nc(1, 2), np(0, 2), e(0, 2);
  while (true) {
    size_t d = dd(rng);
    std::vector<LinearSet> comps;
    unsigned k = nc(rng);
    for (unsigned c = 0; c < k; ++c) {
      LinearSet l;
      l.constant.resize(d);
      for (auto& x : l.constant) x = e(rng);
      unsigned m = np(rng);
      for (unsigned j = 0; j < m; ++j) {
        NVec p(d);
        for (auto& x : p) x = e(rng);
        if (max_degree(p) == 0 || std::find(l.periods.begin(), l.periods.end(), p) != l.periods.end()) continue;
        l.periods.push_back(p);
      }
      comps.push_back(l);
    }
    SemilinearSet s(d, comps, false);
    if (!want_unambiguous) return s;
    if (check_unambiguous(s, 6)) return SemilinearSet(d, comps, true);
  }
}

}  // namespace

TEST_CASE("contains: examples") {
  auto s = intro_set();
  CHECK(contains(s, {2, 3, 5}));
  auto dec = decompositions(s, {2, 3, 5});
  REQUIRE(dec.size() == 1);
  CHECK(dec[0].second == std::vector<unsigned>{2, 3});
  CHECK_FALSE(contains(s, {1, 0, 0}));
  SemilinearSet t(2, {{{3, 1}, {{1, 1}}}}, true);
  CHECK(contains(t, {3, 1}));
  CHECK(decompositions(t, {3, 1})[0].second == std::vector<unsigned>{0});
  CHECK_THROWS_AS(contains(s, {1, 1}), std::invalid_argument);
}

TEST_CASE("construction rejects zero and repeated periods") {
  CHECK_THROWS_AS(SemilinearSet(2, {{{0, 0}, {{0, 0}}}}, true), std::invalid_argument);
  CHECK_THROWS_AS(SemilinearSet(2, {{{0, 0}, {{1, 0}, {1, 0}}}}, true), std::invalid_argument);
  CHECK_THROWS_AS(SemilinearSet(2, {{{0}, {}}}, true), std::invalid_argument);
}

TEST_CASE("characteristic_series: examples") {
  auto y = make_vars("y", 3);
  auto Y = [&](size_t i) { return MPoly::variable(y, i); };
  auto one = MPoly::constant(y, 1);
  RatFun f = characteristic_series(intro_set());
  CHECK(f == RatFun(one, (one - Y(0) * Y(2)) * (one - Y(1) * Y(2))));
  SemilinearSet g(3, {{{0, 0, 0}, {{2, 3, 5}}}}, true);
  CHECK(characteristic_series(g) == RatFun(one, one - MPoly::monomial(y, {2, 3, 5})));
  SemilinearSet empty(3, {}, true);
  CHECK(characteristic_series(empty).is_zero());
  CHECK_THROWS_AS(characteristic_series(SemilinearSet(1, {{{0}, {{1}, {2}}}}, false)), std::invalid_argument);
}

TEST_CASE("characteristic_series agrees with membership") {
  std::mt19937 rng(11);
  for (int it = 0; it < 40; ++it) {
    auto s = random_set(rng, true);
    auto ser = series_expand(characteristic_series(s), 6);
    for_box(s.dim(), 6, [&](const NVec& v) {
      Rat want = contains(s, v) ? 1 : 0;
      REQUIRE(ser.coeff(v) == want);
    });
  }
}

TEST_CASE("concat_product") {
  SemilinearSet diag(2, {{{0, 0}, {{1, 1}}}}, true);
  SemilinearSet all1 = SemilinearSet::everything(1);
  auto p = concat_product(diag, all1);
  CHECK(p.dim() == 3);
  CHECK(contains(p, {2, 2, 7}));
  CHECK_FALSE(contains(p, {2, 1, 7}));
  CHECK(p.unambiguous());
  SemilinearSet unit(0, {{{}, {}}}, true);
  auto q = concat_product(diag, unit);
  CHECK(q.dim() == 2);
  CHECK(q == diag);

  std::mt19937 rng(5);
  for (int it = 0; it < 20; ++it) {
    auto a = random_set(rng, true), b = random_set(rng, true);
    if (a.dim() + b.dim() > 4) continue;
    auto c = concat_product(a, b);
    CHECK(c.components().size() == a.components().size() * b.components().size());
    for_box(c.dim(), 4, [&](const NVec& v) {
      NVec u(v.begin(), v.begin() + a.dim()), w(v.begin() + a.dim(), v.end());
      REQUIRE(contains(c, v) == (contains(a, u) && contains(b, w)));
    });
  }
}

TEST_CASE("check_unambiguous: examples") {
  CHECK(check_unambiguous(intro_set(), 5));
  SemilinearSet amb(1, {{{0}, {{1}, {2}}}}, false);
  CHECK_FALSE(check_unambiguous(amb, 3));
  CHECK(decompositions(amb, {2}).size() == 2);
  SemilinearSet single(2, {{{4, 1}, {}}}, true);
  CHECK(check_unambiguous(single, 0));
  CHECK(check_unambiguous(single, 5));
  // two overlapping components
  SemilinearSet two(1, {{{0}, {{2}}}, {{2}, {{1}}}}, false);
  CHECK_FALSE(check_unambiguous(two, 3));
  CHECK(check_unambiguous(two, 1));
}

TEST_CASE("to_vector_automaton: examples") {
  SemilinearSet g(3, {{{0, 0, 0}, {{2, 3, 5}}}}, true);
  auto va = to_vector_automaton(g);
  CHECK(va.num_states == 2);
  auto runs = enumerate_runs(va, 10);
  std::map<NVec, unsigned> want{{{0, 0, 0}, 1}, {{2, 3, 5}, 1}, {{4, 6, 10}, 1}};
  CHECK(runs == want);

  SemilinearSet c(2, {{{1, 2}, {}}}, true);
  auto vc = to_vector_automaton(c);
  REQUIRE(vc.transitions.size() == 1);
  CHECK(vc.transitions[0].from == vc.initial);
  CHECK(vc.transitions[0].label == NVec{1, 2});
  CHECK(vc.final[vc.transitions[0].to]);
  CHECK_FALSE(vc.final[vc.initial]);
}

TEST_CASE("to_vector_automaton: run counts match decompositions") {
  std::mt19937 rng(99);
  for (int it = 0; it < 50; ++it) {
    auto s = random_set(rng, true);
    auto va = to_vector_automaton(s);
    auto runs = enumerate_runs(va, 6);
    for_box(s.dim(), 6, [&](const NVec& v) {
      unsigned r = runs.count(v) ? runs[v] : 0;
      REQUIRE(r == (contains(s, v) ? 1u : 0u));
    });
  }
  // ambiguous presentations: one run per decomposition
  for (int it = 0; it < 30; ++it) {
    auto s = random_set(rng, false);
    SemilinearSet flagged(s.dim(), s.components(), true);
    auto runs = enumerate_runs(to_vector_automaton(flagged), 5);
    for_box(s.dim(), 5, [&](const NVec& v) {
      unsigned r = runs.count(v) ? runs[v] : 0;
      REQUIRE(r == decompositions(s, v).size());
    });
  }
}
