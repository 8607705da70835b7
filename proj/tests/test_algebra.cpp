#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "ph/algebra.hpp"
#include "ph/modlinalg.hpp"
#include "random_util.hpp"

using namespace ph;

namespace {

const std::vector<std::string> X1{"x"};
const std::vector<std::string> X2{"x1", "x2"};
const std::vector<std::string> X3{"xa", "xb", "xc"};

MPoly var(const std::vector<std::string>& v, size_t i) { return MPoly::variable(v, i); }
MPoly cst(const std::vector<std::string>& v, long c) { return MPoly::constant(v, c); }

// determinant by permutation expansion, independent of the elimination code
MPoly leibniz(const PolyMatrix& m) {
  std::vector<size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  MPoly sum(m.vars());
  do {
    int inv = 0;
    for (size_t i = 0; i < perm.size(); ++i)
      for (size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inv;
    MPoly t = cst(m.vars(), inv % 2 ? -1 : 1);
    for (size_t i = 0; i < perm.size(); ++i) t = t * m.at(i, perm[i]);
    sum += t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

PolyMatrix random_matrix(std::mt19937& rng, size_t p, const std::vector<std::string>& vars) {
  PolyMatrix m(p, p, vars);
  for (size_t i = 0; i < p; ++i)
    for (size_t j = 0; j < p; ++j) m.at(i, j) = testutil::random_poly(rng, vars, 2, 3, 4);
  return m;
}

}  // namespace

TEST_CASE("poly_mul examples") {
  MPoly x = var(X2, 0), y = var(X2, 1);
  CHECK((cst(X2, 1) - x * y) * cst(X2, 1) == cst(X2, 1) - x * y);
  MPoly z = var(X1, 0);
  CHECK((z + cst(X1, 1)) * (z - cst(X1, 1)) == z.pow(2) - cst(X1, 1));
  CHECK_THROWS_AS(x * z, std::invalid_argument);
}

TEST_CASE("poly_mul norm bound on random pairs") {
  std::mt19937 rng(11);
  int violations = 0;
  for (int it = 0; it < 1000; ++it) {
    size_t n = 1 + it % 3;
    auto vars = make_vars("x", n);
    MPoly p = testutil::random_poly(rng, vars, 4, 6, 20), q = testutil::random_poly(rng, vars, 4, 6, 20);
    if (p.is_zero() || q.is_zero()) continue;
    MPoly pq = p * q;
    Int base = std::min(p.deg_m(), q.deg_m()) + 1, f;
    mpz_pow_ui(f.get_mpz_t(), base.get_mpz_t(), n);
    if (pq.norminf() > f * p.norminf() * q.norminf()) ++violations;
    // evaluation oracle
    auto pt = testutil::random_point(rng, n);
    CHECK(pq.eval(pt) == p.eval(pt) * q.eval(pt));
  }
  CHECK(violations == 0);
}

TEST_CASE("ring laws and canonical form") {
  std::mt19937 rng(5);
  for (int it = 0; it < 100; ++it) {
    auto a = testutil::random_poly(rng, X3, 3, 5, 9), b = testutil::random_poly(rng, X3, 3, 5, 9),
         c = testutil::random_poly(rng, X3, 3, 5, 9);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK((a + (-a)).is_zero());
    CHECK(a.normalize().normalize() == a.normalize());
    if (!a.is_zero()) {
      CHECK(a.normalize().content() == 1);
      CHECK(a.normalize().leading_coeff() > 0);
    }
  }
}

TEST_CASE("poly_derivative") {
  MPoly x = var(X1, 0);
  CHECK(x.pow(2).derivative(0) == x * Int(2));
  CHECK(cst(X1, 7).derivative(0).is_zero());
  MPoly a = var(X3, 0), b = var(X3, 1), c = var(X3, 2);
  MPoly p = a.pow(2) * b * c * Int(27) - a;
  CHECK(p.derivative("xa") == a * b * c * Int(54) - cst(X3, 1));
  CHECK_THROWS_AS(p.derivative("y"), std::invalid_argument);
}

TEST_CASE("degrees and norms") {
  MPoly a = var(X3, 0), b = var(X3, 1);
  MPoly p = a.pow(3) * b - b.pow(2) * Int(5) + cst(X3, 2);
  CHECK(p.deg() == 4);
  CHECK(p.deg_m() == 3);
  CHECK(p.norm1() == 8);
  CHECK(p.norminf() == 5);
}

TEST_CASE("division helpers") {
  MPoly x = var(X2, 0), y = var(X2, 1);
  MPoly f = (y - cst(X2, 1)).pow(2) * (x + y);
  auto q = f.divide_by_x_minus_one(1);
  REQUIRE(q);
  CHECK(*q == (y - cst(X2, 1)) * (x + y));
  CHECK(!(x + y).divide_by_x_minus_one(1));
  auto d = divide_exact(f, x + y);
  REQUIRE(d);
  CHECK(*d == (y - cst(X2, 1)).pow(2));
  CHECK(!divide_exact(f, x + cst(X2, 2)));
  CHECK(f.substitute(1, 1).is_zero());
}

TEST_CASE("univariate gcd") {
  MPoly z = var(X1, 0), one = cst(X1, 1);
  MPoly a = (z - one) * (z + one * Int(2)) * Int(6), b = (z - one).pow(2) * (z * Int(3) + one) * Int(4);
  CHECK(univariate_gcd(a, b).normalize() == z - one);
}

TEST_CASE("RatFun equality and content") {
  MPoly x = var(X1, 0), one = cst(X1, 1);
  RatFun r(x * Int(4) - one * Int(4), (one - x.pow(2)) * Int(-2));
  CHECK(r.den().leading_coeff() > 0);
  CHECK(r == RatFun(one * Int(2), one + x));
  CHECK(r.reduce_univariate().den().deg() == 1);
  CHECK_THROWS_AS(RatFun(one, MPoly(X1)), std::domain_error);
}

TEST_CASE("determinant") {
  CHECK(determinant(PolyMatrix::identity(3, X1)) == cst(X1, 1));
  MPoly x = var(X1, 0), one = cst(X1, 1);
  PolyMatrix m(2, 2, X1);
  m.at(0, 0) = one - x;
  m.at(0, 1) = -x;
  m.at(1, 1) = one - x;
  CHECK(determinant(m) == (one - x).pow(2));
  CHECK_THROWS_AS(determinant(PolyMatrix(2, 3, X1)), std::invalid_argument);
}

TEST_CASE("determinant agrees with permutation expansion and the squared bound") {
  std::mt19937 rng(7);
  int violations = 0;
  for (int it = 0; it < 200; ++it) {
    size_t p = 2 + it % 2;
    PolyMatrix m = random_matrix(rng, p, X2);
    MPoly d = determinant(m);
    CHECK(d == leibniz(m));
    Int r1 = m.max_norm1_row(), lhs = d.norminf() * d.norminf(), a, b;
    mpz_pow_ui(a.get_mpz_t(), r1.get_mpz_t(), 2 * p);
    Int pp = p;
    mpz_pow_ui(b.get_mpz_t(), pp.get_mpz_t(), p);
    if (lhs > a * b) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("cramer_solve") {
  MPoly x = var(X1, 0), one = cst(X1, 1);
  PolyMatrix m(1, 1, X1);
  m.at(0, 0) = one - x;
  auto v = cramer_solve(m, {one});
  CHECK(v[0] == RatFun(one, one - x));
  auto w = cramer_solve(PolyMatrix::identity(2, X1), {x, x + one});
  CHECK(w[0] == RatFun(x));
  CHECK(w[1] == RatFun(x + one));
  PolyMatrix s(2, 2, X1);
  s.at(0, 0) = x, s.at(0, 1) = x, s.at(1, 0) = one, s.at(1, 1) = one;
  CHECK_THROWS_AS(cramer_solve(s, {one, one}), std::domain_error);

  std::mt19937 rng(3);
  int checked = 0;
  while (checked < 100) {
    size_t p = 2 + checked % 2;
    PolyMatrix a = random_matrix(rng, p, X2);
    if (determinant(a).is_zero()) continue;
    std::vector<MPoly> b;
    for (size_t i = 0; i < p; ++i) b.push_back(testutil::random_poly(rng, X2, 2, 3, 5));
    auto sol = cramer_solve(a, b);
    for (size_t i = 0; i < p; ++i) {
      RatFun acc{MPoly(X2)};
      for (size_t j = 0; j < p; ++j) acc = acc + RatFun(a.at(i, j)) * sol[j];
      CHECK(acc == RatFun(b[i]));
    }
    ++checked;
  }
}

TEST_CASE("nullspace_vector") {
  MPoly x = var(X1, 0), one = cst(X1, 1);
  PolyMatrix r(1, 2, X1);
  r.at(0, 0) = x + one, r.at(0, 1) = x * Int(3);
  auto v = nullspace_vector(r);
  CHECK(v[0] == x * Int(3) * (v[0].leading_coeff() > 0 ? 1 : -1));
  CHECK(r.apply(v)[0].is_zero());

  PolyMatrix m(2, 3, X1);
  m.at(0, 0) = one, m.at(0, 2) = one, m.at(1, 1) = one, m.at(1, 2) = one;
  auto k = nullspace_vector(m);
  CHECK(((k[0] == one && k[1] == one && k[2] == -one) || (k[0] == -one && k[1] == -one && k[2] == one)));

  CHECK_THROWS_AS(nullspace_vector(PolyMatrix::identity(2, X1)), std::domain_error);

  std::mt19937 rng(9);
  for (int it = 0; it < 50; ++it) {
    PolyMatrix a(2 + it % 2, 4, X2);
    for (size_t i = 0; i < a.rows(); ++i)
      for (size_t j = 0; j < a.cols(); ++j) a.at(i, j) = testutil::random_poly(rng, X2, 2, 2, 3);
    auto w = nullspace_vector(a);
    bool nonzero = std::any_of(w.begin(), w.end(), [](const MPoly& p) { return !p.is_zero(); });
    CHECK(nonzero);
    for (auto& e : a.apply(w)) CHECK(e.is_zero());
  }
}

TEST_CASE("series_expand") {
  MPoly x1 = var(X2, 0), x2 = var(X2, 1), one = cst(X2, 1);
  auto s = series_expand(RatFun(one, one - x1 * x2), 3);
  CHECK(s.coeffs().size() == 4);
  for (unsigned k = 0; k <= 3; ++k) CHECK(s.coeff({k, k}) == 1);
  auto t = series_expand(RatFun(one, one - x1 * x2.pow(2)), 4);
  CHECK(t.coeffs().size() == 3);
  CHECK(t.coeff({0, 0}) == 1);
  CHECK(t.coeff({1, 2}) == 1);
  CHECK(t.coeff({2, 4}) == 1);
  MPoly q = one - x1 - x2 * Int(2);
  auto u = series_expand(RatFun(q, q), 5);
  CHECK(u.coeffs().size() == 1);
  CHECK(u.coeff({0, 0}) == 1);
  CHECK_THROWS_AS(series_expand(RatFun(one, x1), 3), std::domain_error);
}

TEST_CASE("series_expand times denominator reproduces the numerator") {
  std::mt19937 rng(13);
  for (int it = 0; it < 40; ++it) {
    auto vars = make_vars("x", 1 + it % 3);
    MPoly p = testutil::random_poly(rng, vars, 2, 4, 5);
    MPoly q = testutil::random_poly(rng, vars, 2, 4, 5);
    q.add_term(MultiIndex(vars.size(), 0), 1 - q.coeff(MultiIndex(vars.size(), 0)) + (it % 2));
    unsigned cap = vars.size() == 3 ? 4 : 6;
    auto s = series_expand(RatFun(p, q), cap);
    CHECK(s * q == TruncatedSeries::from_poly(p, cap));
  }
}

TEST_CASE("series_hadamard") {
  MPoly a = var(X3, 0), b = var(X3, 1), c = var(X3, 2), one = cst(X3, 1);
  auto f = series_expand(RatFun(one, one - a - b - c), 3);
  auto g = series_expand(RatFun(one, one - a * b * c), 3);
  auto h = series_hadamard(f, g);
  // 6!/(2!)^3 computed directly
  Int fact6 = 720, fact2 = 2;
  CHECK(h.coeff({2, 2, 2}) == Rat(fact6 / (fact2 * fact2 * fact2)));
  TruncatedSeries ones(X3, 3);
  for_each_index(3, 3, [&](const MultiIndex& e) { ones.set(e, 1); });
  CHECK(series_hadamard(f, ones) == f);
  CHECK(series_hadamard(f, TruncatedSeries(X3, 3)).is_zero());
  CHECK_THROWS_AS(series_hadamard(f, series_expand(RatFun(one, one - a), 2)), std::invalid_argument);
}

TEST_CASE("rational reconstruction") {
  Int m = Int("1000000007") * Int("998244353");
  Rat q(-37, 91);
  Int inv;
  Int d = 91;
  mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
  Int a = (Int(-37) * inv) % m;
  if (a < 0) a += m;
  auto r = rational_reconstruct(a, m);
  REQUIRE(r);
  CHECK(*r == q);
}

TEST_CASE("first_dependency finds planted relations exactly") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> val(-50, 50), row(0, 39);
  for (int it = 0; it < 30; ++it) {
    std::vector<SparseColumn> cols;
    for (int j = 0; j < 12; ++j) {
      std::map<uint32_t, Int> c;
      for (int k = 0; k < 8; ++k) c[row(rng)] = val(rng);
      cols.emplace_back(c.begin(), c.end());
    }
    // plant: col 12 = 3 col2 - 7 col5 + col9 (scaled by 2 so the relation is non-monic)
    std::map<uint32_t, Int> c;
    for (auto [j, f] : std::vector<std::pair<int, int>>{{2, 3}, {5, -7}, {9, 1}})
      for (auto& [r, x] : cols[j]) c[r] += 2 * f * x;
    SparseColumn planted;
    for (auto& [r, x] : c)
      if (x != 0) planted.emplace_back(r, x);
    cols.push_back(planted);
    auto dep = first_dependency(cols, 4);
    REQUIRE(dep);
    CHECK(dep->column == 12);
    CHECK(verify_kernel(cols, dep->v));
    CHECK(dep->v[12] == 1);
    CHECK(dep->v[2] == -6);
  }
  std::vector<SparseColumn> indep{{{0, 1}}, {{1, 1}}, {{0, 2}, {1, 3}, {2, 1}}};
  CHECK(!first_dependency(indep, 0));
}
