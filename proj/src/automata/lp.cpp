#include "lp.hpp"

#include <algorithm>

namespace ph::lp {

namespace {

// x >= 0, A x = b; returns a basic feasible solution minimizing sum x (two phases, Bland's rule)
// the objective counts only the first n_obj columns
std::optional<std::vector<Rat>> simplex(std::vector<std::vector<Rat>> A, std::vector<Rat> b, size_t n, size_t n_obj) {
  for (size_t i = 0; i < A.size(); ++i) {
    if (b[i] < 0) {
      for (auto& x : A[i]) x = -x;
      b[i] = -b[i];
    }
  }
  size_t m = A.size();
  // tableau columns: n originals, m artificials, rhs
  const size_t W = n + m;
  std::vector<std::vector<Rat>> T(m, std::vector<Rat>(W + 1));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = 1;
    T[i][W] = b[i];
  }
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) basis[i] = n + i;

  auto pivot = [&](size_t leave, size_t enter, std::vector<Rat>& d) {
    Rat piv = T[leave][enter];
    for (auto& x : T[leave]) x /= piv;
    for (size_t i = 0; i < T.size(); ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      Rat f = T[i][enter];
      for (size_t j = 0; j <= W; ++j)
        if (T[leave][j] != 0) T[i][j] -= f * T[leave][j];
    }
    if (d[enter] != 0) {
      Rat f = d[enter];
      for (size_t j = 0; j <= W; ++j)
        if (T[leave][j] != 0) d[j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  };
  // returns false when unbounded
  auto run = [&](std::vector<Rat>& d, size_t allowed) {
    while (true) {
      size_t enter = W;
      for (size_t j = 0; j < allowed; ++j)
        if (d[j] < 0) {
          enter = j;
          break;
        }
      if (enter == W) return true;
      size_t leave = T.size();
      Rat best;
      for (size_t i = 0; i < T.size(); ++i) {
        if (T[i][enter] <= 0) continue;
        Rat r = T[i][W] / T[i][enter];
        if (leave == T.size() || r < best || (r == best && basis[i] < basis[leave])) {
          leave = i;
          best = r;
        }
      }
      if (leave == T.size()) return false;
      pivot(leave, enter, d);
    }
  };

  // phase one: minimize the sum of artificials
  std::vector<Rat> d(W + 1, 0);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j <= W; ++j)
      if (j < n || j == W) d[j] -= T[i][j];
  run(d, W);
  if (d[W] != 0) return std::nullopt;
  // drive zero-level artificials out of the basis, dropping redundant rows
  for (size_t i = 0; i < T.size();) {
    if (basis[i] < n) {
      ++i;
      continue;
    }
    size_t j = 0;
    while (j < n && T[i][j] == 0) ++j;
    if (j == n) {
      T.erase(T.begin() + i);
      basis.erase(basis.begin() + i);
      continue;
    }
    pivot(i, j, d);
    ++i;
  }
  // phase two: minimize the sum of the objective columns
  std::vector<Rat> c(W + 1, 0);
  for (size_t j = 0; j < n_obj; ++j) c[j] = 1;
  for (size_t i = 0; i < T.size(); ++i)
    if (basis[i] < n_obj)
      for (size_t j = 0; j <= W; ++j)
        if (T[i][j] != 0) c[j] -= T[i][j];
  run(c, n);  // bounded below by 0
  std::vector<Rat> x(n, 0);
  for (size_t i = 0; i < T.size(); ++i)
    if (basis[i] < n) x[basis[i]] = T[i][W];
  return x;
}

Int floor_rat(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace

std::optional<std::vector<Rat>> feasible(const Problem& p) {
  const size_t n = p.nvars;
  std::vector<Int> lo = p.lo.empty() ? std::vector<Int>(n, 0) : p.lo;
  std::vector<size_t> bounded;
  for (size_t j = 0; j < n; ++j)
    if (!p.hi.empty() && p.hi[j]) {
      if (*p.hi[j] < lo[j]) return std::nullopt;
      bounded.push_back(j);
    }
  const size_t N = n + bounded.size();
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;
  for (size_t i = 0; i < p.A.size(); ++i) {
    std::vector<Rat> row(N, 0);
    Rat rhs = p.b[i];
    for (size_t j = 0; j < n; ++j) {
      row[j] = p.A[i][j];
      rhs -= p.A[i][j] * lo[j];
    }
    A.push_back(std::move(row));
    b.push_back(rhs);
  }
  for (size_t k = 0; k < bounded.size(); ++k) {
    std::vector<Rat> row(N, 0);
    row[bounded[k]] = 1;
    row[n + k] = 1;
    A.push_back(std::move(row));
    b.push_back(Rat(*p.hi[bounded[k]] - lo[bounded[k]]));
  }
  auto y = simplex(std::move(A), std::move(b), N, n);
  if (!y) return std::nullopt;
  std::vector<Rat> x(n);
  for (size_t j = 0; j < n; ++j) x[j] = (*y)[j] + lo[j];
  return x;
}

namespace {

// A x = b solvable over Z: column Hermite reduction, then forward substitution
bool lattice_feasible(const Problem& p) {
  const size_t m = p.A.size(), n = p.nvars;
  std::vector<std::vector<Int>> H = p.A;
  size_t col = 0;
  std::vector<std::pair<size_t, size_t>> pivots;  // (row, column)
  for (size_t i = 0; i < m && col < n; ++i) {
    // gcd-reduce row i over columns col..n-1 into column col
    while (true) {
      size_t best = n;
      for (size_t j = col; j < n; ++j)
        if (H[i][j] != 0 && (best == n || abs(H[i][j]) < abs(H[i][best]))) best = j;
      if (best == n) break;
      if (best != col)
        for (size_t r = 0; r < m; ++r) std::swap(H[r][best], H[r][col]);
      bool done = true;
      for (size_t j = col + 1; j < n; ++j) {
        if (H[i][j] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), H[i][j].get_mpz_t(), H[i][col].get_mpz_t());
        for (size_t r = 0; r < m; ++r) H[r][j] -= q * H[r][col];
        if (H[i][j] != 0) done = false;
      }
      if (done) break;
    }
    if (H[i][col] != 0) pivots.emplace_back(i, col++);
  }
  // H y = b with H lower echelon
  std::vector<Int> y(n, 0);
  size_t k = 0;
  for (size_t i = 0; i < m; ++i) {
    Int r = p.b[i];
    for (size_t j = 0; j < n; ++j) r -= H[i][j] * y[j];
    if (k < pivots.size() && pivots[k].first == i) {
      const Int& h = H[i][pivots[k].second];
      if (!mpz_divisible_p(r.get_mpz_t(), h.get_mpz_t())) return false;
      y[pivots[k].second] = r / h;
      ++k;
    } else if (r != 0) {
      return false;
    }
  }
  return true;
}

IntResult branch_and_bound(const Problem& p, size_t& nodes_left);

}  // namespace

IntResult integer_solve(const Problem& p, size_t& nodes_left) {
  if (!lattice_feasible(p)) return {IntStatus::Infeasible, {}};
  return branch_and_bound(p, nodes_left);
}

namespace {

IntResult branch_and_bound(const Problem& p, size_t& nodes_left) {
  if (nodes_left == 0) return {IntStatus::NodeLimit, {}};
  --nodes_left;
  auto x = feasible(p);
  if (!x) return {IntStatus::Infeasible, {}};
  for (size_t j = 0; j < p.nvars; ++j) {
    if ((*x)[j].get_den() == 1) continue;
    Int f = floor_rat((*x)[j]);
    Problem down = p, up = p;
    if (down.hi.empty()) down.hi.assign(p.nvars, std::nullopt);
    down.hi[j] = f;
    if (up.lo.empty()) up.lo.assign(p.nvars, 0);
    up.lo[j] = f + 1;
    auto r = branch_and_bound(down, nodes_left);
    if (r.status == IntStatus::Found) return r;
    auto s = branch_and_bound(up, nodes_left);
    if (s.status == IntStatus::Found) return s;
    if (r.status == IntStatus::NodeLimit || s.status == IntStatus::NodeLimit) return {IntStatus::NodeLimit, {}};
    return {IntStatus::Infeasible, {}};
  }
  IntResult out{IntStatus::Found, {}};
  for (auto& v : *x) out.x.push_back(v.get_num());
  return out;
}

}  // namespace

Int small_solution_bound(const Problem& p) {
  Int a = 1;
  for (size_t i = 0; i < p.A.size(); ++i) {
    for (auto& x : p.A[i]) a = std::max<Int>(a, abs(x));
    a = std::max<Int>(a, abs(p.b[i]));
  }
  const unsigned long m = std::max<size_t>(p.A.size(), 1);
  Int ma = a * Int(m), r;
  mpz_pow_ui(r.get_mpz_t(), ma.get_mpz_t(), 2 * m + 1);
  return r * Int(std::max<size_t>(p.nvars, 1));
}

}  // namespace ph::lp
