#include "ph/algebra.hpp"

#include <algorithm>

namespace ph {

PolyMatrix::PolyMatrix(size_t rows, size_t cols, const std::vector<std::string>& vars)
    : rows_(rows), cols_(cols), vars_(vars), e_(rows * cols, MPoly(vars)) {}

PolyMatrix PolyMatrix::identity(size_t n, const std::vector<std::string>& vars) {
  PolyMatrix m(n, n, vars);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = MPoly::constant(vars, 1);
  return m;
}

std::vector<MPoly> PolyMatrix::apply(const std::vector<MPoly>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("PolyMatrix::apply: size mismatch");
  std::vector<MPoly> r(rows_, MPoly(vars_));
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
  return r;
}

Int PolyMatrix::max_norm1_row() const {
  Int best = 0;
  for (size_t i = 0; i < rows_; ++i) {
    Int s = 0;
    for (size_t j = 0; j < cols_; ++j) s += at(i, j).norm1();
    if (s > best) best = s;
  }
  return best;
}

namespace {

MPoly exact(const MPoly& a, const MPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("fraction-free elimination: inexact division");
  return *q;
}

// in-place fraction-free echelon; returns pivots (row, col) and the determinant sign from swaps
struct Echelon {
  std::vector<std::pair<size_t, size_t>> pivots;
  int sign = 1;
};

Echelon bareiss(std::vector<std::vector<MPoly>>& a, const std::vector<std::string>& vars) {
  Echelon out;
  const size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  MPoly prev = MPoly::constant(vars, 1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      out.sign = -out.sign;
    }
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cols; ++j) {
        MPoly t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        a[i][j] = exact(t, prev);
      }
      a[i][c] = MPoly(vars);
    }
    out.pivots.emplace_back(r, c);
    prev = a[r][c];
    ++r;
  }
  return out;
}

std::vector<std::vector<MPoly>> rows_of(const PolyMatrix& m) {
  std::vector<std::vector<MPoly>> a(m.rows(), std::vector<MPoly>(m.cols()));
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) a[i][j] = m.at(i, j);
  return a;
}

}  // namespace

MPoly determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: non-square matrix");
  if (m.rows() == 0) return MPoly::constant(m.vars(), 1);
  auto a = rows_of(m);
  Echelon e = bareiss(a, m.vars());
  if (e.pivots.size() < m.rows()) return MPoly(m.vars());
  MPoly d = a[m.rows() - 1][m.cols() - 1];
  return e.sign < 0 ? -d : d;
}

std::vector<RatFun> cramer_solve(const PolyMatrix& m, const std::vector<MPoly>& b) {
  if (m.rows() != m.cols()) throw std::invalid_argument("cramer_solve: non-square matrix");
  if (b.size() != m.rows()) throw std::invalid_argument("cramer_solve: right-hand side size");
  MPoly d = determinant(m);
  if (d.is_zero()) throw std::domain_error("cramer_solve: singular matrix");
  std::vector<RatFun> out;
  for (size_t k = 0; k < m.cols(); ++k) {
    PolyMatrix mk = m;
    for (size_t i = 0; i < m.rows(); ++i) mk.at(i, k) = b[i];
    out.emplace_back(determinant(mk), d);
  }
  return out;
}

EchelonInfo fraction_free_echelon(const PolyMatrix& m) {
  auto work = rows_of(m);
  std::vector<size_t> order(m.rows());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  EchelonInfo info;
  const size_t rows = m.rows(), cols = m.cols();
  MPoly prev = MPoly::constant(m.vars(), 1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && work[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(work[p], work[r]);
    std::swap(order[p], order[r]);
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cols; ++j) work[i][j] = exact(work[r][c] * work[i][j] - work[i][c] * work[r][j], prev);
      work[i][c] = MPoly(m.vars());
    }
    info.pivot_cols.push_back(c);
    info.pivot_rows.push_back(order[r]);
    prev = work[r][c];
    ++r;
  }
  return info;
}

std::vector<MPoly> nullspace_vector(const PolyMatrix& m) {
  EchelonInfo info = fraction_free_echelon(m);
  const size_t rank = info.pivot_cols.size();
  if (rank == m.cols()) throw std::domain_error("nullspace_vector: full column rank");
  size_t free_col = 0;
  {
    size_t k = 0;
    while (k < rank && info.pivot_cols[k] == free_col) ++k, ++free_col;
  }
  // the pivot rows restricted to pivot columns are independent, so the
  // (rank) x (rank+1) system has a one-dimensional kernel given by signed minors
  std::vector<size_t> cols;
  for (size_t c : info.pivot_cols)
    if (c < free_col) cols.push_back(c);
  cols.push_back(free_col);
  std::vector<size_t> rows;
  for (size_t k = 0; k < rank; ++k)
    if (info.pivot_cols[k] < free_col) rows.push_back(info.pivot_rows[k]);
  const size_t p = rows.size();
  std::vector<MPoly> v(m.cols(), MPoly(m.vars()));
  for (size_t k = 0; k <= p; ++k) {
    PolyMatrix minor(p, p, m.vars());
    for (size_t i = 0; i < p; ++i) {
      size_t jj = 0;
      for (size_t j = 0; j <= p; ++j) {
        if (j == k) continue;
        minor.at(i, jj++) = m.at(rows[i], cols[j]);
      }
    }
    MPoly d = determinant(minor);
    v[cols[k]] = (k % 2 == 0) ? d : -d;
  }
  return v;
}

}  // namespace ph
