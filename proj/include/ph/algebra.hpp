#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ph {

using Int = mpz_class;
using Rat = mpq_class;

using MultiIndex = std::vector<unsigned>;

// graded lexicographic: total degree first, then lexicographic
struct GrlexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

unsigned total_degree(const MultiIndex& m);
unsigned max_degree(const MultiIndex& m);

struct MultiIndexHash {
  size_t operator()(const MultiIndex& m) const noexcept;
};

class MPoly {
public:
  using Terms = std::map<MultiIndex, Int, GrlexLess>;

  MPoly() = default;
  explicit MPoly(std::vector<std::string> vars);
  MPoly(std::vector<std::string> vars, Terms terms);

  static MPoly constant(const std::vector<std::string>& vars, const Int& c);
  static MPoly variable(const std::vector<std::string>& vars, size_t i);
  static MPoly monomial(const std::vector<std::string>& vars, MultiIndex e, const Int& c = 1);

  const std::vector<std::string>& vars() const { return vars_; }
  size_t nvars() const { return vars_.size(); }
  const Terms& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Int coeff(const MultiIndex& e) const;

  // adds c to the coefficient of x^e, dropping it if it cancels
  void add_term(const MultiIndex& e, const Int& c);

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const Int& c);

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(MPoly a, const Int& c) { return a *= c; }
  friend MPoly operator*(const Int& c, MPoly a) { return a *= c; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend bool operator==(const MPoly& a, const MPoly& b);
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  MPoly pow(unsigned e) const;
  MPoly derivative(size_t var) const;
  MPoly derivative(const std::string& var) const;
  MPoly shift(const MultiIndex& e) const;  // multiply by x^e

  int deg() const;              // total degree, -1 for zero
  int deg_m() const;            // maxdegree, -1 for zero
  int deg_in(size_t var) const; // -1 for zero
  Int norm1() const;
  Int norminf() const;
  Int content() const;          // nonnegative gcd of coefficients
  const MultiIndex& leading_monomial() const;
  const Int& leading_coeff() const;

  // content 1, positive leading coefficient
  MPoly normalize() const;
  MPoly divide_content(const Int& c) const;

  // value of var fixed to c; the variable stays in the list with exponent 0
  MPoly substitute(size_t var, const Int& c) const;
  // exact quotient by (x_var - 1) if divisible
  std::optional<MPoly> divide_by_x_minus_one(size_t var) const;
  // exact multivariate division, nullopt when b does not divide a
  friend std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b);

  // same polynomial over a new variable list; pos[i] is the new index of old variable i
  MPoly embed(const std::vector<std::string>& new_vars, const std::vector<size_t>& pos) const;
  MPoly rename(std::vector<std::string> new_vars) const;
  // drop variables absent from every term (given indices must be unused)
  MPoly drop_vars(const std::vector<size_t>& which) const;

  Rat eval(const std::vector<Rat>& point) const;
  // univariate view: coefficient list of var when the others are absent
  std::vector<Int> univariate_coeffs(size_t var = 0) const;
  static MPoly from_univariate(const std::vector<std::string>& vars, size_t var, const std::vector<Int>& c);

  std::string to_string() const;

private:
  void check_same(const MPoly& o) const;
  std::vector<std::string> vars_;
  Terms terms_;
};

std::vector<std::string> make_vars(const std::string& stem, size_t n);

// univariate gcd over Z[x] via primitive remainder sequences, normalized
MPoly univariate_gcd(const MPoly& a, const MPoly& b);

class RatFun {
public:
  RatFun() = default;
  RatFun(MPoly num, MPoly den);
  explicit RatFun(const MPoly& p);

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  const std::vector<std::string>& vars() const { return den_.vars(); }
  bool is_zero() const { return num_.is_zero(); }

  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);
  friend bool operator==(const RatFun& a, const RatFun& b);
  friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

  // cancels the common factor when it is a univariate polynomial gcd or an exact divisor
  RatFun reduce_univariate() const;
  std::string to_string() const;

private:
  void canon();
  MPoly num_, den_;
};

class TruncatedSeries {
public:
  using Coeffs = std::map<MultiIndex, Rat, GrlexLess>;

  TruncatedSeries() = default;
  TruncatedSeries(std::vector<std::string> vars, unsigned cap);

  static TruncatedSeries from_poly(const MPoly& p, unsigned cap);

  const std::vector<std::string>& vars() const { return vars_; }
  unsigned cap() const { return cap_; }
  const Coeffs& coeffs() const { return c_; }
  Rat coeff(const MultiIndex& e) const;
  void set(const MultiIndex& e, const Rat& v);
  bool is_zero() const { return c_.empty(); }

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const MPoly& p) const;
  TruncatedSeries scale(const Rat& r) const;
  // derivative; the cap drops by one since the top layer is unknown
  TruncatedSeries derivative(size_t var) const;
  TruncatedSeries restrict_cap(unsigned cap) const;
  // fix var to 1: only sound when every coefficient with the other exponents fixed is finitely supported
  // within the cap, so callers use it on polynomial-in-var truncations
  TruncatedSeries substitute_one(size_t var) const;
  // drops variables at exponent 0
  TruncatedSeries project(const std::vector<size_t>& keep) const;
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

private:
  void check_same(const TruncatedSeries& o) const;
  std::vector<std::string> vars_;
  unsigned cap_ = 0;
  Coeffs c_;
};

// all indices with maxdegree <= cap
void for_each_index(size_t n, unsigned cap, const std::function<void(const MultiIndex&)>& f);

TruncatedSeries series_expand(const RatFun& f, unsigned cap);
TruncatedSeries series_hadamard(const TruncatedSeries& a, const TruncatedSeries& b);

class PolyMatrix {
public:
  PolyMatrix() = default;
  PolyMatrix(size_t rows, size_t cols, const std::vector<std::string>& vars);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const std::vector<std::string>& vars() const { return vars_; }
  MPoly& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
  const MPoly& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

  static PolyMatrix identity(size_t n, const std::vector<std::string>& vars);
  std::vector<MPoly> apply(const std::vector<MPoly>& v) const;
  Int max_norm1_row() const;  // R_1 of the determinant lemma: max row sum of ‖·‖₁

private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<std::string> vars_;
  std::vector<MPoly> e_;
};

MPoly determinant(const PolyMatrix& m);
std::vector<RatFun> cramer_solve(const PolyMatrix& m, const std::vector<MPoly>& b);
std::vector<MPoly> nullspace_vector(const PolyMatrix& m);

// fraction-free row echelon form; returns pivot columns and the pivot rows they came from
struct EchelonInfo {
  std::vector<size_t> pivot_cols;
  std::vector<size_t> pivot_rows;
};
EchelonInfo fraction_free_echelon(const PolyMatrix& m);

}  // namespace ph
