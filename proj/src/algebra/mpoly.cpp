#include "ph/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ph {

bool GrlexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

unsigned total_degree(const MultiIndex& m) {
  unsigned s = 0;
  for (unsigned e : m) s += e;
  return s;
}

unsigned max_degree(const MultiIndex& m) {
  unsigned s = 0;
  for (unsigned e : m) s = std::max(s, e);
  return s;
}

size_t MultiIndexHash::operator()(const MultiIndex& m) const noexcept {
  size_t h = 0x9e3779b97f4a7c15ULL;
  for (unsigned e : m) h = (h ^ e) * 0x100000001b3ULL + (h >> 29);
  return h;
}

std::vector<std::string> make_vars(const std::string& stem, size_t n) {
  std::vector<std::string> v;
  for (size_t i = 0; i < n; ++i) v.push_back(stem + std::to_string(i + 1));
  return v;
}

MPoly::MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

MPoly::MPoly(std::vector<std::string> vars, Terms terms) : vars_(std::move(vars)) {
  for (auto& [e, c] : terms) {
    if (e.size() != vars_.size()) throw std::invalid_argument("MPoly: exponent length mismatch");
    if (c != 0) terms_.emplace(e, c);
  }
}

MPoly MPoly::constant(const std::vector<std::string>& vars, const Int& c) {
  MPoly p(vars);
  if (c != 0) p.terms_.emplace(MultiIndex(vars.size(), 0), c);
  return p;
}

MPoly MPoly::variable(const std::vector<std::string>& vars, size_t i) {
  if (i >= vars.size()) throw std::invalid_argument("MPoly: variable index out of range");
  MultiIndex e(vars.size(), 0);
  e[i] = 1;
  return monomial(vars, e, 1);
}

MPoly MPoly::monomial(const std::vector<std::string>& vars, MultiIndex e, const Int& c) {
  if (e.size() != vars.size()) throw std::invalid_argument("MPoly: exponent length mismatch");
  MPoly p(vars);
  if (c != 0) p.terms_.emplace(std::move(e), c);
  return p;
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Int MPoly::coeff(const MultiIndex& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Int(0) : it->second;
}

void MPoly::add_term(const MultiIndex& e, const Int& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MPoly::check_same(const MPoly& o) const {
  if (vars_ != o.vars_) throw std::invalid_argument("MPoly: variable-list mismatch");
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  check_same(o);
  for (auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  check_same(o);
  for (auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MPoly& MPoly::operator*=(const Int& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  a.check_same(b);
  MPoly r(a.vars_);
  if (a.is_zero() || b.is_zero()) return r;
  const size_t n = a.nvars();
  MultiIndex e(n);
  Int t;
  for (auto& [ea, ca] : a.terms_) {
    for (auto& [eb, cb] : b.terms_) {
      for (size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      t = ca * cb;
      r.add_term(e, t);
    }
  }
  return r;
}

bool operator==(const MPoly& a, const MPoly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

MPoly MPoly::pow(unsigned e) const {
  MPoly r = constant(vars_, 1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

MPoly MPoly::derivative(size_t var) const {
  if (var >= vars_.size()) throw std::invalid_argument("MPoly: unknown variable");
  MPoly r(vars_);
  for (auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    MultiIndex f = e;
    --f[var];
    r.terms_.emplace(std::move(f), c * e[var]);
  }
  return r;
}

MPoly MPoly::derivative(const std::string& var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) throw std::invalid_argument("MPoly: unknown variable " + var);
  return derivative(size_t(it - vars_.begin()));
}

MPoly MPoly::shift(const MultiIndex& s) const {
  MPoly r(vars_);
  for (auto& [e, c] : terms_) {
    MultiIndex f = e;
    for (size_t i = 0; i < f.size(); ++i) f[i] += s[i];
    r.terms_.emplace(std::move(f), c);
  }
  return r;
}

int MPoly::deg() const {
  int d = -1;
  for (auto& [e, c] : terms_) d = std::max(d, int(total_degree(e)));
  return d;
}

int MPoly::deg_m() const {
  int d = -1;
  for (auto& [e, c] : terms_) d = std::max(d, int(max_degree(e)));
  return d;
}

int MPoly::deg_in(size_t var) const {
  int d = -1;
  for (auto& [e, c] : terms_) d = std::max(d, int(e[var]));
  return d;
}

Int MPoly::norm1() const {
  Int s = 0;
  for (auto& [e, c] : terms_) s += abs(c);
  return s;
}

Int MPoly::norminf() const {
  Int s = 0;
  for (auto& [e, c] : terms_)
    if (abs(c) > s) s = abs(c);
  return s;
}

Int MPoly::content() const {
  Int g = 0;
  for (auto& [e, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

const MultiIndex& MPoly::leading_monomial() const {
  if (terms_.empty()) throw std::domain_error("MPoly: zero polynomial has no leading term");
  return terms_.rbegin()->first;
}

const Int& MPoly::leading_coeff() const {
  if (terms_.empty()) throw std::domain_error("MPoly: zero polynomial has no leading term");
  return terms_.rbegin()->second;
}

MPoly MPoly::divide_content(const Int& c) const {
  MPoly r = *this;
  for (auto& [e, v] : r.terms_) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
  return r;
}

MPoly MPoly::normalize() const {
  if (is_zero()) return *this;
  Int g = content();
  if (leading_coeff() < 0) g = -g;
  return divide_content(g);
}

MPoly MPoly::substitute(size_t var, const Int& c) const {
  MPoly r(vars_);
  for (auto& [e, v] : terms_) {
    MultiIndex f = e;
    Int w = v;
    if (f[var]) {
      Int p;
      mpz_pow_ui(p.get_mpz_t(), c.get_mpz_t(), f[var]);
      w *= p;
      f[var] = 0;
    }
    r.add_term(f, w);
  }
  return r;
}

std::optional<MPoly> MPoly::divide_by_x_minus_one(size_t var) const {
  // group by the other exponents, then synthetic division in var
  std::map<MultiIndex, std::map<unsigned, Int>> groups;
  for (auto& [e, c] : terms_) {
    MultiIndex rest = e;
    rest[var] = 0;
    groups[rest][e[var]] = c;
  }
  MPoly q(vars_);
  for (auto& [rest, col] : groups) {
    unsigned top = col.rbegin()->first;
    Int carry = 0;
    // a(x) = (x-1) b(x): b_{k-1} = a_k + b_k, walked from the top
    for (unsigned k = top; k >= 1; --k) {
      auto it = col.find(k);
      carry += (it == col.end() ? Int(0) : it->second);
      if (carry != 0) {
        MultiIndex f = rest;
        f[var] = k - 1;
        q.terms_.emplace(f, carry);
      }
    }
    auto it0 = col.find(0);
    Int a0 = it0 == col.end() ? Int(0) : it0->second;
    if (a0 + carry != 0) return std::nullopt;
  }
  return q;
}

std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b) {
  a.check_same(b);
  if (b.is_zero()) throw std::domain_error("divide_exact: division by zero");
  MPoly rem = a, q(a.vars_);
  const MultiIndex& lb = b.leading_monomial();
  const Int& cb = b.leading_coeff();
  const size_t n = a.nvars();
  while (!rem.is_zero()) {
    const MultiIndex& lr = rem.leading_monomial();
    MultiIndex s(n);
    for (size_t i = 0; i < n; ++i) {
      if (lr[i] < lb[i]) return std::nullopt;
      s[i] = lr[i] - lb[i];
    }
    if (!mpz_divisible_p(rem.leading_coeff().get_mpz_t(), cb.get_mpz_t())) return std::nullopt;
    Int c = rem.leading_coeff() / cb;
    q.add_term(s, c);
    for (auto& [e, v] : b.terms_) {
      MultiIndex f = e;
      for (size_t i = 0; i < n; ++i) f[i] += s[i];
      rem.add_term(f, -c * v);
    }
  }
  return q;
}

MPoly MPoly::embed(const std::vector<std::string>& new_vars, const std::vector<size_t>& pos) const {
  if (pos.size() != vars_.size()) throw std::invalid_argument("MPoly::embed: position map size");
  MPoly r(new_vars);
  for (auto& [e, c] : terms_) {
    MultiIndex f(new_vars.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) f[pos[i]] += e[i];
    r.add_term(f, c);
  }
  return r;
}

MPoly MPoly::rename(std::vector<std::string> new_vars) const {
  if (new_vars.size() != vars_.size()) throw std::invalid_argument("MPoly::rename: size");
  MPoly r(std::move(new_vars));
  r.terms_ = terms_;
  return r;
}

MPoly MPoly::drop_vars(const std::vector<size_t>& which) const {
  std::vector<bool> drop(vars_.size(), false);
  for (size_t i : which) drop[i] = true;
  std::vector<std::string> nv;
  for (size_t i = 0; i < vars_.size(); ++i)
    if (!drop[i]) nv.push_back(vars_[i]);
  MPoly r(nv);
  for (auto& [e, c] : terms_) {
    MultiIndex f;
    for (size_t i = 0; i < e.size(); ++i) {
      if (drop[i]) {
        if (e[i]) throw std::invalid_argument("MPoly::drop_vars: variable in use");
      } else {
        f.push_back(e[i]);
      }
    }
    r.add_term(f, c);
  }
  return r;
}

Rat MPoly::eval(const std::vector<Rat>& point) const {
  Rat s = 0;
  for (auto& [e, c] : terms_) {
    Rat t = c;
    for (size_t i = 0; i < e.size(); ++i) {
      for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
    }
    s += t;
  }
  return s;
}

std::vector<Int> MPoly::univariate_coeffs(size_t var) const {
  std::vector<Int> c(std::max(0, deg_in(var) + 1));
  for (auto& [e, v] : terms_) {
    for (size_t i = 0; i < e.size(); ++i)
      if (i != var && e[i]) throw std::invalid_argument("MPoly: not univariate");
    c[e[var]] += v;
  }
  return c;
}

MPoly MPoly::from_univariate(const std::vector<std::string>& vars, size_t var, const std::vector<Int>& c) {
  MPoly r(vars);
  for (size_t k = 0; k < c.size(); ++k) {
    MultiIndex e(vars.size(), 0);
    e[var] = unsigned(k);
    r.add_term(e, c[k]);
  }
  return r;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Int a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = total_degree(e) > 0 && a == 1;
    if (!unit) os << a.get_str();
    bool need_star = !unit;
    for (size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (need_star) os << "*";
      os << vars_[i];
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

namespace {

using UPoly = std::vector<Int>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Int ucontent(const UPoly& p) {
  Int g = 0;
  for (auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

UPoly uprimitive(UPoly p) {
  trim(p);
  if (p.empty()) return p;
  Int g = ucontent(p);
  if (p.back() < 0) g = -g;
  for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return p;
}

// pseudo-remainder of a by b
UPoly uprem(UPoly a, const UPoly& b) {
  trim(a);
  const size_t db = b.size() - 1;
  const Int& lb = b.back();
  while (a.size() >= b.size()) {
    Int la = a.back();
    size_t s = a.size() - b.size();
    for (auto& c : a) c *= lb;
    for (size_t i = 0; i <= db; ++i) a[s + i] -= la * b[i];
    trim(a);
    a = uprimitive(a);
  }
  return a;
}

}  // namespace

MPoly univariate_gcd(const MPoly& a, const MPoly& b) {
  if (a.vars() != b.vars()) throw std::invalid_argument("univariate_gcd: variable-list mismatch");
  size_t var = 0;
  for (size_t i = 0; i < a.nvars(); ++i)
    if (a.deg_in(i) > 0 || b.deg_in(i) > 0) var = i;
  UPoly p = uprimitive(a.univariate_coeffs(var)), q = uprimitive(b.univariate_coeffs(var));
  Int cg = 0;
  {
    Int ca = a.content(), cb = b.content();
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  }
  if (p.empty()) return MPoly::from_univariate(a.vars(), var, q) * (q.empty() ? Int(0) : cg);
  if (q.empty()) return MPoly::from_univariate(a.vars(), var, p) * cg;
  while (!q.empty()) {
    if (p.size() < q.size()) std::swap(p, q);
    UPoly r = uprem(p, q);
    p = std::move(q);
    q = uprimitive(std::move(r));
  }
  return MPoly::from_univariate(a.vars(), var, p) * cg;
}

}  // namespace ph
