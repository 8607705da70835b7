#include "ph/algebra.hpp"

#include <algorithm>

namespace ph {

TruncatedSeries::TruncatedSeries(std::vector<std::string> vars, unsigned cap) : vars_(std::move(vars)), cap_(cap) {}

TruncatedSeries TruncatedSeries::from_poly(const MPoly& p, unsigned cap) {
  TruncatedSeries s(p.vars(), cap);
  for (auto& [e, c] : p.terms())
    if (max_degree(e) <= cap) s.c_.emplace(e, Rat(c));
  return s;
}

Rat TruncatedSeries::coeff(const MultiIndex& e) const {
  auto it = c_.find(e);
  return it == c_.end() ? Rat(0) : it->second;
}

void TruncatedSeries::set(const MultiIndex& e, const Rat& v) {
  if (max_degree(e) > cap_) throw std::out_of_range("TruncatedSeries: index beyond cap");
  if (v == 0)
    c_.erase(e);
  else
    c_[e] = v;
}

void TruncatedSeries::check_same(const TruncatedSeries& o) const {
  if (vars_ != o.vars_) throw std::invalid_argument("TruncatedSeries: variable mismatch");
  if (cap_ != o.cap_) throw std::invalid_argument("TruncatedSeries: cap mismatch");
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  check_same(o);
  TruncatedSeries r = *this;
  for (auto& [e, v] : o.c_) r.set(e, r.coeff(e) + v);
  return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  check_same(o);
  TruncatedSeries r = *this;
  for (auto& [e, v] : o.c_) r.set(e, r.coeff(e) - v);
  return r;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  check_same(o);
  TruncatedSeries r(vars_, cap_);
  const size_t n = vars_.size();
  MultiIndex e(n);
  for (auto& [ea, va] : c_) {
    for (auto& [eb, vb] : o.c_) {
      bool ok = true;
      for (size_t i = 0; i < n && ok; ++i) {
        e[i] = ea[i] + eb[i];
        ok = e[i] <= cap_;
      }
      if (!ok) continue;
      r.c_[e] += va * vb;
    }
  }
  for (auto it = r.c_.begin(); it != r.c_.end();) it = it->second == 0 ? r.c_.erase(it) : std::next(it);
  return r;
}

TruncatedSeries TruncatedSeries::operator*(const MPoly& p) const {
  if (p.vars() != vars_) throw std::invalid_argument("TruncatedSeries: variable mismatch");
  return *this * from_poly(p, cap_);
}

TruncatedSeries TruncatedSeries::scale(const Rat& r) const {
  TruncatedSeries s(vars_, cap_);
  if (r == 0) return s;
  for (auto& [e, v] : c_) s.c_.emplace(e, v * r);
  return s;
}

TruncatedSeries TruncatedSeries::derivative(size_t var) const {
  if (cap_ == 0) throw std::domain_error("TruncatedSeries: cannot differentiate at cap 0");
  TruncatedSeries r(vars_, cap_ - 1);
  for (auto& [e, v] : c_) {
    if (e[var] == 0) continue;
    MultiIndex f = e;
    --f[var];
    if (max_degree(f) > cap_ - 1) continue;
    r.c_.emplace(f, v * e[var]);
  }
  return r;
}

TruncatedSeries TruncatedSeries::restrict_cap(unsigned cap) const {
  TruncatedSeries r(vars_, std::min(cap, cap_));
  for (auto& [e, v] : c_)
    if (max_degree(e) <= r.cap_) r.c_.emplace(e, v);
  return r;
}

TruncatedSeries TruncatedSeries::substitute_one(size_t var) const {
  TruncatedSeries r(vars_, cap_);
  for (auto& [e, v] : c_) {
    MultiIndex f = e;
    f[var] = 0;
    r.c_[f] += v;
  }
  for (auto it = r.c_.begin(); it != r.c_.end();) it = it->second == 0 ? r.c_.erase(it) : std::next(it);
  return r;
}

TruncatedSeries TruncatedSeries::project(const std::vector<size_t>& keep) const {
  std::vector<std::string> nv;
  for (size_t i : keep) nv.push_back(vars_[i]);
  TruncatedSeries r(nv, cap_);
  for (auto& [e, v] : c_) {
    MultiIndex f;
    size_t used = 0;
    for (size_t i : keep) {
      f.push_back(e[i]);
      used += e[i];
    }
    if (used != total_degree(e)) continue;
    r.c_.emplace(f, v);
  }
  return r;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a.vars_ == b.vars_ && a.cap_ == b.cap_ && a.c_ == b.c_;
}

void for_each_index(size_t n, unsigned cap, const std::function<void(const MultiIndex&)>& f) {
  std::vector<MultiIndex> all;
  MultiIndex e(n, 0);
  while (true) {
    all.push_back(e);
    size_t i = 0;
    while (i < n && e[i] == cap) e[i++] = 0;
    if (i == n) break;
    ++e[i];
  }
  std::sort(all.begin(), all.end(), GrlexLess{});
  for (auto& m : all) f(m);
}

TruncatedSeries series_expand(const RatFun& f, unsigned cap) {
  const MPoly& Q = f.den();
  const MultiIndex zero(Q.nvars(), 0);
  Int q0 = Q.coeff(zero);
  if (q0 == 0) throw std::domain_error("series_expand: denominator has zero constant term");
  TruncatedSeries s(Q.vars(), cap);
  std::vector<std::pair<MultiIndex, Int>> qt;
  for (auto& [e, c] : Q.terms())
    if (e != zero) qt.emplace_back(e, c);
  const size_t n = Q.nvars();
  std::map<MultiIndex, Rat, GrlexLess> out;
  MultiIndex d(n);
  for_each_index(n, cap, [&](const MultiIndex& e) {
    Rat acc = f.num().coeff(e);
    for (auto& [m, c] : qt) {
      bool ok = true;
      for (size_t i = 0; i < n && ok; ++i) {
        ok = m[i] <= e[i];
        d[i] = e[i] - (ok ? m[i] : 0);
      }
      if (!ok) continue;
      auto it = out.find(d);
      if (it != out.end()) acc -= c * it->second;
    }
    if (acc != 0) out.emplace(e, acc / q0);
  });
  for (auto& [e, v] : out) s.set(e, v);
  return s;
}

TruncatedSeries series_hadamard(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.vars() != b.vars()) throw std::invalid_argument("series_hadamard: variable mismatch");
  if (a.cap() != b.cap()) throw std::invalid_argument("series_hadamard: cap mismatch");
  TruncatedSeries r(a.vars(), a.cap());
  for (auto& [e, v] : a.coeffs()) {
    Rat w = b.coeff(e);
    if (w != 0) r.set(e, v * w);
  }
  return r;
}

}  // namespace ph
