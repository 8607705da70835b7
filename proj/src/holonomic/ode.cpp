#include <algorithm>
#include <sstream>

#include "ph/holonomic.hpp"

namespace ph {

namespace {

unsigned bit_length(const Int& v) { return v == 0 ? 0 : unsigned(mpz_sizeinbase(v.get_mpz_t(), 2)); }

Int ipow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

void trim(std::vector<MPoly>& c) {
  while (c.size() > 1 && c.back().is_zero()) c.pop_back();
}

using UPoly = std::vector<Int>;

UPoly umul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

void uadd(UPoly& a, const UPoly& b, const Int& f) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] += f * b[i];
}

void utrim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Int unorm(const UPoly& a) {
  Int m = 0;
  for (auto& x : a) m = std::max<Int>(m, abs(x));
  return m;
}

}  // namespace

// ---------------------------------------------------------------- LinearODE

LinearODE::LinearODE(size_t v, std::vector<MPoly> c) : var(v), coeffs(std::move(c)) { validate(); }

void LinearODE::validate() const {
  if (coeffs.empty()) throw std::invalid_argument("LinearODE: no coefficients");
  if (coeffs.back().is_zero()) throw std::invalid_argument("LinearODE: leading coefficient is zero");
  for (auto& p : coeffs)
    if (p.vars() != coeffs[0].vars()) throw std::invalid_argument("LinearODE: coefficient variables differ");
  if (var >= coeffs[0].nvars()) throw std::invalid_argument("LinearODE: distinguished variable out of range");
}

bool LinearODE::is_univariate() const {
  for (auto& p : coeffs)
    for (size_t i = 0; i < p.nvars(); ++i)
      if (i != var && p.deg_in(i) > 0) return false;
  return true;
}

TruncatedSeries LinearODE::apply(const TruncatedSeries& f) const {
  if (f.vars() != vars()) throw std::invalid_argument("LinearODE::apply: variable mismatch");
  const unsigned r = unsigned(order());
  if (f.cap() < r) throw std::invalid_argument("LinearODE::apply: cap below the order");
  const unsigned cap = f.cap() - r;
  TruncatedSeries acc(f.vars(), cap), d = f;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (i > 0) d = d.derivative(var);
    if (!coeffs[i].is_zero()) acc = acc + d.restrict_cap(cap) * coeffs[i];
  }
  return acc;
}

bool LinearODE::annihilates(const TruncatedSeries& f) const { return apply(f).is_zero(); }

std::string LinearODE::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << coeffs[i].to_string() << ")";
    if (i == 1) os << "*D";
    if (i > 1) os << "*D^" << i;
  }
  os << " [D = d/d" << var_name() << "]";
  return os.str();
}

// ---------------------------------------------------------------- PRecurrence

void PRecurrence::validate() const {
  if (t.size() != size_t(s) + S + 1) throw std::invalid_argument("PRecurrence: offset count");
  for (auto& p : t)
    if (!p.empty() && p.back() == 0) throw std::invalid_argument("PRecurrence: untrimmed polynomial");
  if (t.back().empty()) throw std::invalid_argument("PRecurrence: t_S is zero");
}

Int PRecurrence::eval(const std::vector<Int>& poly, const Int& n) {
  Int r = 0;
  for (size_t i = poly.size(); i-- > 0;) r = r * n + poly[i];
  return r;
}

bool PRecurrence::annihilates(const std::vector<Rat>& u, unsigned n_max) const {
  for (unsigned n = n0; n <= n_max && size_t(n) + S < u.size(); ++n) {
    Rat acc = 0;
    for (int k = -int(s); k <= int(S); ++k) {
      long idx = long(n) + k;
      if (idx < 0) continue;
      acc += Rat(eval(at(k), Int(n))) * u[size_t(idx)];
    }
    if (acc != 0) return false;
  }
  return true;
}

bool PRecurrence::annihilates(const std::vector<Int>& u, unsigned n_max) const {
  std::vector<Rat> q(u.begin(), u.end());
  return annihilates(q, n_max);
}

std::string PRecurrence::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int k = -int(s); k <= int(S); ++k) {
    auto& p = at(k);
    if (p.empty()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << MPoly::from_univariate({"n"}, 0, p).to_string() << ")*u(n";
    if (k > 0) os << "+" << k;
    if (k < 0) os << k;
    os << ")";
  }
  os << " = 0 for n >= " << n0;
  return os.str();
}

// ---------------------------------------------------------------- bounds

BoundValue BoundValue::of(const Int& v, unsigned max_bits) {
  unsigned b = bit_length(v);
  BoundValue r;
  r.log2_upper = Rat(b);
  if (b <= max_bits) r.exact = v;
  return r;
}

bool BoundValue::dominates(const Int& v) const {
  if (exact) return v <= *exact;
  if (v <= 0) return true;
  return Rat(bit_length(v)) <= log2_upper;
}

std::string BoundValue::to_string() const {
  if (exact) return exact->get_str();
  return "2^(" + log2_upper.get_str() + ")";
}

void BoundReport::add(std::string name, BoundValue b, std::optional<Int> measured) {
  entries.push_back({std::move(name), std::move(b), std::move(measured)});
}

void BoundReport::append(const BoundReport& o, const std::string& prefix) {
  for (auto& e : o.entries) entries.push_back({prefix + e.name, e.bound, e.measured});
  for (auto& n : o.notes) notes.push_back(prefix + n);
}

bool BoundReport::all_hold() const {
  return std::all_of(entries.begin(), entries.end(), [](const BoundEntry& e) { return e.holds(); });
}

std::vector<std::string> BoundReport::violations() const {
  std::vector<std::string> out;
  for (auto& e : entries)
    if (!e.holds()) out.push_back(e.name + ": measured " + e.measured->get_str() + " > " + e.bound.to_string());
  return out;
}

const BoundEntry* BoundReport::find(const std::string& name) const {
  for (auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

// ---------------------------------------------------------------- specialization

LinearODE specialize_ode_to_one(const LinearODE& ode, const std::vector<size_t>& vars_to_fix) {
  ode.validate();
  std::vector<MPoly> c = ode.coeffs;
  for (size_t y : vars_to_fix) {
    if (y == ode.var) throw std::invalid_argument("specialize_ode_to_one: cannot fix the distinguished variable");
    if (y >= ode.vars().size()) throw std::invalid_argument("specialize_ode_to_one: variable out of range");
    // divide out the largest common power of (y - 1)
    while (true) {
      std::vector<MPoly> q;
      bool all = true;
      for (auto& p : c) {
        if (p.is_zero()) {
          q.push_back(p);
          continue;
        }
        auto d = p.divide_by_x_minus_one(y);
        if (!d) {
          all = false;
          break;
        }
        q.push_back(std::move(*d));
      }
      if (!all) break;
      c = std::move(q);
    }
    for (auto& p : c) p = p.substitute(y, 1);
  }
  std::vector<size_t> drop = vars_to_fix;
  std::sort(drop.begin(), drop.end());
  drop.erase(std::unique(drop.begin(), drop.end()), drop.end());
  for (auto& p : c) p = p.drop_vars(drop);
  size_t v = ode.var - size_t(std::count_if(drop.begin(), drop.end(), [&](size_t k) { return k < ode.var; }));
  trim(c);
  if (c.back().is_zero()) throw std::logic_error("specialize_ode_to_one: specialization became trivial");
  return LinearODE(v, std::move(c));
}

BoundReport specialization_bounds(const LinearODE& in, const LinearODE& out, size_t fixed, unsigned max_bits) {
  BoundReport r;
  r.add("order", BoundValue::of(Int(in.order()), max_bits), Int(out.order()));
  for (size_t i = 0; i <= out.order(); ++i) {
    const MPoly& p = in.coeffs[i];
    const MPoly& q = out.coeffs[i];
    if (p.is_zero()) {
      r.add("deg[" + std::to_string(i) + "]", BoundValue::of(0, max_bits), Int(q.is_zero() ? 0 : 1));
      continue;
    }
    r.add("deg[" + std::to_string(i) + "]", BoundValue::of(Int(p.deg_m()), max_bits), Int(std::max(q.deg(), 0)));
    Int b = p.norminf() * ipow(Int(p.deg_m() + 1), fixed) * ipow(Int(2), unsigned(p.deg()));
    r.add("norm[" + std::to_string(i) + "]", BoundValue::of(b, max_bits), q.norminf());
  }
  return r;
}

// ---------------------------------------------------------------- sum

namespace {

// rows of d^k f in the basis f..d^{r-1}f, scaled by lead^k; returns k = 0..K
std::vector<std::vector<MPoly>> derivative_basis(const LinearODE& a, size_t K) {
  const size_t r = a.order();
  const MPoly& lead = a.coeffs[r];
  const MPoly dlead = lead.derivative(a.var);
  const auto& vars = a.vars();
  std::vector<std::vector<MPoly>> out;
  std::vector<MPoly> c(r, MPoly(vars));
  c[0] = MPoly::constant(vars, 1);
  out.push_back(c);
  for (size_t k = 0; k < K; ++k) {
    std::vector<MPoly> n(r, MPoly(vars));
    const MPoly top = c[r - 1];
    for (size_t i = 0; i < r; ++i) {
      n[i] = lead * c[i].derivative(a.var) - dlead * c[i] * Int(k) - top * a.coeffs[i];
      if (i > 0) n[i] += lead * c[i - 1];
    }
    c = std::move(n);
    out.push_back(c);
  }
  return out;
}

}  // namespace

LinearODE ode_sum(const LinearODE& a, const LinearODE& b) {
  a.validate();
  b.validate();
  if (a.vars() != b.vars() || a.var != b.var) throw std::invalid_argument("ode_sum: variable mismatch");
  if (!a.is_univariate() || !b.is_univariate()) throw std::invalid_argument("ode_sum: coefficients must be univariate");
  if (a.order() == 0) return b;
  if (b.order() == 0) return a;
  const size_t ra = a.order(), rb = b.order(), K = ra + rb;
  const auto& vars = a.vars();
  auto ca = derivative_basis(a, K), cb = derivative_basis(b, K);
  const MPoly &la = a.coeffs[ra], &lb = b.coeffs[rb];
  // column k is scaled by la^k lb^k to clear denominators
  PolyMatrix m(ra + rb, K + 1, vars);
  MPoly pa = MPoly::constant(vars, 1), pb = pa;
  std::vector<MPoly> scale;
  for (size_t k = 0; k <= K; ++k) {
    for (size_t i = 0; i < ra; ++i) m.at(i, k) = ca[k][i] * pb;
    for (size_t i = 0; i < rb; ++i) m.at(ra + i, k) = cb[k][i] * pa;
    scale.push_back(pa * pb);
    pa = pa * la;
    pb = pb * lb;
  }
  auto lam = nullspace_vector(m);
  std::vector<MPoly> c(K + 1, MPoly(vars));
  for (size_t k = 0; k <= K; ++k) c[k] = lam[k] * scale[k];
  trim(c);
  MPoly g(vars);
  for (auto& p : c)
    if (!p.is_zero()) g = g.is_zero() ? p : univariate_gcd(g, p);
  if (!g.is_zero() && !(g.is_constant() && abs(g.coeff(MultiIndex(vars.size(), 0))) == 1))
    for (auto& p : c)
      if (!p.is_zero()) p = *divide_exact(p, g);
  if (c.back().leading_coeff() < 0)
    for (auto& p : c) p = -p;
  return LinearODE(a.var, std::move(c));
}

BoundReport sum_bounds(const LinearODE& a, const LinearODE& b, const LinearODE& out, unsigned max_bits) {
  BoundReport r;
  r.add("order", BoundValue::of(Int(a.order() + b.order()), max_bits), Int(out.order()));
  int D = 0;
  for (auto* o : {&a, &b})
    for (auto& p : o->coeffs) D = std::max(D, p.deg());
  const size_t rr = std::max(a.order(), b.order());
  int measured = 0;
  for (auto& p : out.coeffs) measured = std::max(measured, p.deg());
  r.add("degree", BoundValue::of(Int(2 * (rr + 1) * size_t(D)), max_bits), Int(measured));
  return r;
}

// ---------------------------------------------------------------- recurrence

PRecurrence ode_to_recurrence(const LinearODE& ode) {
  ode.validate();
  if (!ode.is_univariate()) throw std::invalid_argument("ode_to_recurrence: coefficients must be univariate");
  const size_t r = ode.order();
  std::vector<UPoly> q;
  for (auto& p : ode.coeffs) q.push_back(p.univariate_coeffs(ode.var));
  size_t low = SIZE_MAX;
  for (auto& p : q)
    for (size_t i = 0; i < p.size(); ++i)
      if (p[i] != 0) {
        low = std::min(low, i);
        break;
      }
  if (low == SIZE_MAX) throw std::invalid_argument("ode_to_recurrence: trivial equation");
  for (auto& p : q)
    if (!p.empty()) p.erase(p.begin(), p.begin() + long(std::min(low, p.size())));
  int D = 0, S = INT32_MIN;
  for (size_t k = 0; k <= r; ++k) {
    utrim(q[k]);
    if (q[k].empty()) continue;
    D = std::max(D, int(q[k].size()) - 1);
    for (size_t kp = 0; kp < q[k].size(); ++kp)
      if (q[k][kp] != 0) S = std::max(S, int(k) - int(kp));
  }
  PRecurrence rec;
  rec.s = unsigned(D);
  rec.S = unsigned(S);
  rec.n0 = unsigned(D);
  for (int j = -D; j <= S; ++j) {
    UPoly t;
    for (size_t k = 0; k <= r; ++k) {
      int kp = int(k) - j;
      if (kp < 0 || kp >= int(q[k].size()) || q[k][size_t(kp)] == 0) continue;
      UPoly prod{1};
      for (size_t l = 1; l <= k; ++l) prod = umul(prod, UPoly{Int(j - int(l) + 1), 1});
      uadd(t, prod, q[k][size_t(kp)]);
    }
    utrim(t);
    rec.t.push_back(std::move(t));
  }
  rec.validate();
  return rec;
}

BoundReport recurrence_bounds(const LinearODE& ode, const PRecurrence& rec, unsigned max_bits) {
  BoundReport r;
  int D = 0;
  Int qn = 0;
  for (auto& p : ode.coeffs) {
    D = std::max(D, p.deg());
    qn = std::max(qn, p.norminf());
  }
  const unsigned long ro = ode.order();
  r.add("s", BoundValue::of(Int(D), max_bits), Int(rec.s));
  r.add("S", BoundValue::of(Int(ro), max_bits), Int(rec.S));
  r.add("deg(t_S)", BoundValue::of(Int(ro), max_bits), Int(long(rec.leading().size()) - 1));
  r.add("norm(t_S)", BoundValue::of(qn * ipow(Int(std::max<unsigned long>(ro, 1)), ro + 1), max_bits),
        unorm(rec.leading()));
  return r;
}

}  // namespace ph
