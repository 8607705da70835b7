#include <algorithm>
#include <chrono>
#include <map>
#include <unordered_map>

#include "ph/holonomic.hpp"
#include "ph/modlinalg.hpp"
#include "ph/semilinear.hpp"

namespace ph {

namespace {

unsigned bit_length(const Int& v) { return v == 0 ? 0 : unsigned(mpz_sizeinbase(v.get_mpz_t(), 2)); }

Int ipow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// ceil(log2 v) for v >= 1
unsigned ceil_log2(const Int& v) {
  if (v <= 1) return 0;
  Int w = v - 1;
  return bit_length(w);
}

std::vector<std::string> default_vars(size_t d) {
  if (d == 1) return {"x"};
  return make_vars("x", d);
}

// f = g / (1 - z) with g free of z
std::optional<RatFun> strip_geometric(const RatFun& f, size_t z) {
  auto q = f.den().divide_by_x_minus_one(z);
  if (!q || q->deg_in(z) > 0 || f.num().deg_in(z) > 0) return std::nullopt;
  return RatFun(f.num(), -*q);
}

// monomials over the given variable positions with total degree <= D, graded order
std::vector<MultiIndex> monomials(size_t nv, int D, const std::vector<size_t>& over) {
  std::vector<MultiIndex> out;
  if (D < 0) return out;
  MultiIndex e(nv, 0);
  std::function<void(size_t, int)> rec = [&](size_t k, int left) {
    if (k == over.size()) {
      out.push_back(e);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[over[k]] = unsigned(a);
      rec(k + 1, left - a);
    }
    e[over[k]] = 0;
  };
  rec(0, D);
  std::stable_sort(out.begin(), out.end(), GrlexLess());
  return out;
}

// the rational function F over (x, t_active) whose t-residue is the Hadamard product
struct Prepared {
  MPoly P, Q;
  size_t n = 0;                // x variables
  std::vector<size_t> tvars;   // positions of the t variables
  std::vector<size_t> active;  // original index of each t variable
};

Prepared prepare(const RatFun& f1, const RatFun& f2, const std::vector<size_t>& active) {
  const auto& vars = f1.vars();
  const size_t n = vars.size();
  unsigned M = 1;
  for (const MPoly* p : {&f1.num(), &f1.den(), &f2.num(), &f2.den()})
    for (auto& [e, c] : p->terms())
      for (size_t a : active) M = std::max(M, e[a] + 1);
  Prepared pr;
  pr.n = n;
  pr.active = active;
  std::vector<std::string> fv = vars;
  for (size_t k = 0; k < active.size(); ++k) {
    fv.push_back("t_" + vars[active[k]]);
    pr.tvars.push_back(n + k);
  }
  auto sub = [&](const MPoly& p1, const MPoly& p2, unsigned extra) {
    MPoly r(fv);
    for (auto& [k1, c1] : p1.terms())
      for (auto& [k2, c2] : p2.terms()) {
        MultiIndex e(k1);
        for (size_t a : active) e.push_back(M - 1 - k1[a] + k2[a] + extra);
        r.add_term(e, c1 * c2);
      }
    return r;
  };
  pr.P = sub(f1.num(), f2.num(), 0);
  pr.Q = sub(f1.den(), f2.den(), 1);
  return pr;
}

// ids assigned in graded order so that elimination pivots on the largest monomial
std::vector<SparseColumn> to_sparse(const std::vector<MPoly>& cols) {
  std::map<MultiIndex, uint32_t, GrlexLess> ids;
  for (auto& c : cols)
    for (auto& [e, v] : c.terms()) ids.emplace(e, 0);
  uint32_t k = 0;
  for (auto& [e, id] : ids) id = k++;
  std::vector<SparseColumn> out;
  out.reserve(cols.size());
  for (auto& c : cols) {
    SparseColumn s;
    s.reserve(c.size());
    for (auto& [e, v] : c.terms()) s.emplace_back(ids.at(e), v);
    out.push_back(std::move(s));
  }
  return out;
}

// coefficients over the original variables; the common integer content is removed
LinearODE finish_ode(size_t j, std::vector<MPoly> c) {
  while (c.size() > 1 && c.back().is_zero()) c.pop_back();
  Int g = 0;
  for (auto& p : c) {
    Int ct = p.content();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ct.get_mpz_t());
  }
  if (g > 1)
    for (auto& p : c) p = p.divide_content(g);
  if (c.back().leading_coeff() < 0)
    for (auto& p : c) p = -p;
  return LinearODE(j, std::move(c));
}

// the ansatz of size N': columns Q^{N'-s-1} x^alpha P_u with u = (gamma on x_j, beta on t)
class Ansatz {
public:
  Ansatz(const Prepared& pr, size_t j, const HadamardLimits& lim, const std::vector<std::string>& vars)
      : pr_(pr), j_(j), lim_(lim), vars_(vars), nv_(pr.n + pr.tvars.size()) {
    for (size_t i = 0; i < pr.n; ++i) xs_.push_back(i);
    advance();
  }

  bool exhausted() const { return next_ > lim_.max_ansatz || tags_.size() > lim_.max_columns; }
  size_t next_size() const { return tags_.size(); }
  unsigned level() const { return next_; }

  std::optional<LinearODE> step() {
    const unsigned Np = next_;
    std::vector<MPoly> Qp{MPoly::constant(pr_.Q.vars(), 1)};
    for (unsigned e = 1; e < Np; ++e) Qp.push_back(Qp.back() * pr_.Q);
    std::vector<MPoly> cols;
    for (auto& tg : tags_) {
      MultiIndex u = tg.beta;
      u[j_] += tg.gamma;
      unsigned s = total_degree(u);
      cols.push_back((Qp[Np - s - 1] * Pu(u)).shift(tg.alpha));
    }
    auto dep = first_dependency(to_sparse(cols), 0, KernelLimits{lim_.max_primes});
    if (!dep) {
      ++next_;
      advance();
      return std::nullopt;
    }
    // lexicographically smallest beta with a nonzero part
    auto beta_of = [&](const Tag& t) { return MultiIndex(t.beta.begin() + long(pr_.n), t.beta.end()); };
    std::optional<MultiIndex> bmin;
    for (size_t c = 0; c < tags_.size(); ++c)
      if (dep->v[c] != 0 && (!bmin || beta_of(tags_[c]) < *bmin)) bmin = beta_of(tags_[c]);
    std::vector<MPoly> coeffs;
    for (size_t c = 0; c < tags_.size(); ++c) {
      if (dep->v[c] == 0 || beta_of(tags_[c]) != *bmin) continue;
      const Tag& t = tags_[c];
      if (coeffs.size() <= t.gamma) coeffs.resize(t.gamma + 1, MPoly(vars_));
      coeffs[t.gamma] += MPoly::monomial(vars_, MultiIndex(t.alpha.begin(), t.alpha.begin() + long(pr_.n)), dep->v[c]);
    }
    return finish_ode(j_, std::move(coeffs));
  }

private:
  struct Tag {
    MultiIndex alpha, beta;
    unsigned gamma;
  };

  void advance() {
    tags_.clear();
    if (next_ > lim_.max_ansatz) return;
    const unsigned Np = next_;
    for (unsigned tot = 0; tot < Np; ++tot)
      for (unsigned gam = 0; gam <= tot; ++gam)
        for (unsigned bs = 0; bs + gam <= tot; ++bs)
          for (auto& beta : monomials(nv_, int(bs), pr_.tvars)) {
            if (total_degree(beta) != bs) continue;
            for (auto& alpha : monomials(nv_, int(tot - gam - bs), xs_))
              if (total_degree(alpha) == tot - gam - bs) tags_.push_back({alpha, beta, gam});
          }
  }

  const MPoly& Pu(const MultiIndex& u) {
    auto it = cache_.find(u);
    if (it != cache_.end()) return it->second;
    unsigned s = total_degree(u);
    if (s == 0) return cache_.emplace(u, pr_.P).first->second;
    size_t i = 0;
    while (u[i] == 0) ++i;
    MultiIndex b = u;
    --b[i];
    MPoly pb = Pu(b);
    MPoly r = pr_.Q * pb.derivative(i) - pr_.Q.derivative(i) * pb * Int(s);
    return cache_.emplace(u, std::move(r)).first->second;
  }

  const Prepared& pr_;
  size_t j_;
  const HadamardLimits& lim_;
  const std::vector<std::string>& vars_;
  size_t nv_;
  std::vector<size_t> xs_;
  unsigned next_ = 1;
  std::vector<Tag> tags_;
  std::map<MultiIndex, MPoly> cache_;
};

// sum_g p_g(x) P_g Q^{k-g} = sum_i (Q d_{t_i} H_i - k (d_{t_i} Q) H_i): then L = sum p_g d_j^g maps F
// to a sum of t-derivatives, whose residue vanishes. Stages run over total degree E, order r, k in {r, r+1}.
class Certificate {
public:
  Certificate(const Prepared& pr, size_t j, const HadamardLimits& lim, const std::vector<std::string>& vars)
      : pr_(pr), j_(j), lim_(lim), vars_(vars), nv_(pr.n + pr.tvars.size()) {
    for (size_t i = 0; i < pr.n; ++i) xs_.push_back(i);
    for (size_t i = 0; i < nv_; ++i) all_.push_back(i);
    Pg_.push_back(pr.P);
    for (unsigned g = 1; g <= lim.max_certificate_order; ++g) {
      const MPoly& pb = Pg_.back();
      Pg_.push_back(pr.Q * pb.derivative(j) - pr.Q.derivative(j) * pb * Int(g));
    }
    Qp_.push_back(MPoly::constant(pr.Q.vars(), 1));
    for (unsigned e = 1; e <= lim.max_certificate_order + 1; ++e) Qp_.push_back(Qp_.back() * pr.Q);
    for (size_t t : pr.tvars) dQ_.push_back(pr.Q.derivative(t));
    settle();
  }

  bool exhausted() const { return E_ > lim_.max_certificate_degree || next_size() > lim_.max_certificate_columns; }
  size_t next_size() const { return hmon_.size() * pr_.tvars.size() + lcols_.size(); }
  std::string where() const { return where_; }

  std::optional<LinearODE> step() {
    std::vector<MPoly> cols;
    cols.reserve(next_size());
    for (size_t ti = 0; ti < pr_.tvars.size(); ++ti)
      for (auto& m : hmon_) {
        MPoly h = MPoly::monomial(pr_.Q.vars(), m);
        cols.push_back(pr_.Q * h.derivative(pr_.tvars[ti]) - dQ_[ti] * h * Int(k_));
      }
    const size_t first_main = cols.size();
    for (auto& c : lcols_) cols.push_back(c);
    auto dep = first_dependency(to_sparse(cols), first_main, KernelLimits{lim_.max_primes});
    if (!dep) {
      next_stage();
      settle();
      return std::nullopt;
    }
    std::vector<MPoly> coeffs(r_ + 1, MPoly(vars_));
    for (size_t c = 0; c < ltags_.size(); ++c) {
      const Int& v = dep->v[first_main + c];
      if (v == 0) continue;
      coeffs[ltags_[c].first] +=
          MPoly::monomial(vars_, MultiIndex(ltags_[c].second.begin(), ltags_[c].second.begin() + long(pr_.n)), v);
    }
    where_ = "E=" + std::to_string(E_) + " r=" + std::to_string(r_) + " k=" + std::to_string(k_);
    return finish_ode(j_, std::move(coeffs));
  }

private:
  void next_stage() {
    if (k_ == r_) {
      ++k_;
    } else if (r_ < lim_.max_certificate_order) {
      ++r_;
      k_ = r_;
    } else {
      ++E_;
      r_ = k_ = 0;
    }
  }

  // builds the next stage with at least one main column
  void settle() {
    while (E_ <= lim_.max_certificate_degree) {
      hmon_ = monomials(nv_, int(E_) - pr_.Q.deg() + 1, all_);
      ltags_.clear();
      lcols_.clear();
      for (unsigned g = 0; g <= r_; ++g) {
        MPoly base = Pg_[g] * Qp_[k_ - g];
        if (base.is_zero()) continue;
        for (auto& m : monomials(nv_, int(E_) - base.deg(), xs_)) {
          ltags_.emplace_back(g, m);
          lcols_.push_back(base.shift(m));
        }
      }
      if (!lcols_.empty()) return;
      next_stage();
    }
  }

  const Prepared& pr_;
  size_t j_;
  const HadamardLimits& lim_;
  const std::vector<std::string>& vars_;
  size_t nv_;
  std::vector<size_t> xs_, all_;
  std::vector<MPoly> Pg_, Qp_, dQ_;
  unsigned E_ = 1, r_ = 0, k_ = 0;
  std::vector<MultiIndex> hmon_;
  std::vector<std::pair<unsigned, MultiIndex>> ltags_;
  std::vector<MPoly> lcols_;
  std::string where_;
};

}  // namespace

// ---------------------------------------------------------------- rational functions of automata

RatFun gf_vector_automaton(const VectorAutomaton& v, const std::vector<std::string>& vars) {
  v.validate();
  if (vars.size() != v.dim) throw std::invalid_argument("gf_vector_automaton: variable count");
  const size_t n = v.num_states;
  PolyMatrix A = PolyMatrix::identity(n, vars);
  for (auto& t : v.transitions) A.at(t.from, t.to) -= MPoly::monomial(vars, t.label);
  MPoly Q = determinant(A);
  PolyMatrix B = A;
  for (size_t q = 0; q < n; ++q) B.at(q, v.initial) = MPoly::constant(vars, v.final[q] ? 1 : 0);
  MPoly P = determinant(B);
  return RatFun(P, Q);
}

RatFun gf_vector_automaton(const VectorAutomaton& v) { return gf_vector_automaton(v, default_vars(v.dim)); }

BoundReport gf_bounds(const VectorAutomaton& v, const RatFun& f, unsigned max_bits) {
  BoundReport r;
  const Int deg = Int(v.num_states) * Int(v.norm_inf());
  r.add("deg_m(P)", BoundValue::of(deg, max_bits), Int(std::max(f.num().deg_m(), 0)));
  r.add("deg_m(Q)", BoundValue::of(deg, max_bits), Int(std::max(f.den().deg_m(), 0)));
  // squared form of (1+d)^|Q| |Q|^{|Q|/2}
  const Int sq = ipow(Int(1 + v.max_out_degree()), 2 * v.num_states) * ipow(Int(v.num_states), v.num_states);
  Int pn = f.num().norminf(), qn = f.den().norminf();
  r.add("norm(P)^2", BoundValue::of(sq, max_bits), pn * pn);
  r.add("norm(Q)^2", BoundValue::of(sq, max_bits), qn * qn);
  return r;
}

std::pair<RatFun, RatFun> weighted_series_factors(const ParikhAutomaton& a) {
  a.validate();
  const SemilinearSet& C = a.constraint.base;
  if (!C.unambiguous()) throw std::invalid_argument("weighted_series_factors: ambiguous constraint presentation");
  const size_t d = C.dim();
  std::vector<std::string> vars{"x"};
  for (auto& y : make_vars("y", d)) vars.push_back(y);
  VectorAutomaton va;
  va.dim = d + 1;
  va.num_states = a.num_states;
  va.initial = a.initial;
  va.final = a.final;
  for (auto& t : a.transitions) {
    NVec l{1};
    for (auto x : a.constraint.apply(t.vec)) l.push_back(x);
    va.transitions.push_back({t.from, l, t.to});
  }
  RatFun A = gf_vector_automaton(va, vars);
  std::vector<std::string> ys(vars.begin() + 1, vars.end());
  RatFun c = characteristic_series(C, ys);
  std::vector<size_t> pos(d);
  for (size_t i = 0; i < d; ++i) pos[i] = i + 1;
  MPoly one_minus_x = MPoly::constant(vars, 1) - MPoly::variable(vars, 0);
  RatFun Cb(c.num().embed(vars, pos), c.den().embed(vars, pos) * one_minus_x);
  return {A, Cb};
}

BoundReport factor_bounds(const ParikhAutomaton& a, const std::pair<RatFun, RatFun>& f, unsigned max_bits) {
  BoundReport r;
  const Int size(a.size()), norm(a.norm_inf());
  const Int deg = size * norm - 1;
  const Int sq = ipow(size, 5 * a.size());  // (|A|^{5|A|/2})^2
  for (auto [name, g] : {std::pair<const char*, const RatFun*>{"Abar", &f.first}, {"Cbar", &f.second}}) {
    std::string s(name);
    r.add(s + ".deg_m(P)", BoundValue::of(deg, max_bits), Int(std::max(g->num().deg_m(), 0)));
    r.add(s + ".deg_m(Q)", BoundValue::of(deg, max_bits), Int(std::max(g->den().deg_m(), 0)));
    Int pn = g->num().norminf(), qn = g->den().norminf();
    r.add(s + ".norm(P)^2", BoundValue::of(sq, max_bits), pn * pn);
    r.add(s + ".norm(Q)^2", BoundValue::of(sq, max_bits), qn * qn);
  }
  return r;
}

// ---------------------------------------------------------------- ODEs

LinearODE rational_ode(const RatFun& f, size_t j) {
  const auto& vars = f.vars();
  const MPoly &P = f.num(), &Q = f.den();
  if (P.is_zero()) return LinearODE(j, {MPoly::constant(vars, 1)});
  MPoly c0 = -(P.derivative(j) * Q - P * Q.derivative(j));
  if (c0.is_zero()) return LinearODE(j, {MPoly(vars), MPoly::constant(vars, 1)});
  return finish_ode(j, {c0, P * Q});
}

Int ansatz_bound_N(unsigned n, unsigned M) {
  return ipow(Int((2 * n + 1) * M), 2 * n) - Int(2 * n);
}

BoundReport explicit_bounds(const HadamardInputs& h, const std::optional<AutomatonInputs>& a, unsigned max_bits) {
  BoundReport r;
  const Int N = ansatz_bound_N(h.n, h.M);
  r.add("N", BoundValue::of(N, max_bits));
  r.add("N*M", BoundValue::of(N * Int(h.M), max_bits));
  Int NS = N * h.S;
  r.add("kernel_log2", BoundValue::of(Int(6) * ipow(N, 2 * h.n + 1) * ipow(Int(h.M), 2 * h.n) * Int(ceil_log2(NS)),
                                      max_bits));
  if (a) {
    r.add("factor.deg_m", BoundValue::of(a->size * a->norm - 1, max_bits));
    r.add("factor.norm^2", BoundValue::of(ipow(a->size, 5 * mpz_get_ui(a->size.get_mpz_t())), max_bits));
  }
  r.notes.push_back("the asymptotic forms (order and degree (d+1)|A|||A||)^{O(d)}, W = 2^{2^{O(d^2 log(dM))}}) have "
                    "no explicit constants and are not computed");
  return r;
}

HadamardResult hadamard_ode(const RatFun& f1_in, const RatFun& f2_in, size_t j, const HadamardLimits& lim,
                            unsigned max_bits) {
  const auto& vars = f1_in.vars();
  const size_t n = vars.size();
  if (f2_in.vars() != vars) throw std::invalid_argument("hadamard_ode: variable lists differ");
  if (j >= n) throw std::invalid_argument("hadamard_ode: distinguished variable out of range");
  const MultiIndex zero(n, 0);
  if (f1_in.den().coeff(zero) == 0 || f2_in.den().coeff(zero) == 0)
    throw std::invalid_argument("hadamard_ode: denominator with zero constant term");

  // variables along which one side is g/(1-z) with g free of z need no residue
  auto strip_all = [&](RatFun f, std::vector<bool>& passive) {
    passive.assign(n, false);
    for (size_t z = 0; z < n; ++z)
      if (auto g = strip_geometric(f, z)) {
        f = *g;
        passive[z] = true;
      }
    return f;
  };
  std::vector<bool> pass2, pass1;
  RatFun g2 = strip_all(f2_in, pass2), g1 = strip_all(f1_in, pass1);
  RatFun f1 = f1_in, f2 = g2;
  std::vector<bool> passive = pass2;
  if (std::count(pass1.begin(), pass1.end(), true) > std::count(pass2.begin(), pass2.end(), true)) {
    f1 = f2_in;
    f2 = g1;
    passive = pass1;
  }
  std::vector<size_t> active;
  for (size_t i = 0; i < n; ++i)
    if (!passive[i]) active.push_back(i);

  HadamardResult res;
  unsigned Mb = 1;
  Int S = 1;
  for (const MPoly* p : {&f1_in.num(), &f1_in.den(), &f2_in.num(), &f2_in.den()}) {
    Mb = std::max(Mb, unsigned(p->deg_m() + 1));
    S = std::max(S, p->norminf());
  }
  const unsigned Mf = 2 * Mb;
  BoundReport rep = explicit_bounds({unsigned(n), Mf, S}, std::nullopt, max_bits);

  if (active.empty()) {
    // f2 is a constant: the product is a multiple of f1
    const Rat c(f2.num().coeff(zero), f2.den().coeff(zero));
    RatFun h(f1.num() * Int(c.get_num()), f1.den() * Int(c.get_den()));
    res.ode = rational_ode(h, j);
    res.method = "rational";
  } else {
    Prepared pr = prepare(f1, f2, active);
    rep.add("deg_m(P_F)+1", BoundValue::of(Int(Mf), max_bits), Int(pr.P.deg_m() + 1));
    rep.add("deg_m(Q_F)+1", BoundValue::of(Int(Mf), max_bits), Int(pr.Q.deg_m() + 1));
    rep.add("norm(P_F)", BoundValue::of(S * S, max_bits), pr.P.norminf());
    rep.add("norm(Q_F)", BoundValue::of(S * S, max_bits), pr.Q.norminf());
    // the smaller pending system goes first; the ansatz wins ties
    Ansatz ans(pr, j, lim, vars);
    Certificate cert(pr, j, lim, vars);
    std::optional<LinearODE> found;
    const auto start = std::chrono::steady_clock::now();
    while (!found) {
      const bool a_ok = !ans.exhausted(), c_ok = !cert.exhausted();
      if (!a_ok && !c_ok) throw std::runtime_error("hadamard_ode: resource limits reached before an equation was found");
      if (lim.max_seconds > 0 &&
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > lim.max_seconds)
        throw std::runtime_error("hadamard_ode: time limit reached before an equation was found");
      if (a_ok && (!c_ok || ans.next_size() <= cert.next_size())) {
        const unsigned level = ans.level();
        if ((found = ans.step())) {
          res.method = "ansatz";
          rep.add("N'", BoundValue::of(ansatz_bound_N(unsigned(n), Mf), max_bits), Int(level));
        }
      } else if ((found = cert.step())) {
        res.method = "certificate";
        rep.notes.push_back("certificate found at " + cert.where());
      }
    }
    res.ode = *found;
  }
  // compliance of the returned equation
  const Int N = ansatz_bound_N(unsigned(n), Mf);
  int ord_deg = 0;
  unsigned bits = 0;
  for (auto& p : res.ode.coeffs) {
    ord_deg = std::max(ord_deg, int(res.ode.order()) + std::max(p.deg_m(), 0));
    bits = std::max(bits, bit_length(p.norminf()));
  }
  rep.add("r+deg_m(p_i)", BoundValue::of(N - 1, max_bits), Int(ord_deg));
  BoundValue klog = rep.find("kernel_log2")->bound;
  rep.entries.erase(std::remove_if(rep.entries.begin(), rep.entries.end(),
                                   [](const BoundEntry& e) { return e.name == "kernel_log2"; }),
                    rep.entries.end());
  rep.add("kernel_log2", klog, Int(bits));
  res.report = std::move(rep);
  return res;
}

PipelineResult pa_ode(const ParikhAutomaton& a, const Limits& lim) {
  auto f = weighted_series_factors(a);
  PipelineResult out;
  out.report.append(factor_bounds(a, f, lim.bound_bits), "factors.");
  auto h = hadamard_ode(f.first, f.second, 0, lim.hadamard, lim.bound_bits);
  out.report.append(h.report, "hadamard.");
  out.report.notes.push_back("hadamard method: " + h.method);
  std::vector<size_t> ys;
  for (size_t i = 1; i < f.first.vars().size(); ++i) ys.push_back(i);
  out.ode = specialize_ode_to_one(h.ode, ys);
  out.report.append(specialization_bounds(h.ode, out.ode, ys.size(), lim.bound_bits), "specialization.");
  return out;
}

}  // namespace ph
