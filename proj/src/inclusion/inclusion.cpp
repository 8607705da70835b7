#include "ph/inclusion.hpp"

#include <algorithm>

namespace ph {

namespace {

void require_unambiguous(const ParikhAutomaton& a, const char* which, const EmptinessLimits& lim) {
  auto u = is_weakly_unambiguous(a, lim);
  if (u.kind == UnambiguityResult::Kind::No) {
    Word w = u.witness.value_or(Word{});
    throw AmbiguityError(std::string(which) + " is not weakly unambiguous: \"" + a.spell(w) + "\" has two accepting runs",
                         w);
  }
  if (u.kind == UnambiguityResult::Kind::ResourceExceeded)
    throw std::runtime_error(std::string("weak unambiguity of ") + which + " could not be decided: " + u.detail);
}

// the zero sequence: 1 * u_n = 0
PRecurrence zero_recurrence() {
  PRecurrence r;
  r.t = {{1}};
  return r;
}

std::optional<Word> find_witness(const ParikhAutomaton& a, const ParikhAutomaton& b, unsigned k) {
  double words = 1;
  for (unsigned i = 0; i < k; ++i) words *= double(a.alphabet.size());
  if (words > double(1 << 18)) return std::nullopt;
  for (auto& w : accepted_words(a, k))
    if (w.size() == k && count_runs(b, w) == 0) return w;
  return std::nullopt;
}

}  // namespace

DifferenceRecurrence difference_recurrence(const ParikhAutomaton& a, const ParikhAutomaton& b, const Limits& lim) {
  if (a.alphabet != b.alphabet) throw std::invalid_argument("difference_recurrence: alphabets differ");
  require_unambiguous(a, "the first automaton", lim.emptiness);
  require_unambiguous(b, "the second automaton", lim.emptiness);
  DifferenceRecurrence out;
  if (a == b) {
    out.rec = zero_recurrence();
    out.ode = LinearODE(0, {MPoly::constant({"x"}, 1)});
    out.report.notes.push_back("identical automata: the difference is zero");
    return out;
  }
  auto pa = pa_ode(a, lim);
  auto pc = pa_ode(intersect(a, b), lim);
  out.report.append(pa.report, "A.");
  out.report.append(pc.report, "AandB.");
  out.ode = ode_sum(pa.ode, pc.ode);
  out.report.append(sum_bounds(pa.ode, pc.ode, out.ode, lim.bound_bits), "sum.");
  out.rec = ode_to_recurrence(out.ode);
  out.report.append(recurrence_bounds(out.ode, out.rec, lim.bound_bits), "recurrence.");
  return out;
}

WitnessBound witness_bound(const PRecurrence& rec) {
  rec.validate();
  const auto& t = rec.leading();
  Int norm = 0;
  for (auto& c : t) norm = std::max<Int>(norm, abs(c));
  WitnessBound w;
  const Int base = Int(rec.s) + Int(rec.S);
  w.formula = base + norm + 1;
  w.refined = w.formula;
  w.root_scan = false;
  // a nonnegative integer root divides the lowest nonzero coefficient, so it is at most ||t_S||
  if (norm <= 1000000) {
    w.root_scan = true;
    std::optional<Int> root;
    for (Int n = norm; n >= 0; --n)
      if (PRecurrence::eval(t, n) == 0) {
        root = n;
        break;
      }
    w.refined = std::min(w.formula, root ? base + *root + 1 : base);
  }
  return w;
}

InclusionVerdict decide_inclusion(const ParikhAutomaton& a, const ParikhAutomaton& b, unsigned cap,
                                  const Limits& lim) {
  if (a.alphabet != b.alphabet) throw std::invalid_argument("decide_inclusion: alphabets differ");
  InclusionVerdict v{InclusionVerdict::Kind::Included, "self", 0, std::nullopt, std::nullopt, std::nullopt, {}};
  if (a == b) {
    InclusionCertificate c{zero_recurrence(), {}, {}, "identical automata: the difference series is zero"};
    c.W = witness_bound(c.recurrence);
    v.checked_up_to = unsigned(c.W.refined.get_ui());
    v.certificate = std::move(c);
    return v;
  }
  require_unambiguous(a, "the first automaton", lim.emptiness);
  require_unambiguous(b, "the second automaton", lim.emptiness);
  auto ua = count_words(a, cap), uc = count_words(intersect(a, b), cap);
  for (unsigned k = 0; k <= cap; ++k) {
    if (ua[k] == uc[k]) continue;
    v.kind = InclusionVerdict::Kind::NotIncluded;
    v.mode = "counting";
    v.checked_up_to = k;
    v.witness_length = k;
    v.witness_word = find_witness(a, b, k);
    v.reason = "length " + std::to_string(k) + ": " + ua[k].get_str() + " words in L(A), " + uc[k].get_str() +
               " in the intersection";
    return v;
  }
  v.checked_up_to = cap;
  DifferenceRecurrence d;
  try {
    d = difference_recurrence(a, b, lim);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const AmbiguityError*>(&e)) throw;
    v.kind = InclusionVerdict::Kind::Inconclusive;
    v.mode = "counting";
    v.reason = std::string("equal counts up to the cap; symbolic pipeline failed: ") + e.what();
    return v;
  }
  InclusionCertificate c{d.rec, witness_bound(d.rec), d.report,
                         "W = s + S + ||t_S|| + 1 from the recurrence of the difference series (the order-based "
                         "value r + R read off p_0 is not used)"};
  std::vector<Int> diff(cap + 1);
  for (unsigned k = 0; k <= cap; ++k) diff[k] = ua[k] - uc[k];
  if (!c.recurrence.annihilates(diff, cap)) throw std::logic_error("decide_inclusion: certificate recurrence fails");
  if (c.W.refined <= cap) {
    v.kind = InclusionVerdict::Kind::Included;
    v.mode = "certified";
    v.reason = "difference is zero up to W = " + c.W.refined.get_str();
  } else {
    v.kind = InclusionVerdict::Kind::Inconclusive;
    v.mode = "counting";
    v.reason = "equal counts up to the cap " + std::to_string(cap) + " but W = " + c.W.refined.get_str();
  }
  v.certificate = std::move(c);
  return v;
}

}  // namespace ph
