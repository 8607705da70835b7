#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "ph/inclusion.hpp"
#include "ph/io.hpp"
#include "ph/semilinear.hpp"

using namespace ph;
using io::json;

namespace {

// exit codes beyond the inclusion contract
constexpr int kInputError = 3, kAmbiguous = 4, kResource = 5, kSelfCheck = 6;

struct SelfCheckError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  std::string format = "json";
  std::string limits_file;
  unsigned seed = 0;
  Limits limits;
};

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void emit_rows(const std::vector<std::vector<std::string>>& rows) {
  for (auto& r : rows) {
    for (size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << csv_field(r[i]);
    std::cout << "\n";
  }
}

ParikhAutomaton load_pa(const std::string& path) {
  auto j = io::read_file(path);
  if (io::kind_of(j) == "rcm") return rcm_to_pa(io::rcm_from_json(j));
  auto a = io::pa_from_json(j);
  a.validate();
  return a;
}

std::string spell_list(const ParikhAutomaton& a, const Word& w) {
  std::string s;
  for (auto l : w) s += a.alphabet.at(l);
  return s;
}

void require_unambiguous(const ParikhAutomaton& a, const Limits& lim) {
  auto u = is_weakly_unambiguous(a, lim.emptiness);
  if (u.kind == UnambiguityResult::Kind::No) {
    Word w = u.witness.value_or(Word{});
    throw AmbiguityError("the automaton is not weakly unambiguous: \"" + spell_list(a, w) + "\" has two accepting runs",
                         w);
  }
  if (u.kind == UnambiguityResult::Kind::ResourceExceeded)
    throw std::runtime_error("weak unambiguity could not be decided: " + u.detail);
}

std::vector<std::string> report_row(const BoundEntry& e) {
  return {e.name, e.bound.exact ? e.bound.exact->get_str() : "2^" + e.bound.log2_upper.get_str(),
          e.measured ? e.measured->get_str() : "", e.holds() ? "holds" : "VIOLATED"};
}

void emit_report_rows(std::vector<std::vector<std::string>>& rows, const BoundReport& r) {
  for (auto& e : r.entries) rows.push_back(report_row(e));
  for (auto& n : r.notes) rows.push_back({"note", n, "", ""});
}

// --- count

int cmd_count(const Global& g, const std::string& file, unsigned n, bool brute) {
  auto a = load_pa(file);
  auto u = brute ? brute_force_count(a, n) : count_words(a, n);
  if (g.format == "csv") {
    std::vector<std::vector<std::string>> rows{{"n", "count"}};
    for (unsigned k = 0; k <= n; ++k) rows.push_back({std::to_string(k), u[k].get_str()});
    emit_rows(rows);
  } else {
    json c = json::array();
    for (auto& x : u) c.push_back(x.get_str());
    emit_json({{"kind", "counts"}, {"method", brute ? "brute-force" : "dp"}, {"counts", c}});
  }
  return 0;
}

// --- series

std::vector<Int> weighted_counts(const std::pair<RatFun, RatFun>& f, const ParikhAutomaton& a, unsigned n) {
  unsigned cap = n * (1 + unsigned(a.dim()) * std::max(1u, a.norm_inf()));
  auto h = series_hadamard(series_expand(f.first, cap), series_expand(f.second, cap));
  std::vector<Int> got(n + 1, 0);
  for (auto& [e, c] : h.coeffs())
    if (e[0] <= n) got[e[0]] += c.get_num();
  return got;
}

int cmd_series(const Global& g, const std::string& file, const std::string& what, bool assume) {
  auto a = load_pa(file);
  if (!assume) require_unambiguous(a, g.limits);
  json out;
  BoundReport report;
  std::vector<std::vector<std::string>> rows;
  if (what == "rational") {
    auto f = weighted_series_factors(a);
    report = factor_bounds(a, f, g.limits.bound_bits);
    const unsigned n = 4;
    if (weighted_counts(f, a, n) != count_words(a, n))
      throw SelfCheckError("the specialized Hadamard product of the factors disagrees with the word counts");
    out = {{"kind", "factors"}, {"first", io::to_json(f.first)}, {"second", io::to_json(f.second)}};
    rows = {{"factor", "numerator", "denominator"},
            {"first", f.first.num().to_string(), f.first.den().to_string()},
            {"second", f.second.num().to_string(), f.second.den().to_string()}};
  } else {
    auto p = pa_ode(a, g.limits);
    report = p.report;
    if (what == "ode") {
      int deg = 0;
      for (auto& c : p.ode.coeffs) deg = std::max(deg, c.deg_m());
      unsigned cap = 30 + unsigned(p.ode.order()) + unsigned(deg);
      auto u = count_words(a, cap);
      TruncatedSeries s(p.ode.vars(), cap);
      for (unsigned k = 0; k <= cap; ++k) s.set({k}, Rat(u[k]));
      if (!p.ode.annihilates(s)) throw SelfCheckError("the ODE does not annihilate the counting series");
      out = io::to_json(p.ode);
      rows.push_back({"derivative", "coefficient"});
      for (size_t i = 0; i < p.ode.coeffs.size(); ++i) rows.push_back({std::to_string(i), p.ode.coeffs[i].to_string()});
    } else {
      auto rec = ode_to_recurrence(p.ode);
      report.append(recurrence_bounds(p.ode, rec, g.limits.bound_bits), "recurrence.");
      const unsigned n = 40;
      if (!rec.annihilates(count_words(a, n + rec.S), n))
        throw SelfCheckError("the recurrence does not annihilate the counts");
      out = io::to_json(rec);
      rows.push_back({"shift", "coefficients in n"});
      for (int k = -int(rec.s); k <= int(rec.S); ++k) {
        std::string c;
        for (auto& x : rec.at(k)) c += (c.empty() ? "" : " ") + x.get_str();
        rows.push_back({std::to_string(k), c});
      }
    }
  }
  if (!report.all_hold()) throw SelfCheckError("bound violated: " + report.violations().front());
  if (g.format == "csv") {
    rows.push_back({"bound", "value", "measured", "status"});
    emit_report_rows(rows, report);
    emit_rows(rows);
  } else {
    out["bounds"] = io::to_json(report);
    emit_json(out);
  }
  return 0;
}

// --- check

int cmd_check(const Global& g, const std::string& file, unsigned bound, unsigned samples) {
  auto a = load_pa(file);
  auto u = is_weakly_unambiguous(a, g.limits.emptiness);
  static const char* names[] = {"yes", "no", "resource_exceeded"};
  bool presentation = check_unambiguous(a.constraint.base, bound);
  // random spot check: no sampled word may have two accepting runs on a Yes verdict
  std::mt19937 rng(g.seed);
  unsigned sampled = 0, max_len = std::max(1u, g.limits.emptiness.witness_search_length);
  if (!a.alphabet.empty())
    for (; sampled < samples; ++sampled) {
      std::uniform_int_distribution<unsigned> len(0, max_len);
      std::uniform_int_distribution<size_t> let(0, a.alphabet.size() - 1);
      Word w(len(rng));
      for (auto& l : w) l = Letter(let(rng));
      if (u.kind == UnambiguityResult::Kind::Yes && count_runs(a, w) > 1)
        throw SelfCheckError("sampled word \"" + spell_list(a, w) + "\" has two accepting runs");
    }
  if (u.kind == UnambiguityResult::Kind::No && (!u.witness || count_runs(a, *u.witness) < 2))
    throw SelfCheckError("the ambiguity witness does not have two accepting runs");
  std::string witness = u.witness ? spell_list(a, *u.witness) : "";
  if (g.format == "csv") {
    emit_rows({{"weakly_unambiguous", "witness", "constraint_unambiguous_up_to", "constraint_unambiguous", "detail"},
               {names[int(u.kind)], witness, std::to_string(bound), presentation ? "yes" : "no", u.detail}});
  } else {
    json out = {{"kind", "check"},
                {"weakly_unambiguous", names[int(u.kind)]},
                {"detail", u.detail},
                {"constraint_unambiguous", presentation},
                {"constraint_checked_up_to", bound},
                {"sampled_words", sampled}};
    if (u.witness) out["witness"] = witness;
    emit_json(out);
  }
  return u.kind == UnambiguityResult::Kind::Yes ? 0 : u.kind == UnambiguityResult::Kind::No ? 1 : 2;
}

// --- intersect

int cmd_intersect(const Global&, const std::string& fa, const std::string& fb) {
  auto a = load_pa(fa), b = load_pa(fb);
  if (a.alphabet != b.alphabet) throw std::invalid_argument("the automata have different alphabets");
  emit_json(io::to_json(intersect(a, b)));
  return 0;
}

// --- include

int cmd_include(const Global& g, const std::string& fa, const std::string& fb, unsigned cap) {
  auto a = load_pa(fa), b = load_pa(fb);
  auto v = decide_inclusion(a, b, cap, g.limits);
  if (g.format == "csv") {
    static const char* names[] = {"included", "not_included", "inconclusive"};
    emit_rows({{"verdict", "mode", "checked_up_to", "witness_length", "witness_word", "W", "reason"},
               {names[int(v.kind)], v.mode, std::to_string(v.checked_up_to),
                v.witness_length ? std::to_string(*v.witness_length) : "",
                v.witness_word ? spell_list(a, *v.witness_word) : "",
                v.certificate ? v.certificate->W.formula.get_str() : "", v.reason}});
  } else {
    emit_json(io::to_json(v, a.alphabet));
  }
  return int(v.kind);
}

// --- bounds

int cmd_bounds(const Global& g, const std::string& file, unsigned n, unsigned M, const std::string& S) {
  BoundReport r;
  if (!file.empty()) {
    auto a = load_pa(file);
    auto f = weighted_series_factors(a);
    r = factor_bounds(a, f, g.limits.bound_bits);
    int deg = 0;
    Int norm = 1;
    for (auto* p : {&f.first.num(), &f.first.den(), &f.second.num(), &f.second.den()}) {
      deg = std::max(deg, p->deg_m());
      for (auto& [e, c] : p->terms()) norm = std::max<Int>(norm, abs(c));
    }
    HadamardInputs h{unsigned(a.dim() + 1), 2 * unsigned(deg + 1), norm};
    r.append(explicit_bounds(h, AutomatonInputs{Int(unsigned(a.size())), Int(std::max(1u, a.norm_inf()))},
                             g.limits.bound_bits),
             "hadamard.");
  } else {
    r = explicit_bounds(HadamardInputs{n, M, Int(S)}, std::nullopt, g.limits.bound_bits);
  }
  if (g.format == "csv") {
    std::vector<std::vector<std::string>> rows{{"bound", "value", "measured", "status"}};
    emit_report_rows(rows, r);
    emit_rows(rows);
  } else {
    auto j = io::to_json(r);
    j["kind"] = "bounds";
    emit_json(j);
  }
  return r.all_hold() ? 0 : kSelfCheck;
}

// --- convert

int cmd_convert(const Global&, const std::string& file, const std::string& to) {
  auto j = io::read_file(file);
  auto kind = io::kind_of(j);
  if (to == "pa") {
    if (kind == "rcm") emit_json(io::to_json(rcm_to_pa(io::rcm_from_json(j))));
    else emit_json(io::to_json(io::pa_from_json(j)));
  } else if (to == "rcm") {
    if (kind != "pa") throw std::invalid_argument("convert --to rcm expects a pa document");
    emit_json(io::to_json(pa_to_rcm(normalize_unit_vectors(io::pa_from_json(j)))));
  } else {
    if (kind != "pa") throw std::invalid_argument("convert --to unit expects a pa document");
    emit_json(io::to_json(normalize_unit_vectors(io::pa_from_json(j))));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting, holonomic series and inclusion for weakly unambiguous Parikh automata"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--limits", g.limits_file, "JSON limits file (overridden by PARIKH_HOLO_LIMITS)");
  app.add_option("--seed", g.seed, "seed for randomized checks");

  std::string file, file_b;
  unsigned length = 10, cap = 0, bound = 0, samples = 200, n = 1, M = 2;
  std::string S = "1", to;
  bool brute = false, assume = false, ode = false, recurrence = false, rational = false;

  auto* count = app.add_subcommand("count", "number of accepted words of each length");
  count->add_option("file", file)->required();
  count->add_option("--length,-n", length, "largest length")->required();
  count->add_flag("--brute-force", brute, "enumerate words instead of dynamic programming");

  auto* series = app.add_subcommand("series", "rational factors, ODE or P-recurrence of the counting series");
  series->add_option("file", file)->required();
  auto* fo = series->add_flag("--ode", ode);
  auto* fr = series->add_flag("--recurrence", recurrence);
  auto* fq = series->add_flag("--rational", rational);
  fo->excludes(fr)->excludes(fq);
  fr->excludes(fq);
  series->add_flag("--assume-unambiguous", assume, "skip the weak unambiguity check");

  auto* check = app.add_subcommand("check", "weak unambiguity verdict");
  check->add_option("file", file)->required();
  auto* bound_opt = check->add_option("--bound", bound, "box used to check the constraint presentation");
  check->add_option("--samples", samples, "random words checked against the verdict");

  auto* inter = app.add_subcommand("intersect", "product automaton");
  inter->add_option("a", file)->required();
  inter->add_option("b", file_b)->required();

  auto* include = app.add_subcommand("include", "decide L(a) ⊆ L(b); exit 0 included, 1 not included, 2 inconclusive");
  include->add_option("a", file)->required();
  include->add_option("b", file_b)->required();
  auto* cap_opt = include->add_option("--cap", cap, "longest length compared by counting");

  auto* bounds = app.add_subcommand("bounds", "explicit bounds for a PA or for raw parameters");
  bounds->add_option("file", file);
  bounds->add_option("--n", n, "number of variables");
  bounds->add_option("--M", M, "strict maxdegree bound");
  bounds->add_option("--S", S, "coefficient bound")->check([](const std::string& s) {
    Int v;
    return v.set_str(s, 10) == 0 && v >= 1 ? std::string() : std::string("S must be a positive integer");
  });

  auto* convert = app.add_subcommand("convert", "rcm to pa, pa to rcm, or unit-vector normalization");
  convert->add_option("file", file)->required();
  convert->add_option("--to", to, "target")->required()->check(CLI::IsMember({"pa", "rcm", "unit"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    std::string limits = g.limits_file;
    if (const char* env = std::getenv("PARIKH_HOLO_LIMITS"); env && *env) limits = env;
    if (!limits.empty()) g.limits = io::limits_from_json(io::read_file(limits));
    if (bound_opt->count() == 0) bound = g.limits.unambiguity_bound;
    if (cap_opt->count() == 0) cap = g.limits.count_cap;

    if (*count) return cmd_count(g, file, length, brute);
    if (*series) return cmd_series(g, file, rational ? "rational" : recurrence ? "recurrence" : "ode", assume);
    if (*check) return cmd_check(g, file, bound, samples);
    if (*inter) return cmd_intersect(g, file, file_b);
    if (*include) return cmd_include(g, file, file_b, cap);
    if (*bounds) return cmd_bounds(g, file, n, M, S);
    if (*convert) return cmd_convert(g, file, to);
  } catch (const AmbiguityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAmbiguous;
  } catch (const SelfCheckError& e) {
    std::cerr << "self-check failed: " << e.what() << "\n";
    return kSelfCheck;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  }
  return kInputError;
}
