#include "ph/io.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace ph::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument("schema: " + what); }

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) fail(std::string("missing field '") + name + "'");
  return j.at(name);
}

void expect_kind(const json& j, const char* kind) {
  if (kind_of(j) != kind) fail(std::string("expected kind '") + kind + "', got '" + kind_of(j) + "'");
}

size_t natural(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(std::string(what) + " must be a natural number");
  return j.get<size_t>();
}

NVec nvec(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  NVec v;
  for (auto& x : j) v.push_back(unsigned(natural(x, what)));
  return v;
}

std::vector<NVec> nvecs(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  std::vector<NVec> out;
  for (auto& x : j) out.push_back(nvec(x, what));
  return out;
}

std::vector<std::string> strings(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (auto& x : j) {
    if (!x.is_string()) fail(std::string(what) + " entries must be strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::vector<bool> final_flags(const json& j, size_t n) {
  std::vector<bool> f(n, false);
  for (auto& x : j) {
    size_t q = natural(x, "final state");
    if (q >= n) fail("final state out of range");
    f[q] = true;
  }
  return f;
}

json final_list(const std::vector<bool>& f) {
  json out = json::array();
  for (size_t q = 0; q < f.size(); ++q)
    if (f[q]) out.push_back(q);
  return out;
}

Int integer(const json& j, const char* what) {
  Int c;
  if (!j.is_string() || c.set_str(j.get<std::string>(), 10) != 0) fail(std::string(what) + " must be a decimal string");
  return c;
}

std::vector<Int> int_list(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  std::vector<Int> out;
  for (auto& x : j) out.push_back(integer(x, what));
  return out;
}

json str_list(const std::vector<Int>& v) {
  json out = json::array();
  for (auto& x : v) out.push_back(x.get_str());
  return out;
}

Letter letter_index(const std::vector<std::string>& alphabet, const json& j) {
  if (!j.is_string()) fail("letter must be a string");
  auto it = std::find(alphabet.begin(), alphabet.end(), j.get<std::string>());
  if (it == alphabet.end()) fail("letter '" + j.get<std::string>() + "' not in the alphabet");
  return Letter(it - alphabet.begin());
}

}  // namespace

std::string kind_of(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) fail("missing field 'kind'");
  return j["kind"].get<std::string>();
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

json to_json(const MPoly& p) {
  json terms = json::array();
  for (auto& [e, c] : p.terms()) terms.push_back(json::array({e, c.get_str()}));
  return {{"vars", p.vars()}, {"terms", terms}};
}

MPoly mpoly_from_json(const json& j) {
  auto vars = strings(field(j, "vars"), "vars");
  MPoly p(vars);
  for (auto& t : field(j, "terms")) {
    if (!t.is_array() || t.size() != 2 || !t[1].is_string()) fail("term must be [exponents, \"coefficient\"]");
    NVec e = nvec(t[0], "exponents");
    if (e.size() != vars.size()) fail("exponent vector length");
    Int c;
    if (c.set_str(t[1].get<std::string>(), 10) != 0) fail("bad coefficient " + t[1].get<std::string>());
    p.add_term(e, c);
  }
  return p;
}

json to_json(const SemilinearSet& s) {
  json comps = json::array();
  for (auto& l : s.components()) comps.push_back({{"constant", l.constant}, {"periods", l.periods}});
  return {{"kind", "semilinear"}, {"dimension", s.dim()}, {"unambiguous", s.unambiguous()}, {"components", comps}};
}

SemilinearSet semilinear_from_json(const json& j) {
  expect_kind(j, "semilinear");
  size_t d = natural(field(j, "dimension"), "dimension");
  bool unamb = j.value("unambiguous", true);
  std::vector<LinearSet> comps;
  for (auto& c : field(j, "components"))
    comps.push_back({nvec(field(c, "constant"), "constant"), nvecs(field(c, "periods"), "periods")});
  return SemilinearSet(d, std::move(comps), unamb);
}

json to_json(const Constraint& c) {
  if (c.is_plain()) return to_json(c.base);
  return {{"kind", "derived"}, {"map", *c.map}, {"base", to_json(c.base)}};
}

Constraint constraint_from_json(const json& j) {
  if (kind_of(j) == "derived")
    return Constraint(semilinear_from_json(field(j, "base")), nvecs(field(j, "map"), "map"));
  return Constraint(semilinear_from_json(j));
}

json to_json(const VectorAutomaton& v) {
  json tr = json::array();
  for (auto& t : v.transitions) tr.push_back({{"from", t.from}, {"vector", t.label}, {"to", t.to}});
  return {{"kind", "va"},       {"dimension", v.dim},          {"states", v.num_states},
          {"initial", v.initial}, {"final", final_list(v.final)}, {"transitions", tr}};
}

VectorAutomaton va_from_json(const json& j) {
  expect_kind(j, "va");
  VectorAutomaton v;
  v.dim = natural(field(j, "dimension"), "dimension");
  v.num_states = natural(field(j, "states"), "states");
  v.initial = natural(field(j, "initial"), "initial");
  v.final = final_flags(field(j, "final"), v.num_states);
  for (auto& t : field(j, "transitions"))
    v.transitions.push_back(
        {natural(field(t, "from"), "from"), nvec(field(t, "vector"), "vector"), natural(field(t, "to"), "to")});
  v.validate();
  return v;
}

json to_json(const ParikhAutomaton& a) {
  json tr = json::array();
  for (auto& t : a.transitions)
    tr.push_back({{"from", t.from}, {"letter", a.alphabet[t.letter]}, {"vector", t.vec}, {"to", t.to}});
  return {{"kind", "pa"},
          {"alphabet", a.alphabet},
          {"states", a.num_states},
          {"initial", a.initial},
          {"final", final_list(a.final)},
          {"constraint", to_json(a.constraint)},
          {"transitions", tr}};
}

ParikhAutomaton pa_from_json(const json& j) {
  expect_kind(j, "pa");
  ParikhAutomaton a;
  a.alphabet = strings(field(j, "alphabet"), "alphabet");
  a.num_states = natural(field(j, "states"), "states");
  a.initial = natural(field(j, "initial"), "initial");
  a.final = final_flags(field(j, "final"), a.num_states);
  a.constraint = constraint_from_json(field(j, "constraint"));
  for (auto& t : field(j, "transitions")) {
    if (t.contains("letter") && t["letter"].is_null()) fail("epsilon transitions are not supported");
    a.transitions.push_back({natural(field(t, "from"), "from"), letter_index(a.alphabet, field(t, "letter")),
                             nvec(field(t, "vector"), "vector"), natural(field(t, "to"), "to")});
  }
  a.validate();
  return a;
}

json to_json(const RCM& r) {
  json morph = json::object();
  for (size_t g = 0; g < r.gamma.size(); ++g) morph[r.gamma[g]] = r.sigma[r.morphism[g]];
  json tr = json::array();
  for (auto& t : r.transitions) tr.push_back({{"from", t.from}, {"letter", r.gamma[t.letter]}, {"to", t.to}});
  return {{"kind", "rcm"},        {"gamma", r.gamma},     {"sigma", r.sigma},
          {"morphism", morph},    {"states", r.num_states}, {"initial", r.initial},
          {"final", final_list(r.final)}, {"transitions", tr}, {"constraint", to_json(r.constraint)}};
}

RCM rcm_from_json(const json& j) {
  expect_kind(j, "rcm");
  RCM r;
  r.gamma = strings(field(j, "gamma"), "gamma");
  r.sigma = strings(field(j, "sigma"), "sigma");
  const json& m = field(j, "morphism");
  for (auto& g : r.gamma) {
    if (!m.contains(g)) fail("morphism is not total: '" + g + "' has no image");
    r.morphism.push_back(letter_index(r.sigma, m.at(g)));
  }
  r.num_states = natural(field(j, "states"), "states");
  r.initial = natural(field(j, "initial"), "initial");
  r.final = final_flags(field(j, "final"), r.num_states);
  for (auto& t : field(j, "transitions"))
    r.transitions.push_back({natural(field(t, "from"), "from"), letter_index(r.gamma, field(t, "letter")),
                             natural(field(t, "to"), "to")});
  r.constraint = constraint_from_json(field(j, "constraint"));
  r.validate();
  return r;
}

json to_json(const RatFun& f) { return {{"numerator", to_json(f.num())}, {"denominator", to_json(f.den())}}; }

json to_json(const LinearODE& o) {
  json cs = json::array();
  for (auto& p : o.coeffs) cs.push_back(to_json(p));
  return {{"kind", "ode"}, {"vars", o.vars()}, {"var", o.var_name()}, {"coefficients", cs}};
}

LinearODE ode_from_json(const json& j) {
  expect_kind(j, "ode");
  auto vars = strings(field(j, "vars"), "vars");
  auto& v = field(j, "var");
  if (!v.is_string()) fail("var must be a string");
  auto it = std::find(vars.begin(), vars.end(), v.get<std::string>());
  if (it == vars.end()) fail("var '" + v.get<std::string>() + "' not in vars");
  std::vector<MPoly> cs;
  for (auto& c : field(j, "coefficients")) {
    cs.push_back(mpoly_from_json(c));
    if (cs.back().vars() != vars) fail("coefficient variables differ from vars");
  }
  if (cs.empty()) fail("coefficients must be nonempty");
  try {
    return LinearODE(size_t(it - vars.begin()), std::move(cs));
  } catch (const std::exception& e) {
    fail(e.what());
  }
}

json to_json(const PRecurrence& r) {
  json ts = json::array();
  for (auto& t : r.t) ts.push_back(str_list(t));
  return {{"kind", "recurrence"}, {"s", r.s}, {"S", r.S}, {"n0", r.n0}, {"t", ts}};
}

PRecurrence recurrence_from_json(const json& j) {
  expect_kind(j, "recurrence");
  PRecurrence r;
  r.s = unsigned(natural(field(j, "s"), "s"));
  r.S = unsigned(natural(field(j, "S"), "S"));
  r.n0 = unsigned(natural(field(j, "n0"), "n0"));
  auto& ts = field(j, "t");
  if (!ts.is_array()) fail("t must be an array");
  for (auto& t : ts) r.t.push_back(int_list(t, "t entries"));
  try {
    r.validate();
  } catch (const std::exception& e) {
    fail(e.what());
  }
  return r;
}

json to_json(const BoundReport& r) {
  json es = json::array();
  for (auto& e : r.entries) {
    json b = {{"name", e.name}, {"holds", e.holds()}};
    if (e.bound.exact)
      b["bound"] = e.bound.exact->get_str();
    else
      b["bound_log2"] = e.bound.log2_upper.get_str();
    if (e.measured) b["measured"] = e.measured->get_str();
    es.push_back(b);
  }
  return {{"entries", es}, {"notes", r.notes}, {"all_hold", r.all_hold()}};
}

json to_json(const WitnessBound& w) {
  return {{"formula", w.formula.get_str()}, {"refined", w.refined.get_str()}, {"root_scan", w.root_scan}};
}

json to_json(const InclusionVerdict& v, const std::vector<std::string>& alphabet) {
  static const char* names[] = {"included", "not_included", "inconclusive"};
  json out = {{"kind", "verdict"},
              {"verdict", names[int(v.kind)]},
              {"mode", v.mode},
              {"checked_up_to", v.checked_up_to},
              {"reason", v.reason}};
  if (v.witness_length) out["witness_length"] = *v.witness_length;
  if (v.witness_word) {
    json w = json::array();
    for (auto l : *v.witness_word) w.push_back(alphabet.at(l));
    out["witness_word"] = w;
  }
  if (v.certificate) {
    auto& c = *v.certificate;
    out["certificate"] = {{"recurrence", to_json(c.recurrence)},
                          {"W", to_json(c.W)},
                          {"bounds", to_json(c.report)},
                          {"note", c.note}};
  }
  return out;
}

namespace {

template <class T>
void read_opt(const json& j, const char* name, T& out) {
  if (!j.contains(name)) return;
  out = T(natural(j.at(name), name));
}

}  // namespace

Limits limits_from_json(const json& j) {
  if (!j.is_object()) fail("limits must be an object");
  for (auto& [k, v] : j.items())
    if (k != "emptiness" && k != "hadamard" && k != "count_cap" && k != "unambiguity_bound" && k != "bound_bits")
      fail("unknown limits field '" + k + "'");
  Limits l;
  if (j.contains("emptiness")) {
    auto& e = j.at("emptiness");
    if (!e.is_object()) fail("emptiness must be an object");
    read_opt(e, "witness_search_length", l.emptiness.witness_search_length);
    read_opt(e, "max_supports", l.emptiness.max_supports);
    read_opt(e, "max_bb_nodes", l.emptiness.max_bb_nodes);
  }
  if (j.contains("hadamard")) {
    auto& h = j.at("hadamard");
    if (!h.is_object()) fail("hadamard must be an object");
    read_opt(h, "max_ansatz", l.hadamard.max_ansatz);
    read_opt(h, "max_columns", l.hadamard.max_columns);
    read_opt(h, "max_certificate_degree", l.hadamard.max_certificate_degree);
    read_opt(h, "max_certificate_order", l.hadamard.max_certificate_order);
    read_opt(h, "max_certificate_columns", l.hadamard.max_certificate_columns);
    read_opt(h, "max_primes", l.hadamard.max_primes);
    if (h.contains("max_seconds")) {
      if (!h.at("max_seconds").is_number() || h.at("max_seconds").get<double>() < 0)
        fail("max_seconds must be a nonnegative number");
      l.hadamard.max_seconds = h.at("max_seconds").get<double>();
    }
  }
  read_opt(j, "count_cap", l.count_cap);
  read_opt(j, "unambiguity_bound", l.unambiguity_bound);
  read_opt(j, "bound_bits", l.bound_bits);
  return l;
}

json to_json(const Limits& l) {
  return {{"emptiness",
           {{"witness_search_length", l.emptiness.witness_search_length},
            {"max_supports", l.emptiness.max_supports},
            {"max_bb_nodes", l.emptiness.max_bb_nodes}}},
          {"hadamard",
           {{"max_ansatz", l.hadamard.max_ansatz},
            {"max_columns", l.hadamard.max_columns},
            {"max_certificate_degree", l.hadamard.max_certificate_degree},
            {"max_certificate_order", l.hadamard.max_certificate_order},
            {"max_certificate_columns", l.hadamard.max_certificate_columns},
            {"max_primes", l.hadamard.max_primes},
            {"max_seconds", l.hadamard.max_seconds}}},
          {"count_cap", l.count_cap},
          {"unambiguity_bound", l.unambiguity_bound},
          {"bound_bits", l.bound_bits}};
}

}  // namespace ph::io
