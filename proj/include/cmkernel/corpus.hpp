#pragma once

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "toml.hpp"

#include "cmkernel/cech.hpp"
#include "cmkernel/ideal_ops.hpp"
#include "cmkernel/kq_ring.hpp"
#include "cmkernel/parser.hpp"
#include "cmkernel/semigroup.hpp"
#include "cmkernel/serialize.hpp"

namespace cmkernel {

/// Unreadable or structurally invalid corpus file.
class CorpusError : public Error {
 public:
  using Error::Error;
};

struct CaseOutcome {
  std::string name;
  bool pass = true;
  std::vector<std::string> diffs;
  Json observed;
};

struct CorpusSummary {
  std::vector<CaseOutcome> cases;
  std::vector<std::string> warnings;

  std::size_t failed() const {
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const auto& c) { return !c.pass; }));
  }
  int exit_code() const { return failed() == 0 ? 0 : 1; }

  Json to_json() const {
    Json list = Json::array();
    for (const auto& c : cases)
      list.push_back({{"name", c.name}, {"pass", c.pass}, {"diffs", c.diffs}, {"observed", c.observed}});
    return {{"total", cases.size()},
            {"passed", cases.size() - failed()},
            {"failed", failed()},
            {"warnings", warnings},
            {"cases", std::move(list)}};
  }
};

namespace detail {

/// One expected field: its value node plus a mandatory provenance tag.
struct Expectation {
  const toml::node* value;
  const toml::table* entry;
};

inline std::string node_text(const toml::node& n) {
  std::ostringstream os;
  if (auto* s = n.as_string()) os << '"' << s->get() << '"';
  else n.visit([&](auto&& v) { os << v; });
  return os.str();
}

class CaseRunner {
 public:
  CaseRunner(std::string name, const toml::table& spec) : name_(std::move(name)), spec_(spec) {}

  CaseOutcome run() {
    CaseOutcome out{name_, true, {}, Json::object()};
    parse_expectations();
    std::string kind = require_string("kind");
    if (kind == "ring") run_ring(out);
    else if (kind == "pair") run_pair(out);
    else if (kind == "semigroup") run_semigroup(out);
    else invalid("unknown kind '" + kind + "'");
    for (const auto& key : expected_keys_)
      if (!checked_.count(key)) invalid("expectation '" + key + "' does not apply to kind '" + kind + "'");
    out.pass = out.diffs.empty();
    return out;
  }

 private:
  [[noreturn]] void invalid(const std::string& msg) const { throw CorpusError("case '" + name_ + "': " + msg); }

  std::string require_string(const char* key) const {
    auto v = spec_[key].value<std::string>();
    if (!v) invalid(std::string("missing string field '") + key + "'");
    return *v;
  }

  std::vector<std::string> string_list(const toml::node* node, const std::string& what) const {
    std::vector<std::string> out;
    auto* arr = node ? node->as_array() : nullptr;
    if (!arr) invalid(what + " must be an array of strings");
    for (const auto& el : *arr) {
      auto s = el.value<std::string>();
      if (!s) invalid(what + " must be an array of strings");
      out.push_back(*s);
    }
    return out;
  }

  std::vector<Polynomial> poly_list(const char* key, const Ring& ring) const {
    std::vector<Polynomial> out;
    for (const auto& s : string_list(spec_.get(key), key)) out.push_back(parse_polynomial(s, ring));
    return out;
  }

  long long int_or(const char* key, long long fallback) const {
    if (!spec_.contains(key)) return fallback;
    auto v = spec_[key].value<long long>();
    if (!v) invalid(std::string("field '") + key + "' must be an integer");
    return *v;
  }

  void parse_expectations() {
    auto* expect = spec_["expect"].as_table();
    if (!expect) return;
    for (const auto& [k, node] : *expect) {
      std::string key(k.str());
      auto* entry = node.as_table();
      if (!entry) invalid("expectation '" + key + "' must be a table {value = ..., provenance = ...}");
      auto prov = (*entry)["provenance"].value<std::string>();
      if (!prov || (*prov != "published" && *prov != "derived"))
        invalid("expectation '" + key + "' needs provenance = \"published\" or \"derived\"");
      if (!entry->contains("value")) invalid("expectation '" + key + "' has no value");
      expectations_.emplace(key, Expectation{entry->get("value"), entry});
      expected_keys_.insert(key);
    }
  }

  const Expectation* expect(const std::string& key) {
    auto it = expectations_.find(key);
    if (it == expectations_.end()) return nullptr;
    checked_.insert(key);
    return &it->second;
  }

  void diff(CaseOutcome& out, const std::string& key, const std::string& expected, const std::string& observed) {
    out.diffs.push_back(key + ": expected " + expected + ", observed " + observed);
  }

  template <class T>
  T value_as(const Expectation& e, const std::string& key) const {
    auto v = e.value->value<T>();
    if (!v) invalid("expectation '" + key + "' has the wrong type");
    return *v;
  }

  void check_bool(CaseOutcome& out, const std::string& key, bool observed) {
    if (auto* e = expect(key)) {
      bool want = value_as<bool>(*e, key);
      if (want != observed) diff(out, key, want ? "true" : "false", observed ? "true" : "false");
    }
  }

  void check_int(CaseOutcome& out, const std::string& key, long long observed) {
    if (auto* e = expect(key)) {
      auto want = value_as<long long>(*e, key);
      if (want != observed) diff(out, key, std::to_string(want), std::to_string(observed));
    }
  }

  void check_string(CaseOutcome& out, const std::string& key, const std::string& observed) {
    if (auto* e = expect(key)) {
      auto want = value_as<std::string>(*e, key);
      if (want != observed) diff(out, key, want, observed);
    }
  }

  void check_poly(CaseOutcome& out, const std::string& key, const Polynomial& observed) {
    if (auto* e = expect(key)) {
      auto want = parse_polynomial(value_as<std::string>(*e, key), observed.ring());
      if (want != observed) diff(out, key, want.to_string(), observed.to_string());
    }
  }

  void check_poly_list(CaseOutcome& out, const std::string& key, const std::vector<Polynomial>& observed,
                       const Ring& ring) {
    if (auto* e = expect(key)) {
      std::vector<Polynomial> want;
      for (const auto& s : string_list(e->value, key)) want.push_back(parse_polynomial(s, ring));
      if (want != observed) diff(out, key, ideal_text(want), ideal_text(observed));
    }
  }

  void check_h2(CaseOutcome& out, const H2Verdict& v, const Ring& ring) {
    check_bool(out, "h2_vanishes", v.vanishes);
    check_poly(out, "gcd", v.gcd_d);
    if (auto* e = expect("witness_ideal")) {
      std::vector<Polynomial> want;
      for (const auto& s : string_list(e->value, "witness_ideal")) want.push_back(parse_polynomial(s, ring));
      const auto* w = std::get_if<HeightTwoWitness>(&v.evidence);
      if (!w) diff(out, "witness_ideal", ideal_text(want), "no height-two witness");
      else if (!ideals_equal(IdealHandle(ring, want), w->saturated))
        diff(out, "witness_ideal", ideal_text(want), ideal_text(w->saturated.groebner_basis()));
    }
    if (auto* w = std::get_if<HeightTwoWitness>(&v.evidence)) check_int(out, "witness_height", static_cast<long long>(w->height));
    else if (expect("witness_height")) diff(out, "witness_height", "a height-two witness", "vanishing verdict");
  }

  void run_ring(CaseOutcome& out) {
    Ring ring = parse_ring(require_string("ring"));
    auto q = poly_list("q", ring);
    KQRing R = make_kq_ring(ring, q);
    unsigned bound = static_cast<unsigned>(int_or("degree_bound", default_degree_bound(R)));
    ObstructionReport report = [&] {
      if (spec_.contains("aux")) {
        auto aux = poly_list("aux", ring);
        if (aux.size() != 2) invalid("aux must have exactly two entries");
        return principal_obstruction(R, std::make_pair(aux[0], aux[1]), bound);
      }
      return cm_obstruction_report(R, bound);
    }();
    out.observed = to_json(report);

    check_string(out, "verdict", to_string(report.verdict));
    if (report.h2) check_h2(out, *report.h2, ring);
    if (auto* e = expect("sequence")) {
      std::vector<Polynomial> want;
      for (const auto& s : string_list(e->value, "sequence")) want.push_back(parse_polynomial(s, ring));
      std::vector<Polynomial> got;
      if (report.sequence) got = {report.sequence->first, report.sequence->second};
      if (want != got) diff(out, "sequence", ideal_text(want), got.empty() ? "none" : ideal_text(got));
    }
    if (report.proregularity) check_string(out, "proregularity", to_string(report.proregularity->reason));
    else if (expect("proregularity")) diff(out, "proregularity", "a status", "none");

    const RegularityWitness* w =
        report.regularity && report.regularity->failure_witness ? &*report.regularity->failure_witness : nullptr;
    if (auto* e = expect("regularity_witness")) {
      auto want = parse_polynomial(value_as<std::string>(*e, "regularity_witness"), ring);
      if (!w) diff(out, "regularity_witness", want.to_string(), "none");
      else if (w->r != want) diff(out, "regularity_witness", want.to_string(), w->r.to_string());
    }
    if (auto* e = expect("regularity_witness_max_degree")) {
      auto max_deg = value_as<long long>(*e, "regularity_witness_max_degree");
      std::vector<Polynomial> seq;
      if (report.sequence) seq = {report.sequence->first, report.sequence->second};
      if (!w) diff(out, "regularity_witness_max_degree", "a witness", "none");
      else if (static_cast<long long>(w->r.total_degree()) > max_deg)
        diff(out, "regularity_witness_max_degree", "<= " + std::to_string(max_deg), std::to_string(w->r.total_degree()));
      else if (!witness_replays(*w, seq, R))
        diff(out, "regularity_witness_max_degree", "replayable witness", "replay failed");
    }
    if (auto* e = expect("algebra_generators")) {
      auto want_list = string_list(e->value, "algebra_generators");
      auto truncated = (*e->entry)["truncated"].value<bool>();
      unsigned gen_bound = static_cast<unsigned>(int_or("generator_degree_bound", 4));
      auto gens = R.monomial_algebra_generators(gen_bound);
      std::vector<Polynomial> want;
      for (const auto& s : want_list) want.push_back(parse_polynomial(s, ring));
      if (want != gens.generators) diff(out, "algebra_generators", ideal_text(want), ideal_text(gens.generators));
      if (truncated && *truncated != gens.truncated)
        diff(out, "algebra_generators.truncated", *truncated ? "true" : "false", gens.truncated ? "true" : "false");
    }
  }

  void run_pair(CaseOutcome& out) {
    Ring ring = parse_ring(require_string("ring"));
    auto pair = poly_list("pair", ring);
    if (pair.size() != 2) invalid("pair must have exactly two entries");
    auto verdict = h2_vanishes(pair[0], pair[1]);
    unsigned cert_bound = static_cast<unsigned>(int_or("certificate_bound", kDefaultCertificateBound));
    auto cert = h2_certificate_search(pair[0], pair[1], cert_bound);
    const auto* found = std::get_if<CertificateN>(&cert);
    out.observed = to_json(verdict, found ? std::optional<unsigned>(found->n) : std::nullopt);
    out.observed["certificate_search"] = {{"bound", cert_bound},
                                          {"n", found ? Json(found->n) : Json(nullptr)}};
    check_h2(out, verdict, ring);
    if (auto* e = expect("certificate")) {
      std::string observed = found ? std::to_string(found->n) : "none";
      std::string want;
      if (auto n = e->value->value<long long>()) want = std::to_string(*n);
      else if (auto s = e->value->value<std::string>(); s && *s == "none") want = "none";
      else invalid("expectation 'certificate' must be an integer or \"none\"");
      if (want != observed) diff(out, "certificate", want, observed);
    }
  }

  void run_semigroup(CaseOutcome& out) {
    auto H = parse_semigroup(require_string("semigroup"));
    auto verdict = bounded_normality_check(H, int_or("multiplier_max", 5), int_or("box_radius", 6));
    out.observed = to_json(verdict);
    check_bool(out, "normal_within_bound", verdict.normal_within_bound);
    if (auto* e = expect("counterexample")) {
      auto* t = e->value->as_table();
      if (!t) invalid("expectation 'counterexample' must be a table {m = ..., s = [...]}");
      auto m = (*t)["m"].value<long long>();
      auto* s_arr = (*t)["s"].as_array();
      if (!m || !s_arr) invalid("expectation 'counterexample' must be a table {m = ..., s = [...]}");
      IntVector s;
      for (const auto& el : *s_arr) s.push_back(el.value<long long>().value_or(0));
      if (!verdict.counterexample) diff(out, "counterexample", node_text(*e->value), "none");
      else if (verdict.counterexample->m != *m || verdict.counterexample->s != s)
        diff(out, "counterexample", node_text(*e->value), to_json(verdict)["counterexample"].dump());
      else if (!counterexample_replays(*verdict.counterexample, H))
        diff(out, "counterexample", "replayable counterexample", "replay failed");
    }
    if (auto* e = expect("bridge")) {
      auto want = value_as<std::string>(*e, "bridge");
      auto bridged = monomial_bridge(H);
      std::string observed = bridged ? bridged->to_string() : "unsupported";
      if (want != observed) diff(out, "bridge", want, observed);
    }
  }

  std::string name_;
  const toml::table& spec_;
  std::map<std::string, Expectation> expectations_;
  std::set<std::string> expected_keys_;
  std::set<std::string> checked_;
};

}  // namespace detail

inline CorpusSummary run_corpus_text(std::string_view text) {
  toml::table doc;
  try {
    doc = toml::parse(text);
  } catch (const toml::parse_error& e) {
    throw CorpusError(std::string("corpus is not valid TOML: ") + std::string(e.description()));
  }
  CorpusSummary summary;
  auto* cases = doc["cases"].as_table();
  if (!cases || cases->empty()) {
    summary.warnings.push_back("corpus contains no cases");
    return summary;
  }
  std::vector<std::string> names;
  for (const auto& [k, v] : *cases) {
    if (!v.is_table()) throw CorpusError("case '" + std::string(k.str()) + "' must be a table");
    names.emplace_back(k.str());
  }
  std::sort(names.begin(), names.end());
  for (const auto& name : names) {
    try {
      summary.cases.push_back(detail::CaseRunner(name, *(*cases)[name].as_table()).run());
    } catch (const CorpusError&) {
      throw;
    } catch (const ParseError& e) {
      throw CorpusError("case '" + name + "': " + e.what());
    } catch (const Error& e) {
      CaseOutcome failed{name, false, {std::string("error: ") + e.what()}, nullptr};
      summary.cases.push_back(std::move(failed));
    }
  }
  return summary;
}

inline CorpusSummary run_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot read corpus file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return run_corpus_text(buf.str());
}

}  // namespace cmkernel
