// Command-line front end. Every command writes one JSON document to stdout;
// --pretty adds a human-readable summary on stderr.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cmkernel/cmkernel.hpp"
#include "cmkernel/corpus.hpp"

namespace {

using namespace cmkernel;

struct Options {
  std::string ring = "QQ[x,y,z]";
  std::string ideal;
  std::string poly;
  std::string seq;
  std::string aux;
  std::string order = "grevlex";
  std::optional<long long> bound;
  long long radius = 6;
  std::string semigroup;
  std::string corpus_path;
  bool json = false;
  bool pretty = false;
  bool fail_on_not_cm = false;
};

MonomialOrder parse_order(const std::string& name) {
  if (name == "lex") return MonomialOrder::lex();
  if (name == "grevlex") return MonomialOrder::grevlex();
  throw ParseError("unknown order '" + name + "' (expected lex or grevlex)");
}

std::vector<Polynomial> require_list(const std::string& text, const Ring& ring, const char* flag) {
  if (text.empty()) throw ParseError(std::string("missing ") + flag);
  return parse_polynomial_list(text, ring);
}

Polynomial require_poly(const Options& o, const Ring& ring) {
  if (o.poly.empty()) throw ParseError("missing --poly");
  return parse_polynomial(o.poly, ring);
}

std::pair<Polynomial, Polynomial> require_pair(const Options& o, const Ring& ring) {
  auto seq = require_list(o.seq, ring, "--seq");
  if (seq.size() != 2) throw ParseError("--seq must list exactly two polynomials");
  return {seq[0], seq[1]};
}

unsigned positive_bound(const Options& o, unsigned fallback) {
  if (!o.bound) return fallback;
  if (*o.bound < 1) throw ParseError("--bound must be positive");
  return static_cast<unsigned>(*o.bound);
}

void print_pretty(const Json& j) {
  for (const auto& [key, value] : j.items()) {
    if (value.is_array() && !value.empty() && value.front().is_string() && key == "citations") {
      std::cerr << key << ":\n";
      for (const auto& line : value) std::cerr << "  - " << line.get<std::string>() << "\n";
    } else if (value.is_string()) {
      std::cerr << key << ": " << value.get<std::string>() << "\n";
    } else {
      std::cerr << key << ": " << value.dump() << "\n";
    }
  }
}

/// Runs `name` and returns (json, exit code).
std::pair<Json, int> dispatch(const std::string& name, const Options& o) {
  if (name == "corpus") {
    auto summary = run_corpus(o.corpus_path);
    for (const auto& w : summary.warnings) std::cerr << "warning: " << w << "\n";
    return {summary.to_json(), summary.exit_code()};
  }
  if (name == "semigroup-check") {
    if (o.semigroup.empty()) throw ParseError("missing --semigroup");
    auto H = parse_semigroup(o.semigroup);
    auto verdict = bounded_normality_check(H, o.bound.value_or(5), o.radius);
    Json j{{"semigroup", H.to_string()}, {"normality", to_json(verdict)}};
    auto bridged = monomial_bridge(H);
    j["bridge"] = bridged ? to_json(*bridged) : Json("unsupported");
    return {j, 0};
  }

  Ring ring = parse_ring(o.ring);
  const auto order = parse_order(o.order);

  if (name == "gb") {
    IdealHandle I(ring, require_list(o.ideal, ring, "--ideal"));
    const auto& basis = I.groebner_basis(order);
    Json b = Json::array();
    for (const auto& g : basis) b.push_back(g.to_string(order));
    return {{{"ring", ring->to_string()}, {"order", order.name()}, {"basis", b}}, 0};
  }
  if (name == "nf") {
    IdealHandle I(ring, require_list(o.ideal, ring, "--ideal"));
    return {to_json(normal_form(require_poly(o, ring), I, order)), 0};
  }
  if (name == "member") {
    IdealHandle I(ring, require_list(o.ideal, ring, "--ideal"));
    auto r = ideal_membership(require_poly(o, ring), I);
    return {{{"member", r.member}, {"trace", to_json(r.trace)}}, 0};
  }
  if (name == "radmember") {
    IdealHandle I(ring, require_list(o.ideal, ring, "--ideal"));
    auto r = radical_membership(require_poly(o, ring), I);
    return {{{"member", r.member}, {"extended_ideal", r.extended.to_string()}, {"trace", to_json(r.trace)}}, 0};
  }
  if (name == "gcd") {
    auto [f, g] = require_pair(o, ring);
    return {{{"gcd", multivariate_gcd(f, g).to_string()}}, 0};
  }
  if (name == "colon" || name == "sat") {
    IdealHandle I(ring, require_list(o.ideal, ring, "--ideal"));
    auto h = require_poly(o, ring);
    auto result = name == "colon" ? colon_ideal(I, h) : saturation(I, h);
    return {{{"ideal", ideal_text(result.groebner_basis())}}, 0};
  }
  if (name == "dim") {
    IdealHandle I(ring, require_list(o.ideal, ring, "--ideal"));
    auto d = quotient_dimension(I);
    return {{{"dimension", d}, {"height", ring->arity() - d}, {"grade", ring->arity() - d}}, 0};
  }
  if (name == "h2") {
    auto [f, g] = require_pair(o, ring);
    auto v = h2_vanishes(f, g);
    std::optional<unsigned> n;
    if (o.bound) {
      auto search = h2_certificate_search(f, g, positive_bound(o, kDefaultCertificateBound));
      if (auto* c = std::get_if<CertificateN>(&search)) n = c->n;
    }
    return {to_json(v, n), 0};
  }
  if (name == "cert") {
    auto [f, g] = require_pair(o, ring);
    return {to_json(h2_certificate_search(f, g, positive_bound(o, kDefaultCertificateBound))), 0};
  }

  KQRing R = make_kq_ring(ring, require_list(o.ideal, ring, "--ideal"));
  if (name == "strongparam") {
    auto sp = strong_param_pair_two_generated(R);
    return {{{"ring", to_json(R)}, {"strong_parameter_sequence", sp.strong}, {"h2_verdict", to_json(sp.h2)}}, 0};
  }
  if (name == "regseq") {
    auto seq = require_list(o.seq, ring, "--seq");
    auto v = kq_regular_sequence(seq, R, positive_bound(o, default_degree_bound(R)));
    return {{{"ring", to_json(R)}, {"sequence", to_json(seq)}, {"verdict", to_json(v)}}, 0};
  }
  if (name == "report") {
    unsigned bound = positive_bound(o, default_degree_bound(R));
    ObstructionReport report = [&] {
      if (!o.aux.empty()) {
        auto aux = parse_polynomial_list(o.aux, ring);
        if (aux.size() != 2) throw ParseError("--aux must list exactly two polynomials");
        return principal_obstruction(R, std::make_pair(aux[0], aux[1]), bound);
      }
      return cm_obstruction_report(R, bound);
    }();
    int code = (o.fail_on_not_cm && report.verdict == CMVerdict::NOT_CM) ? 1 : 0;
    return {to_json(report), code};
  }
  throw ParseError("unknown command '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact kernel for Cohen-Macaulay obstructions of k + Q rings"};
  app.require_subcommand(1);
  Options o;

  struct Spec {
    const char* name;
    const char* help;
  };
  const std::vector<Spec> commands{
      {"gb", "reduced Groebner basis of --ideal"},
      {"nf", "normal form of --poly modulo --ideal, with trace"},
      {"member", "ideal membership of --poly in --ideal"},
      {"radmember", "radical membership of --poly in --ideal"},
      {"gcd", "monic gcd of the two polynomials in --seq"},
      {"colon", "colon ideal (--ideal : --poly)"},
      {"sat", "saturation (--ideal : --poly^inf)"},
      {"dim", "Krull dimension and height of --ideal"},
      {"h2", "vanishing of H^2 for the pair in --seq"},
      {"cert", "search (fg)^n in (f^(n+1), g^(n+1)) for n <= --bound"},
      {"strongparam", "strong parameter test for Q = --ideal with two generators"},
      {"regseq", "regularity of --seq in R = k + Q with Q = --ideal"},
      {"report", "Cohen-Macaulay obstruction report for R = k + Q, Q = --ideal"},
      {"semigroup-check", "bounded normality check for --semigroup"},
      {"corpus", "run a TOML verdict corpus"},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--ring", o.ring, "ring, e.g. QQ[x,y,z] or Fp(32003)[x,y]");
    sub->add_option("--ideal", o.ideal, "comma-separated generators");
    sub->add_option("--poly", o.poly, "a polynomial");
    sub->add_option("--seq", o.seq, "comma-separated sequence");
    sub->add_option("--aux", o.aux, "g,h for the principal-conductor construction");
    sub->add_option("--order", o.order, "lex or grevlex")->check(CLI::IsMember({"lex", "grevlex"}));
    sub->add_option("--bound", o.bound, "search bound");
    sub->add_option("--radius", o.radius, "box radius for semigroup-check");
    sub->add_option("--semigroup", o.semigroup, "sector(n=3, i=1) or gens([2],[3])");
    sub->add_flag("--json", o.json, "emit JSON (always on)");
    sub->add_flag("--pretty", o.pretty, "human-readable summary on stderr");
    sub->add_flag("--fail-on-not-cm", o.fail_on_not_cm, "exit 1 when the report verdict is NOT_CM");
    if (std::string(c.name) == "corpus") sub->add_option("path", o.corpus_path, "corpus file")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string name = app.get_subcommands().front()->get_name();
  try {
    auto [json, code] = dispatch(name, o);
    std::cout << json.dump(2) << "\n";
    if (o.pretty) print_pretty(json);
    return code;
  } catch (const CorpusError& e) {
    std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
