#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "cmkernel/cech.hpp"
#include "cmkernel/groebner.hpp"
#include "cmkernel/kq_ring.hpp"
#include "cmkernel/semigroup.hpp"

namespace cmkernel {

using Json = nlohmann::ordered_json;

inline Json to_json(const Polynomial& f) { return f.to_string(); }

inline Json to_json(const std::vector<Polynomial>& polys) {
  Json a = Json::array();
  for (const auto& p : polys) a.push_back(p.to_string());
  return a;
}

inline Json to_json(const ReductionTrace& t) {
  Json q = Json::array();
  for (const auto& [g, c] : t.quotients) q.push_back({{"basis", g.to_string()}, {"cofactor", c.to_string()}});
  return {{"ring", t.input.ring()->to_string()},
          {"order", t.order.name()},
          {"input", t.input.to_string()},
          {"remainder", t.remainder.to_string()},
          {"quotients", std::move(q)}};
}

inline Json to_json(const H2Verdict& v, std::optional<unsigned> certificate_n = std::nullopt) {
  Json j;
  j["vanishes"] = v.vanishes;
  j["gcd"] = v.gcd_d.to_string();
  j["reduced_pair"] = {v.reduced_pair.first.to_string(), v.reduced_pair.second.to_string()};
  if (const auto* rt = std::get_if<RadicalTrace>(&v.evidence)) {
    j["evidence_kind"] = "RadicalTrace";
    j["evidence"] = {{"ideal", rt->extended.to_string()}, {"trace", to_json(rt->trace)}};
  } else {
    const auto& w = std::get<HeightTwoWitness>(v.evidence);
    j["evidence_kind"] = "HeightTwoWitness";
    j["evidence"] = {{"saturated_ideal", ideal_text(w.saturated.groebner_basis())}, {"height", w.height}};
  }
  if (v.degenerate) j["degenerate"] = true;
  if (certificate_n) j["certificate_n"] = *certificate_n;
  return j;
}

inline Json to_json(const CertificateSearch& c) {
  if (const auto* found = std::get_if<CertificateN>(&c))
    return {{"found", true}, {"n", found->n}, {"trace", to_json(found->trace)}};
  return {{"found", false}, {"not_found_up_to", std::get<NotFoundUpTo>(c).n_max}};
}

inline Json to_json(const ProregularityStatus& s) { return {{"holds", s.holds}, {"reason", to_string(s.reason)}}; }

inline Json to_json(const KQMembership& m) {
  Json scalars = Json::array();
  for (const auto& s : m.scalars) scalars.push_back(s.get_str());
  return {{"member", m.member}, {"scalars", std::move(scalars)}, {"trace", to_json(m.trace)}};
}

inline Json to_json(const RegularityVerdict& v) {
  Json j{{"regular", v.regular}, {"conditional_on_bound", v.conditional()}, {"search_bound", v.search_bound}};
  if (v.failure_witness) {
    const auto& w = *v.failure_witness;
    j["failure_witness"] = {{"index", w.index},
                            {"r", w.r.to_string()},
                            {"product_membership", to_json(w.product_membership)},
                            {"r_membership", to_json(w.r_membership)}};
  } else {
    j["failure_witness"] = nullptr;
  }
  return j;
}

inline Json to_json(const KQRing& R) {
  return {{"ambient", R.ambient()->to_string()}, {"conductor", ideal_text(R.conductor_generators())}};
}

inline Json to_json(const ObstructionReport& r) {
  Json j;
  j["ring"] = to_json(r.ring);
  j["verdict"] = to_string(r.verdict);
  j["sequence"] = r.sequence ? Json{r.sequence->first.to_string(), r.sequence->second.to_string()} : Json(nullptr);
  if (r.aux) j["aux"] = {r.aux->first.to_string(), r.aux->second.to_string()};
  j["h2_verdict"] = r.h2 ? to_json(*r.h2) : Json(nullptr);
  j["regularity_witness"] = r.regularity ? to_json(*r.regularity) : Json(nullptr);
  j["proregularity"] = r.proregularity ? to_json(*r.proregularity) : Json(nullptr);
  j["citations"] = r.narrative;
  j["bounds"] = {{"degree_bound", r.degree_bound}};
  if (r.recorded_dimension) j["recorded_dimension"] = *r.recorded_dimension;
  return j;
}

inline Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

inline Json to_json(const NormalityVerdict& v) {
  Json j{{"normal_within_bound", v.normal_within_bound},
         {"bounds", {{"multiplier_max", v.multiplier_max}, {"box_radius", v.box_radius}}}};
  if (v.counterexample) {
    Json coeffs = Json::array();
    for (const auto& c : v.counterexample->lattice_coefficients) coeffs.push_back(c.get_str());
    j["counterexample"] = {{"m", v.counterexample->m},
                           {"s", to_json(v.counterexample->s)},
                           {"lattice_coefficients", std::move(coeffs)}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

}  // namespace cmkernel
