#pragma once

// JSON renderings of the library's results. Every mathematical integer is a
// decimal string; plain counters stay JSON numbers.

#include <string>
#include <vector>

#include <json.hpp>

#include "iterquad/census.hpp"
#include "iterquad/config.hpp"
#include "iterquad/funcfield.hpp"
#include "iterquad/primitive.hpp"
#include "iterquad/quadmap.hpp"

namespace iterquad::report {

using nlohmann::json;

inline json str(const Integer& x) { return to_string(x); }
inline json str(std::uint64_t x) { return std::to_string(x); }

inline json map_json(const QuadMapZ& f) {
  const auto c = f.coefficients();
  return {{"gamma", str(f.gamma)}, {"m", str(f.m)}, {"coefficients", {str(c[0]), str(c[1]), str(c[2])}}};
}

inline json certificate_json(const StabilityCertificate& c) {
  json j{{"kind", to_string(c.kind)}, {"evidence", c.evidence}};
  if (c.prime) j["prime"] = str(*c.prime);
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline json criterion_json(const CriterionResult& r) {
  json j{{"verdict", to_string(r.verdict)}, {"reducible_by_root", r.reducible_by_root}};
  j["failing_index"] = r.failing_index ? json(*r.failing_index) : json();
  return j;
}

inline json config_json(const Config& c) { return json(c.describe()); }

struct DeddomSample {
  std::uint64_t p = 0;
  bool criterion_reducible = false;
  std::optional<bool> oracle_reducible;
};

struct QConstruction {
  unsigned n = 0;
  Integer m;
  Integer s;
  QuadMapZ map;
  std::vector<StabilityCertificate> certificates;
  std::vector<Integer> adjusted_sequence;
  CriterionResult altfund;
  std::vector<DeddomSample> samples;
};

inline json sample_json(const DeddomSample& s) {
  json j{{"p", str(s.p)}, {"criterion_reducible", s.criterion_reducible}};
  j["oracle_reducible"] = s.oracle_reducible ? json(*s.oracle_reducible) : json();
  return j;
}

inline json construction_json(const QConstruction& c, const Config& cfg) {
  json j;
  j["kind"] = "q";
  j["n"] = c.n;
  j["m"] = str(c.m);
  j["s"] = str(c.s);
  j["gamma"] = str(c.map.gamma);
  j["map"] = map_json(c.map);
  j["certificates"] = json::array();
  for (const auto& cert : c.certificates) j["certificates"].push_back(certificate_json(cert));
  j["adjusted_sequence"] = json::array();
  for (const auto& v : c.adjusted_sequence) j["adjusted_sequence"].push_back(str(v));
  j["altfund"] = criterion_json(c.altfund);
  j["deddom_check_sample"] = json::array();
  for (const auto& s : c.samples) j["deddom_check_sample"].push_back(sample_json(s));
  j["seed"] = str(cfg.seed);
  j["config"] = config_json(cfg);
  return j;
}

inline json field_json(const FqField& F) {
  json mod = json::array();
  for (auto c : F.modulus()) mod.push_back(c);
  return {{"p", F.characteristic()}, {"k", F.degree()}, {"modulus", mod}};
}

/// Coefficients ascending in t, each a coordinate list over F_p.
inline json fqpoly_json(const FqPoly& a) {
  json out = json::array();
  for (auto c : a.coeffs()) out.push_back(a.field().digits(c));
  return out;
}

inline json fqrat_json(const FqRat& x) {
  const std::string text = x.is_polynomial() ? to_string(x.num()) : "(" + to_string(x.num()) + ")/(" + to_string(x.den()) + ")";
  return {{"num", fqpoly_json(x.num())}, {"den", fqpoly_json(x.den())}, {"text", text}};
}

inline json fq_criterion_json(const FqCriterionResult& r) {
  json j{{"verdict", to_string(r.verdict)}, {"reducible_by_root", r.reducible_by_root}};
  j["failing_index"] = r.failing_index ? json(*r.failing_index) : json();
  return j;
}

struct SpecializationCheck {
  unsigned j = 0;            // extension degree of F_{p^j}
  std::uint64_t points = 0;  // c values tried (poles skipped)
  std::uint64_t poles = 0;
  std::uint64_t full_cycles = 0;  // specializations where f^n stayed irreducible
};

struct FqConstruction {
  RatffConstruction result;
  std::vector<SpecializationCheck> specializations;
};

inline json fq_construction_json(const FqConstruction& c, const Config& cfg) {
  const auto& r = c.result;
  const auto coeffs = r.map.coefficients();
  json j;
  j["kind"] = "fq";
  j["field"] = field_json(r.map.m.field());
  j["n"] = r.n;
  j["m"] = fqrat_json(r.map.m);
  j["gamma"] = fqrat_json(r.map.gamma);
  j["coefficients"] = {fqrat_json(coeffs[0]), fqrat_json(coeffs[1]), fqrat_json(coeffs[2])};
  const auto& cert = r.certificate;
  j["valuation_certificate"] = {{"q1", fqpoly_json(cert.q1)},
                                {"q1_text", to_string(cert.q1)},
                                {"c1", cert.c1},
                                {"q1_base_valuations", cert.q1_base_valuations},
                                {"q1_altfund_valuations", cert.q1_altfund_valuations},
                                {"c2", cert.c2},
                                {"v_inf_gamma", cert.v_inf_gamma},
                                {"inf_value_valuations", cert.inf_value_valuations},
                                {"verified", cert.verified}};
  j["altfund"] = fq_criterion_json(r.altfund);
  j["later_levels"] = json::array();
  for (std::size_t i = 0; i < r.later_levels.size(); ++i) {
    json l = fq_criterion_json(r.later_levels[i]);
    l["level"] = r.n + 1 + i;
    j["later_levels"].push_back(l);
  }
  j["specializations"] = json::array();
  for (const auto& s : c.specializations) {
    j["specializations"].push_back({{"j", s.j}, {"points", s.points}, {"poles", s.poles}, {"full_cycles", s.full_cycles}});
  }
  j["seed"] = str(cfg.seed);
  j["config"] = config_json(cfg);
  return j;
}

inline json witness_json(const WitnessResult& w) {
  json j{{"strategy", to_string(w.strategy)}, {"candidates_tried", w.candidates_tried}};
  j["prime"] = w.prime ? str(*w.prime) : json();
  if (w.modulus) j["progression"] = {{"modulus", str(*w.modulus)}, {"residue", str(*w.residue)}};
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

inline json primitive_json(const PrimitiveExample& ex, const Config& cfg) {
  json j;
  j["n"] = ex.n;
  j["m"] = str(ex.map.m);
  j["gamma"] = str(ex.map.gamma);
  j["q"] = str(ex.q);
  j["map"] = map_json(ex.map);
  j["certificate"] = certificate_json(ex.certificate);
  j["fn_gamma"] = str(ex.fn_gamma);
  j["witness"] = witness_json(ex.witness);
  j["crt_witness"] = ex.crt_witness ? witness_json(*ex.crt_witness) : json();
  j["spot_checks"] = json::array();
  for (const auto& s : ex.spot_checks) {
    json e{{"p", str(s.p)}, {"criterion_reducible", s.criterion_reducible}};
    e["oracle_reducible"] = s.oracle_reducible ? json(*s.oracle_reducible) : json();
    j["spot_checks"].push_back(e);
  }
  if (!ex.note.empty()) j["note"] = ex.note;
  j["seed"] = str(cfg.seed);
  j["config"] = config_json(cfg);
  return j;
}

inline json span_json(const SpanReport& s) {
  json j;
  j["k"] = s.k;
  j["zero_index"] = s.zero_index ? json(*s.zero_index) : json();
  j["rank"] = s.rank;
  j["affine_span_size"] = str(s.affine_span_size);
  j["origin_in_affine_span"] = s.origin_in_affine_span;
  j["witness"] = s.witness;
  j["predicted_density"] = s.predicted_density ? json(to_string(*s.predicted_density)) : json();
  j["unknown_cofactor_indices"] = s.unknown_cofactor_indices;
  j["prefix_based"] = s.prefix_based;
  j["elements"] = json::array();
  for (const auto& e : s.elements) j["elements"].push_back(str(e));
  return j;
}

inline json census_json(const CensusReport& r, const std::optional<SpanReport>& span, const Config& cfg) {
  json j;
  j["f"] = {{"gamma", str(r.map.gamma)}, {"m", str(r.map.m)}};
  j["bound"] = str(r.bound);
  j["prefix_depth"] = r.prefix_depth;
  j["kill_depth"] = r.kill_depth;
  j["complete"] = r.complete();
  j["stable_primes"] = json::array();
  for (auto p : r.stable_primes) j["stable_primes"].push_back(str(p));
  j["candidates"] = json::array();
  for (const auto& c : r.candidates) {
    json e{{"p", str(c.p)}, {"stable", c.stable}, {"tail_length", c.tail_length}, {"cycle_length", c.cycle_length}};
    e["kill_depth"] = c.kill_depth ? json(*c.kill_depth) : json();
    e["failing_index"] = c.failing_index ? json(*c.failing_index) : json();
    j["candidates"].push_back(e);
  }
  j["span"] = span ? span_json(*span) : json();
  j["runtime_stats"] = {{"primes_scanned", r.primes_scanned},
                        {"segments_total", r.segments_total},
                        {"segments_done", r.segments_done},
                        {"workers", r.workers}};
  j["notes"] = {"p = 2 is excluded: the reduction in characteristic 2 is never stable"};
  j["seed"] = str(cfg.seed);
  return j;
}

inline json heuristic_json(const HeuristicSum& h) {
  return {{"bound", str(h.bound)},
          {"partial_sum", h.partial_sum},
          {"evaluated_up_to", str(h.evaluated_up_to)},
          {"truncation_bound", h.truncation_bound},
          {"tail_bound", h.tail_bound}};
}

}  // namespace iterquad::report
