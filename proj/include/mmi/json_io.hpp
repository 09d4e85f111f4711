#pragma once

// JSON input documents and reports. Points, jumping numbers and region
// constants are strings ("17/42"); divisor entries are numbers when
// integral and strings otherwise. Objects are emitted with sorted keys.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mmi/divisor.hpp"
#include "mmi/enumeration.hpp"
#include "mmi/error.hpp"
#include "mmi/jumping_divisor.hpp"
#include "mmi/mixed_ideal.hpp"
#include "mmi/rational.hpp"
#include "mmi/region.hpp"
#include "mmi/resolution.hpp"

namespace mmi::io {

using json = nlohmann::json;

// ---- scalars -------------------------------------------------------------

inline json rational_string(const Rational& q) { return to_string(q); }

inline json rational_entry(const Rational& q) {
  if (is_integer(q)) {
    const Integer z = numerator_of(q);
    if (z >= Integer(INT64_MIN) && z <= Integer(INT64_MAX)) return z.convert_to<std::int64_t>();
  }
  return to_string(q);
}

inline Rational rational_from(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorCode::InvalidInput, "expected an exact rational, got " + j.dump());
}

inline json point_json(const std::vector<Rational>& z) {
  json a = json::array();
  for (const auto& q : z) a.push_back(rational_string(q));
  return a;
}
inline json point_json(const OrthantPoint& z) { return point_json(z.coords()); }

inline std::vector<Rational> rationals_from(const json& j) {
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rational_from(e));
  return out;
}
inline OrthantPoint point_from(const json& j) { return OrthantPoint(rationals_from(j)); }

inline json rationals_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(rational_string(q));
  return a;
}

inline json divisor_json(const Divisor& d) {
  json a = json::array();
  for (const auto& q : d.coefficients()) a.push_back(rational_entry(q));
  return a;
}
inline Divisor divisor_from(const json& j) { return Divisor(rationals_from(j)); }

inline json ids_json(const LogResolution& res, const std::vector<std::size_t>& comps) {
  json a = json::array();
  for (std::size_t j : comps) a.push_back(res.graph.id(j));
  return a;
}

inline std::vector<std::size_t> ids_from(const LogResolution& res, const json& j) {
  std::vector<std::size_t> out;
  for (const auto& e : j) {
    auto idx = res.graph.index_of(e.get<std::string>());
    if (!idx) throw Error(ErrorCode::DanglingReference, "unknown component " + e.dump());
    out.push_back(*idx);
  }
  return out;
}

// ---- input -----------------------------------------------------------------

inline std::int64_t exact_integer(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw Error(ErrorCode::InvalidInput, what + " must be an exact integer, got " + j.dump());
  return j.get<std::int64_t>();
}

struct InputDocument {
  RawGraph graph;
  std::vector<RawIdeal> ideals;
};

inline InputDocument parse_input(const json& doc) {
  InputDocument in;
  try {
    if (!doc.is_object()) throw Error(ErrorCode::InvalidInput, "input must be a JSON object");
    for (const auto& c : doc.at("exceptional"))
      in.graph.exceptional.push_back({c.at("id").get<std::string>(), exact_integer(c.at("self"), "self-intersection")});
    if (doc.contains("edges"))
      for (const auto& e : doc.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::InvalidInput, "edge must be a pair of ids: " + e.dump());
        in.graph.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
      }
    if (doc.contains("affine"))
      for (const auto& a : doc.at("affine")) {
        RawAffine aff{a.at("id").get<std::string>(), {}};
        for (const auto& m : a.at("meets")) aff.meets.push_back(m.get<std::string>());
        in.graph.affine.push_back(std::move(aff));
      }
    for (const auto& i : doc.at("ideals")) {
      RawIdeal ideal{i.at("name").get<std::string>(), {}};
      for (const auto& [id, m] : i.at("mult").items()) ideal.mult[id] = exact_integer(m, "multiplicity at " + id);
      in.ideals.push_back(std::move(ideal));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed input: ") + e.what());
  }
  return in;
}

inline LogResolution load_resolution(const json& doc, bool affine_walls = false) {
  const InputDocument in = parse_input(doc);
  DualGraph g = validate_graph(in.graph);
  IdealDivisorSet f = make_ideal_divisor_set(g, in.ideals);
  return make_log_resolution(std::move(g), std::move(f), affine_walls);
}

inline json read_json_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw Error(ErrorCode::InvalidInput, "cannot open input file '" + path + "'");
  try {
    return json::parse(file);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, "'" + path + "' is not valid JSON: " + e.what());
  }
}

inline LogResolution load_resolution_file(const std::string& path, bool affine_walls = false) {
  return load_resolution(read_json_file(path), affine_walls);
}

// ---- reports -------------------------------------------------------------

inline json to_json(const LogResolution& res, const Inequality& h) {
  return {{"component", res.graph.id(h.component)}, {"coeffs", divisor_json(Divisor(h.coeffs))},
          {"rhs", rational_string(h.rhs)}};
}

inline Inequality inequality_from(const LogResolution& res, const json& j) {
  return {ids_from(res, json::array({j.at("component")})).front(), rationals_from(j.at("coeffs")),
          rational_from(j.at("rhs"))};
}

inline json to_json(const LogResolution& res, const RegionPolytope& region) {
  json ineqs = json::array();
  for (const auto& h : region.inequalities) ineqs.push_back(to_json(res, h));
  return {{"lambda", point_json(region.lambda)}, {"divisor", divisor_json(region.divisor.divisor())},
          {"inequalities", ineqs}};
}

inline RegionPolytope region_from(const LogResolution& res, const json& j) {
  RegionPolytope region{point_from(j.at("lambda")), AntinefDivisor(res.graph, divisor_from(j.at("divisor"))), {}};
  for (const auto& h : j.at("inequalities")) region.inequalities.push_back(inequality_from(res, h));
  return region;
}

inline json to_json(const LogResolution& res, const CFacet& f) {
  return {{"components", ids_json(res, f.components)}, {"from", point_json(f.from)}, {"to", point_json(f.to)},
          {"midpoint", point_json(f.midpoint)}, {"arc", f.arc}};
}

inline CFacet cfacet_from(const LogResolution& res, const json& j) {
  return {ids_from(res, j.at("components")), rationals_from(j.at("from")), rationals_from(j.at("to")),
          rationals_from(j.at("midpoint")), j.at("arc").get<std::size_t>()};
}

inline json to_json(const LogResolution& res, const ConstancyRecord& r) {
  json reps = json::array(), facets = json::array();
  for (const auto& p : r.representatives) reps.push_back(point_json(p));
  for (const auto& f : r.cfacets) facets.push_back(to_json(res, f));
  json ineqs = json::array();
  for (const auto& h : r.region.inequalities) ineqs.push_back(to_json(res, h));
  return {{"id", r.id},
          {"representative", point_json(r.representative())},
          {"representatives", reps},
          {"divisor", divisor_json(r.divisor().divisor())},
          {"inequalities", ineqs},
          {"cfacets", facets},
          {"predecessors", r.predecessors},
          {"truncated", r.truncated}};
}

inline ConstancyRecord record_from(const LogResolution& res, const json& j) {
  ConstancyRecord r;
  r.id = j.at("id").get<std::size_t>();
  for (const auto& p : j.at("representatives")) r.representatives.push_back(point_from(p));
  if (r.representatives.empty() || !(r.representatives.front() == point_from(j.at("representative"))))
    throw Error(ErrorCode::InvalidInput, "record representative mismatch");
  r.region.lambda = r.representatives.front();
  r.region.divisor = AntinefDivisor(res.graph, divisor_from(j.at("divisor")));
  for (const auto& h : j.at("inequalities")) r.region.inequalities.push_back(inequality_from(res, h));
  for (const auto& f : j.at("cfacets")) r.cfacets.push_back(cfacet_from(res, f));
  r.predecessors = j.at("predecessors").get<std::vector<std::size_t>>();
  r.truncated = j.at("truncated").get<bool>();
  return r;
}

inline json to_json(const LogResolution& res, const EnumerationStep& s) {
  json added = json::array();
  for (const auto& p : s.added) added.push_back(point_json(p));
  (void)res;
  return {{"point", point_json(s.point)}, {"divisor", divisor_json(s.divisor.divisor())}, {"record", s.record},
          {"new_region", s.new_region}, {"reprioritized", s.reprioritized}, {"added", added}};
}

inline EnumerationStep step_from(const LogResolution& res, const json& j) {
  EnumerationStep s;
  s.point = point_from(j.at("point"));
  s.divisor = AntinefDivisor(res.graph, divisor_from(j.at("divisor")));
  s.record = j.at("record").get<std::size_t>();
  s.new_region = j.at("new_region").get<bool>();
  s.reprioritized = j.at("reprioritized").get<bool>();
  for (const auto& p : j.at("added")) s.added.push_back(point_from(p));
  return s;
}

inline json to_json(const LogResolution& res, const EnumerationResult& e) {
  json records = json::array(), steps = json::array(), d = json::array(), n = json::array();
  for (const auto& r : e.records) records.push_back(to_json(res, r));
  for (const auto& s : e.steps) steps.push_back(to_json(res, s));
  for (const auto& p : e.processed) d.push_back(point_json(p));
  for (const auto& p : e.pending) n.push_back(point_json(p));
  return {{"box", point_json(e.box)},
          {"records", records},
          {"steps", steps},
          {"D", d},
          {"N", n},
          {"distinct_divisors", e.records.size()},
          {"cfacet_count", e.cfacet_count()},
          {"stopped_early", e.stopped_early},
          {"warnings", e.warnings},
          {"m_primary", res.m_primary}};
}

inline EnumerationResult enumeration_from(const LogResolution& res, const json& j) {
  EnumerationResult e;
  e.box = point_from(j.at("box"));
  for (const auto& r : j.at("records")) e.records.push_back(record_from(res, r));
  for (const auto& s : j.at("steps")) e.steps.push_back(step_from(res, s));
  for (const auto& p : j.at("D")) e.processed.push_back(point_from(p));
  for (const auto& p : j.at("N")) e.pending.push_back(point_from(p));
  e.stopped_early = j.at("stopped_early").get<bool>();
  e.warnings = j.at("warnings").get<std::vector<std::string>>();
  return e;
}

inline json to_json(const LogResolution& res, const MinimalJumpingDivisor& m) {
  return {{"lambda", point_json(m.lambda)}, {"divisor", divisor_json(m.g)}, {"support", ids_json(res, m.support)},
          {"valence", m.valence}};
}

inline MinimalJumpingDivisor minimal_jumping_divisor_from(const LogResolution& res, const json& j) {
  return {point_from(j.at("lambda")), divisor_from(j.at("divisor")), ids_from(res, j.at("support")),
          j.at("valence").get<std::vector<long>>()};
}

inline json to_json(const Check& c) {
  json w = json::array();
  for (const auto& [name, d] : c.witnesses) w.push_back({{"name", name}, {"divisor", divisor_json(d)}});
  return {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"witnesses", w}};
}

inline Check check_from(const json& j) {
  Check c{j.at("name").get<std::string>(), j.at("passed").get<bool>(), j.at("detail").get<std::string>(), {}};
  for (const auto& w : j.at("witnesses")) c.witnesses.emplace_back(w.at("name").get<std::string>(), divisor_from(w.at("divisor")));
  return c;
}

inline json to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"kind", r.kind},          {"lambda", point_json(r.lambda)}, {"checks", checks},
          {"passed", r.passed()},    {"candidates", r.candidates},     {"examined", r.examined},
          {"exhaustive", r.exhaustive}};
}

inline VerificationReport verification_from(const json& j) {
  VerificationReport r;
  r.kind = j.at("kind").get<std::string>();
  r.lambda = point_from(j.at("lambda"));
  for (const auto& c : j.at("checks")) r.checks.push_back(check_from(c));
  r.candidates = j.at("candidates").get<std::size_t>();
  r.examined = j.at("examined").get<std::size_t>();
  r.exhaustive = j.at("exhaustive").get<bool>();
  return r;
}

/// Ideal at a point, together with its left limit.
struct MmiReport {
  OrthantPoint lambda;
  Divisor floor;
  AntinefDivisor divisor;
  std::optional<AntinefDivisor> left_limit;  // absent at the origin
  bool jumping_point = false;

  friend bool operator==(const MmiReport&, const MmiReport&) = default;
};

inline MmiReport mmi_report(const LogResolution& res, const OrthantPoint& lambda) {
  MmiReport r{lambda, mixed_divisor_floor(res, lambda), mmi_at(res, lambda), std::nullopt, false};
  if (!lambda.is_zero()) {
    r.left_limit = mmi_left_limit(res, lambda);
    r.jumping_point = !(*r.left_limit == r.divisor);
  }
  return r;
}

inline json to_json(const MmiReport& r) {
  json j = {{"lambda", point_json(r.lambda)}, {"floor", divisor_json(r.floor)},
            {"divisor", divisor_json(r.divisor.divisor())}, {"jumping_point", r.jumping_point}};
  j["left_limit"] = r.left_limit ? divisor_json(r.left_limit->divisor()) : json(nullptr);
  return j;
}

inline MmiReport mmi_report_from(const LogResolution& res, const json& j) {
  MmiReport r{point_from(j.at("lambda")), divisor_from(j.at("floor")),
              AntinefDivisor(res.graph, divisor_from(j.at("divisor"))), std::nullopt,
              j.at("jumping_point").get<bool>()};
  if (!j.at("left_limit").is_null()) r.left_limit = AntinefDivisor(res.graph, divisor_from(j.at("left_limit")));
  return r;
}

}  // namespace mmi::io
