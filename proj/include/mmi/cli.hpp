#pragma once

// Command dispatch behind the `mmi` executable. Kept in the library so the
// commands can be driven from tests without a process boundary.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mmi/enumeration.hpp"
#include "mmi/error.hpp"
#include "mmi/json_io.hpp"
#include "mmi/jumping_divisor.hpp"
#include "mmi/mixed_ideal.hpp"
#include "mmi/rational.hpp"
#include "mmi/region.hpp"
#include "mmi/resolution.hpp"
#include "mmi/svg.hpp"

namespace mmi::cli {

enum ExitCode : int { Ok = 0, ValidationFailure = 2, GeometryUnsupported = 3, InternalBreach = 4 };

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"canonical",       "mmi",      "region",
                                              "walls",           "enumerate", "jumping-numbers",
                                              "min-jumping-divisor", "verify"};
  return names;
}

struct RunConfig {
  std::string input;
  std::string command;
  std::optional<std::string> box;
  std::optional<std::string> lambda;
  std::optional<std::string> direction;
  std::optional<std::string> upto;
  std::optional<std::string> ideal;
  std::string format = "json";
  std::optional<std::string> output;
  std::optional<std::size_t> max_steps;
  bool affine_walls = false;
};

inline int exit_code_for(ErrorCode code) {
  if (is_internal(code)) return InternalBreach;
  if (code == ErrorCode::GeometryUnsupported) return GeometryUnsupported;
  return ValidationFailure;
}

namespace detail {

using io::json;

inline bool flat_array(const json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (e.is_structured()) return false;
  return true;
}

inline std::string dump(const json& j) { return (flat_array(j) ? j.dump() : j.dump(2)) + "\n"; }

template <typename T>
const T& require(const std::optional<T>& v, const std::string& flag, const std::string& command) {
  if (!v) throw Error(ErrorCode::InvalidArgument, "command '" + command + "' needs " + flag);
  return *v;
}

inline OrthantPoint parse_point(const std::string& text) { return OrthantPoint(parse_rational_list(text)); }

struct Output {
  std::string body;
  bool passed = true;  // verify only
};

inline std::string text_divisor(const Divisor& d) { return d.str(); }

inline Output run_canonical(const LogResolution& res, const RunConfig& c) {
  if (c.format == "text") return {"K = " + text_divisor(res.canonical.k) + "\n"};
  return {dump(io::divisor_json(res.canonical.k))};
}

inline Output run_mmi(const LogResolution& res, const RunConfig& c) {
  const auto rep = io::mmi_report(res, parse_point(require(c.lambda, "--lambda", c.command)));
  if (c.format == "json") return {dump(io::to_json(rep))};
  std::ostringstream out;
  out << "lambda " << rep.lambda.str() << "\nfloor " << rep.floor.str() << "\nD " << rep.divisor.str() << "\n";
  if (rep.left_limit) out << "left limit " << rep.left_limit->str() << "\n";
  out << "jumping point: " << (rep.jumping_point ? "yes" : "no") << "\n";
  return {out.str()};
}

inline std::string text_inequality(const LogResolution& res, const Inequality& h) {
  return res.graph.id(h.component) + ": " + svg::hyperplane_label(h.coeffs, h.rhs, " < ");
}

inline Output run_region(const LogResolution& res, const RunConfig& c) {
  const auto region = region_of(res, parse_point(require(c.lambda, "--lambda", c.command)));
  if (c.format == "json") return {dump(io::to_json(res, region))};
  std::ostringstream out;
  out << "D " << region.divisor.str() << "\n";
  for (const auto& h : region.inequalities) out << text_inequality(res, h) << "\n";
  return {out.str()};
}

inline EnumerationResult run_enumeration(const LogResolution& res, const RunConfig& c) {
  EnumerationOptions opts;
  opts.max_steps = c.max_steps;
  return enumerate_constancy_regions(res, parse_point(require(c.box, "--box", c.command)), opts);
}

inline Output run_enumerate(const LogResolution& res, const RunConfig& c) {
  const auto e = run_enumeration(res, c);
  if (c.format == "svg") return {svg::render_walls(res, e)};
  if (c.format == "json") return {dump(io::to_json(res, e))};
  std::ostringstream out;
  for (std::size_t k = 0; k < e.steps.size(); ++k) {
    const auto& s = e.steps[k];
    out << "step " << k << ": " << s.point.str() << " D " << s.divisor.str() << " region " << s.record
        << (s.new_region ? " new" : " known") << (s.reprioritized ? " (reprioritized)" : "") << "\n";
  }
  out << e.records.size() << " regions, " << e.processed.size() << " representatives, " << e.cfacet_count()
      << " C-facets, " << e.pending.size() << " pending" << (e.stopped_early ? " (stopped at step limit)" : "") << "\n";
  for (const auto& w : e.warnings) out << "warning: " << w << "\n";
  return {out.str()};
}

inline Output run_walls(const LogResolution& res, const RunConfig& c) {
  if (res.r() != 2) throw Error(ErrorCode::GeometryUnsupported, "wall diagrams need exactly two ideals");
  const auto e = run_enumeration(res, c);
  if (c.format == "svg") return {svg::render_walls(res, e)};
  json walls = json::array();
  std::ostringstream text;
  for (const auto& rec : e.records)
    for (const auto& f : rec.cfacets) {
      const std::size_t j = f.components.front();
      const Rational rhs = res.canonical[j] + 1 + rec.divisor()[j];
      const std::string label = svg::hyperplane_label(res.ideals.column(j), rhs);
      walls.push_back({{"record", rec.id}, {"components", io::ids_json(res, f.components)}, {"from", io::point_json(f.from)},
                       {"to", io::point_json(f.to)}, {"label", label}});
      text << res.graph.id(j) << ": " << label << " from " << OrthantPoint(f.from).str() << " to "
           << OrthantPoint(f.to).str() << "\n";
    }
  if (c.format == "json") return {dump(walls)};
  return {text.str()};
}

inline Output run_jumping_numbers(const LogResolution& res, const RunConfig& c) {
  const Rational upto = parse_rational(require(c.upto, "--upto", c.command));
  std::vector<Rational> values;
  if (c.direction) {
    values = wall_ray_restriction(res, parse_rational_list(*c.direction), upto);
  } else {
    std::size_t i = 0;
    if (c.ideal) {
      auto idx = res.ideals.index_of(*c.ideal);
      if (!idx) throw Error(ErrorCode::InvalidArgument, "unknown ideal '" + *c.ideal + "'");
      i = *idx;
    } else if (res.r() != 1) {
      throw Error(ErrorCode::InvalidArgument, "jumping-numbers needs --ideal or --direction");
    }
    values = jumping_number_chain(res, res.ideals[i], upto);
  }
  if (c.format == "json") return {dump(io::rationals_json(values))};
  std::string out;
  for (const auto& v : values) out += (out.empty() ? "" : " ") + to_string(v);
  return {out + "\n"};
}

inline Output run_min_jumping_divisor(const LogResolution& res, const RunConfig& c) {
  const auto m = minimal_jumping_divisor(res, parse_point(require(c.lambda, "--lambda", c.command)));
  if (c.format == "json") return {dump(io::to_json(res, m))};
  std::string ids;
  for (std::size_t j : m.support) ids += (ids.empty() ? "" : " + ") + res.graph.id(j);
  return {"G = " + ids + "\n"};
}

inline Output run_verify(const LogResolution& res, const RunConfig& c) {
  std::vector<VerificationReport> reports;
  auto at_point = [&](const OrthantPoint& p) {
    reports.push_back(verify_jump_identity(res, p));
    reports.push_back(verify_numeric_conditions(res, p));
    reports.push_back(verify_contribution_dichotomy(res, p));
  };
  if (c.lambda) {
    at_point(parse_point(*c.lambda));
  } else {
    const auto e = run_enumeration(res, c);
    for (const auto& rec : e.records)
      for (const auto& f : rec.cfacets) {
        at_point(OrthantPoint(f.midpoint));
        reports.push_back(verify_facet(res, rec, f));
      }
  }
  bool passed = true;
  json arr = json::array();
  std::ostringstream text;
  for (const auto& r : reports) {
    passed = passed && r.passed();
    arr.push_back(io::to_json(r));
    for (const auto& ch : r.checks)
      text << (ch.passed ? "PASS " : "FAIL ") << r.kind << " " << r.lambda.str() << ": " << ch.name
           << (ch.detail.empty() ? "" : " [" + ch.detail + "]") << "\n";
  }
  if (c.format == "json") return {dump(json{{"passed", passed}, {"reports", arr}}), passed};
  return {text.str() + (passed ? "all checks passed\n" : "some checks FAILED\n"), passed};
}

}  // namespace detail

/// Runs one command. Returns the process exit status; the report goes to
/// `out` (or to the --output file) and diagnostics to `err`.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.format != "json" && config.format != "svg" && config.format != "text")
      throw Error(ErrorCode::InvalidArgument, "unknown format '" + config.format + "'");
    if (config.format == "svg" && config.command != "walls" && config.command != "enumerate")
      throw Error(ErrorCode::InvalidArgument, "svg output is available for walls and enumerate only");
    LogResolution res = io::load_resolution_file(config.input, config.affine_walls);
    if (!res.m_primary)
      err << "note: the ideals are not m-primary; regions use exceptional rupture/dicritical walls"
          << (config.affine_walls ? " plus affine walls" : " only") << "\n";

    detail::Output result;
    const std::string& cmd = config.command;
    if (cmd == "canonical") result = detail::run_canonical(res, config);
    else if (cmd == "mmi") result = detail::run_mmi(res, config);
    else if (cmd == "region") result = detail::run_region(res, config);
    else if (cmd == "walls") result = detail::run_walls(res, config);
    else if (cmd == "enumerate") result = detail::run_enumerate(res, config);
    else if (cmd == "jumping-numbers") result = detail::run_jumping_numbers(res, config);
    else if (cmd == "min-jumping-divisor") result = detail::run_min_jumping_divisor(res, config);
    else if (cmd == "verify") result = detail::run_verify(res, config);
    else throw Error(ErrorCode::InvalidArgument, "unknown command '" + cmd + "'");

    if (config.output) {
      std::ofstream file(*config.output, std::ios::binary);
      if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + *config.output + "'");
      file << result.body;
    } else {
      out << result.body;
    }
    if (!result.passed) {
      err << "verification failed\n";
      return InternalBreach;
    }
    return Ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace mmi::cli
