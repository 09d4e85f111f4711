#pragma once

// C-facets of constancy regions and the enumeration of all constancy
// regions meeting a box [0, lambda_max] by wall walking.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mmi/divisor.hpp"
#include "mmi/error.hpp"
#include "mmi/geometry2d.hpp"
#include "mmi/mixed_ideal.hpp"
#include "mmi/rational.hpp"
#include "mmi/region.hpp"
#include "mmi/resolution.hpp"

namespace mmi {

/// Part of the outer boundary of a constancy region on one hyperplane.
/// For r = 1 the facet is a single point and from == to == midpoint.
struct CFacet {
  std::vector<std::size_t> components;  // every component whose hyperplane contains the facet
  std::vector<Rational> from, to, midpoint;
  std::size_t arc = 0;                  // connected piece of the outer boundary it belongs to

  friend bool operator==(const CFacet&, const CFacet&) = default;
};

struct ConstancyRecord {
  std::size_t id = 0;
  std::vector<OrthantPoint> representatives;  // first one is the defining point
  RegionPolytope region;
  std::vector<CFacet> cfacets;
  std::vector<std::size_t> predecessors;      // immediate predecessors in the region order
  bool truncated = false;                     // region reaches outside the box

  const OrthantPoint& representative() const { return representatives.front(); }
  const AntinefDivisor& divisor() const { return region.divisor; }

  friend bool operator==(const ConstancyRecord&, const ConstancyRecord&) = default;
};

struct EnumerationStep {
  OrthantPoint point;
  AntinefDivisor divisor;
  std::size_t record = 0;
  bool new_region = false;
  bool reprioritized = false;  // moved a point of a smaller region to the front
  std::vector<OrthantPoint> added;

  friend bool operator==(const EnumerationStep&, const EnumerationStep&) = default;
};

struct EnumerationOptions {
  std::optional<std::size_t> max_steps;
};

struct EnumerationResult {
  OrthantPoint box;
  std::vector<ConstancyRecord> records;
  std::vector<EnumerationStep> steps;
  std::vector<OrthantPoint> processed;  // the set D, in processing order
  std::vector<OrthantPoint> pending;    // the set N when the run stopped
  bool stopped_early = false;           // max_steps reached with work left
  std::vector<std::string> warnings;

  std::size_t cfacet_count() const {
    std::size_t n = 0;
    for (const auto& r : records) n += r.cfacets.size();
    return n;
  }
  friend bool operator==(const EnumerationResult&, const EnumerationResult&) = default;
};

namespace detail {

inline std::vector<geo::HalfPlane> closed_half_planes(const RegionPolytope& region) {
  std::vector<geo::HalfPlane> hs;
  for (const auto& h : region.inequalities) hs.push_back({h.coeffs[0], h.coeffs[1], h.rhs});
  return hs;
}

inline std::vector<Rational> coords(const geo::Point2& p) { return {p.x, p.y}; }

inline std::vector<CFacet> c_facets_1d(const RegionPolytope& region, const std::vector<const RegionPolytope*>& prior) {
  std::optional<Rational> m;
  for (const auto& h : region.inequalities) {
    const Rational x = h.rhs / h.coeffs[0];
    if (!m || x < *m) m = x;
  }
  for (const auto* p : prior)
    if (p->closure_contains({*m})) return {};
  CFacet f;
  for (const auto& h : region.inequalities)
    if (h.rhs == *m * h.coeffs[0]) f.components.push_back(h.component);
  f.from = f.to = f.midpoint = {*m};
  return {f};
}

}  // namespace detail

/// Outer boundary of R(lambda) with the closures of the prior regions
/// removed, as maximal open segments ordered from the z2-axis to the
/// z1-axis. Works for r = 1 and r = 2.
inline std::vector<CFacet> c_facets(const RegionPolytope& region, const std::vector<const RegionPolytope*>& prior) {
  const std::size_t r = region.lambda.size();
  if (r == 1) return detail::c_facets_1d(region, prior);
  if (r != 2) throw Error(ErrorCode::GeometryUnsupported, "C-facets are computed for one or two ideals only");

  const geo::Polygon poly = region_polygon(region);
  std::vector<std::vector<geo::HalfPlane>> prior_hs;
  for (const auto* p : prior) prior_hs.push_back(detail::closed_half_planes(*p));
  auto in_prior = [&](const geo::Point2& pt) {
    for (const auto& hs : prior_hs) {
      bool inside = true;
      for (const auto& h : hs) inside = inside && h.contains(pt);
      if (inside) return true;
    }
    return false;
  };

  // Counter-clockwise the outer chain runs from the z1-axis to the z2-axis;
  // walk it backwards.
  std::vector<std::pair<geo::Point2, geo::Point2>> edges;
  for (std::size_t i = poly.size() - 1; i >= 2; --i) edges.emplace_back(poly[i], poly[i - 1]);

  std::vector<CFacet> out;
  std::optional<geo::Point2> last_end;
  std::size_t arc = 0;
  for (const auto& [p, q] : edges) {
    CFacet proto;
    for (const auto& h : region.inequalities) {
      const geo::HalfPlane hp{h.coeffs[0], h.coeffs[1], h.rhs};
      if (hp.tight(p) && hp.tight(q)) proto.components.push_back(h.component);
    }
    if (proto.components.empty())
      throw Error(ErrorCode::GeometryDegeneracy, "outer edge of region " + region.lambda.str() + " has no supporting hyperplane");
    std::vector<std::pair<Rational, Rational>> removed;
    for (const auto& hs : prior_hs)
      if (auto iv = geo::segment_interval(p, q, hs)) removed.push_back(*iv);
    for (const auto& [t0, t1] : geo::subtract_closed(0, 1, removed)) {
      const geo::Point2 a = geo::lerp(p, q, t0), b = geo::lerp(p, q, t1);
      if (!out.empty() && !(last_end && *last_end == a && !in_prior(a))) ++arc;
      CFacet f = proto;
      f.from = detail::coords(a);
      f.to = detail::coords(b);
      f.midpoint = detail::coords(geo::midpoint(a, b));
      f.arc = arc;
      out.push_back(std::move(f));
      last_end = b;
    }
  }
  return out;
}

inline std::vector<CFacet> c_facets(const ConstancyRecord& record, const std::vector<ConstancyRecord>& prior) {
  std::vector<const RegionPolytope*> ptrs;
  for (const auto& p : prior) ptrs.push_back(&p.region);
  return c_facets(record.region, ptrs);
}

namespace detail {

/// Whether the closure of the region reaches past the box.
inline bool exceeds_box(const RegionPolytope& region, const OrthantPoint& box) {
  if (box.size() == 1) {
    for (const auto& h : region.inequalities)
      if (h.rhs / h.coeffs[0] <= box[0]) return false;
    return true;
  }
  for (const auto& v : region_polygon(region))
    if (v.x > box[0] || v.y > box[1]) return true;
  return false;
}

}  // namespace detail

/// Wall walking over all constancy regions meeting [0, lambda_max].
///
/// N starts as {0}. Each step takes the first point of N inside
/// R(lambda_max), first moving to the front any point of N lying in a
/// strictly smaller region; a point whose ideal is already known is only
/// recorded; otherwise the C-facet midpoints of its constancy region are
/// appended to N. Either way the point joins D. The run ends
/// when no point of N lies in R(lambda_max), or after max_steps steps.
inline EnumerationResult enumerate_constancy_regions(const LogResolution& res, const OrthantPoint& box,
                                                     const EnumerationOptions& options = {}) {
  check_point(res, box);
  if (res.r() > 2)
    throw Error(ErrorCode::GeometryUnsupported, "enumeration of constancy regions needs one or two ideals, got " +
                                                    std::to_string(res.r()));
  for (const auto& q : box.coords())
    if (q <= 0) throw Error(ErrorCode::InvalidArgument, "box corner " + box.str() + " must be positive");

  EnumerationResult result;
  result.box = box;
  const RegionPolytope box_region = region_of(res, box);

  struct Pending {
    OrthantPoint point;
    AntinefDivisor divisor;
  };
  std::deque<Pending> queue;
  OrthantPoint origin(std::vector<Rational>(res.r()));
  queue.push_back({origin, mmi_at(res, origin)});

  if (region_of(res, origin).contains(box))
    result.warnings.push_back("BoxTooSmall: the box " + box.str() + " lies inside the log-canonical region");

  while (true) {
    auto head = std::find_if(queue.begin(), queue.end(),
                             [&](const Pending& p) { return box_region.contains(p.point); });
    if (head == queue.end()) break;
    if (options.max_steps && result.steps.size() >= *options.max_steps) {
      result.stopped_early = true;
      break;
    }

    EnumerationStep step;
    // Bring a minimal element to the front.
    while (true) {
      const RegionPolytope head_region = region_from_divisor(res, head->point, head->divisor);
      auto smaller = std::find_if(queue.begin(), queue.end(), [&](const Pending& p) {
        return &p != &*head && head_region.contains(p.point) && !(p.divisor == head->divisor);
      });
      if (smaller == queue.end()) break;
      Pending moved = *smaller;
      queue.erase(smaller);
      queue.push_front(std::move(moved));
      head = queue.begin();
      step.reprioritized = true;
    }

    Pending current = *head;
    queue.erase(head);
    step.point = current.point;
    step.divisor = current.divisor;

    auto known = std::find_if(result.records.begin(), result.records.end(),
                              [&](const ConstancyRecord& r) { return r.divisor() == current.divisor; });
    if (known != result.records.end()) {
      known->representatives.push_back(current.point);
      step.record = known->id;
    } else {
      ConstancyRecord record;
      record.id = result.records.size();
      record.representatives.push_back(current.point);
      record.region = region_from_divisor(res, current.point, current.divisor);
      record.cfacets = c_facets(record, result.records);
      record.truncated = detail::exceeds_box(record.region, box);
      for (const auto& f : record.cfacets) {
        const OrthantPoint mid(f.midpoint);
        const AntinefDivisor left = mmi_left_limit(res, mid);
        if (!(left == record.divisor()))
          throw Error(ErrorCode::InvariantBreach, "left limit at C-facet midpoint " + mid.str() + " is " + left.str() +
                                                      ", expected " + record.divisor().str());
        queue.push_back({mid, mmi_at(res, mid)});
        step.added.push_back(mid);
      }
      step.record = record.id;
      step.new_region = true;
      result.records.push_back(std::move(record));
    }
    result.processed.push_back(current.point);
    result.steps.push_back(std::move(step));
  }

  for (const auto& p : queue) result.pending.push_back(p.point);

  // Hasse diagram of the region order, R(a) < R(b) iff D_a < D_b.
  auto below = [&](const ConstancyRecord& a, const ConstancyRecord& b) {
    return !(a.divisor() == b.divisor()) && leq(a.divisor().divisor(), b.divisor().divisor());
  };
  for (auto& rec : result.records)
    for (const auto& cand : result.records) {
      if (!below(cand, rec)) continue;
      bool immediate = true;
      for (const auto& mid : result.records)
        if (below(cand, mid) && below(mid, rec)) immediate = false;
      if (immediate) rec.predecessors.push_back(cand.id);
    }
  return result;
}

}  // namespace mmi
