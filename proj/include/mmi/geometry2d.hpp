#pragma once

// Exact planar geometry on rational coordinates: convex clipping by closed
// half-planes and interval bookkeeping along segments.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mmi/rational.hpp"

namespace mmi::geo {

struct Point2 {
  Rational x, y;
  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Closed half-plane a x + b y <= c.
struct HalfPlane {
  Rational a, b, c;
  Rational eval(const Point2& p) const { return a * p.x + b * p.y; }
  bool contains(const Point2& p) const { return eval(p) <= c; }
  bool tight(const Point2& p) const { return eval(p) == c; }
};

using Polygon = std::vector<Point2>;  // counter-clockwise, no repeated vertices

inline Point2 lerp(const Point2& p, const Point2& q, const Rational& t) {
  return {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
}

inline Point2 midpoint(const Point2& p, const Point2& q) {
  return {(p.x + q.x) / 2, (p.y + q.y) / 2};
}

inline Rational cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline Polygon rectangle(const Rational& w, const Rational& h) {
  return {{0, 0}, {w, 0}, {w, h}, {0, h}};
}

/// Drops repeated and collinear vertices.
inline Polygon simplify(Polygon poly) {
  bool changed = true;
  while (changed && poly.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const auto& prev = poly[(i + poly.size() - 1) % poly.size()];
      const auto& next = poly[(i + 1) % poly.size()];
      if (poly[i] == prev || cross(prev, poly[i], next) == 0) {
        poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (poly.size() == 2 && poly[0] == poly[1]) poly.pop_back();
  return poly;
}

/// Sutherland-Hodgman step against one closed half-plane.
inline Polygon clip(const Polygon& poly, const HalfPlane& h) {
  Polygon out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % n];
    const Rational fp = h.eval(p) - h.c;
    const Rational fq = h.eval(q) - h.c;
    if (fp <= 0) out.push_back(p);
    if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) out.push_back(lerp(p, q, fp / (fp - fq)));
  }
  Polygon dedup;
  for (const auto& p : out)
    if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(p);
  while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
  return dedup;
}

/// Parameters t in [0, 1] with p + t (q - p) inside every half-plane, as a
/// closed interval, or nullopt when empty.
inline std::optional<std::pair<Rational, Rational>> segment_interval(const Point2& p, const Point2& q,
                                                                    const std::vector<HalfPlane>& hs) {
  Rational lo = 0, hi = 1;
  for (const auto& h : hs) {
    // f(t) = f0 + t * df <= c
    const Rational f0 = h.eval(p) - h.c;
    const Rational df = h.eval(q) - h.eval(p);
    if (df == 0) {
      if (f0 > 0) return std::nullopt;
      continue;
    }
    const Rational t = -f0 / df;
    if (df > 0) hi = std::min(hi, t);
    else lo = std::max(lo, t);
    if (lo > hi) return std::nullopt;
  }
  return std::make_pair(lo, hi);
}

/// The open sub-intervals of (lo, hi) of positive length left after removing
/// the given closed intervals.
inline std::vector<std::pair<Rational, Rational>> subtract_closed(
    const Rational& lo, const Rational& hi, std::vector<std::pair<Rational, Rational>> removed) {
  std::sort(removed.begin(), removed.end());
  std::vector<std::pair<Rational, Rational>> out;
  Rational cursor = lo;
  for (const auto& [a, b] : removed) {
    if (b < cursor) continue;
    if (a > cursor) out.emplace_back(cursor, std::min(a, hi));
    cursor = std::max(cursor, b);
    if (cursor >= hi) break;
  }
  if (cursor < hi) out.emplace_back(cursor, hi);
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& iv) { return iv.first >= iv.second; }),
            out.end());
  return out;
}

}  // namespace mmi::geo
