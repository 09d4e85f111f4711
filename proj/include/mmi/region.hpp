#pragma once

// Regions R(lambda) = { z : J(a^z) contains J(a^lambda) } as strict
// half-space systems, single-ideal jumping numbers and ray restrictions.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mmi/divisor.hpp"
#include "mmi/error.hpp"
#include "mmi/geometry2d.hpp"
#include "mmi/mixed_ideal.hpp"
#include "mmi/rational.hpp"
#include "mmi/resolution.hpp"

namespace mmi {

/// coeffs . z < rhs, the hyperplane of one component.
struct Inequality {
  std::size_t component = 0;
  std::vector<Rational> coeffs;
  Rational rhs;

  Rational eval(const std::vector<Rational>& z) const {
    Rational v = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * z[i];
    return v;
  }
  friend bool operator==(const Inequality&, const Inequality&) = default;
};

struct RegionPolytope {
  OrthantPoint lambda;
  AntinefDivisor divisor;
  std::vector<Inequality> inequalities;

  /// Strict membership; z is assumed to lie in the orthant.
  bool contains(const OrthantPoint& z) const {
    for (const auto& h : inequalities)
      if (h.eval(z.coords()) >= h.rhs) return false;
    return true;
  }
  bool closure_contains(const std::vector<Rational>& z) const {
    for (const auto& h : inequalities)
      if (h.eval(z) > h.rhs) return false;
    return true;
  }
  friend bool operator==(const RegionPolytope&, const RegionPolytope&) = default;
};

/// Half-space system of R(lambda) from its antinef divisor D_lambda.
inline RegionPolytope region_from_divisor(const LogResolution& res, const OrthantPoint& lambda,
                                          AntinefDivisor d) {
  RegionPolytope poly{lambda, std::move(d), {}};
  std::vector<bool> bounded(res.r(), false);
  for (std::size_t j : res.region_components()) {
    Inequality h{j, res.ideals.column(j), res.canonical[j] + 1 + poly.divisor[j]};
    bool nonzero = false;
    for (std::size_t i = 0; i < res.r(); ++i)
      if (h.coeffs[i] > 0) nonzero = bounded[i] = true;
    if (!nonzero) throw Error(ErrorCode::InvariantBreach, "wall-relevant component " + res.graph.id(j) + " has no multiplicity");
    if (h.rhs <= 0) throw Error(ErrorCode::InvariantBreach, "non-positive region constant at " + res.graph.id(j));
    poly.inequalities.push_back(std::move(h));
  }
  for (std::size_t i = 0; i < res.r(); ++i)
    if (!bounded[i])
      throw Error(ErrorCode::UnboundedRegion, "no region inequality bounds the coordinate of ideal " +
                                                  res.ideals.name(i) + " (non-m-primary input without affine walls?)");
  return poly;
}

inline RegionPolytope region_of(const LogResolution& res, const OrthantPoint& lambda) {
  return region_from_divisor(res, lambda, mmi_at(res, lambda));
}

/// Membership through the comparison criterion on all components:
/// lambda' lies in R(lambda) iff floor(lambda' e_j - k_j) <= e_j^lambda for
/// every j. Independent of the rupture / dicritical reduction.
inline bool membership(const LogResolution& res, const OrthantPoint& lambda_prime, const AntinefDivisor& d_lambda) {
  const Divisor floor = mixed_divisor_floor(res, lambda_prime);
  for (std::size_t j = 0; j < res.t(); ++j)
    if (floor[j] > d_lambda[j]) return false;
  return true;
}

inline bool membership(const LogResolution& res, const OrthantPoint& lambda_prime, const OrthantPoint& lambda) {
  return membership(res, lambda_prime, mmi_at(res, lambda));
}

/// Smallest jumping number of the single ideal with divisor F that is
/// strictly larger than lambda_prime.
inline Rational next_jumping_number(const LogResolution& res, const Divisor& f, const Rational& lambda_prime) {
  check_dimension(res.graph, f);
  if (f.is_zero()) throw Error(ErrorCode::ZeroDivisor, "next_jumping_number of the zero divisor");
  if (lambda_prime < 0) throw Error(ErrorCode::InvalidArgument, "negative parameter " + to_string(lambda_prime));
  const Divisor floor = (lambda_prime * f - res.canonical.k).floor();
  const AntinefDivisor d = antinef_closure(res.graph, floor);
  std::optional<Rational> best;
  for (std::size_t j = 0; j < res.t(); ++j) {
    if (f[j] <= 0) continue;
    const Rational candidate = (res.canonical[j] + 1 + d[j]) / f[j];
    if (!best || candidate < *best) best = candidate;
  }
  return *best;
}

/// Jumping numbers of F in (0, upto].
inline std::vector<Rational> jumping_number_chain(const LogResolution& res, const Divisor& f, const Rational& upto) {
  std::vector<Rational> out;
  Rational t = 0;
  while (true) {
    t = next_jumping_number(res, f, t);
    if (t > upto) break;
    out.push_back(t);
  }
  return out;
}

/// Parameters t in (0, t_max] where J(a^{t u}) jumps, via the single ideal
/// a_1^{u_1} ... a_r^{u_r}.
inline std::vector<Rational> wall_ray_restriction(const LogResolution& res, const std::vector<Rational>& u,
                                                  const Rational& t_max) {
  if (u.size() != res.r())
    throw Error(ErrorCode::DimensionMismatch, "direction has " + std::to_string(u.size()) + " entries for " +
                                                  std::to_string(res.r()) + " ideals");
  bool positive = false;
  for (const auto& x : u) {
    if (x < 0 || !is_integer(x)) throw Error(ErrorCode::InvalidArgument, "direction entries must be non-negative integers");
    positive |= x > 0;
  }
  if (!positive) throw Error(ErrorCode::InvalidArgument, "direction must have a positive entry");
  Divisor f = Divisor::zero(res.t());
  for (std::size_t i = 0; i < res.r(); ++i) f += u[i] * res.ideals[i];
  return jumping_number_chain(res, f, t_max);
}

/// Closure of a region for r = 2 as a convex polygon with the origin as
/// first vertex, counter-clockwise.
inline geo::Polygon region_polygon(const RegionPolytope& region) {
  if (region.lambda.size() != 2)
    throw Error(ErrorCode::GeometryUnsupported, "polygon geometry needs exactly two ideals");
  // A box strictly larger than the region in both directions.
  std::optional<Rational> b1, b2;
  for (const auto& h : region.inequalities) {
    if (h.coeffs[0] > 0) {
      const Rational x = h.rhs / h.coeffs[0];
      if (!b1 || x < *b1) b1 = x;
    }
    if (h.coeffs[1] > 0) {
      const Rational y = h.rhs / h.coeffs[1];
      if (!b2 || y < *b2) b2 = y;
    }
  }
  if (!b1 || !b2) throw Error(ErrorCode::UnboundedRegion, "region of " + region.lambda.str() + " is unbounded");
  geo::Polygon poly = geo::rectangle(*b1 + 1, *b2 + 1);
  for (const auto& h : region.inequalities) poly = geo::clip(poly, {h.coeffs[0], h.coeffs[1], h.rhs});
  poly = geo::simplify(std::move(poly));
  auto origin = std::find(poly.begin(), poly.end(), geo::Point2{0, 0});
  if (poly.size() < 3 || origin == poly.end())
    throw Error(ErrorCode::GeometryDegeneracy, "region of " + region.lambda.str() + " has a degenerate closure");
  std::rotate(poly.begin(), origin, poly.end());
  return poly;
}

}  // namespace mmi
