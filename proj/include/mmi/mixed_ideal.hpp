#pragma once

// Mixed multiplier ideals J(a^lambda), represented by the antinef closure
// D_lambda of floor(sum lambda_i F_i - K_pi).

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mmi/divisor.hpp"
#include "mmi/error.hpp"
#include "mmi/rational.hpp"
#include "mmi/resolution.hpp"

namespace mmi {

/// A point of the closed positive orthant.
class OrthantPoint {
 public:
  OrthantPoint() = default;
  explicit OrthantPoint(std::vector<Rational> coords) : z_(std::move(coords)) {
    for (const auto& q : z_)
      if (q < 0) throw Error(ErrorCode::InvalidArgument, "point " + str() + " leaves the positive orthant");
  }
  OrthantPoint(std::initializer_list<Rational> coords) : OrthantPoint(std::vector<Rational>(coords)) {}

  std::size_t size() const { return z_.size(); }
  const Rational& operator[](std::size_t i) const { return z_[i]; }
  const std::vector<Rational>& coords() const { return z_; }
  bool is_zero() const {
    for (const auto& q : z_)
      if (q != 0) return false;
    return true;
  }
  std::string str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < z_.size(); ++i) out += (i ? "," : "") + to_string(z_[i]);
    return out + ")";
  }
  friend bool operator==(const OrthantPoint&, const OrthantPoint&) = default;
  friend bool operator<(const OrthantPoint& a, const OrthantPoint& b) { return a.z_ < b.z_; }

 private:
  std::vector<Rational> z_;
};

inline void check_point(const LogResolution& res, const OrthantPoint& lambda) {
  if (lambda.size() != res.r())
    throw Error(ErrorCode::DimensionMismatch, "point " + lambda.str() + " has " + std::to_string(lambda.size()) +
                                                  " coordinates for " + std::to_string(res.r()) + " ideals");
}

/// lambda . e_{.,j}
inline Rational weighted_multiplicity(const LogResolution& res, const OrthantPoint& lambda, std::size_t j) {
  Rational v = 0;
  for (std::size_t i = 0; i < res.r(); ++i) v += lambda[i] * res.ideals[i][j];
  return v;
}

/// lambda . e_{.,j} - k_j for every component.
inline std::vector<Rational> affine_values(const LogResolution& res, const OrthantPoint& lambda) {
  check_point(res, lambda);
  std::vector<Rational> v(res.t());
  for (std::size_t j = 0; j < res.t(); ++j) v[j] = weighted_multiplicity(res, lambda, j) - res.canonical[j];
  return v;
}

/// floor(sum lambda_i F_i - K_pi), componentwise.
inline Divisor mixed_divisor_floor(const LogResolution& res, const OrthantPoint& lambda) {
  auto v = affine_values(res, lambda);
  for (auto& q : v) q = Rational(floor_of(q));
  return Divisor(std::move(v));
}

inline AntinefDivisor mmi_at(const LogResolution& res, const OrthantPoint& lambda) {
  return antinef_closure(res.graph, mixed_divisor_floor(res, lambda));
}

/// Round-down of q approached from below along the ray through lambda:
/// q - 1 at integers on components the ray actually moves, floor otherwise.
inline Integer left_floor(const Rational& q, bool moving) {
  if (moving && is_integer(q)) return numerator_of(q) - 1;
  return floor_of(q);
}

/// The divisor floor((1 - eps) lambda F - K) for all small eps > 0.
inline Divisor left_limit_floor(const LogResolution& res, const OrthantPoint& lambda) {
  check_point(res, lambda);
  if (lambda.is_zero()) throw Error(ErrorCode::ZeroPoint, "left limit at the origin is undefined");
  std::vector<Rational> v(res.t());
  for (std::size_t j = 0; j < res.t(); ++j) {
    const Rational w = weighted_multiplicity(res, lambda, j);
    v[j] = Rational(left_floor(w - res.canonical[j], w > 0));
  }
  return Divisor(std::move(v));
}

/// D_{(1-eps) lambda}.
inline AntinefDivisor mmi_left_limit(const LogResolution& res, const OrthantPoint& lambda) {
  return antinef_closure(res.graph, left_limit_floor(res, lambda));
}

}  // namespace mmi
