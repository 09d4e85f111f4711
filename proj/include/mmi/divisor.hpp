#pragma once

// Divisors on the resolution, antinef closures (unloading) and the Lipman
// comparison of complete ideals.

#include <cstddef>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mmi/dual_graph.hpp"
#include "mmi/error.hpp"
#include "mmi/rational.hpp"

namespace mmi {

/// Rational coefficient vector over all t components of a dual graph.
class Divisor {
 public:
  Divisor() = default;
  explicit Divisor(std::vector<Rational> coefficients) : c_(std::move(coefficients)) {}
  Divisor(std::initializer_list<long> values) {
    for (long v : values) c_.emplace_back(v);
  }

  static Divisor zero(std::size_t t) { return Divisor(std::vector<Rational>(t)); }

  /// The reduced divisor supported on the given components.
  static Divisor reduced(std::size_t t, std::span<const std::size_t> support) {
    Divisor d = zero(t);
    for (std::size_t j : support) d.c_.at(j) = 1;
    return d;
  }

  std::size_t size() const { return c_.size(); }
  const Rational& operator[](std::size_t j) const { return c_[j]; }
  Rational& operator[](std::size_t j) { return c_[j]; }
  const std::vector<Rational>& coefficients() const { return c_; }
  std::span<const Rational> span() const { return c_; }

  bool is_integral() const {
    for (const auto& q : c_)
      if (!is_integer(q)) return false;
    return true;
  }
  bool is_zero() const {
    for (const auto& q : c_)
      if (q != 0) return false;
    return true;
  }

  Divisor ceil() const {
    Divisor d = *this;
    for (auto& q : d.c_) q = Rational(ceil_of(q));
    return d;
  }
  Divisor floor() const {
    Divisor d = *this;
    for (auto& q : d.c_) q = Rational(floor_of(q));
    return d;
  }

  Divisor& operator+=(const Divisor& o) {
    check_same_size(o);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
    return *this;
  }
  Divisor& operator-=(const Divisor& o) {
    check_same_size(o);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
    return *this;
  }
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator*(const Rational& s, Divisor d) {
    for (auto& q : d.c_) q *= s;
    return d;
  }
  friend bool operator==(const Divisor&, const Divisor&) = default;

  std::string str() const {
    std::string out = "(";
    for (std::size_t j = 0; j < c_.size(); ++j) out += (j ? "," : "") + to_string(c_[j]);
    return out + ")";
  }

 private:
  void check_same_size(const Divisor& o) const {
    if (o.size() != size())
      throw Error(ErrorCode::DimensionMismatch, "divisor sizes " + std::to_string(size()) + " and " +
                                                    std::to_string(o.size()) + " differ");
  }

  std::vector<Rational> c_;
};

/// Componentwise a <= b.
inline bool leq(const Divisor& a, const Divisor& b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::GraphMismatch, "divisors live on graphs of different size");
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] > b[j]) return false;
  return true;
}

inline void check_dimension(const DualGraph& g, const Divisor& d) {
  if (d.size() != g.component_count())
    throw Error(ErrorCode::DimensionMismatch, "divisor has " + std::to_string(d.size()) +
                                                  " coefficients, graph has " +
                                                  std::to_string(g.component_count()) + " components");
}

/// D . E_i for exceptional E_i.
inline Rational intersection(const DualGraph& g, const Divisor& d, std::size_t i) {
  return g.intersect<Rational>(d.span(), i);
}

/// Excess -D . E_i at every exceptional component.
inline std::vector<Rational> excess_vector(const DualGraph& g, const Divisor& d) {
  check_dimension(g, d);
  std::vector<Rational> rho(g.exceptional_count());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = -intersection(g, d, i);
  return rho;
}

inline bool is_antinef(const DualGraph& g, const Divisor& d) {
  check_dimension(g, d);
  if (!d.is_integral()) throw Error(ErrorCode::NonIntegralDivisor, "is_antinef needs an integral divisor, got " + d.str());
  for (const auto& r : excess_vector(g, d))
    if (r < 0) return false;
  for (std::size_t i = 0; i < g.exceptional_count(); ++i)
    if (d[i] < 0) return false;
  return true;
}

/// Integral divisor, effective on the exceptional part, with -D.E_i >= 0.
class AntinefDivisor {
 public:
  AntinefDivisor() = default;

  /// Validating constructor.
  AntinefDivisor(const DualGraph& g, Divisor d) : d_(std::move(d)) {
    if (!is_antinef(g, d_)) throw Error(ErrorCode::NotAntinef, d_.str() + " is not antinef");
  }

  const Divisor& divisor() const { return d_; }
  std::size_t size() const { return d_.size(); }
  const Rational& operator[](std::size_t j) const { return d_[j]; }
  std::string str() const { return d_.str(); }

  friend bool operator==(const AntinefDivisor&, const AntinefDivisor&) = default;

 private:
  struct Trusted {};
  AntinefDivisor(Trusted, Divisor d) : d_(std::move(d)) {}
  friend struct ClosureAccess;

  Divisor d_;
};

struct ClosureAccess {
  static AntinefDivisor make(Divisor d) { return AntinefDivisor(AntinefDivisor::Trusted{}, std::move(d)); }
};

inline constexpr long long default_unload_cap = 1'000'000;

/// Iteration cap for unloading; MMI_MAX_UNLOAD_ITERS overrides the default.
inline long long unload_iteration_cap() {
  if (const char* env = std::getenv("MMI_MAX_UNLOAD_ITERS")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return default_unload_cap;
}

namespace detail {

/// One sweep of the unloading procedure on an integral divisor. Returns
/// false when no exceptional component has negative excess.
inline bool unload_sweep(const DualGraph& g, Divisor& d) {
  const auto rho = excess_vector(g, d);
  std::vector<std::pair<std::size_t, Integer>> raise;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho[i] >= 0) continue;
    const Integer self = g.self_intersection(i);
    raise.emplace_back(i, ceil_of(rho[i] / Rational(self)));
  }
  for (auto& [i, n] : raise) d[i] += Rational(n);
  return !raise.empty();
}

}  // namespace detail

/// ceil(D) plus n_i E_i on every exceptional E_i of negative excess, with
/// n_i = ceil(rho_i / E_i^2). Returns ceil(D) when D is already antinef.
inline Divisor unload_once(const DualGraph& g, const Divisor& d) {
  check_dimension(g, d);
  Divisor out = d.ceil();
  detail::unload_sweep(g, out);
  return out;
}

struct ClosureTrace {
  AntinefDivisor result;
  std::vector<Divisor> steps;  // starting divisor, then one entry per sweep
};

/// Minimal integral antinef divisor dominating D. The exceptional part is
/// first raised to max(ceil D, 0), which every antinef divisor >= D
/// dominates; unloading from a lower bound never overshoots the minimum.
inline ClosureTrace antinef_closure_trace(const DualGraph& g, const Divisor& d) {
  check_dimension(g, d);
  Divisor x = d.ceil();
  for (std::size_t i = 0; i < g.exceptional_count(); ++i)
    if (x[i] < 0) x[i] = 0;
  ClosureTrace trace;
  trace.steps.push_back(x);
  const long long cap = unload_iteration_cap();
  for (long long it = 0;; ++it) {
    if (it >= cap)
      throw Error(ErrorCode::NonTermination, "unloading of " + d.str() + " did not stabilise after " +
                                                 std::to_string(cap) + " sweeps");
    if (!detail::unload_sweep(g, x)) break;
    trace.steps.push_back(x);
  }
  trace.result = ClosureAccess::make(std::move(x));
  return trace;
}

inline AntinefDivisor antinef_closure(const DualGraph& g, const Divisor& d) {
  return antinef_closure_trace(g, d).result;
}

enum class Containment { Equal, StrictlyContains, StrictlyContained, Incomparable };

inline const char* containment_name(Containment c) {
  switch (c) {
    case Containment::Equal: return "Equal";
    case Containment::StrictlyContains: return "StrictlyContains";
    case Containment::StrictlyContained: return "StrictlyContained";
    case Containment::Incomparable: return "Incomparable";
  }
  return "?";
}

/// Relation between the complete ideals of D1 and D2: the ideal of D1
/// contains that of D2 iff D1 <= D2.
inline Containment ideal_contains(const AntinefDivisor& d1, const AntinefDivisor& d2) {
  if (d1.size() != d2.size())
    throw Error(ErrorCode::GraphMismatch, "antinef divisors over different graphs");
  if (d1 == d2) return Containment::Equal;
  if (leq(d1.divisor(), d2.divisor())) return Containment::StrictlyContains;
  if (leq(d2.divisor(), d1.divisor())) return Containment::StrictlyContained;
  return Containment::Incomparable;
}

struct ComparisonResult {
  bool equal = false;
  AntinefDivisor closure;                // closure of D1
  std::optional<std::size_t> witness;    // component with v_i(closure D1) < v_i(D2)
};

/// For D1 <= D2 decides whether both define the same ideal, i.e. whether
/// the antinef closure of D1 dominates D2.
inline ComparisonResult compare_nonclosed(const DualGraph& g, const Divisor& d1, const Divisor& d2) {
  check_dimension(g, d1);
  check_dimension(g, d2);
  if (!leq(d1, d2))
    throw Error(ErrorCode::PreconditionViolated, "compare_nonclosed needs D1 <= D2, got " + d1.str() +
                                                     " and " + d2.str());
  ComparisonResult r;
  r.closure = antinef_closure(g, d1);
  r.equal = true;
  for (std::size_t j = 0; j < d2.size(); ++j)
    if (r.closure[j] < d2[j]) {
      r.equal = false;
      r.witness = j;
      break;
    }
  return r;
}

}  // namespace mmi
