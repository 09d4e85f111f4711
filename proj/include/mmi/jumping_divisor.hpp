#pragma once

// Jumping points, minimal jumping divisors G_lambda, contribution of reduced
// divisors and checks of the structural results about them.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mmi/divisor.hpp"
#include "mmi/enumeration.hpp"
#include "mmi/error.hpp"
#include "mmi/mixed_ideal.hpp"
#include "mmi/rational.hpp"
#include "mmi/region.hpp"
#include "mmi/resolution.hpp"

namespace mmi {

inline bool is_jumping_point(const LogResolution& res, const OrthantPoint& lambda) {
  return !(mmi_left_limit(res, lambda) == mmi_at(res, lambda));
}

struct MinimalJumpingDivisor {
  OrthantPoint lambda;
  Divisor g;                          // reduced
  std::vector<std::size_t> support;
  std::vector<long> valence;          // a_G(E_j): neighbours of E_j lying on G, for every component

  friend bool operator==(const MinimalJumpingDivisor&, const MinimalJumpingDivisor&) = default;
};

/// Components of sum F_i with positive multiplicity.
inline std::vector<std::size_t> fi_support(const LogResolution& res) {
  std::vector<std::size_t> out;
  const Divisor s = res.ideals.sum();
  for (std::size_t j = 0; j < res.t(); ++j)
    if (s[j] > 0) out.push_back(j);
  return out;
}

inline std::vector<long> g_valence(const LogResolution& res, const std::vector<std::size_t>& support) {
  std::vector<bool> on_g(res.t(), false);
  for (std::size_t j : support) on_g[j] = true;
  std::vector<long> a(res.t(), 0);
  for (std::size_t j = 0; j < res.t(); ++j)
    for (std::size_t n : res.graph.neighbors(j))
      if (on_g[n]) ++a[j];
  return a;
}

/// Exceptional components of G that are ends of their connected component
/// of G (at most one neighbour on G).
inline std::vector<std::size_t> g_ends(const LogResolution& res, const std::vector<std::size_t>& support) {
  const auto a = g_valence(res, support);
  std::vector<std::size_t> ends;
  for (std::size_t j : support)
    if (res.graph.is_exceptional(j) && a[j] <= 1) ends.push_back(j);
  return ends;
}

namespace detail {

inline std::vector<std::size_t> minimal_support(const LogResolution& res, const OrthantPoint& lambda,
                                                const AntinefDivisor& left) {
  const auto v = affine_values(res, lambda);
  std::vector<std::size_t> out;
  for (std::size_t j : fi_support(res))
    if (v[j] == 1 + left[j]) out.push_back(j);
  return out;
}

}  // namespace detail

inline MinimalJumpingDivisor minimal_jumping_divisor(const LogResolution& res, const OrthantPoint& lambda) {
  const AntinefDivisor left = mmi_left_limit(res, lambda);
  if (left == mmi_at(res, lambda))
    throw Error(ErrorCode::NotAJumpingPoint, lambda.str() + " is not a jumping point");
  MinimalJumpingDivisor m;
  m.lambda = lambda;
  m.support = detail::minimal_support(res, lambda, left);
  m.g = Divisor::reduced(res.t(), m.support);
  m.valence = g_valence(res, m.support);

  if (m.support.empty())
    throw Error(ErrorCode::InvariantBreach, "empty minimal jumping divisor at jumping point " + lambda.str());
  const Divisor gap = mixed_divisor_floor(res, lambda) - left_limit_floor(res, lambda);
  if (!leq(m.g, gap))
    throw Error(ErrorCode::InvariantBreach, "G at " + lambda.str() + " exceeds the round-down gap " + gap.str());
  for (std::size_t j : g_ends(res, m.support))
    if (!res.is_rupture(j) && !res.is_dicritical(j))
      throw Error(ErrorCode::InvariantBreach, "end component " + res.graph.id(j) + " of G at " + lambda.str() +
                                                  " is neither rupture nor dicritical");
  return m;
}

enum class Contribution { No, Contributes, ContributesCritically };

inline const char* contribution_name(Contribution c) {
  switch (c) {
    case Contribution::No: return "No";
    case Contribution::Contributes: return "Contributes";
    case Contribution::ContributesCritically: return "ContributesCritically";
  }
  return "?";
}

inline constexpr std::size_t default_candidate_cap_bits = 16;

namespace detail {

inline AntinefDivisor lowered_closure(const LogResolution& res, const Divisor& floor, const std::vector<std::size_t>& g) {
  Divisor d = floor;
  for (std::size_t j : g) d[j] -= 1;
  return antinef_closure(res.graph, d);
}

inline std::vector<std::size_t> subset_of(const std::vector<std::size_t>& items, std::uint64_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < items.size(); ++b)
    if (mask >> b & 1U) out.push_back(items[b]);
  return out;
}

}  // namespace detail

/// Whether removing the reduced divisor G from floor(lambda F - K) enlarges
/// J(a^lambda), and whether no proper part of G already does.
inline Contribution contributes(const LogResolution& res, const std::vector<std::size_t>& g, const OrthantPoint& lambda) {
  const auto v = affine_values(res, lambda);
  const auto allowed = fi_support(res);
  std::set<std::size_t> seen;
  for (std::size_t j : g) {
    if (j >= res.t() || !seen.insert(j).second)
      throw Error(ErrorCode::PreconditionViolated, "G must be a reduced divisor given by distinct components");
    if (std::find(allowed.begin(), allowed.end(), j) == allowed.end())
      throw Error(ErrorCode::PreconditionViolated, "G is not below sum F_i at " + res.graph.id(j));
    if (!is_integer(v[j]))
      throw Error(ErrorCode::IntegralityViolated, "lambda.e - k at " + res.graph.id(j) + " is " + to_string(v[j]));
  }
  if (g.size() > default_candidate_cap_bits)
    throw Error(ErrorCode::CandidateExplosion, "criticality test over " + std::to_string(g.size()) + " components");
  const Divisor floor = mixed_divisor_floor(res, lambda);
  const AntinefDivisor d = antinef_closure(res.graph, floor);
  if (detail::lowered_closure(res, floor, g) == d) return Contribution::No;
  const std::uint64_t full = (std::uint64_t{1} << g.size()) - 1;
  for (std::uint64_t mask = 0; mask < full; ++mask)
    if (!(detail::lowered_closure(res, floor, detail::subset_of(g, mask)) == d)) return Contribution::Contributes;
  return Contribution::ContributesCritically;
}

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
  std::vector<std::pair<std::string, Divisor>> witnesses;

  friend bool operator==(const Check&, const Check&) = default;
};

struct VerificationReport {
  std::string kind;
  OrthantPoint lambda;
  std::vector<Check> checks;
  std::size_t candidates = 0;   // 2^(number of integral components), dichotomy only
  std::size_t examined = 0;
  bool exhaustive = true;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

namespace detail {

inline void require_jumping(const LogResolution& res, const OrthantPoint& lambda) {
  if (lambda.is_zero()) throw Error(ErrorCode::ZeroPoint, "the origin is not a jumping point");
  if (!is_jumping_point(res, lambda)) throw Error(ErrorCode::NotAJumpingPoint, lambda.str() + " is not a jumping point");
}

}  // namespace detail

/// closure(D_{(1-eps)lambda} + G) and closure(floor((1-eps) lambda F - K) + G)
/// both give D_lambda.
inline VerificationReport verify_jump_identity(const LogResolution& res, const OrthantPoint& lambda) {
  detail::require_jumping(res, lambda);
  const auto m = minimal_jumping_divisor(res, lambda);
  const AntinefDivisor d = mmi_at(res, lambda);
  const AntinefDivisor left = mmi_left_limit(res, lambda);
  VerificationReport rep{"jump-identity", lambda, {}, 0, 0, true};

  const AntinefDivisor first = antinef_closure(res.graph, left.divisor() + m.g);
  rep.checks.push_back({"closure(D_left + G) = D_lambda", first == d, "",
                        {{"D_left", left.divisor()}, {"G", m.g}, {"closure", first.divisor()}, {"D_lambda", d.divisor()}}});
  const Divisor left_floor = left_limit_floor(res, lambda);
  const AntinefDivisor second = antinef_closure(res.graph, left_floor + m.g);
  rep.checks.push_back({"closure(floor_left + G) = D_lambda", second == d, "",
                        {{"floor_left", left_floor}, {"G", m.g}, {"closure", second.divisor()}, {"D_lambda", d.divisor()}}});
  return rep;
}

/// Intersection numbers (ceil(K - lambda F) + G) . E_i on the components of
/// G, computed directly and through excesses and fractional parts, for an
/// arbitrary reduced divisor G; verify_numeric_conditions uses G_lambda.
inline VerificationReport check_numeric_conditions(const LogResolution& res, const OrthantPoint& lambda,
                                                   const std::vector<std::size_t>& support) {
  const auto v = affine_values(res, lambda);
  const auto valence = g_valence(res, support);
  const Divisor round_up = Rational(-1) * mixed_divisor_floor(res, lambda);  // ceil(K - lambda F)
  const Divisor lhs = round_up + Divisor::reduced(res.t(), support);
  VerificationReport rep{"numeric-conditions", lambda, {}, 0, 0, true};

  for (std::size_t i : support) {
    if (!res.graph.is_exceptional(i)) continue;
    const std::string id = res.graph.id(i);
    const Rational direct = intersection(res.graph, lhs, i);
    Rational formula = -2 + valence[i];
    for (std::size_t k = 0; k < res.r(); ++k) formula += lambda[k] * res.rho[k][i];
    for (std::size_t j : res.graph.neighbors(i)) formula += frac_of(v[j]);
    const std::string values = "direct " + to_string(direct) + ", formula " + to_string(formula);
    rep.checks.push_back({"intersection formula at " + id, direct == formula, values, {}});
    rep.checks.push_back({"integral at " + id, is_integer(formula), values, {}});
    rep.checks.push_back({"non-negative at " + id, formula >= 0, values, {}});
    if (!res.is_rupture(i) && !res.is_dicritical(i))
      rep.checks.push_back({"zero at non-rupture non-dicritical " + id, formula == 0, values, {}});
  }
  for (std::size_t j : g_ends(res, support)) {
    const bool ok = res.is_rupture(j) || res.is_dicritical(j);
    rep.checks.push_back({"end " + res.graph.id(j) + " is rupture or dicritical", ok, "", {}});
  }
  return rep;
}

inline VerificationReport verify_numeric_conditions(const LogResolution& res, const OrthantPoint& lambda) {
  detail::require_jumping(res, lambda);
  return check_numeric_conditions(res, lambda, minimal_jumping_divisor(res, lambda).support);
}

struct DichotomyOptions {
  std::size_t cap_bits = default_candidate_cap_bits;
  bool throw_on_explosion = false;
  std::size_t samples = 4096;
  std::uint64_t seed = 0x5eed;
};

/// Runs over reduced divisors G on the components with integral
/// lambda.e - k: the ideal of floor(lambda F - K) - G equals the left limit
/// exactly when G contains G_lambda, and lies strictly between the left
/// limit and J(a^lambda) otherwise.
inline VerificationReport verify_contribution_dichotomy(const LogResolution& res, const OrthantPoint& lambda,
                                                         const DichotomyOptions& options = {}) {
  detail::require_jumping(res, lambda);
  const auto m = minimal_jumping_divisor(res, lambda);
  const auto v = affine_values(res, lambda);
  std::vector<std::size_t> candidates;
  for (std::size_t j : fi_support(res))
    if (is_integer(v[j])) candidates.push_back(j);

  VerificationReport rep{"contribution-dichotomy", lambda, {}, 0, 0, true};
  const std::size_t n = candidates.size();
  std::vector<std::uint64_t> masks;
  if (n <= options.cap_bits) {
    rep.candidates = std::size_t{1} << n;
    for (std::uint64_t mask = 0; mask < rep.candidates; ++mask) masks.push_back(mask);
  } else {
    if (options.throw_on_explosion)
      throw Error(ErrorCode::CandidateExplosion, std::to_string(n) + " integral components give 2^" + std::to_string(n) +
                                                     " candidates, above the cap 2^" + std::to_string(options.cap_bits));
    rep.candidates = n < 64 ? std::size_t{1} << n : SIZE_MAX;
    rep.exhaustive = false;
    std::mt19937_64 rng(options.seed);
    const std::uint64_t limit = n < 64 ? (std::uint64_t{1} << n) - 1 : UINT64_MAX;
    std::uniform_int_distribution<std::uint64_t> pick(0, limit);
    for (std::size_t s = 0; s < options.samples; ++s) masks.push_back(pick(rng));
  }

  std::uint64_t g_mask = 0;
  bool g_inside = true;
  for (std::size_t j : m.support) {
    auto it = std::find(candidates.begin(), candidates.end(), j);
    if (it == candidates.end()) g_inside = false;
    else g_mask |= std::uint64_t{1} << (it - candidates.begin());
  }
  rep.checks.push_back({"G_lambda among integral components", g_inside, "", {{"G", m.g}}});

  const Divisor floor = mixed_divisor_floor(res, lambda);
  const AntinefDivisor d = mmi_at(res, lambda);
  const AntinefDivisor left = mmi_left_limit(res, lambda);
  std::size_t bad = 0;
  std::size_t minimal_left = 0;  // subsets giving the left limit with no smaller such subset among single removals
  Check dich{"ideal equals left limit iff G >= G_lambda", true, "", {}};
  for (std::uint64_t mask : masks) {
    const auto g = detail::subset_of(candidates, mask);
    const AntinefDivisor dg = detail::lowered_closure(res, floor, g);
    const bool contains_min = (mask & g_mask) == g_mask;
    const bool gives_left = dg == left;
    const bool between = leq(left.divisor(), dg.divisor()) && leq(dg.divisor(), d.divisor());
    const bool ok = contains_min ? gives_left : (!gives_left && between);
    if (!ok && bad++ == 0) {
      dich.passed = false;
      dich.witnesses = {{"G", Divisor::reduced(res.t(), g)}, {"closure", dg.divisor()}};
    }
    if (gives_left) {
      bool minimal = true;
      for (std::size_t b = 0; b < n && minimal; ++b)
        if (mask >> b & 1U) {
          const auto smaller = detail::subset_of(candidates, mask & ~(std::uint64_t{1} << b));
          if (detail::lowered_closure(res, floor, smaller) == left) minimal = false;
        }
      if (minimal) ++minimal_left;
    }
    ++rep.examined;
  }
  dich.detail = std::to_string(rep.examined) + " candidates examined, " + std::to_string(bad) + " violations";
  rep.checks.push_back(std::move(dich));
  if (rep.exhaustive)
    rep.checks.push_back({"G_lambda is the unique minimal jumping divisor", minimal_left == 1, "", {{"G", m.g}}});
  return rep;
}

/// G at several interior points of a C-facet agrees, and its components
/// are exactly the hyperplanes of the facet.
inline VerificationReport verify_facet(const LogResolution& res, const ConstancyRecord& record, const CFacet& facet) {
  const OrthantPoint mid(facet.midpoint);
  VerificationReport rep{"facet", mid, {}, 0, 0, true};
  const auto g_mid = minimal_jumping_divisor(res, mid);

  for (const Rational& t : {Rational(1, 3), Rational(3, 4)}) {
    std::vector<Rational> p(facet.from.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = facet.from[i] + t * (facet.to[i] - facet.from[i]);
    const OrthantPoint q(p);
    const auto g_q = minimal_jumping_divisor(res, q);
    rep.checks.push_back({"same G at " + q.str(), g_q.g == g_mid.g, "", {{"G_mid", g_mid.g}, {"G_point", g_q.g}}});
    rep.checks.push_back({"same ideal at " + q.str(), mmi_at(res, q) == mmi_at(res, mid), "", {}});
  }

  // Each component of G must carry a hyperplane through the facet, with
  // constant taken from the left-limit (record) divisor.
  bool hyperplanes = true;
  for (std::size_t j : g_mid.support) {
    const auto a = res.ideals.column(j);
    const Rational c = res.canonical[j] + 1 + record.divisor()[j];
    for (const auto* pt : {&facet.from, &facet.to}) {
      Rational val = 0;
      for (std::size_t i = 0; i < a.size(); ++i) val += a[i] * (*pt)[i];
      if (val != c) hyperplanes = false;
    }
  }
  rep.checks.push_back({"G components support the facet", hyperplanes, "", {{"G", g_mid.g}}});
  bool covered = true;
  for (std::size_t j : facet.components)
    if (std::find(g_mid.support.begin(), g_mid.support.end(), j) == g_mid.support.end()) covered = false;
  rep.checks.push_back({"facet hyperplanes lie on G", covered, "", {{"G", g_mid.g}}});
  return rep;
}

}  // namespace mmi
