#pragma once

// Log-resolution data of a tuple of ideals: the ideal divisors F_i, the
// relative canonical divisor K_pi, excesses and the rupture / dicritical
// classification of exceptional components.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mmi/divisor.hpp"
#include "mmi/dual_graph.hpp"
#include "mmi/error.hpp"
#include "mmi/rational.hpp"

namespace mmi {

struct RawIdeal {
  std::string name;
  std::map<std::string, long long> mult;  // missing components count as 0
};

/// The divisors F_1..F_r with a_i O_X' = O_X'(-F_i).
class IdealDivisorSet {
 public:
  IdealDivisorSet() = default;
  IdealDivisorSet(std::vector<std::string> names, std::vector<Divisor> divisors)
      : names_(std::move(names)), f_(std::move(divisors)) {}

  std::size_t r() const { return f_.size(); }
  const Divisor& operator[](std::size_t i) const { return f_.at(i); }
  const std::vector<Divisor>& divisors() const { return f_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  /// Multiplicity vector (e_{1,j}, ..., e_{r,j}) of component j.
  std::vector<Rational> column(std::size_t j) const {
    std::vector<Rational> a(f_.size());
    for (std::size_t i = 0; i < f_.size(); ++i) a[i] = f_[i][j];
    return a;
  }

  Divisor sum() const {
    Divisor s = Divisor::zero(f_.empty() ? 0 : f_[0].size());
    for (const auto& f : f_) s += f;
    return s;
  }

  friend bool operator==(const IdealDivisorSet&, const IdealDivisorSet&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Divisor> f_;
};

/// Excesses rho_{i,j} = -F_i . E_j, one row per ideal.
inline std::vector<std::vector<Rational>> excesses(const DualGraph& g, const IdealDivisorSet& f) {
  std::vector<std::vector<Rational>> rho;
  for (std::size_t i = 0; i < f.r(); ++i) rho.push_back(excess_vector(g, f[i]));
  return rho;
}

inline IdealDivisorSet make_ideal_divisor_set(const DualGraph& g, const std::vector<RawIdeal>& raw) {
  if (raw.empty()) throw Error(ErrorCode::InvalidInput, "no ideals given");
  std::vector<std::string> names;
  std::vector<Divisor> divisors;
  for (const auto& ideal : raw) {
    if (std::find(names.begin(), names.end(), ideal.name) != names.end())
      throw Error(ErrorCode::DuplicateId, "ideal name '" + ideal.name + "' appears more than once");
    Divisor f = Divisor::zero(g.component_count());
    for (const auto& [id, m] : ideal.mult) {
      auto j = g.index_of(id);
      if (!j) throw Error(ErrorCode::DanglingReference, "ideal " + ideal.name + " references unknown component '" + id + "'");
      if (m < 0) throw Error(ErrorCode::InvalidInput, "ideal " + ideal.name + " has negative multiplicity at " + id);
      f[*j] = m;
    }
    if (f.is_zero()) throw Error(ErrorCode::InvalidInput, "ideal " + ideal.name + " has the zero divisor");
    const auto rho = excess_vector(g, f);
    for (std::size_t j = 0; j < rho.size(); ++j)
      if (rho[j] < 0)
        throw Error(ErrorCode::NotAntinef, "ideal " + ideal.name + " has excess " + to_string(rho[j]) +
                                               " < 0 at " + g.id(j));
    Rational total = 0;
    for (const auto& x : rho) total += x;
    bool has_affine = false;
    for (std::size_t j = g.exceptional_count(); j < g.component_count(); ++j) has_affine |= f[j] > 0;
    if (total == 0 && !has_affine)
      throw Error(ErrorCode::InvalidInput, "ideal " + ideal.name + " has no Rees valuation");
    names.push_back(ideal.name);
    divisors.push_back(std::move(f));
  }
  return IdealDivisorSet(std::move(names), std::move(divisors));
}

/// K_pi, rational coefficients on the exceptional part, zero on affine
/// components.
struct CanonicalDivisor {
  Divisor k;
  const Rational& operator[](std::size_t j) const { return k[j]; }
  std::size_t size() const { return k.size(); }
};

/// Solves (K + E_i) . E_i = -2 for every exceptional E_i.
inline CanonicalDivisor relative_canonical(const DualGraph& g) {
  const std::size_t s = g.exceptional_count();
  std::vector<Rational> b(s);
  for (std::size_t i = 0; i < s; ++i) b[i] = Rational(-2 - g.self_intersection(i));
  auto x = linalg::solve(g.rational_matrix(), b);
  x.resize(g.component_count());
  CanonicalDivisor k{Divisor(std::move(x))};
  for (std::size_t i = 0; i < s; ++i)
    if (intersection(g, k.k, i) + g.self_intersection(i) != -2)
      throw Error(ErrorCode::InvariantBreach, "adjunction fails at " + g.id(i));
  return k;
}

struct Classification {
  std::vector<std::size_t> rupture;
  std::vector<std::size_t> dicritical;
  std::vector<std::size_t> wall_relevant;  // sorted union of the two
};

inline Classification classify_components(const DualGraph& g, const IdealDivisorSet& f) {
  Classification c;
  const auto rho = excesses(g, f);
  for (std::size_t j = 0; j < g.exceptional_count(); ++j) {
    const bool rupture = g.exceptional_neighbors(j).size() >= 3;
    bool dicritical = false;
    for (const auto& row : rho) dicritical |= row[j] > 0;
    if (rupture) c.rupture.push_back(j);
    if (dicritical) c.dicritical.push_back(j);
    if (rupture || dicritical) c.wall_relevant.push_back(j);
  }
  return c;
}

/// Everything derived from (graph, ideals) that later stages reuse.
struct LogResolution {
  DualGraph graph;
  IdealDivisorSet ideals;
  CanonicalDivisor canonical;
  std::vector<std::vector<Rational>> rho;
  Classification classes;
  bool m_primary = true;     // no ideal has affine support
  bool affine_walls = false; // add affine components (k = 0) as region inequalities

  std::size_t r() const { return ideals.r(); }
  std::size_t t() const { return graph.component_count(); }
  std::size_t s() const { return graph.exceptional_count(); }

  bool is_rupture(std::size_t j) const {
    return std::binary_search(classes.rupture.begin(), classes.rupture.end(), j);
  }
  bool is_dicritical(std::size_t j) const {
    return std::binary_search(classes.dicritical.begin(), classes.dicritical.end(), j);
  }

  /// Components whose hyperplanes bound regions.
  std::vector<std::size_t> region_components() const {
    std::vector<std::size_t> out = classes.wall_relevant;
    if (affine_walls)
      for (std::size_t j = s(); j < t(); ++j) {
        bool positive = false;
        for (std::size_t i = 0; i < r(); ++i) positive |= ideals[i][j] > 0;
        if (positive) out.push_back(j);
      }
    return out;
  }
};

inline LogResolution make_log_resolution(DualGraph graph, IdealDivisorSet ideals, bool affine_walls = false) {
  LogResolution res;
  res.canonical = relative_canonical(graph);
  res.rho = excesses(graph, ideals);
  res.classes = classify_components(graph, ideals);
  for (std::size_t i = 0; i < ideals.r(); ++i)
    for (std::size_t j = graph.exceptional_count(); j < graph.component_count(); ++j)
      if (ideals[i][j] > 0) res.m_primary = false;
  res.graph = std::move(graph);
  res.ideals = std::move(ideals);
  res.affine_walls = affine_walls;
  return res;
}

}  // namespace mmi
