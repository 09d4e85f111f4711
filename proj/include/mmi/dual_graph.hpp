#pragma once

// Weighted dual graph of a log-resolution: exceptional curves E_1..E_s with
// their self-intersections and adjacencies, plus affine (non-exceptional)
// components E_{s+1}..E_t crossing some of them. Component indices are
// global: exceptional components come first, affine ones after.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mmi/error.hpp"
#include "mmi/rational.hpp"

namespace mmi {

struct RawExceptional {
  std::string id;
  long long self_intersection = 0;
};

struct RawAffine {
  std::string id;
  std::vector<std::string> meets;
};

/// Unvalidated graph description, as read from an input document.
struct RawGraph {
  std::vector<RawExceptional> exceptional;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<RawAffine> affine;
};

using RationalMatrix = std::vector<std::vector<Rational>>;

namespace linalg {

/// Solves A x = b exactly. A must be square and invertible.
inline std::vector<Rational> solve(RationalMatrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw Error(ErrorCode::InvariantBreach, "singular system in exact solve");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational factor = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
      b[row] -= factor * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

/// Index of the first leading principal minor of -A that is not positive,
/// or nullopt when A is negative definite (Sylvester's criterion, computed
/// through the pivots of an exact symmetric elimination).
inline std::optional<std::size_t> first_non_negative_definite_minor(const RationalMatrix& a) {
  const std::size_t n = a.size();
  RationalMatrix m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = -a[i][j];
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] <= 0) return k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      const Rational factor = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= factor * m[k][j];
    }
  }
  return std::nullopt;
}

}  // namespace linalg

class DualGraph {
 public:
  std::size_t exceptional_count() const { return exceptional_count_; }
  std::size_t component_count() const { return ids_.size(); }
  std::size_t affine_count() const { return component_count() - exceptional_count(); }
  bool is_exceptional(std::size_t j) const { return j < exceptional_count_; }

  const std::string& id(std::size_t j) const { return ids_.at(j); }
  const std::vector<std::string>& ids() const { return ids_; }

  std::optional<std::size_t> index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  long long self_intersection(std::size_t i) const { return matrix_.at(i).at(i); }

  /// Exceptional intersection matrix (E_i . E_j), i, j < s.
  const std::vector<std::vector<long long>>& matrix() const { return matrix_; }

  /// Exceptional neighbours of an exceptional component.
  const std::vector<std::size_t>& exceptional_neighbors(std::size_t i) const {
    return exceptional_adjacency_.at(i);
  }

  /// All components meeting component j (exceptional and affine).
  const std::vector<std::size_t>& neighbors(std::size_t j) const { return adjacency_.at(j); }

  /// Intersection number E_i . E_j for exceptional i and any component j.
  long long intersection(std::size_t i, std::size_t j) const {
    if (is_exceptional(j)) return matrix_[i][j];
    const auto& adj = adjacency_[j];
    return std::find(adj.begin(), adj.end(), i) != adj.end() ? 1 : 0;
  }

  /// D . E_i for exceptional E_i, where D has coefficients on all components.
  template <typename Scalar>
  Scalar intersect(std::span<const Scalar> d, std::size_t i) const {
    Scalar total = 0;
    for (std::size_t j = 0; j < exceptional_count_; ++j)
      if (matrix_[i][j] != 0) total += d[j] * static_cast<long>(matrix_[i][j]);
    for (std::size_t j : adjacency_[i])
      if (!is_exceptional(j)) total += d[j];
    return total;
  }

  RationalMatrix rational_matrix() const {
    RationalMatrix m(exceptional_count_, std::vector<Rational>(exceptional_count_));
    for (std::size_t i = 0; i < exceptional_count_; ++i)
      for (std::size_t j = 0; j < exceptional_count_; ++j) m[i][j] = Rational(matrix_[i][j]);
    return m;
  }

  friend DualGraph validate_graph(const RawGraph& raw);
  friend bool operator==(const DualGraph& a, const DualGraph& b) {
    return a.ids_ == b.ids_ && a.matrix_ == b.matrix_ && a.adjacency_ == b.adjacency_;
  }

 private:
  std::size_t exceptional_count_ = 0;
  std::vector<std::string> ids_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<long long>> matrix_;
  std::vector<std::vector<std::size_t>> exceptional_adjacency_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// Checks the structural assumptions on a resolution graph: unique ids,
/// resolvable references, simple normal crossings, a tree of exceptional
/// curves and a negative definite intersection matrix.
inline DualGraph validate_graph(const RawGraph& raw) {
  DualGraph g;
  if (raw.exceptional.empty())
    throw Error(ErrorCode::InvalidInput, "graph has no exceptional components");

  auto add_id = [&](const std::string& id) {
    if (id.empty()) throw Error(ErrorCode::InvalidInput, "empty component id");
    if (!g.index_.emplace(id, g.ids_.size()).second)
      throw Error(ErrorCode::DuplicateId, "component id '" + id + "' appears more than once");
    g.ids_.push_back(id);
  };
  for (const auto& c : raw.exceptional) add_id(c.id);
  g.exceptional_count_ = raw.exceptional.size();
  for (const auto& a : raw.affine) add_id(a.id);

  const std::size_t s = g.exceptional_count_;
  g.matrix_.assign(s, std::vector<long long>(s, 0));
  g.exceptional_adjacency_.assign(s, {});
  g.adjacency_.assign(g.ids_.size(), {});

  for (std::size_t i = 0; i < s; ++i) {
    if (raw.exceptional[i].self_intersection >= 0)
      throw Error(ErrorCode::InvalidInput, "self-intersection of " + raw.exceptional[i].id +
                                               " must be a negative integer");
    g.matrix_[i][i] = raw.exceptional[i].self_intersection;
  }

  auto exceptional_index = [&](const std::string& id, const std::string& context) {
    auto idx = g.index_of(id);
    if (!idx) throw Error(ErrorCode::DanglingReference, context + " references unknown component '" + id + "'");
    if (!g.is_exceptional(*idx))
      throw Error(ErrorCode::InvalidInput, context + " must reference an exceptional component, got '" + id + "'");
    return *idx;
  };

  for (const auto& [u, v] : raw.edges) {
    const std::size_t a = exceptional_index(u, "edge");
    const std::size_t b = exceptional_index(v, "edge");
    if (a == b) throw Error(ErrorCode::InvalidInput, "self-loop at " + u);
    if (g.matrix_[a][b] != 0)
      throw Error(ErrorCode::InvalidInput, "edge " + u + "-" + v +
                                               " listed twice (intersection multiplicity > 1)");
    g.matrix_[a][b] = g.matrix_[b][a] = 1;
    g.exceptional_adjacency_[a].push_back(b);
    g.exceptional_adjacency_[b].push_back(a);
    g.adjacency_[a].push_back(b);
    g.adjacency_[b].push_back(a);
  }

  for (std::size_t k = 0; k < raw.affine.size(); ++k) {
    const std::size_t j = s + k;
    const auto& aff = raw.affine[k];
    std::set<std::size_t> seen;
    for (const auto& target : aff.meets) {
      const std::size_t i = exceptional_index(target, "affine component " + aff.id);
      if (!seen.insert(i).second)
        throw Error(ErrorCode::InvalidInput, "affine component " + aff.id + " meets " + target +
                                                 " more than once");
      g.adjacency_[j].push_back(i);
      g.adjacency_[i].push_back(j);
    }
  }
  for (auto& adj : g.adjacency_) std::sort(adj.begin(), adj.end());
  for (auto& adj : g.exceptional_adjacency_) std::sort(adj.begin(), adj.end());

  // Tree: connected with s - 1 edges.
  if (raw.edges.size() != s - 1) {
    throw Error(ErrorCode::NotATree, "exceptional graph has " + std::to_string(raw.edges.size()) +
                                         " edges for " + std::to_string(s) +
                                         " components; a tree needs " + std::to_string(s - 1));
  }
  std::vector<bool> reached(s, false);
  std::vector<std::size_t> stack{0};
  reached[0] = true;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t n : g.exceptional_adjacency_[i])
      if (!reached[n]) {
        reached[n] = true;
        stack.push_back(n);
      }
  }
  for (std::size_t i = 0; i < s; ++i)
    if (!reached[i])
      throw Error(ErrorCode::NotATree, "component " + g.ids_[i] + " is not connected to " + g.ids_[0]);

  if (auto k = linalg::first_non_negative_definite_minor(g.rational_matrix())) {
    std::string names;
    for (std::size_t i = 0; i <= *k; ++i) names += (i ? "," : "") + g.ids_[i];
    throw Error(ErrorCode::NotNegativeDefinite,
                "intersection matrix restricted to {" + names + "} is not negative definite");
  }
  return g;
}

}  // namespace mmi
