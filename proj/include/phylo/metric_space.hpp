// Copyright 2026 The Phylo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "phylo/error.hpp"
#include "phylo/rational.hpp"

namespace phylo {

/// A finite set of labelled points with a dense symmetric distance matrix.
///
/// The scalar must be an exact ordered field (mpq_class in practice): the
/// contraction and drift quotients identify points whose reduced distance is
/// exactly zero.
template <typename Scalar>
class FiniteMetricSpace {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  /// Throws InputError on an empty or duplicate label set, a non-square or
  /// mis-sized matrix, or an asymmetric matrix. Metric axioms are checked by
  /// validate_space, not here.
  FiniteMetricSpace(std::vector<std::string> labels, Matrix distances)
      : labels_(std::move(labels)), d_(std::move(distances)) {
    if (labels_.empty()) throw InputError("a metric space needs at least one point");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_)
      if (!seen.insert(l).second) throw InputError("duplicate point label '" + l + "'");
    const auto n = static_cast<Eigen::Index>(labels_.size());
    if (d_.rows() != n || d_.cols() != n)
      throw InputError("distance matrix is " + std::to_string(d_.rows()) + "x" +
                       std::to_string(d_.cols()) + " but there are " + std::to_string(n) +
                       " labels");
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) canonicalize(d_(i, j));
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j)
        if (d_(i, j) != d_(j, i))
          throw InputError("distance matrix is not symmetric at (" + labels_[i] + ", " +
                           labels_[j] + ")");
  }

  static FiniteMetricSpace point(std::string label = "*") {
    return FiniteMetricSpace({std::move(label)}, Matrix::Zero(1, 1));
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const Matrix& distances() const { return d_; }
  const Scalar& operator()(std::size_t i, std::size_t j) const {
    return d_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  std::vector<std::string> labels_;
  Matrix d_;
};

using MetricSpace = FiniteMetricSpace<Rational>;

/// A total map between point sets: point i goes to image[i].
struct PointMap {
  std::vector<std::size_t> image;

  std::size_t operator()(std::size_t i) const { return image.at(i); }
  friend bool operator==(const PointMap&, const PointMap&) = default;
};

struct SpaceValidity {
  bool is_metric;
  bool is_ultrametric;
};

template <typename Scalar>
SpaceValidity validate_space(const FiniteMetricSpace<Scalar>& m) {
  const std::size_t n = m.size();
  const Scalar zero(0);
  bool metric = true;
  for (std::size_t i = 0; i < n && metric; ++i) {
    if (m(i, i) != zero) metric = false;
    for (std::size_t j = 0; j < n && metric; ++j)
      if (i != j && !(m(i, j) > zero)) metric = false;
  }
  bool ultra = metric;
  for (std::size_t x = 0; x < n && metric; ++x)
    for (std::size_t y = 0; y < n && metric; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        Scalar sum = m(x, z) + m(y, z);
        if (m(x, y) > sum) {
          metric = false;
          break;
        }
        if (m(x, y) > std::max(m(x, z), m(y, z))) ultra = false;
      }
  return {metric, metric && ultra};
}

/// ||X||: the sum of d(x, y) over ordered pairs.
template <typename Scalar>
Scalar norm_total(const FiniteMetricSpace<Scalar>& m) {
  return m.distances().sum();
}

/// |X|: the least distance between distinct points. Needs two points.
template <typename Scalar>
Scalar min_gap(const FiniteMetricSpace<Scalar>& m) {
  if (m.size() < 2) throw PreconditionError("min_gap needs at least two points");
  Scalar best = m(0, 1);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (m(i, j) < best) best = m(i, j);
  return best;
}

/// Distinct non-zero distances, sorted ascending.
template <typename Scalar>
std::vector<Scalar> distance_values(const FiniteMetricSpace<Scalar>& m) {
  std::vector<Scalar> values;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) values.push_back(m(i, j));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  values.erase(std::remove(values.begin(), values.end(), Scalar(0)), values.end());
  return values;
}

/// N(X): the number of distinct non-zero distances.
template <typename Scalar>
std::size_t n_nonzero(const FiniteMetricSpace<Scalar>& m) {
  return distance_values(m).size();
}

/// Throws InputError unless f is a total map from `src` onto `tgt`.
template <typename Scalar>
void check_surjection(const FiniteMetricSpace<Scalar>& src, const FiniteMetricSpace<Scalar>& tgt,
                      const PointMap& f) {
  if (f.image.size() != src.size())
    throw InputError("point map is not total on the source space");
  std::vector<bool> hit(tgt.size(), false);
  for (std::size_t y : f.image) {
    if (y >= tgt.size()) throw InputError("point map leaves the target space");
    hit[y] = true;
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end())
    throw InputError("point map is not surjective");
}

template <typename Scalar>
bool is_isometry(const FiniteMetricSpace<Scalar>& src, const FiniteMetricSpace<Scalar>& tgt,
                 const PointMap& f) {
  check_surjection(src, tgt, f);
  if (src.size() != tgt.size()) return false;
  for (std::size_t x = 0; x < src.size(); ++x)
    for (std::size_t y = x + 1; y < src.size(); ++y)
      if (tgt(f(x), f(y)) != src(x, y)) return false;
  return true;
}

/// The epsilon of an epsilon-contraction, if f is one: a positive constant
/// with rho(f x, f y) = d(x, y) - epsilon for all distinct x, y. A one-point
/// source has no distinct pairs and yields nullopt.
template <typename Scalar>
std::optional<Scalar> contraction_epsilon(const FiniteMetricSpace<Scalar>& src,
                                          const FiniteMetricSpace<Scalar>& tgt,
                                          const PointMap& f) {
  check_surjection(src, tgt, f);
  if (src.size() < 2) return std::nullopt;
  Scalar eps = src(0, 1) - tgt(f(0), f(1));
  if (!(eps > Scalar(0))) return std::nullopt;
  for (std::size_t x = 0; x < src.size(); ++x)
    for (std::size_t y = x + 1; y < src.size(); ++y) {
      Scalar expected = src(x, y) - eps;
      if (tgt(f(x), f(y)) != expected) return std::nullopt;
    }
  return eps;
}

/// Per-point half-deficit of the triangle inequality.
template <typename Scalar>
std::vector<Scalar> underline_d(const FiniteMetricSpace<Scalar>& m) {
  const std::size_t n = m.size();
  std::vector<Scalar> out(n, Scalar(0));
  if (n == 2) {
    Scalar half = m(0, 1) / Scalar(2);
    out.assign(2, half);
    return out;
  }
  if (n < 3) return out;
  for (std::size_t x = 0; x < n; ++x) {
    std::optional<Scalar> best;
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x) continue;
      for (std::size_t z = y + 1; z < n; ++z) {
        if (z == x) continue;
        Scalar gap = (m(x, y) + m(x, z) - m(y, z)) / Scalar(2);
        if (!best || gap < *best) best = gap;
      }
    }
    out[x] = *best;
  }
  return out;
}

/// rho(f x, f y) = d(x, y) - dd(x) - dd(y) for all distinct x, y, where dd is
/// underline_d of the source.
template <typename Scalar>
bool is_drift(const FiniteMetricSpace<Scalar>& src, const FiniteMetricSpace<Scalar>& tgt,
              const PointMap& f) {
  check_surjection(src, tgt, f);
  const auto dd = underline_d(src);
  for (std::size_t x = 0; x < src.size(); ++x)
    for (std::size_t y = x + 1; y < src.size(); ++y) {
      Scalar expected = src(x, y) - dd[x] - dd[y];
      if (tgt(f(x), f(y)) != expected) return false;
    }
  return true;
}

enum class MapKind { kIsometry, kContraction, kDrift, kNone };

template <typename Scalar>
struct MapClass {
  MapKind kind;
  std::optional<Scalar> epsilon;  // set for kContraction
};

/// First matching kind in the order isometry, contraction, drift. A map can
/// be both a contraction and a drift (any map onto a point from two points).
template <typename Scalar>
MapClass<Scalar> classify_map(const FiniteMetricSpace<Scalar>& src,
                              const FiniteMetricSpace<Scalar>& tgt, const PointMap& f) {
  if (is_isometry(src, tgt, f)) return {MapKind::kIsometry, std::nullopt};
  if (auto eps = contraction_epsilon(src, tgt, f)) return {MapKind::kContraction, eps};
  if (is_drift(src, tgt, f)) return {MapKind::kDrift, std::nullopt};
  return {MapKind::kNone, std::nullopt};
}

template <typename Scalar>
struct Quotient {
  FiniteMetricSpace<Scalar> space;
  PointMap projection;
};

/// Source spaces first: spaces[0] is the input and maps[k] projects spaces[k]
/// onto spaces[k + 1]. Read backwards it is the universal evolution
/// spaces.back() <- ... <- spaces[0].
template <typename Scalar>
struct Tower {
  std::vector<FiniteMetricSpace<Scalar>> spaces;
  std::vector<PointMap> maps;

  std::size_t length() const { return maps.size(); }
};

namespace detail {

// Glues points whose reduced distance is zero and carries the reduced
// distances to the classes. Classes are numbered by least member; labels are
// member labels joined with '+'.
template <typename Scalar>
Quotient<Scalar> collapse_zeros(const FiniteMetricSpace<Scalar>& m,
                                const typename FiniteMetricSpace<Scalar>::Matrix& reduced) {
  const std::size_t n = m.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (reduced(x, y) == Scalar(0)) parent[find(y)] = find(x);

  PointMap projection{std::vector<std::size_t>(n)};
  std::vector<std::size_t> class_of_root(n, n);
  std::vector<std::size_t> representative;
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t r = find(x);
    if (class_of_root[r] == n) {
      class_of_root[r] = representative.size();
      representative.push_back(x);
      labels.push_back(m.label(x));
    } else {
      labels[class_of_root[r]] += "+" + m.label(x);
    }
    projection.image[x] = class_of_root[r];
  }
  const auto k = static_cast<Eigen::Index>(representative.size());
  typename FiniteMetricSpace<Scalar>::Matrix rho(k, k);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b)
      rho(a, b) = a == b ? Scalar(0) : reduced(representative[a], representative[b]);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (rho(projection.image[x], projection.image[y]) != reduced(x, y))
        throw std::logic_error("reduced distance does not descend to the quotient");
  return {FiniteMetricSpace<Scalar>(std::move(labels), std::move(rho)), std::move(projection)};
}

template <typename Scalar>
void require_ultrametric(const FiniteMetricSpace<Scalar>& m) {
  if (!validate_space(m).is_ultrametric) throw InputError("space is not ultrametric");
}

template <typename Scalar>
void require_metric(const FiniteMetricSpace<Scalar>& m) {
  if (!validate_space(m).is_metric) throw InputError("space is not a metric space");
}

}  // namespace detail

/// u(X): subtract |X| from every off-diagonal distance and glue the points
/// now at distance zero. The projection is a non-injective |X|-contraction.
template <typename Scalar>
Quotient<Scalar> quotient_u(const FiniteMetricSpace<Scalar>& m) {
  detail::require_ultrametric(m);
  if (m.size() < 2) throw PreconditionError("u(X) needs at least two points");
  const Scalar gap = min_gap(m);
  typename FiniteMetricSpace<Scalar>::Matrix reduced = m.distances().array() - gap;
  reduced.diagonal().setZero();
  return detail::collapse_zeros(m, reduced);
}

/// X, u(X), u^2(X), ... down to a single point.
template <typename Scalar>
Tower<Scalar> tower_u(const FiniteMetricSpace<Scalar>& m) {
  detail::require_ultrametric(m);
  Tower<Scalar> tower{{m}, {}};
  while (tower.spaces.back().size() > 1) {
    Quotient<Scalar> next = quotient_u(tower.spaces.back());
    tower.maps.push_back(std::move(next.projection));
    tower.spaces.push_back(std::move(next.space));
  }
  return tower;
}

/// Every point lies between two others: d(x,y) + d(x,z) = d(y,z) for some
/// distinct y, z != x. A single point is trim.
template <typename Scalar>
bool is_trim(const FiniteMetricSpace<Scalar>& m) {
  const std::size_t n = m.size();
  if (n == 1) return true;
  for (std::size_t x = 0; x < n; ++x) {
    bool between = false;
    for (std::size_t y = 0; y < n && !between; ++y) {
      if (y == x) continue;
      for (std::size_t z = y + 1; z < n; ++z) {
        if (z == x) continue;
        Scalar sum = m(x, y) + m(x, z);
        if (sum == m(y, z)) {
          between = true;
          break;
        }
      }
    }
    if (!between) return false;
  }
  return true;
}

/// v(X): reduce d(x,y) by dd(x) + dd(y) and glue the points at distance zero.
/// The projection is a drift.
template <typename Scalar>
Quotient<Scalar> quotient_v(const FiniteMetricSpace<Scalar>& m) {
  detail::require_metric(m);
  const auto dd = underline_d(m);
  const auto n = static_cast<Eigen::Index>(m.size());
  typename FiniteMetricSpace<Scalar>::Matrix reduced(n, n);
  for (Eigen::Index x = 0; x < n; ++x)
    for (Eigen::Index y = 0; y < n; ++y)
      reduced(x, y) = x == y ? Scalar(0) : Scalar(m.distances()(x, y) - dd[x] - dd[y]);
  return detail::collapse_zeros(m, reduced);
}

/// X, v(X), v^2(X), ... up to the first trim space (the trim core).
template <typename Scalar>
Tower<Scalar> tower_v(const FiniteMetricSpace<Scalar>& m) {
  detail::require_metric(m);
  Tower<Scalar> tower{{m}, {}};
  // A bijective drift lands on a trim space, so each step either loses a
  // point or ends the tower.
  const std::size_t cap = m.size() + 1;
  while (!is_trim(tower.spaces.back())) {
    if (tower.length() > cap) throw std::logic_error("drift tower failed to terminate");
    Quotient<Scalar> next = quotient_v(tower.spaces.back());
    tower.maps.push_back(std::move(next.projection));
    tower.spaces.push_back(std::move(next.space));
  }
  return tower;
}

/// A distance-preserving bijection from `a` onto `b` (result[i] is the image of
/// point i), or nullopt. Throws SizeGuardError above `max_points`.
template <typename Scalar>
std::optional<std::vector<std::size_t>> is_isometric(const FiniteMetricSpace<Scalar>& a,
                                                     const FiniteMetricSpace<Scalar>& b,
                                                     std::size_t max_points = 12) {
  const std::size_t n = a.size();
  if (n != b.size()) return std::nullopt;
  if (n > max_points)
    throw SizeGuardError("isometry search limited to " + std::to_string(max_points) + " points");
  if (norm_total(a) != norm_total(b)) return std::nullopt;

  auto sorted_row = [](const FiniteMetricSpace<Scalar>& m, std::size_t i) {
    std::vector<Scalar> row;
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    std::sort(row.begin(), row.end());
    return row;
  };
  std::vector<std::vector<Scalar>> row_a(n), row_b(n);
  for (std::size_t i = 0; i < n; ++i) {
    row_a[i] = sorted_row(a, i);
    row_b[i] = sorted_row(b, i);
  }
  {
    auto sa = row_a, sb = row_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }

  std::vector<std::size_t> image(n, n);
  std::vector<bool> used(n, false);
  auto assign = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || row_a[i] != row_b[j]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) ok = b(j, image[k]) == a(i, k);
      if (!ok) continue;
      image[i] = j;
      used[j] = true;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  if (!assign(assign, 0)) return std::nullopt;
  return image;
}

/// Closed balls of radius r in an ultrametric space, which partition it.
/// Blocks are ordered by least member.
template <typename Scalar>
std::vector<std::vector<std::size_t>> balls(const FiniteMetricSpace<Scalar>& m, const Scalar& r) {
  detail::require_ultrametric(m);
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<bool> placed(m.size(), false);
  for (std::size_t x = 0; x < m.size(); ++x) {
    if (placed[x]) continue;
    std::vector<std::size_t> block;
    for (std::size_t y = x; y < m.size(); ++y)
      if (!placed[y] && !(m(x, y) > r)) {
        placed[y] = true;
        block.push_back(y);
      }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

}  // namespace phylo
