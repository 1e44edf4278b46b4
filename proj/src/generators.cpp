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

#include "phylo/generators.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "phylo/analysis.hpp"
#include "phylo/error.hpp"

namespace phylo {
namespace {

using Rng = std::mt19937_64;

// Raw draws keep output identical across standard libraries.
std::size_t draw(Rng& rng, std::size_t bound) { return static_cast<std::size_t>(rng() % bound); }
double unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[draw(rng, i)]);
}

std::string set_label(std::size_t k) { return "[" + std::to_string(k) + "]"; }

Quiver sets_quiver(std::size_t n, bool all_maps, bool surjective_only) {
  if (n == 0) throw InputError("need at least one set");
  if (all_maps && n > 5) throw SizeGuardError("all-maps mode is limited to n <= 5");
  std::vector<std::string> labels;
  for (std::size_t k = 1; k <= n; ++k) labels.push_back(set_label(k));
  std::vector<Edge> edges;
  std::vector<std::string> edge_labels;
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t j = 1; j <= n; ++j) {
      if (surjective_only && j > k) continue;
      if (!all_maps) {
        edges.push_back({k - 1, j - 1});
        continue;
      }
      std::vector<std::size_t> f(k, 1);
      for (;;) {
        std::vector<bool> hit(j + 1, false);
        for (std::size_t y : f) hit[y] = true;
        if (!surjective_only || std::count(hit.begin() + 1, hit.end(), true) == static_cast<long>(j)) {
          std::string name;
          for (std::size_t y : f) name += (name.empty() ? "" : ",") + std::to_string(y);
          edges.push_back({k - 1, j - 1});
          edge_labels.push_back(set_label(k) + "->" + set_label(j) + ":" + name);
        }
        std::size_t pos = 0;
        while (pos < k && f[pos] == j) f[pos++] = 1;
        if (pos == k) break;
        ++f[pos];
      }
    }
  return Quiver(std::move(labels), std::move(edges), std::move(edge_labels));
}

}  // namespace

Quiver gen_map_quiver(std::size_t n, bool all_maps) { return sets_quiver(n, all_maps, false); }

Quiver gen_surjection_quiver(std::size_t n, bool all_maps) {
  return sets_quiver(n, all_maps, true);
}

Quiver gen_rooted_tree_quiver(const std::vector<std::pair<std::string, std::string>>& tree,
                              const std::string& root) {
  std::vector<std::string> labels{root};
  std::map<std::string, std::size_t> id{{root, 0}};
  auto intern = [&](const std::string& l) {
    auto [it, fresh] = id.emplace(l, labels.size());
    if (fresh) labels.push_back(l);
    return it->second;
  };
  std::vector<std::vector<std::size_t>> adj;
  for (const auto& [a, b] : tree) {
    std::size_t x = intern(a), y = intern(b);
    if (x == y) throw InputError("tree edge '" + a + "' -- '" + b + "' is a loop");
    adj.resize(labels.size());
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  adj.resize(labels.size());
  if (tree.size() + 1 != labels.size())
    throw InputError("a tree on " + std::to_string(labels.size()) + " vertices needs " +
                     std::to_string(labels.size() - 1) + " edges");
  std::vector<std::size_t> parent(labels.size(), labels.size());
  std::vector<std::size_t> queue{0};
  parent[0] = 0;
  for (std::size_t at = 0; at < queue.size(); ++at)
    for (std::size_t w : adj[queue[at]])
      if (parent[w] == labels.size()) {
        parent[w] = queue[at];
        queue.push_back(w);
      }
  if (queue.size() != labels.size()) throw InputError("tree edges are not connected");
  std::vector<Edge> edges;
  for (const auto& [a, b] : tree) {
    std::size_t x = id[a], y = id[b];
    edges.push_back(parent[x] == y ? Edge{x, y} : Edge{y, x});
  }
  return Quiver(std::move(labels), std::move(edges));
}

Quiver gen_g3() { return Quiver::from_labels({"A", "B", "C"}, {{"B", "A"}, {"B", "C"}, {"C", "B"}}); }

Quiver gen_abnormal() {
  return Quiver::from_labels({"P1", "P2", "Q1", "Q2", "R"},
                             {{"Q1", "P1"}, {"Q2", "P2"}, {"R", "Q1"}, {"R", "Q2"}});
}

Quiver gen_nonmonotonous() {
  return Quiver::from_labels({"P", "Q", "R", "S"},
                             {{"Q", "P"}, {"R", "Q"}, {"S", "R"}, {"S", "P"}});
}

Quiver gen_irregular() {
  return Quiver::from_labels({"P", "Q", "S", "R"},
                             {{"Q", "P"}, {"S", "Q"}, {"S", "P"}, {"R", "S"}, {"R", "P"}});
}

Quiver gen_random_quiver(const RandomQuiverOptions& options, std::uint64_t seed) {
  if (options.vertices == 0) throw InputError("need at least one vertex");
  if (!(options.density >= 0 && options.density <= 1) || !(options.back_ratio >= 0))
    throw InputError("density must lie in [0, 1] and back_ratio must be non-negative");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < options.vertices; ++i)
    for (std::size_t j = 0; j < options.vertices; ++j) {
      double p = i > j ? options.density : options.density * options.back_ratio;
      if (unit(rng) < p) edges.push_back({i, j});
    }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < options.vertices; ++i) labels.push_back("v" + std::to_string(i));
  return Quiver(std::move(labels), std::move(edges));
}

Quiver gen_random_monotonous(const RandomQuiverOptions& options, std::uint64_t seed) {
  return monotonize(gen_random_quiver(options, seed));
}

Quiver gen_random_phylogenetic(const RandomQuiverOptions& options, std::uint64_t seed) {
  Rng derive(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Quiver core = phylogenetic_core(gen_random_monotonous(options, derive()));
    if (is_phylogenetic_quiver(core)) return core;
  }
  throw Error("no phylogenetic quiver found within the retry cap");
}

namespace {

Rational half(std::size_t k) {
  Rational r(static_cast<long>(k), 2);
  r.canonicalize();
  return r;
}

}  // namespace

MetricSpace gen_random_ultrametric(std::size_t n, std::size_t depth, std::uint64_t seed) {
  if (n == 0) throw InputError("need at least one point");
  if (depth == 0 && n > 1) throw InputError("more than one point needs depth >= 1");
  Rng rng(seed);
  // block[k][x]: cluster of x after merge level k; level 0 is all singletons,
  // level `depth` is a single cluster.
  std::vector<std::vector<std::size_t>> block(depth + 1, std::vector<std::size_t>(n));
  std::fill(block[depth].begin(), block[depth].end(), 0);
  for (std::size_t k = depth; k-- > 1;) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> fresh;
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t piece = draw(rng, 3);
      block[k][x] = fresh.emplace(std::pair{block[k + 1][x], piece}, fresh.size()).first->second;
    }
  }
  std::iota(block[0].begin(), block[0].end(), 0);
  std::vector<Rational> value(depth + 1, Rational(0));
  for (std::size_t k = 1; k <= depth; ++k)
    value[k] = value[k - 1] + half(1 + draw(rng, 4));

  MetricSpace::Matrix d(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < n; ++x) {
    labels.push_back("p" + std::to_string(x));
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t k = 0;
      while (block[k][x] != block[k][y]) ++k;
      d(x, y) = value[k];
    }
  }
  return MetricSpace(std::move(labels), std::move(d));
}

MetricSpace gen_random_metric(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InputError("need at least one point");
  constexpr int kTries = 200;
  Rng rng(seed);
  MetricSpace::Matrix d = MetricSpace::Matrix::Constant(n, n, Rational(0));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      bool placed = false;
      for (int t = 0; t < kTries && !placed; ++t) {
        Rational v = half(2 + draw(rng, 7));
        placed = true;
        for (std::size_t z = 0; z < x && placed; ++z) {
          const Rational& a = d(x, z);
          const Rational& b = d(z, y);
          placed = v <= a + b && a <= v + b && b <= v + a;
        }
        if (placed) d(x, y) = d(y, x) = v;
      }
      if (!placed) throw Error("random metric: retry cap reached");
    }
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < n; ++x) labels.push_back("p" + std::to_string(x));
  return MetricSpace(std::move(labels), std::move(d));
}

ESequence gen_random_esequence(const RandomESequenceOptions& options, std::uint64_t seed) {
  if (options.levels == 0 || options.max_width == 0)
    throw InputError("need at least one level and positive width");
  if (!(options.order_density >= 0 && options.order_density <= 1))
    throw InputError("order density must lie in [0, 1]");
  Rng rng(seed);
  std::vector<std::vector<std::string>> levels(options.levels);
  std::vector<std::vector<std::size_t>> parents(options.levels);
  std::vector<Relation> orders;
  for (std::size_t m = 0; m < options.levels; ++m) {
    std::size_t width;
    if (m == 0) {
      width = options.single_root ? 1 : 1 + draw(rng, options.max_width);
    } else {
      std::size_t lo = options.surjective ? levels[m - 1].size() : 1;
      width = lo + draw(rng, options.max_width - lo + 1);
      std::vector<std::size_t> p(width);
      for (std::size_t i = 0; i < width; ++i)
        p[i] = options.surjective && i < lo ? i : draw(rng, levels[m - 1].size());
      shuffle(p, rng);
      parents[m] = std::move(p);
    }
    for (std::size_t i = 0; i < width; ++i)
      levels[m].push_back("e" + std::to_string(m) + "_" + std::to_string(i));

    Relation r(width);
    if (m > 0) {
      std::map<std::size_t, std::vector<std::size_t>> fibre;
      for (std::size_t i = 0; i < width; ++i) fibre[parents[m][i]].push_back(i);
      for (auto& [par, members] : fibre) {
        shuffle(members, rng);
        for (std::size_t a = 0; a < members.size(); ++a)
          for (std::size_t b = a + 1; b < members.size(); ++b)
            if (unit(rng) < options.order_density) r.add(members[a], members[b]);
      }
    }
    orders.push_back(r.transitive_closure());
  }
  return ESequence(std::move(levels), std::move(parents), std::move(orders));
}

}  // namespace phylo
