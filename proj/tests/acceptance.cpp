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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. All checks are exact; seeds are fixed.

#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "oracles.hpp"
#include "phylo/analysis.hpp"
#include "phylo/clade.hpp"
#include "phylo/esequence.hpp"
#include "phylo/generators.hpp"
#include "phylo/metric_space.hpp"
#include "properties.hpp"

namespace {

using namespace phylo;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void check(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

std::vector<VertexId> by_label(const Quiver& q, std::initializer_list<const char*> names) {
  std::vector<VertexId> out;
  for (const char* n : names) out.push_back(q.vertex(n));
  return out;
}

std::string names(const Quiver& q, const std::vector<VertexId>& vs) {
  std::string out = "{";
  for (VertexId v : vs) out += (out.size() > 1 ? "," : "") + q.label(v);
  return out + "}";
}

Outcome g3_exactness() {
  Outcome o;
  Quiver g = gen_g3();
  o.check(heights(g) == HeightTable{0, 1, 2}, "heights differ from (0,1,2)");
  const auto crit_b = critical_ancestors(g, g.vertex("B"));
  const auto crit_c = critical_ancestors(g, g.vertex("C"));
  o.check(crit_b == by_label(g, {"A"}), "critical ancestors of B are " + names(g, crit_b));
  o.check(crit_c == by_label(g, {"A", "B"}), "critical ancestors of C are " + names(g, crit_c));
  for (VertexId v = 0; v < 3; ++v) {
    o.check(is_normal(g, v), g.label(v) + " not normal");
    o.check(phylogenetic_verdict(g, v) == Verdict::kPhylogenetic, g.label(v) + " not phylogenetic");
  }
  auto u = universal_evolution(g, g.vertex("C"));
  o.check(u && std::vector<VertexId>(u->vertices().begin(), u->vertices().end()) ==
                   by_label(g, {"A", "B", "C"}),
          "universal evolution of C is not [A,B,C]");
  return o;
}

Outcome sets_reproduction() {
  Outcome o;
  Quiver set4 = gen_map_quiver(4);
  for (VertexId v = 0; v < set4.vertex_count(); ++v)
    o.check(is_primitive(set4, v), "map quiver vertex not primitive");
  ESequence e = evolutionary_sequence(set4);
  o.check(e.level_count() == 1 && e.width(0) == 1, "map quiver forest is not a single point");

  Quiver s5 = gen_surjection_quiver(5);
  for (VertexId v = 0; v < s5.vertex_count(); ++v) {
    o.check(is_primitive(s5, v) == (s5.label(v) == "[1]"), "surjection primitivity");
    o.check(height(s5, v) <= 1, "surjection height outside {0,1}");
  }
  ESequence f = evolutionary_sequence(s5);
  o.check(f.level_count() == 2 && f.width(0) == 1 && f.width(1) == 4,
          "surjection forest is not a root with 4 leaves");
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::size_t decided = 0, phylogenetic = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Quiver q = gen_random_monotonous({3 + seed % 8, 0.3, 0.3}, 3000 + seed);
    const std::size_t L = 2 * q.vertex_count();
    for (VertexId x = 0; x < q.vertex_count(); ++x) {
      Verdict v = phylogenetic_verdict(q, x);
      if (v == Verdict::kUndecided) continue;
      ++decided;
      const bool verdict = v == Verdict::kPhylogenetic;
      phylogenetic += verdict;
      for (const Evolution& alpha : short_full_evolutions(q, x, 256))
        o.check(verify_universal_bounded(q, alpha, L) == verdict,
                "seed " + std::to_string(seed) + " vertex " + q.label(x));
    }
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(decided) + " vertices, " +
              std::to_string(decided - phylogenetic) + " non-phylogenetic";
  return o;
}

Outcome partial_order_suite() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Quiver q = gen_random_phylogenetic({4 + seed % 7, 0.35, 0.3}, 4000 + seed);
    std::string err = props::class_order_properties(q);
    o.check(err.empty(), "seed " + std::to_string(seed) + ": " + err);
  }
  return o;
}

Outcome realization_round_trip() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    ESequence e = gen_random_esequence({1 + seed % 5, 20, 0.3, false, false}, 5000 + seed);
    std::string err = props::realization_round_trip(e);
    o.check(err.empty(), "seed " + std::to_string(seed) + ": " + err);
  }
  return o;
}

Outcome reconstruction_round_trip() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    ESequence e = gen_random_esequence({1 + seed % 5, 20, 0.4, true, true}, 6000 + seed);
    if (e.width(e.top()) > 32) {
      o.fail("generator exceeded 32 terminal points");
      continue;
    }
    std::string err = props::reconstruction_round_trip(e);
    o.check(err.empty(), "seed " + std::to_string(seed) + ": " + err);
  }
  return o;
}

Outcome ultrametric_height_law() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    MetricSpace x = gen_random_ultrametric(1 + seed % 8, 1 + seed % 4, 7000 + seed);
    auto t = tower_u(x);
    const std::string tag = "seed " + std::to_string(seed);
    o.check(t.length() == n_nonzero(x), tag + ": tower length differs from n_nonzero");
    for (std::size_t k = 0; k < t.length(); ++k) {
      const auto& src = t.spaces[k];
      const auto& tgt = t.spaces[k + 1];
      auto c = classify_map(src, tgt, t.maps[k]);
      o.check(c.kind == MapKind::kContraction && c.epsilon == min_gap(src),
              tag + ": projection is not a |X|-contraction");
      if (tgt.size() >= 2) o.check(norm_total(tgt) < norm_total(src), tag + ": norm not decreasing");
    }
  }
  return o;
}

Outcome drift_tower() {
  Outcome o;
  auto run = [&](const MetricSpace& x, const std::string& tag) {
    auto t = tower_v(x);
    o.check(is_trim(t.spaces.back()), tag + ": terminal space not trim");
    for (std::size_t k = 0; k < t.length(); ++k)
      o.check(is_drift(t.spaces[k], t.spaces[k + 1], t.maps[k]), tag + ": projection not a drift");
    if (x.size() == 2 || x.size() == 3) {
      o.check(!is_trim(x), tag + ": small space reported trim");
      o.check(t.length() == 1 && t.spaces.back().size() == 1, tag + ": not one step to a point");
    }
  };
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    run(gen_random_metric(1 + seed % 8, 8000 + seed), "seed " + std::to_string(seed));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    run(gen_random_metric(2, 8500 + seed), "2-point seed " + std::to_string(seed));
    run(gen_random_metric(3, 8600 + seed), "3-point seed " + std::to_string(seed));
  }
  return o;
}

Outcome clade_suite() {
  Outcome o;
  std::size_t regular = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Quiver q = gen_random_phylogenetic({4 + seed % 7, 0.35, 0.3}, 9000 + seed);
    for (VertexId a = 0; a < q.vertex_count(); ++a) {
      if (!is_regular(q, a)) continue;
      ++regular;
      const std::string tag = "seed " + std::to_string(seed) + " apex " + q.label(a);
      o.check(is_phylogenetic_quiver(clade(q, a).quiver), tag + ": clade not phylogenetic");
      for (VertexId b : descendants(q, a))
        o.check(clade_height(q, a, b) == clade_height_direct(q, a, b),
                tag + ": formula disagrees at " + q.label(b));
    }
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(regular) + " regular apexes";
  return o;
}

Outcome heredity_suite() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Quiver q = gen_random_quiver({3 + seed % 8, 0.25, 0.4}, 10000 + seed);
    const HeightTable h = heights(q);
    const std::string tag = "seed " + std::to_string(seed);
    for (VertexId x = 0; x < q.vertex_count(); ++x) {
      o.check(h[x] < q.vertex_count(), tag + ": height undefined");
      for (VertexId a : ancestors(q, x)) {
        if (is_primitive(q, x)) o.check(is_primitive(q, a), tag + ": primitivity not anti-hereditary");
        if (is_normal(q, x)) o.check(is_normal(q, a), tag + ": normality not anti-hereditary");
        if (h[x] == 0) o.check(h[a] == 0, tag + ": zero height not anti-hereditary");
      }
    }
  }
  // Random walks in monotonous quivers: an evolution from height r to height s
  // has exactly s - r critical vertices.
  std::mt19937_64 rng(11000);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Quiver q = gen_random_monotonous({3 + seed % 8, 0.35, 0.4}, 12000 + seed);
    const HeightTable h = heights(q);
    for (int walk = 0; walk < 10; ++walk) {
      std::vector<VertexId> path{static_cast<VertexId>(rng() % q.vertex_count())};
      const std::size_t steps = rng() % (2 * q.vertex_count());
      for (std::size_t s = 0; s < steps; ++s) {
        auto next = q.successors(path.back());
        if (next.empty()) break;
        path.push_back(next[rng() % next.size()]);
      }
      std::reverse(path.begin(), path.end());
      Evolution evo = validate_evolution(q, path);
      o.check(critical_vertices(q, evo).size() == h[evo.terminal()] - h[evo.initial()],
              "seed " + std::to_string(seed) + ": critical count differs from s - r");
    }
  }
  return o;
}

Outcome forest_metric() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const bool rooted = seed % 2 == 0;
    ESequence e = gen_random_esequence({1 + seed % 5, 10, 0.3, rooted, rooted}, 13000 + seed);
    std::string err = props::forest_metric(e);
    o.check(err.empty(), "seed " + std::to_string(seed) + ": " + err);
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 three-vertex example exactness", g3_exactness},
      {"2 set and surjection quivers", sets_reproduction},
      {"3 verdict agrees with bounded universality oracle", oracle_equivalence},
      {"4 class order and parental maps", partial_order_suite},
      {"5 realization round trip", realization_round_trip},
      {"6 reconstruction round trip", reconstruction_round_trip},
      {"7 ultrametric height law", ultrametric_height_law},
      {"8 drift towers", drift_tower},
      {"9 clades are phylogenetic with predicted heights", clade_suite},
      {"10 hereditary and anti-hereditary properties", heredity_suite},
      {"11 forest metric", forest_metric},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::printf("%s criterion %s%s%s\n", o.pass ? "PASS" : "FAIL", name.c_str(),
                o.detail.empty() ? "" : " -- ", o.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
