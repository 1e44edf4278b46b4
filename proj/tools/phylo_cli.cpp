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

// phylo: command-line front end for quiver, E-sequence and metric-space tools.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "phylo/analysis.hpp"
#include "phylo/clade.hpp"
#include "phylo/error.hpp"
#include "phylo/esequence.hpp"
#include "phylo/generators.hpp"
#include "phylo/io.hpp"
#include "phylo/metric_space.hpp"

namespace {

using namespace phylo;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;
constexpr int kSizeGuard = 3;

struct Options {
  std::string input;
  std::string vertex;
  std::string output;
  std::string format = "json";
  std::string prec;
  std::string kind;
  std::size_t bound = 0;
  std::size_t depth = 0;
  bool depth_set = false;
  std::size_t max_points = 256;
  std::uint64_t seed = 1;
  std::size_t size = 5;
  std::size_t levels = 3;
  double density = 0.25;
  bool raw_order = false;
  bool all_maps = false;
};

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw InputError("cannot write '" + o.output + "'");
  out << text;
}

void emit(const Options& o, const Json& j) { emit(o, j.dump(2) + "\n"); }

bool is_esequence_json(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') return false;
  Json j = Json::parse(text, nullptr, false);
  return j.is_object() && j.contains("levels");
}

MetricSpace load_space(const Options& o) {
  MetricSpace m = parse_distance_csv(read_file(o.input));
  if (m.size() > o.max_points)
    throw SizeGuardError(std::to_string(m.size()) + " points exceed --max-points " +
                         std::to_string(o.max_points));
  return m;
}

int cmd_analyze(const Options& o) {
  Quiver q = parse_quiver(read_file(o.input));
  if (o.format == "dot") {
    emit(o, quiver_to_dot(q));
  } else {
    emit(o, report_to_json(q, analyze(q)));
  }
  return kOk;
}

int cmd_universal(const Options& o) {
  Quiver q = parse_quiver(read_file(o.input));
  VertexId x = q.vertex(o.vertex);
  Verdict v = phylogenetic_verdict(q, x);
  Json out{{"vertex", o.vertex}, {"verdict", to_string(v)}};
  std::optional<Evolution> universal;
  if (v == Verdict::kPhylogenetic) universal = universal_evolution(q, x);
  out["universal"] = universal ? evolution_to_json(q, *universal) : Json(nullptr);
  if (o.bound > 0) {
    // A candidate exists even when undecided: test the least short evolution.
    Evolution candidate = universal ? *universal : least_short_full_evolution(q, x);
    out["bounded_check"] = Json{{"bound", o.bound},
                                {"candidate", evolution_to_json(q, candidate)},
                                {"holds", verify_universal_bounded(q, candidate, o.bound)}};
  }
  emit(o, out);
  return kOk;
}

int cmd_clade(const Options& o) {
  Quiver q = parse_quiver(read_file(o.input));
  emit(o, clade_to_json(q, q.vertex(o.vertex)));
  return kOk;
}

int cmd_esequence(const Options& o) {
  Quiver q = parse_quiver(read_file(o.input));
  emit(o, esequence_to_json(evolutionary_sequence(q)));
  return kOk;
}

int cmd_forest(const Options& o) {
  const std::string text = read_file(o.input);
  ESequence e = is_esequence_json(text) ? parse_esequence_json(text)
                                        : evolutionary_sequence(parse_quiver(text));
  Forest f = build_forest(e);
  if (o.format == "newick") {
    emit(o, forest_to_newick(f));
  } else if (o.format == "json") {
    Json out{{"roots", f.root_count()}, {"dot", forest_to_dot(f)}};
    out["newick"] = f.is_tree() ? Json(forest_to_newick(f)) : Json(nullptr);
    emit(o, out);
  } else {
    emit(o, forest_to_dot(f));
  }
  return kOk;
}

std::size_t depth_of(const Options& o, const MetricSpace& rho) {
  if (o.depth_set) return o.depth;
  auto values = distance_values(rho);
  if (values.empty()) return 0;
  const Rational& top = values.back();
  if (top.get_den() != 1) throw InputError("distances must be integers; pass --depth explicitly");
  return top.get_num().get_ui();
}

Relation load_prec(const Options& o, const MetricSpace& rho) {
  if (o.prec.empty() || o.prec == "empty") return Relation(rho.size());
  return parse_prec_pairs(read_file(o.prec), rho);
}

int cmd_reconstruct(const Options& o) {
  MetricSpace rho = load_space(o);
  emit(o, esequence_to_json(reconstruct(rho, load_prec(o, rho), depth_of(o, rho))));
  return kOk;
}

int cmd_ultra_tower(const Options& o) {
  emit(o, tower_to_json(tower_u(load_space(o))));
  return kOk;
}

int cmd_metric_tower(const Options& o) {
  emit(o, tower_to_json(tower_v(load_space(o))));
  return kOk;
}

int cmd_gen(const Options& o) {
  const std::string& k = o.kind;
  auto quiver_out = [&](const Quiver& q) {
    if (o.format == "dot")
      emit(o, quiver_to_dot(q));
    else
      emit(o, quiver_to_json(q));
    return kOk;
  };
  auto space_out = [&](const MetricSpace& m) {
    if (o.format == "csv")
      emit(o, distance_csv(m));
    else
      emit(o, space_to_json(m));
    return kOk;
  };
  RandomQuiverOptions rq{o.size, o.density, 1.0};
  if (k == "map-quiver") return quiver_out(gen_map_quiver(o.size, o.all_maps));
  if (k == "surjection-quiver") return quiver_out(gen_surjection_quiver(o.size, o.all_maps));
  if (k == "rooted-tree") {
    std::mt19937_64 rng(o.seed);
    std::vector<std::pair<std::string, std::string>> tree;
    for (std::size_t i = 1; i < o.size; ++i)
      tree.emplace_back("t" + std::to_string(i), "t" + std::to_string(rng() % i));
    return quiver_out(gen_rooted_tree_quiver(tree, "t0"));
  }
  if (k == "g3") return quiver_out(gen_g3());
  if (k == "abnormal") return quiver_out(gen_abnormal());
  if (k == "nonmonotonous") return quiver_out(gen_nonmonotonous());
  if (k == "irregular") return quiver_out(gen_irregular());
  if (k == "random-quiver") return quiver_out(gen_random_quiver(rq, o.seed));
  if (k == "random-monotonous") return quiver_out(gen_random_monotonous(rq, o.seed));
  if (k == "random-phylogenetic") return quiver_out(gen_random_phylogenetic(rq, o.seed));
  if (k == "random-ultrametric")
    return space_out(gen_random_ultrametric(o.size, o.levels, o.seed));
  if (k == "random-metric") return space_out(gen_random_metric(o.size, o.seed));
  if (k == "random-esequence") {
    RandomESequenceOptions eo;
    eo.levels = o.levels;
    eo.max_width = o.size;
    eo.order_density = o.density;
    emit(o, esequence_to_json(gen_random_esequence(eo, o.seed)));
    return kOk;
  }
  throw CLI::ValidationError("gen", "unknown kind '" + k + "'");
}

int cmd_validate(const Options& o) {
  const std::string text = read_file(o.input);
  Json out;
  bool ok = true;
  auto first = text.find_first_not_of(" \t\r\n");
  if (is_esequence_json(text)) {
    ESequence e = parse_esequence_json(text, !o.raw_order);
    auto problems = validate_esequence(e);
    ok = problems.empty();
    out = Json{{"type", "esequence"}, {"valid", ok}, {"violations", problems}};
  } else if (first != std::string::npos &&
             (text[first] == '{' || text.compare(first, 7, "digraph") == 0 ||
              text.compare(first, 6, "strict") == 0)) {
    Quiver q = parse_quiver(text);
    AnalysisReport r = analyze(q);
    out = Json{{"type", "quiver"},
               {"valid", true},
               {"vertices", q.vertex_count()},
               {"edges", q.edge_count()},
               {"monotonous", r.monotonous},
               {"phylogenetic_quiver", r.phylogenetic_quiver}};
  } else {
    MetricSpace m = load_space(o);
    SpaceValidity v = validate_space(m);
    ok = v.is_metric;
    out = Json{{"type", "distance-matrix"},
               {"valid", ok},
               {"metric", v.is_metric},
               {"ultrametric", v.is_ultrametric}};
    if (v.is_ultrametric && (o.depth_set || !o.prec.empty())) {
      auto problems = validate_prec(m, load_prec(o, m), depth_of(o, m));
      ok = ok && problems.empty();
      out["valid"] = ok;
      out["prec_violations"] = problems;
    } else if (v.is_metric && m.size() > 0) {
      out["trim"] = is_trim(m);
    }
  }
  emit(o, out);
  return ok ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phylo: phylogenetic quivers, E-sequences and metric-space towers"};
  app.require_subcommand(1);
  app.footer(
      "Quivers are JSON {\"vertices\": [...], \"edges\": [[tail, head], ...]} or DOT digraphs,\n"
      "edges pointing descendant -> ancestor. Distance matrices are CSV with a header row\n"
      "of labels and exact entries (integers, p/q, decimals). Newick output gives every\n"
      "parent edge branch length 1.\n"
      "Exit status: 0 success, 1 validation failure or malformed input, 2 usage error,\n"
      "3 size guard.");
  Options o;

  auto output = [&](CLI::App* sub) { sub->add_option("-o,--output", o.output, "Write to file"); };
  auto input = [&](CLI::App* sub, const char* what) {
    sub->add_option("input", o.input, what)->required()->check(CLI::ExistingFile);
  };
  auto max_points = [&](CLI::App* sub) {
    sub->add_option("--max-points", o.max_points, "Refuse larger distance matrices (exit 3)")
        ->capture_default_str();
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Per-vertex report for a quiver");
  input(analyze_cmd, "Quiver file");
  analyze_cmd->add_option("--format", o.format, "json or dot")
      ->check(CLI::IsMember({"json", "dot"}))
      ->capture_default_str();
  output(analyze_cmd);

  auto* universal_cmd = app.add_subcommand("universal", "Universal evolution of a vertex");
  input(universal_cmd, "Quiver file");
  universal_cmd->add_option("vertex", o.vertex, "Vertex label")->required();
  universal_cmd->add_option("--bound", o.bound,
                            "Also check the candidate against all full evolutions of length <= L");
  output(universal_cmd);

  auto* clade_cmd = app.add_subcommand("clade", "Clade report of a vertex");
  input(clade_cmd, "Quiver file");
  clade_cmd->add_option("vertex", o.vertex, "Apex label")->required();
  output(clade_cmd);

  auto* eseq_cmd = app.add_subcommand("esequence", "Evolutionary sequence of a phylogenetic quiver");
  input(eseq_cmd, "Quiver file");
  output(eseq_cmd);

  auto* forest_cmd = app.add_subcommand("forest", "Evolutionary forest (DOT, Newick or JSON)");
  input(forest_cmd, "Quiver or E-sequence JSON file");
  forest_cmd->add_option("--format", o.format, "dot, newick (single root only) or json")
      ->check(CLI::IsMember({"json", "dot", "newick"}));
  output(forest_cmd);

  auto* rec_cmd = app.add_subcommand("reconstruct", "Rebuild an E-sequence from rho and prec");
  input(rec_cmd, "Distance matrix CSV");
  rec_cmd->add_option("--prec", o.prec, "File of pairs 'a,b' (a precedes b), or 'empty'");
  rec_cmd->add_option("--depth", o.depth, "Top level N (default: largest distance)")
      ->each([&](const std::string&) { o.depth_set = true; });
  max_points(rec_cmd);
  output(rec_cmd);

  auto* ut_cmd = app.add_subcommand("ultra-tower", "Tower of u-quotients of an ultrametric space");
  input(ut_cmd, "Distance matrix CSV");
  max_points(ut_cmd);
  output(ut_cmd);

  auto* mt_cmd = app.add_subcommand("metric-tower", "Tower of drift quotients of a metric space");
  input(mt_cmd, "Distance matrix CSV");
  max_points(mt_cmd);
  output(mt_cmd);

  auto* gen_cmd = app.add_subcommand("gen", "Emit a fixture or random instance");
  gen_cmd
      ->add_option("kind", o.kind,
                   "map-quiver, surjection-quiver, rooted-tree, g3, abnormal, nonmonotonous, "
                   "irregular, random-quiver, random-monotonous, random-phylogenetic, "
                   "random-ultrametric, random-metric, random-esequence")
      ->required();
  gen_cmd->add_option("-n,--size", o.size, "Vertices, points or maximum level width")
      ->capture_default_str();
  gen_cmd->add_option("--levels", o.levels, "Levels (E-sequences) or depth (ultrametrics)")
      ->capture_default_str();
  gen_cmd->add_option("--density", o.density, "Edge or order density")->capture_default_str();
  gen_cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--format", o.format, "json, dot (quivers) or csv (spaces)")
      ->check(CLI::IsMember({"json", "dot", "csv"}));
  gen_cmd->add_flag("--all-maps", o.all_maps, "One edge per map instead of per pair (n <= 5)");
  output(gen_cmd);

  auto* val_cmd = app.add_subcommand("validate", "Run every applicable validator (exit 1 on failure)");
  input(val_cmd, "Quiver, E-sequence JSON or distance matrix CSV");
  val_cmd->add_option("--prec", o.prec, "Also check a prec pair list against the matrix");
  val_cmd->add_option("--depth", o.depth, "N for the prec check")
      ->each([&](const std::string&) { o.depth_set = true; });
  val_cmd->add_flag("--raw-order", o.raw_order, "Do not close E-sequence orders transitively");
  max_points(val_cmd);
  output(val_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(o);
    if (universal_cmd->parsed()) return cmd_universal(o);
    if (clade_cmd->parsed()) return cmd_clade(o);
    if (eseq_cmd->parsed()) return cmd_esequence(o);
    if (forest_cmd->parsed()) {
      if (o.format == "json" && forest_cmd->count("--format") == 0) o.format = "dot";
      return cmd_forest(o);
    }
    if (rec_cmd->parsed()) return cmd_reconstruct(o);
    if (ut_cmd->parsed()) return cmd_ultra_tower(o);
    if (mt_cmd->parsed()) return cmd_metric_tower(o);
    if (gen_cmd->parsed()) return cmd_gen(o);
    if (val_cmd->parsed()) return cmd_validate(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "phylo: " << e.what() << "\n";
    return kUsage;
  } catch (const SizeGuardError& e) {
    std::cerr << "phylo: size guard: " << e.what() << "\n";
    return kSizeGuard;
  } catch (const Error& e) {
    std::cerr << "phylo: " << e.what() << "\n";
    return kInvalid;
  }
  return kUsage;
}
