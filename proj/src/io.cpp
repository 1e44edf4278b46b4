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

#include "phylo/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "phylo/clade.hpp"
#include "phylo/error.hpp"
#include "phylo/rational.hpp"

namespace phylo {
namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    if (auto cut = what.find("syntax error"); cut != std::string::npos) what = what.substr(cut);
    throw ParseError(what, line, column);
  }
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) throw InputError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> sorted_labels(const Quiver& q, std::vector<VertexId> ids) {
  std::vector<std::string> out;
  for (VertexId v : ids) out.push_back(q.label(v));
  std::sort(out.begin(), out.end());
  return out;
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

// Tokenizer for the DOT subset: identifiers, numerals, quoted strings and the
// punctuation -> { } [ ] ; , =.
class DotLexer {
 public:
  explicit DotLexer(std::string_view text) : text_(text) {}

  struct Token {
    enum Kind { kId, kPunct, kEnd } kind;
    std::string text;
    std::size_t offset;
  };

  Token next() {
    skip();
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) return {Token::kEnd, "", start};
    char ch = text_[pos_];
    if (ch == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      pos_ += 2;
      return {Token::kPunct, "->", start};
    }
    if (ch == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-')
      fail("undirected edge '--' in a digraph", start);
    if (std::string_view("{}[];,=").find(ch) != std::string_view::npos) {
      ++pos_;
      return {Token::kPunct, std::string(1, ch), start};
    }
    if (ch == '"') {
      std::string s;
      ++pos_;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size() &&
            (text_[pos_ + 1] == '"' || text_[pos_ + 1] == '\\'))
          ++pos_;
        s += text_[pos_++];
      }
      if (pos_ >= text_.size()) fail("unterminated string", start);
      ++pos_;
      return {Token::kId, s, start};
    }
    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.' || ch == '-' ||
        static_cast<unsigned char>(ch) >= 0x80) {
      while (pos_ < text_.size()) {
        unsigned char c = static_cast<unsigned char>(text_[pos_]);
        if (!(std::isalnum(c) || c == '_' || c == '.' || c >= 0x80)) break;
        ++pos_;
      }
      if (pos_ == start + 1 && ch == '-') fail("unexpected '-'", start);
      return {Token::kId, std::string(text_.substr(start, pos_ - start)), start};
    }
    fail(std::string("unexpected character '") + ch + "'", start);
  }

  [[noreturn]] void fail(const std::string& what, std::size_t offset) const {
    auto [line, column] = line_column(text_, offset);
    throw ParseError(what, line, column);
  }

 private:
  void skip() {
    for (;;) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (text_.substr(pos_, 2) == "//" ||
          (pos_ < text_.size() && text_[pos_] == '#' && (pos_ == 0 || text_[pos_ - 1] == '\n'))) {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (text_.substr(pos_, 2) == "/*") {
        auto end = text_.find("*/", pos_ + 2);
        if (end == std::string_view::npos) fail("unterminated comment", pos_);
        pos_ = end + 2;
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string newick_name(const std::string& s) {
  if (s.find_first_of(" \t\n()[]':;,") == std::string::npos && !s.empty()) return s;
  std::string out = "'";
  for (char ch : s) {
    if (ch == '\'') out += '\'';
    out += ch;
  }
  return out + "'";
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Cell {
  std::string text;
  std::size_t column;
};

std::vector<Cell> split_csv(std::string_view line) {
  std::vector<Cell> cells;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = line.find(',', start);
    std::string_view raw = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
    std::size_t lead = 0;
    while (lead < raw.size() && std::isspace(static_cast<unsigned char>(raw[lead]))) ++lead;
    std::string_view t = trim(raw);
    if (t.size() >= 2 && t.front() == '"' && t.back() == '"') t = t.substr(1, t.size() - 2);
    cells.push_back({std::string(t), start + lead + 1});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Quiver parse_quiver_json(std::string_view text) {
  const Json j = parse_json(text);
  const Json& vs = member(j, "vertices");
  const Json& es = member(j, "edges");
  if (!vs.is_array() || !es.is_array()) throw InputError("vertices and edges must be arrays");
  std::vector<std::string> labels;
  for (const auto& v : vs) labels.push_back(as_string(v, "vertex"));
  std::map<std::string, VertexId> id;
  for (std::size_t i = 0; i < labels.size(); ++i) id.emplace(labels[i], i);
  std::vector<Edge> edges;
  std::vector<std::string> edge_labels;
  bool any_label = false;
  for (const auto& e : es) {
    if (!e.is_array() || e.size() < 2 || e.size() > 3)
      throw InputError("each edge must be [tail, head] or [tail, head, label]");
    std::string tail = as_string(e[0], "edge tail"), head = as_string(e[1], "edge head");
    if (!id.count(tail)) throw InputError("edge tail '" + tail + "' is not a vertex");
    if (!id.count(head)) throw InputError("edge head '" + head + "' is not a vertex");
    edges.push_back({id[tail], id[head]});
    edge_labels.push_back(e.size() == 3 ? as_string(e[2], "edge label") : "");
    any_label = any_label || e.size() == 3;
  }
  if (!any_label) edge_labels.clear();
  return Quiver(std::move(labels), std::move(edges), std::move(edge_labels));
}

Quiver parse_quiver_dot(std::string_view text) {
  DotLexer lex(text);
  using Tok = DotLexer::Token;
  Tok t = lex.next();
  if (t.kind == Tok::kId && lower(t.text) == "strict") t = lex.next();
  if (t.kind != Tok::kId || lower(t.text) != "digraph") lex.fail("expected 'digraph'", t.offset);
  t = lex.next();
  if (t.kind == Tok::kId) t = lex.next();
  if (t.text != "{") lex.fail("expected '{'", t.offset);

  std::vector<std::string> labels;
  std::map<std::string, VertexId> id;
  std::vector<Edge> edges;
  std::vector<std::string> edge_labels;
  bool any_label = false;
  auto intern = [&](const std::string& l) {
    auto [it, fresh] = id.emplace(l, labels.size());
    if (fresh) labels.push_back(l);
    return it->second;
  };
  // Reads "[k=v, ...]" after the opening bracket; returns the label, if any.
  auto attributes = [&]() {
    std::optional<std::string> label;
    for (;;) {
      Tok k = lex.next();
      if (k.text == "]" && k.kind == Tok::kPunct) return label;
      if (k.kind == Tok::kPunct && (k.text == "," || k.text == ";")) continue;
      if (k.kind != Tok::kId) lex.fail("expected attribute name", k.offset);
      Tok eq = lex.next();
      if (eq.text != "=") lex.fail("expected '='", eq.offset);
      Tok v = lex.next();
      if (v.kind != Tok::kId) lex.fail("expected attribute value", v.offset);
      if (k.text == "label") label = v.text;
    }
  };

  t = lex.next();
  for (;;) {
    if (t.kind == Tok::kEnd) lex.fail("missing '}'", t.offset);
    if (t.kind == Tok::kPunct && t.text == "}") break;
    if (t.kind == Tok::kPunct && t.text == ";") {
      t = lex.next();
      continue;
    }
    if (t.kind != Tok::kId) lex.fail("expected a statement", t.offset);
    const std::string keyword = lower(t.text);
    if (keyword == "subgraph") lex.fail("subgraphs are not supported", t.offset);
    Tok after = lex.next();
    if ((keyword == "graph" || keyword == "node" || keyword == "edge") && after.text == "[") {
      attributes();
      t = lex.next();
      continue;
    }
    if (after.kind == Tok::kPunct && after.text == "=") {
      Tok v = lex.next();
      if (v.kind != Tok::kId) lex.fail("expected a value", v.offset);
      t = lex.next();
      continue;
    }
    std::vector<VertexId> chain{intern(t.text)};
    while (after.kind == Tok::kPunct && after.text == "->") {
      Tok v = lex.next();
      if (v.kind != Tok::kId) lex.fail("expected a vertex after '->'", v.offset);
      chain.push_back(intern(v.text));
      after = lex.next();
    }
    std::optional<std::string> label;
    if (after.kind == Tok::kPunct && after.text == "[") {
      label = attributes();
      after = lex.next();
    }
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      edges.push_back({chain[k], chain[k + 1]});
      edge_labels.push_back(label.value_or(""));
      any_label = any_label || label.has_value();
    }
    t = after;
  }
  Tok rest = lex.next();
  if (rest.kind != Tok::kEnd) lex.fail("trailing input after '}'", rest.offset);
  if (!any_label) edge_labels.clear();
  return Quiver(std::move(labels), std::move(edges), std::move(edge_labels));
}

Quiver parse_quiver(std::string_view text) {
  std::string_view s = trim(text);
  return !s.empty() && s.front() == '{' ? parse_quiver_json(text) : parse_quiver_dot(text);
}

Json quiver_to_json(const Quiver& q) {
  Json edges = Json::array();
  for (EdgeId e = 0; e < q.edge_count(); ++e) {
    Json pair = {q.label(q.edge(e).tail), q.label(q.edge(e).head)};
    if (q.has_edge_labels()) pair.push_back(q.edge_label(e));
    edges.push_back(std::move(pair));
  }
  return Json{{"vertices", q.labels()}, {"edges", std::move(edges)}};
}

std::string quiver_to_dot(const Quiver& q) {
  std::string out = "digraph quiver {\n";
  for (const auto& l : q.labels()) out += "  " + dot_quote(l) + ";\n";
  for (EdgeId e = 0; e < q.edge_count(); ++e) {
    out += "  " + dot_quote(q.label(q.edge(e).tail)) + " -> " + dot_quote(q.label(q.edge(e).head));
    if (q.has_edge_labels()) out += " [label=" + dot_quote(q.edge_label(e)) + "]";
    out += ";\n";
  }
  return out + "}\n";
}

Json evolution_to_json(const Quiver& q, const Evolution& evo) {
  Json out = Json::array();
  for (VertexId v : evo.vertices()) out.push_back(q.label(v));
  return out;
}

Json report_to_json(const Quiver& q, const AnalysisReport& report) {
  Json vertices = Json::array();
  for (const auto& v : report.vertices) {
    Json phylogenetic = v.phylogenetic == Verdict::kUndecided
                            ? Json(nullptr)
                            : Json(v.phylogenetic == Verdict::kPhylogenetic);
    vertices.push_back(Json{{"label", v.label},
                            {"primitive", v.primitive},
                            {"height", v.height},
                            {"normal", v.normal},
                            {"phylogenetic", std::move(phylogenetic)},
                            {"verdict", to_string(v.phylogenetic)},
                            {"isotypy_class", v.isotypy_class},
                            {"critical_ancestors", sorted_labels(q, v.critical_ancestors)}});
  }
  return Json{{"monotonous", report.monotonous},
              {"phylogenetic_quiver", report.phylogenetic_quiver},
              {"isotypy_classes", report.isotypy_class_count},
              {"vertices", std::move(vertices)}};
}

Json clade_to_json(const Quiver& q, VertexId apex) {
  const Clade c = clade(q, apex);
  const HeightTable inner = c.heights();
  const HeightTable outer = heights(q);
  Json members = Json::array(), h_a = Json::object(), h = Json::object();
  std::vector<std::pair<std::string, std::size_t>> rows;
  for (std::size_t i = 0; i < c.host_vertex.size(); ++i)
    rows.emplace_back(q.label(c.host_vertex[i]), i);
  std::sort(rows.begin(), rows.end());
  for (const auto& [label, i] : rows) {
    members.push_back(label);
    h_a[label] = inner[i];
    h[label] = outer[c.host_vertex[i]];
  }
  return Json{{"apex", q.label(apex)},
              {"regular", is_regular(q, apex)},
              {"members", std::move(members)},
              {"clade_heights", std::move(h_a)},
              {"host_heights", std::move(h)},
              {"phylogenetic_clade", is_phylogenetic_quiver(c.quiver)}};
}

Json esequence_to_json(const ESequence& e) {
  Json levels = Json::array();
  std::map<std::string, std::string> parent;
  std::vector<std::pair<std::string, std::string>> order;
  for (std::size_t m = 0; m < e.level_count(); ++m) {
    std::vector<std::string> names = e.level(m);
    std::sort(names.begin(), names.end());
    levels.push_back(names);
    for (std::size_t i = 0; i < e.width(m); ++i) {
      if (m > 0) parent[e.level(m)[i]] = e.level(m - 1)[e.parent(m, i)];
      for (std::size_t j = 0; j < e.width(m); ++j)
        if (e.less(m, i, j)) order.emplace_back(e.level(m)[i], e.level(m)[j]);
    }
  }
  std::sort(order.begin(), order.end());
  Json parent_json = Json::object();
  for (const auto& [child, par] : parent) parent_json[child] = par;
  Json order_json = Json::array();
  for (const auto& [a, b] : order) order_json.push_back({a, b});
  return Json{{"levels", std::move(levels)},
              {"parent", std::move(parent_json)},
              {"order", std::move(order_json)}};
}

ESequence parse_esequence_json(std::string_view text, bool close_orders) {
  const Json j = parse_json(text);
  const Json& lv = member(j, "levels");
  if (!lv.is_array()) throw InputError("levels must be an array of arrays");
  std::vector<std::vector<std::string>> levels;
  for (const auto& level : lv) {
    if (!level.is_array()) throw InputError("levels must be an array of arrays");
    std::vector<std::string> names;
    for (const auto& x : level) names.push_back(as_string(x, "element"));
    levels.push_back(std::move(names));
  }
  std::vector<std::pair<std::string, std::string>> parent, order;
  if (j.contains("parent")) {
    if (!j["parent"].is_object()) throw InputError("parent must be an object");
    for (const auto& [child, par] : j["parent"].items())
      parent.emplace_back(child, as_string(par, "parent"));
  }
  if (j.contains("order")) {
    if (!j["order"].is_array()) throw InputError("order must be an array of pairs");
    for (const auto& pair : j["order"]) {
      if (!pair.is_array() || pair.size() != 2) throw InputError("order entries must be pairs");
      order.emplace_back(as_string(pair[0], "order element"), as_string(pair[1], "order element"));
    }
  }
  return ESequence::from_labels(std::move(levels), parent, order, close_orders);
}

std::string forest_to_dot(const Forest& f) {
  const ESequence& e = f.sequence();
  std::string out = "digraph forest {\n";
  for (std::size_t m = 0; m < e.level_count(); ++m) {
    std::vector<std::size_t> idx(e.width(m));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return e.level(m)[a] < e.level(m)[b]; });
    for (std::size_t i : idx) {
      out += "  " + dot_quote(e.level(m)[i]);
      if (m > 0) out += " -> " + dot_quote(e.level(m - 1)[e.parent(m, i)]);
      out += ";\n";
    }
  }
  return out + "}\n";
}

std::string forest_to_newick(const Forest& f) {
  if (!f.is_tree()) throw PreconditionError("Newick export needs a single root");
  const ESequence& e = f.sequence();
  auto render = [&](auto&& self, std::size_t m, std::size_t i) -> std::string {
    std::vector<std::pair<std::string, std::size_t>> kids;
    if (m + 1 < e.level_count())
      for (std::size_t c = 0; c < e.width(m + 1); ++c)
        if (e.parent(m + 1, c) == i) kids.emplace_back(e.level(m + 1)[c], c);
    std::sort(kids.begin(), kids.end());
    std::string out;
    if (!kids.empty()) {
      out += "(";
      for (std::size_t k = 0; k < kids.size(); ++k) {
        if (k) out += ",";
        out += self(self, m + 1, kids[k].second) + ":1";
      }
      out += ")";
    }
    return out + newick_name(e.level(m)[i]);
  };
  return render(render, 0, 0) + ";\n";
}

MetricSpace parse_distance_csv(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<Cell>>> rows;
  std::size_t line_no = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? text.npos : end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    std::string_view t = trim(line);
    if (!t.empty() && t.front() != '#') rows.emplace_back(line_no, split_csv(line));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  if (rows.empty()) throw ParseError("empty distance matrix", 1, 1);

  auto header = rows.front().second;
  bool labelled_rows = false;
  if (header.front().text.empty()) {
    labelled_rows = true;
    header.erase(header.begin());
  }
  std::vector<std::string> labels;
  for (const auto& cell : header) {
    if (cell.text.empty()) throw ParseError("empty label", rows.front().first, cell.column);
    labels.push_back(cell.text);
  }
  const std::size_t n = labels.size();
  if (rows.size() - 1 != n)
    throw ParseError("expected " + std::to_string(n) + " rows, found " +
                         std::to_string(rows.size() - 1),
                     rows.back().first, 1);
  if (rows.size() > 1 && rows[1].second.size() == n + 1) labelled_rows = true;

  MetricSpace::Matrix d(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [line, cells] = rows[i + 1];
    const std::size_t skip = labelled_rows ? 1 : 0;
    if (cells.size() != n + skip)
      throw ParseError("expected " + std::to_string(n + skip) + " cells, found " +
                           std::to_string(cells.size()),
                       line, cells.back().column);
    if (labelled_rows && cells[0].text != labels[i])
      throw ParseError("row label '" + cells[0].text + "' does not match column '" + labels[i] + "'",
                       line, cells[0].column);
    for (std::size_t k = 0; k < n; ++k) {
      const Cell& c = cells[k + skip];
      try {
        d(i, k) = parse_rational(c.text);
      } catch (const InputError& e) {
        throw ParseError(e.what(), line, c.column);
      }
    }
  }
  return MetricSpace(std::move(labels), std::move(d));
}

std::string distance_csv(const MetricSpace& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) out += (i ? "," : "") + m.label(i);
  out += "\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) out += (j ? "," : "") + format_rational(m(i, j));
    out += "\n";
  }
  return out;
}

Relation parse_prec_pairs(std::string_view text, const MetricSpace& points) {
  Relation prec(points.size());
  std::map<std::string, std::size_t> id;
  for (std::size_t i = 0; i < points.size(); ++i) id.emplace(points.label(i), i);
  std::size_t line_no = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? text.npos : end - start);
    ++line_no;
    std::string buffer(line);
    for (char& ch : buffer)
      if (ch == ',' || ch == '<' || ch == '\r' || ch == '\t') ch = ' ';
    std::istringstream words(buffer);
    std::vector<std::string> parts;
    for (std::string w; words >> w;) parts.push_back(w);
    if (!parts.empty() && parts.front().front() != '#') {
      if (parts.size() != 2) throw ParseError("expected a pair 'a,b'", line_no, 1);
      for (const auto& p : parts)
        if (!id.count(p))
          throw ParseError("unknown point '" + p + "'", line_no, line.find(p) + 1);
      prec.add(id[parts[0]], id[parts[1]]);
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return prec;
}

Json space_to_json(const MetricSpace& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(format_rational(m(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"labels", m.labels()}, {"distances", std::move(rows)}};
}

Json tower_to_json(const Tower<Rational>& t) {
  Json spaces = Json::array(), maps = Json::array();
  for (const auto& s : t.spaces) spaces.push_back(space_to_json(s));
  for (std::size_t k = 0; k < t.maps.size(); ++k) {
    const auto& src = t.spaces[k];
    const auto& tgt = t.spaces[k + 1];
    Json image = Json::object();
    for (std::size_t x = 0; x < src.size(); ++x) image[src.label(x)] = tgt.label(t.maps[k](x));
    const auto kind = classify_map(src, tgt, t.maps[k]);
    Json entry{{"kind", kind.kind == MapKind::kIsometry      ? "isometry"
                        : kind.kind == MapKind::kContraction ? "contraction"
                        : kind.kind == MapKind::kDrift       ? "drift"
                                                              : "none"}};
    if (kind.epsilon) entry["epsilon"] = format_rational(*kind.epsilon);
    entry["image"] = std::move(image);
    maps.push_back(std::move(entry));
  }
  return Json{{"length", t.length()}, {"spaces", std::move(spaces)}, {"maps", std::move(maps)}};
}

}  // namespace phylo
