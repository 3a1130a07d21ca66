#include "multiplex/graph_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace multiplex {

namespace {

void canonicalize(NetworkSpec& spec) {
  if (!spec.directed) {
    auto mirrored = spec.arcs;
    for (auto [i, j] : mirrored) spec.arcs.emplace_back(j, i);
  }
  std::sort(spec.arcs.begin(), spec.arcs.end());
  spec.arcs.erase(std::unique(spec.arcs.begin(), spec.arcs.end()), spec.arcs.end());
}

void warn(std::vector<std::string>* warnings, int line, const std::string& message) {
  if (warnings) warnings->push_back("line " + std::to_string(line) + ": " + message);
}

bool is_comment_or_blank(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

NetworkSpec parse_edge_list(const std::string& text, bool directed) {
  NetworkSpec spec;
  spec.directed = directed;
  std::unordered_map<std::string, Index> id_of;

  auto intern = [&](const std::string& token) {
    auto [it, inserted] = id_of.emplace(token, spec.node_count);
    if (inserted) {
      ++spec.node_count;
      spec.node_labels.push_back(token);
    }
    return it->second;
  };

  std::istringstream input(text);
  std::string line;
  int line_no = 0;
  while (std::getline(input, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a >> b) || (fields >> extra)) {
      throw ParseError("expected exactly two tokens", line_no);
    }
    if (a == b) throw ParseError("self-loop '" + a + "'", line_no);
    const Index from = intern(a);  // sequence the interning: first appearance wins
    const Index to = intern(b);
    spec.arcs.emplace_back(from, to);
  }
  canonicalize(spec);
  return spec;
}

// --- GML -------------------------------------------------------------------

namespace {

struct GmlToken {
  enum Kind { open, close, word, text, number } kind;
  std::string value;
  int line;
};

std::vector<GmlToken> gml_tokenize(const std::string& text) {
  std::vector<GmlToken> tokens;
  int line = 1;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '[') {
      tokens.push_back({GmlToken::open, "[", line});
      ++i;
    } else if (c == ']') {
      tokens.push_back({GmlToken::close, "]", line});
      ++i;
    } else if (c == '"') {
      size_t end = text.find('"', i + 1);
      if (end == std::string::npos) throw ParseError("unterminated string", line);
      tokens.push_back({GmlToken::text, text.substr(i + 1, end - i - 1), line});
      i = end + 1;
    } else {
      size_t start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             text[i] != '[' && text[i] != ']') {
        ++i;
      }
      std::string word = text.substr(start, i - start);
      bool numeric = word.find_first_not_of("+-0123456789.eE") == std::string::npos &&
                     word.find_first_of("0123456789") != std::string::npos;
      tokens.push_back({numeric ? GmlToken::number : GmlToken::word, word, line});
    }
  }
  return tokens;
}

// Skips a value (scalar or bracketed block) starting at `pos`.
void gml_skip_value(const std::vector<GmlToken>& tokens, size_t& pos) {
  if (pos >= tokens.size()) throw ParseError("unexpected end of input");
  if (tokens[pos].kind == GmlToken::open) {
    int depth = 0;
    do {
      if (pos >= tokens.size()) throw ParseError("unbalanced brackets", tokens.back().line);
      if (tokens[pos].kind == GmlToken::open) ++depth;
      if (tokens[pos].kind == GmlToken::close) --depth;
      ++pos;
    } while (depth > 0);
  } else {
    ++pos;
  }
}

}  // namespace

NetworkSpec parse_gml(const std::string& text, std::vector<std::string>* warnings) {
  auto tokens = gml_tokenize(text);
  size_t pos = 0;

  // find the top-level "graph [" block, skipping anything before it
  while (pos < tokens.size() && !(tokens[pos].kind == GmlToken::word && tokens[pos].value == "graph")) {
    ++pos;
    if (pos < tokens.size() && tokens[pos].kind == GmlToken::open) gml_skip_value(tokens, pos);
  }
  if (pos >= tokens.size()) throw ParseError("no graph block found");
  ++pos;
  if (pos >= tokens.size() || tokens[pos].kind != GmlToken::open) {
    throw ParseError("expected '[' after graph", tokens[pos > 0 ? pos - 1 : 0].line);
  }
  ++pos;

  NetworkSpec spec;
  spec.directed = false;
  std::map<long long, Index> id_of;
  std::vector<std::string> labels, tags;
  bool any_label = false, any_tag = false;
  std::vector<std::pair<std::pair<long long, long long>, int>> raw_edges;

  auto expect_scalar = [&](size_t& p, const char* what) -> const GmlToken& {
    if (p >= tokens.size() || (tokens[p].kind != GmlToken::number && tokens[p].kind != GmlToken::text &&
                               tokens[p].kind != GmlToken::word)) {
      throw ParseError(std::string("expected value for ") + what,
                       p < tokens.size() ? tokens[p].line : 0);
    }
    return tokens[p++];
  };

  bool closed = false;
  while (pos < tokens.size()) {
    const auto& tok = tokens[pos];
    if (tok.kind == GmlToken::close) {
      closed = true;
      ++pos;
      break;
    }
    if (tok.kind != GmlToken::word) throw ParseError("expected key, got '" + tok.value + "'", tok.line);
    const std::string key = tok.value;
    ++pos;
    if (key == "directed") {
      spec.directed = expect_scalar(pos, "directed").value != "0";
    } else if (key == "node") {
      if (pos >= tokens.size() || tokens[pos].kind != GmlToken::open) {
        throw ParseError("expected '[' after node", tok.line);
      }
      ++pos;
      long long id = -1;
      bool has_id = false;
      std::string label, tag;
      bool has_label = false, has_tag = false;
      while (pos < tokens.size() && tokens[pos].kind != GmlToken::close) {
        if (tokens[pos].kind != GmlToken::word) throw ParseError("expected node attribute", tokens[pos].line);
        std::string attr = tokens[pos].value;
        ++pos;
        if (attr == "id") {
          id = std::stoll(expect_scalar(pos, "id").value);
          has_id = true;
        } else if (attr == "label") {
          label = expect_scalar(pos, "label").value;
          has_label = true;
        } else if (attr == "value") {
          tag = expect_scalar(pos, "value").value;
          has_tag = true;
        } else {
          gml_skip_value(tokens, pos);
        }
      }
      if (pos >= tokens.size()) throw ParseError("unbalanced brackets in node block", tok.line);
      ++pos;
      if (!has_id) throw ParseError("node block without id", tok.line);
      if (id_of.count(id)) throw ParseError("duplicate node id " + std::to_string(id), tok.line);
      id_of[id] = spec.node_count++;
      labels.push_back(has_label ? label : std::to_string(id));
      tags.push_back(tag);
      any_label |= has_label;
      any_tag |= has_tag;
    } else if (key == "edge") {
      if (pos >= tokens.size() || tokens[pos].kind != GmlToken::open) {
        throw ParseError("expected '[' after edge", tok.line);
      }
      ++pos;
      long long source = -1, target = -1;
      bool has_source = false, has_target = false;
      while (pos < tokens.size() && tokens[pos].kind != GmlToken::close) {
        if (tokens[pos].kind != GmlToken::word) throw ParseError("expected edge attribute", tokens[pos].line);
        std::string attr = tokens[pos].value;
        ++pos;
        if (attr == "source") {
          source = std::stoll(expect_scalar(pos, "source").value);
          has_source = true;
        } else if (attr == "target") {
          target = std::stoll(expect_scalar(pos, "target").value);
          has_target = true;
        } else {
          gml_skip_value(tokens, pos);
        }
      }
      if (pos >= tokens.size()) throw ParseError("unbalanced brackets in edge block", tok.line);
      ++pos;
      if (!has_source || !has_target) throw ParseError("edge block missing source/target", tok.line);
      raw_edges.push_back({{source, target}, tok.line});
    } else {
      gml_skip_value(tokens, pos);
    }
  }
  if (!closed) throw ParseError("unbalanced brackets: graph block never closed");

  for (auto& [edge, line] : raw_edges) {
    auto s = id_of.find(edge.first);
    auto t = id_of.find(edge.second);
    if (s == id_of.end() || t == id_of.end()) {
      throw ParseError("edge references unknown node id", line);
    }
    if (s->second == t->second) {
      warn(warnings, line, "self-loop on node " + std::to_string(edge.first) + " stripped");
      continue;
    }
    spec.arcs.emplace_back(s->second, t->second);
  }
  if (any_label || spec.node_count > 0) spec.node_labels = std::move(labels);
  if (any_tag) spec.node_tags = std::move(tags);
  canonicalize(spec);
  return spec;
}

// --- Pajek -----------------------------------------------------------------

NetworkSpec parse_pajek(const std::string& text, std::vector<std::string>* warnings) {
  NetworkSpec spec;
  std::istringstream input(text);
  std::string line;
  int line_no = 0;
  enum class Section { none, vertices, arcs, edges } section = Section::none;
  Index declared = -1;
  bool any_arc_section = false;

  auto parse_endpoint = [&](const std::string& token) -> Index {
    long long v;
    try {
      size_t consumed = 0;
      v = std::stoll(token, &consumed);
      if (consumed != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ParseError("expected a vertex number, got '" + token + "'", line_no);
    }
    if (v < 1 || v > declared) {
      throw ParseError("vertex " + std::to_string(v) + " outside declared range 1.." +
                           std::to_string(declared),
                       line_no);
    }
    return static_cast<Index>(v - 1);
  };

  while (std::getline(input, line)) {
    ++line_no;
    if (is_comment_or_blank(line) || line[0] == '%') continue;
    if (line[0] == '*') {
      std::istringstream header(line);
      std::string word;
      header >> word;
      std::transform(word.begin(), word.end(), word.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      if (word == "*vertices") {
        long long count = 0;
        if (!(header >> count) || count <= 0) {
          throw ParseError("*Vertices requires a positive count", line_no);
        }
        declared = static_cast<Index>(count);
        spec.node_count = declared;
        spec.node_labels.assign(declared, "");
        for (Index v = 0; v < declared; ++v) spec.node_labels[v] = std::to_string(v + 1);
        section = Section::vertices;
      } else if (word == "*arcs") {
        if (declared < 0) throw ParseError("*Arcs before *Vertices", line_no);
        section = Section::arcs;
        any_arc_section = true;
      } else if (word == "*edges") {
        if (declared < 0) throw ParseError("*Edges before *Vertices", line_no);
        section = Section::edges;
      } else if (word == "*network") {
        continue;
      } else {
        throw ParseError("unsupported section '" + word + "'", line_no);
      }
      continue;
    }
    std::istringstream fields(line);
    switch (section) {
      case Section::none:
        throw ParseError("data before any section header", line_no);
      case Section::vertices: {
        std::string index_token;
        fields >> index_token;
        Index v = parse_endpoint(index_token);
        // label is the first quoted string if present, else the next token
        auto quote = line.find('"');
        if (quote != std::string::npos) {
          auto end = line.find('"', quote + 1);
          if (end == std::string::npos) throw ParseError("unterminated label", line_no);
          spec.node_labels[v] = line.substr(quote + 1, end - quote - 1);
        } else {
          std::string label;
          if (fields >> label) spec.node_labels[v] = label;
        }
        break;
      }
      case Section::arcs:
      case Section::edges: {
        std::string a, b;
        if (!(fields >> a >> b)) throw ParseError("expected two vertex numbers", line_no);
        Index i = parse_endpoint(a), j = parse_endpoint(b);
        if (i == j) {
          warn(warnings, line_no, "self-loop on vertex " + a + " stripped");
          break;
        }
        spec.arcs.emplace_back(i, j);
        if (section == Section::edges) spec.arcs.emplace_back(j, i);
        break;
      }
    }
  }
  if (declared < 0) throw ParseError("missing *Vertices header");
  spec.directed = any_arc_section;
  canonicalize(spec);
  return spec;
}

// --- conversions & serialization --------------------------------------------

Matrix to_adjacency(const NetworkSpec& spec) {
  Matrix a = Matrix::Zero(spec.node_count, spec.node_count);
  for (auto [i, j] : spec.arcs) a(i, j) = 1.0;
  return a;
}

std::string serialize_edge_list(const NetworkSpec& spec) {
  std::ostringstream out;
  out << "# nodes: " << spec.node_count << (spec.directed ? " directed" : " undirected") << "\n";
  auto token = [&](Index v) -> std::string {
    if (static_cast<size_t>(v) < spec.node_labels.size() && !spec.node_labels[v].empty()) {
      return spec.node_labels[v];
    }
    return std::to_string(v);
  };
  for (auto [i, j] : spec.arcs) {
    if (!spec.directed && i > j) continue;  // one line per unordered pair
    out << token(i) << " " << token(j) << "\n";
  }
  return out.str();
}

std::string network_to_json(const NetworkSpec& spec) {
  nlohmann::json j;
  j["node_count"] = spec.node_count;
  j["directed"] = spec.directed;
  auto arcs = nlohmann::json::array();
  for (auto [a, b] : spec.arcs) arcs.push_back({a, b});
  j["arcs"] = std::move(arcs);
  if (!spec.node_labels.empty()) j["node_labels"] = spec.node_labels;
  if (!spec.node_tags.empty()) j["node_tags"] = spec.node_tags;
  return j.dump(2);
}

InputFormat input_format_from_string(const std::string& name) {
  if (name == "edgelist") return InputFormat::edgelist;
  if (name == "gml") return InputFormat::gml;
  if (name == "pajek") return InputFormat::pajek;
  throw std::invalid_argument("unknown input format '" + name + "'");
}

std::string to_string(InputFormat format) {
  switch (format) {
    case InputFormat::edgelist: return "edgelist";
    case InputFormat::gml: return "gml";
    case InputFormat::pajek: return "pajek";
  }
  return "?";
}

NetworkSpec load_network(const std::string& path, InputFormat format, bool directed,
                         std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  switch (format) {
    case InputFormat::edgelist: return parse_edge_list(text, directed);
    case InputFormat::gml: return parse_gml(text, warnings);
    case InputFormat::pajek: return parse_pajek(text, warnings);
  }
  throw std::logic_error("unreachable");
}

}  // namespace multiplex
