#pragma once

// DIMACS ASCII graph format:
//   c <comment>
//   p edge <n> <m>        ("p col" is accepted as a synonym)
//   e <i> <j>             1-based endpoints

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "clipperplus/errors.hpp"
#include "clipperplus/graph.hpp"

namespace clipperplus {

struct DimacsGraph {
  Graph graph;
  std::size_t declared_edges = 0;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

inline std::size_t parse_count(std::string_view tok, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace detail

inline DimacsGraph parse_dimacs(std::string_view text) {
  DimacsGraph out;
  std::optional<GraphBuilder> builder;
  std::size_t edge_lines = 0;
  std::size_t lineno = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;

    const auto tok = detail::split_ws(line);
    if (tok.empty() || tok[0] == "c") continue;

    if (tok[0] == "p") {
      if (builder) throw ParseError(lineno, "duplicate 'p' line");
      if (tok.size() != 4 || (tok[1] != "edge" && tok[1] != "col")) throw ParseError(lineno, "expected 'p edge <n> <m>'");
      const std::size_t n = detail::parse_count(tok[2], lineno);
      out.declared_edges = detail::parse_count(tok[3], lineno);
      builder.emplace(n);
    } else if (tok[0] == "e") {
      if (!builder) throw ParseError(lineno, "edge line before the 'p' line");
      if (tok.size() != 3) throw ParseError(lineno, "expected 'e <i> <j>'");
      const std::size_t i = detail::parse_count(tok[1], lineno);
      const std::size_t j = detail::parse_count(tok[2], lineno);
      const std::size_t n = builder->size();
      if (i < 1 || j < 1 || i > n || j > n) {
        throw ParseError(lineno, "vertex out of range [1, " + std::to_string(n) + "]");
      }
      if (i == j) throw ParseError(lineno, "self-loop on vertex " + std::to_string(i));
      builder->add_edge(i - 1, j - 1);
      ++edge_lines;
    } else {
      throw ParseError(lineno, "unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (!builder) throw ParseError(lineno, "missing 'p edge <n> <m>' line");

  out.graph = std::move(*builder).build();
  if (out.graph.edge_count() != out.declared_edges && edge_lines != out.declared_edges) {
    out.warnings.push_back("header declares " + std::to_string(out.declared_edges) + " edges, found " +
                           std::to_string(out.graph.edge_count()) + " distinct edges on " +
                           std::to_string(edge_lines) + " lines");
  }
  return out;
}

inline DimacsGraph read_dimacs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_dimacs(ss.str());
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ": " + e.detail());
  }
}

inline std::string to_dimacs(const Graph& g) {
  std::ostringstream out;
  out << "p edge " << g.size() << ' ' << g.edge_count() << '\n';
  for (Vertex i = 0; i < g.size(); ++i) {
    bits::for_each(g.row(i), [&](Vertex j) {
      if (j > i) out << "e " << i + 1 << ' ' << j + 1 << '\n';
    });
  }
  return out.str();
}

}  // namespace clipperplus
