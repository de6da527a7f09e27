#include "qbst/stp.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <vector>

#include "qbst/error.hpp"

namespace qbst {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i < line.size() && line[i] == '"') {
      // Quoted string (comment values); kept as one token.
      const std::size_t end = line.find('"', i + 1);
      const std::size_t stop = end == std::string_view::npos ? line.size() : end + 1;
      out.push_back(line.substr(i, stop - i));
      i = stop;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

long parse_int(std::string_view token, int line) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    fail(line, "expected integer, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Instance parse_stp(std::string_view text) {
  enum class Section { none, graph, terminals, other };
  Section section = Section::none;
  RawInstance raw;
  bool have_nodes = false;
  long declared_edges = -1;
  long declared_terminals = -1;

  int line_no = 0;
  std::size_t pos = 0;
  std::vector<int> edge_lines;
  std::vector<int> terminal_lines;
  int root_line = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = tokenize(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::string key = lower(tokens[0]);

    if (key == "section") {
      if (tokens.size() < 2) fail(line_no, "SECTION without a name");
      const std::string name = lower(tokens[1]);
      section = name == "graph" ? Section::graph : name == "terminals" ? Section::terminals : Section::other;
    } else if (key == "end") {
      section = Section::none;
    } else if (key == "eof") {
      break;
    } else if (section == Section::graph) {
      if (key == "nodes") {
        if (tokens.size() != 2) fail(line_no, "Nodes expects one value");
        const long n = parse_int(tokens[1], line_no);
        if (n < 0) fail(line_no, "negative node count");
        raw.vertex_count = static_cast<int>(n);
        have_nodes = true;
      } else if (key == "edges" || key == "arcs") {
        if (tokens.size() != 2) fail(line_no, "Edges expects one value");
        declared_edges = parse_int(tokens[1], line_no);
      } else if (key == "e" || key == "a") {
        if (tokens.size() != 4) fail(line_no, "edge line needs 'E u v w'");
        if (!have_nodes) fail(line_no, "edge before Nodes declaration");
        const long u = parse_int(tokens[1], line_no);
        const long v = parse_int(tokens[2], line_no);
        if (u < 1 || u > raw.vertex_count || v < 1 || v > raw.vertex_count) {
          fail(line_no, "edge endpoint out of range");
        }
        Rational w;
        try {
          w = parse_rational(tokens[3]);
        } catch (const Error&) {
          fail(line_no, "bad edge weight '" + std::string(tokens[3]) + "'");
        }
        raw.edges.push_back(Edge{static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1), w});
        edge_lines.push_back(line_no);
      } else {
        fail(line_no, "unknown Graph keyword '" + std::string(tokens[0]) + "'");
      }
    } else if (section == Section::terminals) {
      if (key == "terminals") {
        if (tokens.size() != 2) fail(line_no, "Terminals expects one value");
        declared_terminals = parse_int(tokens[1], line_no);
      } else if (key == "t" || key == "root") {
        if (tokens.size() != 2) fail(line_no, "'" + std::string(tokens[0]) + "' expects one vertex");
        const long v = parse_int(tokens[1], line_no);
        if (!have_nodes || v < 1 || v > raw.vertex_count) fail(line_no, "terminal id out of range");
        if (key == "t") {
          raw.terminals.push_back(static_cast<VertexId>(v - 1));
          terminal_lines.push_back(line_no);
        } else {
          raw.root = static_cast<VertexId>(v - 1);
          root_line = line_no;
        }
      } else {
        fail(line_no, "unknown Terminals keyword '" + std::string(tokens[0]) + "'");
      }
    } else if (section == Section::none && line_no == 1) {
      continue;  // magic header line
    } else if (section == Section::none) {
      fail(line_no, "content outside of a section");
    }
    if (end == text.size()) break;
  }

  if (!have_nodes) fail(line_no, "missing Nodes declaration");
  if (declared_edges >= 0 && declared_edges != static_cast<long>(raw.edges.size())) {
    fail(line_no, "Edges declares " + std::to_string(declared_edges) + " but " +
                      std::to_string(raw.edges.size()) + " were listed");
  }
  if (declared_terminals >= 0 && declared_terminals != static_cast<long>(raw.terminals.size())) {
    fail(line_no, "Terminals declares " + std::to_string(declared_terminals) + " but " +
                      std::to_string(raw.terminals.size()) + " were listed");
  }
  if (raw.root && std::find(raw.terminals.begin(), raw.terminals.end(), *raw.root) == raw.terminals.end()) {
    fail(root_line, "root is not listed as a terminal");
  }
  return validate_instance(std::move(raw));
}

std::string serialize_stp(const Instance& inst) {
  std::ostringstream out;
  out << "33D32945 STP File, STP Format Version 1.0\n\n";
  out << "SECTION Graph\n";
  out << "Nodes " << inst.vertex_count() << "\n";
  out << "Edges " << inst.edges().size() << "\n";
  for (const Edge& e : inst.edges()) {
    out << "E " << e.u + 1 << ' ' << e.v + 1 << ' ';
    if (e.cost.get_den() == 1) {
      out << e.cost.get_num().get_str();
    } else {
      out << to_string(e.cost);
    }
    out << "\n";
  }
  out << "END\n\n";
  out << "SECTION Terminals\n";
  out << "Terminals " << inst.terminals().size() << "\n";
  for (VertexId t : inst.terminals()) out << "T " << t + 1 << "\n";
  out << "Root " << inst.root() + 1 << "\n";
  out << "END\n\nEOF\n";
  return out.str();
}

}  // namespace qbst
