#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "regres/graph.hpp"

namespace regres {
namespace {

struct Header {
  std::size_t n = 0;
  std::size_t m = 0;
  bool multi = false;
};

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

Header read_header(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw GraphError("edge list: missing header");
  std::istringstream ss(line);
  Header h;
  long long n = -1;
  long long m = -1;
  if (!(ss >> n >> m) || n < 0 || m < 0) throw GraphError("edge list: malformed header '" + line + "'");
  h.n = static_cast<std::size_t>(n);
  h.m = static_cast<std::size_t>(m);
  std::string flag;
  if (ss >> flag) {
    if (flag != "multi") throw GraphError("edge list: unknown header token '" + flag + "'");
    h.multi = true;
  }
  return h;
}

template <typename AddEdge>
void read_body(std::istream& in, const Header& h, AddEdge add) {
  std::string line;
  std::size_t seen = 0;
  while (next_content_line(in, line)) {
    std::istringstream ss(line);
    long long u = -1;
    long long v = -1;
    if (!(ss >> u >> v)) throw GraphError("edge list: malformed edge line '" + line + "'");
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= h.n || static_cast<std::size_t>(v) >= h.n) {
      throw GraphError("edge list: vertex out of range in '" + line + "'");
    }
    add(static_cast<Vertex>(u), static_cast<Vertex>(v));
    ++seen;
  }
  if (seen != h.m) {
    throw GraphError("edge list: header promises " + std::to_string(h.m) + " edges, found " +
                     std::to_string(seen));
  }
}

}  // namespace

Graph read_graph(std::istream& in) {
  const Header h = read_header(in);
  Graph g(h.n);
  read_body(in, h, [&](Vertex u, Vertex v) {
    if (u == v) throw GraphError("edge list: loop in simple graph file");
    if (!g.add_edge(u, v)) throw GraphError("edge list: parallel edge in simple graph file");
  });
  return g;
}

MultiGraph read_multigraph(std::istream& in) {
  const Header h = read_header(in);
  MultiGraph g(h.n);
  read_body(in, h, [&](Vertex u, Vertex v) { g.add_edge(u, v); });
  return g;
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.order() << ' ' << g.size() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_multigraph(std::ostream& out, const MultiGraph& g) {
  out << g.order() << ' ' << g.size() << " multi\n";
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_graph_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_graph(out, g);
}

}  // namespace regres
