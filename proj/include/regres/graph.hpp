#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace regres {

using Vertex = std::int32_t;
using VertexSet = std::vector<Vertex>;

/// Thrown when an operation's preconditions are violated by its inputs.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unordered vertex pair, stored with u <= v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  bool is_loop() const { return u == v; }
  bool touches(Vertex x) const { return u == x || v == x; }
  Vertex other(Vertex x) const { return x == u ? v : u; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..n-1.
///
/// Neighbor lists are kept sorted. Graphs with at most kDenseLimit vertices
/// also keep a bit matrix so has_edge is a single word lookup; larger graphs
/// fall back to binary search in the sorted neighbor list.
class Graph {
 public:
  static constexpr std::size_t kDenseLimit = 4096;

  Graph() = default;
  explicit Graph(std::size_t n);

  /// Builds a graph from an edge list; rejects loops and parallel edges.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t order() const { return adj_.size(); }
  std::size_t size() const { return edge_count_; }

  bool has_edge(Vertex a, Vertex b) const;
  /// Returns false when the edge is already present.
  bool add_edge(Vertex a, Vertex b);
  /// Returns false when the edge is absent.
  bool remove_edge(Vertex a, Vertex b);

  std::span<const Vertex> neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  std::size_t max_degree() const;
  std::size_t min_degree() const;
  std::vector<std::size_t> degrees() const;
  std::vector<Edge> edges() const;

  void check_vertex(Vertex v) const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  void set_bit(Vertex a, Vertex b, bool on);

  std::vector<std::vector<Vertex>> adj_;
  std::size_t edge_count_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> dense_;
};

/// Undirected multigraph; loops and parallel edges allowed. A loop at v adds
/// two to the degree of v.
class MultiGraph {
 public:
  MultiGraph() = default;
  explicit MultiGraph(std::size_t n) : n_(n), degree_(n, 0) {}

  std::size_t order() const { return n_; }
  std::size_t size() const { return edges_.size(); }

  void add_edge(Vertex a, Vertex b);
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t degree(Vertex v) const;
  const std::vector<std::size_t>& degrees() const { return degree_; }
  std::size_t multiplicity(Vertex a, Vertex b) const;
  std::size_t loop_count() const;

  /// Multiset equality, independent of insertion order.
  bool same_edges(const MultiGraph& other) const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> degree_;
};

struct DegreeSequence {
  std::vector<std::size_t> d;

  DegreeSequence() = default;
  explicit DegreeSequence(std::vector<std::size_t> values) : d(std::move(values)) {}
  static DegreeSequence regular(std::size_t n, std::size_t deg) {
    return DegreeSequence(std::vector<std::size_t>(n, deg));
  }

  std::size_t size() const { return d.size(); }
  std::size_t total() const;
  bool even_total() const { return total() % 2 == 0; }
};

/// e(A,B): edges with one endpoint in A and the other in B. An edge with both
/// endpoints in A∩B is counted once; a loop at v counts when v ∈ A∩B.
std::size_t edge_count_between(const Graph& g, std::span<const Vertex> a, std::span<const Vertex> b);
std::size_t edge_count_between(const MultiGraph& g, std::span<const Vertex> a,
                               std::span<const Vertex> b);
/// e(A): edges spanned by A.
std::size_t edges_spanned(const Graph& g, std::span<const Vertex> a);

Graph subtract(const Graph& g, const Graph& h);
Graph graph_union(const Graph& g1, const Graph& g2);
MultiGraph multigraph_union(const MultiGraph& g1, const MultiGraph& g2);
Graph intersection(const Graph& g1, const Graph& g2);
bool is_subgraph(const Graph& h, const Graph& g);

/// True iff E(H) ⊆ E(G) and d_H(v) <= alpha * d_G(v) at every vertex.
bool is_in_H_alpha(const Graph& g, const Graph& h, double alpha);

/// N(S) = union of N(v) over v in S, sorted; may intersect S.
VertexSet neighborhood(const Graph& g, std::span<const Vertex> s);

/// Component label per vertex, labels 0..k-1 in order of first appearance.
std::vector<int> component_labels(const Graph& g, int* count = nullptr);
bool is_connected(const Graph& g);

/// True iff every edge of g has exactly one endpoint in side_a.
bool is_bipartite_with(const Graph& g, std::span<const Vertex> side_a);

Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph petersen_graph();

// Edge-list I/O. Header "n m" (optionally followed by "multi"), then "u v"
// per line, 0-based.
Graph read_graph(std::istream& in);
MultiGraph read_multigraph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);
void write_multigraph(std::ostream& out, const MultiGraph& g);
void write_graph_file(const std::string& path, const Graph& g);

}  // namespace regres
