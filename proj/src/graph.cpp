#include "regres/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace regres {

Graph::Graph(std::size_t n) : adj_(n) {
  if (n <= kDenseLimit) {
    words_per_row_ = (n + 63) / 64;
    dense_.assign(words_per_row_ * n, 0);
  }
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (const Edge& e : edges) {
    if (e.is_loop()) throw GraphError("loop " + std::to_string(e.u) + " in simple graph");
    if (!g.add_edge(e.u, e.v)) {
      throw GraphError("parallel edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    }
  }
  return g;
}

void Graph::check_vertex(Vertex v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= adj_.size()) {
    throw GraphError("vertex " + std::to_string(v) + " out of range [0," +
                     std::to_string(adj_.size()) + ")");
  }
}

void Graph::set_bit(Vertex a, Vertex b, bool on) {
  if (dense_.empty()) return;
  auto& word = dense_[static_cast<std::size_t>(a) * words_per_row_ + static_cast<std::size_t>(b) / 64];
  const std::uint64_t mask = std::uint64_t{1} << (static_cast<std::size_t>(b) % 64);
  word = on ? (word | mask) : (word & ~mask);
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  check_vertex(a);
  check_vertex(b);
  if (!dense_.empty()) {
    const auto word = dense_[static_cast<std::size_t>(a) * words_per_row_ + static_cast<std::size_t>(b) / 64];
    return (word >> (static_cast<std::size_t>(b) % 64)) & 1U;
  }
  const auto& row = adj_[a];
  return std::binary_search(row.begin(), row.end(), b);
}

bool Graph::add_edge(Vertex a, Vertex b) {
  check_vertex(a);
  check_vertex(b);
  if (a == b) throw GraphError("cannot add loop at " + std::to_string(a) + " to a simple graph");
  if (has_edge(a, b)) return false;
  auto insert = [](std::vector<Vertex>& row, Vertex x) {
    row.insert(std::upper_bound(row.begin(), row.end(), x), x);
  };
  insert(adj_[a], b);
  insert(adj_[b], a);
  set_bit(a, b, true);
  set_bit(b, a, true);
  ++edge_count_;
  return true;
}

bool Graph::remove_edge(Vertex a, Vertex b) {
  check_vertex(a);
  check_vertex(b);
  if (a == b || !has_edge(a, b)) return false;
  auto erase = [](std::vector<Vertex>& row, Vertex x) {
    row.erase(std::lower_bound(row.begin(), row.end(), x));
  };
  erase(adj_[a], b);
  erase(adj_[b], a);
  set_bit(a, b, false);
  set_bit(b, a, false);
  --edge_count_;
  return true;
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  check_vertex(v);
  return adj_[v];
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& row : adj_) best = std::max(best, row.size());
  return best;
}

std::size_t Graph::min_degree() const {
  if (adj_.empty()) return 0;
  std::size_t best = adj_.front().size();
  for (const auto& row : adj_) best = std::min(best, row.size());
  return best;
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> out(adj_.size());
  for (std::size_t v = 0; v < adj_.size(); ++v) out[v] = adj_[v].size();
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t v = 0; v < adj_.size(); ++v) {
    for (Vertex w : adj_[v]) {
      if (static_cast<Vertex>(v) < w) out.emplace_back(static_cast<Vertex>(v), w);
    }
  }
  return out;
}

void MultiGraph::add_edge(Vertex a, Vertex b) {
  if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n_ || static_cast<std::size_t>(b) >= n_) {
    throw GraphError("multigraph edge " + std::to_string(a) + "-" + std::to_string(b) +
                     " out of range");
  }
  edges_.emplace_back(a, b);
  degree_[a] += 1;
  degree_[b] += 1;  // a loop therefore counts twice
}

std::size_t MultiGraph::degree(Vertex v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= n_) throw GraphError("vertex out of range");
  return degree_[v];
}

std::size_t MultiGraph::multiplicity(Vertex a, Vertex b) const {
  const Edge key(a, b);
  return static_cast<std::size_t>(std::count(edges_.begin(), edges_.end(), key));
}

std::size_t MultiGraph::loop_count() const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); }));
}

bool MultiGraph::same_edges(const MultiGraph& other) const {
  if (n_ != other.n_ || edges_.size() != other.edges_.size()) return false;
  auto a = edges_;
  auto b = other.edges_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::size_t DegreeSequence::total() const { return std::accumulate(d.begin(), d.end(), std::size_t{0}); }

namespace {

std::vector<char> membership(std::size_t n, std::span<const Vertex> s) {
  std::vector<char> in(n, 0);
  for (Vertex v : s) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) {
      throw GraphError("vertex " + std::to_string(v) + " out of range");
    }
    in[v] = 1;
  }
  return in;
}

bool crosses(const std::vector<char>& in_a, const std::vector<char>& in_b, const Edge& e) {
  return (in_a[e.u] && in_b[e.v]) || (in_a[e.v] && in_b[e.u]);
}

}  // namespace

std::size_t edge_count_between(const Graph& g, std::span<const Vertex> a, std::span<const Vertex> b) {
  const auto in_a = membership(g.order(), a);
  const auto in_b = membership(g.order(), b);
  std::size_t count = 0;
  for (std::size_t v = 0; v < g.order(); ++v) {
    if (!in_a[v] && !in_b[v]) continue;
    for (Vertex w : g.neighbors(static_cast<Vertex>(v))) {
      if (static_cast<Vertex>(v) < w && crosses(in_a, in_b, Edge(static_cast<Vertex>(v), w))) ++count;
    }
  }
  return count;
}

std::size_t edge_count_between(const MultiGraph& g, std::span<const Vertex> a,
                               std::span<const Vertex> b) {
  const auto in_a = membership(g.order(), a);
  const auto in_b = membership(g.order(), b);
  std::size_t count = 0;
  for (const Edge& e : g.edges()) {
    if (crosses(in_a, in_b, e)) ++count;
  }
  return count;
}

std::size_t edges_spanned(const Graph& g, std::span<const Vertex> a) {
  return edge_count_between(g, a, a);
}

namespace {
void require_same_order(std::size_t a, std::size_t b) {
  if (a != b) {
    throw GraphError("vertex counts differ: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}
}  // namespace

Graph subtract(const Graph& g, const Graph& h) {
  require_same_order(g.order(), h.order());
  Graph out(g.order());
  for (const Edge& e : g.edges()) {
    if (!h.has_edge(e.u, e.v)) out.add_edge(e.u, e.v);
  }
  return out;
}

Graph graph_union(const Graph& g1, const Graph& g2) {
  require_same_order(g1.order(), g2.order());
  Graph out = g1;
  for (const Edge& e : g2.edges()) out.add_edge(e.u, e.v);
  return out;
}

MultiGraph multigraph_union(const MultiGraph& g1, const MultiGraph& g2) {
  require_same_order(g1.order(), g2.order());
  MultiGraph out = g1;
  for (const Edge& e : g2.edges()) out.add_edge(e.u, e.v);
  return out;
}

Graph intersection(const Graph& g1, const Graph& g2) {
  require_same_order(g1.order(), g2.order());
  Graph out(g1.order());
  for (const Edge& e : g1.edges()) {
    if (g2.has_edge(e.u, e.v)) out.add_edge(e.u, e.v);
  }
  return out;
}

bool is_subgraph(const Graph& h, const Graph& g) {
  if (h.order() != g.order()) return false;
  for (const Edge& e : h.edges()) {
    if (!g.has_edge(e.u, e.v)) return false;
  }
  return true;
}

bool is_in_H_alpha(const Graph& g, const Graph& h, double alpha) {
  require_same_order(g.order(), h.order());
  if (!is_subgraph(h, g)) return false;
  for (std::size_t v = 0; v < g.order(); ++v) {
    const auto dh = static_cast<double>(h.degree(static_cast<Vertex>(v)));
    const auto dg = static_cast<double>(g.degree(static_cast<Vertex>(v)));
    if (dh > alpha * dg + 1e-12) return false;
  }
  return true;
}

VertexSet neighborhood(const Graph& g, std::span<const Vertex> s) {
  std::vector<char> seen(g.order(), 0);
  VertexSet out;
  for (Vertex v : s) {
    for (Vertex w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        out.push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> component_labels(const Graph& g, int* count) {
  std::vector<int> label(g.order(), -1);
  int next = 0;
  std::vector<Vertex> stack;
  for (std::size_t s = 0; s < g.order(); ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(static_cast<Vertex>(s));
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        if (label[w] < 0) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

bool is_connected(const Graph& g) {
  int count = 0;
  component_labels(g, &count);
  return count <= 1;
}

bool is_bipartite_with(const Graph& g, std::span<const Vertex> side_a) {
  const auto in_a = membership(g.order(), side_a);
  for (const Edge& e : g.edges()) {
    if (in_a[e.u] == in_a[e.v]) return false;
  }
  return true;
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw GraphError("cycle needs at least 3 vertices");
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
  return g;
}

Graph path_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
  return g;
}

Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
  return g;
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  Graph g(a + b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(a + j));
  return g;
}

Graph petersen_graph() {
  Graph g(10);
  for (Vertex i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);          // outer cycle
    g.add_edge(i, i + 5);                // spokes
    g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return g;
}

}  // namespace regres
