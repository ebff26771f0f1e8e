#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sheafcsp {

using Vertex = std::uint32_t;

/// Simple undirected graph on 0..n-1; the vertex order is the numbering.
/// Edges are stored as (u, v) with u < v, sorted.
class OrderedGraph {
 public:
  OrderedGraph() = default;
  /// Throws InputError on self-loops or out-of-range endpoints; duplicate
  /// edges (in either orientation) collapse.
  OrderedGraph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
  /// Sorted neighbourhood.
  const std::vector<Vertex>& neighbours(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  /// Index into edges(); throws InputError when {u, v} is not an edge.
  std::size_t edge_index(Vertex u, Vertex v) const;
  bool adjacent(Vertex u, Vertex v) const;

  friend bool operator==(const OrderedGraph& a, const OrderedGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::vector<Vertex>> adj_;
};

/// A graph together with optional per-edge twist values, as read from the
/// text format: a line with n, one `u v` line per edge, then optional
/// `twist u v value` lines. Blank lines and `#` comments are ignored.
struct GraphSpec {
  OrderedGraph graph;
  std::map<std::pair<Vertex, Vertex>, std::int64_t> twists;  // keyed by (min, max)
};

GraphSpec parse_graph_text(std::string_view text);
GraphSpec read_graph_file(const std::string& path);
std::string to_graph_text(const OrderedGraph& g,
                          const std::vector<std::uint32_t>* twist = nullptr);

OrderedGraph complete_graph(std::size_t n);
OrderedGraph cycle_graph(std::size_t n);
/// K3,3 with parts {0,1,2} and {3,4,5}.
OrderedGraph k33_graph();
/// Triangular prism: triangles 0-1-2 and 3-4-5 joined by i -- i+3.
OrderedGraph prism_graph();
OrderedGraph petersen_graph();
/// k4, k33, prism, petersen, kN, cN; throws InputError otherwise.
OrderedGraph named_graph(const std::string& name);

}  // namespace sheafcsp
