#include "sheafcsp/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "sheafcsp/errors.hpp"

namespace sheafcsp {

OrderedGraph::OrderedGraph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges)
    : n_(n), adj_(n) {
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw InputError("edge " + std::to_string(u) + " " + std::to_string(v) +
                       " outside a graph on " + std::to_string(n) + " vertices");
    }
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

std::size_t OrderedGraph::edge_index(Vertex u, Vertex v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v));
  if (it == edges_.end() || *it != std::make_pair(u, v)) {
    throw InputError("no edge " + std::to_string(u) + " " + std::to_string(v));
  }
  return static_cast<std::size_t>(it - edges_.begin());
}

bool OrderedGraph::adjacent(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

GraphSpec parse_graph_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  long long n = -1;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::pair<std::pair<Vertex, Vertex>, std::int64_t>> twists;
  auto fail = [&](const std::string& msg) {
    throw InputError("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    std::string extra;
    if (n < 0) {
      try {
        std::size_t used = 0;
        n = std::stoll(first, &used);
        if (used != first.size() || n < 0) fail("expected vertex count");
      } catch (const std::logic_error&) {
        fail("expected vertex count");
      }
      if (ls >> extra) fail("unexpected text after vertex count");
      continue;
    }
    long long u = 0;
    long long v = 0;
    if (first == "twist") {
      long long value = 0;
      if (!(ls >> u >> v >> value) || (ls >> extra)) fail("expected `twist u v value`");
      if (u < 0 || v < 0) fail("negative vertex");
      const auto lo = static_cast<Vertex>(std::min(u, v));
      const auto hi = static_cast<Vertex>(std::max(u, v));
      twists.push_back({{lo, hi}, value});
      continue;
    }
    std::istringstream again(line);
    if (!(again >> u >> v) || (again >> extra)) fail("expected `u v`");
    if (u < 0 || v < 0) fail("negative vertex");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (n < 0) throw InputError("graph text is empty");
  GraphSpec spec{OrderedGraph(static_cast<std::size_t>(n), std::move(edges)), {}};
  for (const auto& [key, value] : twists) {
    if (!spec.graph.adjacent(key.first, key.second)) {
      throw InputError("twist on non-edge " + std::to_string(key.first) + " " +
                       std::to_string(key.second));
    }
    spec.twists[key] = value;
  }
  return spec;
}

GraphSpec read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph_text(buf.str());
}

std::string to_graph_text(const OrderedGraph& g, const std::vector<std::uint32_t>* twist) {
  std::ostringstream os;
  os << g.vertex_count() << '\n';
  for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
  if (twist) {
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if ((*twist)[e] != 0) {
        os << "twist " << g.edges()[e].first << ' ' << g.edges()[e].second << ' ' << (*twist)[e]
           << '\n';
      }
    }
  }
  return os.str();
}

OrderedGraph complete_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  }
  return OrderedGraph(n, std::move(e));
}

OrderedGraph cycle_graph(std::size_t n) {
  if (n < 3) throw InputError("a cycle needs at least 3 vertices");
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u) e.emplace_back(u, static_cast<Vertex>((u + 1) % n));
  return OrderedGraph(n, std::move(e));
}

OrderedGraph k33_graph() {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < 3; ++u) {
    for (Vertex v = 3; v < 6; ++v) e.emplace_back(u, v);
  }
  return OrderedGraph(6, std::move(e));
}

OrderedGraph prism_graph() {
  return OrderedGraph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
}

OrderedGraph petersen_graph() {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  return OrderedGraph(10, std::move(e));
}

OrderedGraph named_graph(const std::string& name) {
  if (name == "k33") return k33_graph();
  if (name == "prism") return prism_graph();
  if (name == "petersen") return petersen_graph();
  if (name.size() >= 2 && (name[0] == 'k' || name[0] == 'c')) {
    std::size_t used = 0;
    std::size_t n = 0;
    try {
      n = std::stoul(name.substr(1), &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == name.size() - 1) return name[0] == 'k' ? complete_graph(n) : cycle_graph(n);
  }
  throw InputError("unknown graph name '" + name + "'");
}

}  // namespace sheafcsp
