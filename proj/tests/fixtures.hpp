#pragma once

#include <utility>
#include <vector>

#include "sheafcsp/random_instances.hpp"
#include "sheafcsp/structure.hpp"

namespace sheafcsp::testing {

inline Signature edge_signature() { return Signature({{"E", 2}}); }

inline Structure digraph(std::size_t n, const std::vector<std::pair<Element, Element>>& arcs) {
  std::vector<std::vector<Tuple>> rel(1);
  for (auto [u, v] : arcs) rel[0].push_back({u, v});
  return Structure(edge_signature(), n, std::move(rel));
}

/// Symmetric graph: both orientations of every edge.
inline Structure graph(std::size_t n, const std::vector<std::pair<Element, Element>>& edges) {
  std::vector<std::pair<Element, Element>> arcs;
  for (auto [u, v] : edges) {
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  return digraph(n, arcs);
}

inline Structure complete(std::size_t n) {
  std::vector<std::pair<Element, Element>> e;
  for (Element u = 0; u < n; ++u) {
    for (Element v = u + 1; v < n; ++v) e.emplace_back(u, v);
  }
  return graph(n, e);
}

inline Structure cycle(std::size_t n) {
  std::vector<std::pair<Element, Element>> e;
  for (Element u = 0; u < n; ++u) e.emplace_back(u, static_cast<Element>((u + 1) % n));
  return graph(n, e);
}

/// Small structure over one binary and one unary symbol.
inline Structure random_small(Rng& rng, std::size_t n, double p) {
  return random_structure(rng, Signature({{"E", 2}, {"P", 1}}), n, p);
}

}  // namespace sheafcsp::testing
