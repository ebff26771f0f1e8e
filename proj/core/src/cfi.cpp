#include "sheafcsp/cfi.hpp"

#include <algorithm>

#include "sheafcsp/errors.hpp"

namespace sheafcsp {

void CfiSpec::validate() const {
  if (q < 2) throw InputError("modulus must be at least 2");
  if (twist.size() != base.edge_count()) {
    throw InputError("twist needs one value per edge (" + std::to_string(base.edge_count()) + ")");
  }
  for (auto t : twist) {
    if (t >= q) throw InputError("twist value not reduced mod q");
  }
  for (Vertex v = 0; v < base.vertex_count(); ++v) {
    if (base.degree(v) == 0) {
      throw InputError("vertex " + std::to_string(v) + " is isolated; its gadget is undefined");
    }
  }
}

std::uint32_t CfiSpec::twist_total() const {
  std::uint64_t s = 0;
  for (auto t : twist) s += t;
  return static_cast<std::uint32_t>(s % q);
}

std::uint32_t CfiLayout::value(const OrderedGraph& g, Element a, Vertex v) const {
  const auto& nb = g.neighbours(gadget_of[a]);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) throw ContractViolation("value at a non-neighbour");
  return table[a][static_cast<std::size_t>(it - nb.begin())];
}

CfiLayout cfi_layout(const CfiSpec& spec) {
  spec.validate();
  const auto& g = spec.base;
  const std::uint32_t q = spec.q;
  CfiLayout out;
  out.gadget_start.push_back(0);
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    const std::size_t d = g.degree(x);
    std::vector<std::uint32_t> t(d, 0);
    for (;;) {
      std::uint64_t sum = 0;
      for (auto v : t) sum += v;
      if (sum % q == 0) {
        out.gadget_of.push_back(x);
        out.table.push_back(t);
      }
      std::size_t i = d;
      while (i > 0 && t[i - 1] + 1 == q) t[--i] = 0;
      if (i == 0) break;
      ++t[i - 1];
    }
    out.gadget_start.push_back(out.gadget_of.size());
  }
  return out;
}

std::vector<Symbol> cfi_signature(std::uint32_t q) {
  std::vector<Symbol> s{{"prec", 2}, {"R_I", 3}, {"R_C", 3}};
  for (std::uint32_t c = 0; c < q; ++c) s.push_back({"R_E_" + std::to_string(c), 2});
  return s;
}

Structure cfi_structure(const CfiSpec& spec) {
  const CfiLayout lay = cfi_layout(spec);
  const auto& g = spec.base;
  const std::uint32_t q = spec.q;
  std::vector<std::vector<Tuple>> rels(3 + q);
  auto members = [&](Vertex x) {
    return std::make_pair(static_cast<Element>(lay.gadget_start[x]),
                          static_cast<Element>(lay.gadget_start[x + 1]));
  };
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    for (Vertex y = x + 1; y < g.vertex_count(); ++y) {
      auto [xa, xb] = members(x);
      auto [ya, yb] = members(y);
      for (Element a = xa; a < xb; ++a) {
        for (Element b = ya; b < yb; ++b) rels[0].push_back({a, b});
      }
    }
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.edges()[e];
    for (int orient = 0; orient < 2; ++orient) {
      const Vertex x = orient == 0 ? u : v;
      const Vertex y = orient == 0 ? v : u;
      auto [xa, xb] = members(x);
      auto [ya, yb] = members(y);
      for (Element a = xa; a < xb; ++a) {
        for (Element b = xa; b < xb; ++b) {
          const std::uint32_t ay = lay.value(g, a, y);
          const std::uint32_t by = lay.value(g, b, y);
          const std::size_t rel = ay == by ? 1 : (ay == (by + 1) % q ? 2 : 0);
          if (rel == 0) continue;
          for (Element c = ya; c < yb; ++c) rels[rel].push_back({a, b, c});
        }
      }
    }
    auto [ua, ub] = members(u);
    auto [va, vb] = members(v);
    for (Element a = ua; a < ub; ++a) {
      for (Element b = va; b < vb; ++b) {
        const std::uint32_t s = (lay.value(g, a, v) + lay.value(g, b, u)) % q;
        const std::uint32_t c = (s + q - spec.twist[e]) % q;
        rels[3 + c].push_back({a, b});
        rels[3 + c].push_back({b, a});
      }
    }
  }
  return Structure(Signature(cfi_signature(q)), lay.size(), std::move(rels));
}

AffineSystem cfi_equations(const CfiSpec& spec) {
  const CfiLayout lay = cfi_layout(spec);
  const auto& g = spec.base;
  const std::uint32_t q = spec.q;
  // w_{a,v} numbering: offsets by element.
  std::vector<std::size_t> first(lay.size() + 1, 0);
  for (Element a = 0; a < lay.size(); ++a) first[a + 1] = first[a] + g.degree(lay.gadget_of[a]);
  auto var = [&](Element a, Vertex v) {
    const auto& nb = g.neighbours(lay.gadget_of[a]);
    return static_cast<std::uint32_t>(
        first[a] + static_cast<std::size_t>(std::lower_bound(nb.begin(), nb.end(), v) - nb.begin()));
  };
  AffineSystem sys;
  sys.q = q;
  sys.variables = first.back();
  const std::uint32_t minus_one = q - 1;
  for (Element a = 0; a < lay.size(); ++a) {
    AffineEquation x;
    for (Vertex v : g.neighbours(lay.gadget_of[a])) {
      x.vars.push_back(var(a, v));
      x.coeffs.push_back(1);
    }
    sys.equations.push_back(std::move(x));
  }
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    const auto lo = static_cast<Element>(lay.gadget_start[u]);
    const auto hi = static_cast<Element>(lay.gadget_start[u + 1]);
    for (Vertex v : g.neighbours(u)) {
      for (Element a = lo; a < hi; ++a) {
        for (Element b = lo; b < hi; ++b) {
          const std::uint32_t av = lay.value(g, a, v);
          const std::uint32_t bv = lay.value(g, b, v);
          if (a < b && av == bv) {
            sys.equations.push_back({{var(a, v), var(b, v)}, {1, minus_one}, 0});
          }
          if (a != b && av == (bv + 1) % q) {
            sys.equations.push_back({{var(a, v), var(b, v)}, {1, minus_one}, 1 % q});
          }
        }
      }
    }
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.edges()[e];
    for (Element a = static_cast<Element>(lay.gadget_start[u]); a < lay.gadget_start[u + 1]; ++a) {
      for (Element b = static_cast<Element>(lay.gadget_start[v]); b < lay.gadget_start[v + 1]; ++b) {
        const std::uint32_t s = (lay.value(g, a, v) + lay.value(g, b, u)) % q;
        const std::uint32_t c = (s + q - spec.twist[e]) % q;
        sys.equations.push_back({{var(a, v), var(b, u)}, {1, 1}, c});
      }
    }
  }
  return sys;
}

}  // namespace sheafcsp
