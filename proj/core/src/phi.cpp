#include "sheafcsp/phi.hpp"

#include <algorithm>
#include <map>

#include "sheafcsp/affine.hpp"
#include "sheafcsp/cfi.hpp"
#include "sheafcsp/errors.hpp"

namespace sheafcsp {

std::pair<Structure, Structure> phi_interpretation(const Structure& cfi, std::uint32_t q) {
  if (q < 2) throw InputError("modulus must be at least 2");
  if (!(cfi.signature() == Signature(cfi_signature(q)))) {
    throw InputError("input does not carry the CFI signature for q = " + std::to_string(q));
  }
  const std::size_t n = cfi.size();

  // Gadgets: classes of the preorder, ordered by it. An element's rank is
  // the number of elements strictly below it.
  std::vector<std::size_t> below(n, 0);
  for (const auto& t : cfi.tuples(0)) ++below[t[1]];
  std::vector<std::size_t> ranks(below);
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  std::vector<std::uint32_t> gadget(n);
  for (std::size_t a = 0; a < n; ++a) {
    gadget[a] = static_cast<std::uint32_t>(
        std::lower_bound(ranks.begin(), ranks.end(), below[a]) - ranks.begin());
  }
  std::size_t expected = 0;
  std::vector<std::size_t> class_size(ranks.size(), 0);
  for (std::size_t a = 0; a < n; ++a) ++class_size[gadget[a]];
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] != expected) throw InputError("prec is not a linear preorder");
    expected += class_size[i];
  }
  for (const auto& t : cfi.tuples(0)) {
    if (gadget[t[0]] >= gadget[t[1]]) throw InputError("prec is not a linear preorder");
  }
  std::size_t pairs_expected = 0;
  for (std::size_t i = 0; i < class_size.size(); ++i) {
    for (std::size_t j = i + 1; j < class_size.size(); ++j) pairs_expected += class_size[i] * class_size[j];
  }
  if (pairs_expected != cfi.tuples(0).size()) throw InputError("prec is not a linear preorder");

  // Adjacency via the edge relations.
  std::vector<std::vector<Element>> adj(n);
  for (std::uint32_t c = 0; c < q; ++c) {
    for (const auto& t : cfi.tuples(3 + c)) adj[t[0]].push_back(t[1]);
  }
  for (auto& v : adj) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  // Variable numbering.
  std::map<std::pair<Element, Element>, std::uint32_t> pair_id;
  for (Element a = 0; a < n; ++a) {
    for (Element b : adj[a]) pair_id.emplace(std::make_pair(a, b), static_cast<std::uint32_t>(pair_id.size()));
  }
  const auto npairs = static_cast<std::uint32_t>(pair_id.size());
  auto w = [&](Element a, Element b) {
    auto it = pair_id.find({a, b});
    if (it == pair_id.end()) throw InputError("relation joins non-adjacent gadgets");
    return it->second;
  };
  auto z = [&](Element a, Element b) { return npairs + w(a, b); };

  AffineSystem sys;
  sys.q = q;
  sys.variables = 2 * std::size_t{npairs};
  const std::uint32_t minus_one = q - 1;
  auto add = [&](std::vector<std::uint32_t> vars, std::vector<std::uint32_t> coeffs, std::uint32_t c) {
    sys.equations.push_back({std::move(vars), std::move(coeffs), c % q});
  };

  // Step 1: one value per (a, neighbour gadget).
  for (Element a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < adj[a].size(); ++i) {
      for (std::size_t j = i + 1; j < adj[a].size(); ++j) {
        const Element b = adj[a][i];
        const Element b2 = adj[a][j];
        if (gadget[b] != gadget[b2]) continue;
        add({w(a, b), w(a, b2)}, {1, minus_one}, 0);
        add({z(a, b), z(a, b2)}, {1, minus_one}, 0);
      }
    }
  }
  // Step 2.
  for (const auto& t : cfi.tuples(1)) add({w(t[0], t[2]), w(t[1], t[2])}, {1, minus_one}, 0);
  for (const auto& t : cfi.tuples(2)) add({w(t[0], t[2]), w(t[1], t[2])}, {1, minus_one}, 1);
  for (std::uint32_t c = 0; c < q; ++c) {
    for (const auto& t : cfi.tuples(3 + c)) add({w(t[0], t[1]), w(t[1], t[0])}, {1, 1}, c);
  }
  // Step 3: running totals along the neighbour gadgets of a in order.
  for (Element a = 0; a < n; ++a) {
    std::vector<std::uint32_t> order;
    for (Element b : adj[a]) order.push_back(gadget[b]);
    std::sort(order.begin(), order.end());
    order.erase(std::unique(order.begin(), order.end()), order.end());
    for (Element b : adj[a]) {
      const auto pos = static_cast<std::size_t>(
          std::lower_bound(order.begin(), order.end(), gadget[b]) - order.begin());
      if (pos == 0) {
        add({w(a, b), z(a, b)}, {1, minus_one}, 0);
      } else {
        for (Element prev : adj[a]) {
          if (gadget[prev] != order[pos - 1]) continue;
          add({z(a, prev), w(a, b), z(a, b)}, {1, 1, minus_one}, 0);
        }
      }
      if (pos + 1 == order.size()) add({z(a, b)}, {1}, 0);
    }
  }
  return affine_to_instance(sys);
}

}  // namespace sheafcsp
