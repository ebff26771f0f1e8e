#include <gtest/gtest.h>

#include <set>

#include "sheafcsp/affine.hpp"
#include "sheafcsp/brute_force.hpp"
#include "sheafcsp/cfi.hpp"
#include "sheafcsp/errors.hpp"
#include "sheafcsp/graph.hpp"
#include "sheafcsp/phi.hpp"
#include "sheafcsp/random_instances.hpp"

using namespace sheafcsp;

namespace {

std::vector<std::uint32_t> twist_with_total(const OrderedGraph& g, std::uint32_t total) {
  std::vector<std::uint32_t> t(g.edge_count(), 0);
  t[0] = total;
  return t;
}

// Small connected bases with no isolated vertex.
std::vector<OrderedGraph> small_bases() {
  return {complete_graph(2), complete_graph(3), cycle_graph(4), complete_graph(4),
          OrderedGraph(4, {{0, 1}, {1, 2}, {2, 3}}), OrderedGraph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}})};
}

}  // namespace

TEST(Graph, NormalizesEdges) {
  OrderedGraph g(3, {{1, 0}, {0, 1}, {2, 1}});
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.edges()[0], (std::pair<Vertex, Vertex>{0, 1}));
  EXPECT_EQ(g.neighbours(1), (std::vector<Vertex>{0, 2}));
  EXPECT_TRUE(g.adjacent(2, 1));
  EXPECT_THROW(OrderedGraph(2, {{1, 1}}), InputError);
  EXPECT_THROW(OrderedGraph(2, {{0, 2}}), InputError);
  EXPECT_THROW(g.edge_index(0, 2), InputError);
}

TEST(Graph, TextFormat) {
  auto spec = parse_graph_text("# K3\n3\n0 1\n1 2\n0 2\ntwist 2 1 1\n");
  EXPECT_EQ(spec.graph, complete_graph(3));
  EXPECT_EQ(spec.twists.at({1, 2}), 1);
  std::vector<std::uint32_t> t{0, 0, 1};
  EXPECT_EQ(parse_graph_text(to_graph_text(spec.graph, &t)).twists.at({1, 2}), 1);
  try {
    parse_graph_text("3\n0 1\n0 x\n");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_graph_text("3\n0 1\ntwist 0 2 1\n"), InputError);
}

TEST(Graph, NamedBases) {
  for (auto name : {"k4", "k33", "prism", "petersen"}) {
    auto g = named_graph(name);
    for (Vertex v = 0; v < g.vertex_count(); ++v) EXPECT_EQ(g.degree(v), 3u) << name;
  }
  EXPECT_EQ(named_graph("c5").edge_count(), 5u);
  EXPECT_THROW(named_graph("x"), InputError);
}

TEST(Ring, Examples) {
  auto b = ring_structure(2, {{{1, 1}, 0}, {{1, 1, 1}, 1}});
  EXPECT_EQ(b.tuples(0), (std::vector<Tuple>{{0, 0}, {1, 1}}));
  EXPECT_EQ(b.tuples(1).size(), 4u);
  EXPECT_EQ(b.signature()[1].name, "E_1_1_1_b1");
  EXPECT_TRUE(ring_structure(4, {{{2}, 1}}).tuples(0).empty());
  EXPECT_THROW(ring_structure(1, {}), InputError);
}

TEST(Ring, RelationSizesWithAUnitCoefficient) {
  for (std::uint32_t q : {2U, 3U, 4U}) {
    for (std::size_t m = 1; m <= 3; ++m) {
      std::vector<std::uint32_t> c(m, 0);
      for (;;) {
        bool unit = false;
        for (auto x : c) unit = unit || std::gcd(x, q) == 1;
        if (unit) {
          for (std::uint32_t b = 0; b < q; ++b) {
            auto s = ring_structure(q, {{c, b}});
            std::size_t expect = 1;
            for (std::size_t i = 1; i < m; ++i) expect *= q;
            EXPECT_EQ(s.tuples(0).size(), expect);
          }
        }
        std::size_t i = 0;
        while (i < m && c[i] + 1 == q) c[i++] = 0;
        if (i == m) break;
        ++c[i];
      }
    }
  }
}

TEST(Affine, InstanceRoundTrip) {
  AffineSystem contra{2, 2, {{{0, 1}, {1, 1}, 0}, {{0, 1}, {1, 1}, 1}}};
  auto [a, b] = affine_to_instance(contra);
  EXPECT_EQ(brute_force_hom(a, b, 1000).status, SearchStatus::none);
  EXPECT_EQ(b.signature().size(), 2u);
  Rng rng(6);
  for (int round = 0; round < 100; ++round) {
    AffineParams p;
    p.q = 2 + static_cast<std::uint32_t>(rng.below(3));
    p.variables = 3 + rng.below(4);
    p.equations = 1 + rng.below(5);
    p.planted = rng.chance(1, 2);
    auto sys = random_affine(rng, p);
    auto [x, y] = affine_to_instance(sys);
    auto oracle = solve_affine_brute(sys, 1 << 20);
    EXPECT_EQ(x.size(), sys.variables);
    EXPECT_EQ(y.size(), sys.q);
    EXPECT_EQ(oracle.status == SearchStatus::found,
              brute_force_hom(x, y, 1 << 20).status == SearchStatus::found);
    if (oracle.status == SearchStatus::found) EXPECT_TRUE(satisfies(sys, oracle.assignment));
    if (p.planted) EXPECT_EQ(oracle.status, SearchStatus::found);
  }
}

TEST(Affine, Validation) {
  AffineSystem bad{2, 2, {{{0, 5}, {1, 1}, 0}}};
  EXPECT_THROW(bad.validate(), InputError);
  AffineSystem wide{2, 4, {{{0, 1, 2, 3}, {1, 1, 1, 1}, 0}}};
  EXPECT_NO_THROW(wide.validate());
  EXPECT_THROW(wide.validate(3), InputError);
  EXPECT_TRUE(is_prime_power(4));
  EXPECT_TRUE(is_prime_power(9));
  EXPECT_FALSE(is_prime_power(6));
}

TEST(Tseitin, Examples) {
  auto k4 = complete_graph(4);
  auto zero = tseitin_system(k4, {0, 0, 0, 0});
  EXPECT_EQ(zero.variables, 6u);
  EXPECT_EQ(solve_affine_brute(zero, 1000).status, SearchStatus::found);
  EXPECT_EQ(solve_affine_brute(tseitin_system(k4, {1, 0, 0, 0}), 1000).status, SearchStatus::none);
  auto c4 = tseitin_system(cycle_graph(4), {1, 1, 0, 0});
  EXPECT_EQ(solve_affine_brute(c4, 1000).status, SearchStatus::found);
  // Two components: parity is per component.
  OrderedGraph two(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  EXPECT_EQ(solve_affine_brute(tseitin_system(two, {1, 0, 0, 1, 0, 0}), 1000).status,
            SearchStatus::none);
  EXPECT_EQ(solve_affine_brute(tseitin_system(two, {1, 1, 0, 0, 0, 0}), 1000).status,
            SearchStatus::found);
  EXPECT_THROW(tseitin_system(OrderedGraph(2, {}), {1, 0}), InputError);
}

TEST(Cfi, Sizes) {
  CfiSpec k4{complete_graph(4), 2, std::vector<std::uint32_t>(6, 0)};
  EXPECT_EQ(cfi_structure(k4).size(), 16u);
  CfiSpec tri{complete_graph(3), 3, std::vector<std::uint32_t>(3, 0)};
  EXPECT_EQ(cfi_structure(tri).size(), 9u);
  CfiSpec isolated{OrderedGraph(3, {{0, 1}}), 2, {0}};
  EXPECT_THROW(cfi_structure(isolated), InputError);
  CfiSpec short_twist{complete_graph(3), 2, {0}};
  EXPECT_THROW(cfi_structure(short_twist), InputError);
}

TEST(Cfi, PreorderAndEdgeRelations) {
  for (std::uint32_t q : {2U, 3U}) {
    CfiSpec spec{complete_graph(4), q, {1, 0, 0, 0, 0, 0}};
    auto s = cfi_structure(spec);
    auto lay = cfi_layout(spec);
    const auto& prec = s.tuples(0);
    std::set<std::pair<Element, Element>> rel;
    for (const auto& t : prec) rel.emplace(t[0], t[1]);
    for (Element a = 0; a < s.size(); ++a) {
      for (Element b = 0; b < s.size(); ++b) {
        EXPECT_EQ(rel.count({a, b}) == 1, lay.gadget_of[a] < lay.gadget_of[b]);
      }
    }
    for (std::size_t r = 3; r < s.signature().size(); ++r) {
      for (const auto& t : s.tuples(r)) {
        EXPECT_TRUE(spec.base.adjacent(lay.gadget_of[t[0]], lay.gadget_of[t[1]]));
      }
    }
    EXPECT_EQ(s.signature().size(), 3u + q);
  }
}

TEST(Cfi, IsomorphismTracksTwistTotal) {
  auto g = complete_graph(4);
  for (std::uint32_t q : {2U, 3U}) {
    CfiSpec base{g, q, std::vector<std::uint32_t>(6, 0)};
    auto a = cfi_structure(base);
    for (std::uint32_t total = 0; total < q; ++total) {
      CfiSpec spread{g, q, {0, 0, 0, 0, 0, 0}};
      spread.twist[1] = total;
      spread.twist[4] = 1;
      spread.twist[5] = q - 1;
      auto r = brute_force_iso(a, cfi_structure(spread), 1 << 24);
      EXPECT_EQ(r.status == SearchStatus::found, total == 0) << "q " << q << " total " << total;
    }
  }
}

TEST(CfiEquations, SolvableIffTwistSumsToZero) {
  for (const auto& g : small_bases()) {
    for (std::uint32_t q : {2U, 3U, 4U}) {
      for (std::uint32_t total = 0; total < q; ++total) {
        CfiSpec spec{g, q, twist_with_total(g, total)};
        auto sys = cfi_equations(spec);
        std::size_t vars = 0;
        auto lay = cfi_layout(spec);
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
          vars += (lay.gadget_start[v + 1] - lay.gadget_start[v]) * g.degree(v);
        }
        EXPECT_EQ(sys.variables, vars);
        auto r = solve_affine_brute(sys, 1 << 22);
        ASSERT_NE(r.status, SearchStatus::budget_exceeded);
        EXPECT_EQ(r.status == SearchStatus::found, total == 0);
      }
    }
  }
}

TEST(CfiEquations, IdentityAssignmentSolvesZeroTwist) {
  CfiSpec spec{complete_graph(4), 3, std::vector<std::uint32_t>(6, 0)};
  auto sys = cfi_equations(spec);
  auto lay = cfi_layout(spec);
  std::vector<std::uint32_t> w;
  for (Element a = 0; a < lay.size(); ++a) {
    for (auto v : spec.base.neighbours(lay.gadget_of[a])) w.push_back(lay.value(spec.base, a, v));
  }
  EXPECT_TRUE(satisfies(sys, w));
}

TEST(Phi, ArityAndHomExistence) {
  // K4 at q = 3 is out of the oracle's reach.
  for (const auto& g : {complete_graph(3), cycle_graph(4), complete_graph(4)}) {
    for (std::uint32_t q : {2U, 3U}) {
      if (q == 3 && g.vertex_count() == 4 && g.edge_count() == 6) continue;
      for (std::uint32_t total : {0U, 1U}) {
        CfiSpec spec{g, q, twist_with_total(g, total)};
        auto [a, b] = phi_interpretation(cfi_structure(spec), q);
        EXPECT_LE(a.signature().max_arity(), 3u);
        EXPECT_EQ(b.size(), q);
        auto r = brute_force_hom(a, b, 1ull << 26);
        ASSERT_NE(r.status, SearchStatus::budget_exceeded);
        EXPECT_EQ(r.status == SearchStatus::found, total == 0);
      }
    }
  }
}

TEST(Phi, RejectsNonCfiInput) {
  Structure plain(Signature({{"E", 2}}), 2, {{{0, 1}}});
  EXPECT_THROW(phi_interpretation(plain, 2), InputError);
  CfiSpec spec{complete_graph(3), 2, {0, 0, 0}};
  EXPECT_THROW(phi_interpretation(cfi_structure(spec), 3), InputError);
}

TEST(Random, Deterministic) {
  Rng a(123);
  Rng b(123);
  AffineParams p;
  p.q = 3;
  EXPECT_EQ(random_affine(a, p).equations.size(), p.equations);
  auto x = random_affine(a, p);
  auto y = random_affine(b, p);
  y = random_affine(b, p);
  ASSERT_EQ(x.equations.size(), y.equations.size());
  for (std::size_t i = 0; i < x.equations.size(); ++i) {
    EXPECT_EQ(x.equations[i].vars, y.equations[i].vars);
    EXPECT_EQ(x.equations[i].coeffs, y.equations[i].coeffs);
    EXPECT_EQ(x.equations[i].constant, y.equations[i].constant);
  }
  Rng c(9);
  Rng d(9);
  EXPECT_EQ(random_gnp(c, 10, 0.3), random_gnp(d, 10, 0.3));
}

TEST(Random, RegularGraphs) {
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    auto g = random_regular(rng, 8, 3);
    for (Vertex v = 0; v < 8; ++v) EXPECT_EQ(g.degree(v), 3u);
  }
  EXPECT_THROW(random_regular(rng, 5, 3), InputError);
  EXPECT_THROW(random_regular(rng, 4, 4), InputError);
}

TEST(Random, DensityZeroAndTwists) {
  Rng rng(3);
  AffineParams p;
  p.equations = 0;
  EXPECT_TRUE(random_affine(rng, p).equations.empty());
  auto g = named_graph("petersen");
  for (std::uint32_t total = 0; total < 3; ++total) {
    CfiSpec spec{g, 3, random_twist_with_total(rng, g, 3, total)};
    EXPECT_EQ(spec.twist_total(), total);
  }
}
