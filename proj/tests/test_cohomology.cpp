#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "sheafcsp/affine.hpp"
#include "sheafcsp/brute_force.hpp"
#include "sheafcsp/classical.hpp"
#include "sheafcsp/cohomology.hpp"
#include "sheafcsp/compatibility.hpp"
#include "sheafcsp/errors.hpp"
#include "sheafcsp/graph.hpp"
#include "sheafcsp/report.hpp"

using namespace sheafcsp;
using namespace sheafcsp::testing;

namespace {

// Plugs a witness into the unpinned rows.
bool witness_satisfies_rows(const SectionSet& s, const std::vector<ZLinearSection>& w) {
  const auto off = variable_offsets(s);
  std::vector<Integer> flat(off.back());
  for (const auto& z : w) {
    for (std::size_t i = 0; i < z.coefficients.size(); ++i) flat[off[z.context] + i] = z.coefficients[i];
  }
  for (const auto& row : compatibility_rows(s)) {
    Integer sum = 0;
    for (const auto& [v, c] : row) sum += c * flat[v];
    if (sum != 0) return false;
  }
  return true;
}

void expect_flags_match_direct(const SectionSet& s) {
  const auto flags = s.kind() == SectionKind::hom ? zext_flags(s, nullptr, 2) : zbext_flags(s, nullptr, 2);
  const auto inv = s.kind() == SectionKind::isom ? std::optional(invert_section_set(s)) : std::nullopt;
  for (ContextId c = 0; c < s.contexts().count(); ++c) {
    for (std::size_t i = 0; i < s.at(c).size(); ++i) {
      auto sec = s.section(c, i);
      bool direct = z_extendable_direct(s, sec);
      if (inv) direct = direct && z_extendable_direct(*inv, inverse(sec));
      ASSERT_EQ(static_cast<bool>(flags[c][i]), direct)
          << "context " << c << " section " << i << " k " << s.k();
    }
  }
}

std::size_t total_of(const std::vector<std::size_t>& v) {
  std::size_t t = 0;
  for (auto x : v) t += x;
  return t;
}

}  // namespace

TEST(Compatibility, SingleElement) {
  auto a = digraph(1, {});
  auto b = digraph(2, {});
  auto s = enumerate_sections(a, b, 1, SectionKind::hom);
  auto sys = build_compatibility_system(s, make_section({{0, 1}}));
  // One row: α_{0↦0} + α_{0↦1} - α_∅ = 0 with the pin substituted.
  EXPECT_EQ(sys.matrix.rows(), 1u);
  EXPECT_EQ(sys.matrix.cols(), 1u);
  auto w = z_extension_witness(s, make_section({{0, 1}}));
  ASSERT_TRUE(w);
  EXPECT_EQ((*w)[0].coefficients[0], 1);
  EXPECT_EQ((*w)[1].coefficients, (std::vector<Integer>{0, 1}));
  EXPECT_THROW(build_compatibility_system(s, make_section({{0, 5}})), InputError);
}

TEST(Compatibility, DimensionsMatchCounts) {
  Rng rng(4);
  auto a = random_structure(rng, Signature({{"E", 2}}), 6, 0.2);
  auto b = complete(2);
  auto s = enumerate_sections(a, b, 3, SectionKind::hom);
  std::size_t vars = 0;
  std::size_t rows = 0;
  const auto& lat = s.contexts();
  for (ContextId c = 0; c < lat.count(); ++c) {
    vars += s.at(c).size();
    for (std::size_t p = 0; p < lat.size_of(c); ++p) rows += s.at(lat.face(c, p)).size();
  }
  const ContextId some = lat.first_of_size(2);
  ASSERT_FALSE(s.at(some).empty());
  auto sys = build_compatibility_system(s, s.section(some, 0));
  EXPECT_EQ(sys.variables(), vars);
  EXPECT_EQ(sys.matrix.rows(), rows);
  EXPECT_EQ(sys.matrix.cols(), vars - s.at(some).size());
}

TEST(Zext, GlobalSectionRestrictionsAreExtendable) {
  auto a = cycle(4);
  auto b = complete(2);
  auto s = enumerate_sections(a, b, 3, SectionKind::hom);
  auto f = make_section({{0, 0}, {1, 1}, {2, 0}});
  EXPECT_TRUE(z_extendable(s, f));
  auto w = z_extension_witness(s, f);
  ASSERT_TRUE(w);
  EXPECT_TRUE(witness_satisfies_rows(s, *w));
}

TEST(Zext, FullH1EverySingletonExtends) {
  auto s = enumerate_sections(cycle(5), complete(3), 1, SectionKind::hom);
  auto flags = zext_flags(s);
  for (const auto& f : flags) {
    for (char x : f) EXPECT_TRUE(x);
  }
}

TEST(Zext, TseitinK4FailsEverywhere) {
  std::vector<std::uint32_t> charge{1, 0, 0, 0};
  auto [a, b] = affine_to_instance(tseitin_system(complete_graph(4), charge));
  auto s = classical_fixpoint(enumerate_sections(a, b, 3, SectionKind::hom));
  ASSERT_FALSE(s.empty());
  auto flags = zext_flags(s);
  for (ContextId c = 0; c < flags.size(); ++c) {
    for (char x : flags[c]) EXPECT_FALSE(x);
  }
  EXPECT_FALSE(z_extendable(s, LocalSection{}));
}

TEST(Zext, WitnessIsConsistentAndPinned) {
  Rng rng(12);
  for (int round = 0; round < 20; ++round) {
    auto a = random_small(rng, 3 + rng.below(2), 0.3);
    auto b = random_small(rng, 2 + rng.below(2), 0.6);
    auto s = classical_fixpoint(enumerate_sections(a, b, 2, SectionKind::hom));
    for (ContextId c = 0; c < s.contexts().count(); ++c) {
      for (std::size_t i = 0; i < s.at(c).size(); ++i) {
        auto w = z_extension_witness(s, s.section(c, i));
        if (!w) continue;
        EXPECT_TRUE(witness_satisfies_rows(s, *w));
        for (std::size_t j = 0; j < s.at(c).size(); ++j) {
          EXPECT_EQ((*w)[c].coefficients[j], j == i ? 1 : 0);
        }
      }
    }
  }
}

TEST(Zext, AmortizedMatchesDirectOnRandomPresheaves) {
  Rng rng(2024);
  for (int round = 0; round < 80; ++round) {
    const std::size_t k = 1 + rng.below(3);
    auto a = random_small(rng, 2 + rng.below(3), 0.25);
    auto b = random_small(rng, 2 + rng.below(2), 0.6);
    auto full = enumerate_sections(a, b, k, SectionKind::hom);
    expect_flags_match_direct(full);
    expect_flags_match_direct(classical_fixpoint(full));
    // A random sub-presheaf exercises contexts that are not products.
    auto codes = full.codes();
    for (auto& v : codes) {
      std::erase_if(v, [&](SectionCode) { return rng.chance(1, 4); });
    }
    SectionSet thinned(full.source_ptr(), full.target_ptr(), k, SectionKind::hom, full.lattice_ptr(),
                       codes);
    expect_flags_match_direct(downward_close(thinned));
    expect_flags_match_direct(thinned);
  }
}

TEST(Zext, AmortizedMatchesDirectForIsomorphisms) {
  Rng rng(77);
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = 2 + rng.below(3);
    auto a = random_small(rng, n, 0.3);
    auto b = random_small(rng, n, 0.3);
    auto s = enumerate_sections(a, b, 1 + rng.below(3), SectionKind::isom);
    expect_flags_match_direct(s);
    expect_flags_match_direct(wl_fixpoint(s));
  }
}

TEST(Zext, AffineInstancesCrossCheck) {
  Rng rng(31);
  for (int round = 0; round < 10; ++round) {
    AffineParams p;
    p.q = 2 + static_cast<std::uint32_t>(rng.below(2));
    p.variables = 4;
    p.equations = 3;
    p.max_width = 2;
    auto [a, b] = affine_to_instance(random_affine(rng, p));
    expect_flags_match_direct(enumerate_sections(a, b, 2, SectionKind::hom));
  }
}

TEST(Invert, Involution) {
  auto a = digraph(3, {{0, 1}, {1, 2}});
  auto s = enumerate_sections(a, a, 2, SectionKind::isom);
  auto inv = invert_section_set(s);
  EXPECT_EQ(inv.total(), s.total());
  EXPECT_EQ(invert_section_set(inv), s);
  for (ContextId c = 0; c < inv.contexts().count(); ++c) {
    for (std::size_t i = 0; i < inv.at(c).size(); ++i) {
      EXPECT_TRUE(is_partial_iso(inv.section(c, i), a, a));
    }
  }
  // Identity restrictions invert to themselves.
  auto rigid = wl_fixpoint(s);
  EXPECT_EQ(invert_section_set(rigid), rigid);
  EXPECT_THROW(invert_section_set(enumerate_sections(a, a, 2, SectionKind::hom)), ContractViolation);
}

TEST(Zbext, SymmetricAndTrueOnIsomorphisms) {
  auto a = cycle(4);
  auto s = enumerate_sections(a, a, 2, SectionKind::isom);
  auto inv = invert_section_set(s);
  for (ContextId c = 0; c < s.contexts().count(); ++c) {
    for (std::size_t i = 0; i < s.at(c).size(); ++i) {
      auto sec = s.section(c, i);
      EXPECT_EQ(z_bi_extendable(s, sec), z_bi_extendable(inv, inverse(sec)));
    }
  }
  EXPECT_TRUE(z_bi_extendable(s, make_section({{0, 0}, {1, 1}}, SectionKind::isom)));
}

TEST(CohomFixpoint, RefinesClassicalAndIsSound) {
  Rng rng(99);
  for (int round = 0; round < 60; ++round) {
    const std::size_t k = 1 + rng.below(3);
    auto a = random_small(rng, 2 + rng.below(3), 0.3);
    auto b = random_small(rng, 2 + rng.below(2), 0.5);
    auto s = enumerate_sections(a, b, k, SectionKind::hom);
    auto cl = classical_fixpoint(s);
    auto co = cohom_consistency_fixpoint(s);
    for (ContextId c = 0; c < co.contexts().count(); ++c) {
      for (auto code : co.at(c)) EXPECT_TRUE(cl.find(c, code).has_value());
    }
    const bool hom = brute_force_hom(a, b, 1 << 20).status == SearchStatus::found;
    if (hom) EXPECT_FALSE(co.empty());
    if (co.empty()) EXPECT_FALSE(hom);
    EXPECT_EQ(cohom_consistency_fixpoint(co), co);
  }
}

TEST(CohomFixpoint, KMonotone) {
  Rng rng(42);
  for (int round = 0; round < 30; ++round) {
    auto a = random_small(rng, 3 + rng.below(2), 0.3);
    auto b = random_small(rng, 2, 0.5);
    bool prev = true;
    for (std::size_t k = 1; k <= 3; ++k) {
      bool acc = decide_cohom_k_consistency(a, b, k).accept;
      if (acc) EXPECT_TRUE(prev);
      prev = acc;
    }
  }
}

TEST(CohomWl, SymmetryAndInversion) {
  Rng rng(17);
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = 2 + rng.below(3);
    auto a = random_small(rng, n, 0.35);
    auto b = random_small(rng, n, 0.35);
    const std::size_t k = 1 + rng.below(2);
    auto ab = cohom_wl_fixpoint(enumerate_sections(a, b, k, SectionKind::isom));
    auto ba = cohom_wl_fixpoint(enumerate_sections(b, a, k, SectionKind::isom));
    EXPECT_EQ(invert_section_set(ab), ba);
    auto wl = wl_fixpoint(enumerate_sections(a, b, k, SectionKind::isom));
    for (ContextId c = 0; c < ab.contexts().count(); ++c) {
      for (auto code : ab.at(c)) EXPECT_TRUE(wl.find(c, code).has_value());
    }
    if (!ab.empty()) {
      EXPECT_TRUE(decide_cohom_k_consistency(a, b, k).accept);
      EXPECT_TRUE(decide_cohom_k_consistency(b, a, k).accept);
    }
    if (brute_force_iso(a, b, 1 << 20).status == SearchStatus::found) EXPECT_FALSE(ab.empty());
  }
}

TEST(CohomWl, ContractViolations) {
  auto s = enumerate_sections(complete(2), complete(3), 1, SectionKind::isom);
  EXPECT_THROW(cohom_wl_fixpoint(s), ContractViolation);
  EXPECT_THROW(cohom_consistency_fixpoint(s), ContractViolation);
}

TEST(Decide, SelfAccepts) {
  auto a = cycle(5);
  EXPECT_TRUE(decide_cohom_k_consistency(a, a, 2).accept);
  EXPECT_TRUE(decide_cohom_k_wl(a, a, 2).accept);
}

TEST(Decide, SizeMismatchHasReason) {
  auto r = decide_cohom_k_wl(complete(3), complete(4), 2);
  EXPECT_FALSE(r.accept);
  EXPECT_EQ(r.reason, "size");
  EXPECT_NE(to_json(r).find("\"reason\":\"size\""), std::string::npos);
}

TEST(Decide, Z4AffineInstances) {
  // x + y + 2z = 1, x + 3y = 1 over ℤ₄: x = y + 1 and y + z even.
  AffineSystem sat{4, 3, {{{0, 1, 2}, {1, 1, 2}, 1}, {{0, 1}, {1, 3}, 1}}};
  ASSERT_EQ(solve_affine_brute(sat, 1 << 20).status, SearchStatus::found);
  auto [a, b] = affine_to_instance(sat);
  EXPECT_TRUE(decide_cohom_k_consistency(a, b, 3).accept);

  // Oriented Tseitin over K4: edge uv (u < v) enters vertex u with +1 and
  // v with -1; the equations sum to 0 = 1, yet every small part is fine.
  const auto g = complete_graph(4);
  AffineSystem unsat{4, g.edge_count(), {}};
  for (Vertex x = 0; x < 4; ++x) {
    AffineEquation e;
    for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
      auto [u, v] = g.edges()[i];
      if (u == x || v == x) {
        e.vars.push_back(i);
        e.coeffs.push_back(u == x ? 1 : 3);
      }
    }
    e.constant = x == 0 ? 1 : 0;
    unsat.equations.push_back(e);
  }
  ASSERT_EQ(solve_affine_brute(unsat, 1 << 20).status, SearchStatus::none);
  auto [ua, ub] = affine_to_instance(unsat);
  auto r = decide(Problem::csp, Method::cohomological, ua, ub, 3, true);
  EXPECT_FALSE(r.accept);
  ASSERT_TRUE(r.classical);
  EXPECT_TRUE(r.classical->accept);
  EXPECT_EQ(r.iterations, 1u);
  ASSERT_EQ(r.removed.size(), 1u);
  EXPECT_EQ(r.removed[0].zext, total_of(r.classical->sections));
}

TEST(Decide, CompareFillsBothSummaries) {
  std::vector<std::uint32_t> charge{1, 0, 0, 0};
  auto [a, b] = affine_to_instance(tseitin_system(complete_graph(4), charge));
  auto r = decide(Problem::csp, Method::classical, a, b, 3, true);
  EXPECT_TRUE(r.accept);
  ASSERT_TRUE(r.classical && r.cohomological);
  EXPECT_TRUE(r.classical->accept);
  EXPECT_FALSE(r.cohomological->accept);
  EXPECT_EQ(r.method, "classical-consistency");
  auto json = to_json(r, false);
  EXPECT_EQ(json.find("\"ms\""), std::string::npos);
  EXPECT_EQ(json.rfind("{\"verdict\":\"accept\",\"k\":3,\"method\":\"classical-consistency\"", 0), 0u);
}

TEST(Report, JsonIsDeterministic) {
  auto a = cycle(5);
  auto b = complete(3);
  auto r1 = decide(Problem::csp, Method::cohomological, a, b, 2, true);
  auto r2 = decide(Problem::csp, Method::cohomological, a, b, 2, true);
  EXPECT_EQ(to_json(r1, false), to_json(r2, false));
}
