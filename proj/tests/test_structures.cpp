#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "sheafcsp/brute_force.hpp"
#include "sheafcsp/errors.hpp"
#include "sheafcsp/structure_io.hpp"

using namespace sheafcsp;
using namespace sheafcsp::testing;

TEST(Signature, RejectsDuplicatesAndZeroArity) {
  EXPECT_THROW(Signature({{"E", 2}, {"E", 1}}), InputError);
  EXPECT_THROW(Signature({{"P", 0}}), InputError);
  Signature s({{"E", 2}, {"R", 3}});
  EXPECT_EQ(s.index_of("R"), 1u);
  EXPECT_EQ(s.max_arity(), 3u);
}

TEST(Validate, EmptyStructureIsFine) {
  EXPECT_TRUE(validate_structure(StructureData{}).empty());
}

TEST(Validate, ReportsRangeAndArity) {
  StructureData d;
  d.signature = Signature({{"E", 2}, {"T", 3}});
  d.size = 3;
  d.relations = {{{0, 5}}, {{0, 1}}};
  auto v = validate_structure(d);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].symbol, "E");
  EXPECT_EQ(v[0].tuple_index, 0u);
  EXPECT_NE(v[0].message.find("out of range"), std::string::npos);
  EXPECT_EQ(v[1].symbol, "T");
  EXPECT_NE(v[1].message.find("arity"), std::string::npos);
  EXPECT_THROW(Structure{d}, InputError);
}

TEST(Structure, DeduplicatesAndIndexesBySupport) {
  auto s = digraph(3, {{0, 1}, {0, 1}, {1, 1}});
  EXPECT_EQ(s.tuple_count(), 2u);
  std::vector<Element> one{1};
  EXPECT_EQ(s.tuples_on(one).size(), 1u);
  std::vector<Element> pair{0, 1};
  EXPECT_EQ(s.tuples_on(pair).size(), 1u);
  std::vector<Element> none{0, 2};
  EXPECT_TRUE(s.tuples_on(none).empty());
}

TEST(PartialHom, SpecExamples) {
  auto a = digraph(2, {{0, 1}});
  auto b = digraph(2, {{0, 1}});
  auto empty = digraph(2, {});
  EXPECT_TRUE(is_partial_hom(make_section({{0, 0}, {1, 1}}), a, b));
  EXPECT_FALSE(is_partial_hom(make_section({{0, 0}, {1, 1}}), a, empty));
  EXPECT_TRUE(is_partial_hom(make_section({{0, 0}}), a, empty));
  EXPECT_THROW(is_partial_hom(make_section({{0, 7}}), a, b), InputError);
}

TEST(PartialIso, SpecExamples) {
  auto a = digraph(2, {{0, 1}});
  auto empty = digraph(2, {});
  EXPECT_TRUE(is_partial_iso(make_section({{0, 0}, {1, 1}}, SectionKind::isom), a, a));
  EXPECT_FALSE(is_partial_iso(make_section({{0, 0}, {1, 1}}, SectionKind::isom), empty, a));
  LocalSection repeated{{0, 1}, {1, 1}, SectionKind::hom};
  EXPECT_FALSE(is_partial_iso(repeated, empty, empty));
}

TEST(PartialHom, FullDomainAgreesWithBruteForce) {
  Rng rng(11);
  for (int round = 0; round < 40; ++round) {
    auto a = random_small(rng, 1 + rng.below(4), 0.3);
    auto b = random_small(rng, 1 + rng.below(3), 0.5);
    // Every total map: hom iff the full-domain section is a partial hom.
    std::vector<Element> map(a.size(), 0);
    bool any = false;
    for (;;) {
      LocalSection s;
      for (Element x = 0; x < a.size(); ++x) {
        s.domain.push_back(x);
        s.values.push_back(map[x]);
      }
      bool hom = is_partial_hom(s, a, b);
      EXPECT_EQ(hom, is_homomorphism(map, a, b));
      any = any || hom;
      // Restrictions of a partial hom stay partial homs.
      if (hom && a.size() > 1) {
        LocalSection r{{s.domain.begin() + 1, s.domain.end()},
                       {s.values.begin() + 1, s.values.end()}, SectionKind::hom};
        EXPECT_TRUE(is_partial_hom(r, a, b));
      }
      std::size_t i = 0;
      while (i < map.size() && map[i] + 1 == b.size()) map[i++] = 0;
      if (i == map.size()) break;
      ++map[i];
    }
    EXPECT_EQ(any, brute_force_hom(a, b, 1 << 20).status == SearchStatus::found);
  }
}

TEST(PartialIso, InverseOfIsoIsIso) {
  Rng rng(5);
  for (int round = 0; round < 30; ++round) {
    auto a = random_small(rng, 3, 0.4);
    auto b = random_small(rng, 3, 0.4);
    for (Element x = 0; x < 3; ++x) {
      for (Element y = 0; y < 3; ++y) {
        for (Element u = 0; u < 3; ++u) {
          for (Element v = 0; v < 3; ++v) {
            if (x >= y || u == v) continue;
            auto s = make_section({{x, u}, {y, v}}, SectionKind::isom);
            if (is_partial_iso(s, a, b)) EXPECT_TRUE(is_partial_iso(inverse(s), b, a));
          }
        }
      }
    }
  }
}

TEST(BruteForce, SpecExamples) {
  auto r = brute_force_hom(cycle(4), complete(2), 1000);
  ASSERT_EQ(r.status, SearchStatus::found);
  EXPECT_TRUE(is_homomorphism(r.map, cycle(4), complete(2)));
  EXPECT_EQ(brute_force_hom(cycle(3), complete(2), 1000).status, SearchStatus::none);
  EXPECT_EQ(brute_force_hom(complete(4), complete(3), 3).status, SearchStatus::budget_exceeded);
}

TEST(BruteForce, IsoExamples) {
  auto a = cycle(5);
  auto r = brute_force_iso(a, a, 1000);
  ASSERT_EQ(r.status, SearchStatus::found);
  EXPECT_TRUE(is_isomorphism(r.map, a, a));
  EXPECT_EQ(brute_force_iso(complete(3), complete(4), 1000).status, SearchStatus::none);
  auto path = digraph(3, {{0, 1}, {1, 2}});
  auto tri = digraph(3, {{0, 1}, {1, 2}, {2, 0}});
  EXPECT_EQ(brute_force_iso(path, tri, 1000).status, SearchStatus::none);
}

TEST(StructureJson, RoundTrip) {
  auto s = graph(4, {{0, 1}, {2, 3}});
  auto text = to_structure_json(s);
  EXPECT_EQ(parse_structure_json(text), s);
  auto spec = parse_structure_json(
      R"({"signature":[{"name":"E","arity":2}],"size":4,"relations":{"E":[[0,1],[1,0]]}})");
  EXPECT_EQ(spec.size(), 4u);
  EXPECT_EQ(spec.tuple_count(), 2u);
}

TEST(StructureJson, DiagnosticsCarryLines) {
  const std::string bad = "{\"signature\":[{\"name\":\"E\",\"arity\":2}],\n\"size\":2,\n"
                          "\"relations\":{\"E\":[\n[0,1],\n[0,9]]}}";
  try {
    parse_structure_json(bad);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_structure_json("{"), InputError);
  EXPECT_THROW(parse_structure_json(R"({"signature":[],"size":1,"relations":{"X":[]}})"),
               InputError);
}
