#include "sheafcsp/classical.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "sheafcsp/errors.hpp"
#include "sheafcsp/matching.hpp"

namespace sheafcsp {

namespace {

void check_extension_pre(const SectionSet& s_set, const LocalSection& s) {
  if (s.size() >= s_set.k()) {
    throw ContractViolation("extension property is only defined below size k");
  }
  if (!s_set.contains(s)) throw ContractViolation("section is not in the set");
}

// Candidate targets b for extending s by a (a outside dom(s)).
std::vector<Element> candidates(const SectionSet& s_set, const LocalSection& s,
                                Element a) {
  std::vector<Element> out;
  LocalSection ext = s;
  auto pos = static_cast<std::ptrdiff_t>(
      std::lower_bound(s.domain.begin(), s.domain.end(), a) - s.domain.begin());
  ext.domain.insert(ext.domain.begin() + pos, a);
  ext.values.insert(ext.values.begin() + pos, 0);
  for (Element b = 0; b < s_set.target().size(); ++b) {
    ext.values[static_cast<std::size_t>(pos)] = b;
    if (s_set.kind() == SectionKind::isom &&
        std::find(s.values.begin(), s.values.end(), b) != s.values.end()) {
      continue;
    }
    auto [c, code] = s_set.locate(ext);
    if (s_set.find(c, code)) out.push_back(b);
  }
  return out;
}

std::vector<ContextId> scan_order(ContextId first, ContextId end,
                                  std::optional<std::uint64_t> seed) {
  std::vector<ContextId> order(end - first);
  std::iota(order.begin(), order.end(), first);
  if (seed) {
    std::mt19937_64 rng(*seed);
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng() % i]);
    }
  }
  return order;
}

std::size_t flagged(const std::vector<std::vector<char>>& flags) {
  std::size_t n = 0;
  for (const auto& v : flags) n += static_cast<std::size_t>(std::count(v.begin(), v.end(), 1));
  return n;
}

SectionSet run_fixpoint(const SectionSet& start, ExtensionRule rule,
                        FixpointStats* stats, std::optional<std::uint64_t> seed) {
  SectionSet cur = downward_close(start);
  std::size_t round = 0;
  for (;;) {
    auto fails = extension_failures(
        cur, rule, seed ? std::optional<std::uint64_t>(*seed + round) : std::nullopt);
    if (flagged(fails) == 0) break;
    const std::size_t before = cur.total();
    for (auto& v : fails) {
      for (auto& f : v) f = !f;
    }
    cur = downward_close(cur.filtered(fails));
    ++round;
    if (stats) stats->removed.push_back(before - cur.total());
  }
  if (stats) stats->iterations = round;
  return cur;
}

}  // namespace

bool forth_holds(const SectionSet& s_set, const LocalSection& s) {
  check_extension_pre(s_set, s);
  for (Element a = 0; a < s_set.source().size(); ++a) {
    if (s.at(a)) continue;
    if (candidates(s_set, s, a).empty()) return false;
  }
  return true;
}

bool bij_forth_holds(const SectionSet& s_set, const LocalSection& s) {
  if (s_set.source().size() != s_set.target().size()) {
    throw ContractViolation("bijective forth needs |A| = |B|");
  }
  check_extension_pre(s_set, s);
  const std::size_t n = s_set.source().size();
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (Element a = 0; a < n; ++a) {
    if (auto v = s.at(a)) {
      adj[a].push_back(*v);
    } else {
      for (Element b : candidates(s_set, s, a)) adj[a].push_back(b);
    }
  }
  return maximum_matching(n, n, adj) == n;
}

std::vector<std::vector<char>> extension_failures(
    const SectionSet& s_set, ExtensionRule rule, std::optional<std::uint64_t> shuffle_seed) {
  const auto& lat = s_set.contexts();
  const std::size_t n = s_set.source().size();
  const std::size_t nb = s_set.target().size();
  if (rule == ExtensionRule::bijective_forth && n != nb) {
    throw ContractViolation("bijective forth needs |A| = |B|");
  }
  std::vector<std::vector<char>> fails(lat.count());
  for (ContextId c = 0; c < lat.count(); ++c) fails[c].assign(s_set.at(c).size(), 0);

  // Levels m < k with m < n need checking; at m = n every element is in the
  // domain already.
  const std::size_t top = std::min(s_set.k(), n);
  for (std::size_t m = 0; m < top; ++m) {
    const ContextId p_first = lat.first_of_size(m);
    const ContextId p_end = lat.end_of_size(m);
    auto children = scan_order(lat.first_of_size(m + 1), lat.end_of_size(m + 1), shuffle_seed);

    if (rule == ExtensionRule::forth) {
      const std::size_t words = (n + 63) / 64;
      std::vector<std::vector<std::uint64_t>> covered(p_end - p_first);
      for (ContextId p = p_first; p < p_end; ++p) {
        covered[p - p_first].assign(s_set.at(p).size() * words, 0);
      }
      for (ContextId c : children) {
        auto el = lat.elements(c);
        for (SectionCode t : s_set.at(c)) {
          for (std::size_t pos = 0; pos <= m; ++pos) {
            const ContextId p = lat.face(c, pos);
            auto idx = s_set.find(p, s_set.drop(t, m + 1, pos));
            if (!idx) continue;
            covered[p - p_first][*idx * words + el[pos] / 64] |= 1ULL << (el[pos] % 64);
          }
        }
      }
      for (ContextId p = p_first; p < p_end; ++p) {
        const auto& cov = covered[p - p_first];
        for (std::size_t i = 0; i < s_set.at(p).size(); ++i) {
          std::size_t hit = 0;
          for (std::size_t w = 0; w < words; ++w) hit += std::popcount(cov[i * words + w]);
          if (hit != n - m) fails[p][i] = 1;
        }
      }
      continue;
    }

    // Bijective: gather candidate edges (a, b) per parent in CSR layout.
    std::vector<std::vector<std::uint32_t>> count(p_end - p_first);
    for (ContextId p = p_first; p < p_end; ++p) count[p - p_first].assign(s_set.at(p).size() + 1, 0);
    auto visit = [&](auto&& emit) {
      for (ContextId c : children) {
        auto el = lat.elements(c);
        for (SectionCode t : s_set.at(c)) {
          for (std::size_t pos = 0; pos <= m; ++pos) {
            const ContextId p = lat.face(c, pos);
            auto idx = s_set.find(p, s_set.drop(t, m + 1, pos));
            if (!idx) continue;
            emit(p, *idx, el[pos], s_set.value_at(t, m + 1, pos));
          }
        }
      }
    };
    visit([&](ContextId p, std::size_t i, Element, Element) { ++count[p - p_first][i + 1]; });
    std::vector<std::vector<std::uint64_t>> edges(p_end - p_first);
    for (ContextId p = p_first; p < p_end; ++p) {
      auto& cnt = count[p - p_first];
      std::partial_sum(cnt.begin(), cnt.end(), cnt.begin());
      edges[p - p_first].resize(cnt.back());
    }
    {
      auto fill = count;
      visit([&](ContextId p, std::size_t i, Element a, Element b) {
        edges[p - p_first][fill[p - p_first][i]++] = static_cast<std::uint64_t>(a) * nb + b;
      });
    }
    std::vector<std::int32_t> left_id(n);
    std::vector<std::int32_t> right_id(nb);
    std::vector<std::vector<std::uint32_t>> adj;
    for (ContextId p = p_first; p < p_end; ++p) {
      auto dom = lat.elements(p);
      const auto& cnt = count[p - p_first];
      auto& e = edges[p - p_first];
      for (std::size_t i = 0; i < s_set.at(p).size(); ++i) {
        auto vals = s_set.decode(s_set.at(p)[i], m);
        std::fill(left_id.begin(), left_id.end(), 0);
        std::fill(right_id.begin(), right_id.end(), 0);
        for (Element a : dom) left_id[a] = -1;
        for (Element b : vals) right_id[b] = -1;
        std::int32_t nl = 0;
        std::int32_t nr = 0;
        for (auto& x : left_id) x = x < 0 ? -1 : nl++;
        for (auto& x : right_id) x = x < 0 ? -1 : nr++;
        adj.assign(static_cast<std::size_t>(nl), {});
        std::sort(e.begin() + cnt[i], e.begin() + cnt[i + 1]);
        for (std::size_t j = cnt[i]; j < cnt[i + 1]; ++j) {
          const auto a = static_cast<Element>(e[j] / nb);
          const auto b = static_cast<Element>(e[j] % nb);
          if (right_id[b] < 0) continue;
          adj[static_cast<std::size_t>(left_id[a])].push_back(static_cast<std::uint32_t>(right_id[b]));
        }
        const auto need = static_cast<std::size_t>(nl);
        if (maximum_matching(need, static_cast<std::size_t>(nr), adj) != need) fails[p][i] = 1;
      }
    }
  }
  return fails;
}

SectionSet classical_fixpoint(const SectionSet& s_set, FixpointStats* stats,
                              std::optional<std::uint64_t> shuffle_seed) {
  if (s_set.kind() != SectionKind::hom) {
    throw ContractViolation("classical_fixpoint expects partial homomorphisms");
  }
  return run_fixpoint(s_set, ExtensionRule::forth, stats, shuffle_seed);
}

SectionSet wl_fixpoint(const SectionSet& s_set, FixpointStats* stats,
                       std::optional<std::uint64_t> shuffle_seed) {
  if (s_set.kind() != SectionKind::isom) {
    throw ContractViolation("wl_fixpoint expects partial isomorphisms");
  }
  if (s_set.source().size() != s_set.target().size()) {
    throw ContractViolation("wl_fixpoint needs |A| = |B|");
  }
  return run_fixpoint(s_set, ExtensionRule::bijective_forth, stats, shuffle_seed);
}

bool decide_k_consistency(const Structure& a, const Structure& b, std::size_t k) {
  return classical_fixpoint(enumerate_sections(a, b, k, SectionKind::hom)).has_empty_section();
}

bool decide_k_wl(const Structure& a, const Structure& b, std::size_t k) {
  if (a.size() != b.size()) {
    require_same_signature(a, b);
    return false;
  }
  return wl_fixpoint(enumerate_sections(a, b, k, SectionKind::isom)).has_empty_section();
}

}  // namespace sheafcsp
