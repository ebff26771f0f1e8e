#include "sheafcsp/zext.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_map>

#include "sheafcsp/compatibility.hpp"
#include "sheafcsp/errors.hpp"
#include "sheafcsp/hnf.hpp"
#include "sheafcsp/sparse_kernel.hpp"

namespace sheafcsp {

namespace {

// A batch of membership queries against the projection of the kernel onto
// some variables.
struct QueryGroup {
  std::vector<std::uint32_t> coords;               // compact variable ids
  std::vector<std::pair<ContextId, std::size_t>> owners;  // section per query
  std::vector<std::vector<std::uint32_t>> ones;    // positions set to 1 in each query
};

std::vector<char> retained_contexts(const SectionSet& s) {
  const auto& lat = s.contexts();
  std::vector<char> keep(lat.count(), 1);
  if (downward_close(s).total() != s.total()) return keep;
  std::vector<std::size_t> single(s.source().size(), 0);
  for (ContextId c = lat.first_of_size(1); lat.max_size() >= 1 && c < lat.end_of_size(1); ++c) {
    single[lat.elements(c)[0]] = s.at(c).size();
  }
  for (ContextId c = 0; c < lat.count(); ++c) {
    if (lat.size_of(c) < 2) continue;
    std::uint64_t prod = 1;
    bool product = true;
    for (Element a : lat.elements(c)) {
      if (single[a] == 0) {
        product = false;
        break;
      }
      prod *= single[a];
    }
    keep[c] = product && prod == s.at(c).size() ? 0 : 1;
  }
  // Close downward: faces have smaller ids.
  for (ContextId c = lat.count(); c-- > 0;) {
    if (!keep[c]) continue;
    for (std::size_t p = 0; p < lat.size_of(c); ++p) keep[lat.face(c, p)] = 1;
  }
  return keep;
}

void answer(const QueryGroup& g, const IntegerKernel& kernel,
            std::vector<std::vector<char>>& flags) {
  std::unordered_map<std::uint32_t, std::size_t> param_row;
  for (std::uint32_t v : g.coords) {
    for (const auto& [p, val] : kernel.expression(v)) param_row.emplace(p, param_row.size());
  }
  IntMatrix gens(param_row.size(), g.coords.size());
  for (std::size_t j = 0; j < g.coords.size(); ++j) {
    for (const auto& [p, val] : kernel.expression(g.coords[j])) gens(param_row[p], j) = val;
  }
  const RowLattice lattice(gens);
  std::vector<Integer> target(g.coords.size());
  for (std::size_t q = 0; q < g.owners.size(); ++q) {
    std::fill(target.begin(), target.end(), 0);
    for (std::uint32_t pos : g.ones[q]) target[pos] = 1;
    if (lattice.contains(target)) flags[g.owners[q].first][g.owners[q].second] = 1;
  }
}

}  // namespace

std::vector<std::vector<char>> zext_flags(const SectionSet& s, ZextStats* stats,
                                          unsigned threads) {
  const auto& lat = s.contexts();
  std::vector<std::vector<char>> flags(lat.count());
  for (ContextId c = 0; c < lat.count(); ++c) flags[c].assign(s.at(c).size(), 0);
  if (s.empty()) return flags;

  const std::vector<char> keep = retained_contexts(s);
  const auto offsets = variable_offsets(s);
  std::vector<std::int64_t> compact(offsets.back(), -1);
  std::uint32_t ncols = 0;
  for (ContextId c = 0; c < lat.count(); ++c) {
    if (!keep[c]) continue;
    for (std::size_t v = offsets[c]; v < offsets[c + 1]; ++v) compact[v] = ncols++;
  }
  auto rows = compatibility_rows(s, &keep);
  for (auto& r : rows) {
    for (auto& e : r) e.first = static_cast<std::uint32_t>(compact[e.first]);
  }
  const std::size_t nrows = rows.size();
  const IntegerKernel kernel = integer_kernel(ncols, std::move(rows));
  if (stats) {
    stats->rows = nrows;
    stats->cols = ncols;
    stats->skipped_contexts = static_cast<std::size_t>(std::count(keep.begin(), keep.end(), 0));
    stats->core_rows = kernel.core_shape().first;
    stats->core_cols = kernel.core_shape().second;
  }

  std::vector<QueryGroup> groups;
  std::vector<ContextId> subs;
  for (ContextId c = 0; c < lat.count(); ++c) {
    if (s.at(c).empty()) continue;
    QueryGroup g;
    const std::size_t m = lat.size_of(c);
    if (keep[c]) {
      for (std::size_t i = 0; i < s.at(c).size(); ++i) {
        g.coords.push_back(static_cast<std::uint32_t>(compact[offsets[c] + i]));
        g.owners.emplace_back(c, i);
        g.ones.push_back({static_cast<std::uint32_t>(i)});
      }
    } else {
      // Joint pin over every retained proper subcontext.
      auto el = lat.elements(c);
      std::vector<std::uint32_t> masks;
      std::vector<std::size_t> base;
      std::vector<Element> sub;
      for (std::uint32_t mask = 0; mask + 1 < (1U << m); ++mask) {
        sub.clear();
        for (std::size_t j = 0; j < m; ++j) {
          if (mask >> j & 1U) sub.push_back(el[j]);
        }
        const ContextId u = lat.id_of(sub);
        if (!keep[u]) continue;
        masks.push_back(mask);
        subs.push_back(u);
        base.push_back(g.coords.size());
        for (std::size_t i = 0; i < s.at(u).size(); ++i) {
          g.coords.push_back(static_cast<std::uint32_t>(compact[offsets[u] + i]));
        }
      }
      const std::size_t first_sub = subs.size() - masks.size();
      for (std::size_t i = 0; i < s.at(c).size(); ++i) {
        auto vals = s.decode(s.at(c)[i], m);
        std::vector<std::uint32_t> ones;
        std::vector<Element> sv;
        for (std::size_t t = 0; t < masks.size(); ++t) {
          sv.clear();
          for (std::size_t j = 0; j < m; ++j) {
            if (masks[t] >> j & 1U) sv.push_back(vals[j]);
          }
          const ContextId u = subs[first_sub + t];
          auto idx = s.find(u, s.encode(sv));
          if (!idx) throw ContractViolation("product context with a missing restriction");
          ones.push_back(static_cast<std::uint32_t>(base[t] + *idx));
        }
        g.owners.emplace_back(c, i);
        g.ones.push_back(std::move(ones));
      }
    }
    groups.push_back(std::move(g));
  }

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, groups.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < groups.size(); i = next++) answer(groups[i], kernel, flags);
  };
  if (threads <= 1) {
    worker();
  } else {
    // Each group writes a disjoint set of flags.
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return flags;
}

bool z_extendable(const SectionSet& s, const LocalSection& sec) {
  auto [c, code] = s.locate(sec);
  auto idx = s.find(c, code);
  if (!idx) throw InputError("section is not stored in the section set");
  return zext_flags(s)[c][*idx] != 0;
}

SectionSet invert_section_set(const SectionSet& s) {
  if (s.kind() != SectionKind::isom) {
    throw ContractViolation("only sets of partial isomorphisms can be inverted");
  }
  auto lattice = std::make_shared<const ContextLattice>(s.target().size(), s.k());
  std::vector<std::vector<SectionCode>> codes(lattice->count());
  const auto& lat = s.contexts();
  SectionSet shape(s.target_ptr(), s.source_ptr(), s.k(), SectionKind::isom, lattice, codes);
  for (ContextId c = 0; c < lat.count(); ++c) {
    const std::size_t m = lat.size_of(c);
    if (m > lattice->max_size()) {
      if (!s.at(c).empty()) throw InputError("injective sections larger than the target");
      continue;
    }
    for (std::size_t i = 0; i < s.at(c).size(); ++i) {
      const LocalSection inv = inverse(s.section(c, i));
      auto [ic, code] = shape.locate(inv);
      codes[ic].push_back(code);
    }
  }
  for (auto& v : codes) std::sort(v.begin(), v.end());
  return SectionSet(s.target_ptr(), s.source_ptr(), s.k(), SectionKind::isom,
                    std::move(lattice), std::move(codes));
}

std::vector<std::vector<char>> zbext_flags(const SectionSet& s, ZextStats* stats,
                                           unsigned threads) {
  auto flags = zext_flags(s, stats, threads);
  const SectionSet inv = invert_section_set(s);
  ZextStats inv_stats;
  const auto inv_flags = zext_flags(inv, &inv_stats, threads);
  if (stats) {
    stats->rows = std::max(stats->rows, inv_stats.rows);
    stats->cols = std::max(stats->cols, inv_stats.cols);
  }
  const auto& lat = s.contexts();
  for (ContextId c = 0; c < lat.count(); ++c) {
    for (std::size_t i = 0; i < s.at(c).size(); ++i) {
      if (!flags[c][i]) continue;
      auto [ic, code] = inv.locate(inverse(s.section(c, i)));
      flags[c][i] = inv_flags[ic][*inv.find(ic, code)];
    }
  }
  return flags;
}

bool z_bi_extendable(const SectionSet& s, const LocalSection& sec) {
  auto [c, code] = s.locate(sec);
  auto idx = s.find(c, code);
  if (!idx) throw InputError("section is not stored in the section set");
  return zbext_flags(s)[c][*idx] != 0;
}

}  // namespace sheafcsp
