#include "sheafcsp/brute_force.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "sheafcsp/errors.hpp"

namespace sheafcsp {

namespace {

constexpr Element kUnassigned = std::numeric_limits<Element>::max();

struct Incidence {
  // For every element, the (symbol, tuple) pairs it occurs in, deduplicated.
  std::vector<std::vector<Structure::TupleRef>> of;

  explicit Incidence(const Structure& s) : of(s.size()) {
    for (std::uint32_t r = 0; r < s.signature().size(); ++r) {
      const auto& tuples = s.tuples(r);
      for (std::uint32_t i = 0; i < tuples.size(); ++i) {
        for (std::size_t j = 0; j < tuples[i].size(); ++j) {
          Element e = tuples[i][j];
          if (std::find(tuples[i].begin(), tuples[i].begin() + j, e) ==
              tuples[i].begin() + j) {
            of[e].push_back({r, i});
          }
        }
      }
    }
  }
};

// Per-element multiset of (symbol, position) occurrences; isomorphisms must
// preserve it.
std::vector<std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t>>
profiles(const Structure& s) {
  std::vector<std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t>> out(
      s.size());
  for (std::uint32_t r = 0; r < s.signature().size(); ++r) {
    for (const auto& t : s.tuples(r)) {
      for (std::uint32_t j = 0; j < t.size(); ++j) ++out[t[j]][{r, j}];
    }
  }
  return out;
}

class Search {
 public:
  Search(const Structure& a, const Structure& b, bool iso, std::uint64_t budget)
      : a_(a), b_(b), iso_(iso), budget_(budget), inc_a_(a), inc_b_(b),
        map_(a.size(), kUnassigned), inverse_(b.size(), kUnassigned) {
    domains_.assign(a.size(), std::vector<char>(b.size(), 1));
    if (iso_) {
      auto pa = profiles(a);
      auto pb = profiles(b);
      for (std::size_t x = 0; x < a.size(); ++x) {
        for (std::size_t y = 0; y < b.size(); ++y) {
          if (pa[x] != pb[y]) domains_[x][y] = 0;
        }
      }
    }
    build_order();
  }

  SearchResult run() {
    SearchResult out;
    // Unary tuples and tuples with a single distinct element constrain
    // domains before any branching.
    for (Element x = 0; x < a_.size(); ++x) {
      for (Element v = 0; v < b_.size(); ++v) {
        if (domains_[x][v] && !locally_ok(x, v)) domains_[x][v] = 0;
      }
    }
    SearchStatus st = recurse(0);
    out.status = st;
    out.nodes = nodes_;
    if (st == SearchStatus::found) out.map = map_;
    return out;
  }

 private:
  void build_order() {
    const std::size_t n = a_.size();
    std::vector<char> placed(n, 0);
    std::vector<std::size_t> links(n, 0);
    order_.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t best = n;
      for (std::size_t x = 0; x < n; ++x) {
        if (placed[x]) continue;
        if (best == n || links[x] > links[best] ||
            (links[x] == links[best] &&
             inc_a_.of[x].size() > inc_a_.of[best].size())) {
          best = x;
        }
      }
      placed[best] = 1;
      order_.push_back(static_cast<Element>(best));
      for (const auto& ref : inc_a_.of[best]) {
        for (Element e : a_.tuples(ref.symbol)[ref.index]) {
          if (!placed[e]) ++links[e];
        }
      }
    }
  }

  // Check the tuples touching x that become fully assigned with x -> v.
  bool locally_ok(Element x, Element v) {
    Element saved = map_[x];
    map_[x] = v;
    bool ok = true;
    Tuple image;
    for (const auto& ref : inc_a_.of[x]) {
      const auto& t = a_.tuples(ref.symbol)[ref.index];
      image.resize(t.size());
      bool full = true;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (map_[t[i]] == kUnassigned) {
          full = false;
          break;
        }
        image[i] = map_[t[i]];
      }
      if (full && !b_.contains(ref.symbol, image)) {
        ok = false;
        break;
      }
    }
    map_[x] = saved;
    return ok;
  }

  bool reflects(Element v) {
    Tuple pre;
    for (const auto& ref : inc_b_.of[v]) {
      const auto& t = b_.tuples(ref.symbol)[ref.index];
      pre.resize(t.size());
      bool full = true;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (inverse_[t[i]] == kUnassigned) {
          full = false;
          break;
        }
        pre[i] = inverse_[t[i]];
      }
      if (full && !a_.contains(ref.symbol, pre)) return false;
    }
    return true;
  }

  // After x is assigned, prune the domain of every element that is the only
  // unassigned one in some tuple through x.
  bool forward_check(Element x) {
    Tuple image;
    for (const auto& ref : inc_a_.of[x]) {
      const auto& t = a_.tuples(ref.symbol)[ref.index];
      Element open = kUnassigned;
      bool single = true;
      for (Element e : t) {
        if (map_[e] != kUnassigned) continue;
        if (open == kUnassigned) {
          open = e;
        } else if (open != e) {
          single = false;
          break;
        }
      }
      if (!single || open == kUnassigned) continue;
      image.resize(t.size());
      bool any = false;
      for (Element w = 0; w < b_.size(); ++w) {
        if (!domains_[open][w]) continue;
        for (std::size_t i = 0; i < t.size(); ++i) {
          image[i] = t[i] == open ? w : map_[t[i]];
        }
        if (!b_.contains(ref.symbol, image)) {
          domains_[open][w] = 0;
        } else {
          any = true;
        }
      }
      if (!any) return false;
    }
    return true;
  }

  SearchStatus recurse(std::size_t depth) {
    if (depth == order_.size()) return SearchStatus::found;
    Element x = order_[depth];
    for (Element v = 0; v < b_.size(); ++v) {
      if (!domains_[x][v]) continue;
      if (iso_ && inverse_[v] != kUnassigned) continue;
      if (++nodes_ > budget_) return SearchStatus::budget_exceeded;
      if (!locally_ok(x, v)) continue;
      map_[x] = v;
      if (iso_) inverse_[v] = x;
      if (!iso_ || reflects(v)) {
        auto saved = domains_;
        if (forward_check(x)) {
          SearchStatus st = recurse(depth + 1);
          if (st != SearchStatus::none) return st;
        }
        domains_ = std::move(saved);
      }
      map_[x] = kUnassigned;
      if (iso_) inverse_[v] = kUnassigned;
    }
    return SearchStatus::none;
  }

  const Structure& a_;
  const Structure& b_;
  bool iso_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  Incidence inc_a_;
  Incidence inc_b_;
  std::vector<Element> order_;
  std::vector<Element> map_;
  std::vector<Element> inverse_;
  std::vector<std::vector<char>> domains_;
};

}  // namespace

SearchResult brute_force_hom(const Structure& a, const Structure& b,
                             std::uint64_t budget) {
  require_same_signature(a, b);
  if (a.size() > 0 && b.size() == 0) return {SearchStatus::none, {}, 0};
  return Search(a, b, false, budget).run();
}

SearchResult brute_force_iso(const Structure& a, const Structure& b,
                             std::uint64_t budget) {
  require_same_signature(a, b);
  if (a.size() != b.size()) return {SearchStatus::none, {}, 0};
  if (a.tuple_count() != b.tuple_count()) return {SearchStatus::none, {}, 0};
  return Search(a, b, true, budget).run();
}

bool is_homomorphism(std::span<const Element> map, const Structure& a,
                     const Structure& b) {
  if (map.size() != a.size()) return false;
  for (Element v : map) {
    if (v >= b.size()) return false;
  }
  Tuple image;
  for (std::size_t r = 0; r < a.signature().size(); ++r) {
    for (const auto& t : a.tuples(r)) {
      image.resize(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) image[i] = map[t[i]];
      if (!b.contains(r, image)) return false;
    }
  }
  return true;
}

bool is_isomorphism(std::span<const Element> map, const Structure& a,
                    const Structure& b) {
  if (a.size() != b.size() || !is_homomorphism(map, a, b)) return false;
  std::vector<Element> inv(b.size(), kUnassigned);
  for (std::size_t x = 0; x < map.size(); ++x) {
    if (inv[map[x]] != kUnassigned) return false;
    inv[map[x]] = static_cast<Element>(x);
  }
  return is_homomorphism(inv, b, a);
}

}  // namespace sheafcsp
