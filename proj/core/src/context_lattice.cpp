#include "sheafcsp/context_lattice.hpp"

#include <algorithm>
#include <limits>

#include "sheafcsp/errors.hpp"

namespace sheafcsp {

ContextLattice::ContextLattice(std::size_t n, std::size_t k) : n_(n), k_(std::min(n, k)) {
  if (k == 0) throw InputError("context size bound k must be at least 1");
  binom_.assign(n_ + 1, std::vector<std::uint64_t>(k_ + 2, 0));
  for (std::size_t i = 0; i <= n_; ++i) {
    binom_[i][0] = 1;
    for (std::size_t r = 1; r <= std::min(i, k_ + 1); ++r) {
      binom_[i][r] = binom_[i - 1][r - 1] + (r <= i - 1 ? binom_[i - 1][r] : 0);
    }
  }
  offsets_.assign(k_ + 2, 0);
  for (std::size_t m = 0; m <= k_; ++m) offsets_[m + 1] = offsets_[m] + binom(n_, m);
  if (offsets_.back() > std::numeric_limits<ContextId>::max() / 2) {
    throw InputError("too many contexts for universe " + std::to_string(n) +
                     " and k " + std::to_string(k));
  }
  sizes_.assign(count(), 0);
  elems_.assign(count() * std::max<std::size_t>(k_, 1), 0);
  faces_.assign(count() * std::max<std::size_t>(k_, 1), 0);

  // Enumerate m-subsets in colex order: lexicographic on reversed tuples.
  for (std::size_t m = 0; m <= k_; ++m) {
    std::vector<Element> cur(m);
    for (std::size_t i = 0; i < m; ++i) cur[i] = static_cast<Element>(i);
    for (std::size_t id = offsets_[m]; id < offsets_[m + 1]; ++id) {
      sizes_[id] = static_cast<std::uint8_t>(m);
      std::copy(cur.begin(), cur.end(), elems_.begin() + id * k_);
      // next colex combination
      std::size_t i = 0;
      while (i < m && (i + 1 == m ? cur[i] + 1 >= n_ : cur[i] + 1 == cur[i + 1])) {
        cur[i] = static_cast<Element>(i);
        ++i;
      }
      if (i < m) ++cur[i];
    }
  }
  std::vector<Element> tmp;
  for (ContextId c = 0; c < count(); ++c) {
    auto el = elements(c);
    for (std::size_t p = 0; p < el.size(); ++p) {
      tmp.assign(el.begin(), el.end());
      tmp.erase(tmp.begin() + static_cast<std::ptrdiff_t>(p));
      faces_[c * k_ + p] = id_of(tmp);
    }
  }
}

std::uint64_t ContextLattice::binom(std::size_t n, std::size_t r) const {
  if (r > n || r >= binom_[0].size()) return 0;
  return binom_[n][r];
}

ContextId ContextLattice::id_of(std::span<const Element> sorted) const {
  const std::size_t m = sorted.size();
  if (m > k_) throw InputError("context larger than k");
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (sorted[i] >= n_ || (i > 0 && sorted[i - 1] >= sorted[i])) {
      throw InputError("context must be strictly sorted and inside the universe");
    }
    rank += binom(sorted[i], i + 1);
  }
  return static_cast<ContextId>(offsets_[m] + rank);
}

std::size_t ContextLattice::insert_position(ContextId c, Element a) const {
  auto el = elements(c);
  return static_cast<std::size_t>(std::lower_bound(el.begin(), el.end(), a) -
                                  el.begin());
}

ContextId ContextLattice::extend(ContextId c, Element a) const {
  auto el = elements(c);
  std::vector<Element> tmp(el.begin(), el.end());
  tmp.insert(tmp.begin() + static_cast<std::ptrdiff_t>(insert_position(c, a)), a);
  return id_of(tmp);
}

bool ContextLattice::includes(ContextId sup, ContextId sub) const {
  auto a = elements(sup);
  auto b = elements(sub);
  return std::includes(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace sheafcsp
