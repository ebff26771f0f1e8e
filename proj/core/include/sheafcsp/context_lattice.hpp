#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sheafcsp/structure.hpp"

namespace sheafcsp {

using ContextId = std::uint32_t;

/// All subsets of {0..n-1} with at most k elements (the cover A^{<=k}),
/// including the empty context. Contexts are numbered by size, then in
/// colexicographic order within a size, so that every face of a context has
/// a smaller id.
class ContextLattice {
 public:
  ContextLattice(std::size_t n, std::size_t k);

  std::size_t universe() const { return n_; }
  std::size_t max_size() const { return k_; }
  std::size_t count() const { return offsets_.back(); }

  /// Contexts of size `m` occupy ids [first_of_size(m), first_of_size(m+1)).
  ContextId first_of_size(std::size_t m) const {
    return static_cast<ContextId>(offsets_[m]);
  }
  ContextId end_of_size(std::size_t m) const {
    return static_cast<ContextId>(offsets_[m + 1]);
  }

  std::size_t size_of(ContextId c) const { return sizes_[c]; }
  std::span<const Element> elements(ContextId c) const {
    return {elems_.data() + c * k_, sizes_[c]};
  }

  /// Id of a strictly sorted subset with at most k elements.
  ContextId id_of(std::span<const Element> sorted) const;
  /// Context with the element at position `pos` removed.
  ContextId face(ContextId c, std::size_t pos) const {
    return faces_[c * k_ + pos];
  }
  /// Context with element `a` (not in c) added; requires size_of(c) < k.
  ContextId extend(ContextId c, Element a) const;
  /// Position `a` would take inside c ∪ {a}.
  std::size_t insert_position(ContextId c, Element a) const;
  /// True iff `sub` ⊆ `sup`.
  bool includes(ContextId sup, ContextId sub) const;

 private:
  std::uint64_t binom(std::size_t n, std::size_t r) const;

  std::size_t n_;
  std::size_t k_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint8_t> sizes_;
  std::vector<Element> elems_;      // k_ slots per context
  std::vector<ContextId> faces_;    // k_ slots per context
  std::vector<std::vector<std::uint64_t>> binom_;
};

}  // namespace sheafcsp
