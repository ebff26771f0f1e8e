#pragma once

#include <cstdint>
#include <vector>

#include "sheafcsp/structure.hpp"

namespace sheafcsp {

enum class SearchStatus { found, none, budget_exceeded };

struct SearchResult {
  SearchStatus status = SearchStatus::none;
  std::vector<Element> map;  // total map A -> B when found
  std::uint64_t nodes = 0;   // search nodes visited
};

/// Exhaustive backtracking for a homomorphism A -> B with forward checking.
/// Gives up with budget_exceeded once `budget` nodes have been expanded.
/// Test oracle only: exponential in |A|.
SearchResult brute_force_hom(const Structure& a, const Structure& b,
                             std::uint64_t budget);

/// Exhaustive search for an isomorphism A -> B (bijection preserving and
/// reflecting every relation). Sizes that differ give `none` immediately.
SearchResult brute_force_iso(const Structure& a, const Structure& b,
                             std::uint64_t budget);

/// True iff `map` is a total homomorphism A -> B.
bool is_homomorphism(std::span<const Element> map, const Structure& a,
                     const Structure& b);
/// True iff `map` is an isomorphism A -> B.
bool is_isomorphism(std::span<const Element> map, const Structure& a,
                    const Structure& b);

}  // namespace sheafcsp
