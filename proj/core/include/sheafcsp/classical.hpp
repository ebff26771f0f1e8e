#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sheafcsp/section_set.hpp"

namespace sheafcsp {

enum class ExtensionRule { forth, bijective_forth };

/// Forth: every a in A has some b with s ∪ {(a,b)} in S. Throws
/// ContractViolation when s is not in S or |dom(s)| >= k.
bool forth_holds(const SectionSet& s_set, const LocalSection& s);
/// BijForth: the candidate graph {(a,b) | s ∪ {(a,b)} ∈ S} has a perfect
/// matching. Additionally requires |A| = |B|.
bool bij_forth_holds(const SectionSet& s_set, const LocalSection& s);

/// Flags (indexed like SectionSet::at) of every section below size k that
/// fails the rule against the current set. Evaluated in bulk: each stored
/// section with one more element contributes its restrictions' candidate
/// edges. `shuffle_seed` permutes the order contexts are scanned in, which
/// must not change the result.
std::vector<std::vector<char>> extension_failures(
    const SectionSet& s_set, ExtensionRule rule,
    std::optional<std::uint64_t> shuffle_seed = std::nullopt);

struct FixpointStats {
  std::size_t iterations = 0;
  std::vector<std::size_t> removed;  // sections lost per iteration
};

/// Largest flasque sub-presheaf: repeatedly drop every Forth failure (as one
/// batch) and close downward.
SectionSet classical_fixpoint(const SectionSet& s_set, FixpointStats* stats = nullptr,
                              std::optional<std::uint64_t> shuffle_seed = std::nullopt);
/// Same with BijForth on a set of partial isomorphisms; |A| = |B| required.
SectionSet wl_fixpoint(const SectionSet& s_set, FixpointStats* stats = nullptr,
                       std::optional<std::uint64_t> shuffle_seed = std::nullopt);

/// A →_k B.
bool decide_k_consistency(const Structure& a, const Structure& b, std::size_t k);
/// A ≡_k B; false outright when the universes differ in size.
bool decide_k_wl(const Structure& a, const Structure& b, std::size_t k);

}  // namespace sheafcsp
