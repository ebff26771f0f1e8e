#pragma once

#include <vector>

#include "sheafcsp/section_set.hpp"

namespace sheafcsp {

struct ZextStats {
  std::size_t rows = 0;              // compatibility rows actually solved
  std::size_t cols = 0;              // variables actually solved
  std::size_t skipped_contexts = 0;  // product contexts left out of the system
  std::size_t core_rows = 0;         // dense block after unit elimination
  std::size_t core_cols = 0;
};

/// Zext for every stored section at once: flags[c][i] is 1 iff section i at
/// context c is ℤ-extendable in S.
///
/// All pins share one unpinned system, so its integer kernel L is computed
/// once and each section is tested by lattice membership of its indicator in
/// the projection of L onto its context. Contexts of size >= 2 whose
/// sections are exactly the product of their singletons' (nonempty) sections
/// impose nothing beyond agreement on their faces, so they are left out of
/// the system when all their supersets are too; a section at such a context
/// is tested by jointly pinning every retained subcontext.
std::vector<std::vector<char>> zext_flags(const SectionSet& s, ZextStats* stats = nullptr,
                                          unsigned threads = 0);

/// Whether `sec` (which must be stored in S) is ℤ-extendable.
bool z_extendable(const SectionSet& s, const LocalSection& sec);

/// S⁻¹ = { t⁻¹ | t ∈ S }, a set of partial isomorphisms B → A.
SectionSet invert_section_set(const SectionSet& s);

/// Zbext for every stored section: Zext in S and Zext of the inverse in S⁻¹.
std::vector<std::vector<char>> zbext_flags(const SectionSet& s, ZextStats* stats = nullptr,
                                           unsigned threads = 0);
bool z_bi_extendable(const SectionSet& s, const LocalSection& sec);

}  // namespace sheafcsp
