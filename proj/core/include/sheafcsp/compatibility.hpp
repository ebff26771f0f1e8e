#pragma once

#include <optional>
#include <vector>

#include "sheafcsp/int_matrix.hpp"
#include "sheafcsp/section_set.hpp"
#include "sheafcsp/sparse_kernel.hpp"

namespace sheafcsp {

/// Column of every stored section: section i at context c is variable
/// offsets[c] + i.
std::vector<std::size_t> variable_offsets(const SectionSet& s);

/// Unpinned codimension-1 compatibility rows over all stored sections: for
/// every C' ⊂ C with |C'| = |C| - 1 and every s' in S(C'),
///   Σ { α_s : s ∈ S(C), s|C' = s' } - α_{s'} = 0.
/// Only contexts with keep[c] set take part when `keep` is given.
std::vector<SparseVec> compatibility_rows(const SectionSet& s,
                                          const std::vector<char>* keep = nullptr);

/// The compatibility system with the pinned context substituted: its
/// variables are fixed to the indicator of the pinned section and moved to
/// the right-hand side.
struct CompatibilitySystem {
  std::vector<std::size_t> offsets;       // per context, plus a final total
  ContextId pin_context = 0;
  std::size_t pin_index = 0;
  std::vector<std::int64_t> column;       // variable -> matrix column, -1 if pinned
  IntMatrix matrix;
  std::vector<Integer> rhs;

  std::size_t variables() const { return offsets.back(); }
};

/// Throws InputError when the pin is not stored in S.
CompatibilitySystem build_compatibility_system(const SectionSet& s, const LocalSection& pin);

/// A ℤ-linear section: integer coefficients on the sections stored at one
/// context (indexed like SectionSet::at).
struct ZLinearSection {
  ContextId context = 0;
  std::vector<Integer> coefficients;
};

/// Direct route: solves the pinned system outright. Returns a ℤ-linear
/// global section (one entry per context) whose pinned context is the
/// indicator of `s`, or nullopt.
std::optional<std::vector<ZLinearSection>> z_extension_witness(const SectionSet& s,
                                                               const LocalSection& pin);
bool z_extendable_direct(const SectionSet& s, const LocalSection& pin);

}  // namespace sheafcsp
