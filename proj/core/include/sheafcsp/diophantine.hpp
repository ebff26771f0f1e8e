#pragma once

#include <optional>
#include <vector>

#include "sheafcsp/int_matrix.hpp"

namespace sheafcsp {

/// Some integer x with M·x = b, or nullopt when none exists. Uses the HNF
/// of Mᵀ: with U·Mᵀ = H, the system becomes Hᵀ·y = b for x = Uᵀ·y, which
/// is solved by forward substitution over the pivot columns. Throws
/// InputError when b.size() != M.rows().
std::optional<std::vector<Integer>> solve_diophantine(const IntMatrix& m,
                                                      std::span<const Integer> b);

}  // namespace sheafcsp
