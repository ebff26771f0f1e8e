#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "sheafcsp/int_matrix.hpp"

namespace sheafcsp {

/// Text dump of M·x = b: first line `m n`, then m lines of n+1 decimal
/// integers (the matrix row followed by its right-hand side).
void write_system(std::ostream& os, const IntMatrix& m, std::span<const Integer> rhs);
/// Inverse of write_system; throws InputError on malformed input.
std::pair<IntMatrix, std::vector<Integer>> read_system(std::istream& is);

}  // namespace sheafcsp
