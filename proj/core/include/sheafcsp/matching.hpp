#pragma once

#include <cstdint>
#include <vector>

namespace sheafcsp {

/// Maximum bipartite matching by augmenting paths. Left vertices are tried
/// in index order and their neighbours in list order, so the result is
/// deterministic. Returns the matching size; `match_of_left`, when given,
/// receives each left vertex's partner or -1.
std::size_t maximum_matching(std::size_t left, std::size_t right,
                             const std::vector<std::vector<std::uint32_t>>& adj,
                             std::vector<std::int64_t>* match_of_left = nullptr);

}  // namespace sheafcsp
