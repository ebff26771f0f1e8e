#include "sheafcsp/matching.hpp"

namespace sheafcsp {

namespace {

// Iterative DFS so long augmenting paths cannot overflow the stack.
bool augment(std::uint32_t root, const std::vector<std::vector<std::uint32_t>>& adj,
             std::vector<std::int64_t>& left_of_right,
             std::vector<std::int64_t>& right_of_left,
             std::vector<std::uint32_t>& seen, std::uint32_t stamp) {
  struct Frame {
    std::uint32_t u;
    std::size_t next;
    std::int64_t via;  // right vertex through which u was reached
  };
  std::vector<Frame> stack{{root, 0, -1}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == adj[f.u].size()) {
      stack.pop_back();
      continue;
    }
    const std::uint32_t v = adj[f.u][f.next++];
    if (seen[v] == stamp) continue;
    seen[v] = stamp;
    if (left_of_right[v] < 0) {
      // Flip the path: each frame's vertex takes the right vertex found
      // below it and releases the one it was reached through.
      std::int64_t take = v;
      for (std::size_t i = stack.size(); i-- > 0;) {
        const std::uint32_t u = stack[i].u;
        right_of_left[u] = take;
        left_of_right[static_cast<std::size_t>(take)] = u;
        take = stack[i].via;
      }
      return true;
    }
    stack.push_back({static_cast<std::uint32_t>(left_of_right[v]), 0, v});
  }
  return false;
}

}  // namespace

std::size_t maximum_matching(std::size_t left, std::size_t right,
                             const std::vector<std::vector<std::uint32_t>>& adj,
                             std::vector<std::int64_t>* match_of_left) {
  std::vector<std::int64_t> left_of_right(right, -1);
  std::vector<std::int64_t> right_of_left(left, -1);
  std::vector<std::uint32_t> seen(right, 0);
  std::size_t size = 0;
  for (std::uint32_t u = 0; u < left; ++u) {
    if (augment(u, adj, left_of_right, right_of_left, seen, u + 1)) ++size;
  }
  if (match_of_left) *match_of_left = std::move(right_of_left);
  return size;
}

}  // namespace sheafcsp
