#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sheafcsp/int_matrix.hpp"

namespace sheafcsp {

/// Sorted (index, nonzero value) pairs.
using SparseVec = std::vector<std::pair<std::uint32_t, Integer>>;

/// A ℤ-basis of {x ∈ ℤⁿ : R·x = 0}, stored per variable: variable j equals
/// Σ expression(j)[p].second · t_p over free integer parameters t_p, and
/// every integer kernel vector arises from exactly one parameter vector.
class IntegerKernel {
 public:
  std::size_t variables() const { return expr_.size(); }
  std::size_t dimension() const { return dimension_; }
  const SparseVec& expression(std::uint32_t var) const { return expr_[var]; }
  /// Size of the dense block that was left after unit-pivot elimination.
  std::pair<std::size_t, std::size_t> core_shape() const { return core_; }
  /// Basis as dense columns (n × dimension); for tests.
  IntMatrix basis() const;

 private:
  friend IntegerKernel integer_kernel(std::size_t, std::vector<SparseVec>);
  std::size_t dimension_ = 0;
  std::vector<SparseVec> expr_;
  std::pair<std::size_t, std::size_t> core_{0, 0};
};

/// Integer kernel of a sparse matrix given by rows over `cols` variables.
/// Variables are eliminated through ±1 pivots (sparsest row first, then the
/// least-used column); rows are divided by their content as they change.
/// Whatever remains is handled by a dense HNF with transform.
IntegerKernel integer_kernel(std::size_t cols, std::vector<SparseVec> rows);

/// Dense convenience wrapper.
IntegerKernel integer_kernel(const IntMatrix& m);

}  // namespace sheafcsp
