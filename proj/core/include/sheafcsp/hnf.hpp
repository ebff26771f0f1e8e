#pragma once

#include <optional>
#include <vector>

#include "sheafcsp/int_matrix.hpp"

namespace sheafcsp {

struct HnfResult {
  IntMatrix h;                      // row-style Hermite normal form
  IntMatrix u;                      // unimodular, h = u · m
  std::size_t rank = 0;             // nonzero rows of h, which come first
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Row-style HNF with the unimodular transform. Columns are processed left
/// to right; pivots are positive and entries above a pivot lie in
/// [0, pivot).
HnfResult hermite_normal_form(const IntMatrix& m);

/// Nonzero rows of the HNF only (no transform): an echelon basis of the
/// row lattice of `m`.
IntMatrix hermite_basis(const IntMatrix& m);

/// Echelon basis of a row lattice with membership queries.
class RowLattice {
 public:
  /// Generators are the rows of `gens`.
  explicit RowLattice(const IntMatrix& gens);
  std::size_t dimension() const { return cols_; }
  std::size_t rank() const { return basis_.size(); }
  /// Whether `v` is an integer combination of the generators; throws
  /// InputError on a length mismatch.
  bool contains(std::span<const Integer> v) const;

 private:
  std::size_t cols_;
  std::vector<std::vector<Integer>> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace sheafcsp
