#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sheafcsp/brute_force.hpp"
#include "sheafcsp/graph.hpp"
#include "sheafcsp/structure.hpp"

namespace sheafcsp {

/// The equation Σ coeffs[i]·x_{vars[i]} = constant over ℤ_q.
struct AffineEquation {
  std::vector<std::uint32_t> vars;
  std::vector<std::uint32_t> coeffs;  // reduced mod q
  std::uint32_t constant = 0;
};

struct AffineSystem {
  std::uint32_t q = 2;
  std::size_t variables = 0;
  std::vector<AffineEquation> equations;

  /// Throws InputError unless q >= 2, every equation has 1..max_width
  /// variables (0 disables the bound), indices are in range and every
  /// coefficient and constant is reduced mod q.
  void validate(std::size_t max_width = 0) const;
};

/// Coefficient pattern and constant of one relation of a ring structure.
struct RingShape {
  std::vector<std::uint32_t> coeffs;
  std::uint32_t constant = 0;

  friend auto operator<=>(const RingShape&, const RingShape&) = default;
};

/// Relation name of a shape, e.g. E_1_1_1_b1 for x + y + z = 1.
std::string ring_symbol_name(const RingShape& shape);

/// Universe ℤ_q with one relation per shape holding every tuple that
/// satisfies its equation. Throws InputError when q < 2.
Structure ring_structure(std::uint32_t q, const std::vector<RingShape>& shapes);

/// (A, B): B is the ring structure over the distinct shapes in `sys` (sorted),
/// A lives on the variables with one tuple per equation.
std::pair<Structure, Structure> affine_to_instance(const AffineSystem& sys);

/// Per vertex v: Σ_{e ∋ v} x_e = charge(v) mod 2, one variable per edge in
/// edge order. Isolated vertices with charge 0 are dropped; with charge 1
/// they make the system trivially unsolvable, which has no equation form
/// and raises InputError.
AffineSystem tseitin_system(const OrderedGraph& g, const std::vector<std::uint32_t>& charge);

struct AffineSearch {
  SearchStatus status = SearchStatus::none;
  std::vector<std::uint32_t> assignment;
  std::uint64_t nodes = 0;
};

/// Exhaustive modular search with propagation of equations that are down
/// to a single open variable. Test oracle.
AffineSearch solve_affine_brute(const AffineSystem& sys, std::uint64_t budget);
bool satisfies(const AffineSystem& sys, const std::vector<std::uint32_t>& assignment);

bool is_prime_power(std::uint64_t q);

}  // namespace sheafcsp
