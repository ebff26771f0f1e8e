#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sheafcsp/affine.hpp"
#include "sheafcsp/graph.hpp"
#include "sheafcsp/structure.hpp"

namespace sheafcsp {

/// Seeded generator with a platform-independent bounded draw (the standard
/// distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
  /// p in [0, 1], resolved to 1/2^32.
  bool bernoulli(double p);
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct AffineParams {
  std::uint32_t q = 2;
  std::size_t variables = 6;
  std::size_t equations = 6;
  std::size_t min_width = 1;
  std::size_t max_width = 3;
  /// Choose constants to satisfy a hidden random assignment.
  bool planted = false;
  /// Draw coefficients among the units of ℤ_q only.
  bool unit_coefficients = false;
};

/// Equations over distinct variables with nonzero coefficients.
AffineSystem random_affine(Rng& rng, const AffineParams& p);

/// G(n, p).
OrderedGraph random_gnp(Rng& rng, std::size_t n, double p);
/// Uniform pairing model with rejection of loops and multi-edges. Throws
/// InputError when n·d is odd or d >= n (d > 0).
OrderedGraph random_regular(Rng& rng, std::size_t n, std::size_t d,
                            std::size_t max_attempts = 10000);
/// One value per edge in [0, q).
std::vector<std::uint32_t> random_twist(Rng& rng, const OrderedGraph& g, std::uint32_t q);
/// Random twist adjusted on the last edge to reach `total` mod q.
std::vector<std::uint32_t> random_twist_with_total(Rng& rng, const OrderedGraph& g, std::uint32_t q,
                                                   std::uint32_t total);
/// Random structure over `sig` on n elements, each possible tuple kept with
/// probability p.
Structure random_structure(Rng& rng, const Signature& sig, std::size_t n, double p);

}  // namespace sheafcsp
