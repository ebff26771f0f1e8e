#include "sheafcsp/random_instances.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "sheafcsp/errors.hpp"

namespace sheafcsp {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw ContractViolation("empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    const std::uint64_t x = engine_();
    if (x < limit) return x % bound;
  }
}

bool Rng::bernoulli(double p) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  return static_cast<double>(below(std::uint64_t{1} << 32)) < p * 4294967296.0;
}

AffineSystem random_affine(Rng& rng, const AffineParams& p) {
  if (p.q < 2) throw InputError("modulus must be at least 2");
  if (p.min_width < 1 || p.min_width > p.max_width) throw InputError("bad equation widths");
  if (p.equations > 0 && p.max_width > p.variables) {
    throw InputError("equation width exceeds the number of variables");
  }
  AffineSystem sys;
  sys.q = p.q;
  sys.variables = p.variables;
  std::vector<std::uint32_t> hidden(p.variables);
  for (auto& h : hidden) h = static_cast<std::uint32_t>(rng.below(p.q));
  std::vector<std::uint32_t> coeffs;
  for (std::uint32_t c = 1; c < p.q; ++c) {
    if (!p.unit_coefficients || std::gcd(c, p.q) == 1) coeffs.push_back(c);
  }
  std::vector<std::uint32_t> pool(p.variables);
  for (std::size_t i = 0; i < p.equations; ++i) {
    const std::size_t width = p.min_width + rng.below(p.max_width - p.min_width + 1);
    for (std::uint32_t v = 0; v < pool.size(); ++v) pool[v] = v;
    rng.shuffle(pool);
    AffineEquation e;
    e.vars.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(width));
    std::sort(e.vars.begin(), e.vars.end());
    std::uint64_t sum = 0;
    for (auto v : e.vars) {
      const auto c = coeffs[rng.below(coeffs.size())];
      e.coeffs.push_back(c);
      sum += std::uint64_t{c} * hidden[v];
    }
    e.constant = p.planted ? static_cast<std::uint32_t>(sum % p.q)
                           : static_cast<std::uint32_t>(rng.below(p.q));
    sys.equations.push_back(std::move(e));
  }
  return sys;
}

OrderedGraph random_gnp(Rng& rng, std::size_t n, double p) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) e.emplace_back(u, v);
    }
  }
  return OrderedGraph(n, std::move(e));
}

OrderedGraph random_regular(Rng& rng, std::size_t n, std::size_t d, std::size_t max_attempts) {
  if ((n * d) % 2 != 0) throw InputError("n·d must be even for a d-regular graph");
  if (d > 0 && d >= n) throw InputError("degree must be below the vertex count");
  std::vector<Vertex> points;
  for (Vertex v = 0; v < n; ++v) points.insert(points.end(), d, v);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    rng.shuffle(points);
    std::set<std::pair<Vertex, Vertex>> seen;
    bool ok = true;
    for (std::size_t i = 0; i < points.size(); i += 2) {
      auto [u, v] = std::minmax(points[i], points[i + 1]);
      if (u == v || !seen.emplace(u, v).second) {
        ok = false;
        break;
      }
    }
    if (ok) return OrderedGraph(n, {seen.begin(), seen.end()});
  }
  throw InputError("no simple d-regular pairing found within the attempt limit");
}

std::vector<std::uint32_t> random_twist(Rng& rng, const OrderedGraph& g, std::uint32_t q) {
  if (q < 2) throw InputError("modulus must be at least 2");
  std::vector<std::uint32_t> t(g.edge_count());
  for (auto& x : t) x = static_cast<std::uint32_t>(rng.below(q));
  return t;
}

std::vector<std::uint32_t> random_twist_with_total(Rng& rng, const OrderedGraph& g, std::uint32_t q,
                                                   std::uint32_t total) {
  if (g.edge_count() == 0) throw InputError("graph has no edges to twist");
  auto t = random_twist(rng, g, q);
  std::uint64_t rest = 0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) rest += t[i];
  t.back() = static_cast<std::uint32_t>((total % q + q - rest % q) % q);
  return t;
}

Structure random_structure(Rng& rng, const Signature& sig, std::size_t n, double p) {
  std::vector<std::vector<Tuple>> rels(sig.size());
  for (std::size_t r = 0; r < sig.size(); ++r) {
    const std::size_t m = sig[r].arity;
    if (n == 0) continue;
    Tuple t(m, 0);
    for (;;) {
      if (rng.bernoulli(p)) rels[r].push_back(t);
      std::size_t i = m;
      while (i > 0 && t[i - 1] + 1 == n) t[--i] = 0;
      if (i == 0) break;
      ++t[i - 1];
    }
  }
  return Structure(sig, n, std::move(rels));
}

}  // namespace sheafcsp
