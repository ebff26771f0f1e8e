#include "sheafcsp/affine.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "sheafcsp/errors.hpp"

namespace sheafcsp {

void AffineSystem::validate(std::size_t max_width) const {
  if (q < 2) throw InputError("modulus must be at least 2");
  for (std::size_t i = 0; i < equations.size(); ++i) {
    const auto& e = equations[i];
    const std::string where = "equation " + std::to_string(i) + ": ";
    if (e.vars.empty()) throw InputError(where + "no variables");
    if (max_width != 0 && e.vars.size() > max_width) {
      throw InputError(where + "more than " + std::to_string(max_width) + " variables");
    }
    if (e.vars.size() != e.coeffs.size()) throw InputError(where + "coefficient count mismatch");
    for (auto v : e.vars) {
      if (v >= variables) throw InputError(where + "variable out of range");
    }
    for (auto c : e.coeffs) {
      if (c >= q) throw InputError(where + "coefficient not reduced mod q");
    }
    if (e.constant >= q) throw InputError(where + "constant not reduced mod q");
  }
}

std::string ring_symbol_name(const RingShape& shape) {
  std::string name = "E";
  for (auto c : shape.coeffs) name += "_" + std::to_string(c);
  return name + "_b" + std::to_string(shape.constant);
}

Structure ring_structure(std::uint32_t q, const std::vector<RingShape>& shapes) {
  if (q < 2) throw InputError("modulus must be at least 2");
  std::vector<Symbol> symbols;
  std::vector<std::vector<Tuple>> rels;
  for (const auto& s : shapes) {
    if (s.coeffs.empty()) throw InputError("ring relation needs at least one coefficient");
    for (auto c : s.coeffs) {
      if (c >= q) throw InputError("coefficient not reduced mod q");
    }
    if (s.constant >= q) throw InputError("constant not reduced mod q");
    symbols.push_back({ring_symbol_name(s), s.coeffs.size()});
    const std::size_t m = s.coeffs.size();
    std::vector<Tuple> tuples;
    Tuple t(m, 0);
    for (;;) {
      std::uint64_t sum = 0;
      for (std::size_t i = 0; i < m; ++i) sum += std::uint64_t{s.coeffs[i]} * t[i];
      if (sum % q == s.constant) tuples.push_back(t);
      std::size_t i = m;
      while (i > 0 && t[i - 1] + 1 == q) t[--i] = 0;
      if (i == 0) break;
      ++t[i - 1];
    }
    rels.push_back(std::move(tuples));
  }
  return Structure(Signature(std::move(symbols)), q, std::move(rels));
}

std::pair<Structure, Structure> affine_to_instance(const AffineSystem& sys) {
  sys.validate();
  std::map<RingShape, std::size_t> index;
  for (const auto& e : sys.equations) index.emplace(RingShape{e.coeffs, e.constant}, 0);
  std::vector<RingShape> shapes;
  for (auto& [shape, i] : index) {
    i = shapes.size();
    shapes.push_back(shape);
  }
  Structure b = ring_structure(sys.q, shapes);
  std::vector<std::vector<Tuple>> rels(shapes.size());
  for (const auto& e : sys.equations) {
    rels[index.at(RingShape{e.coeffs, e.constant})].push_back(Tuple(e.vars.begin(), e.vars.end()));
  }
  Structure a(b.signature(), sys.variables, std::move(rels));
  return {std::move(a), std::move(b)};
}

AffineSystem tseitin_system(const OrderedGraph& g, const std::vector<std::uint32_t>& charge) {
  if (charge.size() != g.vertex_count()) throw InputError("one charge per vertex expected");
  AffineSystem sys;
  sys.q = 2;
  sys.variables = g.edge_count();
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    AffineEquation e;
    for (Vertex u : g.neighbours(v)) {
      e.vars.push_back(static_cast<std::uint32_t>(g.edge_index(u, v)));
      e.coeffs.push_back(1);
    }
    e.constant = charge[v] % 2;
    if (e.vars.empty()) {
      if (e.constant != 0) throw InputError("isolated vertex with odd charge");
      continue;
    }
    sys.equations.push_back(std::move(e));
  }
  return sys;
}

bool satisfies(const AffineSystem& sys, const std::vector<std::uint32_t>& assignment) {
  if (assignment.size() != sys.variables) return false;
  for (const auto& e : sys.equations) {
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < e.vars.size(); ++i) {
      sum += std::uint64_t{e.coeffs[i]} * assignment[e.vars[i]];
    }
    if (sum % sys.q != e.constant) return false;
  }
  return true;
}

namespace {

constexpr std::uint32_t kOpen = 0xffffffffU;

class AffineSearcher {
 public:
  AffineSearcher(const AffineSystem& sys, std::uint64_t budget)
      : sys_(sys), budget_(budget), value_(sys.variables, kOpen), occurs_(sys.variables) {
    for (std::uint32_t i = 0; i < sys.equations.size(); ++i) {
      for (auto v : sys.equations[i].vars) occurs_[v].push_back(i);
    }
    for (auto& o : occurs_) o.erase(std::unique(o.begin(), o.end()), o.end());
    order_.resize(sys.variables);
    std::iota(order_.begin(), order_.end(), 0U);
    std::stable_sort(order_.begin(), order_.end(), [&](auto x, auto y) {
      return occurs_[x].size() > occurs_[y].size();
    });
  }

  AffineSearch run() {
    AffineSearch out;
    std::vector<std::uint32_t> trail;
    bool ok = true;
    for (std::uint32_t i = 0; i < sys_.equations.size() && ok; ++i) ok = settle(i, trail);
    out.status = ok ? recurse(0) : SearchStatus::none;
    out.nodes = nodes_;
    if (out.status == SearchStatus::found) out.assignment = value_;
    return out;
  }

 private:
  // Checks equation i; with one open variable whose coefficient is a unit
  // its value is forced. Returns false on a contradiction.
  bool settle(std::uint32_t i, std::vector<std::uint32_t>& trail) {
    const auto& e = sys_.equations[i];
    const std::uint32_t q = sys_.q;
    std::int64_t open = -1;
    std::uint64_t open_coef = 0;
    std::uint64_t sum = 0;
    for (std::size_t j = 0; j < e.vars.size(); ++j) {
      const auto v = e.vars[j];
      if (value_[v] == kOpen) {
        if (open >= 0 && open != v) return true;  // two open variables
        open = v;
        open_coef = (open_coef + e.coeffs[j]) % q;
      } else {
        sum += std::uint64_t{e.coeffs[j]} * value_[v];
      }
    }
    const std::uint64_t need = (e.constant + q - sum % q) % q;
    if (open < 0) return need == 0;
    // Solve open_coef * x = need (mod q) by scanning when not forced.
    std::uint32_t hits = 0;
    std::uint32_t last = 0;
    for (std::uint32_t x = 0; x < q; ++x) {
      if (open_coef * x % q == need) {
        ++hits;
        last = x;
      }
    }
    if (hits == 0) return false;
    if (hits == 1) {
      value_[static_cast<std::size_t>(open)] = last;
      trail.push_back(static_cast<std::uint32_t>(open));
      for (auto j : occurs_[static_cast<std::size_t>(open)]) {
        if (!settle(j, trail)) return false;
      }
    }
    return true;
  }

  SearchStatus recurse(std::size_t depth) {
    while (depth < order_.size() && value_[order_[depth]] != kOpen) ++depth;
    if (depth == order_.size()) return SearchStatus::found;
    const auto v = order_[depth];
    for (std::uint32_t x = 0; x < sys_.q; ++x) {
      if (++nodes_ > budget_) return SearchStatus::budget_exceeded;
      std::vector<std::uint32_t> trail{v};
      value_[v] = x;
      bool ok = true;
      for (auto j : occurs_[v]) {
        if (!(ok = settle(j, trail))) break;
      }
      if (ok) {
        SearchStatus st = recurse(depth + 1);
        if (st != SearchStatus::none) return st;
      }
      for (auto t : trail) value_[t] = kOpen;
    }
    return SearchStatus::none;
  }

  const AffineSystem& sys_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::uint32_t> value_;
  std::vector<std::vector<std::uint32_t>> occurs_;
  std::vector<std::uint32_t> order_;
};

}  // namespace

AffineSearch solve_affine_brute(const AffineSystem& sys, std::uint64_t budget) {
  sys.validate();
  return AffineSearcher(sys, budget).run();
}

bool is_prime_power(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p == 0) {
      while (q % p == 0) q /= p;
      return q == 1;
    }
  }
  return true;
}

}  // namespace sheafcsp
