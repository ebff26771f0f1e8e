#include "sheafcsp/structure.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "sheafcsp/errors.hpp"

namespace sheafcsp {

namespace {

// Number of base-`base` digits that fit in 64 bits.
std::size_t digits_that_fit(std::uint64_t base) {
  if (base <= 1) return 64;
  std::size_t d = 0;
  std::uint64_t acc = 1;
  while (acc <= std::numeric_limits<std::uint64_t>::max() / base) {
    acc *= base;
    ++d;
  }
  return d;
}

}  // namespace

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].arity == 0) {
      throw InputError("symbol '" + symbols_[i].name + "' has arity 0");
    }
    if (!index_.emplace(symbols_[i].name, i).second) {
      throw InputError("duplicate symbol name '" + symbols_[i].name + "'");
    }
  }
}

std::optional<std::size_t> Signature::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Signature::max_arity() const {
  std::size_t m = 0;
  for (const auto& s : symbols_) m = std::max(m, s.arity);
  return m;
}

std::vector<Violation> validate_structure(const StructureData& data) {
  std::vector<Violation> out;
  if (data.relations.size() != data.signature.size()) {
    out.push_back({"", 0,
                   "relation count " + std::to_string(data.relations.size()) +
                       " does not match signature size " +
                       std::to_string(data.signature.size())});
    return out;
  }
  for (std::size_t r = 0; r < data.relations.size(); ++r) {
    const auto& sym = data.signature[r];
    for (std::size_t i = 0; i < data.relations[r].size(); ++i) {
      const auto& t = data.relations[r][i];
      if (t.size() != sym.arity) {
        out.push_back({sym.name, i,
                       "arity mismatch: expected " + std::to_string(sym.arity) +
                           ", got " + std::to_string(t.size())});
        continue;
      }
      for (Element e : t) {
        if (e >= data.size) {
          out.push_back({sym.name, i,
                         "entry out of range: " + std::to_string(e) +
                             " >= size " + std::to_string(data.size)});
          break;
        }
      }
    }
  }
  return out;
}

Structure::Structure(StructureData data) {
  auto violations = validate_structure(data);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "invalid structure:";
    for (const auto& v : violations) {
      msg << "\n  " << v.symbol << "[" << v.tuple_index << "]: " << v.message;
    }
    throw InputError(msg.str());
  }
  signature_ = std::move(data.signature);
  size_ = data.size;
  relations_ = std::move(data.relations);
  build_indexes();
}

Structure::Structure(Signature signature, std::size_t size,
                     std::vector<std::vector<Tuple>> relations)
    : Structure(StructureData{std::move(signature), size, std::move(relations)}) {}

std::size_t Structure::tuple_count() const {
  std::size_t n = 0;
  for (const auto& r : relations_) n += r.size();
  return n;
}

void Structure::build_indexes() {
  for (auto& rel : relations_) {
    std::sort(rel.begin(), rel.end());
    rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
  }
  max_support_ = signature_.max_arity();
  if (max_support_ > digits_that_fit(size_ + 1)) {
    throw InputError("structure too large to index: universe " +
                     std::to_string(size_) + " with arity " +
                     std::to_string(max_support_));
  }
  std::vector<Element> support;
  for (std::uint32_t r = 0; r < relations_.size(); ++r) {
    for (std::uint32_t i = 0; i < relations_[r].size(); ++i) {
      support = relations_[r][i];
      std::sort(support.begin(), support.end());
      support.erase(std::unique(support.begin(), support.end()), support.end());
      by_support_[support_key(support)].push_back({r, i});
    }
  }
}

std::uint64_t Structure::support_key(std::span<const Element> support) const {
  std::uint64_t key = 0;
  for (Element e : support) key = key * (size_ + 1) + (e + 1);
  return key;
}

bool Structure::contains(std::size_t symbol, std::span<const Element> tuple) const {
  const auto& rel = relations_[symbol];
  return std::binary_search(
      rel.begin(), rel.end(), tuple,
      [](const auto& x, const auto& y) {
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(),
                                            y.end());
      });
}

std::span<const Structure::TupleRef> Structure::tuples_on(
    std::span<const Element> support) const {
  if (support.size() > max_support_) return {};
  auto it = by_support_.find(support_key(support));
  if (it == by_support_.end()) return {};
  return it->second;
}

std::optional<Element> LocalSection::at(Element a) const {
  auto it = std::lower_bound(domain.begin(), domain.end(), a);
  if (it == domain.end() || *it != a) return std::nullopt;
  return values[static_cast<std::size_t>(it - domain.begin())];
}

void LocalSection::check_shape() const {
  if (domain.size() != values.size()) {
    throw InputError("section domain and values differ in length");
  }
  for (std::size_t i = 1; i < domain.size(); ++i) {
    if (domain[i - 1] >= domain[i]) {
      throw InputError("section domain is not strictly sorted");
    }
  }
}

LocalSection make_section(std::vector<std::pair<Element, Element>> pairs,
                          SectionKind kind) {
  std::sort(pairs.begin(), pairs.end());
  LocalSection s;
  s.kind = kind;
  for (const auto& [a, b] : pairs) {
    if (!s.domain.empty() && s.domain.back() == a) {
      throw InputError("section assigns element " + std::to_string(a) +
                       " twice");
    }
    s.domain.push_back(a);
    s.values.push_back(b);
  }
  return s;
}

namespace {

void check_ranges(const LocalSection& s, const Structure& a, const Structure& b) {
  s.check_shape();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.domain[i] >= a.size()) {
      throw InputError("section domain element " + std::to_string(s.domain[i]) +
                       " outside source universe");
    }
    if (s.values[i] >= b.size()) {
      throw InputError("section value " + std::to_string(s.values[i]) +
                       " outside target universe");
    }
  }
}

// Calls f(support) for every non-empty subset of the sorted list `elems`.
template <typename F>
void for_each_subset(std::span<const Element> elems, F&& f) {
  const std::size_t m = elems.size();
  std::vector<Element> sub;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    sub.clear();
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1U) sub.push_back(elems[i]);
    }
    if (!f(std::span<const Element>(sub))) return;
  }
}

bool preserves(const LocalSection& s, const Structure& a, const Structure& b) {
  Tuple image;
  if (s.size() > 12) {
    // Large domains: scanning every tuple beats enumerating subsets.
    for (std::size_t r = 0; r < a.signature().size(); ++r) {
      for (const auto& t : a.tuples(r)) {
        image.resize(t.size());
        bool inside = true;
        for (std::size_t i = 0; i < t.size() && inside; ++i) {
          auto v = s.at(t[i]);
          if (!v) inside = false;
          else image[i] = *v;
        }
        if (inside && !b.contains(r, image)) return false;
      }
    }
    return true;
  }
  bool ok = true;
  for_each_subset(s.domain, [&](std::span<const Element> support) {
    for (const auto& ref : a.tuples_on(support)) {
      const auto& t = a.tuples(ref.symbol)[ref.index];
      image.resize(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) image[i] = *s.at(t[i]);
      if (!b.contains(ref.symbol, image)) {
        ok = false;
        return false;
      }
    }
    return true;
  });
  return ok;
}

}  // namespace

void require_same_signature(const Structure& a, const Structure& b) {
  if (!(a.signature() == b.signature())) {
    throw InputError("structures have different signatures");
  }
}

bool is_partial_hom(const LocalSection& s, const Structure& a, const Structure& b) {
  check_ranges(s, a, b);
  return preserves(s, a, b);
}

LocalSection inverse(const LocalSection& s) {
  std::vector<std::pair<Element, Element>> pairs;
  pairs.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    pairs.emplace_back(s.values[i], s.domain[i]);
  }
  return make_section(std::move(pairs), s.kind);
}

bool is_partial_iso(const LocalSection& s, const Structure& a, const Structure& b) {
  check_ranges(s, a, b);
  std::vector<Element> image = s.values;
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;
  if (!preserves(s, a, b)) return false;
  return preserves(inverse(s), b, a);
}

}  // namespace sheafcsp
