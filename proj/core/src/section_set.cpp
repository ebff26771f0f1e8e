#include "sheafcsp/section_set.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "sheafcsp/errors.hpp"

namespace sheafcsp {

SectionSet::SectionSet(std::shared_ptr<const Structure> source,
                       std::shared_ptr<const Structure> target, std::size_t k,
                       SectionKind kind,
                       std::shared_ptr<const ContextLattice> lattice,
                       std::vector<std::vector<SectionCode>> codes)
    : source_(std::move(source)),
      target_(std::move(target)),
      k_(k),
      kind_(kind),
      lattice_(std::move(lattice)),
      codes_(std::move(codes)) {
  if (k_ == 0) throw InputError("k must be at least 1");
  if (codes_.size() != lattice_->count()) {
    throw InputError("section table does not match the context lattice");
  }
  base_ = std::max<SectionCode>(target_->size(), 1);
  pow_.assign(lattice_->max_size() + 1, 1);
  for (std::size_t i = 1; i < pow_.size(); ++i) {
    if (pow_[i - 1] > std::numeric_limits<SectionCode>::max() / base_) {
      throw InputError("target universe too large for k-local section codes");
    }
    pow_[i] = pow_[i - 1] * base_;
  }
}

std::size_t SectionSet::total() const {
  std::size_t n = 0;
  for (const auto& c : codes_) n += c.size();
  return n;
}

std::vector<std::size_t> SectionSet::counts_by_size() const {
  std::vector<std::size_t> out(lattice_->max_size() + 1, 0);
  for (ContextId c = 0; c < codes_.size(); ++c) {
    out[lattice_->size_of(c)] += codes_[c].size();
  }
  return out;
}

std::optional<std::size_t> SectionSet::find(ContextId c, SectionCode code) const {
  const auto& v = codes_[c];
  auto it = std::lower_bound(v.begin(), v.end(), code);
  if (it == v.end() || *it != code) return std::nullopt;
  return static_cast<std::size_t>(it - v.begin());
}

SectionCode SectionSet::encode(std::span<const Element> values) const {
  SectionCode code = 0;
  for (Element v : values) {
    if (v >= target_->size()) throw InputError("section value outside target");
    code = code * base_ + v;
  }
  return code;
}

std::vector<Element> SectionSet::decode(SectionCode code, std::size_t size) const {
  std::vector<Element> out(size);
  for (std::size_t i = size; i-- > 0;) {
    out[i] = static_cast<Element>(code % base_);
    code /= base_;
  }
  return out;
}

std::pair<ContextId, SectionCode> SectionSet::locate(const LocalSection& s) const {
  s.check_shape();
  if (s.size() > lattice_->max_size()) {
    throw InputError("section domain larger than k");
  }
  for (Element a : s.domain) {
    if (a >= source_->size()) throw InputError("section domain outside source");
  }
  return {lattice_->id_of(s.domain), encode(s.values)};
}

bool SectionSet::contains(const LocalSection& s) const {
  auto [c, code] = locate(s);
  return find(c, code).has_value();
}

LocalSection SectionSet::section(ContextId c, std::size_t index) const {
  LocalSection s;
  auto el = lattice_->elements(c);
  s.domain.assign(el.begin(), el.end());
  s.values = decode(codes_[c][index], el.size());
  s.kind = kind_;
  return s;
}

SectionSet SectionSet::filtered(const std::vector<std::vector<char>>& keep) const {
  std::vector<std::vector<SectionCode>> out(codes_.size());
  for (ContextId c = 0; c < codes_.size(); ++c) {
    for (std::size_t i = 0; i < codes_[c].size(); ++i) {
      if (keep[c][i]) out[c].push_back(codes_[c][i]);
    }
  }
  return SectionSet(source_, target_, k_, kind_, lattice_, std::move(out));
}

namespace {

// Checks the tuples of `from` whose support lies inside `elems` and contains
// elems[newest] map into `to` under elems[i] -> image[i].
bool new_tuples_preserved(const Structure& from, const Structure& to,
                          std::span<const Element> elems,
                          std::span<const Element> image, std::size_t newest) {
  const std::size_t m = elems.size();
  std::vector<Element> support;
  std::vector<std::size_t> pos;
  Tuple mapped;
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    if (!(mask >> newest & 1U)) continue;
    support.clear();
    pos.clear();
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1U) {
        support.push_back(elems[i]);
        pos.push_back(i);
      }
    }
    // `support` must be sorted for lookup; elems is sorted when it is a
    // context, but for images we sort alongside.
    std::vector<std::size_t> idx(support.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t x, std::size_t y) { return support[x] < support[y]; });
    std::vector<Element> sorted(support.size());
    for (std::size_t i = 0; i < idx.size(); ++i) sorted[i] = support[idx[i]];
    for (const auto& ref : from.tuples_on(sorted)) {
      const auto& t = from.tuples(ref.symbol)[ref.index];
      mapped.resize(t.size());
      for (std::size_t j = 0; j < t.size(); ++j) {
        auto it = std::find(elems.begin(), elems.end(), t[j]);
        mapped[j] = image[static_cast<std::size_t>(it - elems.begin())];
      }
      if (!to.contains(ref.symbol, mapped)) return false;
    }
  }
  return true;
}

}  // namespace

SectionSet enumerate_sections(std::shared_ptr<const Structure> a,
                              std::shared_ptr<const Structure> b, std::size_t k,
                              SectionKind kind) {
  require_same_signature(*a, *b);
  if (k == 0) throw InputError("k must be at least 1");
  auto lattice = std::make_shared<const ContextLattice>(a->size(), k);
  std::vector<std::vector<SectionCode>> codes(lattice->count());
  codes[0].push_back(0);
  SectionSet shape(a, b, k, kind, lattice, codes);
  const SectionCode base = std::max<SectionCode>(b->size(), 1);

  std::vector<Element> values;
  for (std::size_t m = 1; m <= lattice->max_size(); ++m) {
    for (ContextId c = lattice->first_of_size(m); c < lattice->end_of_size(m); ++c) {
      auto elems = lattice->elements(c);
      const ContextId parent = lattice->face(c, m - 1);
      auto& out = codes[c];
      for (SectionCode pc : codes[parent]) {
        values = shape.decode(pc, m - 1);
        values.push_back(0);
        for (Element v = 0; v < b->size(); ++v) {
          values.back() = v;
          if (kind == SectionKind::isom &&
              std::find(values.begin(), values.end() - 1, v) != values.end() - 1) {
            continue;
          }
          if (!new_tuples_preserved(*a, *b, elems, values, m - 1)) continue;
          if (kind == SectionKind::isom &&
              !new_tuples_preserved(*b, *a, values, elems, m - 1)) {
            continue;
          }
          out.push_back(pc * base + v);
        }
      }
    }
  }
  return SectionSet(std::move(a), std::move(b), k, kind, std::move(lattice),
                    std::move(codes));
}

SectionSet enumerate_sections(const Structure& a, const Structure& b, std::size_t k,
                              SectionKind kind) {
  return enumerate_sections(std::make_shared<const Structure>(a),
                            std::make_shared<const Structure>(b), k, kind);
}

LocalSection restrict(const LocalSection& s, std::span<const Element> sub) {
  LocalSection out;
  out.kind = s.kind;
  for (std::size_t i = 0; i < sub.size(); ++i) {
    if (i > 0 && sub[i - 1] >= sub[i]) {
      throw InputError("restriction target must be strictly sorted");
    }
    auto v = s.at(sub[i]);
    if (!v) {
      throw InputError("cannot restrict to element " + std::to_string(sub[i]) +
                       " outside the domain");
    }
    out.domain.push_back(sub[i]);
    out.values.push_back(*v);
  }
  return out;
}

SectionSet remove_with_upset(const SectionSet& s,
                             const std::vector<LocalSection>& victims) {
  const auto& lat = s.contexts();
  std::unordered_set<std::uint64_t> dead;
  auto key = [&](ContextId c, SectionCode code) {
    return (static_cast<std::uint64_t>(c) << 40) ^ code;
  };
  std::vector<std::pair<ContextId, SectionCode>> dead_list;
  for (const auto& v : victims) {
    auto [c, code] = s.locate(v);
    dead_list.emplace_back(c, code);
    dead.insert(key(c, code));
  }
  auto is_dead = [&](ContextId c, SectionCode code) {
    if (!dead.count(key(c, code))) return false;
    return std::find(dead_list.begin(), dead_list.end(), std::make_pair(c, code)) !=
           dead_list.end();
  };

  std::vector<std::vector<char>> keep(lat.count());
  std::vector<Element> sub;
  std::vector<Element> vals;
  for (ContextId c = 0; c < lat.count(); ++c) {
    const std::size_t m = lat.size_of(c);
    auto elems = lat.elements(c);
    keep[c].assign(s.at(c).size(), 1);
    for (std::size_t i = 0; i < s.at(c).size(); ++i) {
      auto full = s.decode(s.at(c)[i], m);
      for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
        sub.clear();
        vals.clear();
        for (std::size_t j = 0; j < m; ++j) {
          if (mask >> j & 1U) {
            sub.push_back(elems[j]);
            vals.push_back(full[j]);
          }
        }
        if (is_dead(lat.id_of(sub), s.encode(vals))) {
          keep[c][i] = 0;
          break;
        }
      }
    }
  }
  return s.filtered(keep);
}

SectionSet downward_close(const SectionSet& s) {
  const auto& lat = s.contexts();
  std::vector<std::vector<char>> keep(lat.count());
  for (ContextId c = 0; c < lat.count(); ++c) keep[c].assign(s.at(c).size(), 1);
  // Ascending sizes: faces are final before their cofaces are examined.
  for (ContextId c = 0; c < lat.count(); ++c) {
    const std::size_t m = lat.size_of(c);
    for (std::size_t i = 0; i < s.at(c).size(); ++i) {
      for (std::size_t p = 0; p < m; ++p) {
        const ContextId f = lat.face(c, p);
        auto idx = s.find(f, s.drop(s.at(c)[i], m, p));
        if (!idx || !keep[f][*idx]) {
          keep[c][i] = 0;
          break;
        }
      }
    }
  }
  return s.filtered(keep);
}

}  // namespace sheafcsp
