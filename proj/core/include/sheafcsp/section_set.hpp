#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "sheafcsp/context_lattice.hpp"
#include "sheafcsp/structure.hpp"

namespace sheafcsp {

/// A local section at a known context is stored as its value tuple packed
/// into base-|B| digits, first domain element most significant. Sorting
/// codes therefore sorts value tuples lexicographically.
using SectionCode = std::uint64_t;

/// A sub-presheaf S of Hom_k(A,B) or Isom_k(A,B): for every context of
/// A^{<=k}, the sorted set of section codes stored there. Value type;
/// operations return new sets.
class SectionSet {
 public:
  SectionSet(std::shared_ptr<const Structure> source,
             std::shared_ptr<const Structure> target, std::size_t k,
             SectionKind kind, std::shared_ptr<const ContextLattice> lattice,
             std::vector<std::vector<SectionCode>> codes);

  const Structure& source() const { return *source_; }
  const Structure& target() const { return *target_; }
  const std::shared_ptr<const Structure>& source_ptr() const { return source_; }
  const std::shared_ptr<const Structure>& target_ptr() const { return target_; }
  const ContextLattice& contexts() const { return *lattice_; }
  const std::shared_ptr<const ContextLattice>& lattice_ptr() const { return lattice_; }
  std::size_t k() const { return k_; }
  SectionKind kind() const { return kind_; }

  std::span<const SectionCode> at(ContextId c) const { return codes_[c]; }
  const std::vector<std::vector<SectionCode>>& codes() const { return codes_; }
  std::size_t total() const;
  /// No section at any context.
  bool empty() const { return total() == 0; }
  /// Whether the empty section survives; for a presheaf this is equivalent
  /// to being non-empty.
  bool has_empty_section() const { return !codes_[0].empty(); }
  /// Section counts indexed by context size.
  std::vector<std::size_t> counts_by_size() const;

  std::optional<std::size_t> find(ContextId c, SectionCode code) const;
  bool contains(const LocalSection& s) const;
  LocalSection section(ContextId c, std::size_t index) const;
  /// Context id and code of a section; throws InputError if the domain is
  /// not a context of this set.
  std::pair<ContextId, SectionCode> locate(const LocalSection& s) const;

  SectionCode encode(std::span<const Element> values) const;
  std::vector<Element> decode(SectionCode code, std::size_t size) const;
  Element value_at(SectionCode code, std::size_t size, std::size_t pos) const {
    return static_cast<Element>((code / pow_[size - 1 - pos]) % base_);
  }
  /// Code of the restriction dropping position `pos`.
  SectionCode drop(SectionCode code, std::size_t size, std::size_t pos) const {
    const SectionCode high = code / pow_[size - pos];
    const SectionCode low = code % pow_[size - 1 - pos];
    return high * pow_[size - 1 - pos] + low;
  }
  /// Code after inserting value `v` at position `pos`.
  SectionCode insert(SectionCode code, std::size_t size, std::size_t pos,
                     Element v) const {
    const SectionCode high = code / pow_[size - pos];
    const SectionCode low = code % pow_[size - pos];
    return (high * base_ + v) * pow_[size - pos] + low;
  }

  /// Keeps exactly the sections whose flag is set; flags[c][i] refers to
  /// at(c)[i].
  SectionSet filtered(const std::vector<std::vector<char>>& keep) const;

  friend bool operator==(const SectionSet& x, const SectionSet& y) {
    return x.k_ == y.k_ && x.kind_ == y.kind_ && x.codes_ == y.codes_ &&
           *x.source_ == *y.source_ && *x.target_ == *y.target_;
  }

 private:
  std::shared_ptr<const Structure> source_;
  std::shared_ptr<const Structure> target_;
  std::size_t k_;
  SectionKind kind_;
  std::shared_ptr<const ContextLattice> lattice_;
  std::vector<std::vector<SectionCode>> codes_;
  SectionCode base_;
  std::vector<SectionCode> pow_;
};

/// H_k(A,B) for kind=hom, I_k(A,B) for kind=isom. Every context is present;
/// the empty context carries the empty section.
SectionSet enumerate_sections(std::shared_ptr<const Structure> a,
                              std::shared_ptr<const Structure> b, std::size_t k,
                              SectionKind kind);
SectionSet enumerate_sections(const Structure& a, const Structure& b,
                              std::size_t k, SectionKind kind);

/// s cut down to `sub`; throws InputError unless sub ⊆ dom(s).
LocalSection restrict(const LocalSection& s, std::span<const Element> sub);

/// Removes each victim and every stored section extending one.
SectionSet remove_with_upset(const SectionSet& s,
                             const std::vector<LocalSection>& victims);

/// Largest subset closed under restriction.
SectionSet downward_close(const SectionSet& s);

}  // namespace sheafcsp
