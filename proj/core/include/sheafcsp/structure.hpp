#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace sheafcsp {

/// Universe elements are dense indices 0..n-1.
using Element = std::uint32_t;
using Tuple = std::vector<Element>;

struct Symbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Ordered list of relation symbols with unique names and positive arities.
class Signature {
 public:
  Signature() = default;
  /// Throws InputError on a duplicate name or a zero arity.
  explicit Signature(std::vector<Symbol> symbols);

  std::size_t size() const { return symbols_.size(); }
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::optional<std::size_t> index_of(const std::string& name) const;
  std::size_t max_arity() const;

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<Symbol> symbols_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct Violation {
  std::string symbol;
  std::size_t tuple_index = 0;
  std::string message;
};

/// Unchecked relational data; validate_structure inspects it and the
/// Structure constructor refuses it if anything is wrong.
struct StructureData {
  Signature signature;
  std::size_t size = 0;
  std::vector<std::vector<Tuple>> relations;  // parallel to signature
};

std::vector<Violation> validate_structure(const StructureData& data);

/// A finite relational structure. Immutable after construction: tuples are
/// sorted and deduplicated per relation, and indexed by the set of distinct
/// elements they mention so that the tuples living inside a small subset can
/// be found without scanning.
class Structure {
 public:
  Structure() = default;
  /// Throws InputError listing every violation.
  explicit Structure(StructureData data);
  Structure(Signature signature, std::size_t size,
            std::vector<std::vector<Tuple>> relations);

  const Signature& signature() const { return signature_; }
  std::size_t size() const { return size_; }
  const std::vector<Tuple>& tuples(std::size_t symbol) const {
    return relations_[symbol];
  }
  std::size_t tuple_count() const;
  bool contains(std::size_t symbol, std::span<const Element> tuple) const;

  /// A tuple referenced by (symbol, index into tuples(symbol)).
  struct TupleRef {
    std::uint32_t symbol;
    std::uint32_t index;
  };
  /// Tuples whose set of distinct entries is exactly `support`
  /// (strictly sorted).
  std::span<const TupleRef> tuples_on(std::span<const Element> support) const;

  friend bool operator==(const Structure& a, const Structure& b) {
    return a.size_ == b.size_ && a.signature_ == b.signature_ &&
           a.relations_ == b.relations_;
  }

 private:
  void build_indexes();
  std::uint64_t support_key(std::span<const Element> support) const;

  Signature signature_;
  std::size_t size_ = 0;
  std::vector<std::vector<Tuple>> relations_;
  std::unordered_map<std::uint64_t, std::vector<TupleRef>> by_support_;
  std::size_t max_support_ = 0;
};

enum class SectionKind { hom, isom };

/// A partial map A -> B with an explicit, strictly sorted domain.
struct LocalSection {
  std::vector<Element> domain;
  std::vector<Element> values;
  SectionKind kind = SectionKind::hom;

  std::size_t size() const { return domain.size(); }
  /// Value at `a`, if a is in the domain.
  std::optional<Element> at(Element a) const;
  /// Throws InputError unless domain is strictly sorted, parallel to values
  /// and (for isom) injective.
  void check_shape() const;

  friend bool operator==(const LocalSection& a, const LocalSection& b) {
    return a.domain == b.domain && a.values == b.values;
  }
};

/// Builds a section from (a, b) pairs in any order.
LocalSection make_section(std::vector<std::pair<Element, Element>> pairs,
                          SectionKind kind = SectionKind::hom);

bool is_partial_hom(const LocalSection& s, const Structure& a,
                    const Structure& b);
bool is_partial_iso(const LocalSection& s, const Structure& a,
                    const Structure& b);

/// The inverse of an injective section: domain im(s), sorted.
LocalSection inverse(const LocalSection& s);

/// Throws InputError when the two structures disagree on signature.
void require_same_signature(const Structure& a, const Structure& b);

}  // namespace sheafcsp
