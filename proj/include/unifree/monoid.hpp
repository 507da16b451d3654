#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace unifree {

enum class MonoidKind { FiniteTable, NatAdditive, IntAdditive, CyclicZn, FreeMonoid, FreeGroup };

const char* to_string(MonoidKind kind) noexcept;

// Letter codes: 2*i is generator i, 2*i+1 its formal inverse (free groups only).
using Word = std::vector<int>;

/// Freely reduces a word by cancelling adjacent inverse letters.
Word reduce_word(const Word& word);

// Canonical element handle: an integer for table/additive/cyclic kinds, a
// reduced word for the word kinds. Equality of handles is equality in the
// monoid.
class Element {
 public:
  Element() = default;
  static Element scalar(std::int64_t value);
  static Element word(Word letters);

  bool is_word() const { return is_word_; }
  std::int64_t value() const { return value_; }
  const Word& letters() const { return letters_; }

  friend auto operator<=>(const Element&, const Element&) = default;
  friend bool operator==(const Element&, const Element&) = default;

 private:
  bool is_word_ = false;
  std::int64_t value_ = 0;
  Word letters_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

struct EnumerationBound {
  std::size_t max_elements = 64;
  std::size_t max_word_length = 4;
};

class Monoid {
 public:
  /// Row-major table with table[a][b] = a*b. Only ranges are validated here;
  /// the monoid laws are reported by check_monoid_axioms.
  static Monoid finite_table(std::vector<std::vector<std::size_t>> table, std::size_t identity,
                             std::vector<std::string> labels = {});
  static Monoid trivial();
  static Monoid nat();
  static Monoid integers();
  static Monoid cyclic(std::size_t n);
  static Monoid free_monoid(std::size_t generators);
  static Monoid free_group(std::size_t generators);

  MonoidKind kind() const { return kind_; }
  std::string describe() const;
  std::size_t generator_count() const;
  std::optional<std::size_t> order() const;
  bool is_finite() const { return order().has_value(); }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

  Element identity() const;
  bool contains(const Element& e) const;
  Element multiply(const Element& a, const Element& b) const;

  /// Identity first; full carrier for finite kinds, otherwise a
  /// length-then-lexicographic (or 0, 1, -1, 2, ... for IntAdditive) prefix
  /// cut at the bound. Prefix-monotone in the bound.
  std::vector<Element> enumerate(const EnumerationBound& bound) const;

  /// Positive generators (finite tables: every non-identity element).
  std::vector<Element> generators() const;

  /// Writes e as an ordered product of generators or their inverses,
  /// e = f[0] * f[1] * ... ; empty for the identity.
  std::vector<Element> factor(const Element& e) const;

  std::string format(const Element& e) const;
  Element parse(std::string_view text) const;

  friend bool operator==(const Monoid&, const Monoid&) = default;

 private:
  Monoid(MonoidKind kind, std::size_t n) : kind_(kind), n_(n) {}
  void require(const Element& e) const;

  MonoidKind kind_;
  std::size_t n_;  // table size, modulus, or generator count
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_index_ = 0;
  std::vector<std::string> labels_;
};

struct AxiomReport {
  bool associative = true;
  bool identity_law = true;
  bool complete = false;  // true when every element was checked
  std::size_t elements_checked = 0;
  std::string failure;    // first violated law, empty when passed

  bool passed() const { return associative && identity_law; }
};

AxiomReport check_monoid_axioms(const Monoid& m, const EnumerationBound& bound);

/// All monoids of the given order up to isomorphism, as tables with
/// identity 0. Orders 1..4 give 1, 2, 7, 35 monoids.
std::vector<Monoid> small_monoids(std::size_t order);

}  // namespace unifree
