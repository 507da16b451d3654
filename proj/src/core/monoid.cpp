#include "unifree/monoid.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <unordered_set>

#include "unifree/error.hpp"

namespace unifree {

const char* to_string(MonoidKind kind) noexcept {
  switch (kind) {
    case MonoidKind::FiniteTable: return "finite_table";
    case MonoidKind::NatAdditive: return "nat_additive";
    case MonoidKind::IntAdditive: return "int_additive";
    case MonoidKind::CyclicZn: return "cyclic";
    case MonoidKind::FreeMonoid: return "free_monoid";
    case MonoidKind::FreeGroup: return "free_group";
  }
  return "unknown";
}

Word reduce_word(const Word& word) {
  Word out;
  out.reserve(word.size());
  for (int letter : word) {
    if (!out.empty() && (out.back() ^ 1) == letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  return out;
}

Element Element::scalar(std::int64_t value) {
  Element e;
  e.value_ = value;
  return e;
}

Element Element::word(Word letters) {
  Element e;
  e.is_word_ = true;
  e.letters_ = std::move(letters);
  return e;
}

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  std::size_t seed = std::hash<std::int64_t>{}(e.value()) ^ (e.is_word() ? 0x9e3779b9u : 0u);
  for (int x : e.letters()) seed ^= static_cast<std::size_t>(x) + 0x9e3779b9 + (seed << 6) + (seed >> 2);
  return seed;
}

Monoid Monoid::finite_table(std::vector<std::vector<std::size_t>> table, std::size_t identity,
                            std::vector<std::string> labels) {
  const std::size_t n = table.size();
  if (n == 0) fail(ErrorCode::MalformedInput, "monoid table is empty");
  for (const auto& row : table) {
    if (row.size() != n) fail(ErrorCode::MalformedInput, "monoid table is not square");
    for (auto v : row)
      if (v >= n) fail(ErrorCode::MalformedInput, "monoid table entry " + std::to_string(v) + " out of range");
  }
  if (identity >= n) fail(ErrorCode::MalformedInput, "identity index out of range");
  if (labels.empty()) {
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != n) fail(ErrorCode::MalformedInput, "label count does not match table size");
  if (std::set<std::string>(labels.begin(), labels.end()).size() != n)
    fail(ErrorCode::MalformedInput, "monoid labels are not distinct");
  Monoid m(MonoidKind::FiniteTable, n);
  m.table_ = std::move(table);
  m.identity_index_ = identity;
  m.labels_ = std::move(labels);
  return m;
}

Monoid Monoid::trivial() { return finite_table({{0}}, 0, {"1"}); }
Monoid Monoid::nat() { return Monoid(MonoidKind::NatAdditive, 0); }
Monoid Monoid::integers() { return Monoid(MonoidKind::IntAdditive, 0); }

Monoid Monoid::cyclic(std::size_t n) {
  if (n == 0) fail(ErrorCode::MalformedInput, "cyclic monoid needs n >= 1");
  return Monoid(MonoidKind::CyclicZn, n);
}

Monoid Monoid::free_monoid(std::size_t generators) {
  if (generators == 0 || generators > 26) fail(ErrorCode::MalformedInput, "free monoid needs 1..26 generators");
  return Monoid(MonoidKind::FreeMonoid, generators);
}

Monoid Monoid::free_group(std::size_t generators) {
  if (generators == 0 || generators > 26) fail(ErrorCode::MalformedInput, "free group needs 1..26 generators");
  return Monoid(MonoidKind::FreeGroup, generators);
}

std::string Monoid::describe() const {
  switch (kind_) {
    case MonoidKind::FiniteTable: return "table(" + std::to_string(n_) + ")";
    case MonoidKind::NatAdditive: return "N";
    case MonoidKind::IntAdditive: return "Z";
    case MonoidKind::CyclicZn: return "Z_" + std::to_string(n_);
    case MonoidKind::FreeMonoid: return "free_monoid(" + std::to_string(n_) + ")";
    case MonoidKind::FreeGroup: return "free_group(" + std::to_string(n_) + ")";
  }
  return "?";
}

std::size_t Monoid::generator_count() const { return generators().size(); }

std::optional<std::size_t> Monoid::order() const {
  if (kind_ == MonoidKind::FiniteTable || kind_ == MonoidKind::CyclicZn) return n_;
  return std::nullopt;
}

Element Monoid::identity() const {
  switch (kind_) {
    case MonoidKind::FiniteTable: return Element::scalar(static_cast<std::int64_t>(identity_index_));
    case MonoidKind::FreeMonoid:
    case MonoidKind::FreeGroup: return Element::word({});
    default: return Element::scalar(0);
  }
}

bool Monoid::contains(const Element& e) const {
  switch (kind_) {
    case MonoidKind::FiniteTable:
    case MonoidKind::CyclicZn:
      return !e.is_word() && e.value() >= 0 && static_cast<std::size_t>(e.value()) < n_;
    case MonoidKind::NatAdditive: return !e.is_word() && e.value() >= 0;
    case MonoidKind::IntAdditive: return !e.is_word();
    case MonoidKind::FreeMonoid:
      return e.is_word() && std::all_of(e.letters().begin(), e.letters().end(), [&](int x) {
               return x >= 0 && x % 2 == 0 && static_cast<std::size_t>(x) < 2 * n_;
             });
    case MonoidKind::FreeGroup:
      return e.is_word() &&
             std::all_of(e.letters().begin(), e.letters().end(),
                         [&](int x) { return x >= 0 && static_cast<std::size_t>(x) < 2 * n_; }) &&
             reduce_word(e.letters()) == e.letters();
  }
  return false;
}

void Monoid::require(const Element& e) const {
  if (!contains(e)) fail(ErrorCode::ElementNotInMonoid, "element does not belong to " + describe());
}

Element Monoid::multiply(const Element& a, const Element& b) const {
  require(a);
  require(b);
  switch (kind_) {
    case MonoidKind::FiniteTable:
      return Element::scalar(static_cast<std::int64_t>(table_[a.value()][b.value()]));
    case MonoidKind::NatAdditive:
    case MonoidKind::IntAdditive: {
      std::int64_t out = 0;
      if (__builtin_add_overflow(a.value(), b.value(), &out))
        fail(ErrorCode::BoundExceeded, "integer overflow in " + describe());
      return Element::scalar(out);
    }
    case MonoidKind::CyclicZn:
      return Element::scalar((a.value() + b.value()) % static_cast<std::int64_t>(n_));
    case MonoidKind::FreeMonoid:
    case MonoidKind::FreeGroup: {
      Word w = a.letters();
      w.insert(w.end(), b.letters().begin(), b.letters().end());
      return Element::word(kind_ == MonoidKind::FreeGroup ? reduce_word(w) : w);
    }
  }
  return identity();
}

std::vector<Element> Monoid::enumerate(const EnumerationBound& bound) const {
  std::vector<Element> out;
  const std::size_t cap = std::max<std::size_t>(bound.max_elements, 1);
  switch (kind_) {
    case MonoidKind::FiniteTable:
      out.push_back(identity());
      for (std::size_t i = 0; i < n_; ++i)
        if (i != identity_index_) out.push_back(Element::scalar(static_cast<std::int64_t>(i)));
      return out;
    case MonoidKind::CyclicZn:
      for (std::size_t i = 0; i < n_; ++i) out.push_back(Element::scalar(static_cast<std::int64_t>(i)));
      return out;
    case MonoidKind::NatAdditive:
      for (std::size_t i = 0; i < cap; ++i) out.push_back(Element::scalar(static_cast<std::int64_t>(i)));
      return out;
    case MonoidKind::IntAdditive:
      out.push_back(Element::scalar(0));
      for (std::int64_t k = 1; out.size() < cap; ++k) {
        out.push_back(Element::scalar(k));
        if (out.size() < cap) out.push_back(Element::scalar(-k));
      }
      return out;
    case MonoidKind::FreeMonoid:
    case MonoidKind::FreeGroup: {
      const bool group = kind_ == MonoidKind::FreeGroup;
      std::vector<Word> layer{Word{}};
      out.push_back(identity());
      for (std::size_t len = 1; len <= bound.max_word_length && out.size() < cap; ++len) {
        std::vector<Word> next;
        for (const auto& w : layer) {
          for (int letter = 0; letter < static_cast<int>(2 * n_); ++letter) {
            if (!group && letter % 2 == 1) continue;
            if (!w.empty() && (w.back() ^ 1) == letter && group) continue;
            Word extended = w;
            extended.push_back(letter);
            if (out.size() < cap) out.push_back(Element::word(extended));
            next.push_back(std::move(extended));
          }
        }
        layer = std::move(next);
      }
      return out;
    }
  }
  return out;
}

std::vector<Element> Monoid::generators() const {
  std::vector<Element> out;
  switch (kind_) {
    case MonoidKind::FiniteTable:
      for (std::size_t i = 0; i < n_; ++i)
        if (i != identity_index_) out.push_back(Element::scalar(static_cast<std::int64_t>(i)));
      break;
    case MonoidKind::CyclicZn:
      if (n_ > 1) out.push_back(Element::scalar(1));
      break;
    case MonoidKind::NatAdditive:
    case MonoidKind::IntAdditive: out.push_back(Element::scalar(1)); break;
    case MonoidKind::FreeMonoid:
    case MonoidKind::FreeGroup:
      for (std::size_t i = 0; i < n_; ++i) out.push_back(Element::word({static_cast<int>(2 * i)}));
      break;
  }
  return out;
}

std::vector<Element> Monoid::factor(const Element& e) const {
  require(e);
  std::vector<Element> out;
  switch (kind_) {
    case MonoidKind::FiniteTable:
      if (static_cast<std::size_t>(e.value()) != identity_index_) out.push_back(e);
      break;
    case MonoidKind::CyclicZn:
    case MonoidKind::NatAdditive:
      out.assign(static_cast<std::size_t>(e.value()), Element::scalar(1));
      break;
    case MonoidKind::IntAdditive:
      out.assign(static_cast<std::size_t>(e.value() < 0 ? -e.value() : e.value()),
                 Element::scalar(e.value() < 0 ? -1 : 1));
      break;
    case MonoidKind::FreeMonoid:
    case MonoidKind::FreeGroup:
      for (int letter : e.letters()) out.push_back(Element::word({letter}));
      break;
  }
  return out;
}

std::string Monoid::format(const Element& e) const {
  require(e);
  if (kind_ == MonoidKind::FiniteTable) return labels_[static_cast<std::size_t>(e.value())];
  if (!e.is_word()) return std::to_string(e.value());
  if (e.letters().empty()) return "1";
  std::string out;
  for (int letter : e.letters()) out.push_back(static_cast<char>((letter % 2 ? 'A' : 'a') + letter / 2));
  return out;
}

Element Monoid::parse(std::string_view text) const {
  if (kind_ == MonoidKind::FiniteTable) {
    auto it = std::find(labels_.begin(), labels_.end(), text);
    if (it == labels_.end()) fail(ErrorCode::ElementNotInMonoid, "unknown element '" + std::string(text) + "'");
    return Element::scalar(it - labels_.begin());
  }
  if (kind_ == MonoidKind::FreeMonoid || kind_ == MonoidKind::FreeGroup) {
    Word w;
    if (text != "1" && text != "") {
      for (char c : text) {
        if (c >= 'a' && c <= 'z')
          w.push_back(2 * (c - 'a'));
        else if (c >= 'A' && c <= 'Z' && kind_ == MonoidKind::FreeGroup)
          w.push_back(2 * (c - 'A') + 1);
        else
          fail(ErrorCode::ElementNotInMonoid, "bad letter in '" + std::string(text) + "'");
      }
    }
    Element e = Element::word(kind_ == MonoidKind::FreeGroup ? reduce_word(w) : w);
    require(e);
    return e;
  }
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    fail(ErrorCode::ElementNotInMonoid, "bad element '" + std::string(text) + "'");
  Element e = Element::scalar(v);
  require(e);
  return e;
}

AxiomReport check_monoid_axioms(const Monoid& m, const EnumerationBound& bound) {
  AxiomReport report;
  const auto elements = m.enumerate(bound);
  report.elements_checked = elements.size();
  report.complete = m.is_finite();
  const Element one = m.identity();
  for (const auto& a : elements) {
    if (m.multiply(one, a) != a || m.multiply(a, one) != a) {
      report.identity_law = false;
      report.failure = "identity law fails at " + m.format(a);
      return report;
    }
  }
  for (const auto& a : elements)
    for (const auto& b : elements) {
      const Element ab = m.multiply(a, b);
      for (const auto& c : elements) {
        if (m.multiply(ab, c) != m.multiply(a, m.multiply(b, c))) {
          report.associative = false;
          report.failure = "associativity fails at (" + m.format(a) + ", " + m.format(b) + ", " + m.format(c) + ")";
          return report;
        }
      }
    }
  return report;
}

namespace {

using Table = std::vector<std::vector<std::size_t>>;

bool associative(const Table& t) {
  const std::size_t n = t.size();
  for (std::size_t a = 1; a < n; ++a)
    for (std::size_t b = 1; b < n; ++b)
      for (std::size_t c = 1; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) return false;
  return true;
}

Table relabel(const Table& t, const std::vector<std::size_t>& perm) {
  const std::size_t n = t.size();
  Table out(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) out[perm[a]][perm[b]] = perm[t[a][b]];
  return out;
}

}  // namespace

std::vector<Monoid> small_monoids(std::size_t order) {
  if (order == 0) return {};
  const std::size_t n = order;
  const std::size_t cells = (n - 1) * (n - 1);
  std::set<Table> seen;
  std::vector<std::size_t> digits(cells, 0);
  Table t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) t[0][i] = t[i][0] = i;
  std::vector<std::size_t> perm(n);
  while (true) {
    for (std::size_t k = 0; k < cells; ++k) t[1 + k / (n - 1)][1 + k % (n - 1)] = digits[k];
    if (associative(t)) {
      std::iota(perm.begin(), perm.end(), 0);
      Table best = t;
      while (std::next_permutation(perm.begin() + 1, perm.end())) best = std::min(best, relabel(t, perm));
      seen.insert(best);
    }
    std::size_t k = 0;
    while (k < cells && ++digits[k] == n) digits[k++] = 0;
    if (k == cells) break;
  }
  std::vector<Monoid> out;
  for (const auto& table : seen) out.push_back(Monoid::finite_table(table, 0));
  return out;
}

}  // namespace unifree
