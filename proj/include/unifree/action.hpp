#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "unifree/error.hpp"
#include "unifree/monoid.hpp"

namespace unifree {

// Marks an undefined image: a point or product that falls outside the
// enumerated truncation.
inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

inline constexpr std::size_t kDefaultHardCap = 1'000'000;

// An enumerated window of a monoid: the elements, their index lookup and the
// product table restricted to the window (kNone when a product leaves it).
class MonoidWindow {
 public:
  MonoidWindow(Monoid monoid, const EnumerationBound& bound);
  MonoidWindow(Monoid monoid, std::vector<Element> elements);

  const Monoid& monoid() const { return monoid_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Element>& elements() const { return elements_; }
  const Element& at(std::size_t i) const { return elements_.at(i); }
  std::optional<std::size_t> find(const Element& e) const;
  std::size_t product(std::size_t a, std::size_t b) const { return products_[a * size() + b]; }
  std::string label(std::size_t i) const { return monoid_.format(elements_.at(i)); }

  /// True when every product of window elements stays in the window.
  bool closed() const { return closed_; }

 private:
  void build();

  Monoid monoid_;
  std::vector<Element> elements_;
  std::unordered_map<Element, std::size_t, ElementHash> index_;
  std::vector<std::size_t> products_;
  bool closed_ = true;
};

using WindowPtr = std::shared_ptr<const MonoidWindow>;

WindowPtr make_window(const Monoid& monoid, const EnumerationBound& bound);

enum class CarrierKind { Finite, NatIndexed, PairIndexed };

// A nonempty enumerated set of labelled points. Pair carriers index the point
// <a, s> as a * |S| + s, with a ranging over a monoid window.
class SetCarrier {
 public:
  static SetCarrier finite(std::vector<std::string> labels);
  static SetCarrier nat_indexed(std::size_t bound);
  static SetCarrier pairs(const WindowPtr& window, const SetCarrier& base);

  CarrierKind kind() const { return kind_; }
  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> find(const std::string& label) const;

  std::size_t base_size() const { return base_size_; }
  std::size_t pair_index(std::size_t a, std::size_t s) const { return a * base_size_ + s; }
  std::pair<std::size_t, std::size_t> unpair(std::size_t i) const { return {i / base_size_, i % base_size_}; }

  friend bool operator==(const SetCarrier& a, const SetCarrier& b) { return a.labels_ == b.labels_; }

 private:
  void index();

  CarrierKind kind_ = CarrierKind::Finite;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> lookup_;
  std::size_t base_size_ = 1;
};

using CarrierPtr = std::shared_ptr<const SetCarrier>;

CarrierPtr make_finite_carrier(std::vector<std::string> labels);
/// Carrier {0, 1, ..., n-1} labelled by decimal indices.
CarrierPtr make_range_carrier(std::size_t n);

// A (possibly partial) function between enumerated carriers.
struct SetMap {
  CarrierPtr domain;
  CarrierPtr codomain;
  std::vector<std::size_t> image;

  std::size_t operator()(std::size_t x) const { return image.at(x); }
  bool total() const;
  bool surjective() const;
};

SetMap identity_map(const CarrierPtr& carrier);
/// g after f; undefined wherever either side is.
SetMap compose(const SetMap& g, const SetMap& f);
/// All total functions domain -> codomain, in lexicographic order of images.
std::vector<SetMap> all_maps(const CarrierPtr& domain, const CarrierPtr& codomain);

// A monoid action on an enumerated carrier, stored as an evaluation table
// over the window: table[m][x] = m^phi . x, or kNone outside the truncation.
// Optional generator images allow evaluating elements beyond the window.
class SetMAction {
 public:
  SetMAction(WindowPtr window, CarrierPtr carrier, std::vector<std::vector<std::size_t>> table);

  /// Builds the table from the images of the monoid's generators. Inverse
  /// letters (free groups, negative integers) use the inverse permutation;
  /// cyclic monoids require g^n = id.
  static SetMAction from_generators(WindowPtr window, CarrierPtr carrier,
                                    std::vector<std::vector<std::size_t>> generator_images);

  const WindowPtr& window() const { return window_; }
  const Monoid& monoid() const { return window_->monoid(); }
  const CarrierPtr& carrier() const { return carrier_; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }
  bool has_generators() const { return !generator_images_.empty(); }
  const std::vector<std::vector<std::size_t>>& generator_images() const { return generator_images_; }

  std::size_t act(std::size_t m, std::size_t x) const { return table_[m][x]; }

  /// m^phi . x for any element of the monoid, when it can be evaluated.
  std::optional<std::size_t> evaluate(const Element& m, std::size_t x) const;

  /// The set map m^phi for a window element.
  SetMap endomorphism(std::size_t m) const;

 private:
  WindowPtr window_;
  CarrierPtr carrier_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::vector<std::size_t>> generator_images_;
  std::vector<std::vector<std::size_t>> inverse_images_;
};

struct ActionLawReport {
  std::size_t identity_checks = 0;
  std::size_t product_checks = 0;
  std::size_t skipped = 0;
  std::string failure;
  bool passed() const { return failure.empty(); }
};

/// 1^phi = id and (m0 m1)^phi = m0^phi o m1^phi wherever all terms are defined.
ActionLawReport check_action_laws(const SetMAction& phi);

// One checked square p(m^src . x) =? m^tgt . p(x); indices refer to the source
// window (m), source carrier (x) and target carrier (lhs, rhs).
struct Square {
  std::size_t m;
  std::size_t x;
  std::size_t lhs;
  std::size_t rhs;
  bool holds() const { return lhs == rhs; }
};

struct Certificate {
  std::vector<Square> squares;
  std::size_t skipped = 0;  // squares leaving the truncation
  std::size_t failures() const;
  bool passed() const { return failures() == 0; }
};

struct Lifting {
  SetMAction source;
  SetMAction target;
  SetMap map;
  Certificate certificate;
  bool surjective_on_bound = false;
};

/// Checks every square of a candidate homomorphism source -> target over the
/// source window; target elements are matched by value.
Certificate certify_homomorphism(const SetMAction& source, const SetMAction& target, const SetMap& map);

Lifting make_lifting(SetMAction source, SetMAction target, SetMap map);

// The free action on M x S: m . <a, s> = <m a, s>. Its carrier pairs every
// element of W u W.W with every point of S, where W is the enumerated window.
struct ZetaAction {
  SetMAction action;
  CarrierPtr base;

  /// eta_S(s) = <1, s>.
  std::size_t eta(std::size_t s) const { return action.carrier()->pair_index(0, s); }
};

ZetaAction zeta_of_set(const Monoid& monoid, const CarrierPtr& base, const EnumerationBound& bound,
                       std::size_t hard_cap = kDefaultHardCap);
ZetaAction zeta_of_set(const WindowPtr& window, const CarrierPtr& base, std::size_t hard_cap = kDefaultHardCap);

/// zeta f <a, s> = <a, f s>, certified against zeta S and zeta T.
Lifting zeta_of_map(const Monoid& monoid, const SetMap& f, const EnumerationBound& bound);

/// The surjection q <a, s> = a^psi . s from zeta S onto psi.
Lifting lift_action_to_zeta(const SetMAction& psi);

struct Extension {
  Lifting hom;
  bool triangle_holds = false;  // fbar o eta_S = f
};

/// fbar <a, s> = a^phi . f(s), the unique homomorphism zeta S -> (X, phi)
/// extending f: S -> X.
Extension counit_extension(const SetMAction& phi, const SetMap& f);

/// True iff candidate (a map on the carrier of zeta S) agrees with the counit
/// extension of f everywhere.
bool verify_extension_uniqueness(const SetMAction& phi, const SetMap& f, const SetMap& candidate);

/// Counts maps g: zeta S -> X with g o eta = f that commute with the action,
/// by exhaustive backtracking over all maps. Independent of counit_extension.
std::size_t count_extensions(const SetMAction& phi, const SetMap& f);

struct OrbitClosure {
  std::vector<std::size_t> points;  // sorted
  bool stabilized = true;            // false when an image left the truncation
};

OrbitClosure orbit_closure(const SetMAction& phi, std::span<const std::size_t> seed, bool strict = false);

/// Closes a seed under a family of partial steps; generic over point type.
/// Returns the points in discovery order and whether every image was defined.
template <class Point, class Step>
std::pair<std::vector<Point>, bool> close_under(const std::vector<Point>& seed, std::size_t step_count, Step step,
                                                std::size_t cap = kDefaultHardCap) {
  std::vector<Point> points;
  std::map<Point, std::size_t> seen;
  for (const auto& p : seed)
    if (seen.emplace(p, points.size()).second) points.push_back(p);
  bool stabilized = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t k = 0; k < step_count; ++k) {
      std::optional<Point> next = step(k, points[i]);
      if (!next) {
        stabilized = false;
        continue;
      }
      if (seen.emplace(*next, points.size()).second) {
        if (points.size() >= cap) fail(ErrorCode::BoundExceeded, "orbit closure exceeds the hard cap");
        points.push_back(*next);
      }
    }
  }
  return {points, stabilized};
}

/// Enumerates every action of a closed (finite) window whose endomorphisms are
/// drawn from `candidates`. The identity acts by `identity`. Generic over the
/// endomorphism type so the categorical layer can reuse it.
template <class Endo, class Compose, class Equal>
std::vector<std::vector<Endo>> enumerate_window_actions(const MonoidWindow& window,
                                                        const std::vector<Endo>& candidates,
                                                        const Endo& identity, Compose compose, Equal equal);

/// Every action of the window's monoid on the carrier: exhaustive for closed
/// windows; for N, free monoids and Z every generator image (bijections for Z
/// and free groups).
std::vector<SetMAction> all_actions(const WindowPtr& window, const CarrierPtr& carrier);

}  // namespace unifree

#include "unifree/action_enumerate.ipp"
