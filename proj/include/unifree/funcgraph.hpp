#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "unifree/action.hpp"

namespace unifree {

// Eventually periodic sequence: preperiod, then period repeated forever.
template <class T>
struct Periodic {
  std::vector<T> preperiod;
  std::vector<T> period;

  const T& at(std::size_t k) const {
    return k < preperiod.size() ? preperiod[k] : period[(k - preperiod.size()) % period.size()];
  }
};

// A finite functional graph; connected, so it carries exactly one cycle.
struct FiniteCore {
  std::vector<std::size_t> next;
};

// A finite in-tree hanging off a spine vertex: vertex i maps to parent[i],
// or to the spine vertex when parent[i] == -1. Parents precede children.
struct HangingTree {
  std::vector<std::int64_t> parent;
};

// A bi-infinite orbit ..., v(-1), v(0), v(1), ... with trees.at(k) hanging off
// the spine vertex v(-k), k >= 0.
struct ZChain {
  Periodic<std::vector<HangingTree>> trees;
};

// Levels 0, 1, 2, ... of sizes level_sizes.at(k); vertex i of level k maps to
// vertex edges.at(k)[i] of level k+1.
struct NaturalComponent {
  Periodic<std::size_t> level_sizes;
  Periodic<std::vector<std::size_t>> edges;
};

enum class TemplateKind { FiniteCore, ZChain, Natural };
enum class ComponentClass { Natural, HasCycle, UnboundedBelow };

const char* to_string(ComponentClass c) noexcept;
const char* to_string(TemplateKind k) noexcept;

class ComponentTemplate {
 public:
  /// Each factory validates its input and throws MalformedTemplate.
  static ComponentTemplate finite_core(std::vector<std::size_t> next);
  static ComponentTemplate loop() { return finite_core({0}); }
  static ComponentTemplate z_chain(Periodic<std::vector<HangingTree>> trees = {{}, {{}}});
  /// Default edges send every vertex to vertex 0 of the next level.
  static ComponentTemplate natural(Periodic<std::size_t> level_sizes,
                                   std::optional<Periodic<std::vector<std::size_t>>> edges = std::nullopt);
  /// The shift n -> n+1 on N.
  static ComponentTemplate chain() { return natural({{}, {1}}); }

  TemplateKind kind() const;
  const FiniteCore& core() const { return std::get<FiniteCore>(body_); }
  const ZChain& zchain() const { return std::get<ZChain>(body_); }
  const NaturalComponent& natural_body() const { return std::get<NaturalComponent>(body_); }

 private:
  explicit ComponentTemplate(std::variant<FiniteCore, ZChain, NaturalComponent> body) : body_(std::move(body)) {}
  std::variant<FiniteCore, ZChain, NaturalComponent> body_;
};

struct Family {
  ComponentTemplate component;
  std::optional<std::size_t> multiplicity;  // nullopt is omega
};

// A finite description of a countable self-map as a disjoint union of
// component templates.
struct SelfMapDescription {
  std::vector<ComponentTemplate> components;
  std::vector<Family> families;

  /// nullopt when some family has multiplicity omega.
  std::optional<std::size_t> component_count() const;
  /// The template of the n-th component: listed components, then finite
  /// families copy by copy, then omega families round-robin.
  const ComponentTemplate& component(std::size_t n) const;
  void validate() const;
};

/// nu <m, n> = <m+1, n>: omega copies of the shift on N.
SelfMapDescription nu_description();

struct Classification {
  ComponentClass cls;
  std::vector<std::size_t> cycle;  // has_cycle: the cycle, in orbit order
  std::string witness;             // human-readable grading witness / obstruction
};

/// FiniteCore -> has_cycle, ZChain -> unbounded_below, Natural -> natural with
/// the level grading as witness (minimum 0, onto N).
Classification classify_component(const ComponentTemplate& c);

// Address of a vertex inside a description. Natural: (level, index in level);
// FiniteCore: (0, vertex); ZChain: (spine level, 0) for the spine, and
// (-k, 1 + j) for the j-th tree vertex hanging at spine level -k.
struct Vertex {
  std::size_t component;
  std::int64_t level;
  std::size_t index;
};

/// The grading used by the universality witness: the level of a vertex in a
/// natural component.
std::int64_t grading(const SelfMapDescription& d, const Vertex& v);

// A finite self-map with possibly undefined images (kNone) at a truncation
// boundary.
struct PartialSelfMap {
  CarrierPtr carrier;
  std::vector<std::size_t> next;

  std::size_t size() const { return next.size(); }
  /// The N-action generated by the map, over the window {0, 1}.
  SetMAction as_action() const;
  std::vector<std::size_t> fixed_points() const;
};

PartialSelfMap make_self_map(std::vector<std::string> labels, std::vector<std::size_t> next);
PartialSelfMap make_self_map(std::vector<std::size_t> next);

struct Truncation {
  PartialSelfMap map;
  std::vector<Vertex> vertices;
  std::vector<std::size_t> component_of;   // per vertex, index into component_ids
  std::vector<std::size_t> component_ids;  // enumeration number of each included component
  std::size_t components = 0;             // number of components included
  bool closed = false;                    // the whole described map is present
  bool components_complete = false;       // finitely many components, all present
};

/// Natural components keep levels 0..depth-1, z-chains the spine levels
/// -depth..depth-1 with the trees below 0, finite cores in full. Omega
/// families contribute `copies` components.
Truncation truncate(const SelfMapDescription& d, std::size_t depth, std::size_t copies = 3);
Truncation truncation_of_finite_map(const PartialSelfMap& map);

struct Counterexample {
  std::string reason;    // "has_cycle", "unbounded_below" or "finite_component_count"
  std::string location;  // e.g. "component 0", "family 1"
  std::vector<std::size_t> cycle;
  std::string detail;
};

struct UniversalityVerdict {
  bool is_universal = false;
  bool condition_I = false;
  std::string condition_I_witness;
  bool condition_W = false;
  std::vector<ComponentClass> component_classes;  // listed components
  std::vector<ComponentClass> family_classes;
  std::optional<Counterexample> counterexample;
};

UniversalityVerdict decide_universality(const SelfMapDescription& d);

struct NuLift {
  std::size_t depth = 0;
  std::vector<std::vector<std::size_t>> q;  // q[m][n] = f^m(s_n)
  Lifting lifting;                          // truncated nu -> f
};

/// q<m, n> = f^m(s_n) for m < depth and every point s_n of f's carrier.
NuLift lift_finite_map_to_nu(const PartialSelfMap& f, std::size_t depth);

/// The nu rectangle m < depth, n < columns as a partial self-map.
PartialSelfMap nu_rectangle(std::size_t depth, std::size_t columns);

struct DescriptionLift {
  Truncation truncation;
  Lifting lifting;
  std::optional<std::size_t> reserved_component;
  std::size_t fixed_point = kNone;
};

/// The constructive surjection p(x) = <grading(x), n> followed by the nu
/// lifting of f, evaluated on a truncation. Requires a universal description.
DescriptionLift lift_universal(const SelfMapDescription& w, const PartialSelfMap& f, std::size_t depth,
                               std::size_t copies);

/// Lifts a target with a fixed point through a description with infinitely
/// many natural components; non-natural components (or one reserved natural
/// component when all are natural) collapse onto the fixed point.
DescriptionLift lift_with_fixed_point(const SelfMapDescription& w, const PartialSelfMap& f,
                                      std::optional<std::size_t> fixed_point, std::size_t depth,
                                      std::size_t copies);

enum class Outcome { Yes, No, Inconclusive };
const char* to_string(Outcome o) noexcept;

struct BruteForceResult {
  Outcome outcome = Outcome::Inconclusive;
  std::vector<std::size_t> witness;  // Yes: a surjective commuting q on the truncation
  bool certified_full = false;       // Yes on a closed truncation: a genuine lifting
  std::string reason;
  std::size_t nodes = 0;
};

/// Exhaustive backtracking for surjections q with q o w = f o q on the
/// truncation. "No" is only reported when it is sound for the full map.
BruteForceResult brute_force_lifting_exists(const Truncation& w, const PartialSelfMap& f,
                                            std::size_t node_limit = 5'000'000);

}  // namespace unifree
