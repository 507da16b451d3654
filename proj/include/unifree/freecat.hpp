#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "unifree/action.hpp"
#include "unifree/funcgraph.hpp"
#include "unifree/rational.hpp"

namespace unifree {

// Which arrows count as nice epimorphisms.
enum class NiceMode { Surjective, RightInvertible };

const char* to_string(NiceMode m) noexcept;

// Every instance below exposes the same surface, used by the generic
// algorithms in freecat_generic.ipp:
//
//   Object, Point, Morphism, Key
//   free_object(X), unit(X), extend(X, A, f), free_map(f)
//   apply(g, p), compose(g, h), identity(A), domain(g), codomain(g), key(g)
//   is_nice(g), test_points(A), point_samples(A), sample_objects(), homs(A, B)
//   format(A), format_point(A, p), name()
//
// Points of U[A] are addressed by Point; a map X -> U[A] is a vector of
// Points indexed by X. Morphisms may be partial (free objects over truncated
// carriers), in which case apply returns nullopt.

class EnsCategory {
 public:
  using Object = CarrierPtr;
  using Point = std::size_t;
  using Morphism = SetMap;
  using Key = std::vector<std::size_t>;

  explicit EnsCategory(NiceMode mode = NiceMode::Surjective, std::size_t max_points = 4)
      : mode_(mode), max_points_(max_points) {}

  std::string name() const { return "ens"; }
  NiceMode mode() const { return mode_; }

  Object free_object(const CarrierPtr& x) const { return x; }
  std::vector<Point> unit(const CarrierPtr& x) const;
  Morphism extend(const CarrierPtr& x, const Object& a, const std::vector<Point>& f) const;
  Morphism free_map(const SetMap& f) const { return f; }

  std::optional<Point> apply(const Morphism& g, const Point& p) const;
  Morphism compose(const Morphism& g, const Morphism& h) const { return unifree::compose(g, h); }
  Morphism identity(const Object& a) const { return identity_map(a); }
  const Object& domain(const Morphism& g) const { return g.domain; }
  const Object& codomain(const Morphism& g) const { return g.codomain; }
  Key key(const Morphism& g) const { return g.image; }

  bool is_nice(const Morphism& g) const;
  std::vector<Point> test_points(const Object& a) const;
  std::vector<Point> point_samples(const Object& a) const { return test_points(a); }
  std::vector<Object> sample_objects() const;
  std::vector<Morphism> homs(const Object& a, const Object& b) const { return all_maps(a, b); }

  std::string format(const Object& a) const;
  std::string format_point(const Object& a, const Point& p) const { return a->label(p); }

 private:
  NiceMode mode_;
  std::size_t max_points_;
};

struct MonounaryMorphism {
  PartialSelfMap domain;
  PartialSelfMap codomain;
  std::vector<std::size_t> image;
};

// Monounary algebras <A, op>. The free algebra over X is X x N with
// <x, n> -> <x, n+1>, kept to levels n < truncation.
class MonounaryCategory {
 public:
  using Object = PartialSelfMap;
  using Point = std::size_t;
  using Morphism = MonounaryMorphism;
  using Key = std::vector<std::size_t>;

  explicit MonounaryCategory(std::size_t truncation = 4, NiceMode mode = NiceMode::Surjective);

  std::string name() const { return "monounary"; }
  NiceMode mode() const { return mode_; }
  std::size_t truncation() const { return truncation_; }

  Object free_object(const CarrierPtr& x) const;
  std::vector<Point> unit(const CarrierPtr& x) const;
  Morphism extend(const CarrierPtr& x, const Object& a, const std::vector<Point>& f) const;
  Morphism free_map(const SetMap& f) const;

  std::optional<Point> apply(const Morphism& g, const Point& p) const;
  Morphism compose(const Morphism& g, const Morphism& h) const;
  Morphism identity(const Object& a) const;
  const Object& domain(const Morphism& g) const { return g.domain; }
  const Object& codomain(const Morphism& g) const { return g.codomain; }
  Key key(const Morphism& g) const { return g.image; }

  bool is_nice(const Morphism& g) const;
  std::vector<Point> test_points(const Object& a) const;
  std::vector<Point> point_samples(const Object& a) const { return test_points(a); }
  std::vector<Object> sample_objects() const;
  /// Every map commuting with the operations, by backtracking.
  std::vector<Morphism> homs(const Object& a, const Object& b) const;

  std::string format(const Object& a) const;
  std::string format_point(const Object& a, const Point& p) const { return a.carrier->label(p); }

 private:
  std::size_t truncation_;
  NiceMode mode_;
};

// A linear map between Q^n's given by its matrix; columns marked undefined
// come from basis vectors outside a truncation.
struct LinearMap {
  Matrix matrix;
  std::vector<bool> defined;

  std::size_t rows() const { return matrix.rows(); }
  std::size_t cols() const { return matrix.cols(); }
};

// Q^n with the l1 norm and non-expansive linear maps; U[A] is the unit ball.
class FinVecQCategory {
 public:
  using Object = std::size_t;
  using Point = Vector;
  using Morphism = LinearMap;
  using Key = std::vector<Rational>;

  explicit FinVecQCategory(NiceMode mode = NiceMode::Surjective, std::size_t max_dimension = 3)
      : mode_(mode), max_dimension_(max_dimension) {}

  std::string name() const { return "finvecq"; }
  NiceMode mode() const { return mode_; }

  Object free_object(const CarrierPtr& x) const { return x->size(); }
  std::vector<Point> unit(const CarrierPtr& x) const;
  /// Throws NotInUnitBall when some f(x) has norm above 1.
  Morphism extend(const CarrierPtr& x, const Object& a, const std::vector<Point>& f) const;
  Morphism free_map(const SetMap& f) const;

  std::optional<Point> apply(const Morphism& g, const Point& p) const;
  Morphism compose(const Morphism& g, const Morphism& h) const;
  Morphism identity(const Object& a) const;
  Object domain(const Morphism& g) const { return g.cols(); }
  Object codomain(const Morphism& g) const { return g.rows(); }
  Key key(const Morphism& g) const;

  bool is_nice(const Morphism& g) const;
  /// 0, +-e_i and (+-e_i +- e_j)/2.
  std::vector<Point> test_points(const Object& a) const;
  /// 0, e_i, -e_1 and (e_1 - e_n)/2.
  std::vector<Point> point_samples(const Object& a) const;
  std::vector<Object> sample_objects() const;
  /// Matrices whose columns are 0 or +-e_i.
  std::vector<Morphism> homs(const Object& a, const Object& b) const;

  std::string format(const Object& a) const { return "Q^" + std::to_string(a); }
  std::string format_point(const Object&, const Point& p) const { return format_vector(p); }

 private:
  NiceMode mode_;
  std::size_t max_dimension_;
};

/// Total linear map from a matrix; throws NotNonExpansive above norm 1.
LinearMap make_linear_map(Matrix m);

// An action of a monoid window on an object: act[m] is the endomorphism of
// window element m.
template <class Cat>
struct ObjectAction {
  WindowPtr window;
  typename Cat::Object object;
  std::vector<typename Cat::Morphism> act;
};

// Pointwise check of a candidate homomorphism on the instance's test points.
struct ObjectCertificate {
  std::size_t checks = 0;
  std::size_t skipped = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool passed() const { return failures == 0; }
};

struct LawReport {
  LawReport() = default;
  explicit LawReport(std::string name) : law(std::move(name)) {}

  std::string law;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool passed() const { return failures == 0; }
};

struct EnlargeReport {
  bool generates = false;       // the original map generates
  bool factorization = false;   // fbar = ebar o F f_S
  bool enlarged_nice = false;   // ebar is nice
  bool passed() const { return generates && factorization && enlarged_nice; }
};

template <class Cat>
struct UniversalAction {
  ZetaAction zeta;
  ObjectAction<Cat> action;  // F zeta on F(M x index)
};

template <class Cat>
struct ObjectLift {
  std::vector<typename Cat::Point> closure;
  SetMAction psi;
  EnlargeReport enlarged;
  typename Cat::Morphism i_bar;  // F(closure) -> A
  ObjectCertificate i_bar_certificate;
  Lifting zeta_lift;             // zeta(closure) -> psi at set level
  UniversalAction<Cat> universal;
  typename Cat::Morphism free_q;
  typename Cat::Morphism composite;
  ObjectCertificate certificate;
  bool nice = false;
};

template <class Cat>
struct FreeMAction {
  ZetaAction zeta;
  ObjectAction<Cat> action;
  std::vector<typename Cat::Point> unit;  // S -> U[F(M x S)], s -> eta <1, s>
};

template <class Cat>
struct MExtension {
  std::vector<typename Cat::Point> f_tilde;  // <x, s> -> x . f(s)
  typename Cat::Morphism f_bar;
  bool unit_law = false;                     // f_bar o eta_S = f
  bool determined = false;                   // f_bar o eta_{M x S} = f_tilde
  ObjectCertificate certificate;             // f_bar commutes with the actions
};

template <class Cat>
bool right_invertible(const Cat& cat, const typename Cat::Morphism& g);

/// f: X -> U[A] generates A iff fbar is nice.
template <class Cat>
bool generates(const Cat& cat, const CarrierPtr& x, const typename Cat::Object& a,
               const std::vector<typename Cat::Point>& f);

/// S must contain the image of f, and f must generate A (else
/// PreconditionViolated).
template <class Cat>
EnlargeReport enlarge_generating_set(const Cat& cat, const CarrierPtr& x, const typename Cat::Object& a,
                                     const std::vector<typename Cat::Point>& f,
                                     const std::vector<typename Cat::Point>& s);

/// The endomorphism of an arbitrary element: looked up in the window or
/// factored as a product of two window elements.
template <class Cat>
std::optional<typename Cat::Morphism> act_on(const Cat& cat, const ObjectAction<Cat>& phi, const Element& e);

template <class Cat>
ActionLawReport check_object_action(const Cat& cat, const ObjectAction<Cat>& phi);

template <class Cat>
ObjectCertificate certify_object_hom(const Cat& cat, const ObjectAction<Cat>& source, const ObjectAction<Cat>& target,
                                     const typename Cat::Morphism& g);

/// F applied to a set action.
template <class Cat>
ObjectAction<Cat> free_action(const Cat& cat, const SetMAction& psi);

template <class Cat>
UniversalAction<Cat> universal_action_on_free(const Cat& cat, const WindowPtr& window, const CarrierPtr& index,
                                              std::size_t hard_cap = kDefaultHardCap);
template <class Cat>
UniversalAction<Cat> universal_action_on_free(const Cat& cat, const Monoid& monoid, const CarrierPtr& index,
                                              const EnumerationBound& bound, std::size_t hard_cap = kDefaultHardCap);

/// Closes the generators under the action, restricts to psi, extends the
/// inclusion to ibar: F(closure) -> A and precomposes with F of the set-level
/// surjection from zeta. Throws DoesNotGenerate or BoundExceeded.
template <class Cat>
ObjectLift<Cat> lift_object_action(const Cat& cat, const ObjectAction<Cat>& phi,
                                   const std::vector<typename Cat::Point>& generators,
                                   std::size_t cap = kDefaultHardCap);

template <class Cat>
FreeMAction<Cat> free_maction_functor(const Cat& cat, const Monoid& monoid, const CarrierPtr& s,
                                      const EnumerationBound& bound, std::size_t hard_cap = kDefaultHardCap);
template <class Cat>
FreeMAction<Cat> free_maction_functor(const Cat& cat, const WindowPtr& window, const CarrierPtr& s,
                                      std::size_t hard_cap = kDefaultHardCap);

/// fbar for f: S -> U[A] via f_tilde <x, s> = x^phi . f(s).
template <class Cat>
MExtension<Cat> extend_free(const Cat& cat, const FreeMAction<Cat>& free, const ObjectAction<Cat>& phi,
                            const std::vector<typename Cat::Point>& f);

/// Unit law, extension uniqueness, faithfulness, both composition laws, unit
/// naturality, N0-N2 and generating-set enlargement over the instance's
/// sample objects and every X with at most max_x points.
template <class Cat>
std::vector<LawReport> check_laws(const Cat& cat, std::size_t max_x = 2);

/// The same adjunction checks one level up: for every given action phi and
/// every f: S -> U[A] with |S| <= max_s, the extension through F(M x S) obeys
/// the unit law, is determined by f_tilde and commutes with the actions.
/// Also checks that F f: F(M x S) -> F(M x S') is equivariant.
template <class Cat>
std::vector<LawReport> check_free_maction_laws(const Cat& cat, const WindowPtr& window,
                                               const std::vector<ObjectAction<Cat>>& actions, std::size_t max_s = 2);

/// Actions on sample objects induced by every set action on at most
/// max_points points (for Monounary, with op = identity or op = m^psi for a
/// central m).
std::vector<ObjectAction<EnsCategory>> sample_actions(const EnsCategory& cat, const WindowPtr& w, std::size_t max_points);
std::vector<ObjectAction<MonounaryCategory>> sample_actions(const MonounaryCategory& cat, const WindowPtr& w,
                                                            std::size_t max_points);
std::vector<ObjectAction<FinVecQCategory>> sample_actions(const FinVecQCategory& cat, const WindowPtr& w,
                                                          std::size_t max_points);

}  // namespace unifree

#include "unifree/freecat_generic.ipp"
