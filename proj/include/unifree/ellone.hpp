#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unifree/funcgraph.hpp"
#include "unifree/rational.hpp"

namespace unifree {

using Index = std::uint64_t;

/// Cantor pairing <m, n> -> (m + n)(m + n + 1)/2 + n, and its inverse.
Index cantor_pair(std::uint64_t m, std::uint64_t n);
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(Index k);

// A finitely supported vector of l1 over a countable basis. Zero
// coefficients are never stored.
class SparseVec {
 public:
  SparseVec() = default;
  static SparseVec basis(Index s) { return SparseVec().add(s, 1); }

  SparseVec& add(Index i, const Rational& c);
  Rational coefficient(Index i) const;
  const std::map<Index, Rational>& entries() const { return entries_; }
  std::vector<Index> support() const;
  Rational norm1() const;
  bool empty() const { return entries_.empty(); }

  friend SparseVec operator+(const SparseVec& a, const SparseVec& b);
  friend SparseVec operator*(const Rational& c, const SparseVec& v);
  friend bool operator==(const SparseVec&, const SparseVec&) = default;

 private:
  std::map<Index, Rational> entries_;
};

std::string format_sparse(const SparseVec& v);

// l1(phi): e_s -> e_phi(s), for a partial self-map phi of the basis.
struct BasicOperator {
  std::string name;
  std::function<std::optional<Index>(Index)> phi;

  static BasicOperator identity();
  /// phi(s) = table[s] on [0, table.size()); kNone entries are undefined.
  static BasicOperator from_table(std::string name, std::vector<std::size_t> table);
  /// The shift <m, n> -> <m + 1, n> on Cantor-paired indices.
  static BasicOperator nu();
};

/// Linear extension of e_s -> e_phi(s). Throws IndexOutOfDomain when phi is
/// undefined on the support.
SparseVec apply_basic(const BasicOperator& op, const SparseVec& v);

// A non-expansive operator on Q^d with the l1 norm.
struct RationalTarget {
  Matrix f;
  std::size_t dimension() const { return f.rows(); }
};

/// Throws MalformedInput for non-square input and NotNonExpansive above norm 1.
RationalTarget make_target(Matrix f);

struct TargetLift {
  std::vector<Vector> points;   // the closure S', basis vector e_s <-> points[s]
  bool truncated = false;       // the closure did not stabilize within the depth
  std::vector<std::size_t> phi; // T e_s = e_phi(s); kNone past the truncation
  Matrix q;                     // q e_s = points[s]
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;
  std::size_t rank = 0;
  bool surjective = false;      // rank q = d
  bool non_expansive = false;   // every ||points[s]||_1 <= 1
  bool passed() const { return failures == 0 && surjective && non_expansive; }
};

/// Closes the seed under f for up to `depth` rounds, sets T = l1(f restricted
/// to the closure) and q(e_s) = s, and checks f o q = q o T on every basis
/// vector. Throws NotInUnitBall for seed points of norm above 1.
TargetLift lift_target_operator(const RationalTarget& target, const std::vector<Vector>& seed, std::size_t depth);

struct SquareCertificate {
  std::size_t basis_checks = 0;
  std::size_t combination_checks = 0;
  std::size_t skipped = 0;
  std::size_t failures = 0;
  std::size_t norm_checks = 0;
  std::size_t norm_failures = 0;
  bool section_ok = false;
  std::map<Index, Index> section;  // s -> some t with p(t) = s
  std::string first_failure;
  bool passed() const { return failures == 0 && norm_failures == 0 && section_ok; }
};

/// For p: T -> S onto with p o g = f o p, checks l1(p) o l1(g) = l1(f) o l1(p)
/// on basis vectors of T and on random rational combinations, that l1(p) has
/// norm one, and that a section of p makes it a projection. Throws
/// SquareDoesNotCommuteAtSetLevel, or PreconditionViolated when p misses a
/// point of S.
SquareCertificate functor_square(const BasicOperator& p, const BasicOperator& g, const BasicOperator& f,
                                 const std::vector<Index>& t_points, const std::vector<Index>& s_points,
                                 std::uint64_t seed = 0, std::size_t samples = 32);

/// l1(nu) on the rectangle m < depth, n < columns of Cantor-paired indices.
struct NuOperator {
  BasicOperator op;
  std::vector<Index> basis;
};

NuOperator universal_operator_nu(std::size_t depth, std::size_t columns);

struct NuPipeline {
  TargetLift target_lift;
  std::optional<NuLift> set_lift;        // q <m, n> = phi^m(s_n)
  SquareCertificate square;              // l1(q) against l1(nu) and l1(phi)
  std::vector<Index> basis;              // rectangle of l1(N x N)
  std::vector<std::optional<Vector>> composite;  // P e_b, P = q_lin o l1(q)
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;
  std::size_t rank = 0;
  bool surjective = false;
  Rational projection_norm;              // ||l1(q)||, exactly 1
  Rational composite_norm;               // ||P|| <= 1
  bool passed() const {
    return target_lift.passed() && square.passed() && failures == 0 && surjective && projection_norm == 1 &&
           composite_norm <= 1;
  }
};

/// The composite lifting of a target through l1(nu): f o P = P o l1(nu) on the
/// rectangle m < nu_depth, n < |S'|.
NuPipeline lift_through_nu(const RationalTarget& target, const std::vector<Vector>& seed, std::size_t closure_depth,
                           std::size_t nu_depth, std::uint64_t rng_seed = 0);

}  // namespace unifree
