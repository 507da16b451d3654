#include "unifree/ellone.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "unifree/error.hpp"

namespace unifree {

Index cantor_pair(std::uint64_t m, std::uint64_t n) {
  const std::uint64_t s = m + n;
  return s * (s + 1) / 2 + n;
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(Index k) {
  std::uint64_t s = 0;
  while ((s + 1) * (s + 2) / 2 <= k) ++s;
  const std::uint64_t n = k - s * (s + 1) / 2;
  return {s - n, n};
}

// ------------------------------------------------------------ sparse vectors

SparseVec& SparseVec::add(Index i, const Rational& c) {
  if (c == 0) return *this;
  auto [it, fresh] = entries_.emplace(i, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) entries_.erase(it);
  }
  return *this;
}

Rational SparseVec::coefficient(Index i) const {
  auto it = entries_.find(i);
  return it == entries_.end() ? Rational(0) : it->second;
}

std::vector<Index> SparseVec::support() const {
  std::vector<Index> out;
  for (const auto& [i, c] : entries_) out.push_back(i);
  return out;
}

Rational SparseVec::norm1() const {
  Rational n = 0;
  for (const auto& [i, c] : entries_) n += abs(c);
  return n;
}

SparseVec operator+(const SparseVec& a, const SparseVec& b) {
  SparseVec out = a;
  for (const auto& [i, c] : b.entries_) out.add(i, c);
  return out;
}

SparseVec operator*(const Rational& c, const SparseVec& v) {
  SparseVec out;
  for (const auto& [i, x] : v.entries_) out.add(i, c * x);
  return out;
}

std::string format_sparse(const SparseVec& v) {
  std::string out = "{";
  bool first = true;
  for (const auto& [i, c] : v.entries()) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(i) + ": " + format_rational(c);
  }
  return out + "}";
}

// ------------------------------------------------------------ basic operators

BasicOperator BasicOperator::identity() {
  return {"id", [](Index s) -> std::optional<Index> { return s; }};
}

BasicOperator BasicOperator::from_table(std::string name, std::vector<std::size_t> table) {
  return {std::move(name), [table = std::move(table)](Index s) -> std::optional<Index> {
            if (s >= table.size() || table[s] == kNone) return std::nullopt;
            return table[s];
          }};
}

BasicOperator BasicOperator::nu() {
  return {"nu", [](Index k) -> std::optional<Index> {
            auto [m, n] = cantor_unpair(k);
            return cantor_pair(m + 1, n);
          }};
}

SparseVec apply_basic(const BasicOperator& op, const SparseVec& v) {
  SparseVec out;
  for (const auto& [s, c] : v.entries()) {
    auto t = op.phi(s);
    if (!t) fail(ErrorCode::IndexOutOfDomain, op.name + " is undefined at basis index " + std::to_string(s));
    out.add(*t, c);
  }
  return out;
}

// ------------------------------------------------------------ target lifting

RationalTarget make_target(Matrix f) {
  if (f.rows() != f.cols() || f.rows() == 0) fail(ErrorCode::MalformedInput, "target must be a nonempty square matrix");
  const Rational n = operator_norm1(f);
  if (n > 1) fail(ErrorCode::NotNonExpansive, "target has l1 operator norm " + format_rational(n));
  return RationalTarget{std::move(f)};
}

TargetLift lift_target_operator(const RationalTarget& target, const std::vector<Vector>& seed, std::size_t depth) {
  const std::size_t d = target.dimension();
  if (seed.empty()) fail(ErrorCode::EmptyCarrier, "seed must be nonempty");
  for (const auto& s : seed) {
    if (s.size() != d) fail(ErrorCode::MalformedInput, "seed point has the wrong dimension");
    if (norm1(s) > 1) fail(ErrorCode::NotInUnitBall, "seed point " + format_vector(s) + " has norm above 1");
  }

  TargetLift out;
  std::map<Vector, std::size_t> where;
  auto insert = [&](const Vector& v) {
    auto [it, fresh] = where.emplace(v, out.points.size());
    if (fresh) out.points.push_back(v);
    return fresh;
  };
  for (const auto& s : seed) insert(s);
  std::size_t frontier = 0;
  for (std::size_t round = 0; round < depth && frontier < out.points.size(); ++round) {
    const std::size_t end = out.points.size();
    for (std::size_t i = frontier; i < end; ++i) insert(target.f.apply(out.points[i]));
    frontier = end;
  }

  out.phi.assign(out.points.size(), kNone);
  for (std::size_t s = 0; s < out.points.size(); ++s) {
    auto it = where.find(target.f.apply(out.points[s]));
    if (it == where.end()) {
      out.truncated = true;
      ++out.skipped;
      continue;
    }
    out.phi[s] = it->second;
  }

  out.q = Matrix::from_columns(d, out.points);
  for (std::size_t s = 0; s < out.points.size(); ++s) {
    if (out.phi[s] == kNone) continue;
    ++out.checks;
    const Vector lhs = target.f.apply(out.q.column(s));
    const Vector rhs = out.q.column(out.phi[s]);
    if (lhs != rhs) ++out.failures;
  }
  out.rank = rank(out.q);
  out.surjective = out.rank == d;
  out.non_expansive = std::all_of(out.points.begin(), out.points.end(), [](const Vector& v) { return norm1(v) <= 1; });
  return out;
}

// ------------------------------------------------------------ functor squares

namespace {

std::optional<SparseVec> try_apply(const BasicOperator& op, const SparseVec& v) {
  try {
    return apply_basic(op, v);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::IndexOutOfDomain) throw;
    return std::nullopt;
  }
}

}  // namespace

SquareCertificate functor_square(const BasicOperator& p, const BasicOperator& g, const BasicOperator& f,
                                 const std::vector<Index>& t_points, const std::vector<Index>& s_points,
                                 std::uint64_t seed, std::size_t samples) {
  SquareCertificate c;
  for (Index t : t_points) {
    auto pt = p.phi(t);
    if (!pt) fail(ErrorCode::PreconditionViolated, p.name + " is undefined at " + std::to_string(t));
    auto gt = g.phi(t);
    auto lhs = gt ? p.phi(*gt) : std::nullopt;
    auto rhs = f.phi(*pt);
    if (lhs && rhs && *lhs != *rhs)
      fail(ErrorCode::SquareDoesNotCommuteAtSetLevel,
           "p(g(" + std::to_string(t) + ")) = " + std::to_string(*lhs) + " but f(p(" + std::to_string(t) +
               ")) = " + std::to_string(*rhs));
  }
  for (Index s : s_points) {
    for (Index t : t_points)
      if (p.phi(t) == s) {
        c.section.emplace(s, t);
        break;
      }
    if (!c.section.count(s)) fail(ErrorCode::PreconditionViolated, "p misses " + std::to_string(s));
  }

  auto both_sides = [&](const SparseVec& v) -> std::optional<std::pair<SparseVec, SparseVec>> {
    auto gv = try_apply(g, v);
    auto lhs = gv ? try_apply(p, *gv) : std::nullopt;
    auto pv = try_apply(p, v);
    auto rhs = pv ? try_apply(f, *pv) : std::nullopt;
    if (!lhs || !rhs) return std::nullopt;
    return std::pair{*lhs, *rhs};
  };
  auto note = [&](bool ok, const std::string& what) {
    if (!ok && c.failures++ == 0) c.first_failure = what;
  };
  auto norm_note = [&](bool ok, const std::string& what) {
    ++c.norm_checks;
    if (!ok && c.norm_failures++ == 0 && c.first_failure.empty()) c.first_failure = what;
  };

  std::vector<Index> good;
  for (Index t : t_points) {
    const SparseVec e = SparseVec::basis(t);
    norm_note(apply_basic(p, e).norm1() == 1, "||p e_" + std::to_string(t) + "|| != 1");
    auto sides = both_sides(e);
    if (!sides) {
      ++c.skipped;
      continue;
    }
    ++c.basis_checks;
    note(sides->first == sides->second, "square fails on e_" + std::to_string(t));
    good.push_back(t);
  }

  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < samples && !good.empty(); ++k) {
    const std::size_t width = 1 + rng() % std::min<std::size_t>(4, good.size());
    SparseVec v, absv;
    for (std::size_t j = 0; j < width; ++j) {
      const Index t = good[rng() % good.size()];
      const Rational coeff(static_cast<long long>(rng() % 9) - 4, static_cast<long long>(1 + rng() % 4));
      v.add(t, coeff);
      absv.add(t, abs(coeff));
    }
    auto sides = both_sides(v);
    ++c.combination_checks;
    note(sides && sides->first == sides->second, "square fails on " + format_sparse(v));
    norm_note(apply_basic(p, v).norm1() <= v.norm1(), "p expands " + format_sparse(v));
    norm_note(apply_basic(p, absv).norm1() == absv.norm1(), "p shrinks nonnegative " + format_sparse(absv));
  }

  c.section_ok = true;
  for (const auto& [s, t] : c.section) c.section_ok &= apply_basic(p, SparseVec::basis(t)) == SparseVec::basis(s);
  return c;
}

// ------------------------------------------------------------ nu pipeline

NuOperator universal_operator_nu(std::size_t depth, std::size_t columns) {
  NuOperator out{BasicOperator::nu(), {}};
  for (std::size_t m = 0; m < depth; ++m)
    for (std::size_t n = 0; n < columns; ++n) out.basis.push_back(cantor_pair(m, n));
  return out;
}

NuPipeline lift_through_nu(const RationalTarget& target, const std::vector<Vector>& seed, std::size_t closure_depth,
                           std::size_t nu_depth, std::uint64_t rng_seed) {
  NuPipeline out;
  out.target_lift = lift_target_operator(target, seed, closure_depth);
  const auto& tl = out.target_lift;
  std::vector<std::string> labels;
  for (const auto& v : tl.points) labels.push_back(format_vector(v));
  out.set_lift.emplace(lift_finite_map_to_nu(make_self_map(std::move(labels), tl.phi), nu_depth));

  const std::size_t cols = tl.points.size();
  const auto q = out.set_lift->q;
  BasicOperator p{"q", [q, nu_depth, cols](Index k) -> std::optional<Index> {
                    auto [m, n] = cantor_unpair(k);
                    if (m >= nu_depth || n >= cols || q[m][n] == kNone) return std::nullopt;
                    return q[m][n];
                  }};
  const NuOperator nu = universal_operator_nu(nu_depth, cols);
  out.basis = nu.basis;
  std::vector<Index> defined, s_points;
  for (Index b : out.basis)
    if (p.phi(b)) defined.push_back(b);
  for (std::size_t s = 0; s < cols; ++s) s_points.push_back(s);
  out.square = functor_square(p, nu.op, BasicOperator::from_table("phi", tl.phi), defined, s_points, rng_seed);

  std::vector<Vector> columns;
  out.projection_norm = 0;
  out.composite_norm = 0;
  for (Index b : out.basis) {
    auto s = p.phi(b);
    if (!s) {
      out.composite.emplace_back();
      continue;
    }
    out.composite.emplace_back(tl.points[*s]);
    columns.push_back(tl.points[*s]);
    out.projection_norm = std::max(out.projection_norm, apply_basic(p, SparseVec::basis(b)).norm1());
    out.composite_norm = std::max(out.composite_norm, norm1(tl.points[*s]));
  }
  for (std::size_t i = 0; i < out.basis.size(); ++i) {
    const auto& here = out.composite[i];
    auto shifted = p.phi(*nu.op.phi(out.basis[i]));
    if (!here || !shifted) {
      ++out.skipped;
      continue;
    }
    ++out.checks;
    if (target.f.apply(*here) != tl.points[*shifted]) ++out.failures;
  }
  out.rank = columns.empty() ? 0 : rank(Matrix::from_columns(target.dimension(), columns));
  out.surjective = out.rank == target.dimension();
  return out;
}

}  // namespace unifree
