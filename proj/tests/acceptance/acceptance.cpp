// One line per acceptance criterion; exit status 0 iff every line passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "unifree/ellone.hpp"
#include "unifree/error.hpp"
#include "unifree/freecat.hpp"
#include "unifree/funcgraph.hpp"

using namespace unifree;

namespace {

struct Result {
  bool passed = true;
  std::string detail;
};

bool report(int number, const char* title, double limit, const std::function<Result()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Result o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = limit <= 0 || secs < limit;
  const bool ok = o.passed && in_time;
  std::printf("criterion %d: %s  %s: %s (%.2f s", number, ok ? "PASS" : "FAIL", title, o.detail.c_str(), secs);
  if (limit > 0) std::printf(", limit %.0f s", limit);
  std::printf(")\n");
  std::fflush(stdout);
  return ok;
}

std::vector<std::vector<std::size_t>> total_maps(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> f(n, 0);
  while (true) {
    out.push_back(f);
    std::size_t i = 0;
    while (i < n && ++f[i] == n) f[i++] = 0;
    if (i == n) return out;
  }
}

std::vector<PartialSelfMap> targets_up_to(std::size_t n) {
  std::vector<PartialSelfMap> out;
  for (std::size_t k = 1; k <= n; ++k)
    for (auto& f : total_maps(k)) out.push_back(make_self_map(std::move(f)));
  return out;
}

using T = ComponentTemplate;

Family omega(T t) { return Family{std::move(t), std::nullopt}; }

struct Fixture {
  std::string name;
  SelfMapDescription d;
};

std::vector<Fixture> fixtures() {
  const T chain = T::chain();
  const T loop = T::loop();
  const T zc = T::z_chain();
  const T zc_trees = T::z_chain({{{HangingTree{{-1}}}, {HangingTree{{-1, 0}}}}, {{}}});
  const T wide = T::natural({{}, {2}});
  const T three = T::natural({{}, {3}});
  const T grow = T::natural({{4, 1}, {2}});
  const T mixed = T::natural({{}, {1, 2}}, Periodic<std::vector<std::size_t>>{{}, {{0}, {0, 0}}});
  const T levels = T::natural({{3, 2}, {1}});
  return {
      {"nu", nu_description()},
      {"single chain", {{chain}, {}}},
      {"single natural", {{levels}, {}}},
      {"two chains", {{chain, chain}, {}}},
      {"omega loops", {{}, {omega(loop)}}},
      {"omega loops + nu", {{}, {omega(loop), omega(chain)}}},
      {"loop + nu", {{loop}, {omega(chain)}}},
      {"z-chain + nu", {{zc}, {omega(chain)}}},
      {"omega z-chains", {{}, {omega(zc)}}},
      {"omega z-chains + nu", {{}, {omega(zc), omega(chain)}}},
      {"z-chain with trees + nu", {{zc_trees}, {omega(chain)}}},
      {"omega wide", {{}, {omega(wide)}}},
      {"chain + omega width 3", {{chain}, {omega(three)}}},
      {"two chains + omega growing", {{}, {Family{chain, 2}, omega(grow)}}},
      {"omega alternating", {{}, {omega(mixed)}}},
      {"2-cycle + nu", {{T::finite_core({1, 0})}, {omega(chain)}}},
      {"3-cycle with tail + nu", {{T::finite_core({1, 2, 0, 0})}, {omega(chain)}}},
      {"2-cycle alone", {{T::finite_core({1, 0})}, {}}},
      {"omega chains + omega loops", {{}, {omega(chain), omega(loop)}}},
      {"nu + three z-chains", {{}, {omega(chain), Family{zc, 3}}}},
      {"omega wide + z-chain", {{zc}, {omega(wide)}}},
      {"3-cycle + omega z-chains", {{T::finite_core({1, 2, 0})}, {omega(zc)}}},
      {"single z-chain", {{zc}, {}}},
      {"chain + z-chain", {{chain, zc}, {}}},
  };
}

bool has_omega_natural(const SelfMapDescription& d) {
  for (const auto& f : d.families)
    if (!f.multiplicity && f.component.kind() == TemplateKind::Natural) return true;
  return false;
}

bool has_non_natural(const SelfMapDescription& d) {
  for (const auto& c : d.components)
    if (c.kind() != TemplateKind::Natural) return true;
  for (const auto& f : d.families)
    if (f.component.kind() != TemplateKind::Natural) return true;
  return false;
}

// ------------------------------------------------------------ 1

Result oracle_agreement() {
  const auto fx = fixtures();
  const auto targets = targets_up_to(3);
  std::size_t disagreements = 0, universal = 0, refuted = 0, certified = 0, inconclusive = 0;
  std::string first;
  for (const auto& [name, d] : fx) {
    const UniversalityVerdict v = decide_universality(d);
    const Truncation t = truncate(d, 6, 3);
    bool any_no = false;
    bool ok = true;
    for (const auto& f : targets) {
      const BruteForceResult b = brute_force_lifting_exists(t, f);
      if (b.outcome == unifree::Outcome::Inconclusive) ++inconclusive;
      if (b.outcome != unifree::Outcome::No) continue;
      any_no = true;
      if (v.is_universal) ok = false;
    }
    if (v.is_universal) {
      ++universal;
    } else {
      const bool cert = v.counterexample &&
                        (v.counterexample->reason == "has_cycle" || v.counterexample->reason == "unbounded_below");
      if (any_no) ++refuted;
      if (cert) ++certified;
      ok = ok && (any_no || cert);
    }
    if (!ok && disagreements++ == 0) first = name;
  }
  Result o;
  o.passed = disagreements == 0 && fx.size() >= 20;
  o.detail = std::to_string(fx.size()) + " descriptions x " + std::to_string(targets.size()) + " targets at depth 6; " +
             std::to_string(universal) + " universal never refuted, non-universal: " + std::to_string(refuted) +
             " refuted by a target, " + std::to_string(certified) + " with a cycle/z-chain certificate; " +
             std::to_string(inconclusive) + " inconclusive searches; " + std::to_string(disagreements) +
             " disagreements" + (first.empty() ? "" : " (first: " + first + ")");
  return o;
}

// ------------------------------------------------------------ 2

Result nu_identity() {
  std::size_t maps = 0, pairs = 0, failures = 0;
  for (const auto& f : targets_up_to(4))
    for (std::size_t depth = 1; depth <= 8; ++depth) {
      ++maps;
      const NuLift l = lift_finite_map_to_nu(f, depth);
      for (std::size_t n = 0; n < f.size(); ++n) {
        std::size_t x = n;
        for (std::size_t m = 0; m < depth; ++m) {
          ++pairs;
          if (l.q[m][n] != x) ++failures;
          if (m + 1 < depth && l.q[m + 1][n] != f.next[l.q[m][n]]) ++failures;
          x = f.next[x];
        }
      }
      if (!l.lifting.certificate.passed() || !l.lifting.surjective_on_bound) ++failures;
    }
  return {failures == 0, std::to_string(maps) + " (map, depth) cases, " + std::to_string(pairs) +
                             " evaluated pairs, " + std::to_string(failures) + " mismatches"};
}

// ------------------------------------------------------------ 3-5 shared monoid set

struct NamedWindow {
  std::string name;
  WindowPtr window;
};

std::vector<NamedWindow> monoid_windows() {
  std::vector<NamedWindow> out;
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto all = small_monoids(n);
    for (std::size_t i = 0; i < all.size(); ++i)
      out.push_back({"order " + std::to_string(n) + " #" + std::to_string(i), make_window(all[i], {})});
  }
  out.push_back({"N", make_window(Monoid::nat(), {5, 4})});
  out.push_back({"Z2", make_window(Monoid::cyclic(2), {})});
  out.push_back({"Z", make_window(Monoid::integers(), {5, 4})});
  out.push_back({"free(1) up to length 4", make_window(Monoid::free_monoid(1), {64, 4})});
  return out;
}

template <class Cat>
void tally(const std::vector<LawReport>& laws, const std::string& where, std::size_t& checks, std::size_t& failures,
           std::size_t& empty, std::string& first) {
  for (const auto& l : laws) {
    checks += l.checks;
    if (l.checks == 0) ++empty;
    if (!l.passed() && failures++ == 0) first = where + " " + l.law + ": " + l.first_failure;
  }
}

Result adjunction_laws() {
  std::size_t checks = 0, failures = 0, empty = 0, runs = 0, extension_counts = 0;
  std::string first;
  auto run = [&]<class Cat>(const Cat& cat, std::size_t max_x, const std::string& where) {
    ++runs;
    tally<Cat>(check_laws(cat, max_x), where, checks, failures, empty, first);
  };
  run(EnsCategory(NiceMode::Surjective, 4), 4, "ens/surjective");
  run(EnsCategory(NiceMode::RightInvertible, 4), 4, "ens/right_invertible");
  run(MonounaryCategory(4, NiceMode::Surjective), 3, "monounary/surjective");
  run(MonounaryCategory(4, NiceMode::RightInvertible), 3, "monounary/right_invertible");
  run(FinVecQCategory(NiceMode::Surjective, 3), 3, "finvecq/surjective");
  run(FinVecQCategory(NiceMode::RightInvertible, 3), 3, "finvecq/right_invertible");

  const EnsCategory ens(NiceMode::Surjective, 4);
  const MonounaryCategory mono(3);
  const FinVecQCategory lin(NiceMode::Surjective, 2);
  std::size_t mf_empty = 0;
  const auto windows = monoid_windows();
  for (const auto& [name, w] : windows) {
    tally<EnsCategory>(check_free_maction_laws(ens, w, sample_actions(ens, w, 3), 2), "ens " + name, checks, failures,
                       mf_empty, first);
    tally<MonounaryCategory>(check_free_maction_laws(mono, w, sample_actions(mono, w, 2), 1), "monounary " + name,
                             checks, failures, mf_empty, first);
    tally<FinVecQCategory>(check_free_maction_laws(lin, w, sample_actions(lin, w, 2), 1), "finvecq " + name, checks,
                           failures, mf_empty, first);
    runs += 3;
    if (!w->closed()) continue;
    // independent uniqueness: brute-force count of equivariant extensions
    const auto s = make_range_carrier(1);
    for (std::size_t k = 1; k <= 2; ++k)
      for (const auto& psi : all_actions(w, make_range_carrier(k)))
        for (const auto& f : all_maps(s, psi.carrier())) {
          ++extension_counts;
          if (count_extensions(psi, f) != 1 && failures++ == 0) first = "extension count over " + name;
        }
  }
  Result o;
  o.passed = failures == 0 && empty == 0;
  o.detail = std::to_string(runs) + " law runs over 3 instances, " + std::to_string(windows.size()) + " monoids; " + std::to_string(checks) +
             " checks, " + std::to_string(extension_counts) + " extension counts, " + std::to_string(failures) +
             " failures, " + std::to_string(empty) + " vacuous category laws" + (first.empty() ? "" : " (first: " + first + ")");
  return o;
}

// ------------------------------------------------------------ 4

Result zeta_lifting() {
  std::size_t actions = 0, squares = 0, bad = 0;
  std::string first;
  for (const auto& [name, w] : monoid_windows())
    for (std::size_t k = 1; k <= 4; ++k)
      for (const auto& psi : all_actions(w, make_range_carrier(k))) {
        ++actions;
        const Lifting l = lift_action_to_zeta(psi);
        squares += l.certificate.squares.size();
        if ((!l.certificate.passed() || !l.surjective_on_bound) && bad++ == 0) first = name;
      }
  return {bad == 0, std::to_string(actions) + " actions on carriers of at most 4 points, " + std::to_string(squares) +
                        " squares, " + std::to_string(bad) + " failing" + (first.empty() ? "" : " (first: " + first + ")")};
}

// ------------------------------------------------------------ 5

Result free_maction_coincidence() {
  const EnsCategory ens;
  std::size_t cases = 0, bad = 0;
  for (const auto& [name, w] : monoid_windows())
    for (std::size_t k = 1; k <= 4; ++k) {
      const auto s = make_range_carrier(k);
      const auto free = free_maction_functor(ens, w, s);
      const auto z = zeta_of_set(w, s);
      ++cases;
      bool ok = *free.action.object == *z.action.carrier();
      for (std::size_t m = 0; ok && m < w->size(); ++m) ok = free.action.act[m].image == z.action.table()[m];
      for (std::size_t i = 0; ok && i < k; ++i) ok = free.unit[i] == z.eta(i);
      if (!ok) ++bad;
    }

  // Monounary over N with one generator point: the generator shifts columns,
  // the operation climbs them; together the nu rectangle.
  const std::size_t levels = 4;
  const MonounaryCategory mono(levels);
  const auto w = make_window(Monoid::nat(), {5, 4});
  const auto free = free_maction_functor(mono, w, make_range_carrier(1));
  const std::size_t cols = free.zeta.action.carrier()->size();
  const PartialSelfMap rect = nu_rectangle(cols, levels);
  const auto one = *w->find(Element::scalar(1));
  bool columns = free.action.act[one].image == rect.next;
  for (std::size_t a = 0; columns && a < cols; ++a)
    for (std::size_t n = 0; n < levels; ++n)
      columns = columns && free.action.object.next[a * levels + n] == (n + 1 < levels ? a * levels + n + 1 : kNone);
  return {bad == 0 && columns, std::to_string(cases) + " Ens cases agree with zeta: " + std::to_string(cases - bad) +
                                   "; monounary N on one point is the " + std::to_string(cols) + "x" +
                                   std::to_string(levels) + " nu rectangle: " + (columns ? "yes" : "no")};
}

// ------------------------------------------------------------ 6

Matrix mat(std::size_t n, std::vector<Rational> entries) {
  Matrix m(n, n);
  for (std::size_t k = 0; k < entries.size(); ++k) m.at(k / n, k % n) = entries[k];
  return m;
}

Result ellone_pipeline() {
  using R = Rational;
  const std::vector<Matrix> targets = {
      Matrix::identity(1),
      mat(1, {R(1, 2)}),
      mat(1, {R(-1)}),
      mat(2, {0, 1, 1, 0}),
      mat(2, {0, 1, 0, 0}),
      mat(2, {0, -1, 1, 0}),
      mat(2, {R(1, 2), R(1, 2), R(1, 2), R(-1, 2)}),
      mat(2, {R(1, 3), 0, R(2, 3), 1}),
      mat(3, {0, 0, 1, 1, 0, 0, 0, 1, 0}),
      mat(3, {1, 0, 0, 0, R(-1, 2), 0, 0, 0, R(1, 4)}),
      mat(3, {R(1, 3), R(1, 3), R(1, 3), R(1, 3), R(1, 3), R(1, 3), R(1, 3), R(1, 3), R(1, 3)}),
      mat(3, {0, 0, 0, 1, 0, 0, 0, 1, 0}),
  };
  std::size_t certified = 0, checks = 0;
  for (const auto& m : targets) {
    const RationalTarget t = make_target(m);
    std::vector<Vector> seed;
    for (std::size_t i = 0; i < t.dimension(); ++i) seed.push_back(unit_vector(t.dimension(), i));
    const NuPipeline p = lift_through_nu(t, seed, 6, 6);
    checks += p.checks + p.target_lift.checks + p.square.basis_checks + p.square.combination_checks;
    if (p.passed() && p.projection_norm == 1) ++certified;
  }

  bool rejected = false;
  const auto p = BasicOperator::from_table("p", {0, 1, 1});
  const auto g = BasicOperator::from_table("g", {1, 2, 0});
  const auto f = BasicOperator::from_table("f", {1, 0});
  try {
    functor_square(p, g, f, {0, 1, 2}, {0, 1});
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::SquareDoesNotCommuteAtSetLevel;
  }
  return {certified == targets.size() && targets.size() >= 10 && rejected,
          std::to_string(certified) + "/" + std::to_string(targets.size()) + " matrices certified (" +
              std::to_string(checks) + " exact checks); broken square rejected: " + (rejected ? "yes" : "no")};
}

// ------------------------------------------------------------ 7

Result fixed_point_lifting() {
  std::size_t lifts = 0, refusals = 0, bad = 0, descriptions = 0;
  std::string first;
  const auto targets = targets_up_to(3);
  for (const auto& [name, d] : fixtures()) {
    if (!has_omega_natural(d)) continue;
    ++descriptions;
    for (const auto& f : targets) {
      if (!f.fixed_points().empty()) {
        ++lifts;
        const DescriptionLift l = lift_with_fixed_point(d, f, std::nullopt, 6, 3);
        if ((!l.lifting.certificate.passed() || !l.lifting.surjective_on_bound) && bad++ == 0) first = name;
      } else if (has_non_natural(d)) {
        ++refusals;
        try {
          lift_with_fixed_point(d, f, std::nullopt, 6, 3);
          if (bad++ == 0) first = name + " lifted a map without fixed points";
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NoFixedPoint && bad++ == 0) first = name + ": " + e.what();
        }
      }
    }
  }
  return {bad == 0, std::to_string(descriptions) + " descriptions with omega natural components; " +
                        std::to_string(lifts) + " certified lifts, " + std::to_string(refusals) +
                        " NoFixedPoint refusals, " + std::to_string(bad) + " failures" +
                        (first.empty() ? "" : " (first: " + first + ")")};
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, "universality vs exhaustive search", 60, oracle_agreement);
  ok &= report(2, "nu lifting identity", 5, nu_identity);
  ok &= report(3, "adjunction and nice-epi laws", 120, adjunction_laws);
  ok &= report(4, "zeta lifting", 0, zeta_lifting);
  ok &= report(5, "free M-action coincidence", 0, free_maction_coincidence);
  ok &= report(6, "l1 pipeline", 30, ellone_pipeline);
  ok &= report(7, "fixed-point lifting", 0, fixed_point_lifting);
  return ok ? 0 : 1;
}
