#include <chrono>

#include "doctest.h"
#include "unifree/error.hpp"
#include "unifree/freecat.hpp"

using namespace unifree;

namespace {

Vector vec(std::initializer_list<Rational> xs) { return Vector(xs); }

template <class Cat>
void require_all_pass(const std::vector<LawReport>& reports) {
  for (const auto& r : reports) {
    INFO(r.law << ": " << r.first_failure);
    CHECK(r.checks > 0);
    CHECK(r.passed());
  }
}

Monoid z2() { return Monoid::cyclic(2); }

ObjectAction<FinVecQCategory> swap_on_q2(const FinVecQCategory& cat) {
  auto w = make_window(z2(), {});
  Matrix swap(2, 2);
  swap.at(0, 1) = 1;
  swap.at(1, 0) = 1;
  return ObjectAction<FinVecQCategory>{w, 2, {cat.identity(2), make_linear_map(swap)}};
}

}  // namespace

TEST_CASE("extend examples") {
  EnsCategory ens;
  auto x = make_finite_carrier({"a", "b"});
  auto a = make_finite_carrier({"p", "q", "r"});
  auto g = ens.extend(x, a, {2, 0});
  CHECK(g.image == std::vector<std::size_t>{2, 0});

  MonounaryCategory mono(5);
  auto s = make_finite_carrier({"s"});
  auto loop = make_self_map({"x"}, {0});
  auto fbar = mono.extend(s, loop, {0});
  for (std::size_t n = 0; n < 5; ++n) CHECK(fbar.image[n] == 0);

  FinVecQCategory lin;
  auto m = lin.extend(x, 1, {vec({1}), vec({-1})});
  CHECK(*lin.apply(m, vec({3, 2})) == vec({1}));
  CHECK(*lin.apply(m, vec({Rational(1, 2), Rational(-1, 4)})) == vec({Rational(3, 4)}));

  CHECK_THROWS_AS(lin.extend(x, 1, {vec({2}), vec({0})}), Error);
}

TEST_CASE("free monounary algebra is X x N with the shift") {
  MonounaryCategory mono(3);
  auto f = mono.free_object(make_finite_carrier({"s", "t"}));
  CHECK(f.carrier->label(0) == "<s,0>");
  CHECK(f.carrier->label(4) == "<t,1>");
  CHECK(f.next[0] == 1);
  CHECK(f.next[2] == kNone);
  CHECK(mono.unit(make_finite_carrier({"s", "t"})) == std::vector<std::size_t>{0, 3});
}

TEST_CASE("composition laws on the examples") {
  MonounaryCategory mono(6);
  auto x = make_finite_carrier({"s"});
  auto y = make_finite_carrier({"t", "u"});
  auto two_cycle = make_self_map({1, 0});
  SetMap f{x, y, {0}};
  std::vector<std::size_t> g{0, 1};
  auto lhs = mono.extend(x, two_cycle, {g[f.image[0]]});
  auto rhs = mono.compose(mono.extend(y, two_cycle, g), mono.free_map(f));
  CHECK(lhs.image == rhs.image);

  FinVecQCategory lin;
  Matrix proj(1, 2);
  proj.at(0, 0) = 1;
  auto p = make_linear_map(proj);
  auto x2 = make_finite_carrier({"a", "b"});
  std::vector<Vector> fv{vec({1, 0}), vec({Rational(1, 2), Rational(-1, 2)})};
  std::vector<Vector> pf{*lin.apply(p, fv[0]), *lin.apply(p, fv[1])};
  CHECK(lin.key(lin.extend(x2, 1, pf)) == lin.key(lin.compose(p, lin.extend(x2, 2, fv))));
}

TEST_CASE("generates examples") {
  EnsCategory ens;
  auto a = make_range_carrier(3);
  CHECK(generates(ens, make_range_carrier(3), a, {2, 0, 1}));
  CHECK_FALSE(generates(ens, make_range_carrier(2), a, {2, 0}));

  FinVecQCategory lin;
  CHECK_FALSE(generates(lin, make_finite_carrier({"a"}), 2, {vec({1, 0})}));
  CHECK(generates(lin, make_finite_carrier({"a", "b"}), 2, {vec({1, 0}), vec({0, -1})}));

  MonounaryCategory mono(4);
  auto truncated_n = make_self_map({1, 2, 3, kNone});
  CHECK(generates(mono, make_finite_carrier({"s"}), truncated_n, {0}));
  CHECK_FALSE(generates(mono, make_finite_carrier({"s"}), truncated_n, {1}));
}

TEST_CASE("enlarge_generating_set examples") {
  FinVecQCategory lin;
  auto x = make_finite_carrier({"a", "b"});
  std::vector<Vector> basis{vec({1, 0}), vec({0, 1})};
  CHECK(enlarge_generating_set(lin, x, 2, basis, basis).passed());
  auto more = basis;
  more.push_back(vec({Rational(1, 2), Rational(1, 2)}));
  CHECK(enlarge_generating_set(lin, x, 2, basis, more).passed());

  EnsCategory ens;
  auto a = make_range_carrier(3);
  CHECK(enlarge_generating_set(ens, make_range_carrier(3), a, {0, 1, 2}, {0, 1, 2}).passed());
  CHECK_THROWS_AS(enlarge_generating_set(ens, make_range_carrier(1), a, {0}, {0, 1}), Error);
  CHECK_THROWS_AS(enlarge_generating_set(lin, x, 2, basis, {basis[0]}), Error);
}

TEST_CASE("Ens laws pass in both nice modes") {
  require_all_pass<EnsCategory>(check_laws(EnsCategory(NiceMode::Surjective, 4), 2));
  require_all_pass<EnsCategory>(check_laws(EnsCategory(NiceMode::RightInvertible, 3), 2));
}

TEST_CASE("Monounary laws pass in both nice modes") {
  require_all_pass<MonounaryCategory>(check_laws(MonounaryCategory(4, NiceMode::Surjective), 2));
  require_all_pass<MonounaryCategory>(check_laws(MonounaryCategory(3, NiceMode::RightInvertible), 1));
}

TEST_CASE("FinVecQ laws pass") {
  auto start = std::chrono::steady_clock::now();
  require_all_pass<FinVecQCategory>(check_laws(FinVecQCategory(NiceMode::Surjective, 3), 2));
  MESSAGE("finvecq laws: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s");
  require_all_pass<FinVecQCategory>(check_laws(FinVecQCategory(NiceMode::RightInvertible, 2), 1));
}

TEST_CASE("the minimal nice class is smaller than surjections for monounary algebras") {
  // a 2-cycle onto a loop is onto but has no homomorphic section
  MonounaryCategory surj(3, NiceMode::Surjective), minimal(3, NiceMode::RightInvertible);
  auto cyc = make_self_map({1, 0});
  auto loop = make_self_map({0});
  MonounaryMorphism g{cyc, loop, {0, 0}};
  CHECK(surj.is_nice(g));
  CHECK_FALSE(minimal.is_nice(g));
}

TEST_CASE("universal_action_on_free: Ens with N is nu") {
  EnsCategory ens;
  auto u = universal_action_on_free(ens, Monoid::nat(), make_range_carrier(3), {4, 1});
  const auto& c = *u.zeta.action.carrier();
  const auto one = *u.action.window->find(Element::scalar(1));
  for (std::size_t p = 0; p < c.size(); ++p) {
    const auto [a, s] = c.unpair(p);
    const auto img = ens.apply(u.action.act[one], p);
    const auto m = u.action.window->at(a).value();
    const auto target = u.action.window->find(Element::scalar(m + 1));
    if (!target) {
      CHECK_FALSE(img);
      continue;
    }
    REQUIRE(img);
    CHECK(*img == c.pair_index(*target, s));
  }
  CHECK(check_object_action(ens, u.action).passed());
}

TEST_CASE("universal_action_on_free: Z2 on one point is the swap matrix") {
  FinVecQCategory lin;
  auto u = universal_action_on_free(lin, z2(), make_finite_carrier({"s"}), {});
  REQUIRE(u.action.object == 2);
  const auto g = *u.action.window->find(Element::scalar(1));
  Matrix swap(2, 2);
  swap.at(0, 1) = 1;
  swap.at(1, 0) = 1;
  CHECK(u.action.act[g].matrix == swap);
  CHECK(check_object_action(lin, u.action).passed());

  auto triv = universal_action_on_free(lin, Monoid::trivial(), make_finite_carrier({"a", "b"}), {});
  CHECK(triv.action.act.size() == 1);
  CHECK(triv.action.act[0].matrix == Matrix::identity(2));
}

TEST_CASE("lift_object_action: Z2 swap on a two-point set") {
  EnsCategory ens;
  auto w = make_window(z2(), {});
  auto c = make_finite_carrier({"a", "b"});
  SetMAction psi(w, c, {{0, 1}, {1, 0}});
  auto phi = free_action(ens, psi);
  auto lift = lift_object_action(ens, phi, {0, 1});
  CHECK(lift.certificate.passed());
  CHECK(lift.certificate.checks > 0);
  CHECK(lift.nice);
  CHECK(lift.i_bar_certificate.passed());
  CHECK(lift.enlarged.passed());
  auto direct = lift_action_to_zeta(psi);
  CHECK(lift.composite.image == direct.map.image);
}

TEST_CASE("lift_object_action: trivial monoid reduces to ibar") {
  EnsCategory ens;
  auto w = make_window(Monoid::trivial(), {});
  auto c = make_range_carrier(3);
  auto phi = free_action(ens, SetMAction(w, c, {{0, 1, 2}}));
  auto lift = lift_object_action(ens, phi, {2, 0, 1});
  CHECK(lift.composite.image == lift.i_bar.image);
  CHECK(lift.nice);
  CHECK_THROWS_AS(lift_object_action(ens, phi, {0, 1}), Error);
}

TEST_CASE("lift_object_action: Z2 swap on Q2 from the unit basis") {
  FinVecQCategory lin;
  auto phi = swap_on_q2(lin);
  auto lift = lift_object_action(lin, phi, {vec({1, 0}), vec({0, 1})});
  CHECK(lift.nice);
  CHECK(lift.certificate.passed());
  CHECK(lift.certificate.checks > 0);
  CHECK(lift.composite.rows() == 2);
  CHECK(lift.composite.cols() == 4);
  CHECK(rank(lift.composite.matrix) == 2);
  try {
    lift_object_action(lin, phi, {vec({1, 0})});
    FAIL("expected DoesNotGenerate");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DoesNotGenerate);
  }
}

TEST_CASE("lift_object_action: N acting on Q1 by a contraction never closes") {
  FinVecQCategory lin;
  auto w = make_window(Monoid::nat(), {3, 1});
  Matrix half(1, 1);
  half.at(0, 0) = Rational(1, 2);
  auto h = make_linear_map(half);
  ObjectAction<FinVecQCategory> phi{w, 1, {lin.identity(1), h, lin.compose(h, h)}};
  CHECK(check_object_action(lin, phi).passed());
  try {
    lift_object_action(lin, phi, {vec({1})}, 50);
    FAIL("expected BoundExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BoundExceeded);
  }
}

TEST_CASE("lift_object_action: N acting on a finite algebra through a nonclosed window") {
  MonounaryCategory mono(3);
  auto w = make_window(Monoid::nat(), {3, 1});
  auto alg = make_self_map({1, 2, 0});
  // N acts by the operation itself
  MonounaryMorphism id{alg, alg, {0, 1, 2}}, op{alg, alg, {1, 2, 0}}, op2{alg, alg, {2, 0, 1}};
  ObjectAction<MonounaryCategory> phi{w, alg, {id, op, op2}};
  auto lift = lift_object_action(mono, phi, {0});
  CHECK(lift.closure.size() == 3);
  CHECK(lift.certificate.passed());
  CHECK(lift.nice);
}

TEST_CASE("free_maction_functor: Ens coincides with zeta") {
  EnsCategory ens;
  auto s = make_range_carrier(2);
  auto free = free_maction_functor(ens, z2(), s, {});
  auto z = zeta_of_set(z2(), s, {});
  CHECK(*free.action.object == *z.action.carrier());
  for (std::size_t m = 0; m < z.action.window()->size(); ++m) CHECK(free.action.act[m].image == z.action.table()[m]);
  CHECK(free.unit == std::vector<std::size_t>{z.eta(0), z.eta(1)});
}

TEST_CASE("free_maction_functor: monounary Z2 on one point") {
  MonounaryCategory mono(3);
  auto free = free_maction_functor(mono, z2(), make_finite_carrier({"s"}), {});
  CHECK(free.action.object.size() == 2 * 3);
  const auto g = *free.action.window->find(Element::scalar(1));
  // g swaps the two columns <1,s> and <g,s> level by level
  for (std::size_t n = 0; n < 3; ++n) {
    CHECK(free.action.act[g].image[n] == 3 + n);
    CHECK(free.action.act[g].image[3 + n] == n);
  }
  CHECK(check_object_action(mono, free.action).passed());
}

TEST_CASE("free_maction_functor: FinVecQ Z2 extension") {
  FinVecQCategory lin;
  auto free = free_maction_functor(lin, z2(), make_finite_carrier({"s"}), {});
  auto phi = swap_on_q2(lin);
  const Vector v = vec({Rational(1, 3), Rational(-1, 2)});
  auto ext = extend_free(lin, free, phi, {v});
  CHECK(ext.unit_law);
  CHECK(ext.determined);
  CHECK(ext.certificate.passed());
  CHECK(*lin.apply(ext.f_bar, unit_vector(2, 0)) == v);
  CHECK(*lin.apply(ext.f_bar, unit_vector(2, 1)) == vec({Rational(-1, 2), Rational(1, 3)}));
}

TEST_CASE("free M-action laws for every instance over Z2 and N") {
  EnsCategory ens;
  MonounaryCategory mono(3);
  FinVecQCategory lin;
  for (const auto& m : {z2(), Monoid::nat()}) {
    auto w = make_window(m, {3, 2});
    require_all_pass<EnsCategory>(check_free_maction_laws(ens, w, sample_actions(ens, w, 2), 2));
    require_all_pass<MonounaryCategory>(check_free_maction_laws(mono, w, sample_actions(mono, w, 2), 2));
    require_all_pass<FinVecQCategory>(check_free_maction_laws(lin, w, sample_actions(lin, w, 2), 1));
  }
}

TEST_CASE("a non-equivariant map is rejected") {
  FinVecQCategory lin;
  auto phi = swap_on_q2(lin);
  auto free = free_maction_functor(lin, z2(), make_finite_carrier({"s"}), {});
  Matrix bad(2, 2);
  bad.at(0, 0) = 1;
  auto cert = certify_object_hom(lin, free.action, phi, make_linear_map(bad));
  CHECK_FALSE(cert.passed());
  CHECK_FALSE(cert.first_failure.empty());
}
