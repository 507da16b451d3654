#pragma once

// Generic algorithms over the concrete-category instances of freecat.hpp.

#include <map>
#include <set>

#include "unifree/error.hpp"

namespace unifree {

namespace detail {

template <class Cat>
using PointMap = std::vector<typename Cat::Point>;

// Every map from an x_size-point set into the instance's sample points of A.
template <class Cat>
std::vector<PointMap<Cat>> point_maps(const Cat& cat, std::size_t x_size, const typename Cat::Object& a) {
  const auto samples = cat.point_samples(a);
  std::vector<PointMap<Cat>> out;
  std::vector<std::size_t> idx(x_size, 0);
  while (true) {
    PointMap<Cat> f;
    for (std::size_t i : idx) f.push_back(samples[i]);
    out.push_back(std::move(f));
    std::size_t i = 0;
    while (i < x_size && ++idx[i] == samples.size()) idx[i++] = 0;
    if (i == x_size) break;
  }
  return out;
}

// Compares two morphisms with a common domain on its test points, where both
// are defined.
template <class Cat>
bool agree(const Cat& cat, const typename Cat::Morphism& g, const typename Cat::Morphism& h,
           const typename Cat::Object& dom) {
  for (const auto& p : cat.test_points(dom)) {
    auto a = cat.apply(g, p);
    auto b = cat.apply(h, p);
    if (a && b && *a != *b) return false;
  }
  return true;
}

template <class Cat>
CarrierPtr carrier_of_points(const Cat& cat, const typename Cat::Object& a, const PointMap<Cat>& points) {
  std::vector<std::string> labels;
  for (const auto& p : points) labels.push_back(cat.format_point(a, p));
  return make_finite_carrier(std::move(labels));
}

inline void record(LawReport& r, bool ok, const std::string& what) {
  ++r.checks;
  if (ok) return;
  if (r.failures++ == 0) r.first_failure = what;
}

}  // namespace detail

template <class Cat>
bool right_invertible(const Cat& cat, const typename Cat::Morphism& g) {
  const auto id = cat.key(cat.identity(cat.codomain(g)));
  for (const auto& h : cat.homs(cat.codomain(g), cat.domain(g)))
    if (cat.key(cat.compose(g, h)) == id) return true;
  return false;
}

template <class Cat>
bool generates(const Cat& cat, const CarrierPtr& x, const typename Cat::Object& a,
               const std::vector<typename Cat::Point>& f) {
  if (x->size() == 0) fail(ErrorCode::EmptyCarrier, "generating set must be nonempty");
  return cat.is_nice(cat.extend(x, a, f));
}

template <class Cat>
EnlargeReport enlarge_generating_set(const Cat& cat, const CarrierPtr& x, const typename Cat::Object& a,
                                     const std::vector<typename Cat::Point>& f,
                                     const std::vector<typename Cat::Point>& s) {
  EnlargeReport r;
  r.generates = generates(cat, x, a, f);
  if (!r.generates) fail(ErrorCode::PreconditionViolated, "the map does not generate the object");
  std::vector<std::size_t> f_s(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto it = std::find(s.begin(), s.end(), f[i]);
    if (it == s.end()) fail(ErrorCode::PreconditionViolated, "the enlarged set misses an image point");
    f_s[i] = static_cast<std::size_t>(it - s.begin());
  }
  const CarrierPtr sc = detail::carrier_of_points(cat, a, s);
  const auto e_bar = cat.extend(sc, a, s);
  const auto via = cat.compose(e_bar, cat.free_map(SetMap{x, sc, f_s}));
  r.factorization = cat.key(via) == cat.key(cat.extend(x, a, f));
  r.enlarged_nice = cat.is_nice(e_bar);
  return r;
}

template <class Cat>
std::optional<typename Cat::Morphism> act_on(const Cat& cat, const ObjectAction<Cat>& phi, const Element& e) {
  const auto& w = *phi.window;
  if (auto i = w.find(e)) return phi.act[*i];
  for (std::size_t a = 0; a < w.size(); ++a)
    for (std::size_t b = 0; b < w.size(); ++b)
      if (w.monoid().multiply(w.at(a), w.at(b)) == e) return cat.compose(phi.act[a], phi.act[b]);
  return std::nullopt;
}

template <class Cat>
ActionLawReport check_object_action(const Cat& cat, const ObjectAction<Cat>& phi) {
  ActionLawReport r;
  const auto& w = *phi.window;
  const auto id = w.find(w.monoid().identity());
  if (!id) {
    r.failure = "window lacks the identity";
    return r;
  }
  const auto points = cat.test_points(phi.object);
  for (const auto& p : points) {
    auto a = cat.apply(phi.act[*id], p);
    if (!a) {
      ++r.skipped;
      continue;
    }
    ++r.identity_checks;
    if (*a != p && r.failure.empty()) r.failure = "identity moves " + cat.format_point(phi.object, p);
  }
  for (std::size_t m0 = 0; m0 < w.size(); ++m0)
    for (std::size_t m1 = 0; m1 < w.size(); ++m1) {
      const std::size_t prod = w.product(m0, m1);
      if (prod == kNone) continue;
      for (const auto& p : points) {
        auto lhs = cat.apply(phi.act[prod], p);
        auto t = cat.apply(phi.act[m1], p);
        auto rhs = t ? cat.apply(phi.act[m0], *t) : std::nullopt;
        if (!lhs || !rhs) {
          ++r.skipped;
          continue;
        }
        ++r.product_checks;
        if (*lhs != *rhs && r.failure.empty())
          r.failure = "(" + w.label(m0) + " " + w.label(m1) + ") differs from " + w.label(m0) + " o " + w.label(m1) +
                      " at " + cat.format_point(phi.object, p);
      }
    }
  return r;
}

template <class Cat>
ObjectCertificate certify_object_hom(const Cat& cat, const ObjectAction<Cat>& source, const ObjectAction<Cat>& target,
                                     const typename Cat::Morphism& g) {
  ObjectCertificate c;
  const auto& w = *source.window;
  const auto points = cat.test_points(source.object);
  for (std::size_t m = 0; m < w.size(); ++m) {
    const auto tm = act_on(cat, target, w.at(m));
    for (const auto& p : points) {
      if (!tm) {
        ++c.skipped;
        continue;
      }
      auto mp = cat.apply(source.act[m], p);
      auto lhs = mp ? cat.apply(g, *mp) : std::nullopt;
      auto gp = cat.apply(g, p);
      auto rhs = gp ? cat.apply(*tm, *gp) : std::nullopt;
      if (!lhs || !rhs) {
        ++c.skipped;
        continue;
      }
      ++c.checks;
      if (*lhs != *rhs && c.failures++ == 0)
        c.first_failure = "square for " + w.label(m) + " fails at " + cat.format_point(source.object, p);
    }
  }
  return c;
}

template <class Cat>
ObjectAction<Cat> free_action(const Cat& cat, const SetMAction& psi) {
  ObjectAction<Cat> out{psi.window(), cat.free_object(psi.carrier()), {}};
  for (std::size_t m = 0; m < psi.window()->size(); ++m) out.act.push_back(cat.free_map(psi.endomorphism(m)));
  return out;
}

template <class Cat>
UniversalAction<Cat> universal_action_on_free(const Cat& cat, const WindowPtr& window, const CarrierPtr& index,
                                              std::size_t hard_cap) {
  ZetaAction z = zeta_of_set(window, index, hard_cap);
  ObjectAction<Cat> a = free_action(cat, z.action);
  return UniversalAction<Cat>{std::move(z), std::move(a)};
}

template <class Cat>
UniversalAction<Cat> universal_action_on_free(const Cat& cat, const Monoid& monoid, const CarrierPtr& index,
                                              const EnumerationBound& bound, std::size_t hard_cap) {
  return universal_action_on_free(cat, make_window(monoid, bound), index, hard_cap);
}

template <class Cat>
ObjectLift<Cat> lift_object_action(const Cat& cat, const ObjectAction<Cat>& phi,
                                   const std::vector<typename Cat::Point>& generators, std::size_t cap) {
  using Point = typename Cat::Point;
  if (generators.empty()) fail(ErrorCode::EmptyCarrier, "generating set must be nonempty");
  const CarrierPtr sx = detail::carrier_of_points(cat, phi.object, generators);
  if (!generates(cat, sx, phi.object, generators))
    fail(ErrorCode::DoesNotGenerate, "the given points do not generate the object");

  const auto& w = *phi.window;
  auto [closure, stable] = close_under<Point>(
      generators, w.size(), [&](std::size_t k, const Point& p) { return cat.apply(phi.act[k], p); }, cap);
  if (!stable) fail(ErrorCode::BoundExceeded, "orbit closure leaves the truncation");

  const CarrierPtr tc = detail::carrier_of_points(cat, phi.object, closure);
  std::map<Point, std::size_t> where;
  for (std::size_t i = 0; i < closure.size(); ++i) where.emplace(closure[i], i);
  auto image_under = [&](const typename Cat::Morphism& g) {
    std::vector<std::size_t> img;
    for (const auto& p : closure) img.push_back(where.at(*cat.apply(g, p)));
    return img;
  };
  std::optional<SetMAction> psi;
  if (w.closed()) {
    std::vector<std::vector<std::size_t>> table;
    for (const auto& g : phi.act) table.push_back(image_under(g));
    psi.emplace(phi.window, tc, std::move(table));
  } else {
    std::vector<std::vector<std::size_t>> images;
    for (const auto& g : w.monoid().generators()) {
      auto e = act_on(cat, phi, g);
      if (!e) fail(ErrorCode::BoundExceeded, "a generator lies outside the window");
      images.push_back(image_under(*e));
    }
    psi = SetMAction::from_generators(phi.window, tc, std::move(images));
  }

  EnlargeReport enlarged = enlarge_generating_set(cat, sx, phi.object, generators, closure);
  auto i_bar = cat.extend(tc, phi.object, closure);
  ObjectCertificate i_cert = certify_object_hom(cat, free_action(cat, *psi), phi, i_bar);

  Lifting zl = lift_action_to_zeta(*psi);
  ZetaAction z{zl.source, tc};
  UniversalAction<Cat> u{z, free_action(cat, zl.source)};
  auto free_q = cat.free_map(zl.map);
  auto composite = cat.compose(i_bar, free_q);
  ObjectCertificate cert = certify_object_hom(cat, u.action, phi, composite);
  const bool nice = cat.is_nice(composite);
  return ObjectLift<Cat>{std::move(closure), std::move(*psi), enlarged, std::move(i_bar), std::move(i_cert),
                         std::move(zl), std::move(u), std::move(free_q), std::move(composite), std::move(cert), nice};
}

template <class Cat>
FreeMAction<Cat> free_maction_functor(const Cat& cat, const WindowPtr& window, const CarrierPtr& s,
                                      std::size_t hard_cap) {
  ZetaAction z = zeta_of_set(window, s, hard_cap);
  ObjectAction<Cat> a = free_action(cat, z.action);
  const auto all = cat.unit(z.action.carrier());
  std::vector<typename Cat::Point> unit;
  for (std::size_t i = 0; i < s->size(); ++i) unit.push_back(all[z.eta(i)]);
  return FreeMAction<Cat>{std::move(z), std::move(a), std::move(unit)};
}

template <class Cat>
FreeMAction<Cat> free_maction_functor(const Cat& cat, const Monoid& monoid, const CarrierPtr& s,
                                      const EnumerationBound& bound, std::size_t hard_cap) {
  return free_maction_functor(cat, make_window(monoid, bound), s, hard_cap);
}

template <class Cat>
MExtension<Cat> extend_free(const Cat& cat, const FreeMAction<Cat>& free, const ObjectAction<Cat>& phi,
                            const std::vector<typename Cat::Point>& f) {
  const auto& carrier = free.zeta.action.carrier();
  const auto& gw = *free.zeta.action.window();
  if (f.size() != free.unit.size()) fail(ErrorCode::MalformedInput, "map must assign a point to every generator");
  MExtension<Cat> out;
  std::vector<std::optional<typename Cat::Morphism>> by_element(gw.size());
  for (std::size_t a = 0; a < gw.size(); ++a) by_element[a] = act_on(cat, phi, gw.at(a));
  for (std::size_t p = 0; p < carrier->size(); ++p) {
    const auto [a, s] = carrier->unpair(p);
    if (!by_element[a]) fail(ErrorCode::BoundExceeded, "element " + gw.label(a) + " cannot be evaluated on the object");
    auto v = cat.apply(*by_element[a], f[s]);
    if (!v) fail(ErrorCode::BoundExceeded, "action leaves the truncated object");
    out.f_tilde.push_back(*v);
  }
  out.f_bar = cat.extend(carrier, phi.object, out.f_tilde);
  out.unit_law = true;
  for (std::size_t s = 0; s < f.size(); ++s) out.unit_law &= cat.apply(out.f_bar, free.unit[s]) == f[s];
  const auto eta = cat.unit(carrier);
  out.determined = true;
  for (std::size_t p = 0; p < carrier->size(); ++p) out.determined &= cat.apply(out.f_bar, eta[p]) == out.f_tilde[p];
  out.certificate = certify_object_hom(cat, free.action, phi, out.f_bar);
  return out;
}

template <class Cat>
std::vector<LawReport> check_laws(const Cat& cat, std::size_t max_x) {
  using Object = typename Cat::Object;
  using Morphism = typename Cat::Morphism;
  LawReport unit{"unit_law"}, unique{"extension_uniqueness"}, faithful{"faithfulness"}, right{"compose_right"},
      left{"compose_left"}, natural{"unit_naturality"}, n0{"N0"}, n1{"N1"}, n2{"N2"}, enlarge{"enlarge_generating_set"};

  const std::vector<Object> objects = cat.sample_objects();
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Morphism>> hom_cache;
  auto homs = [&](std::size_t i, std::size_t j) -> const std::vector<Morphism>& {
    auto it = hom_cache.find({i, j});
    if (it == hom_cache.end()) it = hom_cache.emplace(std::pair{i, j}, cat.homs(objects[i], objects[j])).first;
    return it->second;
  };
  std::map<std::pair<std::size_t, std::size_t>, std::map<typename Cat::Key, bool>> nice_cache;
  auto nice_between = [&](std::size_t i, std::size_t j, const Morphism& g) {
    auto& known = nice_cache[{i, j}];
    auto key = cat.key(g);
    auto it = known.find(key);
    if (it == known.end()) it = known.emplace(std::move(key), cat.is_nice(g)).first;
    return it->second;
  };
  std::vector<CarrierPtr> xs;
  for (std::size_t k = 1; k <= max_x; ++k) xs.push_back(make_range_carrier(k));

  for (const auto& x : xs) {
    const auto fx = cat.free_object(x);
    const auto eta = cat.unit(x);
    for (std::size_t ai = 0; ai < objects.size(); ++ai) {
      const Object& a = objects[ai];
      const auto candidates = cat.homs(fx, a);
      for (const auto& f : detail::point_maps(cat, x->size(), a)) {
        const auto f_bar = cat.extend(x, a, f);
        const std::string where = "X of size " + std::to_string(x->size()) + " into " + cat.format(a);
        bool ok = true;
        for (std::size_t i = 0; i < f.size(); ++i) ok &= cat.apply(f_bar, eta[i]) == f[i];
        detail::record(unit, ok, where);
        for (const auto& g : candidates) {
          bool same_on_eta = true;
          for (std::size_t i = 0; i < f.size() && same_on_eta; ++i) same_on_eta = cat.apply(g, eta[i]) == f[i];
          if (same_on_eta) detail::record(unique, cat.key(g) == cat.key(f_bar), where);
        }
        if (cat.is_nice(f_bar)) {
          std::vector<typename Cat::Point> s = f;
          for (const auto& p : cat.test_points(a))
            if (std::find(s.begin(), s.end(), p) == s.end()) {
              s.push_back(p);
              break;
            }
          std::vector<typename Cat::Point> distinct;
          for (const auto& p : s)
            if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) distinct.push_back(p);
          detail::record(enlarge, enlarge_generating_set(cat, x, a, f, distinct).passed(), where);
        }
        for (std::size_t bi = 0; bi < objects.size(); ++bi)
          for (const auto& g : homs(ai, bi)) {
            std::vector<typename Cat::Point> gf;
            bool defined = true;
            for (const auto& p : f) {
              auto v = cat.apply(g, p);
              if (!v) {
                defined = false;
                break;
              }
              gf.push_back(*v);
            }
            if (!defined) continue;
            detail::record(left, detail::agree(cat, cat.extend(x, objects[bi], gf), cat.compose(g, f_bar), fx),
                           where + ", then into " + cat.format(objects[bi]));
          }
      }
    }
    for (const auto& y : xs) {
      const auto eta_y = cat.unit(y);
      for (const auto& f : all_maps(x, y)) {
        const auto ff = cat.free_map(f);
        bool ok = true;
        for (std::size_t i = 0; i < x->size(); ++i) ok &= cat.apply(ff, eta[i]) == eta_y[f.image[i]];
        detail::record(natural, ok, "F f o eta");
        for (const auto& a : objects)
          for (const auto& g : detail::point_maps(cat, y->size(), a)) {
            std::vector<typename Cat::Point> gf;
            for (std::size_t i = 0; i < x->size(); ++i) gf.push_back(g[f.image[i]]);
            detail::record(right, detail::agree(cat, cat.extend(x, a, gf), cat.compose(cat.extend(y, a, g), ff), fx),
                           "maps into " + cat.format(a));
          }
      }
    }
  }

  for (std::size_t ai = 0; ai < objects.size(); ++ai)
    for (std::size_t bi = 0; bi < objects.size(); ++bi) {
      const auto& hab = homs(ai, bi);
      const std::string where = cat.format(objects[ai]) + " -> " + cat.format(objects[bi]);
      std::map<std::vector<std::optional<typename Cat::Point>>, typename Cat::Key> seen;
      const auto pts = cat.test_points(objects[ai]);
      for (const auto& g : hab) {
        std::vector<std::optional<typename Cat::Point>> sig;
        for (const auto& p : pts) sig.push_back(cat.apply(g, p));
        auto [it, fresh] = seen.emplace(std::move(sig), cat.key(g));
        detail::record(faithful, fresh || it->second == cat.key(g), where);
      }
      for (const auto& g : hab) {
        const bool nice = nice_between(ai, bi, g);
        if (right_invertible(cat, g)) detail::record(n1, nice, where);
        if (nice)
          for (std::size_t ci = 0; ci < objects.size(); ++ci) {
            std::set<typename Cat::Key> precomposed;
            const auto& hbc = homs(bi, ci);
            for (const auto& u : hbc) precomposed.insert(cat.key(cat.compose(u, g)));
            detail::record(n0, precomposed.size() == hbc.size(), where + " cancelled into " + cat.format(objects[ci]));
          }
      }
      for (std::size_t ci = 0; ci < objects.size(); ++ci)
        for (const auto& g : homs(bi, ci)) {
          if (nice_between(bi, ci, g)) continue;
          bool composite_nice = false;
          for (const auto& h : hab) composite_nice = composite_nice || nice_between(ai, ci, cat.compose(g, h));
          detail::record(n2, !composite_nice, where + " -> " + cat.format(objects[ci]));
        }
    }
  return {unit, unique, faithful, right, left, natural, n0, n1, n2, enlarge};
}

template <class Cat>
std::vector<LawReport> check_free_maction_laws(const Cat& cat, const WindowPtr& window,
                                               const std::vector<ObjectAction<Cat>>& actions, std::size_t max_s) {
  LawReport unit{"mf_unit_law"}, determined{"mf_extension_determined"}, equivariant{"mf_extension_equivariant"},
      functorial{"mf_free_map_equivariant"};
  std::vector<FreeMAction<Cat>> frees;
  for (std::size_t k = 1; k <= max_s; ++k) frees.push_back(free_maction_functor(cat, window, make_range_carrier(k)));
  for (const auto& free : frees) {
    for (const auto& phi : actions)
      for (const auto& f : detail::point_maps(cat, free.unit.size(), phi.object)) {
        const auto ext = extend_free(cat, free, phi, f);
        const std::string where = "S of size " + std::to_string(free.unit.size()) + " into " + cat.format(phi.object);
        detail::record(unit, ext.unit_law, where);
        detail::record(determined, ext.determined, where);
        detail::record(equivariant, ext.certificate.passed(), where + ": " + ext.certificate.first_failure);
      }
    for (const auto& other : frees) {
      const auto& c1 = free.zeta.action.carrier();
      const auto& c2 = other.zeta.action.carrier();
      for (const auto& g : all_maps(free.zeta.base, other.zeta.base)) {
        std::vector<std::size_t> image;
        for (std::size_t p = 0; p < c1->size(); ++p) {
          const auto [a, s] = c1->unpair(p);
          image.push_back(c2->pair_index(a, g.image[s]));
        }
        const auto fg = cat.free_map(SetMap{c1, c2, std::move(image)});
        const auto cert = certify_object_hom(cat, free.action, other.action, fg);
        detail::record(functorial, cert.passed(), cert.first_failure);
      }
    }
  }
  return {unit, determined, equivariant, functorial};
}

}  // namespace unifree
