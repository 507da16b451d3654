#include "unifree/freecat.hpp"

#include <numeric>

#include "unifree/error.hpp"

namespace unifree {

const char* to_string(NiceMode m) noexcept {
  return m == NiceMode::Surjective ? "surjective" : "right_invertible";
}

namespace {

std::string join_labels(const SetCarrier& c) {
  std::string out = "{";
  for (std::size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + c.label(i);
  return out + "}";
}

}  // namespace

// ------------------------------------------------------------ Ens

std::vector<EnsCategory::Point> EnsCategory::unit(const CarrierPtr& x) const {
  std::vector<Point> out(x->size());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

EnsCategory::Morphism EnsCategory::extend(const CarrierPtr& x, const Object& a, const std::vector<Point>& f) const {
  if (x->size() == 0) fail(ErrorCode::EmptyCarrier, "cannot extend from an empty set");
  if (f.size() != x->size()) fail(ErrorCode::MalformedInput, "map must assign a point to every element");
  for (Point p : f)
    if (p >= a->size()) fail(ErrorCode::MalformedInput, "map leaves the target set");
  return SetMap{x, a, f};
}

std::optional<EnsCategory::Point> EnsCategory::apply(const Morphism& g, const Point& p) const {
  if (p >= g.image.size() || g.image[p] == kNone) return std::nullopt;
  return g.image[p];
}

bool EnsCategory::is_nice(const Morphism& g) const {
  return mode_ == NiceMode::Surjective ? g.surjective() : right_invertible(*this, g);
}

std::vector<EnsCategory::Point> EnsCategory::test_points(const Object& a) const { return unit(a); }

std::vector<EnsCategory::Object> EnsCategory::sample_objects() const {
  std::vector<Object> out;
  for (std::size_t n = 1; n <= max_points_; ++n) out.push_back(make_range_carrier(n));
  return out;
}

std::string EnsCategory::format(const Object& a) const { return join_labels(*a); }

// ------------------------------------------------------------ Monounary

MonounaryCategory::MonounaryCategory(std::size_t truncation, NiceMode mode) : truncation_(truncation), mode_(mode) {
  if (truncation == 0) fail(ErrorCode::PreconditionViolated, "truncation must keep at least one level");
}

MonounaryCategory::Object MonounaryCategory::free_object(const CarrierPtr& x) const {
  std::vector<std::string> labels;
  std::vector<std::size_t> next;
  for (std::size_t s = 0; s < x->size(); ++s)
    for (std::size_t n = 0; n < truncation_; ++n) {
      labels.push_back("<" + x->label(s) + "," + std::to_string(n) + ">");
      next.push_back(n + 1 < truncation_ ? s * truncation_ + n + 1 : kNone);
    }
  return make_self_map(std::move(labels), std::move(next));
}

std::vector<MonounaryCategory::Point> MonounaryCategory::unit(const CarrierPtr& x) const {
  std::vector<Point> out;
  for (std::size_t s = 0; s < x->size(); ++s) out.push_back(s * truncation_);
  return out;
}

MonounaryCategory::Morphism MonounaryCategory::extend(const CarrierPtr& x, const Object& a,
                                                      const std::vector<Point>& f) const {
  if (x->size() == 0) fail(ErrorCode::EmptyCarrier, "cannot extend from an empty set");
  if (f.size() != x->size()) fail(ErrorCode::MalformedInput, "map must assign a point to every element");
  std::vector<std::size_t> image;
  for (Point p : f) {
    if (p >= a.size()) fail(ErrorCode::MalformedInput, "map leaves the target algebra");
    for (std::size_t n = 0; n < truncation_; ++n) {
      image.push_back(p);
      if (p != kNone) p = a.next[p];
    }
  }
  return Morphism{free_object(x), a, std::move(image)};
}

MonounaryCategory::Morphism MonounaryCategory::free_map(const SetMap& f) const {
  std::vector<std::size_t> image;
  for (std::size_t s = 0; s < f.image.size(); ++s)
    for (std::size_t n = 0; n < truncation_; ++n)
      image.push_back(f.image[s] == kNone ? kNone : f.image[s] * truncation_ + n);
  return Morphism{free_object(f.domain), free_object(f.codomain), std::move(image)};
}

std::optional<MonounaryCategory::Point> MonounaryCategory::apply(const Morphism& g, const Point& p) const {
  if (p >= g.image.size() || g.image[p] == kNone) return std::nullopt;
  return g.image[p];
}

MonounaryCategory::Morphism MonounaryCategory::compose(const Morphism& g, const Morphism& h) const {
  std::vector<std::size_t> image;
  for (std::size_t y : h.image) image.push_back(y == kNone ? kNone : g.image[y]);
  return Morphism{h.domain, g.codomain, std::move(image)};
}

MonounaryCategory::Morphism MonounaryCategory::identity(const Object& a) const {
  std::vector<std::size_t> image(a.size());
  std::iota(image.begin(), image.end(), 0);
  return Morphism{a, a, std::move(image)};
}

bool MonounaryCategory::is_nice(const Morphism& g) const {
  if (mode_ == NiceMode::RightInvertible) return right_invertible(*this, g);
  std::vector<bool> hit(g.codomain.size(), false);
  for (std::size_t y : g.image)
    if (y != kNone) hit[y] = true;
  return std::find(hit.begin(), hit.end(), false) == hit.end();
}

std::vector<MonounaryCategory::Point> MonounaryCategory::test_points(const Object& a) const {
  std::vector<Point> out(a.size());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

std::vector<MonounaryCategory::Object> MonounaryCategory::sample_objects() const {
  std::vector<std::vector<std::size_t>> ops = {
      {0}, {0, 0}, {0, 1}, {1, 0}, {1, 1},           // every algebra on at most 2 points
      {1, 2, 0}, {1, 2, 2}, {1, 1, 1}, {1, 0, 2},    // 3-cycle, chain, star, swap plus loop
      {1, 2, 3, 0}, {1, 2, 3, 3}, {1, 0, 0, 1},      // 4-cycle, chain, swap with two tails
      {1, 2, kNone},                                 // a truncated chain, image of truncated free algebras
  };
  std::vector<Object> out;
  for (auto& op : ops) out.push_back(make_self_map(op));
  return out;
}

std::vector<MonounaryCategory::Morphism> MonounaryCategory::homs(const Object& a, const Object& b) const {
  std::vector<Morphism> out;
  std::vector<std::size_t> h(a.size(), kNone);
  // Preimages under op, so each assignment can be checked against both sides.
  std::vector<std::vector<std::size_t>> preds(a.size());
  for (std::size_t x = 0; x < a.size(); ++x)
    if (a.next[x] != kNone) preds[a.next[x]].push_back(x);
  auto consistent = [&](std::size_t x) {
    if (a.next[x] != kNone) {
      if (b.next[h[x]] == kNone) return false;
      if (h[a.next[x]] != kNone && h[a.next[x]] != b.next[h[x]]) return false;
    }
    for (std::size_t p : preds[x])
      if (h[p] != kNone && b.next[h[p]] != h[x]) return false;
    return true;
  };
  auto search = [&](auto&& self, std::size_t x) -> void {
    if (x == a.size()) {
      out.push_back(Morphism{a, b, h});
      return;
    }
    for (std::size_t v = 0; v < b.size(); ++v) {
      h[x] = v;
      if (consistent(x)) self(self, x + 1);
    }
    h[x] = kNone;
  };
  search(search, 0);
  return out;
}

std::string MonounaryCategory::format(const Object& a) const {
  std::string out = "(" + join_labels(*a.carrier) + ", op";
  for (std::size_t x = 0; x < a.size(); ++x)
    out += (x ? "," : " ") + a.carrier->label(x) + "->" + (a.next[x] == kNone ? "?" : a.carrier->label(a.next[x]));
  return out + ")";
}

// ------------------------------------------------------------ FinVecQ

LinearMap make_linear_map(Matrix m) {
  if (operator_norm1(m) > 1) fail(ErrorCode::NotNonExpansive, "matrix has l1 operator norm above 1");
  std::vector<bool> defined(m.cols(), true);
  return LinearMap{std::move(m), std::move(defined)};
}

std::vector<FinVecQCategory::Point> FinVecQCategory::unit(const CarrierPtr& x) const {
  std::vector<Point> out;
  for (std::size_t i = 0; i < x->size(); ++i) out.push_back(unit_vector(x->size(), i));
  return out;
}

FinVecQCategory::Morphism FinVecQCategory::extend(const CarrierPtr& x, const Object& a,
                                                  const std::vector<Point>& f) const {
  if (x->size() == 0) fail(ErrorCode::EmptyCarrier, "cannot extend from an empty set");
  if (f.size() != x->size()) fail(ErrorCode::MalformedInput, "map must assign a vector to every element");
  for (const auto& v : f) {
    if (v.size() != a) fail(ErrorCode::MalformedInput, "vector has the wrong dimension");
    if (norm1(v) > 1) fail(ErrorCode::NotInUnitBall, "vector " + format_vector(v) + " lies outside the unit ball");
  }
  return LinearMap{Matrix::from_columns(a, f), std::vector<bool>(f.size(), true)};
}

FinVecQCategory::Morphism FinVecQCategory::free_map(const SetMap& f) const {
  LinearMap out{Matrix(f.codomain->size(), f.domain->size()), std::vector<bool>(f.domain->size(), true)};
  for (std::size_t x = 0; x < f.image.size(); ++x) {
    if (f.image[x] == kNone)
      out.defined[x] = false;
    else
      out.matrix.at(f.image[x], x) = 1;
  }
  return out;
}

std::optional<FinVecQCategory::Point> FinVecQCategory::apply(const Morphism& g, const Point& p) const {
  if (p.size() != g.cols()) return std::nullopt;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!g.defined[i] && !p[i].is_zero()) return std::nullopt;
  return g.matrix.apply(p);
}

FinVecQCategory::Morphism FinVecQCategory::compose(const Morphism& g, const Morphism& h) const {
  LinearMap out{g.matrix * h.matrix, h.defined};
  for (std::size_t j = 0; j < h.cols(); ++j) {
    for (std::size_t i = 0; i < h.rows() && out.defined[j]; ++i)
      if (!h.matrix.at(i, j).is_zero() && !g.defined[i]) out.defined[j] = false;
    if (!out.defined[j])
      for (std::size_t i = 0; i < out.rows(); ++i) out.matrix.at(i, j) = 0;
  }
  return out;
}

FinVecQCategory::Morphism FinVecQCategory::identity(const Object& a) const {
  return LinearMap{Matrix::identity(a), std::vector<bool>(a, true)};
}

FinVecQCategory::Key FinVecQCategory::key(const Morphism& g) const {
  Key k{Rational(g.rows()), Rational(g.cols())};
  for (bool d : g.defined) k.emplace_back(d ? 1 : 0);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) k.push_back(g.matrix.at(i, j));
  return k;
}

bool FinVecQCategory::is_nice(const Morphism& g) const {
  if (mode_ == NiceMode::RightInvertible) return right_invertible(*this, g);
  return rank(g.matrix) == g.rows();
}

std::vector<FinVecQCategory::Point> FinVecQCategory::test_points(const Object& a) const {
  std::vector<Point> out{Vector(a, 0)};
  for (std::size_t i = 0; i < a; ++i) {
    out.push_back(unit_vector(a, i));
    Vector neg(a, 0);
    neg[i] = -1;
    out.push_back(neg);
  }
  const Rational half(1, 2);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = i + 1; j < a; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          Vector v(a, 0);
          v[i] = half * si;
          v[j] = half * sj;
          out.push_back(v);
        }
  return out;
}

std::vector<FinVecQCategory::Point> FinVecQCategory::point_samples(const Object& a) const {
  std::vector<Point> out{Vector(a, 0)};
  for (std::size_t i = 0; i < a; ++i) out.push_back(unit_vector(a, i));
  Vector neg(a, 0);
  neg[0] = -1;
  out.push_back(neg);
  if (a > 1) {
    Vector mix(a, 0);
    mix[0] = Rational(1, 2);
    mix[a - 1] = Rational(-1, 2);
    out.push_back(mix);
  }
  return out;
}

std::vector<FinVecQCategory::Object> FinVecQCategory::sample_objects() const {
  std::vector<Object> out;
  for (std::size_t n = 1; n <= max_dimension_; ++n) out.push_back(n);
  return out;
}

std::vector<FinVecQCategory::Morphism> FinVecQCategory::homs(const Object& a, const Object& b) const {
  // column choices: 0, then +e_i, -e_i for each i
  const std::size_t choices = 2 * b + 1;
  std::vector<Morphism> out;
  std::vector<std::size_t> idx(a, 0);
  while (true) {
    LinearMap m{Matrix(b, a), std::vector<bool>(a, true)};
    for (std::size_t j = 0; j < a; ++j)
      if (idx[j] > 0) m.matrix.at((idx[j] - 1) / 2, j) = idx[j] % 2 == 1 ? 1 : -1;
    out.push_back(std::move(m));
    std::size_t j = 0;
    while (j < a && ++idx[j] == choices) idx[j++] = 0;
    if (j == a) break;
  }
  return out;
}

// ------------------------------------------------------------ sample actions

namespace {

template <class Fn>
void for_each_set_action(const WindowPtr& w, std::size_t max_points, Fn fn) {
  for (std::size_t n = 1; n <= max_points; ++n)
    for (const auto& psi : all_actions(w, make_range_carrier(n))) fn(psi);
}

bool central(const MonoidWindow& w, std::size_t m) {
  for (std::size_t k = 0; k < w.size(); ++k)
    if (w.product(m, k) != w.product(k, m)) return false;
  return true;
}

}  // namespace

std::vector<ObjectAction<EnsCategory>> sample_actions(const EnsCategory& cat, const WindowPtr& w, std::size_t max_points) {
  std::vector<ObjectAction<EnsCategory>> out;
  for_each_set_action(w, max_points, [&](const SetMAction& psi) { out.push_back(free_action(cat, psi)); });
  return out;
}

std::vector<ObjectAction<MonounaryCategory>> sample_actions(const MonounaryCategory&, const WindowPtr& w,
                                                            std::size_t max_points) {
  std::vector<ObjectAction<MonounaryCategory>> out;
  for_each_set_action(w, max_points, [&](const SetMAction& psi) {
    std::vector<std::vector<std::size_t>> ops;
    std::vector<std::size_t> id(psi.carrier()->size());
    std::iota(id.begin(), id.end(), 0);
    ops.push_back(id);
    for (std::size_t m = 0; m < w->size(); ++m) {
      if (!central(*w, m)) continue;
      auto op = psi.endomorphism(m).image;
      if (std::find(ops.begin(), ops.end(), op) == ops.end()) ops.push_back(std::move(op));
    }
    for (const auto& op : ops) {
      PartialSelfMap alg{psi.carrier(), op};
      ObjectAction<MonounaryCategory> a{w, alg, {}};
      bool commutes = true;
      for (std::size_t m = 0; m < w->size(); ++m) {
        const auto img = psi.endomorphism(m).image;
        for (std::size_t x = 0; x < op.size(); ++x) commutes &= img[op[x]] == op[img[x]];
        a.act.push_back(MonounaryMorphism{alg, alg, img});
      }
      if (commutes) out.push_back(std::move(a));
    }
  });
  return out;
}

std::vector<ObjectAction<FinVecQCategory>> sample_actions(const FinVecQCategory& cat, const WindowPtr& w,
                                                          std::size_t max_points) {
  std::vector<ObjectAction<FinVecQCategory>> out;
  for_each_set_action(w, max_points, [&](const SetMAction& psi) { out.push_back(free_action(cat, psi)); });
  return out;
}

}  // namespace unifree
