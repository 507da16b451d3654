#include "unifree/action.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace unifree {

// ---------------------------------------------------------------- windows

MonoidWindow::MonoidWindow(Monoid monoid, const EnumerationBound& bound)
    : monoid_(std::move(monoid)), elements_(monoid_.enumerate(bound)) {
  build();
}

MonoidWindow::MonoidWindow(Monoid monoid, std::vector<Element> elements)
    : monoid_(std::move(monoid)), elements_(std::move(elements)) {
  if (elements_.empty() || elements_.front() != monoid_.identity())
    fail(ErrorCode::MalformedInput, "a monoid window must start with the identity");
  build();
}

void MonoidWindow::build() {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (!monoid_.contains(elements_[i])) fail(ErrorCode::ElementNotInMonoid, "window element outside the monoid");
    if (!index_.emplace(elements_[i], i).second) fail(ErrorCode::MalformedInput, "duplicate window element");
  }
  const std::size_t n = elements_.size();
  products_.assign(n * n, kNone);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto it = index_.find(monoid_.multiply(elements_[a], elements_[b]));
      if (it == index_.end())
        closed_ = false;
      else
        products_[a * n + b] = it->second;
    }
}

std::optional<std::size_t> MonoidWindow::find(const Element& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

WindowPtr make_window(const Monoid& monoid, const EnumerationBound& bound) {
  return std::make_shared<const MonoidWindow>(monoid, bound);
}

// ---------------------------------------------------------------- carriers

void SetCarrier::index() {
  if (labels_.empty()) fail(ErrorCode::EmptyCarrier, "carriers must be nonempty");
  lookup_.clear();
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (!lookup_.emplace(labels_[i], i).second)
      fail(ErrorCode::MalformedInput, "duplicate point label '" + labels_[i] + "'");
}

SetCarrier SetCarrier::finite(std::vector<std::string> labels) {
  SetCarrier c;
  c.labels_ = std::move(labels);
  c.base_size_ = c.labels_.size();
  c.index();
  return c;
}

SetCarrier SetCarrier::nat_indexed(std::size_t bound) {
  SetCarrier c;
  c.kind_ = CarrierKind::NatIndexed;
  for (std::size_t i = 0; i < bound; ++i) c.labels_.push_back(std::to_string(i));
  c.base_size_ = bound;
  c.index();
  return c;
}

SetCarrier SetCarrier::pairs(const WindowPtr& window, const SetCarrier& base) {
  SetCarrier c;
  c.kind_ = CarrierKind::PairIndexed;
  c.base_size_ = base.size();
  c.labels_.reserve(window->size() * base.size());
  for (std::size_t a = 0; a < window->size(); ++a)
    for (std::size_t s = 0; s < base.size(); ++s) c.labels_.push_back("<" + window->label(a) + "," + base.label(s) + ">");
  c.index();
  return c;
}

std::optional<std::size_t> SetCarrier::find(const std::string& label) const {
  auto it = lookup_.find(label);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

CarrierPtr make_finite_carrier(std::vector<std::string> labels) {
  return std::make_shared<const SetCarrier>(SetCarrier::finite(std::move(labels)));
}

CarrierPtr make_range_carrier(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return make_finite_carrier(std::move(labels));
}

// ---------------------------------------------------------------- maps

bool SetMap::total() const {
  return std::none_of(image.begin(), image.end(), [](std::size_t y) { return y == kNone; });
}

bool SetMap::surjective() const {
  std::vector<bool> hit(codomain->size(), false);
  for (auto y : image)
    if (y != kNone) hit[y] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

SetMap identity_map(const CarrierPtr& carrier) {
  SetMap m{carrier, carrier, std::vector<std::size_t>(carrier->size())};
  std::iota(m.image.begin(), m.image.end(), 0);
  return m;
}

SetMap compose(const SetMap& g, const SetMap& f) {
  SetMap out{f.domain, g.codomain, std::vector<std::size_t>(f.image.size(), kNone)};
  for (std::size_t x = 0; x < f.image.size(); ++x)
    if (f.image[x] != kNone) out.image[x] = g.image.at(f.image[x]);
  return out;
}

std::vector<SetMap> all_maps(const CarrierPtr& domain, const CarrierPtr& codomain) {
  std::vector<SetMap> out;
  const std::size_t n = domain->size();
  const std::size_t k = codomain->size();
  std::vector<std::size_t> digits(n, 0);
  while (true) {
    out.push_back(SetMap{domain, codomain, digits});
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++digits[i] < k) break;
      digits[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

// ---------------------------------------------------------------- actions

SetMAction::SetMAction(WindowPtr window, CarrierPtr carrier, std::vector<std::vector<std::size_t>> table)
    : window_(std::move(window)), carrier_(std::move(carrier)), table_(std::move(table)) {
  if (table_.size() != window_->size()) fail(ErrorCode::MalformedInput, "action table needs one row per element");
  for (const auto& row : table_) {
    if (row.size() != carrier_->size()) fail(ErrorCode::MalformedInput, "action row length mismatch");
    for (auto y : row)
      if (y != kNone && y >= carrier_->size()) fail(ErrorCode::MalformedInput, "action image out of range");
  }
}

namespace {

std::vector<std::size_t> invert(const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> inv(perm.size(), kNone);
  for (std::size_t x = 0; x < perm.size(); ++x) {
    if (perm[x] == kNone || inv[perm[x]] != kNone) return {};
    inv[perm[x]] = x;
  }
  return inv;
}

std::vector<std::size_t> compose_tables(const std::vector<std::size_t>& g, const std::vector<std::size_t>& f) {
  std::vector<std::size_t> out(f.size(), kNone);
  for (std::size_t x = 0; x < f.size(); ++x)
    if (f[x] != kNone) out[x] = g[f[x]];
  return out;
}

}  // namespace

SetMAction SetMAction::from_generators(WindowPtr window, CarrierPtr carrier,
                                       std::vector<std::vector<std::size_t>> generator_images) {
  const Monoid& monoid = window->monoid();
  const auto gens = monoid.generators();
  if (generator_images.size() != gens.size())
    fail(ErrorCode::MalformedInput, "expected " + std::to_string(gens.size()) + " generator images");
  for (const auto& img : generator_images) {
    if (img.size() != carrier->size()) fail(ErrorCode::MalformedInput, "generator image length mismatch");
    for (auto y : img)
      if (y >= carrier->size()) fail(ErrorCode::MalformedInput, "generator image out of range");
  }
  SetMAction action(window, carrier,
                    std::vector<std::vector<std::size_t>>(window->size(), std::vector<std::size_t>(carrier->size())));
  action.generator_images_ = std::move(generator_images);
  const bool group = monoid.kind() == MonoidKind::IntAdditive || monoid.kind() == MonoidKind::FreeGroup;
  if (group) {
    for (const auto& img : action.generator_images_) {
      auto inv = invert(img);
      if (inv.empty()) fail(ErrorCode::MalformedInput, "group generators must act by bijections");
      action.inverse_images_.push_back(std::move(inv));
    }
  }
  if (monoid.kind() == MonoidKind::CyclicZn && !action.generator_images_.empty()) {
    std::vector<std::size_t> power(carrier->size());
    std::iota(power.begin(), power.end(), 0);
    for (std::size_t i = 0; i < *monoid.order(); ++i) power = compose_tables(action.generator_images_[0], power);
    for (std::size_t x = 0; x < power.size(); ++x)
      if (power[x] != x) fail(ErrorCode::MalformedInput, "cyclic generator must satisfy g^n = id");
  }
  for (std::size_t m = 0; m < window->size(); ++m)
    for (std::size_t x = 0; x < carrier->size(); ++x) action.table_[m][x] = *action.evaluate(window->at(m), x);
  return action;
}

std::optional<std::size_t> SetMAction::evaluate(const Element& m, std::size_t x) const {
  if (generator_images_.empty()) {
    auto idx = window_->find(m);
    if (!idx || table_[*idx][x] == kNone) return std::nullopt;
    return table_[*idx][x];
  }
  const Monoid& monoid = window_->monoid();
  const auto factors = monoid.factor(m);
  const auto gens = monoid.generators();
  std::size_t y = x;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    const Element& f = *it;
    bool inverse = false;
    std::size_t gi = 0;
    if (f.is_word()) {
      gi = static_cast<std::size_t>(f.letters()[0] / 2);
      inverse = f.letters()[0] % 2 == 1;
    } else if (monoid.kind() == MonoidKind::FiniteTable) {
      gi = static_cast<std::size_t>(std::find(gens.begin(), gens.end(), f) - gens.begin());
    } else {
      inverse = f.value() < 0;
    }
    y = inverse ? inverse_images_.at(gi)[y] : generator_images_.at(gi)[y];
  }
  return y;
}

SetMap SetMAction::endomorphism(std::size_t m) const { return SetMap{carrier_, carrier_, table_.at(m)}; }

ActionLawReport check_action_laws(const SetMAction& phi) {
  ActionLawReport report;
  const auto& w = *phi.window();
  const std::size_t n = phi.carrier()->size();
  for (std::size_t x = 0; x < n; ++x) {
    ++report.identity_checks;
    if (phi.act(0, x) != x && report.failure.empty())
      report.failure = "1 does not act as the identity at " + phi.carrier()->label(x);
  }
  for (std::size_t a = 0; a < w.size(); ++a)
    for (std::size_t b = 0; b < w.size(); ++b) {
      const std::size_t ab = w.product(a, b);
      for (std::size_t x = 0; x < n; ++x) {
        const std::size_t bx = phi.act(b, x);
        if (ab == kNone || bx == kNone || phi.act(a, bx) == kNone || phi.act(ab, x) == kNone) {
          ++report.skipped;
          continue;
        }
        ++report.product_checks;
        if (phi.act(ab, x) != phi.act(a, bx) && report.failure.empty())
          report.failure = "(" + w.label(a) + "*" + w.label(b) + ") fails at " + phi.carrier()->label(x);
      }
    }
  return report;
}

// ---------------------------------------------------------------- certificates

std::size_t Certificate::failures() const {
  return static_cast<std::size_t>(std::count_if(squares.begin(), squares.end(), [](const Square& s) { return !s.holds(); }));
}

Certificate certify_homomorphism(const SetMAction& source, const SetMAction& target, const SetMap& map) {
  if (map.image.size() != source.carrier()->size())
    fail(ErrorCode::MalformedInput, "lifting map domain does not match the source carrier");
  Certificate cert;
  const auto& w = *source.window();
  for (std::size_t m = 0; m < w.size(); ++m) {
    const auto target_index = target.window()->find(w.at(m));
    for (std::size_t x = 0; x < source.carrier()->size(); ++x) {
      const std::size_t mx = source.act(m, x);
      const std::size_t px = map.image[x];
      if (mx == kNone || px == kNone || map.image[mx] == kNone) {
        ++cert.skipped;
        continue;
      }
      std::optional<std::size_t> rhs;
      if (target_index && target.act(*target_index, px) != kNone)
        rhs = target.act(*target_index, px);
      else if (!target_index)
        rhs = target.evaluate(w.at(m), px);
      if (!rhs) {
        ++cert.skipped;
        continue;
      }
      cert.squares.push_back(Square{m, x, map.image[mx], *rhs});
    }
  }
  return cert;
}

Lifting make_lifting(SetMAction source, SetMAction target, SetMap map) {
  Certificate cert = certify_homomorphism(source, target, map);
  SetMap full{source.carrier(), target.carrier(), map.image};
  const bool onto = full.surjective();
  return Lifting{std::move(source), std::move(target), std::move(full), std::move(cert), onto};
}

// ---------------------------------------------------------------- zeta

ZetaAction zeta_of_set(const WindowPtr& window, const CarrierPtr& base, std::size_t hard_cap) {
  if (base->size() == 0) fail(ErrorCode::EmptyCarrier, "zeta needs a nonempty base set");
  std::vector<Element> elements = window->elements();
  if (!window->closed()) {
    std::set<Element> present(elements.begin(), elements.end());
    const Monoid& m = window->monoid();
    for (const auto& a : window->elements())
      for (const auto& b : window->elements()) {
        Element ab = m.multiply(a, b);
        if (present.insert(ab).second) {
          elements.push_back(ab);
          if (elements.size() * base->size() > hard_cap)
            fail(ErrorCode::BoundExceeded, "zeta carrier exceeds the hard cap");
        }
      }
  }
  if (elements.size() * base->size() > hard_cap) fail(ErrorCode::BoundExceeded, "zeta carrier exceeds the hard cap");
  auto grown = std::make_shared<const MonoidWindow>(window->monoid(), std::move(elements));
  auto carrier = std::make_shared<const SetCarrier>(SetCarrier::pairs(grown, *base));
  const std::size_t n = grown->size();
  const std::size_t s_count = base->size();
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(carrier->size(), kNone));
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t a = 0; a < n; ++a) {
      const std::size_t ma = grown->product(m, a);
      if (ma == kNone) continue;
      for (std::size_t s = 0; s < s_count; ++s) table[m][carrier->pair_index(a, s)] = carrier->pair_index(ma, s);
    }
  return ZetaAction{SetMAction(grown, carrier, std::move(table)), base};
}

ZetaAction zeta_of_set(const Monoid& monoid, const CarrierPtr& base, const EnumerationBound& bound,
                       std::size_t hard_cap) {
  return zeta_of_set(make_window(monoid, bound), base, hard_cap);
}

Lifting zeta_of_map(const Monoid& monoid, const SetMap& f, const EnumerationBound& bound) {
  if (!f.total()) fail(ErrorCode::PreconditionViolated, "zeta f needs a total map");
  auto window = make_window(monoid, bound);
  ZetaAction zs = zeta_of_set(window, f.domain);
  ZetaAction zt = zeta_of_set(window, f.codomain);
  const auto& cs = *zs.action.carrier();
  const auto& ct = *zt.action.carrier();
  SetMap map{zs.action.carrier(), zt.action.carrier(), std::vector<std::size_t>(cs.size())};
  for (std::size_t i = 0; i < cs.size(); ++i) {
    auto [a, s] = cs.unpair(i);
    map.image[i] = ct.pair_index(a, f(s));
  }
  return make_lifting(zs.action, zt.action, std::move(map));
}

Lifting lift_action_to_zeta(const SetMAction& psi) {
  ZetaAction z = zeta_of_set(psi.window(), psi.carrier());
  const auto& carrier = *z.action.carrier();
  const auto& grown = *z.action.window();
  SetMap q{z.action.carrier(), psi.carrier(), std::vector<std::size_t>(carrier.size(), kNone)};
  for (std::size_t i = 0; i < carrier.size(); ++i) {
    auto [a, s] = carrier.unpair(i);
    q.image[i] = psi.evaluate(grown.at(a), s).value_or(kNone);
  }
  return make_lifting(z.action, psi, std::move(q));
}

namespace {

SetMap counit_map(const ZetaAction& z, const SetMAction& phi, const SetMap& f) {
  const auto& carrier = *z.action.carrier();
  const auto& grown = *z.action.window();
  SetMap fbar{z.action.carrier(), phi.carrier(), std::vector<std::size_t>(carrier.size(), kNone)};
  for (std::size_t i = 0; i < carrier.size(); ++i) {
    auto [a, s] = carrier.unpair(i);
    fbar.image[i] = phi.evaluate(grown.at(a), f(s)).value_or(kNone);
  }
  return fbar;
}

}  // namespace

Extension counit_extension(const SetMAction& phi, const SetMap& f) {
  if (!f.total()) fail(ErrorCode::PreconditionViolated, "counit extension needs a total map");
  if (!(*f.codomain == *phi.carrier())) fail(ErrorCode::MalformedInput, "f must land in the carrier of phi");
  ZetaAction z = zeta_of_set(phi.window(), f.domain);
  SetMap fbar = counit_map(z, phi, f);
  bool triangle = true;
  for (std::size_t s = 0; s < f.domain->size(); ++s) triangle = triangle && fbar(z.eta(s)) == f(s);
  return Extension{make_lifting(z.action, phi, std::move(fbar)), triangle};
}

bool verify_extension_uniqueness(const SetMAction& phi, const SetMap& f, const SetMap& candidate) {
  ZetaAction z = zeta_of_set(phi.window(), f.domain);
  return counit_map(z, phi, f).image == candidate.image;
}

std::size_t count_extensions(const SetMAction& phi, const SetMap& f) {
  ZetaAction z = zeta_of_set(phi.window(), f.domain);
  const auto& zeta = z.action;
  const std::size_t points = zeta.carrier()->size();
  const std::size_t targets = phi.carrier()->size();
  // constraints[p]: (m, q) with q = m.p or p = m.q, keyed by the later index.
  struct Edge {
    std::size_t m, from, to;
  };
  std::vector<std::vector<Edge>> constraints(points);
  for (std::size_t m = 0; m < zeta.window()->size(); ++m)
    for (std::size_t p = 0; p < points; ++p) {
      const std::size_t q = zeta.act(m, p);
      if (q == kNone) continue;
      constraints[std::max(p, q)].push_back(Edge{m, p, q});
    }
  std::vector<std::size_t> forced(points, kNone);
  for (std::size_t s = 0; s < f.domain->size(); ++s) forced[z.eta(s)] = f(s);

  std::vector<std::size_t> g(points, kNone);
  std::size_t count = 0;
  std::function<void(std::size_t)> search = [&](std::size_t p) {
    if (p == points) {
      ++count;
      return;
    }
    for (std::size_t v = 0; v < targets; ++v) {
      if (forced[p] != kNone && forced[p] != v) continue;
      g[p] = v;
      bool ok = true;
      for (const auto& e : constraints[p]) {
        auto rhs = phi.evaluate(zeta.window()->at(e.m), g[e.from]);
        if (rhs && *rhs != g[e.to]) {
          ok = false;
          break;
        }
      }
      if (ok) search(p + 1);
    }
    g[p] = kNone;
  };
  search(0);
  return count;
}

OrbitClosure orbit_closure(const SetMAction& phi, std::span<const std::size_t> seed, bool strict) {
  if (seed.empty()) fail(ErrorCode::EmptyCarrier, "orbit closure needs a nonempty seed");
  std::vector<std::size_t> start(seed.begin(), seed.end());
  auto [points, stabilized] = close_under<std::size_t>(
      start, phi.window()->size(), [&](std::size_t m, std::size_t x) -> std::optional<std::size_t> {
        const std::size_t y = phi.act(m, x);
        if (y == kNone) return std::nullopt;
        return y;
      });
  if (strict && !stabilized) fail(ErrorCode::BoundExceeded, "orbit closure did not stabilize within the carrier");
  std::sort(points.begin(), points.end());
  return OrbitClosure{std::move(points), stabilized};
}

std::vector<SetMAction> all_actions(const WindowPtr& window, const CarrierPtr& carrier) {
  std::vector<SetMAction> out;
  const std::size_t n = carrier->size();
  std::vector<std::vector<std::size_t>> maps;
  for (const auto& m : all_maps(carrier, carrier)) maps.push_back(m.image);
  std::vector<std::size_t> id(n);
  std::iota(id.begin(), id.end(), 0);

  if (window->closed()) {
    auto tables = enumerate_window_actions(*window, maps, id, compose_tables,
                                           [](const auto& a, const auto& b) { return a == b; });
    for (auto& t : tables) out.emplace_back(window, carrier, std::move(t));
    return out;
  }
  const Monoid& monoid = window->monoid();
  const bool group = monoid.kind() == MonoidKind::IntAdditive || monoid.kind() == MonoidKind::FreeGroup;
  std::vector<std::vector<std::size_t>> pool;
  for (auto& m : maps)
    if (!group || !invert(m).empty()) pool.push_back(m);
  const std::size_t k = monoid.generators().size();
  std::vector<std::size_t> digits(k, 0);
  while (true) {
    std::vector<std::vector<std::size_t>> images;
    for (auto d : digits) images.push_back(pool[d]);
    out.push_back(SetMAction::from_generators(window, carrier, std::move(images)));
    std::size_t i = 0;
    while (i < k && ++digits[i] == pool.size()) digits[i++] = 0;
    if (i == k) break;
  }
  return out;
}

}  // namespace unifree
