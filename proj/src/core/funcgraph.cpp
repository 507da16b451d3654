#include "unifree/funcgraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "unifree/error.hpp"

namespace unifree {

const char* to_string(ComponentClass c) noexcept {
  switch (c) {
    case ComponentClass::Natural: return "natural";
    case ComponentClass::HasCycle: return "has_cycle";
    case ComponentClass::UnboundedBelow: return "unbounded_below";
  }
  return "?";
}

const char* to_string(TemplateKind k) noexcept {
  switch (k) {
    case TemplateKind::FiniteCore: return "finite_core";
    case TemplateKind::ZChain: return "z_chain";
    case TemplateKind::Natural: return "natural";
  }
  return "?";
}

const char* to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::Yes: return "yes";
    case Outcome::No: return "no";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

template <class T>
void check_periodic(const Periodic<T>& p, const char* what) {
  if (p.period.empty()) fail(ErrorCode::MalformedTemplate, std::string(what) + " needs a nonempty period");
}

// Levels from `stable_from` on repeat with period `period`.
struct NaturalShape {
  std::size_t stable_from;
  std::size_t period;
};

NaturalShape shape_of(const NaturalComponent& n) {
  return {std::max(n.level_sizes.preperiod.size(), n.edges.preperiod.size()),
          std::lcm(n.level_sizes.period.size(), n.edges.period.size())};
}

void validate_natural(const NaturalComponent& n) {
  check_periodic(n.level_sizes, "level sizes");
  check_periodic(n.edges, "edges");
  const NaturalShape sh = shape_of(n);
  for (std::size_t k = 0; k <= sh.stable_from + sh.period; ++k) {
    const std::size_t here = n.level_sizes.at(k);
    const std::size_t there = n.level_sizes.at(k + 1);
    if (here == 0) fail(ErrorCode::MalformedTemplate, "level sizes must be positive");
    const auto& e = n.edges.at(k);
    if (e.size() != here)
      fail(ErrorCode::MalformedTemplate, "level " + std::to_string(k) + " has " + std::to_string(here) +
                                             " vertices but " + std::to_string(e.size()) + " edges");
    for (std::size_t t : e)
      if (t >= there) fail(ErrorCode::MalformedTemplate, "edge leaves level " + std::to_string(k + 1));
  }
  // Every level below the stable region flows into level L = stable_from + period - 1,
  // and levels congruent mod the period behave alike, so the component is connected
  // iff the forward images of level L eventually meet in a single vertex.
  std::size_t level = sh.stable_from + sh.period - 1;
  std::vector<std::size_t> current(n.level_sizes.at(level));
  std::iota(current.begin(), current.end(), 0);
  std::set<std::pair<std::size_t, std::vector<std::size_t>>> seen;
  while (current.size() > 1) {
    if (!seen.emplace((level - sh.stable_from) % sh.period, current).second)
      fail(ErrorCode::MalformedTemplate, "natural template describes more than one component");
    std::set<std::size_t> next;
    for (std::size_t v : current) next.insert(n.edges.at(level)[v]);
    current.assign(next.begin(), next.end());
    ++level;
  }
}

void validate_zchain(const ZChain& z) {
  check_periodic(z.trees, "tree pattern");
  auto check_list = [](const std::vector<HangingTree>& trees) {
    for (const auto& t : trees)
      for (std::size_t i = 0; i < t.parent.size(); ++i)
        if (t.parent[i] < -1 || t.parent[i] >= static_cast<std::int64_t>(i))
          fail(ErrorCode::MalformedTemplate, "tree parents must precede their children");
  };
  for (const auto& l : z.trees.preperiod) check_list(l);
  for (const auto& l : z.trees.period) check_list(l);
}

void validate_core(const FiniteCore& c) {
  const std::size_t n = c.next.size();
  if (n == 0) fail(ErrorCode::MalformedTemplate, "finite core needs at least one vertex");
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (c.next[i] >= n) fail(ErrorCode::MalformedTemplate, "finite core edge leaves the component");
    uf.join(i, c.next[i]);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (uf.find(i) != uf.find(0)) fail(ErrorCode::MalformedTemplate, "finite core is not connected");
}

std::vector<std::size_t> find_cycle(const std::vector<std::size_t>& next) {
  std::size_t x = 0;
  for (std::size_t i = 0; i < next.size(); ++i) x = next[x];
  std::vector<std::size_t> cycle{x};
  for (std::size_t y = next[x]; y != x; y = next[y]) cycle.push_back(y);
  return cycle;
}

constexpr std::size_t kFiniteCopyCap = 256;

}  // namespace

// ------------------------------------------------------------ templates

ComponentTemplate ComponentTemplate::finite_core(std::vector<std::size_t> next) {
  FiniteCore c{std::move(next)};
  validate_core(c);
  return ComponentTemplate(std::move(c));
}

ComponentTemplate ComponentTemplate::z_chain(Periodic<std::vector<HangingTree>> trees) {
  ZChain z{std::move(trees)};
  validate_zchain(z);
  return ComponentTemplate(std::move(z));
}

ComponentTemplate ComponentTemplate::natural(Periodic<std::size_t> level_sizes,
                                             std::optional<Periodic<std::vector<std::size_t>>> edges) {
  check_periodic(level_sizes, "level sizes");
  if (!edges) {
    Periodic<std::vector<std::size_t>> e;
    for (std::size_t s : level_sizes.preperiod) e.preperiod.emplace_back(s, 0);
    for (std::size_t s : level_sizes.period) e.period.emplace_back(s, 0);
    edges = std::move(e);
  }
  NaturalComponent n{std::move(level_sizes), std::move(*edges)};
  validate_natural(n);
  return ComponentTemplate(std::move(n));
}

TemplateKind ComponentTemplate::kind() const {
  switch (body_.index()) {
    case 0: return TemplateKind::FiniteCore;
    case 1: return TemplateKind::ZChain;
    default: return TemplateKind::Natural;
  }
}

// ------------------------------------------------------------ descriptions

std::optional<std::size_t> SelfMapDescription::component_count() const {
  std::size_t n = components.size();
  for (const auto& f : families) {
    if (!f.multiplicity) return std::nullopt;
    n += *f.multiplicity;
  }
  return n;
}

const ComponentTemplate& SelfMapDescription::component(std::size_t n) const {
  if (n < components.size()) return components[n];
  n -= components.size();
  std::vector<const Family*> omega;
  for (const auto& f : families) {
    if (!f.multiplicity) {
      omega.push_back(&f);
      continue;
    }
    if (n < *f.multiplicity) return f.component;
    n -= *f.multiplicity;
  }
  if (omega.empty()) fail(ErrorCode::IndexOutOfDomain, "component number beyond the description");
  return omega[n % omega.size()]->component;
}

void SelfMapDescription::validate() const {
  bool any = !components.empty();
  for (const auto& f : families) {
    if (f.multiplicity && *f.multiplicity == 0) fail(ErrorCode::MalformedTemplate, "family multiplicity must be positive");
    any = true;
  }
  if (!any) fail(ErrorCode::MalformedTemplate, "description has no components");
}

SelfMapDescription nu_description() { return SelfMapDescription{{}, {Family{ComponentTemplate::chain(), std::nullopt}}}; }

Classification classify_component(const ComponentTemplate& c) {
  switch (c.kind()) {
    case TemplateKind::FiniteCore: {
      auto cycle = find_cycle(c.core().next);
      std::string w = "cycle of length " + std::to_string(cycle.size()) + " forces r(x) = r(x) + " +
                      std::to_string(cycle.size());
      return {ComponentClass::HasCycle, std::move(cycle), std::move(w)};
    }
    case TemplateKind::ZChain:
      return {ComponentClass::UnboundedBelow, {}, "spine levels ..., -2, -1, 0, 1, ... are unbounded below"};
    case TemplateKind::Natural:
      break;
  }
  return {ComponentClass::Natural, {}, "r(v) = level(v), minimum 0, onto N"};
}

std::int64_t grading(const SelfMapDescription& d, const Vertex& v) {
  if (d.component(v.component).kind() != TemplateKind::Natural)
    fail(ErrorCode::PreconditionViolated, "grading is only defined on natural components");
  return v.level;
}

// ------------------------------------------------------------ partial maps

SetMAction PartialSelfMap::as_action() const {
  auto window = std::make_shared<const MonoidWindow>(Monoid::nat(), std::vector<Element>{Element::scalar(0), Element::scalar(1)});
  std::vector<std::size_t> id(next.size());
  std::iota(id.begin(), id.end(), 0);
  return SetMAction(window, carrier, {std::move(id), next});
}

std::vector<std::size_t> PartialSelfMap::fixed_points() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < next.size(); ++i)
    if (next[i] == i) out.push_back(i);
  return out;
}

PartialSelfMap make_self_map(std::vector<std::string> labels, std::vector<std::size_t> next) {
  if (labels.size() != next.size()) fail(ErrorCode::MalformedInput, "self-map needs one image per point");
  for (std::size_t t : next)
    if (t != kNone && t >= next.size()) fail(ErrorCode::MalformedInput, "self-map image outside the carrier");
  return PartialSelfMap{make_finite_carrier(std::move(labels)), std::move(next)};
}

PartialSelfMap make_self_map(std::vector<std::size_t> next) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < next.size(); ++i) labels.push_back(std::to_string(i));
  if (labels.empty()) fail(ErrorCode::EmptyCarrier, "self-map needs at least one point");
  return make_self_map(std::move(labels), std::move(next));
}

// ------------------------------------------------------------ truncation

namespace {

class TruncationBuilder {
 public:
  void add(const ComponentTemplate& t, std::size_t id, std::size_t depth) {
    const std::size_t local = out_.component_ids.size();
    out_.component_ids.push_back(id);
    switch (t.kind()) {
      case TemplateKind::FiniteCore: {
        const auto& next = t.core().next;
        const std::size_t base = size();
        for (std::size_t i = 0; i < next.size(); ++i) push(local, {id, 0, i}, base + next[i]);
        break;
      }
      case TemplateKind::Natural: {
        const auto& n = t.natural_body();
        std::size_t base = size();
        for (std::size_t k = 0; k < depth; ++k) {
          const std::size_t here = n.level_sizes.at(k);
          const auto& e = n.edges.at(k);
          for (std::size_t i = 0; i < here; ++i)
            push(local, {id, static_cast<std::int64_t>(k), i}, k + 1 < depth ? base + here + e[i] : kNone);
          base += here;
        }
        break;
      }
      case TemplateKind::ZChain: {
        const auto& trees = t.zchain().trees;
        const auto d = static_cast<std::int64_t>(depth);
        const std::size_t spine0 = size();
        for (std::int64_t l = -d; l < d; ++l)
          push(local, {id, l, 0}, l + 1 < d ? spine0 + static_cast<std::size_t>(l + 1 + d) : kNone);
        for (std::size_t k = 0; k <= depth; ++k) {
          const std::size_t spine = spine0 + depth - k;
          std::size_t j = 1;
          for (const auto& tree : trees.at(k)) {
            const std::size_t base = size();
            for (std::size_t i = 0; i < tree.parent.size(); ++i, ++j) {
              const std::int64_t p = tree.parent[i];
              push(local, {id, -static_cast<std::int64_t>(k), j}, p < 0 ? spine : base + static_cast<std::size_t>(p));
            }
          }
        }
        break;
      }
    }
  }

  Truncation finish() {
    out_.components = out_.component_ids.size();
    std::vector<std::string> labels;
    for (const auto& v : out_.vertices)
      labels.push_back("c" + std::to_string(v.component) + ":" + std::to_string(v.level) + ":" + std::to_string(v.index));
    out_.map = make_self_map(std::move(labels), std::move(next_));
    return std::move(out_);
  }

  Truncation& out() { return out_; }

 private:
  std::size_t size() const { return next_.size(); }
  void push(std::size_t local, Vertex v, std::size_t next) {
    out_.vertices.push_back(v);
    out_.component_of.push_back(local);
    next_.push_back(next);
  }

  Truncation out_;
  std::vector<std::size_t> next_;
};

}  // namespace

Truncation truncate(const SelfMapDescription& d, std::size_t depth, std::size_t copies) {
  d.validate();
  if (depth == 0) fail(ErrorCode::PreconditionViolated, "truncation depth must be positive");
  TruncationBuilder b;
  bool all_finite_cores = true;
  bool complete = true;
  std::size_t id = 0;
  for (const auto& c : d.components) {
    all_finite_cores &= c.kind() == TemplateKind::FiniteCore;
    b.add(c, id++, depth);
  }
  std::vector<const Family*> omega;
  for (const auto& f : d.families) {
    all_finite_cores &= f.component.kind() == TemplateKind::FiniteCore;
    if (!f.multiplicity) {
      omega.push_back(&f);
      complete = false;
      continue;
    }
    const std::size_t take = *f.multiplicity > kFiniteCopyCap ? std::min(copies, *f.multiplicity) : *f.multiplicity;
    complete &= take == *f.multiplicity;
    for (std::size_t i = 0; i < take; ++i) b.add(f.component, id + i, depth);
    id += *f.multiplicity;
  }
  for (std::size_t i = 0; i < copies * omega.size(); ++i) b.add(omega[i % omega.size()]->component, id + i, depth);
  b.out().components_complete = complete;
  b.out().closed = complete && all_finite_cores;
  return b.finish();
}

Truncation truncation_of_finite_map(const PartialSelfMap& map) {
  const std::size_t n = map.size();
  if (n == 0) fail(ErrorCode::EmptyCarrier, "self-map needs at least one point");
  UnionFind uf(n);
  bool total = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (map.next[i] == kNone)
      total = false;
    else
      uf.join(i, map.next[i]);
  }
  Truncation t;
  t.map = map;
  std::map<std::size_t, std::size_t> local;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, fresh] = local.emplace(uf.find(i), local.size());
    if (fresh) t.component_ids.push_back(it->second);
    t.component_of.push_back(it->second);
    t.vertices.push_back({it->second, 0, i});
  }
  t.components = local.size();
  t.closed = total;
  t.components_complete = total;
  return t;
}

// ------------------------------------------------------------ verdict

UniversalityVerdict decide_universality(const SelfMapDescription& d) {
  d.validate();
  UniversalityVerdict v;
  const auto count = d.component_count();
  v.condition_I = !count.has_value();
  v.condition_I_witness = v.condition_I ? "omega components" : "finitely many components (" + std::to_string(*count) + ")";
  auto inspect = [&](const ComponentTemplate& t, const std::string& where) {
    Classification c = classify_component(t);
    if (c.cls != ComponentClass::Natural && !v.counterexample)
      v.counterexample = Counterexample{to_string(c.cls), where, c.cycle, c.witness};
    return c.cls;
  };
  for (std::size_t i = 0; i < d.components.size(); ++i)
    v.component_classes.push_back(inspect(d.components[i], "component " + std::to_string(i)));
  for (std::size_t i = 0; i < d.families.size(); ++i)
    v.family_classes.push_back(inspect(d.families[i].component, "family " + std::to_string(i)));
  v.condition_W = !v.counterexample.has_value();
  if (v.condition_W && !v.condition_I)
    v.counterexample = Counterexample{"finite_component_count", "description", {}, v.condition_I_witness};
  v.is_universal = v.condition_I && v.condition_W;
  return v;
}

// ------------------------------------------------------------ liftings

PartialSelfMap nu_rectangle(std::size_t depth, std::size_t columns) {
  std::vector<std::string> labels;
  std::vector<std::size_t> next;
  for (std::size_t m = 0; m < depth; ++m)
    for (std::size_t n = 0; n < columns; ++n) {
      labels.push_back("<" + std::to_string(m) + "," + std::to_string(n) + ">");
      next.push_back(m + 1 < depth ? (m + 1) * columns + n : kNone);
    }
  return make_self_map(std::move(labels), std::move(next));
}

namespace {

// powers[m][s] = f^m(s), kNone once an iterate leaves the domain.
std::vector<std::vector<std::size_t>> iterate_powers(const PartialSelfMap& f, std::size_t depth) {
  std::vector<std::vector<std::size_t>> p(depth, std::vector<std::size_t>(f.size()));
  if (depth == 0) return p;
  std::iota(p[0].begin(), p[0].end(), 0);
  for (std::size_t m = 1; m < depth; ++m)
    for (std::size_t s = 0; s < f.size(); ++s) p[m][s] = p[m - 1][s] == kNone ? kNone : f.next[p[m - 1][s]];
  return p;
}

void require_target(const PartialSelfMap& f, std::size_t depth) {
  if (f.size() == 0) fail(ErrorCode::EmptyCarrier, "target self-map needs at least one point");
  if (depth == 0) fail(ErrorCode::PreconditionViolated, "depth must be positive");
}

}  // namespace

NuLift lift_finite_map_to_nu(const PartialSelfMap& f, std::size_t depth) {
  require_target(f, depth);
  const std::size_t cols = f.size();
  auto powers = iterate_powers(f, depth);
  PartialSelfMap rect = nu_rectangle(depth, cols);
  std::vector<std::size_t> image;
  for (std::size_t m = 0; m < depth; ++m) image.insert(image.end(), powers[m].begin(), powers[m].end());
  SetMap q{rect.carrier, f.carrier, std::move(image)};
  return NuLift{depth, std::move(powers), make_lifting(rect.as_action(), f.as_action(), std::move(q))};
}

namespace {

DescriptionLift lift_by_columns(const SelfMapDescription& w, const PartialSelfMap& f, std::size_t depth,
                                std::size_t copies, std::size_t fixed_point, bool reserve) {
  Truncation t = truncate(w, depth, copies);
  auto powers = iterate_powers(f, depth);
  std::vector<std::optional<std::size_t>> column(t.components);
  std::optional<std::size_t> reserved;
  std::size_t next_column = 0;
  for (std::size_t c = 0; c < t.components; ++c) {
    if (w.component(t.component_ids[c]).kind() != TemplateKind::Natural) continue;
    if (reserve && !reserved) {
      reserved = c;
      continue;
    }
    column[c] = next_column++;
  }
  std::vector<std::size_t> image(t.vertices.size());
  for (std::size_t x = 0; x < t.vertices.size(); ++x) {
    const auto& col = column[t.component_of[x]];
    image[x] = col ? powers[static_cast<std::size_t>(t.vertices[x].level)][*col % f.size()] : fixed_point;
  }
  SetMap q{t.map.carrier, f.carrier, std::move(image)};
  Lifting l = make_lifting(t.map.as_action(), f.as_action(), std::move(q));
  std::optional<std::size_t> reserved_id;
  if (reserved) reserved_id = t.component_ids[*reserved];
  return DescriptionLift{std::move(t), std::move(l), reserved_id, fixed_point};
}

}  // namespace

DescriptionLift lift_universal(const SelfMapDescription& w, const PartialSelfMap& f, std::size_t depth,
                               std::size_t copies) {
  require_target(f, depth);
  if (!decide_universality(w).is_universal)
    fail(ErrorCode::PreconditionViolated, "source description is not surjectively universal");
  return lift_by_columns(w, f, depth, copies, kNone, false);
}

DescriptionLift lift_with_fixed_point(const SelfMapDescription& w, const PartialSelfMap& f,
                                      std::optional<std::size_t> fixed_point, std::size_t depth,
                                      std::size_t copies) {
  require_target(f, depth);
  w.validate();
  if (fixed_point) {
    if (*fixed_point >= f.size() || f.next[*fixed_point] != *fixed_point)
      fail(ErrorCode::NoFixedPoint, "designated point is not fixed by the target map");
  } else {
    auto fps = f.fixed_points();
    if (fps.empty()) fail(ErrorCode::NoFixedPoint, "target map has no fixed point");
    fixed_point = fps.front();
  }
  bool omega_natural = false;
  bool all_natural = true;
  for (const auto& c : w.components) all_natural &= c.kind() == TemplateKind::Natural;
  for (const auto& fam : w.families) {
    const bool nat = fam.component.kind() == TemplateKind::Natural;
    all_natural &= nat;
    omega_natural |= nat && !fam.multiplicity;
  }
  if (!omega_natural)
    fail(ErrorCode::NotEnoughNaturalComponents, "source needs a family of omega natural components");
  // one column per target point besides the reserved one
  if (all_natural) copies = std::max(copies, f.size() + 1);
  return lift_by_columns(w, f, depth, copies, *fixed_point, all_natural);
}

// ------------------------------------------------------------ oracle

namespace {

using Mask = std::uint32_t;
constexpr std::size_t kOracleMaxTarget = 8;

// A set of achievable image subsets, with one way of achieving each.
struct MaskFamily {
  std::vector<std::uint8_t> has;
  struct Back {
    Mask prev = 0;
    Mask part = 0;
    std::size_t choice = kNone;
  };
  std::vector<Back> back;

  explicit MaskFamily(std::size_t masks) : has(masks, 0), back(masks) {}
  bool empty() const { return std::find(has.begin(), has.end(), 1) == has.end(); }
};

MaskFamily product(const MaskFamily& a, const MaskFamily& b, const std::vector<std::size_t>& b_choice, std::size_t& nodes) {
  MaskFamily out(a.has.size());
  std::vector<Mask> as, bs;
  for (Mask m = 0; m < a.has.size(); ++m) {
    if (a.has[m]) as.push_back(m);
    if (b.has[m]) bs.push_back(m);
  }
  for (Mask x : as)
    for (Mask y : bs) {
      ++nodes;
      const Mask z = x | y;
      if (!out.has[z]) {
        out.has[z] = 1;
        out.back[z] = {x, y, b_choice[y]};
      }
    }
  return out;
}

class Oracle {
 public:
  Oracle(const PartialSelfMap& w, const PartialSelfMap& f) : w_(w), f_(f), masks_(std::size_t{1} << f.size()) {
    const std::size_t n = w.size();
    preds_.resize(n);
    for (std::size_t x = 0; x < n; ++x)
      if (w.next[x] != kNone) preds_[w.next[x]].push_back(x);
    fpre_.resize(f.size());
    for (std::size_t s = 0; s < f.size(); ++s)
      if (f.next[s] != kNone) fpre_[f.next[s]].push_back(s);
    on_cycle_.assign(n, false);
    tables_.resize(n);
  }

  std::size_t nodes = 0;

  // Each weakly connected piece of the truncation has one root: a boundary
  // vertex or a cycle.
  void run() {
    const std::size_t n = w_.size();
    std::vector<std::uint8_t> state(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
      if (state[x]) continue;
      std::vector<std::size_t> path;
      std::size_t y = x;
      while (y != kNone && !state[y]) {
        state[y] = 1;
        path.push_back(y);
        y = w_.next[y];
      }
      if (y != kNone && state[y] == 1) {
        auto it = std::find(path.begin(), path.end(), y);
        std::vector<std::size_t> cycle(it, path.end());
        for (std::size_t c : cycle) on_cycle_[c] = true;
        cycles_.push_back(std::move(cycle));
      } else if (y == kNone) {
        roots_.push_back(path.back());
      }
      for (std::size_t p : path) state[p] = 2;
    }
    for (std::size_t r : roots_) pieces_.push_back(root_family(r));
    for (const auto& c : cycles_) pieces_.push_back(cycle_family(c));
  }

  const std::vector<std::pair<MaskFamily, std::vector<std::size_t>>>& pieces() const { return pieces_; }

  void rebuild(std::size_t piece, Mask mask, std::size_t choice, std::vector<std::size_t>& q) const {
    if (piece < roots_.size()) {
      assign(roots_[piece], choice, mask, q);
    } else {
      const auto& cycle = cycles_[piece - roots_.size()];
      const auto& steps = cycle_backs_.at(piece - roots_.size()).at(choice);
      std::vector<Mask> parts(cycle.size());
      for (std::size_t i = cycle.size(); i-- > 0;) {
        parts[i] = steps[i].back[mask].part;
        mask = steps[i].back[mask].prev;
      }
      std::size_t v = choice;
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        assign(cycle[i], v, parts[i], q);
        v = f_.next[v];
      }
    }
  }

 private:
  // Subsets achievable by the in-tree above x (excluding cycle predecessors)
  // when q(x) = v; back pointers choose the child values.
  const std::vector<MaskFamily>& tree_steps(std::size_t x, std::size_t v) {
    auto& slot = tables_[x];
    if (slot.empty()) {
      slot.resize(f_.size());
      std::vector<std::size_t> kids;
      for (std::size_t c : preds_[x])
        if (!on_cycle_[c]) kids.push_back(c);
      kids_[x] = kids;
      for (std::size_t val = 0; val < f_.size(); ++val) {
        MaskFamily start(masks_);
        start.has[Mask{1} << val] = 1;
        slot[val].push_back(start);
        for (std::size_t c : kids) {
          MaskFamily g(masks_);
          std::vector<std::size_t> choice(masks_, kNone);
          for (std::size_t u : fpre_[val]) {
            const MaskFamily& sub = tree_steps(c, u).back();
            for (Mask m = 0; m < masks_; ++m)
              if (sub.has[m] && !g.has[m]) {
                g.has[m] = 1;
                choice[m] = u;
              }
          }
          slot[val].push_back(product(slot[val].back(), g, choice, nodes));
        }
      }
    }
    return slot[v];
  }

  std::pair<MaskFamily, std::vector<std::size_t>> root_family(std::size_t r) {
    MaskFamily all(masks_);
    std::vector<std::size_t> choice(masks_, kNone);
    for (std::size_t v = 0; v < f_.size(); ++v) {
      const MaskFamily& fam = tree_steps(r, v).back();
      for (Mask m = 0; m < masks_; ++m)
        if (fam.has[m] && !all.has[m]) {
          all.has[m] = 1;
          choice[m] = v;
        }
    }
    return {std::move(all), std::move(choice)};
  }

  std::pair<MaskFamily, std::vector<std::size_t>> cycle_family(const std::vector<std::size_t>& cycle) {
    MaskFamily all(masks_);
    std::vector<std::size_t> choice(masks_, kNone);
    std::map<std::size_t, std::vector<MaskFamily>> backs;
    for (std::size_t v = 0; v < f_.size(); ++v) {
      std::size_t u = v;
      for (std::size_t i = 0; i < cycle.size() && u != kNone; ++i) u = f_.next[u];
      if (u != v) continue;
      MaskFamily acc(masks_);
      acc.has[0] = 1;
      std::vector<MaskFamily> steps;
      std::size_t val = v;
      std::vector<std::size_t> none(masks_, kNone);
      for (std::size_t c : cycle) {
        acc = product(acc, tree_steps(c, val).back(), none, nodes);
        steps.push_back(acc);
        val = f_.next[val];
      }
      for (Mask m = 0; m < masks_; ++m)
        if (acc.has[m] && !all.has[m]) {
          all.has[m] = 1;
          choice[m] = v;
        }
      backs.emplace(v, std::move(steps));
    }
    cycle_backs_.push_back(std::move(backs));
    return {std::move(all), std::move(choice)};
  }

  void assign(std::size_t x, std::size_t v, Mask mask, std::vector<std::size_t>& q) const {
    q[x] = v;
    const auto& steps = tables_[x][v];
    const auto& kids = kids_.at(x);
    for (std::size_t j = kids.size(); j-- > 0;) {
      const auto& b = steps[j + 1].back[mask];
      assign(kids[j], b.choice, b.part, q);
      mask = b.prev;
    }
  }

  const PartialSelfMap& w_;
  const PartialSelfMap& f_;
  std::size_t masks_;
  std::vector<std::vector<std::size_t>> preds_;
  std::vector<std::vector<std::size_t>> fpre_;
  std::vector<bool> on_cycle_;
  std::vector<std::vector<std::vector<MaskFamily>>> tables_;
  std::map<std::size_t, std::vector<std::size_t>> kids_;
  std::vector<std::size_t> roots_;
  std::vector<std::vector<std::size_t>> cycles_;
  std::vector<std::map<std::size_t, std::vector<MaskFamily>>> cycle_backs_;
  std::vector<std::pair<MaskFamily, std::vector<std::size_t>>> pieces_;
};

}  // namespace

BruteForceResult brute_force_lifting_exists(const Truncation& w, const PartialSelfMap& f, std::size_t node_limit) {
  BruteForceResult r;
  if (f.size() == 0 || w.map.size() == 0) {
    r.reason = "empty carrier";
    return r;
  }
  if (f.size() > kOracleMaxTarget) {
    r.reason = "target has more than " + std::to_string(kOracleMaxTarget) + " points";
    return r;
  }
  Oracle oracle(w.map, f);
  oracle.run();
  const std::size_t masks = std::size_t{1} << f.size();
  const auto& pieces = oracle.pieces();

  // Combine the pieces, remembering how each union was reached.
  std::vector<MaskFamily> acc;
  MaskFamily start(masks);
  start.has[0] = 1;
  acc.push_back(start);
  for (const auto& [fam, choice] : pieces) {
    acc.push_back(product(acc.back(), fam, choice, oracle.nodes));
    if (oracle.nodes > node_limit) {
      r.nodes = oracle.nodes;
      r.reason = "search limit reached";
      return r;
    }
  }
  r.nodes = oracle.nodes;
  const MaskFamily& total = acc.back();
  const Mask full = static_cast<Mask>(masks - 1);

  if (total.has[full]) {
    std::vector<std::size_t> q(w.map.size(), kNone);
    Mask m = full;
    for (std::size_t p = pieces.size(); p-- > 0;) {
      const auto& b = acc[p + 1].back[m];
      oracle.rebuild(p, b.part, b.choice, q);
      m = b.prev;
    }
    r.outcome = Outcome::Yes;
    r.witness = std::move(q);
    r.certified_full = w.closed;
    r.reason = w.closed ? "surjective lifting of the whole map" : "surjective on the truncation";
    return r;
  }
  if (total.empty()) {
    r.outcome = Outcome::No;
    r.reason = "no commuting map exists on the truncation";
    return r;
  }
  if (w.closed) {
    r.outcome = Outcome::No;
    r.reason = "truncation is the whole map and no commuting map is onto";
    return r;
  }
  if (w.components_complete) {
    UnionFind uf(f.size());
    for (std::size_t s = 0; s < f.size(); ++s)
      if (f.next[s] != kNone) uf.join(s, f.next[s]);
    std::set<std::size_t> all;
    for (std::size_t s = 0; s < f.size(); ++s) all.insert(uf.find(s));
    bool covering = false;
    for (Mask m = 0; m < masks && !covering; ++m) {
      if (!total.has[m]) continue;
      std::set<std::size_t> hit;
      for (std::size_t s = 0; s < f.size(); ++s)
        if (m >> s & 1) hit.insert(uf.find(s));
      covering = hit == all;
    }
    if (!covering) {
      r.outcome = Outcome::No;
      r.reason = "every component is present and none of the commuting maps reaches all target components";
      return r;
    }
  }
  r.reason = "truncation boundary blocks a decision";
  return r;
}

}  // namespace unifree
