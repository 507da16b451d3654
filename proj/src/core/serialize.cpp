#include "unifree/serialize.hpp"

#include <fstream>
#include <sstream>

#include "unifree/error.hpp"

namespace unifree {

namespace {

[[noreturn]] void malformed(const std::string& what) { fail(ErrorCode::MalformedInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t to_size(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) malformed(std::string(what) + " must be a natural number");
  return j.get<std::size_t>();
}

template <class T, class F>
std::vector<T> array_of(const Json& j, const char* what, F item) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array");
  std::vector<T> out;
  for (const auto& x : j) out.push_back(item(x));
  return out;
}

std::vector<std::size_t> sizes(const Json& j, const char* what) {
  return array_of<std::size_t>(j, what, [&](const Json& x) { return to_size(x, what); });
}

std::vector<std::size_t> images(const Json& j, const char* what) {
  return array_of<std::size_t>(j, what, [&](const Json& x) { return x.is_null() ? kNone : to_size(x, what); });
}

Json images_to_json(const std::vector<std::size_t>& v) {
  Json out = Json::array();
  for (std::size_t x : v) out.push_back(x == kNone ? Json(nullptr) : Json(x));
  return out;
}

template <class T, class F>
Periodic<T> periodic_from_json(const Json& j, F item) {
  Periodic<T> p;
  if (j.contains("preperiod")) p.preperiod = array_of<T>(j.at("preperiod"), "preperiod", item);
  p.period = array_of<T>(field(j, "period"), "period", item);
  return p;
}

template <class T, class F>
Json periodic_to_json(const Periodic<T>& p, F item) {
  Json pre = Json::array(), per = Json::array();
  for (const auto& x : p.preperiod) pre.push_back(item(x));
  for (const auto& x : p.period) per.push_back(item(x));
  return Json{{"preperiod", pre}, {"period", per}};
}

HangingTree tree_from_json(const Json& j) {
  const Json& parents = j.is_object() ? field(j, "parent") : j;
  return HangingTree{array_of<std::int64_t>(parents, "parent", [](const Json& x) {
    if (!x.is_number_integer()) malformed("tree parents must be integers");
    return x.get<std::int64_t>();
  })};
}

CarrierPtr carrier_from_json(const Json& j) {
  if (j.is_number_integer()) return make_range_carrier(to_size(j, "carrier"));
  return make_finite_carrier(array_of<std::string>(j, "carrier", [](const Json& x) {
    if (!x.is_string()) malformed("carrier labels must be strings");
    return x.get<std::string>();
  }));
}

std::vector<std::vector<std::size_t>> tables(const Json& j, const char* what) {
  return array_of<std::vector<std::size_t>>(j, what, [&](const Json& row) { return images(row, what); });
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str());
}

// ------------------------------------------------------------ numbers

Json rational_to_json(const Rational& r) { return format_rational(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) malformed("rationals are \"p/q\" strings or integers");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    malformed("bad rational '" + j.get<std::string>() + "'");
  }
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_to_json(x));
  return out;
}

Vector vector_from_json(const Json& j, std::size_t dim) {
  if (j.is_array()) {
    Vector v = array_of<Rational>(j, "vector", rational_from_json);
    if (dim != 0 && v.size() != dim) malformed("vector has the wrong dimension");
    return v;
  }
  if (!j.is_object() || dim == 0) malformed("vectors are arrays or {\"index\": \"coeff\"} maps");
  Vector v(dim, 0);
  const SparseVec sparse = sparse_from_json(j);
  for (const auto& [k, c] : sparse.entries()) {
    if (k >= dim) malformed("vector index outside the dimension");
    v[k] = c;
  }
  return v;
}

Json sparse_to_json(const SparseVec& v) {
  Json out = Json::object();
  for (const auto& [i, c] : v.entries()) out[std::to_string(i)] = rational_to_json(c);
  return out;
}

SparseVec sparse_from_json(const Json& j) {
  if (!j.is_object()) malformed("sparse vectors are {\"index\": \"coeff\"} maps");
  SparseVec v;
  for (const auto& [k, c] : j.items()) {
    Index i = 0;
    try {
      std::size_t used = 0;
      i = std::stoull(k, &used);
      if (used != k.size()) throw std::invalid_argument(k);
    } catch (const std::exception&) {
      malformed("bad basis index '" + k + "'");
    }
    v.add(i, rational_from_json(c));
  }
  return v;
}

Matrix matrix_from_json(const Json& j) {
  const Json& rows = j.is_object() ? field(j, "matrix") : j;
  auto data = array_of<Vector>(rows, "matrix", [](const Json& r) { return vector_from_json(r, 0); });
  if (data.empty() || data[0].empty()) malformed("matrix must be nonempty");
  Matrix m(data.size(), data[0].size());
  for (std::size_t r = 0; r < data.size(); ++r) {
    if (data[r].size() != m.cols()) malformed("matrix rows differ in length");
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = data[r][c];
  }
  return m;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational_to_json(m.at(r, c)));
    out.push_back(row);
  }
  return out;
}

// ------------------------------------------------------------ monoids

Monoid monoid_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "nat") return Monoid::nat();
    if (s == "integers" || s == "int") return Monoid::integers();
    if (s == "trivial") return Monoid::trivial();
    if (s.size() > 1 && s[0] == 'z') {
      try {
        return Monoid::cyclic(std::stoul(s.substr(1)));
      } catch (const std::logic_error&) {
      }
    }
    malformed("unknown monoid '" + s + "'");
  }
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "nat") return Monoid::nat();
  if (kind == "integers") return Monoid::integers();
  if (kind == "trivial") return Monoid::trivial();
  if (kind == "cyclic") return Monoid::cyclic(to_size(field(j, "order"), "order"));
  if (kind == "free_monoid") return Monoid::free_monoid(to_size(field(j, "generators"), "generators"));
  if (kind == "free_group") return Monoid::free_group(to_size(field(j, "generators"), "generators"));
  if (kind == "small") {
    auto all = small_monoids(to_size(field(j, "order"), "order"));
    const std::size_t k = to_size(field(j, "index"), "index");
    if (k >= all.size()) malformed("no small monoid with that index");
    return all[k];
  }
  if (kind == "table") {
    std::vector<std::string> labels;
    if (j.contains("labels"))
      labels = array_of<std::string>(j.at("labels"), "labels", [](const Json& x) { return x.get<std::string>(); });
    const std::size_t id = j.contains("identity") ? to_size(j.at("identity"), "identity") : 0;
    return Monoid::finite_table(tables(field(j, "table"), "table"), id, std::move(labels));
  }
  malformed("unknown monoid kind '" + kind + "'");
}

Json monoid_to_json(const Monoid& m) {
  switch (m.kind()) {
    case MonoidKind::NatAdditive:
      return Json{{"kind", "nat"}};
    case MonoidKind::IntAdditive:
      return Json{{"kind", "integers"}};
    case MonoidKind::CyclicZn:
      return Json{{"kind", "cyclic"}, {"order", *m.order()}};
    case MonoidKind::FreeMonoid:
      return Json{{"kind", "free_monoid"}, {"generators", m.generator_count()}};
    case MonoidKind::FreeGroup:
      return Json{{"kind", "free_group"}, {"generators", m.generator_count()}};
    case MonoidKind::FiniteTable: {
      Json labels = Json::array();
      for (std::size_t i = 0; i < *m.order(); ++i) labels.push_back(m.format(Element::scalar(static_cast<std::int64_t>(i))));
      return Json{{"kind", "table"}, {"table", m.table()}, {"identity", m.identity().value()}, {"labels", labels}};
    }
  }
  return {};
}

EnumerationBound bound_from_json(const Json& j, EnumerationBound fallback) {
  if (j.contains("max_elements")) fallback.max_elements = to_size(j.at("max_elements"), "max_elements");
  if (j.contains("max_word_length")) fallback.max_word_length = to_size(j.at("max_word_length"), "max_word_length");
  return fallback;
}

// ------------------------------------------------------------ descriptions

ComponentTemplate template_from_json(const Json& j) {
  const std::string kind = j.is_string() ? j.get<std::string>() : field(j, "kind").get<std::string>();
  if (kind == "loop") return ComponentTemplate::loop();
  if (kind == "chain") return ComponentTemplate::chain();
  if (kind == "finite_core") return ComponentTemplate::finite_core(sizes(field(j, "next"), "next"));
  if (kind == "z_chain") {
    if (!j.is_object() || !j.contains("trees")) return ComponentTemplate::z_chain();
    return ComponentTemplate::z_chain(periodic_from_json<std::vector<HangingTree>>(j.at("trees"), [](const Json& x) {
      return array_of<HangingTree>(x, "trees", tree_from_json);
    }));
  }
  if (kind == "natural") {
    auto levels = periodic_from_json<std::size_t>(field(j, "levels"), [](const Json& x) { return to_size(x, "level"); });
    std::optional<Periodic<std::vector<std::size_t>>> edges;
    if (j.contains("edges"))
      edges = periodic_from_json<std::vector<std::size_t>>(j.at("edges"), [](const Json& x) { return sizes(x, "edges"); });
    return ComponentTemplate::natural(std::move(levels), std::move(edges));
  }
  malformed("unknown component kind '" + kind + "'");
}

Json template_to_json(const ComponentTemplate& t) {
  switch (t.kind()) {
    case TemplateKind::FiniteCore:
      return Json{{"kind", "finite_core"}, {"next", t.core().next}};
    case TemplateKind::ZChain:
      return Json{{"kind", "z_chain"}, {"trees", periodic_to_json(t.zchain().trees, [](const auto& trees) {
                                          Json out = Json::array();
                                          for (const auto& tree : trees) out.push_back(Json{{"parent", tree.parent}});
                                          return out;
                                        })}};
    case TemplateKind::Natural: {
      const auto& n = t.natural_body();
      return Json{{"kind", "natural"},
                  {"levels", periodic_to_json(n.level_sizes, [](std::size_t x) { return Json(x); })},
                  {"edges", periodic_to_json(n.edges, [](const auto& e) { return Json(e); })}};
    }
  }
  return {};
}

SelfMapDescription description_from_json(const Json& j) {
  if (j.is_object() && j.contains("preset")) {
    if (j.at("preset") == "nu") return nu_description();
    malformed("unknown preset");
  }
  if (!j.is_object()) malformed("a description is a JSON object");
  SelfMapDescription d;
  if (j.contains("components")) d.components = array_of<ComponentTemplate>(j.at("components"), "components", template_from_json);
  if (j.contains("families"))
    d.families = array_of<Family>(j.at("families"), "families", [](const Json& f) {
      std::optional<std::size_t> mult;
      const Json& m = field(f, "multiplicity");
      if (!(m.is_string() && m.get<std::string>() == "omega")) mult = to_size(m, "multiplicity");
      return Family{template_from_json(field(f, "template")), mult};
    });
  d.validate();
  return d;
}

Json description_to_json(const SelfMapDescription& d) {
  Json comps = Json::array(), fams = Json::array();
  for (const auto& c : d.components) comps.push_back(template_to_json(c));
  for (const auto& f : d.families)
    fams.push_back(Json{{"template", template_to_json(f.component)},
                        {"multiplicity", f.multiplicity ? Json(*f.multiplicity) : Json("omega")}});
  return Json{{"components", comps}, {"families", fams}};
}

// ------------------------------------------------------------ maps and actions

PartialSelfMap selfmap_from_json(const Json& j) {
  const Json& next = j.is_object() ? field(j, "next") : j;
  auto images_ = images(next, "next");
  if (j.is_object() && j.contains("labels"))
    return make_self_map(array_of<std::string>(j.at("labels"), "labels", [](const Json& x) { return x.get<std::string>(); }),
                         std::move(images_));
  return make_self_map(std::move(images_));
}

Json selfmap_to_json(const PartialSelfMap& f) {
  return Json{{"next", images_to_json(f.next)}, {"labels", f.carrier->labels()}};
}

SetMAction action_from_json(const Json& j) {
  const Monoid m = monoid_from_json(field(j, "monoid"));
  const CarrierPtr carrier = carrier_from_json(field(j, "carrier"));
  WindowPtr window;
  if (j.contains("window")) {
    auto elems = array_of<Element>(j.at("window"), "window", [&](const Json& x) { return m.parse(x.get<std::string>()); });
    window = std::make_shared<const MonoidWindow>(m, std::move(elems));
  } else {
    window = make_window(m, bound_from_json(j.value("bound", Json::object()), EnumerationBound{16, 4}));
  }
  if (j.contains("generators")) return SetMAction::from_generators(window, carrier, tables(j.at("generators"), "generators"));
  SetMAction a(window, carrier, tables(field(j, "table"), "table"));
  const auto laws = check_action_laws(a);
  if (!laws.passed()) malformed("table is not an action: " + laws.failure);
  return a;
}

Json action_to_json(const SetMAction& a) {
  Json window = Json::array(), table = Json::array();
  for (std::size_t i = 0; i < a.window()->size(); ++i) window.push_back(a.window()->label(i));
  for (const auto& row : a.table()) table.push_back(images_to_json(row));
  return Json{{"monoid", monoid_to_json(a.monoid())}, {"window", window}, {"carrier", a.carrier()->labels()},
              {"table", table}};
}

// ------------------------------------------------------------ certificates

Json certificate_to_json(const Lifting& l) {
  Json squares = Json::array();
  for (const auto& s : l.certificate.squares) squares.push_back(Json::array({s.m, s.x, s.lhs, s.rhs}));
  return Json{{"kind", "lifting"},
              {"source", action_to_json(l.source)},
              {"target", action_to_json(l.target)},
              {"map", images_to_json(l.map.image)},
              {"squares", squares},
              {"skipped", l.certificate.skipped},
              {"failures", l.certificate.failures()},
              {"surjective_on_bound", l.surjective_on_bound},
              {"passed", l.certificate.passed() && l.surjective_on_bound}};
}

Json ellone_certificate_to_json(const RationalTarget& target, const NuPipeline& p, std::size_t nu_depth) {
  Json points = Json::array();
  for (const auto& v : p.target_lift.points) points.push_back(vector_to_json(v));
  return Json{{"kind", "ellone_lifting"},
              {"target", matrix_to_json(target.f)},
              {"points", points},
              {"phi", images_to_json(p.target_lift.phi)},
              {"nu_depth", nu_depth},
              {"checks", p.checks + p.target_lift.checks},
              {"passed", p.passed()}};
}

namespace {

Recheck recheck_lifting(const Json& c) {
  Recheck r;
  r.kind = "lifting";
  r.recorded_passed = field(c, "passed").get<bool>();
  const SetMAction source = action_from_json(field(c, "source"));
  const SetMAction target = action_from_json(field(c, "target"));
  SetMap map{source.carrier(), target.carrier(), images(field(c, "map"), "map")};
  if (map.image.size() != source.carrier()->size()) malformed("map must assign an image to every source point");
  for (std::size_t y : map.image)
    if (y != kNone && y >= target.carrier()->size()) malformed("map image outside the target");
  const Lifting l = make_lifting(source, target, std::move(map));
  r.checks = l.certificate.squares.size();
  r.failures = l.certificate.failures();
  r.passed = l.certificate.passed() && l.surjective_on_bound;
  for (const auto& sq : l.certificate.squares)
    if (!sq.holds()) {
      r.detail = "square fails for " + source.window()->label(sq.m) + " at " + source.carrier()->label(sq.x);
      break;
    }
  const std::size_t recorded = field(c, "squares").size();
  if (recorded != r.checks) {
    r.detail = "recorded " + std::to_string(recorded) + " squares, recomputed " + std::to_string(r.checks);
    r.passed = false;
  } else if (!l.surjective_on_bound && r.detail.empty()) {
    r.detail = "map is not surjective on the bound";
  }
  return r;
}

Recheck recheck_ellone(const Json& c) {
  Recheck r;
  r.kind = "ellone_lifting";
  r.recorded_passed = field(c, "passed").get<bool>();
  const RationalTarget target = make_target(matrix_from_json(field(c, "target")));
  const auto points =
      array_of<Vector>(field(c, "points"), "points", [&](const Json& v) { return vector_from_json(v, target.dimension()); });
  const auto phi = images(field(c, "phi"), "phi");
  if (phi.size() != points.size()) malformed("phi must have one entry per point");
  const NuPipeline p = lift_through_nu(target, points, 0, to_size(field(c, "nu_depth"), "nu_depth"));
  if (p.target_lift.points != points) {
    r.detail = "points repeat";
    return r;
  }
  r.checks = p.checks + p.target_lift.checks;
  r.failures = p.failures + p.target_lift.failures;
  r.passed = p.passed();
  for (std::size_t s = 0; s < phi.size(); ++s)
    if (phi[s] != kNone && phi[s] != p.target_lift.phi[s]) {
      r.passed = false;
      ++r.failures;
      r.detail = "phi disagrees with f at point " + std::to_string(s);
    }
  return r;
}

}  // namespace

Recheck recheck_certificate(const Json& j) {
  const Json& c = j.is_object() && j.contains("certificate") ? j.at("certificate") : j;
  try {
    const std::string kind = field(c, "kind").get<std::string>();
    if (kind == "lifting") return recheck_lifting(c);
    if (kind == "ellone_lifting") return recheck_ellone(c);
    malformed("unknown certificate kind '" + kind + "'");
  } catch (const Json::exception& e) {
    malformed(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace unifree
