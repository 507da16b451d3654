#include "unifree/commands.hpp"

#include "unifree/error.hpp"
#include "unifree/freecat.hpp"

namespace unifree {

namespace {

template <class F>
Report guarded(F body) {
  try {
    Report r = body();
    r.json["passed"] = r.passed;
    r.text = render_text(r.json);
    return r;
  } catch (const Json::exception& e) {
    fail(ErrorCode::MalformedInput, std::string("malformed input: ") + e.what());
  }
}

Json law_json(const LawReport& l) {
  return Json{{"law", l.law}, {"checks", l.checks}, {"failures", l.failures}, {"first_failure", l.first_failure}};
}

bool all_pass(const std::vector<LawReport>& laws, Json& out) {
  bool ok = true;
  for (const auto& l : laws) {
    out.push_back(law_json(l));
    ok = ok && l.passed();
  }
  return ok;
}

NiceMode parse_mode(const std::string& mode) {
  if (mode == "surjective") return NiceMode::Surjective;
  if (mode == "right_invertible") return NiceMode::RightInvertible;
  fail(ErrorCode::UsageError, "unknown mode '" + mode + "' (surjective, right_invertible)");
}

WindowPtr window_of(const Json& monoid) {
  const Json& m = monoid.is_object() && monoid.contains("monoid") ? monoid.at("monoid") : monoid;
  const EnumerationBound bound = monoid.is_object() ? bound_from_json(monoid, {8, 3}) : EnumerationBound{8, 3};
  return make_window(monoid_from_json(m), bound);
}

Json lifting_summary(const Lifting& l) {
  return Json{{"squares", l.certificate.squares.size()},
              {"failures", l.certificate.failures()},
              {"skipped", l.certificate.skipped},
              {"surjective_on_bound", l.surjective_on_bound}};
}

template <class Cat>
Report laws_for(const Cat& cat, std::size_t bound, const std::optional<Json>& monoid) {
  Report r;
  Json laws = Json::array();
  r.passed = all_pass(check_laws(cat, bound), laws);
  if (monoid) {
    const WindowPtr w = window_of(*monoid);
    r.passed = all_pass(check_free_maction_laws(cat, w, sample_actions(cat, w, 2), bound), laws) && r.passed;
    r.json["monoid"] = w->monoid().describe();
    r.json["window_size"] = w->size();
  }
  r.json["category"] = cat.name();
  r.json["bound"] = bound;
  r.json["laws"] = laws;
  return r;
}

template <class Cat>
Report universal_for(const Cat& cat, const WindowPtr& w, std::size_t index_size) {
  Report r;
  const auto ua = universal_action_on_free(cat, w, make_range_carrier(index_size));
  const auto laws = check_object_action(cat, ua.action);
  Json mf = Json::array();
  r.passed = laws.passed() && all_pass(check_free_maction_laws(cat, w, sample_actions(cat, w, 2), index_size), mf);
  r.json["category"] = cat.name();
  std::string object = cat.format(ua.action.object);
  if (object.size() > 120) object = object.substr(0, 117) + "...";
  r.json["free_object"] = object;
  r.json["carrier_size"] = ua.zeta.action.carrier()->size();
  r.json["action_laws"] = Json{{"identity_checks", laws.identity_checks},
                               {"product_checks", laws.product_checks},
                               {"skipped", laws.skipped},
                               {"failure", laws.failure}};
  r.json["free_maction_laws"] = mf;
  return r;
}

}  // namespace

std::string render_text(const Json& report) {
  std::string out;
  for (const auto& [key, value] : report.items()) {
    out += key + ": ";
    if (key == "certificate")
      out += value.value("kind", std::string("certificate")) + " (use --json to print)";
    else if (value.is_string())
      out += value.get<std::string>();
    else
      out += value.dump();
    out += "\n";
  }
  return out;
}

Report run_analyze(const Json& description, const RunOptions&) {
  return guarded([&] {
    const SelfMapDescription d = description_from_json(description);
    const UniversalityVerdict v = decide_universality(d);
    Report r;
    Json comps = Json::array(), fams = Json::array();
    for (auto c : v.component_classes) comps.push_back(to_string(c));
    for (auto c : v.family_classes) fams.push_back(to_string(c));
    r.json = Json{{"universal", v.is_universal},
                  {"condition_I", v.condition_I_witness},
                  {"condition_I_holds", v.condition_I},
                  {"condition_W_holds", v.condition_W},
                  {"component_classes", comps},
                  {"family_classes", fams}};
    if (v.condition_W) r.json["condition_W"] = "all natural";
    if (v.counterexample) {
      const auto& c = *v.counterexample;
      if (!v.condition_W) r.json["condition_W"] = c.reason + " at " + c.location;
      r.json["counterexample"] = c.reason;
      r.json["counterexample_detail"] =
          Json{{"location", c.location}, {"cycle", c.cycle}, {"detail", c.detail}};
    }
    return r;
  });
}

Report run_lift(const Json& source, const Json& target, std::size_t depth, const RunOptions& opts) {
  return guarded([&] {
    const SelfMapDescription w = description_from_json(source);
    const PartialSelfMap f = selfmap_from_json(target);
    const std::size_t copies = opts.bound.value_or(3);
    const UniversalityVerdict v = decide_universality(w);
    Report r;
    r.json = Json{{"universal", v.is_universal}, {"depth", depth}, {"copies", copies}};
    std::optional<Lifting> lifting;
    if (v.is_universal) {
      auto dl = lift_universal(w, f, depth, copies);
      r.json["method"] = "universal";
      lifting = std::move(dl.lifting);
    } else {
      try {
        auto dl = lift_with_fixed_point(w, f, std::nullopt, depth, copies);
        r.json["method"] = "fixed_point";
        r.json["fixed_point"] = f.carrier->label(dl.fixed_point);
        if (dl.reserved_component) r.json["reserved_component"] = *dl.reserved_component;
        lifting = std::move(dl.lifting);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoFixedPoint && e.code() != ErrorCode::NotEnoughNaturalComponents) throw;
        r.json["fixed_point_refused"] = to_string(e.code());
        const Truncation t = truncate(w, depth, copies);
        const BruteForceResult b = brute_force_lifting_exists(t, f);
        r.json["method"] = "search";
        r.json["search"] = Json{{"outcome", to_string(b.outcome)},
                                {"reason", b.reason},
                                {"nodes", b.nodes},
                                {"certified_full", b.certified_full}};
        if (b.outcome == Outcome::Yes)
          lifting = make_lifting(t.map.as_action(), f.as_action(), SetMap{t.map.carrier, f.carrier, b.witness});
      }
    }
    if (lifting) {
      r.json["certificate"] = certificate_to_json(*lifting);
      r.json["summary"] = lifting_summary(*lifting);
      r.passed = lifting->certificate.passed() && lifting->surjective_on_bound;
    } else {
      r.passed = false;
    }
    return r;
  });
}

Report run_certify(const Json& certificate, const RunOptions&) {
  return guarded([&] {
    const Recheck c = recheck_certificate(certificate);
    Report r;
    r.json = Json{{"kind", c.kind},
                  {"recorded_passed", c.recorded_passed},
                  {"rechecked_passed", c.passed},
                  {"consistent", c.consistent()},
                  {"checks", c.checks},
                  {"failures", c.failures},
                  {"detail", c.detail}};
    r.passed = c.passed && c.consistent();
    return r;
  });
}

Report run_laws(const std::string& category, const std::string& mode, const std::optional<Json>& monoid,
                const RunOptions& opts) {
  return guarded([&] {
    const NiceMode m = parse_mode(mode);
    const std::size_t bound = opts.bound.value_or(2);
    Report r;
    if (category == "ens")
      r = laws_for(EnsCategory(m, std::max<std::size_t>(bound, 3)), bound, monoid);
    else if (category == "monounary")
      r = laws_for(MonounaryCategory(4, m), bound, monoid);
    else if (category == "finvecq")
      r = laws_for(FinVecQCategory(m, std::min<std::size_t>(bound, 3)), std::min<std::size_t>(bound, 3), monoid);
    else
      fail(ErrorCode::UsageError, "unknown category '" + category + "' (ens, monounary, finvecq)");
    r.json["mode"] = mode;
    return r;
  });
}

Report run_ellone_lift(const Json& matrix, const Json& seed, std::size_t depth, const RunOptions& opts) {
  return guarded([&] {
    const RationalTarget target = make_target(matrix_from_json(matrix));
    const Json& pts = seed.is_object() && seed.contains("points") ? seed.at("points") : seed;
    if (!pts.is_array()) fail(ErrorCode::MalformedInput, "seed must be an array of points");
    std::vector<Vector> points;
    for (const auto& p : pts) points.push_back(vector_from_json(p, target.dimension()));
    const std::size_t nu_depth = opts.bound.value_or(depth);
    const NuPipeline p = lift_through_nu(target, points, depth, nu_depth, opts.seed);
    const auto& tl = p.target_lift;
    Report r;
    Json closure = Json::array();
    for (const auto& v : tl.points) closure.push_back(vector_to_json(v));
    r.json = Json{{"dimension", target.dimension()},
                  {"depth", depth},
                  {"nu_depth", nu_depth},
                  {"points", closure},
                  {"truncated", tl.truncated},
                  {"rank", tl.rank},
                  {"surjective", tl.surjective && p.surjective},
                  {"non_expansive", tl.non_expansive},
                  {"commutation", Json{{"closure_checks", tl.checks},
                                       {"closure_failures", tl.failures},
                                       {"composite_checks", p.checks},
                                       {"composite_failures", p.failures},
                                       {"skipped", tl.skipped + p.skipped}}},
                  {"square", Json{{"basis_checks", p.square.basis_checks},
                                  {"combination_checks", p.square.combination_checks},
                                  {"failures", p.square.failures},
                                  {"norm_checks", p.square.norm_checks},
                                  {"norm_failures", p.square.norm_failures},
                                  {"section", p.square.section_ok},
                                  {"first_failure", p.square.first_failure}}},
                  {"projection_norm", rational_to_json(p.projection_norm)},
                  {"composite_norm", rational_to_json(p.composite_norm)},
                  {"certificate", ellone_certificate_to_json(target, p, nu_depth)}};
    r.passed = p.passed();
    return r;
  });
}

Report run_universal(const std::string& category, const Json& monoid, const std::optional<Json>& action,
                     const RunOptions& opts) {
  return guarded([&] {
    const WindowPtr w = window_of(monoid);
    const std::size_t n = opts.bound.value_or(1);
    Report r;
    if (category == "ens")
      r = universal_for(EnsCategory(), w, n);
    else if (category == "monounary")
      r = universal_for(MonounaryCategory(), w, n);
    else if (category == "finvecq")
      r = universal_for(FinVecQCategory(), w, n);
    else
      fail(ErrorCode::UsageError, "unknown category '" + category + "' (ens, monounary, finvecq)");
    r.json["monoid"] = w->monoid().describe();
    r.json["window_size"] = w->size();
    r.json["index_size"] = n;
    if (action) {
      const SetMAction psi = action_from_json(*action);
      const Lifting l = lift_action_to_zeta(psi);
      r.json["certificate"] = certificate_to_json(l);
      r.json["summary"] = lifting_summary(l);
      r.passed = r.passed && l.certificate.passed() && l.surjective_on_bound;
    } else {
      std::size_t count = 0, failures = 0;
      for (const auto& psi : all_actions(w, make_range_carrier(n))) {
        const Lifting l = lift_action_to_zeta(psi);
        ++count;
        if (!l.certificate.passed() || !l.surjective_on_bound) ++failures;
      }
      r.json["liftings"] = Json{{"actions", count}, {"failures", failures}};
      r.passed = r.passed && failures == 0;
    }
    return r;
  });
}

}  // namespace unifree
