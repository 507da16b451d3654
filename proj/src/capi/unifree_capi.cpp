#include "unifree/unifree.h"

#include <string>

#include "unifree/commands.hpp"
#include "unifree/error.hpp"

struct unifree_report {
  unifree::Report report;
  std::string json_cache;
};

struct unifree_description {
  unifree::SelfMapDescription description;
};

namespace {

thread_local std::string last_error;
thread_local unifree_error_code last_code = UNIFREE_ERR_NONE;

void clear_error() {
  last_error.clear();
  last_code = UNIFREE_ERR_NONE;
}

unifree::RunOptions options_of(const unifree_options* o) {
  unifree::RunOptions r;
  if (!o) return r;
  r.seed = o->seed;
  if (o->has_bound) r.bound = o->bound;
  return r;
}

unifree::Json json_arg(const char* text, const char* what) {
  if (!text) unifree::fail(unifree::ErrorCode::UsageError, std::string(what) + " is required");
  return unifree::parse_json(text);
}

std::string string_arg(const char* text, const char* what) {
  if (!text) unifree::fail(unifree::ErrorCode::UsageError, std::string(what) + " is required");
  return text;
}

template <class F>
unifree_status guard(F body) {
  clear_error();
  try {
    return body();
  } catch (const unifree::Error& e) {
    last_error = e.what();
    last_code = static_cast<unifree_error_code>(e.code());
    return UNIFREE_INPUT_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return UNIFREE_INTERNAL_ERROR;
  } catch (...) {
    last_error = "unknown failure";
    return UNIFREE_INTERNAL_ERROR;
  }
}

template <class F>
unifree_status run_command(unifree_report** out, F body) {
  if (!out) {
    last_error = "output pointer is null";
    return UNIFREE_INPUT_ERROR;
  }
  *out = nullptr;
  return guard([&] {
    auto* handle = new unifree_report{body(), {}};
    *out = handle;
    return handle->report.passed ? UNIFREE_OK : UNIFREE_CHECK_FAILED;
  });
}

}  // namespace

extern "C" {

const char* unifree_version(void) { return "1.0.0"; }

const char* unifree_last_error(void) { return last_error.c_str(); }

unifree_error_code unifree_last_error_code(void) { return last_code; }

const char* unifree_error_name(unifree_error_code code) {
  if (code == UNIFREE_ERR_NONE) return "None";
  return unifree::to_string(static_cast<unifree::ErrorCode>(code));
}

unifree_status unifree_analyze(const char* description_json, const unifree_options* options, unifree_report** out) {
  return run_command(out, [&] {
    return unifree::run_analyze(json_arg(description_json, "description"), options_of(options));
  });
}

unifree_status unifree_lift(const char* source_json, const char* target_json, size_t depth,
                            const unifree_options* options, unifree_report** out) {
  return run_command(out, [&] {
    return unifree::run_lift(json_arg(source_json, "source"), json_arg(target_json, "target"), depth,
                             options_of(options));
  });
}

unifree_status unifree_certify(const char* certificate_json, const unifree_options* options, unifree_report** out) {
  return run_command(out, [&] {
    return unifree::run_certify(json_arg(certificate_json, "certificate"), options_of(options));
  });
}

unifree_status unifree_laws(const char* category, const char* mode, const char* monoid_json,
                            const unifree_options* options, unifree_report** out) {
  return run_command(out, [&] {
    std::optional<unifree::Json> monoid;
    if (monoid_json) monoid = json_arg(monoid_json, "monoid");
    return unifree::run_laws(string_arg(category, "category"), mode ? mode : "surjective", monoid,
                             options_of(options));
  });
}

unifree_status unifree_ellone_lift(const char* matrix_json, const char* seed_json, size_t depth,
                                   const unifree_options* options, unifree_report** out) {
  return run_command(out, [&] {
    return unifree::run_ellone_lift(json_arg(matrix_json, "target"), json_arg(seed_json, "seed"), depth,
                                    options_of(options));
  });
}

unifree_status unifree_universal(const char* category, const char* monoid_json, const char* action_json,
                                 const unifree_options* options, unifree_report** out) {
  return run_command(out, [&] {
    std::optional<unifree::Json> action;
    if (action_json) action = json_arg(action_json, "action");
    return unifree::run_universal(string_arg(category, "category"), json_arg(monoid_json, "monoid"), action,
                                  options_of(options));
  });
}

int unifree_report_passed(const unifree_report* report) { return report && report->report.passed ? 1 : 0; }

const char* unifree_report_json(unifree_report* report, int indent) {
  if (!report) return "";
  report->json_cache = report->report.json.dump(indent < 0 ? -1 : indent);
  return report->json_cache.c_str();
}

const char* unifree_report_text(const unifree_report* report) { return report ? report->report.text.c_str() : ""; }

void unifree_report_free(unifree_report* report) { delete report; }

unifree_status unifree_description_parse(const char* json, unifree_description** out) {
  if (!out) return UNIFREE_INPUT_ERROR;
  *out = nullptr;
  return guard([&] {
    *out = new unifree_description{unifree::description_from_json(json_arg(json, "description"))};
    return UNIFREE_OK;
  });
}

size_t unifree_description_listed_components(const unifree_description* d) {
  return d ? d->description.components.size() : 0;
}

int unifree_description_is_universal(const unifree_description* d) {
  if (!d) return -1;
  int result = -1;
  guard([&] {
    result = unifree::decide_universality(d->description).is_universal ? 1 : 0;
    return UNIFREE_OK;
  });
  return result;
}

void unifree_description_free(unifree_description* d) { delete d; }

}  // extern "C"
