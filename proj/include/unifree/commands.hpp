#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "unifree/serialize.hpp"

namespace unifree {

struct Report {
  bool passed = true;  // every check in the report holds
  Json json;
  std::string text;
};

struct RunOptions {
  std::uint64_t seed = 0;
  std::optional<std::size_t> bound;
};

/// Renders a report object as sorted "key: value" lines; certificates are
/// summarized rather than printed.
std::string render_text(const Json& report);

/// Universality verdict for a description. Always passes: the verdict is the
/// output, not a check.
Report run_analyze(const Json& description, const RunOptions& opts);

/// Lifts a finite target self-map through a description at the given
/// truncation depth. The bound is the number of copies of omega families.
Report run_lift(const Json& source, const Json& target, std::size_t depth, const RunOptions& opts);

/// Re-verifies an emitted certificate.
Report run_certify(const Json& certificate, const RunOptions& opts);

/// Law checks for a category instance ("ens", "monounary", "finvecq"); with a
/// monoid, also the free M-action laws. The bound is the largest free set.
Report run_laws(const std::string& category, const std::string& mode, const std::optional<Json>& monoid,
                const RunOptions& opts);

/// The l1 lifting pipeline for a target matrix and seed points. The bound is
/// the nu truncation depth (default: depth).
Report run_ellone_lift(const Json& matrix, const Json& seed, std::size_t depth, const RunOptions& opts);

/// The universal action on the free object over an index set of size bound
/// (default 1); with an action file, the certified lifting of that action.
Report run_universal(const std::string& category, const Json& monoid, const std::optional<Json>& action,
                     const RunOptions& opts);

}  // namespace unifree
