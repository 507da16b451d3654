#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "unifree/action.hpp"
#include "unifree/ellone.hpp"
#include "unifree/funcgraph.hpp"
#include "unifree/monoid.hpp"
#include "unifree/rational.hpp"

namespace unifree {

// nlohmann::json keeps object keys in a std::map, so dumps are sorted.
using Json = nlohmann::json;

/// Parses text as JSON; syntax errors become MalformedInput.
Json parse_json(const std::string& text);
Json read_json_file(const std::filesystem::path& path);

Json rational_to_json(const Rational& r);
/// Accepts "p/q" strings and integers.
Rational rational_from_json(const Json& j);

Json vector_to_json(const Vector& v);
/// Dense arrays, or {"index": "coeff"} maps when dim is known.
Vector vector_from_json(const Json& j, std::size_t dim);
Json sparse_to_json(const SparseVec& v);
SparseVec sparse_from_json(const Json& j);

/// Row-major arrays of rationals, optionally wrapped as {"matrix": [...]}.
Matrix matrix_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);

// Monoids: {"kind": "nat" | "integers" | "trivial"}, {"kind": "cyclic",
// "order": n}, {"kind": "free_monoid" | "free_group", "generators": k},
// {"kind": "table", "table": [[...]], "identity": i} or {"kind": "small",
// "order": n, "index": k}. Bare strings "nat", "integers", "z<n>" also work.
Monoid monoid_from_json(const Json& j);
Json monoid_to_json(const Monoid& m);
EnumerationBound bound_from_json(const Json& j, EnumerationBound fallback = {});

ComponentTemplate template_from_json(const Json& j);
Json template_to_json(const ComponentTemplate& t);
/// {"components": [...], "families": [{"template": ..., "multiplicity":
/// "omega" | n}]}, or {"preset": "nu"}.
SelfMapDescription description_from_json(const Json& j);
Json description_to_json(const SelfMapDescription& d);

/// {"next": [1, 0, null], "labels": [...]} or a bare array of images.
PartialSelfMap selfmap_from_json(const Json& j);
Json selfmap_to_json(const PartialSelfMap& f);

/// {"monoid": ..., "carrier": n | [labels], "generators": [[...]]} or with a
/// "table" over the enumerated window ("bound" optional).
SetMAction action_from_json(const Json& j);
/// Full table form with the window's element labels.
Json action_to_json(const SetMAction& a);

Json certificate_to_json(const Lifting& l);
Json ellone_certificate_to_json(const RationalTarget& target, const NuPipeline& p, std::size_t nu_depth);

struct Recheck {
  std::string kind;
  bool recorded_passed = false;
  bool passed = false;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string detail;
  bool consistent() const { return recorded_passed == passed; }
};

/// Rebuilds the objects named by a certificate (or a report carrying one
/// under "certificate") and verifies it from scratch.
Recheck recheck_certificate(const Json& j);

}  // namespace unifree
