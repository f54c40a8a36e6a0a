#pragma once

// JSON forms of reports, matrix representations and lifts.

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charvar/liegroup.hpp"
#include "charvar/matrixrep.hpp"
#include "charvar/theorems.hpp"

namespace charvar {

using Json = nlohmann::ordered_json;

Json to_json(const Citation& c);
Json to_json(const ReportField& f);
Json to_json(const InvariantReport& r);
Json to_json(const StableFacts& f);
Json to_json(const ReductiveDescriptor& g);

/// Inverse of to_json(InvariantReport). Errors: FormatError.
InvariantReport report_from_json(const Json& j);

/// Matrix file:
///
///     {"target": "U 2", "n": 2, "tolerance": 1e-9, "generators": ["a", "b"],
///      "matrices": [[[re, im], ...], ...], "presentation": "gens a b; rel [a,b];"}
///
/// Each matrix is n*n row-major [re, im] pairs, or n rows of n pairs. A bare
/// number is a real entry. "n", "tolerance", "generators" and "presentation"
/// are optional.
struct MatrixFile {
  MatrixRep rep;
  std::vector<std::string> generators;
  std::optional<std::string> presentation;
};

/// Errors: FormatError plus the MatrixRep validation errors.
/// `tolerance_override`, when set, replaces the file's tolerance.
MatrixFile parse_matrix_file(std::string_view text, std::optional<double> tolerance_override = std::nullopt);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, int n);

Json to_json(const MatrixFile& f);
Json to_json(const LiftedRep& lift);
/// Accepts the output of to_json(LiftedRep); if only real_parts and su_parts
/// are present they become the base with zero sheets.
LiftedRep lifted_rep_from_json(const Json& j);

}  // namespace charvar
