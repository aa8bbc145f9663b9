#pragma once

// File formats. Every JSON document carries "schema": 1; complex entries are
// [re, im] pairs (a bare number is read as real) and matrices are row-major
// lists of rows. Product outcome sets are written as a list of factor lists.

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "covmur/metrics.hpp"
#include "covmur/observables.hpp"
#include "covmur/region.hpp"
#include "covmur/symmetry.hpp"

namespace covmur {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kToolVersion = "covmur 1.0.0";

using Json = nlohmann::json;

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json outcomes_to_json(const OutcomeSet& outcomes);
OutcomeSet outcomes_from_json(const Json& j);

// {"schema", "dim", "outcomes", "effects"}
Json observable_to_json(const Observable& obs);
// Malformed documents throw Parse; non-Hermitian effects throw Validation.
// No POVM check here (see load_observable).
Observable observable_from_json(const Json& j);

// Parses, then validates: Parse for malformed files, Validation (with the
// report summary) for well-formed files that are not POVMs, Io when the
// file cannot be read.
Observable load_observable(const std::filesystem::path& path);
// Like load_observable without the POVM check.
Observable load_operator_map(const std::filesystem::path& path);
void save_observable(const Observable& obs, const std::filesystem::path& path);

// {"schema", "group": {"order", "cayley"}, "action": {"outcomes", "perms"},
//  "representation": {"unitaries", "antiunitary"}}
Json triple_to_json(const CovarianceTriple& triple);
CovarianceTriple triple_from_json(const Json& j);
CovarianceTriple load_triple(const std::filesystem::path& path);
void save_triple(const CovarianceTriple& triple, const std::filesystem::path& path);

Json distance_to_json(const DistanceResult& result, PNorm p);

enum class BoundaryFormat { Csv, Json };
BoundaryFormat parse_boundary_format(std::string_view text);

std::string boundary_to_csv(const RegionBoundary& boundary);
Json boundary_to_json(const RegionBoundary& boundary);
RegionBoundary boundary_from_json(const Json& j);
void emit_boundary(const RegionBoundary& boundary, const std::filesystem::path& path,
                   BoundaryFormat format = BoundaryFormat::Csv);

// 17 significant digits
std::string format_double(double x);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace covmur
