#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "derham/analysis.hpp"
#include "derham/errors.hpp"
#include "derham/stationary.hpp"

namespace derham::cli {

using nlohmann::ordered_json;

/// Scalars are written as strings: "p/q" when exact, shortest round-trip
/// decimal otherwise. Both forms parse back to the same value and mode.
ordered_json to_json(const Scalar& x);
ordered_json to_json(const MoebiusMatrix& m);
ordered_json to_json(const DimensionBounds& b);
ordered_json to_json(const ClassificationReport& r);
ordered_json to_json(const StationarityReport& r);

/// Report of `validate`. `sys` is null when validation failed.
ordered_json validation_json(const MoebiusMatrix& a0, const MoebiusMatrix& a1,
                             const DeRhamSystem* sys, const std::vector<Violation>& violations);

/// Header object shared by every JSON report.
ordered_json report_header(const std::string& command);

/// Shortest decimal that reads back to the same double.
std::string format_number(double x);

}  // namespace derham::cli
