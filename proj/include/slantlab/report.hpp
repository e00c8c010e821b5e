#pragma once

#include <json.hpp>

#include <string>

namespace slantlab {

// %.17g: round-trip exact for doubles
std::string format_double(double v);

// Deterministic JSON serialization: keys sorted (nlohmann::json object
// ordering), doubles printed with 17 significant digits. Non-finite numbers
// serialize as null.
std::string dump_json(const nlohmann::json& j);

// CSV rendering for the grid-shaped reports (scan, audit-inequality):
// one row per grid point, flattened columns. Fails for other commands.
std::string report_csv(const nlohmann::json& report);

}  // namespace slantlab
