#pragma once

// Report files. Function tables are CSV with header
// `t_cell_start,value_re,value_im`, one row per stored cell (C0: per node),
// values printed with %.17g so a reload is bit-exact.

#include <filesystem>
#include <string>

#include "json.hpp"

#include "shiftlab/dynamics.hpp"
#include "shiftlab/grid_function.hpp"

namespace shiftlab::cli {

void write_function_table(const std::filesystem::path& path, const GridFunction& f);

/// Step is recovered from the rows; a single-row table needs `fallback_step`.
GridFunction read_function_table(const std::filesystem::path& path, SpaceTag tag, double fallback_step);

/// Columns n,norm_Tn,norm_Sn,bound_Sn[,dist_to_target]; the distance column
/// appears only when entries carry distances.
void write_orbit_csv(const std::filesystem::path& path, const OrbitRecord& record);

nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const OrbitRecord& r);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// Shortest round-trip decimal for a double.
std::string format_real(double x);

}  // namespace shiftlab::cli
