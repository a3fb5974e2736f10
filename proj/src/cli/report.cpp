#include "shiftlab/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "shiftlab/errors.hpp"
#include "shiftlab/parse_util.hpp"

namespace shiftlab::cli {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ContractError("cannot write " + path.string());
  return out;
}

nlohmann::json real_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(x > 0 ? "inf" : x < 0 ? "-inf" : "nan");
}

}  // namespace

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_function_table(const std::filesystem::path& path, const GridFunction& f) {
  std::ofstream out = open_out(path);
  out << "t_cell_start,value_re,value_im\n";
  const auto v = f.values();
  for (std::size_t k = 0; k < v.size(); ++k) {
    out << format_real(static_cast<double>(k) * f.step()) << ',' << format_real(v[k].real()) << ','
        << format_real(v[k].imag()) << '\n';
  }
}

GridFunction read_function_table(const std::filesystem::path& path, SpaceTag tag, double fallback_step) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot read function table " + path.string());
  std::vector<double> ts;
  std::vector<Complex> values;
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto cols = split(body, ',');
    if (row == 1 && !cols.empty() && cols[0] == "t_cell_start") continue;
    if (cols.size() != 3) {
      throw ContractError(path.string() + " row " + std::to_string(row) + ": expected 3 columns");
    }
    ts.push_back(parse_real(cols[0], "t_cell_start"));
    values.emplace_back(parse_real(cols[1], "value_re"), parse_real(cols[2], "value_im"));
  }
  if (values.empty()) throw ContractError(path.string() + ": function table has no rows");
  const double step = ts.size() > 1 ? ts[1] - ts[0] : fallback_step;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double expected = static_cast<double>(k) * step;
    if (std::fabs(ts[k] - expected) > 1e-9 * std::max(1.0, expected)) {
      throw ContractError(path.string() + ": rows must be uniform cells starting at t = 0");
    }
  }
  return GridFunction(step, std::move(values), tag);
}

void write_orbit_csv(const std::filesystem::path& path, const OrbitRecord& record) {
  std::ofstream out = open_out(path);
  const bool with_distance =
      !record.entries.empty() && record.entries.front().distance.has_value();
  out << "n,norm_Tn,norm_Sn,bound_Sn" << (with_distance ? ",dist_to_target" : "") << '\n';
  for (const OrbitEntry& e : record.entries) {
    out << e.n << ',' << format_real(e.norm_Tn) << ',' << format_real(e.norm_Sn) << ','
        << format_real(e.bound_Sn);
    if (with_distance) out << ',' << format_real(e.distance.value_or(NAN));
    out << '\n';
  }
}

nlohmann::json to_json(const Verdict& v) {
  return {{"name", v.name},
          {"pass", v.pass},
          {"applicable", v.applicable},
          {"status", !v.applicable ? "not applicable" : v.pass ? "pass" : "fail"},
          {"measured", real_or_null(v.measured)},
          {"bound", real_or_null(v.bound)},
          {"runtime_seconds", v.runtime_seconds},
          {"detail", v.detail}};
}

nlohmann::json to_json(const OrbitRecord& r) {
  nlohmann::json hits = nlohmann::json::array();
  for (const TargetHit& h : r.hits) {
    hits.push_back({{"target", h.target},
                    {"n", h.n ? nlohmann::json(*h.n) : nlohmann::json(nullptr)},
                    {"best_distance", real_or_null(h.best_distance)}});
  }
  nlohmann::json verdicts = nlohmann::json::array();
  for (const Verdict& v : r.verdicts) verdicts.push_back(to_json(v));
  return {{"operator", r.operator_descriptor},
          {"function_id", r.function_id},
          {"iterates", r.entries.size()},
          {"hits", hits},
          {"verdicts", verdicts}};
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

}  // namespace shiftlab::cli
