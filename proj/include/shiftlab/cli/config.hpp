#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "shiftlab/dynamics.hpp"
#include "shiftlab/errors.hpp"
#include "shiftlab/shift_operator.hpp"

namespace shiftlab::cli {

/// Invalid configuration; `field()` is the dotted key at fault, e.g. "grid.step".
class ConfigError : public ContractError {
 public:
  ConfigError(std::string field, const std::string& message)
      : ContractError(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ExperimentConfig {
  std::string weight = "constant:2";
  double shift = 1.0;
  std::string space = "lp";  // "lp" or "c0"
  double p = 2.0;
  double step = 0.125;
  double horizon = 64.0;
  SuiteBudget budget;
  std::filesystem::path output_dir = "shiftlab_out";
  std::filesystem::path base_dir;  // directory of the config file

  Space resolved_space() const;
  /// Throws ConfigError naming the field when the operator cannot be built.
  ShiftOperator make_operator() const;
  nlohmann::json to_json() const;
};

/// Parses and validates. SHIFTLAB_SEED, when set, replaces suite.seed.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});

/// Enforces a/h a positive integer, L a multiple of a, tolerance > 0, p >= 1.
void validate(const ExperimentConfig& config);

}  // namespace shiftlab::cli
