#include "shiftlab/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <cerrno>
#include <fstream>
#include <set>
#include <sstream>

#include "shiftlab/cli/toml_lite.hpp"
#include "shiftlab/parse_util.hpp"

namespace shiftlab::cli {
namespace {

using toml::Value;

class Reader {
 public:
  explicit Reader(const toml::Document& doc) : doc_(doc) {}

  const Value* find(const std::string& section, const std::string& key) {
    seen_.insert(section + "." + key);
    const auto s = doc_.find(section);
    if (s == doc_.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }

  void number(const std::string& section, const std::string& key, double& out) {
    if (const Value* v = find(section, key)) {
      if (v->kind != Value::Kind::Number) throw ConfigError(section + "." + key, "expected a number");
      out = v->number;
    }
  }

  void integer(const std::string& section, const std::string& key, int& out) {
    double d = out;
    number(section, key, d);
    if (d != std::floor(d) || std::fabs(d) > std::numeric_limits<int>::max()) {
      throw ConfigError(section + "." + key, "expected an integer");
    }
    out = static_cast<int>(d);
  }

  void string(const std::string& section, const std::string& key, std::string& out) {
    if (const Value* v = find(section, key)) {
      if (v->kind != Value::Kind::String) throw ConfigError(section + "." + key, "expected a string");
      out = v->text;
    }
  }

  void reject_unknown() const {
    for (const auto& [section, table] : doc_) {
      for (const auto& [key, value] : table) {
        const std::string name = section.empty() ? key : section + "." + key;
        if (!seen_.count(section + "." + key)) throw ConfigError(name, "unknown key");
      }
    }
  }

 private:
  const toml::Document& doc_;
  std::set<std::string> seen_;
};

std::uint64_t parse_seed(const std::string& text, const std::string& field) {
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (text.empty() || *end != '\0' || errno != 0 || text.front() == '-') {
    throw ConfigError(field, "expected a non-negative integer seed, got '" + text + "'");
  }
  return v;
}

bool is_multiple(double x, double unit) {
  const double q = x / unit;
  return q >= 1.0 - 1e-9 && std::fabs(q - std::round(q)) <= 1e-9 * std::max(1.0, q);
}

}  // namespace

Space ExperimentConfig::resolved_space() const {
  return space == "c0" ? Space::c0() : Space::lp(p);
}

ShiftOperator ExperimentConfig::make_operator() const {
  WeightFunction w = [&] {
    try {
      return WeightFunction::parse(weight, base_dir);
    } catch (const std::exception& e) {
      throw ConfigError("operator.weight", e.what());
    }
  }();
  try {
    return ShiftOperator(std::move(w), shift, resolved_space());
  } catch (const std::exception& e) {
    throw ConfigError("operator.weight", e.what());
  }
}

nlohmann::json ExperimentConfig::to_json() const {
  const SuiteBudget& b = budget;
  return {
      {"operator", {{"weight", weight}, {"shift", shift}, {"space", space}, {"p", p}}},
      {"grid", {{"step", step}, {"horizon", horizon}}},
      {"suite",
       {{"n_max", b.n_max},
        {"blocks", b.blocks},
        {"tolerance", b.tolerance},
        {"target_count", b.target_count},
        {"lambda_moduli", b.lambda_moduli},
        {"lambda_phases", b.lambda_phases},
        {"lambda_min", b.lambda_min},
        {"lambda_max", b.lambda_max},
        {"random_trials", b.random_trials},
        {"witness_trials", b.witness_trials},
        {"witness_n_max", b.witness_n_max},
        {"periods", b.periods},
        {"seed", b.seed},
        {"select", b.select}}},
      {"output", {{"dir", output_dir.string()}}},
  };
}

void validate(const ExperimentConfig& c) {
  if (c.space != "lp" && c.space != "c0") throw ConfigError("operator.space", "expected \"lp\" or \"c0\"");
  if (!(c.p >= 1.0) || !std::isfinite(c.p)) throw ConfigError("operator.p", "p must satisfy p >= 1");
  if (!(c.step > 0.0) || !std::isfinite(c.step)) throw ConfigError("grid.step", "step must be positive");
  if (!(c.shift > 0.0) || !std::isfinite(c.shift)) throw ConfigError("operator.shift", "shift must be positive");
  if (!is_multiple(c.shift, c.step)) {
    throw ConfigError("grid.step", "shift not grid-aligned: a/h = " + std::to_string(c.shift / c.step) +
                                       " is not a positive integer");
  }
  if (!(c.horizon > 0.0) || !is_multiple(c.horizon, c.shift)) {
    throw ConfigError("grid.horizon", "horizon L must be a positive multiple of the shift a");
  }
  const SuiteBudget& b = c.budget;
  if (!(b.tolerance > 0.0)) throw ConfigError("suite.tolerance", "tolerance must be > 0");
  auto positive = [](int v, const char* field) {
    if (v < 1) throw ConfigError(field, "must be >= 1");
  };
  positive(b.n_max, "suite.n_max");
  if (b.blocks < 2) throw ConfigError("suite.blocks", "must be >= 2");
  positive(b.target_count, "suite.target_count");
  positive(b.lambda_moduli, "suite.lambda_moduli");
  positive(b.lambda_phases, "suite.lambda_phases");
  positive(b.random_trials, "suite.random_trials");
  positive(b.witness_trials, "suite.witness_trials");
  positive(b.witness_n_max, "suite.witness_n_max");
  if (!(b.lambda_min > 0.0) || !(b.lambda_max >= b.lambda_min)) {
    throw ConfigError("suite.lambda_min", "need 0 < lambda_min <= lambda_max");
  }
  if (b.periods.empty()) throw ConfigError("suite.periods", "must not be empty");
  for (int N : b.periods) positive(N, "suite.periods");
  for (const std::string& name : b.select) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw ConfigError("suite.select", "unknown sub-suite '" + name + "'");
    }
  }
  c.make_operator();
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  const toml::Document doc = [&] {
    try {
      return toml::parse(text);
    } catch (const ContractError& e) {
      throw ConfigError("config", e.what());
    }
  }();
  Reader r(doc);
  ExperimentConfig c;
  c.base_dir = base_dir;
  r.string("operator", "weight", c.weight);
  r.number("operator", "shift", c.shift);
  r.string("operator", "space", c.space);
  std::transform(c.space.begin(), c.space.end(), c.space.begin(), [](unsigned char ch) { return std::tolower(ch); });
  r.number("operator", "p", c.p);
  r.number("grid", "step", c.step);
  r.number("grid", "horizon", c.horizon);

  SuiteBudget& b = c.budget;
  r.integer("suite", "n_max", b.n_max);
  r.integer("suite", "blocks", b.blocks);
  r.number("suite", "tolerance", b.tolerance);
  r.integer("suite", "target_count", b.target_count);
  r.integer("suite", "lambda_moduli", b.lambda_moduli);
  r.integer("suite", "lambda_phases", b.lambda_phases);
  r.number("suite", "lambda_min", b.lambda_min);
  r.number("suite", "lambda_max", b.lambda_max);
  r.integer("suite", "random_trials", b.random_trials);
  r.integer("suite", "witness_trials", b.witness_trials);
  r.integer("suite", "witness_n_max", b.witness_n_max);
  if (const Value* v = r.find("suite", "periods")) {
    if (v->kind != Value::Kind::Array) throw ConfigError("suite.periods", "expected an array of integers");
    b.periods.clear();
    for (const Value& item : v->items) {
      if (item.kind != Value::Kind::Number || item.number != std::floor(item.number) || item.number > 1e6) {
        throw ConfigError("suite.periods", "expected an array of integers");
      }
      b.periods.push_back(static_cast<int>(item.number));
    }
  }
  if (const Value* v = r.find("suite", "seed")) {
    if (v->kind != Value::Kind::Number) throw ConfigError("suite.seed", "expected an integer");
    b.seed = parse_seed(v->text, "suite.seed");
  }
  if (const Value* v = r.find("suite", "select")) {
    if (v->kind != Value::Kind::Array) throw ConfigError("suite.select", "expected an array of names");
    for (const Value& item : v->items) {
      if (item.kind != Value::Kind::String) throw ConfigError("suite.select", "expected an array of names");
      b.select.push_back(item.text);
    }
  }
  std::string out = c.output_dir.string();
  r.string("output", "dir", out);
  c.output_dir = out;
  r.reject_unknown();

  b.step = c.step;
  b.horizon = c.horizon;
  if (const char* env = std::getenv("SHIFTLAB_SEED"); env && *env) b.seed = parse_seed(env, "SHIFTLAB_SEED");
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw ConfigError("--config", "cannot read " + path.string());
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

}  // namespace shiftlab::cli
