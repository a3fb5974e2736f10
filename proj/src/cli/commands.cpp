#include "shiftlab/cli/commands.hpp"

#include <CLI11.hpp>
#include <iomanip>
#include <optional>
#include <ostream>

#include "shiftlab/cli/config.hpp"
#include "shiftlab/cli/function_spec.hpp"
#include "shiftlab/cli/report.hpp"
#include "shiftlab/constructions.hpp"
#include "shiftlab/dynamics.hpp"
#include "shiftlab/parse_util.hpp"

namespace shiftlab::cli {
namespace {

struct Failure {
  int code;
  std::string message;
};

struct Context {
  ExperimentConfig config;
  std::filesystem::path out_dir;
};

Context load(const std::string& config_path, const std::string& out_override) {
  Context ctx{load_config(config_path), {}};
  ctx.out_dir = out_override.empty() ? ctx.config.output_dir : std::filesystem::path(out_override);
  return ctx;
}

std::string sanitize(std::string id) {
  for (char& c : id) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  }
  return id;
}

GridFunction function_arg(const Context& ctx, const std::string& spec, const std::string& flag) {
  try {
    return parse_function(spec, ctx.config.step, ctx.config.resolved_space().tag());
  } catch (const std::exception& e) {
    throw Failure{2, flag + ": " + e.what()};
  }
}

int cmd_verify(const Context& ctx, std::ostream& out) {
  const ShiftOperator op = ctx.config.make_operator();
  const SuiteReport report = verify_theorem_suite(op, ctx.config.budget);

  nlohmann::json verdicts = nlohmann::json::array();
  for (const Verdict& v : report.verdicts) verdicts.push_back(to_json(v));
  nlohmann::json records = nlohmann::json::array();
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const OrbitRecord& r = report.records[i];
    const std::string file = "orbit_" + std::to_string(i) + "_" + sanitize(r.function_id) + ".csv";
    write_orbit_csv(ctx.out_dir / file, r);
    nlohmann::json j = to_json(r);
    j["csv"] = file;
    records.push_back(std::move(j));
  }
  const bool pass = report.all_pass();
  write_json(ctx.out_dir / "verdicts.json", {{"command", "verify"},
                                             {"operator", op.describe()},
                                             {"config", ctx.config.to_json()},
                                             {"all_pass", pass},
                                             {"verdicts", verdicts},
                                             {"orbits", records}});

  out << op.describe() << '\n';
  for (const Verdict& v : report.verdicts) {
    out << "  " << std::left << std::setw(26) << v.name << ' '
        << (!v.applicable ? "not applicable" : v.pass ? "pass" : "FAIL");
    if (v.applicable) out << "  measured=" << format_real(v.measured) << " bound=" << format_real(v.bound);
    out << '\n';
  }
  out << (pass ? "all verdicts pass" : "verdict failure") << "; report: "
      << (ctx.out_dir / "verdicts.json").string() << '\n';
  return pass ? 0 : 1;
}

int cmd_orbit(const Context& ctx, const std::string& input, const std::optional<std::string>& target,
              const std::string& csv_name, std::ostream& out) {
  const ShiftOperator op = ctx.config.make_operator();
  const GridFunction x = function_arg(ctx, input, "--input");
  OrbitRecord rec;
  if (target) {
    const std::vector<GridFunction> targets{function_arg(ctx, *target, "--target")};
    rec = density_probe(op, x, targets, ctx.config.budget.tolerance, ctx.config.budget.n_max, input);
  } else {
    rec = run_decay_suite(op, x, ctx.config.budget.n_max, input);
  }
  const std::filesystem::path csv = ctx.out_dir / csv_name;
  write_orbit_csv(csv, rec);
  nlohmann::json j = to_json(rec);
  j["command"] = "orbit";
  j["config"] = ctx.config.to_json();
  j["input"] = input;
  j["target"] = target ? nlohmann::json(*target) : nlohmann::json(nullptr);
  j["csv"] = csv.filename().string();
  std::filesystem::path sidecar = csv;
  sidecar.replace_extension(".json");
  write_json(sidecar, j);
  out << "orbit of " << input << " under " << op.describe() << ": " << rec.entries.size()
      << " iterates -> " << csv.string() << '\n';
  return 0;
}

struct ConstructFlags {
  std::string kind;
  std::optional<int> N, n, blocks;
  std::optional<std::string> lambda, seed, x, y;
  std::optional<double> tol;
  std::string output = "construct.csv";
};

void require_flags(const ConstructFlags& f) {
  struct Flag {
    const char* name;
    bool given;
    std::vector<std::string> kinds;
  };
  const std::vector<Flag> flags{
      {"--N", f.N.has_value(), {"periodic"}},
      {"--n", f.n.has_value(), {"witness"}},
      {"--lambda", f.lambda.has_value(), {"eigen"}},
      {"--tol", f.tol.has_value(), {"hypercyclic"}},
      {"--seed", f.seed.has_value(), {"periodic", "eigen"}},
      {"--blocks", f.blocks.has_value(), {"periodic", "eigen"}},
      {"--x", f.x.has_value(), {"witness"}},
      {"--y", f.y.has_value(), {"witness"}},
  };
  for (const Flag& flag : flags) {
    if (flag.given && std::find(flag.kinds.begin(), flag.kinds.end(), f.kind) == flag.kinds.end()) {
      throw Failure{2, std::string(flag.name) + " does not apply to --kind " + f.kind};
    }
  }
  auto need = [&](bool given, const char* name) {
    if (!given) throw Failure{2, "--kind " + f.kind + " requires " + name};
  };
  if (f.kind == "periodic") need(f.N.has_value(), "--N");
  if (f.kind == "witness") {
    need(f.n.has_value(), "--n");
    need(f.x.has_value(), "--x");
    need(f.y.has_value(), "--y");
  }
  if (f.kind == "eigen") need(f.lambda.has_value(), "--lambda");
}

int cmd_construct(const Context& ctx, const ConstructFlags& f, std::ostream& out) {
  require_flags(f);
  const ShiftOperator op = ctx.config.make_operator();
  const double h = ctx.config.step;
  const int blocks = f.blocks.value_or(ctx.config.budget.blocks);
  nlohmann::json side{{"command", "construct"}, {"kind", f.kind}, {"config", ctx.config.to_json()},
                      {"operator", op.describe()}};
  GridFunction result = GridFunction::zero(h, op.space().tag());

  if (f.kind == "periodic") {
    const GridFunction y = f.seed ? function_arg(ctx, *f.seed, "--seed") : default_seed(op, h);
    const PeriodicApprox pa = periodic_approx(op, y, *f.N, blocks);
    result = pa.approx;
    const std::size_t period = static_cast<std::size_t>(*f.N) * op.shift_cells(h);
    const double defect =
        restricted_distance(op, op.apply_Tn(pa.approx, *f.N), pa.approx, period * (blocks - 1));
    side.update({{"N", *f.N}, {"blocks", blocks}, {"error", pa.error}, {"bound", pa.bound},
                 {"periodicity_defect", defect}});
  } else if (f.kind == "witness") {
    const GridFunction x = function_arg(ctx, *f.x, "--x");
    const GridFunction y = function_arg(ctx, *f.y, "--y");
    const TransitivityWitness w = transitivity_witness(op, x, y, *f.n);
    result = w.z;
    side.update({{"n", *f.n}, {"error", w.distance}, {"bound", w.bound},
                 {"residual", distance(op.apply_Tn(w.z, *f.n), y, op.space().norm())}});
  } else if (f.kind == "eigen") {
    const Complex lambda = [&] {
      try {
        return parse_complex(*f.lambda, "--lambda");
      } catch (const std::exception& e) {
        throw Failure{2, e.what()};
      }
    }();
    const GridFunction seed = f.seed ? function_arg(ctx, *f.seed, "--seed") : default_seed(op, h);
    const EigenPair ep = eigenfunction(op, lambda, seed, blocks);
    result = ep.vector;
    side.update({{"lambda_re", lambda.real()}, {"lambda_im", lambda.imag()}, {"blocks", blocks},
                 {"residual", ep.residual}, {"in_point_spectrum", ep.in_point_spectrum},
                 {"tail_divergent", ep.tail_divergent}, {"block_masses", ep.block_masses}});
  } else if (f.kind == "hypercyclic") {
    const double tol = f.tol.value_or(ctx.config.budget.tolerance);
    if (!(tol > 0.0)) throw Failure{2, "--tol must be > 0"};
    std::vector<GridFunction> targets;
    for (int i = 1; i <= ctx.config.budget.target_count; ++i) {
      targets.push_back(test_family(static_cast<std::uint64_t>(i), h, op.space().tag()));
    }
    const HypercyclicVector hv = hypercyclic_vector(op, targets, tol);
    result = hv.vector;
    side.update({{"tolerance", tol}, {"exponents", hv.exponents}, {"distances", hv.distances}});
  } else {
    throw Failure{2, "--kind must be periodic, witness, eigen or hypercyclic"};
  }

  const std::filesystem::path csv = ctx.out_dir / f.output;
  write_function_table(csv, result);
  side.update({{"step", result.step()}, {"space", to_string(result.tag())}, {"cells", result.size()},
               {"table", csv.filename().string()}});
  std::filesystem::path sidecar = csv;
  sidecar.replace_extension(".json");
  write_json(sidecar, side);
  out << f.kind << " construction under " << op.describe() << " -> " << csv.string() << '\n';
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"shiftlab: weighted backward shift experiments"};
  app.require_subcommand(1);
  std::string config_path, out_dir;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "experiment config (TOML subset)")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
  };
  CLI::App* verify = app.add_subcommand("verify", "run the property suites and write verdicts");
  add_common(verify);

  CLI::App* orbit = app.add_subcommand("orbit", "tabulate ||T^n x|| and ||S^n x||");
  add_common(orbit);
  std::string input;
  std::optional<std::string> target;
  std::string orbit_csv = "orbit.csv";
  orbit->add_option("--input", input, "function spec")->required();
  orbit->add_option("--target", target, "function spec for dist_to_target");
  orbit->add_option("--csv", orbit_csv, "CSV file name inside the output directory");

  CLI::App* construct = app.add_subcommand("construct", "build a periodic point, witness, eigenfunction or hypercyclic vector");
  add_common(construct);
  ConstructFlags cf;
  construct->add_option("--kind", cf.kind, "periodic|witness|eigen|hypercyclic")->required();
  construct->add_option("--N", cf.N, "period (periodic)");
  construct->add_option("--n", cf.n, "iterate (witness)");
  construct->add_option("--lambda", cf.lambda, "eigenvalue, e.g. 1+0.5i (eigen)");
  construct->add_option("--tol", cf.tol, "hit tolerance (hypercyclic)");
  construct->add_option("--seed", cf.seed, "seed function spec (periodic, eigen)");
  construct->add_option("--blocks", cf.blocks, "truncation blocks (periodic, eigen)");
  construct->add_option("--x", cf.x, "start function spec (witness)");
  construct->add_option("--y", cf.y, "target function spec (witness)");
  construct->add_option("--output", cf.output, "table file name inside the output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "shiftlab: " << e.what() << '\n';
    return 2;
  }

  try {
    const Context ctx = load(config_path, out_dir);
    if (verify->parsed()) return cmd_verify(ctx, out);
    if (orbit->parsed()) return cmd_orbit(ctx, input, target, orbit_csv, out);
    return cmd_construct(ctx, cf, out);
  } catch (const Failure& f) {
    err << "shiftlab: " << f.message << '\n';
    return f.code;
  } catch (const ConfigError& e) {
    err << "shiftlab: invalid config field " << e.what() << '\n';
    return 2;
  } catch (const ContractError& e) {
    err << "shiftlab: " << e.what() << '\n';
    return 2;
  } catch (const BoundednessError& e) {
    err << "shiftlab: " << e.what() << '\n';
    return 2;
  } catch (const OverflowError& e) {
    err << "shiftlab: construction failed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "shiftlab: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace shiftlab::cli
