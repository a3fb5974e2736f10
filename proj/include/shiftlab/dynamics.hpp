#pragma once

// Orchestrated property suites over a ShiftOperator. Property failures are
// reported as verdicts, never thrown.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shiftlab/constructions.hpp"
#include "shiftlab/grid_function.hpp"
#include "shiftlab/shift_operator.hpp"

namespace shiftlab {

struct Verdict {
  std::string name;
  bool pass = false;
  bool applicable = true;
  double measured = 0.0;
  double bound = 0.0;
  double runtime_seconds = 0.0;
  std::string detail;
};

struct OrbitEntry {
  int n = 0;
  double norm_Tn = 0.0;
  double norm_Sn = 0.0;
  double bound_Sn = 0.0;  // s_power_bound(n) * ||x||
  std::optional<double> distance;
};

struct TargetHit {
  std::size_t target = 0;
  std::optional<int> n;  // first n with distance <= tolerance
  double best_distance = 0.0;
};

/// orb(x, T) = {T^n x : n >= 0} sampled for n = 0..n_max.
struct OrbitRecord {
  std::string operator_descriptor;
  std::string function_id;
  std::vector<OrbitEntry> entries;
  std::vector<TargetHit> hits;
  std::vector<Verdict> verdicts;
};

/// Records ||T^n f|| and ||S^n f|| for n = 0..n_max with verdicts
/// "decay_T_annihilation" (T^n f = 0 once n a covers the support) and
/// "decay_S_bound" (||S^n f|| <= bound_Sn).
OrbitRecord run_decay_suite(const ShiftOperator& op, const GridFunction& f, int n_max,
                            std::string function_id = "f");

/// For each target, the first n <= n_max with distance(T^n x, target) <= tolerance.
/// Entry distances are the minimum over targets.
OrbitRecord density_probe(const ShiftOperator& op, const GridFunction& x,
                          std::span<const GridFunction> targets, double tolerance, int n_max,
                          std::string function_id = "x");

struct SuiteBudget {
  double step = 0.125;
  double horizon = 64.0;
  int n_max = 30;
  int blocks = 40;
  double tolerance = 0.1;
  int target_count = 5;
  int lambda_moduli = 8;
  int lambda_phases = 8;
  double lambda_min = 0.5;
  double lambda_max = 10.0;
  int random_trials = 100;
  int witness_trials = 50;
  int witness_n_max = 50;
  std::vector<int> periods{1, 2, 4, 8};
  std::uint64_t seed = 20240917;
  /// Sub-suite names to run; empty runs all of `suite_names()`.
  std::vector<std::string> select;
};

/// right_inverse, decay, witness, periodic, eigen, spectrum, operator_norm,
/// unboundedness, hypercyclic.
const std::vector<std::string>& suite_names();

struct SuiteReport {
  std::vector<Verdict> verdicts;
  std::vector<OrbitRecord> records;

  /// Every applicable verdict passed.
  bool all_pass() const;
};

SuiteReport verify_theorem_suite(const ShiftOperator& op, const SuiteBudget& budget);

/// Lambda samples of the eigen sub-suite. Bounded: 16 inside the disk of
/// radius ||w||_inf and 8 with modulus in (r, 2r]. Unbounded: `lambda_moduli`
/// log-spaced moduli in [lambda_min, lambda_max] times `lambda_phases` phases.
std::vector<Complex> eigen_lambda_grid(const ShiftOperator& op, const SuiteBudget& budget);

}  // namespace shiftlab
