#include "shiftlab/dynamics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "shiftlab/errors.hpp"

namespace shiftlab {
namespace {

constexpr double kExactRelative = 1e-12;
constexpr double kRightInverseAbsolute = 1e-13;

std::size_t blocks_needed(std::size_t cells, std::size_t s) { return (cells + s - 1) / s; }

GridFunction random_function(std::mt19937_64& rng, double step, std::size_t cells, SpaceTag tag) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Complex> v(cells + (tag == SpaceTag::C0 ? 1 : 0));
  for (std::size_t k = 0; k < cells; ++k) v[k] = Complex(unit(rng), unit(rng));
  return GridFunction(step, std::move(v), tag);
}

Verdict make(std::string name, bool pass, double measured, double bound, std::string detail = {}) {
  Verdict v;
  v.name = std::move(name);
  v.pass = pass;
  v.measured = measured;
  v.bound = bound;
  v.detail = std::move(detail);
  return v;
}

Verdict not_applicable(std::string name, std::string why) {
  Verdict v = make(std::move(name), true, 0.0, 0.0, std::move(why));
  v.applicable = false;
  return v;
}

}  // namespace

OrbitRecord run_decay_suite(const ShiftOperator& op, const GridFunction& f, int n_max,
                            std::string function_id) {
  OrbitRecord rec{op.describe(), std::move(function_id), {}, {}, {}};
  const double fnorm = op.norm(f);
  const std::size_t s = op.shift_cells(f.step());
  const int annihilation = static_cast<int>(blocks_needed(f.support_cells(), s));

  double worst_tail = 0.0;
  double worst_ratio = 0.0;
  bool s_ok = true;
  for (int n = 0; n <= n_max; ++n) {
    OrbitEntry e;
    e.n = n;
    e.norm_Tn = op.norm(op.apply_Tn(f, n));
    e.norm_Sn = op.norm(op.apply_Sn(f, n));
    e.bound_Sn = op.s_power_bound(n, f.step()) * fnorm;
    if (n >= annihilation) worst_tail = std::max(worst_tail, e.norm_Tn);
    if (e.norm_Sn > e.bound_Sn * (1.0 + kExactRelative)) s_ok = false;
    if (e.bound_Sn > 0.0) worst_ratio = std::max(worst_ratio, e.norm_Sn / e.bound_Sn);
    rec.entries.push_back(e);
  }
  rec.verdicts.push_back(make("decay_T_annihilation", worst_tail == 0.0, worst_tail, 0.0,
                              "max ||T^n f|| over n >= " + std::to_string(annihilation)));
  rec.verdicts.push_back(make("decay_S_bound", s_ok, worst_ratio, 1.0,
                              "max ||S^n f|| / (c_n ||f||)"));
  return rec;
}

OrbitRecord density_probe(const ShiftOperator& op, const GridFunction& x,
                          std::span<const GridFunction> targets, double tolerance, int n_max,
                          std::string function_id) {
  if (!(tolerance > 0.0)) throw ContractError("density probe needs a positive tolerance");
  OrbitRecord rec{op.describe(), std::move(function_id), {}, {}, {}};
  for (std::size_t t = 0; t < targets.size(); ++t) {
    rec.hits.push_back(TargetHit{t, std::nullopt, std::numeric_limits<double>::infinity()});
  }
  const double xnorm = op.norm(x);
  for (int n = 0; n <= n_max; ++n) {
    const GridFunction tn = op.apply_Tn(x, n);
    OrbitEntry e;
    e.n = n;
    e.norm_Tn = op.norm(tn);
    e.norm_Sn = op.norm(op.apply_Sn(x, n));
    e.bound_Sn = op.s_power_bound(n, x.step()) * xnorm;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const double d = distance(tn, targets[t], op.space().norm());
      best = std::min(best, d);
      TargetHit& hit = rec.hits[t];
      hit.best_distance = std::min(hit.best_distance, d);
      if (!hit.n && d <= tolerance) hit.n = n;
    }
    if (!targets.empty()) e.distance = best;
    rec.entries.push_back(e);
  }
  const auto misses = std::count_if(rec.hits.begin(), rec.hits.end(), [](const TargetHit& h) { return !h.n; });
  rec.verdicts.push_back(make("density_hits", misses == 0, static_cast<double>(misses), 0.0,
                              "targets not reached within n_max"));
  return rec;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"right_inverse", "decay",         "witness",
                                              "periodic",      "eigen",         "spectrum",
                                              "operator_norm", "unboundedness", "hypercyclic"};
  return names;
}

bool SuiteReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return !v.applicable || v.pass; });
}

std::vector<Complex> eigen_lambda_grid(const ShiftOperator& op, const SuiteBudget& budget) {
  std::vector<Complex> grid;
  auto ring = [&](double modulus, int phases, double offset) {
    for (int j = 0; j < phases; ++j) {
      grid.push_back(std::polar(modulus, 2.0 * std::numbers::pi * (j + offset) / phases));
    }
  };
  if (op.bounded()) {
    const double r = op.weight().sup_norm();
    for (double f : {0.25, 0.5, 0.75, 0.95}) ring(f * r, 4, 0.125);
    for (double f : {1.25, 1.5, 1.75, 2.0}) ring(f * r, 2, 0.25);
  } else {
    const int m = std::max(1, budget.lambda_moduli);
    for (int i = 0; i < m; ++i) {
      const double t = m == 1 ? 0.0 : static_cast<double>(i) / (m - 1);
      ring(budget.lambda_min * std::pow(budget.lambda_max / budget.lambda_min, t), budget.lambda_phases, 0.0);
    }
  }
  return grid;
}

namespace {

class SuiteRunner {
 public:
  SuiteRunner(const ShiftOperator& op, const SuiteBudget& b)
      : op_(op), b_(b), s_(op.shift_cells(b.step)), tag_(op.space().tag()) {}

  void run(const std::string& name, std::size_t index, SuiteReport& report) {
    std::mt19937_64 rng(b_.seed + 1000003ULL * index);
    const auto start = std::chrono::steady_clock::now();
    std::vector<Verdict> out;
    if (name == "right_inverse") out = right_inverse(rng);
    else if (name == "decay") out = decay(report);
    else if (name == "witness") out = witness(rng);
    else if (name == "periodic") out = periodic(rng);
    else if (name == "eigen") out = eigen(rng);
    else if (name == "spectrum") out = spectrum();
    else if (name == "operator_norm") out = operator_norm();
    else if (name == "unboundedness") out = unboundedness();
    else if (name == "hypercyclic") out = hypercyclic(report);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (Verdict& v : out) {
      v.runtime_seconds = elapsed / static_cast<double>(out.size());
      report.verdicts.push_back(std::move(v));
    }
  }

 private:
  const ShiftOperator& op_;
  const SuiteBudget& b_;
  std::size_t s_;
  SpaceTag tag_;

  Norm norm_kind() const { return op_.space().norm(); }

  std::vector<Verdict> right_inverse(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> len(1, 6 * s_);
    double worst = 0.0;
    for (int t = 0; t < b_.random_trials; ++t) {
      const GridFunction f = random_function(rng, b_.step, len(rng), tag_);
      worst = std::max(worst, distance(op_.apply_T(op_.apply_S(f)), f, norm_kind()));
    }
    const GridFunction chi = default_seed(op_, b_.step);
    const double left = distance(op_.apply_S(op_.apply_T(chi)), chi, norm_kind());
    return {make("right_inverse", worst <= kRightInverseAbsolute, worst, kRightInverseAbsolute,
                 "max ||T S f - f|| over random f"),
            make("not_left_inverse", left > 0.0, left, 0.0, "||S T chi_[0,a) - chi_[0,a)|| > 0")};
  }

  std::vector<Verdict> decay(SuiteReport& report) {
    std::vector<GridFunction> fs{default_seed(op_, b_.step)};
    for (std::uint64_t i = 1; i <= 3; ++i) fs.push_back(test_family(i, b_.step, tag_));
    double worst_tail = 0.0, worst_ratio = 0.0;
    bool t_ok = true, s_ok = true;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      OrbitRecord rec = run_decay_suite(op_, fs[i], b_.n_max, i == 0 ? "chi_[0,a)" : "family:" + std::to_string(i));
      t_ok = t_ok && rec.verdicts[0].pass;
      s_ok = s_ok && rec.verdicts[1].pass;
      worst_tail = std::max(worst_tail, rec.verdicts[0].measured);
      worst_ratio = std::max(worst_ratio, rec.verdicts[1].measured);
      report.records.push_back(std::move(rec));
    }
    return {make("decay_T_annihilation", t_ok, worst_tail, 0.0, "T^n f = 0 once na covers supp f"),
            make("decay_S_bound", s_ok, worst_ratio, 1.0, "max ||S^n f|| / (c_n ||f||)")};
  }

  std::vector<Verdict> witness(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> big_n(1, 2);
    double worst_exact = 0.0, worst_ratio = 0.0;
    for (int t = 0; t < b_.witness_trials; ++t) {
      const int N = big_n(rng);
      std::uniform_int_distribution<int> small_n(N, 12);
      const int n = small_n(rng);
      const GridFunction x = random_function(rng, b_.step, N * s_, tag_);
      const GridFunction y = random_function(rng, b_.step, N * s_, tag_);
      const TransitivityWitness w = transitivity_witness(op_, x, y, n);
      worst_exact = std::max(worst_exact, distance(op_.apply_Tn(w.z, n), y, norm_kind()) / op_.norm(y));
      worst_ratio = std::max(worst_ratio, w.distance / w.bound);
    }
    return {make("witness_exactness", worst_exact <= kExactRelative, worst_exact, kExactRelative,
                 "max ||T^n z_n - y|| / ||y||"),
            make("witness_bound", worst_ratio <= 1.0 + kExactRelative, worst_ratio, 1.0,
                 "max ||z_n - x|| / (c_n ||y||)")};
  }

  std::vector<Verdict> periodic(std::mt19937_64& rng) {
    if (op_.space().kind != Space::Kind::Lp) {
      return {not_applicable("periodic_exactness", "periodic points are constructed on L_p only"),
              not_applicable("periodic_approx_bound", "periodic points are constructed on L_p only")};
    }
    double worst_exact = 0.0, worst_ratio = 0.0;
    for (int N : b_.periods) {
      const std::size_t period = static_cast<std::size_t>(N) * s_;
      for (const GridFunction& y : {default_seed(op_, b_.step), random_function(rng, b_.step, period, tag_)}) {
        const PeriodicApprox pa = periodic_approx(op_, y, N, b_.blocks);
        const GridFunction tn = op_.apply_Tn(pa.approx, N);
        const double defect = restricted_distance(op_, tn, pa.approx, period * (b_.blocks - 1));
        worst_exact = std::max(worst_exact, defect / op_.norm(pa.approx));
        worst_ratio = std::max(worst_ratio, pa.error / pa.bound);
      }
    }
    return {make("periodic_exactness", worst_exact <= kExactRelative, worst_exact, kExactRelative,
                 "max ||T^N x_N - x_N|| on non-terminal blocks / ||x_N||"),
            make("periodic_approx_bound", worst_ratio <= 1.0 + kExactRelative, worst_ratio, 1.0,
                 "max ||y - y_N|| / bound")};
  }

  std::vector<Verdict> eigen(std::mt19937_64& rng) {
    if (op_.space().kind != Space::Kind::Lp) {
      return {not_applicable("eigen_residual", "spectral results are stated on L_p"),
              not_applicable("eigen_membership", "spectral results are stated on L_p")};
    }
    const std::vector<GridFunction> seeds{default_seed(op_, b_.step), random_function(rng, b_.step, s_, tag_)};
    double worst = 0.0;
    int mismatches = 0;
    const double inf_w = op_.origin_floor();
    const double sup_w = op_.weight().sup_norm();
    for (Complex lambda : eigen_lambda_grid(op_, b_)) {
      for (const GridFunction& seed : seeds) {
        const EigenPair ep = eigenfunction(op_, lambda, seed, b_.blocks);
        worst = std::max(worst, ep.residual);
        const double r = std::abs(lambda);
        if (op_.bounded()) {
          // Provable corroboration only: decay below inf|w|, divergence above sup|w|.
          if (r > sup_w && !ep.tail_divergent) ++mismatches;
          if (r < inf_w && ep.tail_divergent) ++mismatches;
          if (ep.in_point_spectrum != (r < sup_w)) ++mismatches;
        } else if (!ep.in_point_spectrum || ep.tail_divergent) {
          ++mismatches;
        }
      }
    }
    return {make("eigen_residual", worst <= kExactRelative, worst, kExactRelative,
                 "max ||Tx - lambda x|| / ||x|| on non-terminal blocks"),
            make("eigen_membership", mismatches == 0, mismatches, 0.0,
                 "lambda samples whose block masses contradict the classification")};
  }

  std::vector<Verdict> spectrum() {
    if (op_.space().kind != Space::Kind::Lp) {
      return {not_applicable("spectrum_classification", "spectral results are stated on L_p")};
    }
    const SpectrumClassification c = classify_spectrum(op_);
    int issues = 0;
    if (c.bounded_source != op_.bounded()) ++issues;
    const double r = op_.bounded() ? op_.weight().sup_norm() : 1.0;
    for (double f : {0.0, 0.5, 0.999, 1.0, 1.001, 2.0, 10.0}) {
      for (int j = 0; j < 8; ++j) {
        const Complex z = std::polar(f * r, 2.0 * std::numbers::pi * j / 8.0);
        const int members = int(c.point.contains(z)) + int(c.continuous.contains(z)) + int(c.residual.contains(z));
        if (members > 1) ++issues;  // pairwise disjoint
        const bool in_spectrum = members == 1;
        const bool expected = !op_.bounded() || std::abs(z) <= r * (1.0 + 1e-12);
        if (in_spectrum != expected) ++issues;
      }
    }
    if (op_.bounded()) {
      const double est = op_.operator_norm_estimate(b_.random_trials / 4, b_.step, b_.seed);
      if (std::fabs(est - c.continuous.radius) > 1e-6) ++issues;
    }
    return {make("spectrum_classification", issues == 0, issues, 0.0,
                 "point/continuous/residual regions disjoint, routed by boundedness, radius = ||T||")};
  }

  std::vector<Verdict> operator_norm() {
    if (!op_.bounded()) return {not_applicable("operator_norm", "operator is unbounded")};
    const std::vector<double> ratios = op_.norm_trial_ratios(b_.random_trials, b_.step, b_.seed);
    const double est = *std::max_element(ratios.begin(), ratios.end());
    const double sup = op_.weight().sup_norm();
    const bool below = std::all_of(ratios.begin(), ratios.end(), [&](double r) { return r <= sup + 1e-12; });
    return {make("operator_norm", below && std::fabs(est - sup) <= 1e-6, est, sup,
                 "max ||Tf|| / ||f|| vs ||w||_inf")};
  }

  std::vector<Verdict> unboundedness() {
    if (op_.bounded()) return {not_applicable("unboundedness_growth", "operator is bounded")};
    double prev = -1.0;
    int drops = 0;
    double last = 0.0;
    for (int n = 1; n <= b_.witness_n_max; ++n) {
      last = op_.unboundedness_witness(n, b_.step, b_.horizon);
      if (!(last > prev)) ++drops;
      prev = last;
    }
    return {make("unboundedness_growth", drops == 0, last, static_cast<double>(drops),
                 "witness strictly increasing over n; measured = last witness, bound = drops")};
  }

  std::vector<Verdict> hypercyclic(SuiteReport& report) {
    std::vector<GridFunction> targets;
    for (int i = 1; i <= b_.target_count; ++i) targets.push_back(test_family(static_cast<std::uint64_t>(i), b_.step, tag_));
    try {
      const HypercyclicVector hv = hypercyclic_vector(op_, targets, b_.tolerance);
      const double worst = *std::max_element(hv.distances.begin(), hv.distances.end());
      OrbitRecord rec = density_probe(op_, hv.vector, targets, b_.tolerance,
                                      std::max(b_.n_max, hv.exponents.back()), "hypercyclic");
      const Verdict hits = rec.verdicts.front();
      report.records.push_back(std::move(rec));
      return {make("hypercyclic_schedule", worst <= b_.tolerance, worst, b_.tolerance,
                   "max distance(T^{m_k} x, y_k) at scheduled exponents"),
              make("density_hits", hits.pass, hits.measured, 0.0, hits.detail)};
    } catch (const OverflowError& e) {
      return {make("hypercyclic_schedule", false, std::numeric_limits<double>::infinity(), b_.tolerance, e.what()),
              make("density_hits", false, static_cast<double>(targets.size()), 0.0, e.what())};
    }
  }
};

}  // namespace

SuiteReport verify_theorem_suite(const ShiftOperator& op, const SuiteBudget& budget) {
  SuiteReport report;
  SuiteRunner runner(op, budget);
  const auto& names = suite_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!budget.select.empty() &&
        std::find(budget.select.begin(), budget.select.end(), names[i]) == budget.select.end()) {
      continue;
    }
    runner.run(names[i], i, report);
  }
  return report;
}

}  // namespace shiftlab
