#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "shiftlab/constructions.hpp"
#include "shiftlab/dynamics.hpp"

using namespace shiftlab;

namespace {

constexpr double h = 0.125;

const Verdict* find(const std::vector<Verdict>& vs, const std::string& name) {
  auto it = std::find_if(vs.begin(), vs.end(), [&](const Verdict& v) { return v.name == name; });
  return it == vs.end() ? nullptr : &*it;
}

}  // namespace

TEST_CASE("run_decay_suite: unit indicator is annihilated after one step") {
  for (const WeightFunction& w : {WeightFunction::constant(2.0), WeightFunction::power(2.0),
                                  WeightFunction::polynomial({2.0, 1.0}),
                                  WeightFunction::table(0.5, {1.5, 3.0, 1.25})}) {
    for (const Space& sp : {Space::lp(1), Space::lp(2), Space::c0()}) {
      const ShiftOperator op(w, 1.0, sp);
      const OrbitRecord rec = run_decay_suite(op, default_seed(op, h), 20);
      REQUIRE(rec.entries.size() == 21);
      for (std::size_t n = 1; n < rec.entries.size(); ++n) CHECK(rec.entries[n].norm_Tn == 0.0);
      CHECK(find(rec.verdicts, "decay_T_annihilation")->pass);
      CHECK(find(rec.verdicts, "decay_S_bound")->pass);
    }
  }
}

TEST_CASE("run_decay_suite entries reproduce the verdicts") {
  const ShiftOperator op(WeightFunction::polynomial({2.0, 1.0}), 0.5, Space::lp(2));
  const GridFunction f = test_family(4, h, SpaceTag::Lp);
  const OrbitRecord rec = run_decay_suite(op, f, 15);
  const std::size_t start = (f.support_cells() + 3) / 4;
  double tail = 0.0, ratio = 0.0;
  for (const OrbitEntry& e : rec.entries) {
    if (static_cast<std::size_t>(e.n) >= start) tail = std::max(tail, e.norm_Tn);
    if (e.bound_Sn > 0) ratio = std::max(ratio, e.norm_Sn / e.bound_Sn);
    CHECK(e.bound_Sn == op.s_power_bound(e.n, h) * op.norm(f));
  }
  CHECK(find(rec.verdicts, "decay_T_annihilation")->measured == tail);
  CHECK(find(rec.verdicts, "decay_S_bound")->measured == ratio);
}

TEST_CASE("density_probe examples") {
  const ShiftOperator op(WeightFunction::constant(2.0), 1.0, Space::lp(1));
  std::vector<GridFunction> targets;
  for (std::uint64_t i = 1; i <= 5; ++i) targets.push_back(test_family(i, h, SpaceTag::Lp));
  const HypercyclicVector hv = hypercyclic_vector(op, targets, 0.1);
  const OrbitRecord rec = density_probe(op, hv.vector, targets, 0.1, hv.exponents.back());
  for (const TargetHit& hit : rec.hits) CHECK(hit.n.has_value());
  CHECK(find(rec.verdicts, "density_hits")->pass);

  const OrbitRecord zero = density_probe(op, GridFunction::zero(h, SpaceTag::Lp), targets, 0.1, 20);
  for (const TargetHit& hit : zero.hits) CHECK_FALSE(hit.n.has_value());
  CHECK_FALSE(find(zero.verdicts, "density_hits")->pass);

  const GridFunction x = periodic_point(op, default_seed(op, h), 1, 30);
  const std::vector<GridFunction> tx{op.apply_T(x)};
  const OrbitRecord per = density_probe(op, x, tx, 0.1, 5);
  REQUIRE(per.hits[0].n.has_value());
  CHECK(*per.hits[0].n <= 1);
  CHECK(per.entries[1].distance.value() == 0.0);
}

TEST_CASE("verify_theorem_suite: Constant(2) on L1 passes") {
  const ShiftOperator op(WeightFunction::constant(2.0), 1.0, Space::lp(1));
  const SuiteReport r = verify_theorem_suite(op, SuiteBudget{});
  for (const Verdict& v : r.verdicts) {
    INFO(v.name << " measured=" << v.measured << " bound=" << v.bound << " " << v.detail);
    CHECK((v.pass || !v.applicable));
  }
  CHECK(r.all_pass());
  CHECK_FALSE(find(r.verdicts, "unboundedness_growth")->applicable);
  CHECK(find(r.verdicts, "operator_norm")->applicable);
}

TEST_CASE("verify_theorem_suite: Power(2) on L2 with a = 0.5 passes") {
  const ShiftOperator op(WeightFunction::power(2.0), 0.5, Space::lp(2));
  const SuiteReport r = verify_theorem_suite(op, SuiteBudget{});
  for (const Verdict& v : r.verdicts) {
    INFO(v.name << " measured=" << v.measured << " " << v.detail);
    CHECK((v.pass || !v.applicable));
  }
  CHECK(find(r.verdicts, "eigen_membership")->applicable);
  CHECK(eigen_lambda_grid(op, SuiteBudget{}).size() == 64);
  CHECK_FALSE(find(r.verdicts, "operator_norm")->applicable);
}

TEST_CASE("verify_theorem_suite: Polynomial on C0 routes periodic to not applicable") {
  const ShiftOperator op(WeightFunction::polynomial({2.0, 1.0}), 1.0, Space::c0());
  const SuiteReport r = verify_theorem_suite(op, SuiteBudget{});
  CHECK(r.all_pass());
  CHECK(find(r.verdicts, "hypercyclic_schedule")->pass);
  CHECK(find(r.verdicts, "density_hits")->pass);
  CHECK_FALSE(find(r.verdicts, "periodic_exactness")->applicable);
  CHECK_FALSE(find(r.verdicts, "periodic_approx_bound")->applicable);
}

TEST_CASE("eigen lambda grid for bounded weights") {
  const ShiftOperator op(WeightFunction::constant(2.0), 1.0, Space::lp(1));
  const auto grid = eigen_lambda_grid(op, SuiteBudget{});
  REQUIRE(grid.size() == 24);
  CHECK(std::count_if(grid.begin(), grid.end(), [](Complex z) { return std::abs(z) < 2.0; }) == 16);
  CHECK(std::count_if(grid.begin(), grid.end(), [](Complex z) { return std::abs(z) > 2.0 && std::abs(z) <= 4.0 + 1e-12; }) == 8);
}

TEST_CASE("selection and determinism") {
  const ShiftOperator op(WeightFunction::polynomial({2.0, 1.0}), 1.0, Space::lp(2));
  SuiteBudget b;
  b.select = {"right_inverse", "hypercyclic"};
  const SuiteReport r1 = verify_theorem_suite(op, b);
  const SuiteReport r2 = verify_theorem_suite(op, b);
  REQUIRE(r1.verdicts.size() == 4);
  for (std::size_t i = 0; i < r1.verdicts.size(); ++i) {
    CHECK(r1.verdicts[i].name == r2.verdicts[i].name);
    CHECK(r1.verdicts[i].measured == r2.verdicts[i].measured);
  }
  REQUIRE(r1.records.size() == r2.records.size());
  for (std::size_t i = 0; i < r1.records.size(); ++i) {
    REQUIRE(r1.records[i].entries.size() == r2.records[i].entries.size());
    for (std::size_t n = 0; n < r1.records[i].entries.size(); ++n) {
      CHECK(r1.records[i].entries[n].norm_Tn == r2.records[i].entries[n].norm_Tn);
      CHECK(r1.records[i].entries[n].distance == r2.records[i].entries[n].distance);
    }
  }
}

TEST_CASE("bounded and unbounded routing") {
  SuiteBudget b;
  b.select = {"operator_norm", "unboundedness"};
  const SuiteReport bounded = verify_theorem_suite(ShiftOperator(WeightFunction::constant(2.0), 1.0, Space::lp(2)), b);
  CHECK(find(bounded.verdicts, "operator_norm")->applicable);
  CHECK_FALSE(find(bounded.verdicts, "unboundedness_growth")->applicable);
  const SuiteReport unbounded = verify_theorem_suite(ShiftOperator(WeightFunction::power(2.0), 1.0, Space::lp(2)), b);
  CHECK_FALSE(find(unbounded.verdicts, "operator_norm")->applicable);
  CHECK(find(unbounded.verdicts, "unboundedness_growth")->applicable);
  CHECK(unbounded.all_pass());
}

TEST_CASE("table weight suite corroborates only provable spectral regions") {
  const ShiftOperator op(WeightFunction::table(0.5, {1.5, 3.0, 2.0, 1.25}), 0.5, Space::lp(2));
  const SuiteReport r = verify_theorem_suite(op, SuiteBudget{});
  for (const Verdict& v : r.verdicts) {
    INFO(v.name << " measured=" << v.measured << " " << v.detail);
    CHECK((v.pass || !v.applicable));
  }
}
