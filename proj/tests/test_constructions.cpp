#include <doctest.h>

#include <cmath>
#include <random>

#include "shiftlab/constructions.hpp"
#include "shiftlab/errors.hpp"

using namespace shiftlab;

namespace {

constexpr double h = 0.125;

GridFunction chi(double lo, double hi, Complex amp = 1.0, SpaceTag tag = SpaceTag::Lp) {
  return GridFunction::indicator(h, lo, hi, amp, tag);
}

GridFunction random_function(std::mt19937_64& rng, std::size_t cells, SpaceTag tag) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> v(cells + (tag == SpaceTag::C0 ? 1 : 0));
  for (std::size_t k = 0; k < cells; ++k) v[k] = Complex(u(rng), u(rng));
  return GridFunction(h, v, tag);
}

std::vector<WeightFunction> families() {
  return {WeightFunction::constant(2.0), WeightFunction::constant(Complex(1.0, 1.0)),
          WeightFunction::power(2.0), WeightFunction::polynomial({2.0, 1.0}),
          WeightFunction::polynomial({1.25, 0.5, 0.125}), WeightFunction::table(0.5, {1.5, 3.0, 1.25})};
}

}  // namespace

TEST_CASE("periodic_point: constant weight geometric blocks") {
  const ShiftOperator op(WeightFunction::constant(2.0), 1.0, Space::lp(1));
  const GridFunction x = periodic_point(op, chi(0, 1), 1, 30);
  for (int k = 0; k < 30; ++k) CHECK(x[8 * k + 3] == Complex(std::ldexp(1.0, -k)));
  CHECK(x.support_cells() == 240);
  // Geometric oracle: sum_{k<30} 2^{-k} = 2 - 2^{-29}.
  CHECK(op.norm(x) == 2.0 - std::ldexp(1.0, -29));
  CHECK(restricted_distance(op, op.apply_T(x), x, 29 * 8) == 0.0);
}

TEST_CASE("periodic_point preconditions") {
  const ShiftOperator op(WeightFunction::constant(2.0), 1.0, Space::lp(1));
  CHECK_THROWS_AS(periodic_point(op, chi(0, 3), 2, 10), ContractError);
  const ShiftOperator c0(WeightFunction::constant(2.0), 1.0, Space::c0());
  CHECK_THROWS_AS(periodic_point(c0, chi(0, 1, 1.0, SpaceTag::C0), 1, 10), ContractError);
}

TEST_CASE("periodic_approx examples") {
  const ShiftOperator op(WeightFunction::constant(2.0), 1.0, Space::lp(1));
  const PeriodicApprox pa = periodic_approx(op, chi(0, 1), 4, 40);
  CHECK(pa.bound == doctest::Approx(1.0 / 15.0).epsilon(1e-15));
  // ||y - y_N||_1 = sum_{k=1}^{39} 2^{-4k} over the 40 truncation blocks.
  double oracle = 0.0;
  for (int k = 1; k < 40; ++k) oracle += std::ldexp(1.0, -4 * k);
  CHECK(pa.error == doctest::Approx(oracle).epsilon(1e-15));
  CHECK(pa.error <= pa.bound);

  double prev = INFINITY;
  for (int N : {2, 4, 6, 8}) {
    const double e = periodic_approx(op, chi(0, 1), N, 48).error;
    CHECK(e < prev);
    prev = e;
  }
  CHECK(periodic_approx(op, GridFunction::zero(h, SpaceTag::Lp), 3, 10).error == 0.0);
  CHECK_THROWS_AS(periodic_approx(op, chi(0, 3), 2, 10), ContractError);
}

TEST_CASE("transitivity_witness examples") {
  const ShiftOperator op(WeightFunction::constant(2.0), 1.0, Space::lp(1));
  const TransitivityWitness w = transitivity_witness(op, chi(0, 1), chi(0, 1), 3);
  const GridFunction expected = chi(0, 1) + chi(3, 4, 0.125);
  CHECK(distance(w.z, expected, Norm::sup()) == 0.0);
  CHECK(w.distance == 0.125);
  CHECK(w.bound == 0.125);
  CHECK(distance(op.apply_Tn(w.z, 3), chi(0, 1), Norm::lp(1)) == 0.0);

  const TransitivityWitness zero = transitivity_witness(op, chi(0, 1, 2.0), GridFunction::zero(h, SpaceTag::Lp), 2);
  CHECK(distance(zero.z, chi(0, 1, 2.0), Norm::sup()) == 0.0);
}

TEST_CASE("eigenfunction examples") {
  const ShiftOperator op(WeightFunction::constant(2.0), 1.0, Space::lp(1));
  const EigenPair ep = eigenfunction(op, 1.0, chi(0, 1), 30);
  CHECK(ep.residual == 0.0);
  CHECK(ep.in_point_spectrum);
  CHECK_FALSE(ep.tail_divergent);
  for (int k = 0; k < 30; ++k) CHECK(ep.block_masses[k] == std::ldexp(1.0, -k));

  const EigenPair out = eigenfunction(op, 2.5, chi(0, 1), 20);
  CHECK_FALSE(out.in_point_spectrum);
  CHECK(out.tail_divergent);
  for (int k = 0; k < 20; ++k) CHECK(out.block_masses[k] == doctest::Approx(std::pow(1.25, k)).epsilon(1e-13));

  // Boundary |lambda| = ||w||: constant block mass, not summable.
  const EigenPair edge = eigenfunction(op, Complex(0.0, 2.0), chi(0, 1), 20);
  CHECK(edge.tail_divergent);
  CHECK_FALSE(edge.in_point_spectrum);
  CHECK(edge.block_masses.back() == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(eigenfunction(op, 1.0, chi(0, 2), 10), ContractError);
  CHECK_THROWS_AS(eigenfunction(op, 1.0, chi(0, 1), 1), ContractError);
}

TEST_CASE("hypercyclic_vector examples") {
  const ShiftOperator op(WeightFunction::constant(2.0), 1.0, Space::lp(1));
  const std::vector<GridFunction> one{chi(0, 1)};
  const HypercyclicVector hv = hypercyclic_vector(op, one, 0.1);
  REQUIRE(hv.exponents.size() == 1);
  CHECK(hv.exponents[0] >= 1);
  CHECK(distance(op.apply_Tn(hv.vector, hv.exponents[0]), chi(0, 1), Norm::lp(1)) == 0.0);

  const std::vector<GridFunction> two{chi(0, 1), chi(0, 1, 2.0)};
  const HypercyclicVector hv2 = hypercyclic_vector(op, two, 0.1);
  for (std::size_t k = 0; k < 2; ++k) {
    const double d = distance(op.apply_Tn(hv2.vector, hv2.exponents[k]), two[k], Norm::lp(1));
    CHECK(d <= 0.1);
    CHECK(d == hv2.distances[k]);
  }

  const ShiftOperator poly(WeightFunction::polynomial({2.0, 1.0}), 1.0, Space::lp(2));
  std::vector<GridFunction> five;
  for (std::uint64_t i = 1; i <= 5; ++i) five.push_back(test_family(i, h, SpaceTag::Lp));
  const HypercyclicVector hv5 = hypercyclic_vector(poly, five, 0.1);
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(distance(poly.apply_Tn(hv5.vector, hv5.exponents[k]), five[k], Norm::lp(2)) <= 0.1);
  }
  CHECK_THROWS_AS(hypercyclic_vector(op, one, 0.0), ContractError);
}

TEST_CASE("classify_spectrum examples") {
  const SpectrumClassification c = classify_spectrum(ShiftOperator(WeightFunction::constant(2.0), 1.0, Space::lp(1)));
  CHECK(c.point.kind == Region::Kind::OpenDisk);
  CHECK(c.point.radius == 2.0);
  CHECK(c.continuous.kind == Region::Kind::Circle);
  CHECK(c.continuous.radius == 2.0);
  CHECK(c.residual.kind == Region::Kind::Empty);
  CHECK(c.point.contains(Complex(1.9, 0)));
  CHECK_FALSE(c.point.contains(Complex(0, 2)));
  CHECK(c.continuous.contains(Complex(0, 2)));

  for (const WeightFunction& w : {WeightFunction::power(2.0), WeightFunction::polynomial({2.0, 1.0})}) {
    const SpectrumClassification u = classify_spectrum(ShiftOperator(w, 1.0, Space::lp(2)));
    CHECK(u.point.kind == Region::Kind::WholePlane);
    CHECK(u.continuous.kind == Region::Kind::Empty);
    CHECK(u.residual.kind == Region::Kind::Empty);
    CHECK(u.point.contains(Complex(1e6, -1e6)));
  }
}

TEST_CASE("property: periodic points are exact on non-terminal blocks") {
  std::mt19937_64 rng(12);
  for (const WeightFunction& w : families()) {
    for (double a : {0.5, 1.0}) {
      const ShiftOperator op(w, a, Space::lp(2));
      const std::size_t s = op.shift_cells(h);
      for (int N : {1, 2, 4, 8}) {
        const GridFunction seed = random_function(rng, N * s, SpaceTag::Lp);
        const int blocks = 12;
        const GridFunction x = periodic_point(op, seed, N, blocks);
        const double d = restricted_distance(op, op.apply_Tn(x, N), x, N * s * (blocks - 1));
        CHECK(d <= 1e-12 * op.norm(x));
        if (w.family() == WeightFunction::Family::Constant && std::abs(w.eval(0)) == 2.0) CHECK(d == 0.0);
      }
    }
  }
}

TEST_CASE("property: witness bound and exactness") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> un(1, 12);
  for (const WeightFunction& w : families()) {
    for (const Space& sp : {Space::lp(1), Space::lp(2), Space::c0()}) {
      const ShiftOperator op(w, 1.0, sp);
      for (int t = 0; t < 10; ++t) {
        const GridFunction x = random_function(rng, 8, sp.tag());
        const GridFunction y = random_function(rng, 8, sp.tag());
        const int n = un(rng);
        const TransitivityWitness tw = transitivity_witness(op, x, y, n);
        CHECK(distance(op.apply_Tn(tw.z, n), y, sp.norm()) <= 1e-12 * op.norm(y));
        CHECK(tw.distance <= op.reciprocal_chain_bound(n) * op.norm(y) * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("property: eigen residual vanishes and membership splits at sup norm") {
  for (const WeightFunction& w : families()) {
    const ShiftOperator op(w, 1.0, Space::lp(2));
    for (double r : {0.3, 1.0, 1.9, 2.5, 5.0, 9.0}) {
      for (int j = 0; j < 4; ++j) {
        const Complex lambda = std::polar(r, 0.4 + j * 1.5);
        const EigenPair ep = eigenfunction(op, lambda, default_seed(op, h), 30);
        CHECK(ep.residual <= 1e-12);
        if (w.family() == WeightFunction::Family::Constant) {
          const double sup = w.sup_norm();
          CHECK(ep.tail_divergent == (r >= sup));
          CHECK(ep.in_point_spectrum == (r < sup));
        }
        if (!w.bounded()) CHECK(ep.in_point_spectrum);
      }
    }
  }
}

TEST_CASE("property: hypercyclic hit guarantee across spaces") {
  for (const WeightFunction& w : {WeightFunction::constant(2.0), WeightFunction::power(2.0),
                                  WeightFunction::polynomial({2.0, 1.0})}) {
    for (const Space& sp : {Space::lp(1), Space::lp(2), Space::c0()}) {
      const ShiftOperator op(w, 1.0, sp);
      std::vector<GridFunction> targets;
      for (std::uint64_t i = 1; i <= 5; ++i) targets.push_back(test_family(i, h, sp.tag()));
      const HypercyclicVector hv = hypercyclic_vector(op, targets, 0.1);
      for (std::size_t k = 0; k < targets.size(); ++k) {
        CHECK(distance(op.apply_Tn(hv.vector, hv.exponents[k]), targets[k], sp.norm()) <= 0.1);
        if (k > 0) CHECK(hv.exponents[k] > hv.exponents[k - 1]);
      }
    }
  }
}
