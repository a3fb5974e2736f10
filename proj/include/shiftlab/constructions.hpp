#pragma once

// Builders for the explicit objects behind the chaos and spectrum results:
// periodic points, transitivity witnesses, eigenfunctions and hypercyclic
// vectors. Infinite tails are cut at `blocks` copies, and each builder
// reports the measured quantity next to its analytic bound so truncation
// error can be told apart from logic error.

#include <span>
#include <string>
#include <vector>

#include "shiftlab/grid_function.hpp"
#include "shiftlab/shift_operator.hpp"

namespace shiftlab {

struct Region {
  enum class Kind { Empty, OpenDisk, Circle, WholePlane };
  Kind kind = Kind::Empty;
  double radius = 0.0;

  bool contains(Complex lambda) const;
  std::string describe() const;
};

struct SpectrumClassification {
  Region point;
  Region continuous;
  Region residual;
  bool bounded_source = false;
};

struct EigenPair {
  Complex lambda;
  GridFunction vector;
  /// ||Tx - lambda x|| / ||x|| over every block except the last.
  double residual = 0.0;
  int truncation_blocks = 0;
  /// Per block: ||x|_block||_p^p on Lp, max |x| on C0.
  std::vector<double> block_masses;
  /// Analytic membership of lambda in the point spectrum.
  bool in_point_spectrum = false;
  /// Block masses fail to decay (last block >= first block).
  bool tail_divergent = false;
};

struct PeriodicApprox {
  GridFunction approx;
  double error = 0.0;
  double bound = 0.0;
};

struct TransitivityWitness {
  GridFunction z;
  double distance = 0.0;  // ||z - x||
  double bound = 0.0;     // reciprocal_chain_bound(n) * ||y||
};

struct HypercyclicVector {
  GridFunction vector;
  std::vector<int> exponents;
  std::vector<double> distances;  // ||T^{m_k} x - y_k||
};

/// chi_[0, a) on the grid, the default seed.
GridFunction default_seed(const ShiftOperator& op, double step);

/// ||(f - g) restricted to the first `cells` cells|| in the operator's norm.
double restricted_distance(const ShiftOperator& op, const GridFunction& f, const GridFunction& g,
                           std::size_t cells);

/// x_N equal to seed(t - kNa) / prod_{i=1}^{kN} w(t - ia) on D_k = [kNa, (k+1)Na),
/// k = 0..blocks-1. Lp spaces only. The seed must vanish beyond Na.
GridFunction periodic_point(const ShiftOperator& op, const GridFunction& seed, int N, int blocks);

/// Periodic point built from y (vanishing beyond na, N >= n) with ||y - y_N||
/// and the bound sum_{k>=1} reciprocal_chain_bound(kN) ||y||.
PeriodicApprox periodic_approx(const ShiftOperator& op, const GridFunction& y, int N, int blocks);

/// z_n = x on [0, Na), y(t - na) / prod_{i=0}^{n-1} w(t - na + ia) on
/// [na, na + Na), zero elsewhere, so that T^n z_n = y.
TransitivityWitness transitivity_witness(const ShiftOperator& op, const GridFunction& x,
                                         const GridFunction& y, int n);

/// Blocks lambda^k seed(t - ka) / prod_{i=1}^k w(t - ia) on [ka, (k+1)a).
EigenPair eigenfunction(const ShiftOperator& op, Complex lambda, const GridFunction& seed, int blocks);

/// x = sum_k S^{m_k} y_k with distance(T^{m_k} x, y_k) <= tolerance for every k.
HypercyclicVector hypercyclic_vector(const ShiftOperator& op, std::span<const GridFunction> targets,
                                     double tolerance);

SpectrumClassification classify_spectrum(const ShiftOperator& op);

}  // namespace shiftlab
