#pragma once

// The weighted backward shift (Tx)(t) = w(t) x(t + a) and its right inverse S
// on grid functions.
//
// Weights are sampled at the left endpoint of each cell (the node, for C0),
// and both T and S evaluate w at the same integer grid indices, so TS = I
// holds cell by cell. T factors as V * tau_a with V multiplication by w and
// tau_a the unweighted translation; no separate operation is exposed for it.
//
// On grid functions T is always a finite map. Unboundedness is represented by
// the divergence of `unboundedness_witness(n)` as n grows.

#include <cstdint>
#include <string>
#include <vector>

#include "shiftlab/grid_function.hpp"
#include "shiftlab/weight.hpp"

namespace shiftlab {

struct Space {
  enum class Kind { Lp, C0 };
  Kind kind = Kind::Lp;
  double p = 2.0;

  static Space lp(double p);
  static Space c0() { return Space{Kind::C0, 0.0}; }

  SpaceTag tag() const { return kind == Kind::Lp ? SpaceTag::Lp : SpaceTag::C0; }
  Norm norm() const { return kind == Kind::Lp ? Norm::lp(p) : Norm::sup(); }
  std::string describe() const;
};

class ShiftOperator {
 public:
  ShiftOperator(WeightFunction weight, double shift, Space space);

  const WeightFunction& weight() const { return weight_; }
  double shift() const { return shift_; }
  const Space& space() const { return space_; }
  bool bounded() const { return weight_.bounded(); }
  std::string describe() const;

  /// a / h; throws ContractError("shift not grid-aligned") unless integral.
  std::size_t shift_cells(double step) const;

  double norm(const GridFunction& f) const { return shiftlab::norm(f, space_.norm()); }

  GridFunction apply_T(const GridFunction& f) const;
  /// T^n through the cumulative weight product of each cell.
  GridFunction apply_Tn(const GridFunction& f, int n) const;
  /// Lp: (Sx)(t) = x(t - a) / w(t - a) for t >= a, 0 below.
  /// C0: the same for t >= a, and the ramp (x(0)/w(0)) t/a on [0, a).
  GridFunction apply_S(const GridFunction& f) const;
  GridFunction apply_Sn(const GridFunction& f, int n) const;

  /// inf_{t >= 0} |w(t)|.
  double origin_floor() const { return weight_.lower_bound(); }
  /// Geometric decay rate used by every tail estimate: the lower bound itself,
  /// or inf_{t >= a} |w(t)| for weights pinned at the origin.
  double decay_base() const { return decay_base_; }

  /// Bound on |1 / prod_{i=0}^{n-1} w(u + i a)| for u >= 0: at most one
  /// factor has its argument in [0, a).
  double reciprocal_chain_bound(int n) const;

  /// c_n with ||S^n f|| <= c_n ||f|| for every f on a grid of spacing `step`:
  /// 1 / (origin_floor * decay_base^(n-1)), widened on C0 by the ramp term.
  double s_power_bound(int n, double step) const;

  /// max ||Tf|| / ||f|| over an indicator at the weight's argmax cell and
  /// `trial_count` random functions. Bounded operators only.
  double operator_norm_estimate(int trial_count, double step, std::uint64_t seed = 7) const;
  /// The individual ratios behind operator_norm_estimate (deterministic one first).
  std::vector<double> norm_trial_ratios(int trial_count, double step, std::uint64_t seed = 7) const;

  /// Lp: ||T chi_[n, n+1)||_p. C0: max over grid nodes t in [(n-1)a, (n-1)a + window]
  /// of |w(t) / w(t - (n-1)a)|. Unbounded operators only.
  double unboundedness_witness(int n, double step, double window = 64.0) const;

  /// Lp witness in the limit h -> 0: Richardson extrapolation of the grid
  /// witness over `levels` halvings of `initial_step`. C0 returns the grid max.
  double unboundedness_witness_limit(int n, double initial_step, int levels = 8) const;

 private:
  WeightFunction weight_;
  double shift_;
  Space space_;
  double decay_base_;

  void require_space(const GridFunction& f) const;
  std::vector<Complex> divided_shift(std::span<const Complex> src, double h, std::size_t s,
                                     int n) const;
};

}  // namespace shiftlab
