#include "shiftlab/shift_operator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "shiftlab/errors.hpp"
#include "shiftlab/kernels.hpp"

namespace shiftlab {

Space Space::lp(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ContractError("Lp space needs finite p >= 1");
  return Space{Kind::Lp, p};
}

std::string Space::describe() const {
  if (kind == Kind::C0) return "C0";
  std::ostringstream os;
  os << "L" << p;
  return os.str();
}

ShiftOperator::ShiftOperator(WeightFunction weight, double shift, Space space)
    : weight_(std::move(weight)), shift_(shift), space_(space) {
  if (!(shift_ > 0.0) || !std::isfinite(shift_)) throw ContractError("shift a must be positive");
  if (space_.kind == Space::Kind::Lp) space_ = Space::lp(space_.p);
  decay_base_ = weight_.pinned_at_origin() ? weight_.floor_from(shift_) : weight_.lower_bound();
  if (!(decay_base_ > 1.0)) {
    throw ContractError("weight must satisfy |w(t)| > b > 1 (for t >= a when w(0) = 1)");
  }
}

std::string ShiftOperator::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "T[w=" << weight_.describe() << ", a=" << shift_ << ", space=" << space_.describe() << "]";
  return os.str();
}

std::size_t ShiftOperator::shift_cells(double step) const {
  const double ratio = shift_ / step;
  const double rounded = std::round(ratio);
  if (!(step > 0.0) || rounded < 1.0 || std::fabs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream os;
    os << "shift not grid-aligned: a = " << shift_ << " is not a positive multiple of h = " << step;
    throw ContractError(os.str());
  }
  return static_cast<std::size_t>(rounded);
}

void ShiftOperator::require_space(const GridFunction& f) const {
  if (f.tag() != space_.tag()) {
    throw ContractError("grid function tag " + to_string(f.tag()) + " does not match operator space " +
                        space_.describe());
  }
}

GridFunction ShiftOperator::apply_T(const GridFunction& f) const {
  require_space(f);
  const std::size_t s = shift_cells(f.step());
  if (f.size() <= s) return GridFunction::zero(f.step(), f.tag());
  const std::size_t n = f.size() - s;
  std::vector<Complex> w(n);
  for (std::size_t k = 0; k < n; ++k) w[k] = weight_.eval(static_cast<double>(k) * f.step());
  std::vector<Complex> out(n);
  kernels::multiply(out, w, f.values().subspan(s));
  return GridFunction(f.step(), std::move(out), f.tag());
}

GridFunction ShiftOperator::apply_Tn(const GridFunction& f, int n) const {
  if (n < 0) throw ContractError("iterate count must be nonnegative");
  require_space(f);
  if (n == 0) return f;
  const std::size_t s = shift_cells(f.step());
  const std::size_t offset = static_cast<std::size_t>(n) * s;
  if (f.size() <= offset) return GridFunction::zero(f.step(), f.tag());
  const std::size_t len = f.size() - offset;
  const auto src = f.values().subspan(offset);

  // Factors that fit in a double go through the vector kernel; the rest are
  // applied in scaled form.
  std::vector<Complex> factor(len);
  std::vector<std::size_t> scaled_cells;
  std::vector<ScaledComplex> scaled_factors;
  for (std::size_t k = 0; k < len; ++k) {
    if (src[k] == Complex{}) continue;
    const ScaledComplex p = weight_.grid_product(f.step(), static_cast<std::int64_t>(k),
                                                 static_cast<std::int64_t>(s), n);
    if (p.exponent == 0) {
      factor[k] = p.mantissa;
    } else {
      scaled_cells.push_back(k);
      scaled_factors.push_back(p);
    }
  }
  std::vector<Complex> out(len);
  kernels::multiply(out, factor, src);
  for (std::size_t i = 0; i < scaled_cells.size(); ++i) {
    out[scaled_cells[i]] = scaled_factors[i].times(src[scaled_cells[i]]);
  }
  if (f.tag() == SpaceTag::C0) out.back() = Complex{};
  return GridFunction(f.step(), std::move(out), f.tag());
}

std::vector<Complex> ShiftOperator::divided_shift(std::span<const Complex> src, double h,
                                                  std::size_t s, int n) const {
  const std::size_t offset = static_cast<std::size_t>(n) * s;
  std::vector<Complex> out(src.size() + offset);
  for (std::size_t j = 0; j < src.size(); ++j) {
    if (src[j] == Complex{}) continue;
    const std::size_t k = j + offset;
    if (n == 0) {
      out[k] = src[j];
      continue;
    }
    const ScaledComplex p = weight_.grid_product(h, static_cast<std::int64_t>(k - s),
                                                 -static_cast<std::int64_t>(s), n);
    out[k] = p.divide(src[j]);
  }
  return out;
}

GridFunction ShiftOperator::apply_S(const GridFunction& f) const { return apply_Sn(f, 1); }

GridFunction ShiftOperator::apply_Sn(const GridFunction& f, int n) const {
  if (n < 0) throw ContractError("iterate count must be nonnegative");
  require_space(f);
  if (n == 0) return f;
  const std::size_t s = shift_cells(f.step());
  if (space_.kind == Space::Kind::Lp) {
    return GridFunction(f.step(), divided_shift(f.values(), f.step(), s, n), f.tag());
  }
  // C0: one step of S creates the ramp on [0, a); it starts at 0, so later
  // steps add no further ramps and reduce to the Lp rule.
  std::vector<Complex> first = divided_shift(f.values(), f.step(), s, 1);
  const Complex head = f[0] / weight_.eval(0.0);
  for (std::size_t k = 1; k < s; ++k) {
    first[k] = head * (static_cast<double>(k) / static_cast<double>(s));
  }
  GridFunction once(f.step(), std::move(first), f.tag());
  if (n == 1) return once;
  return GridFunction(f.step(), divided_shift(once.values(), f.step(), s, n - 1), f.tag());
}

double ShiftOperator::s_power_bound(int n, double step) const {
  if (n < 0) throw ContractError("iterate count must be nonnegative");
  if (n == 0) return 1.0;
  double bound = reciprocal_chain_bound(n);
  if (space_.kind == Space::Kind::C0) {
    const std::size_t s = shift_cells(step);
    const double w0 = std::abs(weight_.eval(0.0));
    for (std::size_t j = 1; j < s; ++j) {
      double ramp = (static_cast<double>(j) / static_cast<double>(s)) / w0;
      if (n >= 2) {
        ramp /= std::abs(weight_.eval(static_cast<double>(j) * step)) * std::pow(decay_base_, n - 2);
      }
      bound = std::max(bound, ramp);
    }
  }
  return bound;
}

double ShiftOperator::reciprocal_chain_bound(int n) const {
  if (n <= 0) return 1.0;
  return 1.0 / (origin_floor() * std::pow(decay_base_, n - 1));
}

std::vector<double> ShiftOperator::norm_trial_ratios(int trial_count, double step,
                                                     std::uint64_t seed) const {
  if (!bounded()) throw BoundednessError("operator norm estimate needs a bounded operator (unbounded)");
  const std::size_t s = shift_cells(step);
  const SpaceTag tag = space_.tag();

  // Cell where |w| is largest: constants attain it at 0; tables somewhere
  // before the tail takes over.
  std::size_t argmax = 0;
  if (weight_.family() == WeightFunction::Family::Table) {
    const double table_len = weight_.table_step() * static_cast<double>(weight_.samples().size());
    const auto last = static_cast<std::size_t>(std::ceil(table_len / step)) + 1;
    double best = -1.0;
    for (std::size_t k = 0; k <= last; ++k) {
      const double m = std::abs(weight_.eval(static_cast<double>(k) * step));
      if (m > best) {
        best = m;
        argmax = k;
      }
    }
  }

  auto ratio = [&](const GridFunction& f) { return norm(apply_T(f)) / norm(f); };

  std::vector<double> ratios;
  std::vector<Complex> probe(argmax + s + 1 + (tag == SpaceTag::C0 ? 1 : 0));
  probe[argmax + s] = Complex{1.0, 0.0};
  ratios.push_back(ratio(GridFunction(step, std::move(probe), tag)));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> len_dist(s + 2, s + argmax + 64);
  for (int t = 0; t < trial_count; ++t) {
    std::vector<Complex> v(len_dist(rng));
    for (Complex& z : v) z = Complex(unit(rng), unit(rng));
    if (tag == SpaceTag::C0) v.back() = Complex{};
    v[s] += Complex{1.0, 0.0};  // keep T f nonzero
    ratios.push_back(ratio(GridFunction(step, std::move(v), tag)));
  }
  return ratios;
}

double ShiftOperator::operator_norm_estimate(int trial_count, double step, std::uint64_t seed) const {
  const std::vector<double> r = norm_trial_ratios(trial_count, step, seed);
  return *std::max_element(r.begin(), r.end());
}

double ShiftOperator::unboundedness_witness(int n, double step, double window) const {
  if (bounded()) throw BoundednessError("unboundedness witness needs an unbounded operator (bounded)");
  if (n < 1) throw ContractError("witness index n must be >= 1");
  if (space_.kind == Space::Kind::Lp) {
    const GridFunction chi = GridFunction::indicator(step, n, n + 1.0, 1.0, SpaceTag::Lp);
    return norm(apply_T(chi)) / norm(chi);
  }
  const std::size_t s = shift_cells(step);
  const std::size_t lag = static_cast<std::size_t>(n - 1) * s;
  const std::size_t span = grid_cells(std::floor(window / step) * step, step);
  double best = 0.0;
  for (std::size_t j = 0; j <= span; ++j) {
    const double num = std::abs(weight_.eval(static_cast<double>(lag + j) * step));
    const double den = std::abs(weight_.eval(static_cast<double>(j) * step));
    best = std::max(best, num / den);
  }
  return best;
}

double ShiftOperator::unboundedness_witness_limit(int n, double initial_step, int levels) const {
  if (space_.kind == Space::Kind::C0) return unboundedness_witness(n, initial_step);
  if (levels < 1) throw ContractError("refinement needs at least one level");
  const double p = space_.p;
  // Left Riemann sums of |w|^p: error ~ c1 h + c2 h^2 + c4 h^4 + ...
  std::vector<double> sums;
  for (int j = 0; j <= levels; ++j) {
    sums.push_back(std::pow(unboundedness_witness(n, std::ldexp(initial_step, -j)), p));
  }
  std::vector<double> col;
  for (std::size_t j = 0; j + 1 < sums.size(); ++j) col.push_back(2.0 * sums[j + 1] - sums[j]);
  double factor = 4.0;
  while (col.size() > 1) {
    std::vector<double> next;
    for (std::size_t j = 0; j + 1 < col.size(); ++j) {
      next.push_back((factor * col[j + 1] - col[j]) / (factor - 1.0));
    }
    col = std::move(next);
    factor *= 4.0;
  }
  return std::pow(col.front(), 1.0 / p);
}

}  // namespace shiftlab
