#pragma once

// Weight families w(t) for the shift (Tx)(t) = w(t) x(t + a).
//
//   Constant(c)            w(t) = c,                 |c| > 1, bounded
//   Power(base)            w(t) = base^t,            |base| > 1, unbounded, w(0) = 1
//   Polynomial(a_0..a_m)   w(t) = sum a_i t^i,       a_i > 0, a_0 > 1, m >= 1, unbounded
//   Table(step, samples)   left-endpoint lookup,     samples >= 1, last sample extends
//
// lower_bound() is inf_{t >= 0} |w(t)|. A weight whose lower bound is 1 (Power,
// or a table starting at 1) is "pinned at the origin": the decay estimates
// then use inf_{t >= a} |w(t)| for every factor except the one evaluated in
// [0, a).

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace shiftlab {

using Complex = std::complex<double>;

/// Complex product kept as mantissa * 2^exponent so long products of growing
/// or decaying weights never overflow while they are being accumulated.
/// Rescaling is by exact powers of two, so the mantissa rounds exactly like
/// the plain running product.
struct ScaledComplex {
  Complex mantissa{1.0, 0.0};
  long exponent = 0;

  void multiply(Complex factor);
  /// mantissa * 2^exponent; throws OverflowError if not representable.
  Complex value() const;
  /// 1 / (mantissa * 2^exponent); underflows gracefully toward zero.
  Complex reciprocal() const;
  /// z * value() without forming value() first.
  Complex times(Complex z) const;
  /// z / value() without forming value() first.
  Complex divide(Complex z) const;
  double log2_abs() const;
};

class WeightFunction {
 public:
  enum class Family { Constant, Power, Polynomial, Table };

  static WeightFunction constant(Complex c);
  static WeightFunction power(Complex base);
  /// Coefficients a_0, a_1, ..., a_m.
  static WeightFunction polynomial(std::vector<double> coefficients);
  static WeightFunction table(double step, std::vector<double> samples);

  /// `constant:2`, `power:2`, `poly:2,1,0.5`, `table:<path>`. Relative table
  /// paths resolve against `base_dir`. The table file is CSV with rows
  /// `t,value` on a uniform grid starting at t = 0 (a header row is allowed).
  static WeightFunction parse(std::string_view spec, const std::filesystem::path& base_dir = {});

  Family family() const { return family_; }
  /// Grammar string that reproduces this weight (tables: inline description).
  std::string describe() const;

  Complex eval(double t) const;

  /// prod_{i=0}^{n-1} w(t + i a).
  Complex cumulative_product(double t, int n, double a) const;
  /// 1 / prod_{i=1}^{n} w(t - i a); every t - i a must be >= 0.
  Complex reciprocal_product(double t, int n, double a) const;

  /// prod_{i=0}^{count-1} w((start + i*stride) * h), each argument index >= 0.
  ScaledComplex grid_product(double h, std::int64_t start, std::int64_t stride,
                             std::int64_t count) const;

  double lower_bound() const;
  /// inf_{t >= t0} |w(t)|.
  double floor_from(double t0) const;
  /// ||w||_inf, +inf for unbounded families.
  double sup_norm() const;
  bool bounded() const { return family_ == Family::Constant || family_ == Family::Table; }
  bool pinned_at_origin() const { return lower_bound() <= 1.0; }

  const std::vector<double>& coefficients() const { return coefficients_; }
  const std::vector<double>& samples() const { return samples_; }
  double table_step() const { return table_step_; }

 private:
  WeightFunction() = default;

  Family family_ = Family::Constant;
  Complex scalar_{2.0, 0.0};  // constant value or power base
  std::vector<double> coefficients_;
  double table_step_ = 1.0;
  std::vector<double> samples_;

  std::size_t table_index(double t) const;
};

}  // namespace shiftlab
