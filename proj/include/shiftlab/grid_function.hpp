#pragma once

// Discretized functions on [0, L) for L_p(0, inf) and C_0[0, inf).
//
// Lp-tagged functions are piecewise constant: values[k] is the value on the
// cell [k*h, (k+1)*h). C0-tagged functions are nodal: values[k] is the value
// at t = k*h and the function is the piecewise-linear interpolant, so the
// last node must be zero for the compactly supported extension to be
// continuous. Both are identically zero beyond the stored range.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace shiftlab {

using Complex = std::complex<double>;

enum class SpaceTag { Lp, C0 };

std::string to_string(SpaceTag tag);

/// Norm selector for `distance`.
struct Norm {
  enum class Kind { Lp, Sup };
  Kind kind = Kind::Sup;
  double p = 2.0;

  static Norm lp(double p) { return Norm{Kind::Lp, p}; }
  static Norm sup() { return Norm{Kind::Sup, 0.0}; }
};

class GridFunction {
 public:
  GridFunction(double step, std::vector<Complex> values, SpaceTag tag);

  static GridFunction zero(double step, SpaceTag tag);

  /// amp * chi_[lo, hi). `lo` and `hi` must lie on the grid. For C0 the
  /// result is the nodal interpolant (nodes in [lo, hi) set to amp), which
  /// carries a trailing zero node at hi.
  static GridFunction indicator(double step, double lo, double hi, Complex amp, SpaceTag tag);

  double step() const { return step_; }
  SpaceTag tag() const { return tag_; }
  std::size_t size() const { return values_.size(); }
  std::span<const Complex> values() const { return values_; }
  /// Value of cell/node k; zero beyond the stored range.
  Complex operator[](std::size_t k) const { return k < values_.size() ? values_[k] : Complex{}; }

  /// One past the last nonzero cell (0 for the zero function).
  std::size_t support_cells() const;
  double support_length() const { return static_cast<double>(support_cells()) * step_; }
  bool is_zero() const { return support_cells() == 0; }

  /// First `cells` values; C0 results get their last node forced to zero.
  GridFunction truncated(std::size_t cells) const;
  GridFunction padded(std::size_t cells) const;
  GridFunction scaled(Complex c) const;

  friend GridFunction operator+(const GridFunction& f, const GridFunction& g);
  friend GridFunction operator-(const GridFunction& f, const GridFunction& g);
  friend bool operator==(const GridFunction& f, const GridFunction& g) = default;

 private:
  double step_;
  std::vector<Complex> values_;
  SpaceTag tag_;
};

/// Number of grid cells in `length`; throws ContractError unless `length`
/// is a nonnegative integer multiple of `step` (relative slack 1e-9).
std::size_t grid_cells(double length, double step, const char* what = "length");

/// (sum_k |f_k|^p h)^(1/p). Exact for piecewise-constant representatives.
double norm_lp(const GridFunction& f, double p);

/// max_k |f_k| (cells for Lp, nodes for C0).
double norm_sup(const GridFunction& f);

double norm(const GridFunction& f, Norm n);

/// norm(f - g) with the shorter argument zero-padded.
double distance(const GridFunction& f, const GridFunction& g, Norm n);

/// Deterministic injective enumeration of eventually-zero step functions with
/// complex dyadic-rational values on dyadic cells of width 2^-r (only levels
/// representable on `step` are enumerated). Index 0 is the zero function and
/// index 1 is chi_[0,1).
GridFunction test_family(std::uint64_t index, double step, SpaceTag tag);

}  // namespace shiftlab
