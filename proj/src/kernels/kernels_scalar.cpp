#include "shiftlab/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace shiftlab::kernels {
namespace {

double max_component_scalar(const Complex* v, std::size_t n) {
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    m = std::max(m, std::max(std::fabs(v[k].real()), std::fabs(v[k].imag())));
  }
  return m;
}

double max_abs2_scalar(const Complex* v, std::size_t n, double scale) {
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double re = v[k].real() * scale;
    const double im = v[k].imag() * scale;
    m = std::max(m, re * re + im * im);
  }
  return m;
}

double sum_abs_pow_scalar(const Complex* v, std::size_t n, double scale, double p) {
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double re = v[k].real() * scale;
    const double im = v[k].imag() * scale;
    const double r2 = re * re + im * im;
    if (p == 2.0) {
      sum += r2;
    } else if (p == 1.0) {
      sum += std::sqrt(r2);
    } else {
      sum += std::pow(r2, 0.5 * p);
    }
  }
  return sum;
}

void multiply_scalar(Complex* out, const Complex* a, const Complex* b, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double ar = a[k].real(), ai = a[k].imag();
    const double br = b[k].real(), bi = b[k].imag();
    out[k] = Complex(ar * br - ai * bi, ai * br + ar * bi);
  }
}

void subtract_scalar(Complex* out, const Complex* a, const Complex* b, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = Complex(a[k].real() - b[k].real(), a[k].imag() - b[k].imag());
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::Scalar,         "scalar",        &max_component_scalar,
                                 &max_abs2_scalar,    &sum_abs_pow_scalar, &multiply_scalar,
                                 &subtract_scalar};
  return table;
}

}  // namespace shiftlab::kernels
