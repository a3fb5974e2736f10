#include "shiftlab/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace shiftlab::kernels {
namespace {

inline const double* dptr(const Complex* z) { return reinterpret_cast<const double*>(z); }
inline double* dptr(Complex* z) { return reinterpret_cast<double*>(z); }

inline double hmax(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
}

inline double hsum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

// |z|^2 for four complex values: lanes hold |z0|^2, |z2|^2, |z1|^2, |z3|^2.
inline __m256d abs2x4(const double* p, __m256d scale) {
  const __m256d v0 = _mm256_mul_pd(_mm256_loadu_pd(p), scale);
  const __m256d v1 = _mm256_mul_pd(_mm256_loadu_pd(p + 4), scale);
  return _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
}

double max_component_avx2(const Complex* v, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  const double* p = dptr(v);
  const std::size_t doubles = 2 * n;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= doubles; i += 4) {
    acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign, _mm256_loadu_pd(p + i)));
  }
  double m = hmax(acc);
  for (; i < doubles; ++i) m = std::max(m, std::fabs(p[i]));
  return m;
}

double max_abs2_avx2(const Complex* v, std::size_t n, double scale) {
  const double* p = dptr(v);
  const __m256d s = _mm256_set1_pd(scale);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) acc = _mm256_max_pd(acc, abs2x4(p + 2 * k, s));
  double m = hmax(acc);
  for (; k < n; ++k) {
    const double re = v[k].real() * scale;
    const double im = v[k].imag() * scale;
    m = std::max(m, re * re + im * im);
  }
  return m;
}

double sum_abs_pow_avx2(const Complex* v, std::size_t n, double scale, double p) {
  // Element k always lands in lane k % 4, so trailing zeros never change the sum.
  const __m256d s = _mm256_set1_pd(scale);
  const double half_p = 0.5 * p;
  auto term = [&](const double* block) {
    const __m256d r2 = abs2x4(block, s);
    if (p == 2.0) return r2;
    if (p == 1.0) return _mm256_sqrt_pd(r2);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, r2);
    for (double& l : lanes) l = std::pow(l, half_p);
    return _mm256_load_pd(lanes);
  };
  const double* d = dptr(v);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) acc = _mm256_add_pd(acc, term(d + 2 * k));
  if (k < n) {
    alignas(32) double tail[8] = {};
    for (std::size_t j = 0; k + j < n; ++j) {
      tail[2 * j] = v[k + j].real();
      tail[2 * j + 1] = v[k + j].imag();
    }
    acc = _mm256_add_pd(acc, term(tail));
  }
  return hsum(acc);
}

void multiply_avx2(Complex* out, const Complex* a, const Complex* b, std::size_t n) {
  const double* pa = dptr(a);
  const double* pb = dptr(b);
  double* po = dptr(out);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * k);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * k);
    const __m256d b_re = _mm256_movedup_pd(vb);
    const __m256d b_im = _mm256_permute_pd(vb, 0xF);
    const __m256d a_swap = _mm256_permute_pd(va, 0x5);
    // (ar*br - ai*bi, ai*br + ar*bi)
    const __m256d r = _mm256_addsub_pd(_mm256_mul_pd(va, b_re), _mm256_mul_pd(a_swap, b_im));
    _mm256_storeu_pd(po + 2 * k, r);
  }
  for (; k < n; ++k) {
    const double ar = a[k].real(), ai = a[k].imag();
    const double br = b[k].real(), bi = b[k].imag();
    out[k] = Complex(ar * br - ai * bi, ai * br + ar * bi);
  }
}

void subtract_avx2(Complex* out, const Complex* a, const Complex* b, std::size_t n) {
  const double* pa = dptr(a);
  const double* pb = dptr(b);
  double* po = dptr(out);
  const std::size_t doubles = 2 * n;
  std::size_t i = 0;
  for (; i + 4 <= doubles; i += 4) {
    _mm256_storeu_pd(po + i, _mm256_sub_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i)));
  }
  for (; i < doubles; ++i) po[i] = pa[i] - pb[i];
}

}  // namespace

const KernelTable* avx2_table_compiled() {
  static const KernelTable table{Isa::Avx2,         "avx2",           &max_component_avx2,
                                 &max_abs2_avx2,    &sum_abs_pow_avx2, &multiply_avx2,
                                 &subtract_avx2};
  return &table;
}

}  // namespace shiftlab::kernels
