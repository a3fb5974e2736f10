#pragma once

// Data-parallel inner loops shared by the function-space and operator code.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant picked at runtime. Elementwise kernels (multiply, subtract) and the
// max reductions are bit-identical across variants; the sum reduction differs
// only in summation order.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace shiftlab::kernels {

using Complex = std::complex<double>;

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  std::string_view name;
  // max over k of max(|re_k|, |im_k|)
  double (*max_component)(const Complex* values, std::size_t n);
  // max over k of |scale * z_k|^2
  double (*max_abs2)(const Complex* values, std::size_t n, double scale);
  // sum over k of |scale * z_k|^p
  double (*sum_abs_pow)(const Complex* values, std::size_t n, double scale, double p);
  // out_k = a_k * b_k (complex product, no FMA contraction)
  void (*multiply)(Complex* out, const Complex* a, const Complex* b, std::size_t n);
  // out_k = a_k - b_k
  void (*subtract)(Complex* out, const Complex* a, const Complex* b, std::size_t n);
};

const KernelTable& scalar_table();

/// AVX2 table, or nullptr when it was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_table();

/// Table in use. Chosen once: AVX2 when available, unless the environment
/// variable SHIFTLAB_KERNELS=scalar is set.
const KernelTable& active();

/// Overrides the runtime choice (tests). Returns false if `isa` is unavailable.
bool select(Isa isa);

inline double max_component(std::span<const Complex> v) {
  return active().max_component(v.data(), v.size());
}
inline double max_abs2(std::span<const Complex> v, double scale) {
  return active().max_abs2(v.data(), v.size(), scale);
}
inline double sum_abs_pow(std::span<const Complex> v, double scale, double p) {
  return active().sum_abs_pow(v.data(), v.size(), scale, p);
}
inline void multiply(std::span<Complex> out, std::span<const Complex> a,
                     std::span<const Complex> b) {
  active().multiply(out.data(), a.data(), b.data(), out.size());
}
inline void subtract(std::span<Complex> out, std::span<const Complex> a,
                     std::span<const Complex> b) {
  active().subtract(out.data(), a.data(), b.data(), out.size());
}

}  // namespace shiftlab::kernels
