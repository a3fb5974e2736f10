#include <cmath>
#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "shiftlab/errors.hpp"
#include "shiftlab/grid_function.hpp"

namespace shiftlab {
namespace {

// Inverse of the Cantor pairing z = (x + y)(x + y + 1)/2 + y.
std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t z) {
  auto w = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(z) + 1.0) - 1.0) / 2.0);
  while (w * (w + 1) / 2 > z) --w;
  while ((w + 1) * (w + 2) / 2 <= z) ++w;
  const std::uint64_t y = z - w * (w + 1) / 2;
  return {w - y, y};
}

constexpr std::uint64_t kMaxLevel = 40;
constexpr std::uint64_t kMaxExponent = 60;
constexpr std::uint64_t kMaxCells = 4096;
constexpr std::uint64_t kMaxNumerator = std::uint64_t{1} << 52;

// Dyadic rational s * 2^-e with s the zigzag image of q (0, 1, -1, 2, -2, ...).
// Canonical iff e == 0 or s is odd.
bool decode_dyadic(std::uint64_t code, double& value) {
  const auto [q, e] = unpair(code);
  if (e > kMaxExponent || q > kMaxNumerator) return false;
  const double s = (q % 2 == 1) ? static_cast<double>((q + 1) / 2) : -static_cast<double>(q / 2);
  if (e > 0 && (q % 4 == 0 || q % 4 == 3)) return false;  // even numerator
  value = std::ldexp(s, -static_cast<int>(e));
  return true;
}

struct Member {
  std::uint64_t level = 0;
  std::vector<Complex> cell_values;
};

bool decode_member(std::uint64_t code, Member& m) {
  const auto [level, rest] = unpair(code);
  if (level > kMaxLevel) return false;
  auto [len_minus_one, vcode] = unpair(rest);
  if (len_minus_one >= kMaxCells) return false;
  const std::uint64_t n = len_minus_one + 1;
  m.level = level;
  m.cell_values.assign(n, Complex{});
  for (std::uint64_t j = 0; j < n; ++j) {
    std::uint64_t v = vcode;
    if (j + 1 < n) std::tie(v, vcode) = unpair(vcode);
    const auto [re_code, im_code] = unpair(v);
    double re = 0.0, im = 0.0;
    if (!decode_dyadic(re_code, re) || !decode_dyadic(im_code, im)) return false;
    m.cell_values[j] = Complex(re, im);
  }
  if (m.cell_values.back() == Complex{}) return false;
  if (level > 0) {
    // A member that is constant on aligned pairs of cells is the same function
    // one level coarser.
    bool coarsenable = true;
    for (std::uint64_t j = 0; j < n; j += 2) {
      const Complex next = j + 1 < n ? m.cell_values[j + 1] : Complex{};
      if (m.cell_values[j] != next) {
        coarsenable = false;
        break;
      }
    }
    if (coarsenable) return false;
  }
  return true;
}

}  // namespace

GridFunction test_family(std::uint64_t index, double step, SpaceTag tag) {
  grid_cells(1.0, step, "unit length for the test family");
  if (index == 0) return GridFunction::zero(step, tag);

  std::uint64_t found = 0;
  Member m;
  for (std::uint64_t code = 0;; ++code) {
    if (!decode_member(code, m)) continue;
    const double width = std::ldexp(1.0, -static_cast<int>(m.level));
    const double ratio = width / step;
    if (ratio < 1.0 - 1e-12 || std::fabs(ratio - std::round(ratio)) > 1e-9) continue;
    if (++found == index) break;
  }

  const double width = std::ldexp(1.0, -static_cast<int>(m.level));
  const std::size_t per_cell = grid_cells(width, step);
  std::vector<Complex> values(m.cell_values.size() * per_cell + (tag == SpaceTag::C0 ? 1 : 0));
  for (std::size_t j = 0; j < m.cell_values.size(); ++j) {
    for (std::size_t i = 0; i < per_cell; ++i) values[j * per_cell + i] = m.cell_values[j];
  }
  return GridFunction(step, std::move(values), tag);
}

}  // namespace shiftlab
