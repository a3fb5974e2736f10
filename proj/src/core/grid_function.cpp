#include "shiftlab/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shiftlab/errors.hpp"
#include "shiftlab/kernels.hpp"

namespace shiftlab {

std::string to_string(SpaceTag tag) { return tag == SpaceTag::Lp ? "Lp" : "C0"; }

GridFunction::GridFunction(double step, std::vector<Complex> values, SpaceTag tag)
    : step_(step), values_(std::move(values)), tag_(tag) {
  if (!(step_ > 0.0) || !std::isfinite(step_)) {
    throw ContractError("grid step must be positive and finite");
  }
  for (const Complex& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ContractError("grid function values must be finite");
    }
  }
  if (tag_ == SpaceTag::C0 && !values_.empty() && values_.back() != Complex{}) {
    throw ContractError("C0 grid function must end with a zero node");
  }
}

GridFunction GridFunction::zero(double step, SpaceTag tag) { return GridFunction(step, {}, tag); }

GridFunction GridFunction::indicator(double step, double lo, double hi, Complex amp,
                                     SpaceTag tag) {
  if (lo < 0.0 || hi < lo) throw ContractError("indicator needs 0 <= lo <= hi");
  const std::size_t first = grid_cells(lo, step, "indicator lower end");
  const std::size_t last = grid_cells(hi, step, "indicator upper end");
  std::vector<Complex> v(last + (tag == SpaceTag::C0 && last > first ? 1 : 0));
  std::fill(v.begin() + static_cast<std::ptrdiff_t>(first),
            v.begin() + static_cast<std::ptrdiff_t>(last), amp);
  return GridFunction(step, std::move(v), tag);
}

std::size_t GridFunction::support_cells() const {
  std::size_t n = values_.size();
  while (n > 0 && values_[n - 1] == Complex{}) --n;
  return n;
}

GridFunction GridFunction::truncated(std::size_t cells) const {
  std::vector<Complex> v(values_.begin(),
                         values_.begin() + static_cast<std::ptrdiff_t>(std::min(cells, size())));
  if (tag_ == SpaceTag::C0 && !v.empty()) v.back() = Complex{};
  return GridFunction(step_, std::move(v), tag_);
}

GridFunction GridFunction::padded(std::size_t cells) const {
  std::vector<Complex> v = values_;
  if (v.size() < cells) v.resize(cells);
  return GridFunction(step_, std::move(v), tag_);
}

GridFunction GridFunction::scaled(Complex c) const {
  std::vector<Complex> v(values_.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = c * values_[k];
  return GridFunction(step_, std::move(v), tag_);
}

namespace {

void require_compatible(const GridFunction& f, const GridFunction& g) {
  if (f.tag() != g.tag()) throw ContractError("space tag mismatch");
  if (std::fabs(f.step() - g.step()) > 1e-12 * std::max(f.step(), g.step())) {
    throw ContractError("grid step mismatch");
  }
}

std::vector<Complex> padded_values(const GridFunction& f, std::size_t n) {
  std::vector<Complex> v(f.values().begin(), f.values().end());
  v.resize(n);
  return v;
}

// Largest power of two not above max_k max(|re|, |im|); scaling by its
// inverse keeps the squared magnitudes in range without rounding.
int magnitude_exponent(std::span<const Complex> v, bool& all_zero) {
  const double c = kernels::max_component(v);
  all_zero = c == 0.0;
  return all_zero ? 0 : std::ilogb(c);
}

}  // namespace

GridFunction operator+(const GridFunction& f, const GridFunction& g) {
  require_compatible(f, g);
  const std::size_t n = std::max(f.size(), g.size());
  std::vector<Complex> a = padded_values(f, n);
  const std::vector<Complex> b = padded_values(g, n);
  for (std::size_t k = 0; k < n; ++k) a[k] += b[k];
  return GridFunction(f.step(), std::move(a), f.tag());
}

GridFunction operator-(const GridFunction& f, const GridFunction& g) {
  require_compatible(f, g);
  const std::size_t n = std::max(f.size(), g.size());
  const std::vector<Complex> a = padded_values(f, n);
  const std::vector<Complex> b = padded_values(g, n);
  std::vector<Complex> out(n);
  kernels::subtract(out, a, b);
  return GridFunction(f.step(), std::move(out), f.tag());
}

std::size_t grid_cells(double length, double step, const char* what) {
  if (!(step > 0.0)) throw ContractError("grid step must be positive");
  if (!(length >= 0.0) || !std::isfinite(length)) {
    throw ContractError(std::string(what) + " must be nonnegative and finite");
  }
  const double ratio = length / step;
  const double rounded = std::round(ratio);
  if (std::fabs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream os;
    os << what << " " << length << " is not a multiple of the grid step " << step;
    throw ContractError(os.str());
  }
  return static_cast<std::size_t>(rounded);
}

double norm_lp(const GridFunction& f, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ContractError("Lp norm needs finite p >= 1");
  if (f.tag() != SpaceTag::Lp) throw ContractError("Lp norm of a C0-tagged function");
  bool all_zero = false;
  const int e = magnitude_exponent(f.values(), all_zero);
  if (all_zero) return 0.0;
  const double sum = kernels::sum_abs_pow(f.values(), std::scalbn(1.0, -e), p) * f.step();
  const double root = p == 1.0 ? sum : (p == 2.0 ? std::sqrt(sum) : std::pow(sum, 1.0 / p));
  return std::scalbn(root, e);
}

double norm_sup(const GridFunction& f) {
  bool all_zero = false;
  const int e = magnitude_exponent(f.values(), all_zero);
  if (all_zero) return 0.0;
  return std::scalbn(std::sqrt(kernels::max_abs2(f.values(), std::scalbn(1.0, -e))), e);
}

double norm(const GridFunction& f, Norm n) {
  return n.kind == Norm::Kind::Lp ? norm_lp(f, n.p) : norm_sup(f);
}

double distance(const GridFunction& f, const GridFunction& g, Norm n) { return norm(f - g, n); }

}  // namespace shiftlab
