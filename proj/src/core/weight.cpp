#include "shiftlab/weight.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "shiftlab/errors.hpp"
#include "shiftlab/parse_util.hpp"

namespace shiftlab {
namespace {

constexpr int kRescaleThreshold = 400;
constexpr double kArgSlack = 1e-12;

Complex scale2(Complex z, long e) {
  const long clamped = std::clamp<long>(e, INT_MIN / 2, INT_MAX / 2);
  return {std::scalbn(z.real(), static_cast<int>(clamped)),
          std::scalbn(z.imag(), static_cast<int>(clamped))};
}

Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.imag() * b.real() + a.real() * b.imag()};
}

Complex div(Complex z, Complex d) {
  if (d.imag() == 0.0) return {z.real() / d.real(), z.imag() / d.real()};
  return z / d;
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_real(z.real());
  std::string s = format_real(z.real());
  if (z.imag() >= 0.0) s += "+";
  return s + format_real(z.imag()) + "i";
}

double clamp_argument(double t) {
  if (t < 0.0 && t > -kArgSlack * std::max(1.0, std::fabs(t))) return 0.0;
  return t;
}

}  // namespace

void ScaledComplex::multiply(Complex factor) {
  mantissa = mul(mantissa, factor);
  const double c = std::max(std::fabs(mantissa.real()), std::fabs(mantissa.imag()));
  if (c == 0.0 || !std::isfinite(c)) return;
  const int e = std::ilogb(c);
  if (e > kRescaleThreshold || e < -kRescaleThreshold) {
    mantissa = scale2(mantissa, -e);
    exponent += e;
  }
}

Complex ScaledComplex::value() const {
  const Complex v = scale2(mantissa, exponent);
  if (!finite(v)) throw OverflowError("weight product exceeds double precision range");
  return v;
}

Complex ScaledComplex::reciprocal() const { return scale2(div(Complex{1.0, 0.0}, mantissa), -exponent); }

Complex ScaledComplex::times(Complex z) const {
  const Complex v = scale2(mul(z, mantissa), exponent);
  if (!finite(v)) throw OverflowError("iterate value exceeds double precision range");
  return v;
}

Complex ScaledComplex::divide(Complex z) const { return scale2(div(z, mantissa), -exponent); }

double ScaledComplex::log2_abs() const {
  return std::log2(std::abs(mantissa)) + static_cast<double>(exponent);
}

WeightFunction WeightFunction::constant(Complex c) {
  if (!finite(c) || !(std::abs(c) > 1.0)) throw ContractError("constant weight needs |c| > 1");
  WeightFunction w;
  w.family_ = Family::Constant;
  w.scalar_ = c;
  return w;
}

WeightFunction WeightFunction::power(Complex base) {
  if (!finite(base) || !(std::abs(base) > 1.0)) throw ContractError("power weight needs |base| > 1");
  WeightFunction w;
  w.family_ = Family::Power;
  w.scalar_ = base;
  return w;
}

WeightFunction WeightFunction::polynomial(std::vector<double> coefficients) {
  if (coefficients.size() < 2) throw ContractError("polynomial weight needs degree >= 1");
  for (double a : coefficients) {
    if (!std::isfinite(a) || !(a > 0.0)) {
      throw ContractError("polynomial weight needs all coefficients > 0");
    }
  }
  if (!(coefficients.front() > 1.0)) throw ContractError("polynomial weight needs a_0 > 1");
  WeightFunction w;
  w.family_ = Family::Polynomial;
  w.coefficients_ = std::move(coefficients);
  return w;
}

WeightFunction WeightFunction::table(double step, std::vector<double> samples) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ContractError("table weight needs step > 0");
  if (samples.empty()) throw ContractError("table weight needs at least one sample");
  // Only the first cell may sit at 1 (a weight pinned at the origin).
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double s = samples[k];
    if (!std::isfinite(s) || !(k == 0 ? s >= 1.0 : s > 1.0)) {
      throw ContractError("table weight samples must exceed 1 (the first may equal 1)");
    }
  }
  WeightFunction w;
  w.family_ = Family::Table;
  w.table_step_ = step;
  w.samples_ = std::move(samples);
  return w;
}

WeightFunction WeightFunction::parse(std::string_view spec, const std::filesystem::path& base_dir) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ContractError("weight spec '" + std::string(spec) + "' lacks a family prefix");
  }
  const std::string family = trim(spec.substr(0, colon));
  const std::string args = trim(spec.substr(colon + 1));
  if (family == "constant") return constant(parse_complex(args, "weight constant"));
  if (family == "power") return power(parse_complex(args, "weight power base"));
  if (family == "poly") {
    std::vector<double> coeffs;
    for (const std::string& piece : split(args, ',')) coeffs.push_back(parse_real(piece, "poly coefficient"));
    return polynomial(std::move(coeffs));
  }
  if (family == "table") {
    std::filesystem::path path(args);
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    std::ifstream in(path);
    if (!in) throw ContractError("cannot open weight table '" + path.string() + "'");
    std::vector<double> ts, vs;
    std::string line;
    while (std::getline(in, line)) {
      const std::string t = trim(line);
      if (t.empty() || t.front() == '#') continue;
      const auto cols = split(t, ',');
      if (cols.size() != 2) throw ContractError("weight table rows must be 't,value'");
      if (ts.empty() && vs.empty() && !cols[0].empty() && std::isalpha(static_cast<unsigned char>(cols[0][0]))) {
        continue;  // header
      }
      ts.push_back(parse_real(cols[0], "weight table t"));
      vs.push_back(parse_real(cols[1], "weight table value"));
    }
    if (ts.empty()) throw ContractError("weight table '" + path.string() + "' is empty");
    const double step = ts.size() > 1 ? ts[1] - ts[0] : 1.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      if (std::fabs(ts[k] - static_cast<double>(k) * step) > 1e-9 * std::max(1.0, ts[k])) {
        throw ContractError("weight table must be uniform and start at t = 0");
      }
    }
    return table(step, std::move(vs));
  }
  throw ContractError("unknown weight family '" + family + "'");
}

std::string WeightFunction::describe() const {
  switch (family_) {
    case Family::Constant:
      return "constant:" + format_complex(scalar_);
    case Family::Power:
      return "power:" + format_complex(scalar_);
    case Family::Polynomial: {
      std::string s = "poly:";
      for (std::size_t i = 0; i < coefficients_.size(); ++i) {
        if (i) s += ",";
        s += format_real(coefficients_[i]);
      }
      return s;
    }
    case Family::Table:
      return "table:step=" + format_real(table_step_) + ",samples=" + std::to_string(samples_.size()) +
             ",max=" + format_real(sup_norm());
  }
  return {};
}

std::size_t WeightFunction::table_index(double t) const {
  const double j = std::floor(t / table_step_ + 1e-9);
  return std::min(static_cast<std::size_t>(std::max(0.0, j)), samples_.size() - 1);
}

Complex WeightFunction::eval(double t) const {
  if (!(t >= 0.0) || !std::isfinite(t)) throw ContractError("weight evaluated at negative or non-finite t");
  switch (family_) {
    case Family::Constant:
      return scalar_;
    case Family::Power:
      if (scalar_.imag() == 0.0 && scalar_.real() > 0.0) return {std::pow(scalar_.real(), t), 0.0};
      return std::exp(t * std::log(scalar_));
    case Family::Polynomial: {
      double acc = 0.0;
      for (std::size_t i = coefficients_.size(); i-- > 0;) acc = acc * t + coefficients_[i];
      return {acc, 0.0};
    }
    case Family::Table:
      return {samples_[table_index(t)], 0.0};
  }
  return {};
}

ScaledComplex WeightFunction::grid_product(double h, std::int64_t start, std::int64_t stride,
                                           std::int64_t count) const {
  ScaledComplex p;
  for (std::int64_t i = 0; i < count; ++i) {
    const std::int64_t idx = start + i * stride;
    if (idx < 0) throw ContractError("weight product reaches a negative grid index");
    p.multiply(eval(static_cast<double>(idx) * h));
  }
  return p;
}

Complex WeightFunction::cumulative_product(double t, int n, double a) const {
  if (!(t >= 0.0) || n < 1 || !(a > 0.0)) {
    throw ContractError("cumulative_product needs t >= 0, n >= 1, a > 0");
  }
  ScaledComplex p;
  for (int i = 0; i < n; ++i) p.multiply(eval(t + i * a));
  return p.value();
}

Complex WeightFunction::reciprocal_product(double t, int n, double a) const {
  if (n < 1 || !(a > 0.0)) throw ContractError("reciprocal_product needs n >= 1, a > 0");
  ScaledComplex p;
  for (int i = 1; i <= n; ++i) {
    const double arg = clamp_argument(t - i * a);
    if (arg < 0.0) throw ContractError("reciprocal_product evaluates the weight at a negative point");
    p.multiply(eval(arg));
  }
  return p.reciprocal();
}

double WeightFunction::lower_bound() const { return floor_from(0.0); }

double WeightFunction::floor_from(double t0) const {
  t0 = std::max(0.0, t0);
  switch (family_) {
    case Family::Constant:
      return std::abs(scalar_);
    case Family::Power:
      return std::pow(std::abs(scalar_), t0);
    case Family::Polynomial:
      return eval(t0).real();
    case Family::Table:
      return *std::min_element(samples_.begin() + static_cast<std::ptrdiff_t>(table_index(t0)),
                               samples_.end());
  }
  return 0.0;
}

double WeightFunction::sup_norm() const {
  switch (family_) {
    case Family::Constant:
      return std::abs(scalar_);
    case Family::Table:
      return *std::max_element(samples_.begin(), samples_.end());
    default:
      return std::numeric_limits<double>::infinity();
  }
}

}  // namespace shiftlab
