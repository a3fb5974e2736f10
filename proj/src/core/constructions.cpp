#include "shiftlab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shiftlab/errors.hpp"

namespace shiftlab {
namespace {

std::size_t blocks_needed(std::size_t cells, std::size_t s) { return (cells + s - 1) / s; }

void require_tag(const ShiftOperator& op, const GridFunction& f, const char* what) {
  if (f.tag() != op.space().tag()) {
    throw ContractError(std::string(what) + " does not live in the operator's space");
  }
}

Complex scaled_quotient(const ScaledComplex& num, const ScaledComplex& den, Complex z) {
  ScaledComplex q;
  const Complex m = den.mantissa.imag() == 0.0
                        ? Complex(num.mantissa.real() / den.mantissa.real(),
                                  num.mantissa.imag() / den.mantissa.real())
                        : num.mantissa / den.mantissa;
  q.mantissa = m;
  q.exponent = num.exponent - den.exponent;
  return q.times(z);
}

// Norm of the first `cells` values in the operator's norm, ignoring the C0
// end-node requirement (a restriction need not vanish at its cut).
double restricted_norm(const ShiftOperator& op, const GridFunction& f, std::size_t cells) {
  const auto v = f.values().first(std::min(cells, f.size()));
  GridFunction view(f.step(), std::vector<Complex>(v.begin(), v.end()), SpaceTag::Lp);
  return op.space().kind == Space::Kind::Lp ? norm_lp(view, op.space().p) : norm_sup(view);
}

}  // namespace

// Moduli within 1e-12 relative of the radius belong to the circle, not the disk.
bool Region::contains(Complex lambda) const {
  const double r = std::abs(lambda);
  switch (kind) {
    case Kind::Empty:
      return false;
    case Kind::OpenDisk:
      return r < radius && std::fabs(r - radius) > 1e-12 * radius;
    case Kind::Circle:
      return std::fabs(r - radius) <= 1e-12 * radius;
    case Kind::WholePlane:
      return true;
  }
  return false;
}

std::string Region::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::Empty:
      return "Empty";
    case Kind::OpenDisk:
      os << "OpenDisk(" << radius << ")";
      return os.str();
    case Kind::Circle:
      os << "Circle(" << radius << ")";
      return os.str();
    case Kind::WholePlane:
      return "WholePlane";
  }
  return {};
}

GridFunction default_seed(const ShiftOperator& op, double step) {
  return GridFunction::indicator(step, 0.0, op.shift(), 1.0, op.space().tag());
}

double restricted_distance(const ShiftOperator& op, const GridFunction& f, const GridFunction& g,
                           std::size_t cells) {
  return restricted_norm(op, f - g, cells);
}

GridFunction periodic_point(const ShiftOperator& op, const GridFunction& seed, int N, int blocks) {
  if (op.space().kind != Space::Kind::Lp) {
    throw ContractError("periodic points are constructed on L_p spaces only");
  }
  require_tag(op, seed, "seed");
  if (N < 1 || blocks < 1) throw ContractError("periodic point needs N >= 1 and blocks >= 1");
  const double h = seed.step();
  const std::size_t s = op.shift_cells(h);
  const std::size_t period = static_cast<std::size_t>(N) * s;
  if (seed.support_cells() > period) throw ContractError("seed support exceeds [0, Na)");

  std::vector<Complex> v(period * static_cast<std::size_t>(blocks));
  for (std::size_t j = 0; j < period; ++j) v[j] = seed[j];
  const auto& w = op.weight();
  for (int k = 1; k < blocks; ++k) {
    for (std::size_t j = 0; j < period; ++j) {
      if (seed[j] == Complex{}) continue;
      const std::size_t idx = static_cast<std::size_t>(k) * period + j;
      const ScaledComplex p = w.grid_product(h, static_cast<std::int64_t>(idx - s),
                                             -static_cast<std::int64_t>(s),
                                             static_cast<std::int64_t>(k) * N);
      v[idx] = p.divide(seed[j]);
    }
  }
  return GridFunction(h, std::move(v), SpaceTag::Lp);
}

PeriodicApprox periodic_approx(const ShiftOperator& op, const GridFunction& y, int N, int blocks) {
  if (op.space().kind != Space::Kind::Lp) {
    throw ContractError("periodic points are constructed on L_p spaces only");
  }
  const std::size_t s = op.shift_cells(y.step());
  const auto n = static_cast<int>(blocks_needed(y.support_cells(), s));
  if (N < n) {
    std::ostringstream os;
    os << "period N = " << N << " is below n = " << n << " (y vanishes only beyond na)";
    throw ContractError(os.str());
  }
  PeriodicApprox out{periodic_point(op, y, N, blocks), 0.0, 0.0};
  out.error = distance(y, out.approx, op.space().norm());
  // sum_{k>=1} 1 / (beta gamma^{kN-1}) = (gamma / beta) gamma^-N / (1 - gamma^-N)
  const double g = op.decay_base();
  const double gN = std::pow(g, -N);
  out.bound = (g / op.origin_floor()) * gN / (1.0 - gN) * op.norm(y);
  return out;
}

TransitivityWitness transitivity_witness(const ShiftOperator& op, const GridFunction& x,
                                         const GridFunction& y, int n) {
  require_tag(op, x, "x");
  require_tag(op, y, "y");
  if (std::fabs(x.step() - y.step()) > 1e-12 * x.step()) throw ContractError("x and y use different grids");
  const double h = x.step();
  const std::size_t s = op.shift_cells(h);
  const std::size_t N = std::max<std::size_t>(
      1, std::max(blocks_needed(x.support_cells(), s), blocks_needed(y.support_cells(), s)));
  if (n < 0 || static_cast<std::size_t>(n) < N) {
    std::ostringstream os;
    os << "witness index n = " << n << " is below N = " << N << " (x, y vanish only beyond Na)";
    throw ContractError(os.str());
  }
  const std::size_t offset = static_cast<std::size_t>(n) * s;
  std::vector<Complex> v(std::max(x.size(), offset + y.size()));
  for (std::size_t j = 0; j < x.size(); ++j) v[j] = x[j];
  const auto& w = op.weight();
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (y[j] == Complex{}) continue;
    const ScaledComplex p =
        w.grid_product(h, static_cast<std::int64_t>(j), static_cast<std::int64_t>(s), n);
    v[offset + j] += p.divide(y[j]);
  }
  TransitivityWitness out{GridFunction(h, std::move(v), x.tag()), 0.0, 0.0};
  out.distance = distance(out.z, x, op.space().norm());
  out.bound = op.reciprocal_chain_bound(n) * op.norm(y);
  return out;
}

EigenPair eigenfunction(const ShiftOperator& op, Complex lambda, const GridFunction& seed, int blocks) {
  require_tag(op, seed, "seed");
  if (blocks < 2) throw ContractError("eigenfunction needs at least two blocks");
  if (seed.is_zero()) throw ContractError("eigenfunction seed must be nonzero");
  const double h = seed.step();
  const std::size_t s = op.shift_cells(h);
  if (seed.support_cells() > s) throw ContractError("eigenfunction seed support exceeds [0, a)");

  const bool c0 = op.space().kind == Space::Kind::C0;
  const std::size_t cells = s * static_cast<std::size_t>(blocks);
  std::vector<Complex> v(cells + (c0 ? 1 : 0));
  const auto& w = op.weight();
  ScaledComplex lambda_power;
  for (int k = 0; k < blocks; ++k) {
    for (std::size_t j = 0; j < s; ++j) {
      if (seed[j] == Complex{}) continue;
      const std::size_t idx = static_cast<std::size_t>(k) * s + j;
      const ScaledComplex p = w.grid_product(h, static_cast<std::int64_t>(idx) - static_cast<std::int64_t>(s),
                                             -static_cast<std::int64_t>(s), k);
      v[idx] = scaled_quotient(lambda_power, p, seed[j]);
    }
    lambda_power.multiply(lambda);
  }

  EigenPair out{lambda, GridFunction(h, std::move(v), seed.tag()), 0.0, blocks, {}, false, false};
  const GridFunction tx = op.apply_T(out.vector);
  const GridFunction lx = out.vector.scaled(lambda);
  const double xnorm = op.norm(out.vector);
  out.residual = restricted_distance(op, tx, lx, cells - s) / xnorm;

  for (int k = 0; k < blocks; ++k) {
    const auto block = out.vector.values().subspan(static_cast<std::size_t>(k) * s, s);
    GridFunction piece(h, std::vector<Complex>(block.begin(), block.end()), SpaceTag::Lp);
    out.block_masses.push_back(c0 ? norm_sup(piece) : std::pow(norm_lp(piece, op.space().p), op.space().p));
  }
  out.in_point_spectrum = op.bounded() ? std::abs(lambda) < w.sup_norm() : true;
  out.tail_divergent = out.block_masses.back() >= out.block_masses.front() * (1.0 - 1e-9);
  return out;
}

HypercyclicVector hypercyclic_vector(const ShiftOperator& op, std::span<const GridFunction> targets,
                                     double tolerance) {
  if (!(tolerance > 0.0)) throw ContractError("tolerance must be positive");
  if (targets.empty()) throw ContractError("hypercyclic vector needs at least one target");
  const double h = targets.front().step();
  for (const GridFunction& y : targets) {
    require_tag(op, y, "target");
    if (std::fabs(y.step() - h) > 1e-12 * h) throw ContractError("targets use different grids");
  }
  const std::size_t s = op.shift_cells(h);
  constexpr int kMaxExponent = 4000;

  std::vector<double> norms;
  for (const GridFunction& y : targets) norms.push_back(op.norm(y));

  // Spacing: later exponents clear the support of every earlier target, and
  // the tail sum_{j>i} c_{m_j - m_i} ||y_j|| stays below tolerance / 2.
  std::vector<int> m{1};
  for (std::size_t k = 1; k < targets.size(); ++k) {
    const auto gap = static_cast<int>(std::max<std::size_t>(1, blocks_needed(targets[k - 1].support_cells(), s)));
    int candidate = m.back() + gap;
    auto fits = [&](int mk) {
      for (std::size_t i = 0; i < k; ++i) {
        const double budget = 0.5 * tolerance * std::ldexp(1.0, -static_cast<int>(k - i));
        if (op.s_power_bound(mk - m[i], h) * norms[k] > budget) return false;
      }
      return true;
    };
    while (!fits(candidate)) {
      if (++candidate > kMaxExponent) throw OverflowError("hypercyclic schedule exceeds representable exponents");
    }
    m.push_back(candidate);
  }

  GridFunction x = GridFunction::zero(h, op.space().tag());
  for (std::size_t k = 0; k < targets.size(); ++k) x = x + op.apply_Sn(targets[k], m[k]);

  HypercyclicVector out{x, m, {}};
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const double d = distance(op.apply_Tn(x, m[k]), targets[k], op.space().norm());
    if (!(d <= tolerance)) {
      throw OverflowError("hypercyclic target missed: iterates left double precision range");
    }
    out.distances.push_back(d);
  }
  return out;
}

SpectrumClassification classify_spectrum(const ShiftOperator& op) {
  SpectrumClassification c;
  c.bounded_source = op.bounded();
  if (op.bounded()) {
    const double r = op.weight().sup_norm();
    c.point = Region{Region::Kind::OpenDisk, r};
    c.continuous = Region{Region::Kind::Circle, r};
  } else {
    c.point = Region{Region::Kind::WholePlane, 0.0};
    c.continuous = Region{Region::Kind::Empty, 0.0};
  }
  c.residual = Region{Region::Kind::Empty, 0.0};
  return c;
}

}  // namespace shiftlab
