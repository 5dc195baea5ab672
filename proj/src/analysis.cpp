#include "tnn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "tnn/error.hpp"

namespace tnn {

std::vector<double> error_sample_points(const IrregularGrid& grid, std::size_t count) {
  if (count < 2) throw Error(ErrorCode::InvalidParameter, "need at least 2 error samples");
  const Interval& iv = grid.interval();
  std::vector<double> ys;
  ys.reserve(count + grid.size());
  for (std::size_t i = 0; i < count; ++i) {
    ys.push_back(iv.lo + iv.length() * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  ys.back() = iv.hi;
  ys.insert(ys.end(), grid.nodes().begin(), grid.nodes().end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  return ys;
}

ErrorReport sup_error(const RealFunction& approx, const RealFunction& exact, const IrregularGrid& grid,
                      std::size_t sample_count, std::string operator_id, int r) {
  ErrorReport report;
  report.operator_id = std::move(operator_id);
  report.n = grid.n();
  report.r = r;
  report.mesh = grid.stats();
  const auto ys = error_sample_points(grid, sample_count);
  report.sample_count = ys.size();
  report.argmax = {ys.front()};
  for (double y : ys) {
    const double e = std::abs(approx(y) - exact(y));
    if (e > report.sup_error) {
      report.sup_error = e;
      report.argmax = {y};
    }
  }
  for (double z : grid.nodes()) report.node_residual = std::max(report.node_residual, std::abs(approx(z) - exact(z)));
  return report;
}

ErrorReport sup_error(const TaylorInterpolant& interp, const TargetFunction& target, std::size_t sample_count) {
  return sup_error([&](double y) { return interp(y); }, [&](double y) { return target(y); }, interp.grid(),
                   sample_count, operator_name(OperatorKind::Taylor), interp.order());
}

ErrorReport sup_error(const LagrangeInterpolant& interp, const TargetFunction& target, std::size_t sample_count) {
  return sup_error([&](double y) { return interp(y); }, [&](double y) { return target(y); }, interp.grid(),
                   sample_count, operator_name(OperatorKind::Lagrange), interp.order());
}

ErrorReport sup_error(const MultiTaylorInterpolant& interp, const MultiTargetFunction& target,
                      std::size_t samples_per_axis) {
  if (samples_per_axis < 2) throw Error(ErrorCode::InvalidParameter, "need at least 2 samples per axis");
  const TensorGrid& grid = interp.grid();
  const std::size_t dim = grid.dim();
  ErrorReport report;
  report.operator_id = "taylor";
  report.n = grid.n();
  report.r = interp.order();
  report.mesh = grid.stats();

  std::vector<double> y(dim);
  report.argmax.assign(dim, 0.0);
  auto visit = [&](std::span<const double> point, bool is_node) {
    const double e = std::abs(interp(point) - target(point));
    if (e > report.sup_error) {
      report.sup_error = e;
      report.argmax.assign(point.begin(), point.end());
    }
    if (is_node) report.node_residual = std::max(report.node_residual, e);
    ++report.sample_count;
  };

  std::size_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) total *= samples_per_axis;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t i = dim; i-- > 0;) {
      const Interval& iv = grid.axis(i).interval();
      const std::size_t j = rest % samples_per_axis;
      rest /= samples_per_axis;
      y[i] = j + 1 == samples_per_axis
                 ? iv.hi
                 : iv.lo + iv.length() * static_cast<double>(j) / static_cast<double>(samples_per_axis - 1);
    }
    visit(y, false);
  }
  for (std::size_t flat = 0; flat < grid.node_count(); ++flat) visit(grid.node(flat), true);
  return report;
}

PowerLawFit fit_power_law(std::span<const double> h, std::span<const double> error) {
  if (h.size() != error.size()) throw Error(ErrorCode::InvalidParameter, "h and error lengths differ");
  const std::size_t count = h.size();
  if (count < 2) throw Error(ErrorCode::SlopeUndefined, "need at least 2 points with nonzero error");
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    mean_x += std::log(h[i]);
    mean_y += std::log(error[i]);
  }
  mean_x /= static_cast<double>(count);
  mean_y /= static_cast<double>(count);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double dx = std::log(h[i]) - mean_x;
    sxx += dx * dx;
    sxy += dx * (std::log(error[i]) - mean_y);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::SlopeUndefined, "abscissae are all equal");
  const double slope = sxy / sxx;
  return PowerLawFit{slope, mean_y - slope * mean_x};
}

ConvergenceTable make_convergence_table(std::string operator_id, int r, std::vector<ErrorReport> rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].n > rows[i - 1].n) || !(rows[i].mesh.h < rows[i - 1].mesh.h)) {
      throw Error(ErrorCode::InvalidParameter, "convergence rows must have increasing n and decreasing h");
    }
  }
  ConvergenceTable table;
  table.operator_id = std::move(operator_id);
  table.r = r;
  table.rows = std::move(rows);

  std::vector<double> hs, ns, errors;
  for (const auto& row : table.rows) {
    if (row.sup_error <= kNoiseFloor) continue;
    hs.push_back(row.mesh.h);
    ns.push_back(static_cast<double>(row.n));
    errors.push_back(row.sup_error);
  }
  if (errors.empty() && !table.rows.empty()) {
    table.regime = ConvergenceRegime::ExactReproduction;
    table.fitted_order = std::numeric_limits<double>::quiet_NaN();
    table.fitted_order_n = std::numeric_limits<double>::quiet_NaN();
    table.log_constant = std::numeric_limits<double>::quiet_NaN();
    return table;
  }
  const PowerLawFit fit = fit_power_law(hs, errors);
  table.fitted_order = fit.order;
  table.log_constant = fit.log_constant;
  table.fitted_order_n = -fit_power_law(ns, errors).order;
  return table;
}

std::string operator_name(OperatorKind kind) { return kind == OperatorKind::Taylor ? "taylor" : "lagrange"; }

ConvergenceTable convergence_study(OperatorKind kind, const ActivationKernel& kernel,
                                   std::span<const IrregularGrid> ladder, const TargetFunction& target, int r,
                                   std::size_t sample_count) {
  std::vector<ErrorReport> rows;
  rows.reserve(ladder.size());
  for (const auto& grid : ladder) {
    if (kind == OperatorKind::Taylor) {
      rows.push_back(sup_error(TaylorInterpolant::build(kernel, grid, r, target), target, sample_count));
    } else {
      rows.push_back(sup_error(LagrangeInterpolant::build(kernel, grid, r, target), target, sample_count));
    }
  }
  return make_convergence_table(operator_name(kind), r, std::move(rows));
}

ConvergenceTable convergence_study(const ActivationKernel& kernel, std::span<const TensorGrid> ladder,
                                   const MultiTargetFunction& target, int r, std::size_t samples_per_axis) {
  std::vector<ErrorReport> rows;
  rows.reserve(ladder.size());
  for (const auto& grid : ladder) {
    rows.push_back(sup_error(MultiTaylorInterpolant::build(kernel, grid, r, target), target, samples_per_axis));
  }
  return make_convergence_table("taylor", r, std::move(rows));
}

ModulusResult modulus_of_smoothness(const RealFunction& g, Interval domain, int order, double delta,
                                    std::size_t base_samples, std::size_t steps_per_octave) {
  if (order < 1) throw Error(ErrorCode::InvalidParameter, "modulus order must be at least 1");
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidParameter, "delta must be positive");
  if (base_samples < 2 || steps_per_octave < 1) throw Error(ErrorCode::InvalidParameter, "too few modulus samples");

  std::vector<double> binom(static_cast<std::size_t>(order) + 1, 1.0);
  for (int j = 1; j <= order; ++j) binom[j] = binom[j - 1] * (order - j + 1) / j;

  ModulusResult result{order, delta, 0.0, domain.lo, 0.0};
  bool admissible = false;
  const double length = domain.length();
  const std::size_t steps = kModulusStepOctaves * steps_per_octave + 1;
  for (std::size_t s = 0; s < steps; ++s) {
    const double h = delta * std::exp2(-static_cast<double>(s) / static_cast<double>(steps_per_octave));
    const double span = length - order * h;
    if (span < 0.0) continue;
    admissible = true;
    for (std::size_t b = 0; b < base_samples; ++b) {
      const double x = domain.lo + span * static_cast<double>(b) / static_cast<double>(base_samples - 1);
      double diff = 0.0;
      for (int j = 0; j <= order; ++j) {
        const double point = std::min(x + j * h, domain.hi);
        diff += (((order - j) % 2) ? -binom[j] : binom[j]) * g(point);
      }
      if (std::abs(diff) > result.value) {
        result.value = std::abs(diff);
        result.argmax_x = x;
        result.argmax_h = h;
      }
    }
  }
  if (!admissible) {
    throw Error(ErrorCode::NoAdmissibleStep, "no sampled step h <= delta keeps x + k h inside the interval");
  }
  return result;
}

ModulusResult modulus_of_smoothness(const TargetFunction& g, int order, double delta, std::size_t base_samples,
                                    std::size_t steps_per_octave) {
  return modulus_of_smoothness([&](double y) { return g(y); }, g.domain(), order, delta, base_samples,
                               steps_per_octave);
}

JacksonPoint jackson_check(const TaylorInterpolant& interp, const TargetFunction& target, std::size_t sample_count) {
  JacksonPoint point;
  point.error = sup_error(interp, target, sample_count);
  point.modulus = modulus_of_smoothness([&](double y) { return target(y); }, interp.grid().interval(),
                                        interp.order() + 1, interp.grid().d2());
  point.inconclusive = point.error.sup_error <= kNoiseFloor && point.modulus.value <= kNoiseFloor;
  if (point.modulus.value > 0.0) {
    point.ratio = point.error.sup_error / point.modulus.value;
  } else {
    point.ratio = std::numeric_limits<double>::quiet_NaN();
    point.inconclusive = true;
  }
  return point;
}

JacksonReport jackson_ladder(const ActivationKernel& kernel, std::span<const IrregularGrid> ladder,
                             const TargetFunction& target, int r, std::size_t sample_count, double max_spread) {
  JacksonReport report;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& grid : ladder) {
    report.levels.push_back(jackson_check(TaylorInterpolant::build(kernel, grid, r, target), target, sample_count));
    const auto& level = report.levels.back();
    if (level.inconclusive) continue;
    lo = std::min(lo, level.ratio);
    hi = std::max(hi, level.ratio);
  }
  if (!(hi > 0.0)) {
    report.inconclusive = true;
    report.spread = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  report.spread = hi / lo;
  report.bounded = report.spread <= max_spread;
  return report;
}

std::string winner_name(Winner w) {
  switch (w) {
    case Winner::Taylor: return "taylor";
    case Winner::Lagrange: return "lagrange";
    case Winner::Tie: return "tie";
  }
  return "tie";
}

Comparison compare(const TaylorInterpolant& taylor, const LagrangeInterpolant& lagrange, const TargetFunction& target,
                   std::size_t sample_count) {
  if (taylor.order() != lagrange.order()) throw Error(ErrorCode::InvalidParameter, "operators have different r");
  Comparison out;
  out.taylor = sup_error(taylor, target, sample_count);
  out.lagrange = sup_error(lagrange, target, sample_count);
  const double et = out.taylor.sup_error;
  const double el = out.lagrange.sup_error;
  out.ratio = el > 0.0 ? et / el : (et > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
  if ((et <= kNoiseFloor && el <= kNoiseFloor) || std::abs(et - el) <= 1e-13) {
    out.winner = Winner::Tie;
  } else {
    out.winner = et < el ? Winner::Taylor : Winner::Lagrange;
  }
  return out;
}

}  // namespace tnn
