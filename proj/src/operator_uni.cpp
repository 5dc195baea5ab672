#include "tnn/operator_uni.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "tnn/error.hpp"
#include "tnn/format.hpp"

namespace tnn {

NodeWeighting::NodeWeighting(ActivationKernel kernel, IrregularGrid grid)
    : kernel_(std::move(kernel)), grid_(std::move(grid)) {}

std::pair<std::size_t, std::size_t> NodeWeighting::active_range(double y) const {
  const auto nodes = grid_.nodes();
  const double reach = grid_.d1() * (1.0 + 1e-9);
  const auto first = std::upper_bound(nodes.begin(), nodes.end(), y - reach);
  const auto last = std::lower_bound(first, nodes.end(), y + reach);
  return {static_cast<std::size_t>(first - nodes.begin()), static_cast<std::size_t>(last - nodes.begin())};
}

void NodeWeighting::require_in_domain(double y) const {
  if (!grid_.interval().contains(y)) {
    throw Error(ErrorCode::OutOfDomain, "y = " + format_real(y) + " outside [" + format_real(grid_.interval().lo) +
                                            ", " + format_real(grid_.interval().hi) + "]");
  }
}

namespace {

// sum_k w_k p_k(y) / sum_k w_k over k in [first, last).
template <class Local>
double blend(const NodeWeighting& weighting, double y, std::size_t first, std::size_t last, const Local& local) {
  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t k = first; k < last; ++k) {
    const double w = weighting.weight(y, k);
    if (w == 0.0) continue;
    numerator += w * local(k, y);
    denominator += w;
  }
  return numerator / denominator;
}

}  // namespace

TaylorInterpolant::TaylorInterpolant(NodeWeighting weighting, int order, std::vector<TaylorCenter> centers)
    : weighting_(std::move(weighting)), order_(order), centers_(std::move(centers)) {}

TaylorInterpolant TaylorInterpolant::build(ActivationKernel kernel, IrregularGrid grid, int r,
                                           const TargetFunction& target) {
  if (r < 0) throw Error(ErrorCode::InvalidParameter, "order r must be non-negative");
  if (target.max_order() < r) {
    throw Error(ErrorCode::InsufficientDerivatives, target.name() + " has derivatives up to order " +
                                                        std::to_string(target.max_order()) + ", r = " +
                                                        std::to_string(r));
  }
  std::vector<TaylorCenter> centers;
  centers.reserve(grid.size());
  for (double z : grid.nodes()) centers.push_back(make_taylor_center(target, z, r));
  return TaylorInterpolant(NodeWeighting(std::move(kernel), std::move(grid)), r, std::move(centers));
}

double TaylorInterpolant::operator()(double y) const {
  weighting_.require_in_domain(y);
  const auto [first, last] = weighting_.active_range(y);
  return blend(weighting_, y, first, last, [this](std::size_t k, double t) { return centers_[k](t); });
}

double TaylorInterpolant::evaluate_all_nodes(double y) const {
  weighting_.require_in_domain(y);
  return blend(weighting_, y, 0, centers_.size(), [this](std::size_t k, double t) { return centers_[k](t); });
}

std::vector<double> TaylorInterpolant::evaluate(std::span<const double> ys) const {
  std::vector<double> out(ys.size());
  std::transform(ys.begin(), ys.end(), out.begin(), [this](double y) { return (*this)(y); });
  return out;
}

double TaylorInterpolant::denominator(double y) const {
  weighting_.require_in_domain(y);
  const auto [first, last] = weighting_.active_range(y);
  double sum = 0.0;
  for (std::size_t k = first; k < last; ++k) sum += weighting_.weight(y, k);
  return sum;
}

StabilityConstants TaylorInterpolant::stability_constants() const {
  const auto& kernel = weighting_.kernel();
  const double d1 = grid().d1();
  const double d2 = grid().d2();
  StabilityConstants out;
  out.c_sigma = kernel(kernel.m() * d2 / d1);
  double term = 1.0;
  out.m_r = 1.0;
  for (int j = 1; j <= order_; ++j) {
    term *= d1 / j;
    out.m_r += term;
  }
  out.bound = out.m_r / out.c_sigma;
  return out;
}

double LagrangeStencil::operator()(double y) const noexcept {
  if (nodes.size() == 1) return values.front();
  // Second (true) barycentric form; exact hit returns the sample.
  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double diff = y - nodes[i];
    if (diff == 0.0) return values[i];
    const double t = weights[i] / diff;
    numerator += t * values[i];
    denominator += t;
  }
  return numerator / denominator;
}

LagrangeInterpolant::LagrangeInterpolant(NodeWeighting weighting, int order, std::vector<LagrangeStencil> stencils)
    : weighting_(std::move(weighting)), order_(order), stencils_(std::move(stencils)) {}

LagrangeInterpolant LagrangeInterpolant::build(ActivationKernel kernel, IrregularGrid grid, int r,
                                               const TargetFunction& target) {
  if (r < 0) throw Error(ErrorCode::InvalidParameter, "order r must be non-negative");
  const std::size_t width = static_cast<std::size_t>(r) + 1;
  if (grid.size() < width) {
    throw Error(ErrorCode::TooFewNodes, "r = " + std::to_string(r) + " needs " + std::to_string(width) +
                                            " nodes, grid has " + std::to_string(grid.size()));
  }
  const auto nodes = grid.nodes();
  std::vector<double> values(nodes.size());
  std::transform(nodes.begin(), nodes.end(), values.begin(), [&](double z) { return target(z); });

  std::vector<LagrangeStencil> stencils;
  stencils.reserve(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    LagrangeStencil s;
    s.first = std::min(k, nodes.size() - width);
    s.nodes.assign(nodes.begin() + static_cast<std::ptrdiff_t>(s.first),
                   nodes.begin() + static_cast<std::ptrdiff_t>(s.first + width));
    s.values.assign(values.begin() + static_cast<std::ptrdiff_t>(s.first),
                    values.begin() + static_cast<std::ptrdiff_t>(s.first + width));
    s.weights.assign(width, 1.0);
    for (std::size_t i = 0; i < width; ++i) {
      for (std::size_t j = 0; j < width; ++j) {
        if (i != j) s.weights[i] /= s.nodes[i] - s.nodes[j];
      }
    }
    stencils.push_back(std::move(s));
  }
  return LagrangeInterpolant(NodeWeighting(std::move(kernel), std::move(grid)), r, std::move(stencils));
}

double LagrangeInterpolant::operator()(double y) const {
  weighting_.require_in_domain(y);
  const auto [first, last] = weighting_.active_range(y);
  return blend(weighting_, y, first, last, [this](std::size_t k, double t) { return stencils_[k](t); });
}

double LagrangeInterpolant::evaluate_all_nodes(double y) const {
  weighting_.require_in_domain(y);
  return blend(weighting_, y, 0, stencils_.size(), [this](std::size_t k, double t) { return stencils_[k](t); });
}

std::vector<double> LagrangeInterpolant::evaluate(std::span<const double> ys) const {
  std::vector<double> out(ys.size());
  std::transform(ys.begin(), ys.end(), out.begin(), [this](double y) { return (*this)(y); });
  return out;
}

}  // namespace tnn
