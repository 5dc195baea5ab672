#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "tnn/activation.hpp"
#include "tnn/grid.hpp"
#include "tnn/targets.hpp"

namespace tnn {

/// Kernel weights sigma(2m (y - z_k) / d1) over a grid. Only nodes with
/// |y - z_k| < d1 can carry weight (M3), so lookups are a binary search.
class NodeWeighting {
 public:
  NodeWeighting(ActivationKernel kernel, IrregularGrid grid);

  const ActivationKernel& kernel() const noexcept { return kernel_; }
  const IrregularGrid& grid() const noexcept { return grid_; }

  double weight(double y, std::size_t k) const { return kernel_(2.0 * kernel_.m() * (y - grid_.node(k)) / grid_.d1()); }
  /// Half-open index range [first, last) of nodes within d1 of y, padded by a
  /// relative 1e-9 so rounding in the kernel argument can never drop a weight.
  std::pair<std::size_t, std::size_t> active_range(double y) const;
  /// Throws OutOfDomain unless y lies in the grid interval.
  void require_in_domain(double y) const;

 private:
  ActivationKernel kernel_;
  IrregularGrid grid_;
};

struct StabilityConstants {
  double c_sigma = 0.0;  // sigma(m d2 / d1), lower bound of the denominator
  double m_r = 0.0;      // sum_{j<=r} d1^j / j!
  double bound = 0.0;    // m_r / c_sigma
};

/// Kernel-weighted average of degree-r Taylor polynomials centred at the
/// grid nodes. Interpolates at every node and reproduces degree-r polynomials.
/// Coefficients are cached at build time; evaluation never touches the target.
class TaylorInterpolant {
 public:
  /// Throws InsufficientDerivatives when target.max_order() < r.
  static TaylorInterpolant build(ActivationKernel kernel, IrregularGrid grid, int r, const TargetFunction& target);

  /// Locality-restricted evaluation, O(log n). Throws OutOfDomain.
  double operator()(double y) const;
  /// Literal O(n) sum over every node; test oracle for operator().
  double evaluate_all_nodes(double y) const;
  std::vector<double> evaluate(std::span<const double> ys) const;

  /// Weight sum at y; at least c_sigma everywhere on the interval. Throws OutOfDomain.
  double denominator(double y) const;
  StabilityConstants stability_constants() const;

  int order() const noexcept { return order_; }
  const IrregularGrid& grid() const noexcept { return weighting_.grid(); }
  const ActivationKernel& kernel() const noexcept { return weighting_.kernel(); }
  std::span<const TaylorCenter> centers() const noexcept { return centers_; }

 private:
  TaylorInterpolant(NodeWeighting weighting, int order, std::vector<TaylorCenter> centers);

  NodeWeighting weighting_;
  int order_;
  std::vector<TaylorCenter> centers_;
};

/// Lagrange polynomial through r+1 consecutive nodes, barycentric form.
struct LagrangeStencil {
  std::size_t first = 0;
  std::vector<double> nodes;
  std::vector<double> values;
  std::vector<double> weights;

  double operator()(double y) const noexcept;
};

/// Baseline reconstruction of a Lagrange-type kernel operator: same weights
/// as TaylorInterpolant, but node k carries the Lagrange interpolant of g on
/// {z_k, ..., z_{k+r}}, shifted left near the right end to stay in the grid.
/// Only target values are used.
class LagrangeInterpolant {
 public:
  /// Throws TooFewNodes when the grid has fewer than r + 1 nodes.
  static LagrangeInterpolant build(ActivationKernel kernel, IrregularGrid grid, int r, const TargetFunction& target);

  double operator()(double y) const;
  double evaluate_all_nodes(double y) const;
  std::vector<double> evaluate(std::span<const double> ys) const;

  int order() const noexcept { return order_; }
  const IrregularGrid& grid() const noexcept { return weighting_.grid(); }
  std::span<const LagrangeStencil> stencils() const noexcept { return stencils_; }

 private:
  LagrangeInterpolant(NodeWeighting weighting, int order, std::vector<LagrangeStencil> stencils);

  NodeWeighting weighting_;
  int order_;
  std::vector<LagrangeStencil> stencils_;
};

}  // namespace tnn
