#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tnn/activation.hpp"
#include "tnn/grid.hpp"
#include "tnn/targets.hpp"

namespace tnn {

struct BoxDomain {
  std::vector<Interval> axes;

  std::size_t dim() const noexcept { return axes.size(); }
  bool contains(std::span<const double> y) const noexcept;
};

/// Cartesian product of per-axis irregular grids with equal node counts.
/// d1/d2 are global (min/max over every axis gap) and must satisfy d2 < 2 d1.
class TensorGrid {
 public:
  /// Throws InvalidParameter on empty input or unequal node counts,
  /// QuasiUniformityViolated when the global ratio reaches 2.
  static TensorGrid from_axes(std::vector<IrregularGrid> axes);

  std::size_t dim() const noexcept { return axes_.size(); }
  const IrregularGrid& axis(std::size_t i) const { return axes_[i]; }
  /// Gap count per axis.
  std::size_t n() const noexcept { return axes_.front().n(); }
  std::size_t nodes_per_axis() const noexcept { return axes_.front().size(); }
  std::size_t node_count() const noexcept;
  double d1() const noexcept { return d1_; }
  double d2() const noexcept { return d2_; }
  MeshStats stats() const noexcept;
  BoxDomain domain() const;

  /// Coordinates of the node with flat index `flat` (axis 0 varies slowest).
  std::vector<double> node(std::size_t flat) const;

  /// Refines every axis with the global gap bounds as the clamp, so the
  /// child remains globally quasi-uniform.
  TensorGrid refine(std::uint64_t seed, double jitter = kDefaultRefineJitter) const;

 private:
  TensorGrid(std::vector<IrregularGrid> axes, double d1, double d2);

  std::vector<IrregularGrid> axes_;
  double d1_;
  double d2_;
};

/// Per-axis seeds are successive SplitMix64 outputs of `seed`; level L of
/// the ladder refines with seed + L.
TensorGrid generate_tensor_grid(const BoxDomain& box, std::size_t n, double jitter, std::uint64_t seed);
std::vector<TensorGrid> tensor_ladder(const BoxDomain& box, std::size_t n, std::size_t levels, double jitter,
                                      std::uint64_t seed);

using MultiIndex = std::vector<int>;

/// All multi-indices of dimension `dim` with |alpha| <= r, graded
/// lexicographic: by total degree, then lexicographically descending.
std::vector<MultiIndex> graded_multi_indices(std::size_t dim, int r);

using PartialFunction = std::function<double(std::span<const int>, std::span<const double>)>;

class MultiTargetFunction {
 public:
  MultiTargetFunction(std::string name, BoxDomain domain, int max_total_order, PartialFunction partial);

  const std::string& name() const noexcept { return name_; }
  const BoxDomain& domain() const noexcept { return domain_; }
  std::size_t dim() const noexcept { return domain_.dim(); }
  int max_total_order() const noexcept { return max_total_order_; }

  double operator()(std::span<const double> y) const;
  /// D^alpha g(y). Throws InsufficientDerivatives when |alpha| > max_total_order().
  double partial(std::span<const int> alpha, std::span<const double> y) const;

 private:
  std::string name_;
  BoxDomain domain_;
  int max_total_order_;
  PartialFunction partial_;
};

/// g(y) = prod_i f_i(y_i); D^alpha g = prod_i f_i^(alpha_i)(y_i).
MultiTargetFunction separable_target(std::vector<TargetFunction> factors);

/// "sincos": sin(2 pi y_1) prod_{i>1} cos(2 pi y_i) on [0,1]^dim.
/// "monomial:b1,...,bd": y^beta on [0,1]^dim.
/// Throws UnknownTarget.
MultiTargetFunction builtin_multi_target(std::string_view name, std::size_t dim);

/// Psi(y) = prod_i sigma(y_i).
double psi_eval(const ActivationKernel& kernel, std::span<const double> y);

struct MultiTaylorCenter {
  std::vector<double> center;
  std::vector<double> coefficients;  // D^alpha g(center) / alpha!, in `indices` order
};

double multi_taylor_eval(const MultiTargetFunction& target, std::span<const double> center, int r,
                         std::span<const double> y);

/// Tensor-product Taylor-accelerated operator with product kernel weights
/// Psi(2m (y - z_k) / d1) and total-degree-r Taylor polynomials.
class MultiTaylorInterpolant {
 public:
  static MultiTaylorInterpolant build(ActivationKernel kernel, TensorGrid grid, int r,
                                      const MultiTargetFunction& target);

  /// Sums only the product of per-axis active node sets. Throws OutOfDomain.
  double operator()(std::span<const double> y) const;
  /// Full multi-index sum; test oracle.
  double evaluate_all_nodes(std::span<const double> y) const;

  int order() const noexcept { return order_; }
  const TensorGrid& grid() const noexcept { return grid_; }
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
  std::size_t coefficients_per_node() const noexcept { return indices_.size(); }
  /// Cached D^alpha g(z_k)/alpha! for flat node k.
  std::span<const double> coefficients(std::size_t flat) const;

 private:
  MultiTaylorInterpolant(ActivationKernel kernel, TensorGrid grid, int order, std::vector<MultiIndex> indices,
                         std::vector<double> table);

  void require_in_domain(std::span<const double> y) const;
  double local_polynomial(std::size_t flat, std::span<const std::size_t> idx, std::span<const double> y) const;
  double axis_weight(std::size_t axis, std::size_t k, double y) const;

  ActivationKernel kernel_;
  TensorGrid grid_;
  int order_;
  std::vector<MultiIndex> indices_;
  std::vector<double> table_;
};

}  // namespace tnn
