#pragma once

#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "tnn/activation.hpp"
#include "tnn/grid.hpp"

namespace tnn {

enum class DerivativeSource { Analytic, FiniteDifference };

/// (order, y) -> g^(order)(y). Must be pure: interpolants call it from any thread.
using DerivativeFunction = std::function<double(int, double)>;

inline constexpr int kUnboundedOrder = std::numeric_limits<int>::max();

/// A target g on an interval with derivatives available up to `max_order`.
class TargetFunction {
 public:
  TargetFunction(std::string name, Interval domain, int max_order, DerivativeFunction deriv,
                 DerivativeSource source = DerivativeSource::Analytic);

  const std::string& name() const noexcept { return name_; }
  const Interval& domain() const noexcept { return domain_; }
  int max_order() const noexcept { return max_order_; }
  DerivativeSource source() const noexcept { return source_; }

  double operator()(double y) const { return deriv_(0, y); }
  /// Throws InsufficientDerivatives when order > max_order().
  double derivative(int order, double y) const;

 private:
  std::string name_;
  Interval domain_;
  int max_order_;
  DerivativeFunction deriv_;
  DerivativeSource source_;
};

/// sin(2 pi y) + y^3 on [0, 1], all derivatives analytic.
TargetFunction sine_cubic_target();
/// sum_i coeffs[i] y^i.
TargetFunction polynomial_target(std::vector<double> coeffs, Interval domain = {0.0, 1.0});
/// 1 / (1 + 25 y^2); derivatives from the partial-fraction form.
TargetFunction runge_target(Interval domain = {-1.0, 1.0});
TargetFunction exp_target(Interval domain = {0.0, 1.0});

/// Names: "paper_f", "runge", "exp", "poly:c0,c1,..." or "polynomial(c0,c1,...)".
/// An empty domain argument keeps each target's natural domain.
/// Throws UnknownTarget.
TargetFunction builtin_target(std::string_view name);
TargetFunction builtin_target(std::string_view name, Interval domain);

/// a*g + b*q on the domain of g, with max_order = min of both.
TargetFunction linear_combination(double a, const TargetFunction& g, double b, const TargetFunction& q);

inline constexpr int kMaxFiniteDifferenceOrder = 4;

/// Wraps a plain function with central finite-difference derivatives
/// (step eps^(1/(j+2)) * max(1, |y|), one Richardson step). Fallback only.
/// Throws InvalidParameter when max_order > 4.
TargetFunction fd_derivatives(std::string name, Interval domain, RealFunction f, int max_order);

/// Degree-r Taylor polynomial of g at a node, stored as g^(j)(center)/j!.
struct TaylorCenter {
  double center = 0.0;
  std::vector<double> coefficients;

  int order() const noexcept { return static_cast<int>(coefficients.size()) - 1; }
  /// Horner in (y - center).
  double operator()(double y) const noexcept;
};

TaylorCenter make_taylor_center(const TargetFunction& target, double center, int r);
double taylor_poly_eval(const TargetFunction& target, double center, int r, double y);

}  // namespace tnn
