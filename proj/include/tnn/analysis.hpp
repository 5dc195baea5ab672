#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tnn/grid.hpp"
#include "tnn/operator_multi.hpp"
#include "tnn/operator_uni.hpp"
#include "tnn/targets.hpp"

namespace tnn {

/// Errors at or below this are treated as round-off ("noise floor").
inline constexpr double kNoiseFloor = 1e-10;
inline constexpr std::size_t kDefaultErrorSamples = 10000;

struct ErrorReport {
  std::string operator_id;
  std::size_t n = 0;
  int r = 0;
  MeshStats mesh;
  double sup_error = 0.0;
  std::vector<double> argmax;  // one coordinate per dimension
  std::size_t sample_count = 0;
  double node_residual = 0.0;  // max |approx - exact| over grid nodes alone
};

/// Equispaced points over the interval (both ends included) merged with
/// every grid node, sorted and deduplicated.
std::vector<double> error_sample_points(const IrregularGrid& grid, std::size_t count);

/// Sup of |approx - exact| over `error_sample_points(grid, sample_count)`.
ErrorReport sup_error(const RealFunction& approx, const RealFunction& exact, const IrregularGrid& grid,
                      std::size_t sample_count, std::string operator_id = "custom", int r = 0);
ErrorReport sup_error(const TaylorInterpolant& interp, const TargetFunction& target,
                      std::size_t sample_count = kDefaultErrorSamples);
ErrorReport sup_error(const LagrangeInterpolant& interp, const TargetFunction& target,
                      std::size_t sample_count = kDefaultErrorSamples);
/// Tensor sample of `samples_per_axis`^d points plus every grid node.
ErrorReport sup_error(const MultiTaylorInterpolant& interp, const MultiTargetFunction& target,
                      std::size_t samples_per_axis);

struct PowerLawFit {
  double order = 0.0;         // slope of log(error) against log(h)
  double log_constant = 0.0;  // intercept, error ~ exp(log_constant) h^order
};

/// Least squares on (log h, log error); rows summed in the given order.
/// Throws SlopeUndefined with fewer than 2 points or degenerate abscissae.
PowerLawFit fit_power_law(std::span<const double> h, std::span<const double> error);

enum class ConvergenceRegime { Converging, ExactReproduction };

struct ConvergenceTable {
  std::string operator_id;
  int r = 0;
  std::vector<ErrorReport> rows;  // increasing n, strictly decreasing h
  ConvergenceRegime regime = ConvergenceRegime::Converging;
  double fitted_order = 0.0;    // against h; NaN in the exact-reproduction regime
  double fitted_order_n = 0.0;  // against n (negated slope)
  double log_constant = 0.0;
};

/// Fits the rows above the noise floor. All rows at the floor gives the
/// exact-reproduction regime; otherwise fewer than 2 usable rows throws SlopeUndefined.
ConvergenceTable make_convergence_table(std::string operator_id, int r, std::vector<ErrorReport> rows);

enum class OperatorKind { Taylor, Lagrange };
std::string operator_name(OperatorKind kind);

ConvergenceTable convergence_study(OperatorKind kind, const ActivationKernel& kernel,
                                   std::span<const IrregularGrid> ladder, const TargetFunction& target, int r,
                                   std::size_t sample_count = kDefaultErrorSamples);
ConvergenceTable convergence_study(const ActivationKernel& kernel, std::span<const TensorGrid> ladder,
                                   const MultiTargetFunction& target, int r, std::size_t samples_per_axis);

inline constexpr std::size_t kModulusBaseSamples = 2048;
/// Step sizes are delta * 2^(-s / steps_per_octave) down to delta *
/// 2^-kModulusStepOctaves. A whole number of steps per octave makes the step
/// sets for delta and 2 delta share every step above delta * 2^-kModulusStepOctaves.
inline constexpr std::size_t kModulusStepsPerOctave = 25;
inline constexpr std::size_t kModulusStepOctaves = 20;

struct ModulusResult {
  int order = 0;
  double delta = 0.0;
  double value = 0.0;
  double argmax_x = 0.0;
  double argmax_h = 0.0;
};

/// Brute-force omega_k(g, delta) = sup_{0 < h <= delta} sup_x |Delta_h^k g(x)|
/// over x with x + k h inside the interval. Negative steps are covered by
/// symmetry: Delta_{-h}^k g(x) = (-1)^k Delta_h^k g(x - k h). The discretized
/// sup is a lower bound of the true value.
/// Throws InvalidParameter (order < 1, delta <= 0) or NoAdmissibleStep.
ModulusResult modulus_of_smoothness(const RealFunction& g, Interval domain, int order, double delta,
                                    std::size_t base_samples = kModulusBaseSamples,
                                    std::size_t steps_per_octave = kModulusStepsPerOctave);
ModulusResult modulus_of_smoothness(const TargetFunction& g, int order, double delta,
                                    std::size_t base_samples = kModulusBaseSamples,
                                    std::size_t steps_per_octave = kModulusStepsPerOctave);

struct JacksonPoint {
  ErrorReport error;
  ModulusResult modulus;
  double ratio = 0.0;  // sup_error / omega_{r+1}(g, d2)
  bool inconclusive = false;
};

/// Ratio of the sup error to omega_{r+1}(g, d2). Inconclusive when both
/// sides sit at the noise floor.
JacksonPoint jackson_check(const TaylorInterpolant& interp, const TargetFunction& target,
                           std::size_t sample_count = kDefaultErrorSamples);

struct JacksonReport {
  std::vector<JacksonPoint> levels;
  double spread = 0.0;  // max ratio / min ratio over conclusive levels
  bool bounded = false;
  bool inconclusive = false;
};

inline constexpr double kJacksonMaxSpread = 3.0;

JacksonReport jackson_ladder(const ActivationKernel& kernel, std::span<const IrregularGrid> ladder,
                             const TargetFunction& target, int r, std::size_t sample_count = kDefaultErrorSamples,
                             double max_spread = kJacksonMaxSpread);

enum class Winner { Taylor, Lagrange, Tie };
std::string winner_name(Winner w);

struct Comparison {
  ErrorReport taylor;
  ErrorReport lagrange;
  double ratio = 1.0;  // taylor / lagrange
  Winner winner = Winner::Tie;
};

/// Tie when both errors are at the noise floor or differ by at most 1e-13.
Comparison compare(const TaylorInterpolant& taylor, const LagrangeInterpolant& lagrange, const TargetFunction& target,
                   std::size_t sample_count = kDefaultErrorSamples);

}  // namespace tnn
