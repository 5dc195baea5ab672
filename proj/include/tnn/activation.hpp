#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace tnn {

using RealFunction = std::function<double(double)>;

/// A sigmoidal function of class D(m): non-decreasing, identically 0 on
/// (-inf, -m], identically 1 on [m, inf), strictly inside (0, 1) between.
/// The evaluation callable must be pure.
class SigmoidalFunction {
 public:
  SigmoidalFunction(double m, RealFunction eval);

  double m() const noexcept { return m_; }
  double operator()(double y) const { return eval_(y); }

 private:
  double m_;
  RealFunction eval_;
};

/// sigma(y) = eta(y + m) - eta(y - m): a bump supported on [-2m, 2m] with peak 1 at 0.
class ActivationKernel {
 public:
  /// Wraps an arbitrary sigma with a declared m; used for custom or
  /// intentionally defective kernels. `make_kernel` is the normal route.
  ActivationKernel(double m, RealFunction sigma);

  double m() const noexcept { return m_; }
  double support_radius() const noexcept { return 2.0 * m_; }
  double operator()(double y) const { return sigma_(y); }

 private:
  double m_;
  RealFunction sigma_;
};

SigmoidalFunction make_ramp_sigmoid(double m);
ActivationKernel make_kernel(const SigmoidalFunction& eta);
ActivationKernel make_ramp_kernel(double m = 1.0);

struct AxiomCheck {
  std::string name;
  double max_violation = 0.0;
  bool passed = true;
};

struct VerificationReport {
  std::vector<AxiomCheck> checks;

  bool passed() const;
  const AxiomCheck& check(const std::string& name) const;
};

inline constexpr std::size_t kDefaultVerifySamples = 10000;
inline constexpr double kDefaultVerifyTolerance = 1e-12;

/// Sample-based check of the three D(m) properties ("D1" zero/one tails,
/// "D2" strictly inside (0,1) on (-m,m) away from a tol*m rounding band at
/// the ends, "D3" monotone).
VerificationReport verify_sigmoid(const SigmoidalFunction& eta,
                                  std::size_t samples = kDefaultVerifySamples,
                                  double tol = kDefaultVerifyTolerance);

/// Sample-based check of kernel axioms M1..M5. Each entry records the worst
/// violation over the sample set; an axiom passes iff that violation <= tol.
VerificationReport verify_kernel(const ActivationKernel& kernel,
                                 std::size_t samples = kDefaultVerifySamples,
                                 double tol = kDefaultVerifyTolerance);

}  // namespace tnn
