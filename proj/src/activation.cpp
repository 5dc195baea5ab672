#include "tnn/activation.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "tnn/error.hpp"

namespace tnn {

namespace {

void require_positive_m(double m) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw Error(ErrorCode::InvalidParameter, "m must be a positive finite real, got " + std::to_string(m));
  }
}

// Equispaced points on [lo, hi], both endpoints included.
std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  out.back() = hi;
  return out;
}

AxiomCheck make_check(std::string name, double violation, double tol) {
  return AxiomCheck{std::move(name), violation, violation <= tol};
}

}  // namespace

SigmoidalFunction::SigmoidalFunction(double m, RealFunction eval) : m_(m), eval_(std::move(eval)) {
  require_positive_m(m);
  if (!eval_) throw Error(ErrorCode::InvalidParameter, "sigmoid evaluation callable is empty");
}

ActivationKernel::ActivationKernel(double m, RealFunction sigma) : m_(m), sigma_(std::move(sigma)) {
  require_positive_m(m);
  if (!sigma_) throw Error(ErrorCode::InvalidParameter, "kernel evaluation callable is empty");
}

SigmoidalFunction make_ramp_sigmoid(double m) {
  require_positive_m(m);
  return SigmoidalFunction(m, [m](double y) {
    if (y <= -m) return 0.0;
    if (y >= m) return 1.0;
    return (y + m) / (2.0 * m);
  });
}

ActivationKernel make_kernel(const SigmoidalFunction& eta) {
  const double m = eta.m();
  return ActivationKernel(m, [eta, m](double y) { return eta(y + m) - eta(y - m); });
}

ActivationKernel make_ramp_kernel(double m) { return make_kernel(make_ramp_sigmoid(m)); }

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck& VerificationReport::check(const std::string& name) const {
  auto it = std::find_if(checks.begin(), checks.end(), [&](const AxiomCheck& c) { return c.name == name; });
  if (it == checks.end()) throw Error(ErrorCode::InvalidParameter, "no check named " + name);
  return *it;
}

VerificationReport verify_sigmoid(const SigmoidalFunction& eta, std::size_t samples, double tol) {
  if (samples < 2) throw Error(ErrorCode::InvalidParameter, "need at least 2 samples");
  const double m = eta.m();

  std::vector<double> ys = linspace(-3.0 * m, 3.0 * m, samples);
  ys.insert(ys.end(), {-m, m, 0.0});
  std::sort(ys.begin(), ys.end());

  double tails = 0.0;
  double interior = 0.0;
  bool strictly_inside = true;
  double monotone = 0.0;
  double prev = eta(ys.front());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double y = ys[i];
    const double v = eta(y);
    if (y <= -m) {
      tails = std::max(tails, std::abs(v));
    } else if (y >= m) {
      tails = std::max(tails, std::abs(v - 1.0));
    } else {
      interior = std::max({interior, -v, v - 1.0});
      // Within rounding distance of +-m a valid sigmoid may evaluate to 0 or 1.
      if (m - std::abs(y) > tol * m) strictly_inside = strictly_inside && v > 0.0 && v < 1.0;
    }
    if (i > 0) monotone = std::max(monotone, prev - v);
    prev = v;
  }

  VerificationReport report;
  report.checks.push_back(make_check("D1", tails, tol));
  AxiomCheck inside = make_check("D2", interior, tol);
  inside.passed = inside.passed && strictly_inside;
  report.checks.push_back(inside);
  report.checks.push_back(make_check("D3", monotone, tol));
  return report;
}

VerificationReport verify_kernel(const ActivationKernel& kernel, std::size_t samples, double tol) {
  if (samples < 2) throw Error(ErrorCode::InvalidParameter, "need at least 2 samples");
  const double m = kernel.m();
  const double radius = kernel.support_radius();

  std::vector<double> ys = linspace(-1.5 * radius, 1.5 * radius, samples);
  ys.insert(ys.end(), {-radius, radius, -m, m, 0.0});
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  std::vector<double> values(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) values[i] = kernel(ys[i]);
  for (std::size_t i = 0; i < ys.size(); ++i) {
    m1 = std::max(m1, -values[i]);
    if (std::abs(ys[i]) >= radius) m3 = std::max(m3, std::abs(values[i]));
    if (i == 0) continue;
    // Non-decreasing up to 0, non-increasing from 0 on.
    if (ys[i] <= 0.0) {
      m2 = std::max(m2, values[i - 1] - values[i]);
    } else if (ys[i - 1] >= 0.0) {
      m2 = std::max(m2, values[i] - values[i - 1]);
    }
  }

  double m4 = 0.0;
  for (double y : linspace(0.0, radius, samples)) {
    m4 = std::max(m4, std::abs(kernel(y) + kernel(y - radius) - 1.0));
  }

  const double m5 = std::abs(kernel(0.0) - 1.0);

  VerificationReport report;
  report.checks.push_back(make_check("M1", m1, tol));
  report.checks.push_back(make_check("M2", m2, tol));
  report.checks.push_back(make_check("M3", m3, tol));
  report.checks.push_back(make_check("M4", m4, tol));
  report.checks.push_back(make_check("M5", m5, tol));
  return report;
}

}  // namespace tnn
