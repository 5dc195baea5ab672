#include "tnn/targets.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

#include "tnn/error.hpp"
#include "tnn/format.hpp"

namespace tnn {

TargetFunction::TargetFunction(std::string name, Interval domain, int max_order, DerivativeFunction deriv,
                               DerivativeSource source)
    : name_(std::move(name)), domain_(domain), max_order_(max_order), deriv_(std::move(deriv)), source_(source) {
  if (max_order_ < 0) throw Error(ErrorCode::InvalidParameter, "max_order must be non-negative");
  if (!deriv_) throw Error(ErrorCode::InvalidParameter, "derivative callable is empty");
  if (!(domain_.lo < domain_.hi)) throw Error(ErrorCode::InvalidParameter, "domain must satisfy c < d");
}

double TargetFunction::derivative(int order, double y) const {
  if (order < 0 || order > max_order_) {
    throw Error(ErrorCode::InsufficientDerivatives, name_ + " provides derivatives up to order " +
                                                        std::to_string(max_order_) + ", requested " +
                                                        std::to_string(order));
  }
  return deriv_(order, y);
}

TargetFunction sine_cubic_target() {
  return TargetFunction("paper_f", {0.0, 1.0}, kUnboundedOrder, [](int j, double y) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    // d^j/dy^j sin(2 pi y) = (2 pi)^j sin(2 pi y + j pi / 2); reduce the phase shift exactly.
    const double s = std::sin(two_pi * y);
    const double c = std::cos(two_pi * y);
    const double trig = std::array<double, 4>{s, c, -s, -c}[j % 4];
    double cubic = 0.0;
    switch (j) {
      case 0: cubic = y * y * y; break;
      case 1: cubic = 3.0 * y * y; break;
      case 2: cubic = 6.0 * y; break;
      case 3: cubic = 6.0; break;
      default: break;
    }
    return std::pow(two_pi, j) * trig + cubic;
  });
}

TargetFunction polynomial_target(std::vector<double> coeffs, Interval domain) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  const int degree = static_cast<int>(coeffs.size()) - 1;
  std::string name = "poly:";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) name += ',';
    name += format_real(coeffs[i]);
  }
  return TargetFunction(std::move(name), domain, kUnboundedOrder, [coeffs = std::move(coeffs), degree](int j, double y) {
    if (j > degree) return 0.0;
    // Horner on the j-th derivative's coefficients a_i * i! / (i - j)!.
    double acc = 0.0;
    for (int i = degree; i >= j; --i) {
      double falling = 1.0;
      for (int t = 0; t < j; ++t) falling *= static_cast<double>(i - t);
      acc = acc * y + coeffs[static_cast<std::size_t>(i)] * falling;
    }
    return acc;
  });
}

TargetFunction runge_target(Interval domain) {
  return TargetFunction("runge", domain, kUnboundedOrder, [](int j, double y) {
    // 1/(1 + 25 y^2) = Re[1 / (1 + 5 i y)], so the j-th derivative is
    // Re[(-1)^j j! (5 i)^j / (1 + 5 i y)^(j + 1)].
    using C = std::complex<double>;
    const C a(0.0, 5.0);
    const C base = 1.0 + a * y;
    C term = 1.0 / base;
    for (int k = 1; k <= j; ++k) term *= -static_cast<double>(k) * a / base;
    return term.real();
  });
}

TargetFunction exp_target(Interval domain) {
  return TargetFunction("exp", domain, kUnboundedOrder, [](int, double y) { return std::exp(y); });
}

namespace {

std::vector<double> parse_coefficients(std::string_view list) {
  std::vector<double> out;
  while (!list.empty()) {
    const auto comma = list.find(',');
    std::string_view token = list.substr(0, comma);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw Error(ErrorCode::UnknownTarget, "bad polynomial coefficient '" + std::string(token) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  if (out.empty()) throw Error(ErrorCode::UnknownTarget, "polynomial needs at least one coefficient");
  return out;
}

}  // namespace

TargetFunction builtin_target(std::string_view name) {
  if (name == "paper_f") return sine_cubic_target();
  if (name == "runge") return runge_target();
  if (name == "exp") return exp_target();
  return builtin_target(name, Interval{0.0, 1.0});
}

TargetFunction builtin_target(std::string_view name, Interval domain) {
  if (name == "paper_f") {
    TargetFunction f = sine_cubic_target();
    return TargetFunction(f.name(), domain, f.max_order(), [f](int j, double y) { return f.derivative(j, y); });
  }
  if (name == "runge") return runge_target(domain);
  if (name == "exp") return exp_target(domain);
  if (name.starts_with("poly:")) return polynomial_target(parse_coefficients(name.substr(5)), domain);
  if (name.starts_with("polynomial(") && name.ends_with(")")) {
    return polynomial_target(parse_coefficients(name.substr(11, name.size() - 12)), domain);
  }
  throw Error(ErrorCode::UnknownTarget, "unknown target '" + std::string(name) + "'");
}

TargetFunction linear_combination(double a, const TargetFunction& g, double b, const TargetFunction& q) {
  const int order = std::min(g.max_order(), q.max_order());
  const auto source = (g.source() == DerivativeSource::Analytic && q.source() == DerivativeSource::Analytic)
                          ? DerivativeSource::Analytic
                          : DerivativeSource::FiniteDifference;
  return TargetFunction("combination", g.domain(), order,
                        [a, g, b, q](int j, double y) { return a * g.derivative(j, y) + b * q.derivative(j, y); },
                        source);
}

namespace {

// Central difference of order j with step h: sum_i (-1)^i C(j,i) f(y + (j/2 - i) h) / h^j.
double central_difference(const RealFunction& f, int j, double y, double h) {
  double acc = 0.0;
  double binom = 1.0;
  for (int i = 0; i <= j; ++i) {
    const double offset = (0.5 * j - i) * h;
    acc += ((i % 2) ? -binom : binom) * f(y + offset);
    binom = binom * (j - i) / (i + 1);
  }
  return acc / std::pow(h, j);
}

}  // namespace

TargetFunction fd_derivatives(std::string name, Interval domain, RealFunction f, int max_order) {
  if (max_order < 0 || max_order > kMaxFiniteDifferenceOrder) {
    throw Error(ErrorCode::InvalidParameter, "finite differences support orders 0..4, requested " +
                                                 std::to_string(max_order));
  }
  if (!f) throw Error(ErrorCode::InvalidParameter, "function callable is empty");
  return TargetFunction(
      std::move(name), domain, max_order,
      [f = std::move(f)](int j, double y) {
        if (j == 0) return f(y);
        const double eps = std::numeric_limits<double>::epsilon();
        const double h = std::pow(eps, 1.0 / (j + 2)) * std::max(1.0, std::abs(y));
        // Both estimates carry an O(h^2) leading error; Richardson cancels it.
        const double fine = central_difference(f, j, y, h);
        const double coarse = central_difference(f, j, y, 2.0 * h);
        return (4.0 * fine - coarse) / 3.0;
      },
      DerivativeSource::FiniteDifference);
}

double TaylorCenter::operator()(double y) const noexcept {
  const double t = y - center;
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * t + *it;
  return acc;
}

TaylorCenter make_taylor_center(const TargetFunction& target, double center, int r) {
  if (r < 0) throw Error(ErrorCode::InvalidParameter, "order r must be non-negative");
  if (r > target.max_order()) {
    throw Error(ErrorCode::InsufficientDerivatives, "order " + std::to_string(r) + " exceeds " + target.name() +
                                                        "'s available derivatives (" +
                                                        std::to_string(target.max_order()) + ")");
  }
  TaylorCenter tc{center, std::vector<double>(static_cast<std::size_t>(r) + 1)};
  double factorial = 1.0;
  for (int j = 0; j <= r; ++j) {
    if (j > 0) factorial *= j;
    tc.coefficients[static_cast<std::size_t>(j)] = target.derivative(j, center) / factorial;
  }
  return tc;
}

double taylor_poly_eval(const TargetFunction& target, double center, int r, double y) {
  return make_taylor_center(target, center, r)(y);
}

}  // namespace tnn
