#include "tnn/operator_multi.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

#include "tnn/error.hpp"
#include "tnn/format.hpp"
#include "tnn/rng.hpp"

namespace tnn {

bool BoxDomain::contains(std::span<const double> y) const noexcept {
  if (y.size() != axes.size()) return false;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (!axes[i].contains(y[i])) return false;
  }
  return true;
}

TensorGrid::TensorGrid(std::vector<IrregularGrid> axes, double d1, double d2)
    : axes_(std::move(axes)), d1_(d1), d2_(d2) {}

TensorGrid TensorGrid::from_axes(std::vector<IrregularGrid> axes) {
  if (axes.empty()) throw Error(ErrorCode::InvalidParameter, "tensor grid needs at least one axis");
  double d1 = axes.front().d1();
  double d2 = axes.front().d2();
  for (const auto& axis : axes) {
    if (axis.size() != axes.front().size()) {
      throw Error(ErrorCode::InvalidParameter, "all axes must have the same node count");
    }
    d1 = std::min(d1, axis.d1());
    d2 = std::max(d2, axis.d2());
  }
  if (!(d2 < 2.0 * d1)) {
    throw Error(ErrorCode::QuasiUniformityViolated, "global d2/d1 = " + format_real(d2 / d1) + ", need < 2");
  }
  return TensorGrid(std::move(axes), d1, d2);
}

std::size_t TensorGrid::node_count() const noexcept {
  std::size_t count = 1;
  for (std::size_t i = 0; i < axes_.size(); ++i) count *= nodes_per_axis();
  return count;
}

MeshStats TensorGrid::stats() const noexcept { return MeshStats{d1_, d2_, d2_, d2_ / d1_, nodes_per_axis()}; }

BoxDomain TensorGrid::domain() const {
  BoxDomain box;
  for (const auto& axis : axes_) box.axes.push_back(axis.interval());
  return box;
}

std::vector<double> TensorGrid::node(std::size_t flat) const {
  const std::size_t per_axis = nodes_per_axis();
  std::vector<double> out(dim());
  for (std::size_t i = dim(); i-- > 0;) {
    out[i] = axes_[i].node(flat % per_axis);
    flat /= per_axis;
  }
  return out;
}

TensorGrid TensorGrid::refine(std::uint64_t seed, double jitter) const {
  SplitMix64 seeds(seed);
  std::vector<IrregularGrid> children;
  children.reserve(axes_.size());
  for (const auto& axis : axes_) children.push_back(refine_nested(axis, seeds.next(), jitter, GapBounds{d1_, d2_}));
  return from_axes(std::move(children));
}

TensorGrid generate_tensor_grid(const BoxDomain& box, std::size_t n, double jitter, std::uint64_t seed) {
  if (box.dim() == 0) throw Error(ErrorCode::InvalidParameter, "box must have at least one axis");
  SplitMix64 seeds(seed);
  std::vector<IrregularGrid> axes;
  axes.reserve(box.dim());
  for (const auto& interval : box.axes) axes.push_back(generate_quasi_uniform(interval, n, jitter, seeds.next()));
  return TensorGrid::from_axes(std::move(axes));
}

std::vector<TensorGrid> tensor_ladder(const BoxDomain& box, std::size_t n, std::size_t levels, double jitter,
                                      std::uint64_t seed) {
  if (levels < 1) throw Error(ErrorCode::InvalidParameter, "ladder needs at least one level");
  std::vector<TensorGrid> ladder;
  ladder.reserve(levels);
  ladder.push_back(generate_tensor_grid(box, n, jitter, seed));
  for (std::size_t level = 1; level < levels; ++level) ladder.push_back(ladder.back().refine(seed + level));
  return ladder;
}

std::vector<MultiIndex> graded_multi_indices(std::size_t dim, int r) {
  if (dim == 0) throw Error(ErrorCode::InvalidParameter, "dimension must be at least 1");
  if (r < 0) throw Error(ErrorCode::InvalidParameter, "order r must be non-negative");
  std::vector<MultiIndex> out;
  MultiIndex alpha(dim, 0);
  for (int degree = 0; degree <= r; ++degree) {
    // Descending lexicographic enumeration of compositions of `degree` into dim parts.
    std::function<void(std::size_t, int)> fill = [&](std::size_t axis, int remaining) {
      if (axis + 1 == dim) {
        alpha[axis] = remaining;
        out.push_back(alpha);
        return;
      }
      for (int v = remaining; v >= 0; --v) {
        alpha[axis] = v;
        fill(axis + 1, remaining - v);
      }
    };
    fill(0, degree);
  }
  return out;
}

MultiTargetFunction::MultiTargetFunction(std::string name, BoxDomain domain, int max_total_order,
                                         PartialFunction partial)
    : name_(std::move(name)), domain_(std::move(domain)), max_total_order_(max_total_order),
      partial_(std::move(partial)) {
  if (domain_.dim() == 0) throw Error(ErrorCode::InvalidParameter, "domain must have at least one axis");
  for (const auto& axis : domain_.axes) {
    if (!(axis.lo < axis.hi)) throw Error(ErrorCode::InvalidParameter, "box axes must satisfy a_i < b_i");
  }
  if (max_total_order_ < 0) throw Error(ErrorCode::InvalidParameter, "max_total_order must be non-negative");
  if (!partial_) throw Error(ErrorCode::InvalidParameter, "partial-derivative callable is empty");
}

double MultiTargetFunction::operator()(std::span<const double> y) const {
  const MultiIndex zero(dim(), 0);
  return partial_(zero, y);
}

double MultiTargetFunction::partial(std::span<const int> alpha, std::span<const double> y) const {
  int total = 0;
  for (int a : alpha) total += a;
  if (total > max_total_order_) {
    throw Error(ErrorCode::InsufficientDerivatives, name_ + " provides partials up to total order " +
                                                        std::to_string(max_total_order_) + ", requested " +
                                                        std::to_string(total));
  }
  return partial_(alpha, y);
}

MultiTargetFunction separable_target(std::vector<TargetFunction> factors) {
  if (factors.empty()) throw Error(ErrorCode::InvalidParameter, "separable target needs at least one factor");
  BoxDomain box;
  int order = kUnboundedOrder;
  std::string name = "product(";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    box.axes.push_back(factors[i].domain());
    order = std::min(order, factors[i].max_order());
    name += (i ? "," : "") + factors[i].name();
  }
  name += ")";
  return MultiTargetFunction(std::move(name), std::move(box), order,
                             [factors = std::move(factors)](std::span<const int> alpha, std::span<const double> y) {
                               double value = 1.0;
                               for (std::size_t i = 0; i < factors.size(); ++i) {
                                 value *= factors[i].derivative(alpha[i], y[i]);
                               }
                               return value;
                             });
}

namespace {

TargetFunction trig_factor(bool cosine) {
  return TargetFunction(cosine ? "cos2pi" : "sin2pi", {0.0, 1.0}, kUnboundedOrder, [cosine](int j, double y) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double s = std::sin(two_pi * y);
    const double c = std::cos(two_pi * y);
    const std::array<double, 4> cycle = cosine ? std::array<double, 4>{c, -s, -c, s}
                                               : std::array<double, 4>{s, c, -s, -c};
    return std::pow(two_pi, j) * cycle[static_cast<std::size_t>(j % 4)];
  });
}

}  // namespace

MultiTargetFunction builtin_multi_target(std::string_view name, std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidParameter, "dimension must be at least 1");
  std::vector<TargetFunction> factors;
  if (name == "sincos") {
    factors.push_back(trig_factor(false));
    for (std::size_t i = 1; i < dim; ++i) factors.push_back(trig_factor(true));
  } else if (name.starts_with("monomial:")) {
    std::string_view list = name.substr(9);
    while (!list.empty()) {
      const auto comma = list.find(',');
      const std::string_view token = list.substr(0, comma);
      int power = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), power);
      if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || power < 0) {
        throw Error(ErrorCode::UnknownTarget, "bad monomial exponent '" + std::string(token) + "'");
      }
      std::vector<double> coeffs(static_cast<std::size_t>(power) + 1, 0.0);
      coeffs.back() = 1.0;
      factors.push_back(polynomial_target(std::move(coeffs)));
      if (comma == std::string_view::npos) break;
      list.remove_prefix(comma + 1);
    }
    if (factors.size() != dim) {
      throw Error(ErrorCode::UnknownTarget, "monomial needs exactly " + std::to_string(dim) + " exponents");
    }
  } else {
    throw Error(ErrorCode::UnknownTarget, "unknown multivariate target '" + std::string(name) + "'");
  }
  MultiTargetFunction product = separable_target(std::move(factors));
  return MultiTargetFunction(std::string(name), product.domain(), product.max_total_order(),
                             [product](std::span<const int> a, std::span<const double> y) {
                               return product.partial(a, y);
                             });
}

double psi_eval(const ActivationKernel& kernel, std::span<const double> y) {
  double value = 1.0;
  for (double yi : y) value *= kernel(yi);
  return value;
}

namespace {

double factorial(int k) {
  double out = 1.0;
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

// sum_alpha c_alpha prod_i (y_i - z_i)^alpha_i with per-axis power tables.
double eval_multi_polynomial(std::span<const MultiIndex> indices, std::span<const double> coefficients,
                             std::span<const double> center, std::span<const double> y, int r) {
  const std::size_t dim = center.size();
  const std::size_t stride = static_cast<std::size_t>(r) + 1;
  std::vector<double> powers(dim * stride);
  for (std::size_t i = 0; i < dim; ++i) {
    const double t = y[i] - center[i];
    powers[i * stride] = 1.0;
    for (std::size_t p = 1; p < stride; ++p) powers[i * stride + p] = powers[i * stride + p - 1] * t;
  }
  double acc = 0.0;
  for (std::size_t a = 0; a < indices.size(); ++a) {
    double term = coefficients[a];
    for (std::size_t i = 0; i < dim; ++i) term *= powers[i * stride + static_cast<std::size_t>(indices[a][i])];
    acc += term;
  }
  return acc;
}

std::vector<double> multi_coefficients(const MultiTargetFunction& target, std::span<const MultiIndex> indices,
                                       std::span<const double> center) {
  std::vector<double> out(indices.size());
  for (std::size_t a = 0; a < indices.size(); ++a) {
    double alpha_factorial = 1.0;
    for (int v : indices[a]) alpha_factorial *= factorial(v);
    out[a] = target.partial(indices[a], center) / alpha_factorial;
  }
  return out;
}

void require_order(const MultiTargetFunction& target, int r) {
  if (r < 0) throw Error(ErrorCode::InvalidParameter, "order r must be non-negative");
  if (r > target.max_total_order()) {
    throw Error(ErrorCode::InsufficientDerivatives, target.name() + " provides partials up to total order " +
                                                        std::to_string(target.max_total_order()) + ", r = " +
                                                        std::to_string(r));
  }
}

}  // namespace

double multi_taylor_eval(const MultiTargetFunction& target, std::span<const double> center, int r,
                         std::span<const double> y) {
  require_order(target, r);
  if (center.size() != target.dim() || y.size() != target.dim()) {
    throw Error(ErrorCode::InvalidParameter, "point dimension does not match the target");
  }
  const auto indices = graded_multi_indices(target.dim(), r);
  const auto coefficients = multi_coefficients(target, indices, center);
  return eval_multi_polynomial(indices, coefficients, center, y, r);
}

MultiTaylorInterpolant::MultiTaylorInterpolant(ActivationKernel kernel, TensorGrid grid, int order,
                                               std::vector<MultiIndex> indices, std::vector<double> table)
    : kernel_(std::move(kernel)), grid_(std::move(grid)), order_(order), indices_(std::move(indices)),
      table_(std::move(table)) {}

MultiTaylorInterpolant MultiTaylorInterpolant::build(ActivationKernel kernel, TensorGrid grid, int r,
                                                     const MultiTargetFunction& target) {
  require_order(target, r);
  if (target.dim() != grid.dim()) throw Error(ErrorCode::InvalidParameter, "target and grid dimensions differ");
  auto indices = graded_multi_indices(grid.dim(), r);
  std::vector<double> table;
  table.reserve(grid.node_count() * indices.size());
  for (std::size_t flat = 0; flat < grid.node_count(); ++flat) {
    const auto coefficients = multi_coefficients(target, indices, grid.node(flat));
    table.insert(table.end(), coefficients.begin(), coefficients.end());
  }
  return MultiTaylorInterpolant(std::move(kernel), std::move(grid), r, std::move(indices), std::move(table));
}

std::span<const double> MultiTaylorInterpolant::coefficients(std::size_t flat) const {
  return std::span<const double>(table_).subspan(flat * indices_.size(), indices_.size());
}

void MultiTaylorInterpolant::require_in_domain(std::span<const double> y) const {
  if (!grid_.domain().contains(y)) throw Error(ErrorCode::OutOfDomain, "point outside the box domain");
}

double MultiTaylorInterpolant::axis_weight(std::size_t axis, std::size_t k, double y) const {
  return kernel_(2.0 * kernel_.m() * (y - grid_.axis(axis).node(k)) / grid_.d1());
}

double MultiTaylorInterpolant::local_polynomial(std::size_t flat, std::span<const std::size_t> idx,
                                                std::span<const double> y) const {
  std::vector<double> center(grid_.dim());
  for (std::size_t i = 0; i < grid_.dim(); ++i) center[i] = grid_.axis(i).node(idx[i]);
  return eval_multi_polynomial(indices_, coefficients(flat), center, y, order_);
}

namespace {

// Odometer over the box [first_i, last_i) of per-axis index ranges.
template <class Visit>
void for_each_index(std::span<const std::size_t> first, std::span<const std::size_t> last, Visit&& visit) {
  const std::size_t dim = first.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if (first[i] >= last[i]) return;
  }
  std::vector<std::size_t> idx(first.begin(), first.end());
  while (true) {
    visit(std::span<const std::size_t>(idx));
    std::size_t axis = dim;
    while (axis-- > 0) {
      if (++idx[axis] < last[axis]) break;
      idx[axis] = first[axis];
      if (axis == 0) return;
    }
  }
}

}  // namespace

double MultiTaylorInterpolant::operator()(std::span<const double> y) const {
  require_in_domain(y);
  const std::size_t dim = grid_.dim();
  const double reach = grid_.d1() * (1.0 + 1e-9);
  std::vector<std::size_t> first(dim), last(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto nodes = grid_.axis(i).nodes();
    const auto lo = std::upper_bound(nodes.begin(), nodes.end(), y[i] - reach);
    const auto hi = std::lower_bound(lo, nodes.end(), y[i] + reach);
    first[i] = static_cast<std::size_t>(lo - nodes.begin());
    last[i] = static_cast<std::size_t>(hi - nodes.begin());
  }
  const std::size_t per_axis = grid_.nodes_per_axis();
  double numerator = 0.0;
  double denominator = 0.0;
  for_each_index(first, last, [&](std::span<const std::size_t> idx) {
    double w = 1.0;
    std::size_t flat = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      w *= axis_weight(i, idx[i], y[i]);
      flat = flat * per_axis + idx[i];
    }
    if (w == 0.0) return;
    numerator += w * local_polynomial(flat, idx, y);
    denominator += w;
  });
  return numerator / denominator;
}

double MultiTaylorInterpolant::evaluate_all_nodes(std::span<const double> y) const {
  require_in_domain(y);
  const std::size_t dim = grid_.dim();
  const std::size_t per_axis = grid_.nodes_per_axis();
  std::vector<std::size_t> idx(dim);
  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t flat = 0; flat < grid_.node_count(); ++flat) {
    std::size_t rest = flat;
    for (std::size_t i = dim; i-- > 0;) {
      idx[i] = rest % per_axis;
      rest /= per_axis;
    }
    std::vector<double> arg(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      arg[i] = 2.0 * kernel_.m() * (y[i] - grid_.axis(i).node(idx[i])) / grid_.d1();
    }
    const double w = psi_eval(kernel_, arg);
    if (w == 0.0) continue;
    numerator += w * local_polynomial(flat, idx, y);
    denominator += w;
  }
  return numerator / denominator;
}

}  // namespace tnn
