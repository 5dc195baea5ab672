#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace tnn {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const noexcept { return hi - lo; }
  bool contains(double y) const noexcept { return y >= lo && y <= hi; }
};

struct MeshStats {
  double d1 = 0.0;     // min gap
  double d2 = 0.0;     // max gap
  double h = 0.0;      // mesh norm, equal to d2
  double ratio = 0.0;  // d2 / d1
  std::size_t node_count = 0;
};

/// Strictly increasing nodes c = z_0 < ... < z_n = d with d2 < 2 d1.
/// Immutable once constructed; every constructor validates.
class IrregularGrid {
 public:
  /// Validates and computes d1, d2 from the actual nodes.
  /// Throws NotStrictlyIncreasing, EndpointMismatch or QuasiUniformityViolated.
  static IrregularGrid from_nodes(Interval interval, std::vector<double> nodes);

  const Interval& interval() const noexcept { return interval_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  double node(std::size_t k) const { return nodes_[k]; }
  /// Number of gaps, i.e. node count minus one.
  std::size_t n() const noexcept { return nodes_.size() - 1; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double d1() const noexcept { return d1_; }
  double d2() const noexcept { return d2_; }
  MeshStats stats() const noexcept;

 private:
  IrregularGrid(Interval interval, std::vector<double> nodes, double d1, double d2);

  Interval interval_;
  std::vector<double> nodes_;
  double d1_;
  double d2_;
};

/// Perturbation bound (in units of the uniform gap) below which any draw is
/// guaranteed quasi-uniform: gaps lie in [(1-2b)u, (1+2b)u], ratio < 2 iff b < 1/6.
inline constexpr double kGuaranteedJitter = 1.0 / 6.0;
/// Jitter at or above this is rejected; [1/6, 1/4) uses rejection sampling.
inline constexpr double kMaxJitter = 0.25;
inline constexpr int kMaxRejectionAttempts = 10000;

/// Uniform grid with n gaps whose interior nodes are shifted by
/// U[-jitter, jitter] * (d - c) / n. Deterministic in `seed`.
IrregularGrid generate_quasi_uniform(Interval interval, std::size_t n, double jitter, std::uint64_t seed);

/// Default relative perturbation of inserted midpoints, as a fraction of the
/// half-gap. Keeps five successive refinements within 25% of the ideal h/2^k.
inline constexpr double kDefaultRefineJitter = 0.04;

/// Gap extremes that the refinement clamp must respect. For a single grid
/// these are its own d1/d2; tensor grids pass the global values.
struct GapBounds {
  double d1;
  double d2;
};

/// Inserts one node per gap at the midpoint plus a perturbation of at most
/// min(jitter * gap / 2, (d1 - d2 / 2) / 4). Parent nodes are copied exactly.
/// The jitter fraction is clamped into [0, 1).
IrregularGrid refine_nested(const IrregularGrid& grid, std::uint64_t seed, double jitter = kDefaultRefineJitter);
IrregularGrid refine_nested(const IrregularGrid& grid, std::uint64_t seed, double jitter, GapBounds bounds);

/// Base grid from `generate_quasi_uniform(interval, n, jitter, seed)`, then
/// `levels - 1` nested refinements with seeds seed + 1, seed + 2, ...
std::vector<IrregularGrid> nested_ladder(Interval interval, std::size_t n, std::size_t levels, double jitter,
                                         std::uint64_t seed);

/// Text format: first line "# interval c d", then one node per line, 17
/// significant digits.
void write_grid(std::ostream& out, const IrregularGrid& grid);
IrregularGrid read_grid(std::istream& in);

}  // namespace tnn
