#include "tnn/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "tnn/error.hpp"
#include "tnn/format.hpp"
#include "tnn/rng.hpp"

namespace tnn {

IrregularGrid::IrregularGrid(Interval interval, std::vector<double> nodes, double d1, double d2)
    : interval_(interval), nodes_(std::move(nodes)), d1_(d1), d2_(d2) {}

IrregularGrid IrregularGrid::from_nodes(Interval interval, std::vector<double> nodes) {
  if (!(interval.lo < interval.hi)) {
    throw Error(ErrorCode::InvalidParameter, "interval must satisfy c < d");
  }
  if (nodes.size() < 2) throw Error(ErrorCode::TooFewNodes, "a grid needs at least 2 nodes");
  if (nodes.front() != interval.lo || nodes.back() != interval.hi) {
    throw Error(ErrorCode::EndpointMismatch, "first/last node must equal the interval endpoints (" +
                                                 format_real(nodes.front()) + ", " + format_real(nodes.back()) +
                                                 ") vs (" + format_real(interval.lo) + ", " +
                                                 format_real(interval.hi) + ")");
  }
  double d1 = nodes[1] - nodes[0];
  double d2 = d1;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const double gap = nodes[k + 1] - nodes[k];
    if (!(gap > 0.0)) {
      throw Error(ErrorCode::NotStrictlyIncreasing, "nodes " + std::to_string(k) + " and " + std::to_string(k + 1) +
                                                        " are not strictly increasing");
    }
    d1 = std::min(d1, gap);
    d2 = std::max(d2, gap);
  }
  if (!(d2 < 2.0 * d1)) {
    throw Error(ErrorCode::QuasiUniformityViolated, "d2/d1 = " + format_real(d2 / d1) + " (d1 = " +
                                                        format_real(d1) + ", d2 = " + format_real(d2) +
                                                        "), need d2 < 2 d1");
  }
  return IrregularGrid(interval, std::move(nodes), d1, d2);
}

MeshStats IrregularGrid::stats() const noexcept {
  return MeshStats{d1_, d2_, d2_, d2_ / d1_, nodes_.size()};
}

namespace {

std::vector<double> uniform_nodes(Interval interval, std::size_t n) {
  std::vector<double> nodes(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    nodes[k] = interval.lo + interval.length() * static_cast<double>(k) / static_cast<double>(n);
  }
  nodes.front() = interval.lo;
  nodes.back() = interval.hi;
  return nodes;
}

bool quasi_uniform(const std::vector<double>& nodes) {
  double d1 = nodes[1] - nodes[0];
  double d2 = d1;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const double gap = nodes[k + 1] - nodes[k];
    if (!(gap > 0.0)) return false;
    d1 = std::min(d1, gap);
    d2 = std::max(d2, gap);
  }
  return d2 < 2.0 * d1;
}

}  // namespace

IrregularGrid generate_quasi_uniform(Interval interval, std::size_t n, double jitter, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "n must be at least 1");
  if (!(interval.lo < interval.hi)) throw Error(ErrorCode::InvalidParameter, "interval must satisfy c < d");
  if (!(jitter >= 0.0)) throw Error(ErrorCode::InvalidParameter, "jitter must be non-negative");
  if (jitter >= kMaxJitter) {
    throw Error(ErrorCode::JitterTooLarge, "jitter " + format_real(jitter) + " >= 1/4");
  }

  const std::vector<double> base = uniform_nodes(interval, n);
  const double amplitude = jitter * interval.length() / static_cast<double>(n);
  SplitMix64 rng(seed);
  const int attempts = jitter < kGuaranteedJitter ? 1 : kMaxRejectionAttempts;

  std::vector<double> nodes = base;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    for (std::size_t k = 1; k < n; ++k) nodes[k] = base[k] + amplitude * rng.symmetric();
    if (quasi_uniform(nodes)) return IrregularGrid::from_nodes(interval, std::move(nodes));
  }
  throw Error(ErrorCode::QuasiUniformityViolated,
              "no quasi-uniform draw after " + std::to_string(attempts) + " attempts");
}

IrregularGrid refine_nested(const IrregularGrid& grid, std::uint64_t seed, double jitter) {
  return refine_nested(grid, seed, jitter, GapBounds{grid.d1(), grid.d2()});
}

IrregularGrid refine_nested(const IrregularGrid& grid, std::uint64_t seed, double jitter, GapBounds bounds) {
  jitter = std::clamp(std::isnan(jitter) ? 0.0 : jitter, 0.0, std::nextafter(1.0, 0.0));
  // Child gaps lie in [d1/2 - s, d2/2 + s]; s < (d1 - d2/2)/3 keeps the ratio below 2.
  const double clamp = std::max(0.0, (bounds.d1 - 0.5 * bounds.d2) / 4.0);

  const auto parent = grid.nodes();
  SplitMix64 rng(seed);
  std::vector<double> nodes;
  nodes.reserve(2 * parent.size() - 1);
  std::vector<double> midpoints;
  midpoints.reserve(parent.size() - 1);
  for (std::size_t k = 0; k + 1 < parent.size(); ++k) {
    const double gap = parent[k + 1] - parent[k];
    const double mid = parent[k] + 0.5 * gap;
    const double shift = std::min(jitter * 0.5 * gap, clamp);
    midpoints.push_back(mid);
    nodes.push_back(parent[k]);
    nodes.push_back(mid + shift * rng.symmetric());
  }
  nodes.push_back(parent.back());

  if (!quasi_uniform(nodes)) {
    // Rounding pushed a perturbed node over the edge; exact midpoints keep the parent ratio.
    for (std::size_t k = 0; k < midpoints.size(); ++k) nodes[2 * k + 1] = midpoints[k];
  }
  return IrregularGrid::from_nodes(grid.interval(), std::move(nodes));
}

std::vector<IrregularGrid> nested_ladder(Interval interval, std::size_t n, std::size_t levels, double jitter,
                                         std::uint64_t seed) {
  if (levels < 1) throw Error(ErrorCode::InvalidParameter, "ladder needs at least one level");
  std::vector<IrregularGrid> ladder;
  ladder.reserve(levels);
  ladder.push_back(generate_quasi_uniform(interval, n, jitter, seed));
  for (std::size_t level = 1; level < levels; ++level) {
    ladder.push_back(refine_nested(ladder.back(), seed + level));
  }
  return ladder;
}

void write_grid(std::ostream& out, const IrregularGrid& grid) {
  out << "# interval " << format_real(grid.interval().lo) << ' ' << format_real(grid.interval().hi) << '\n';
  for (double z : grid.nodes()) out << format_real(z) << '\n';
}

namespace {

double parse_real(const std::string& token, std::size_t line_no) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::InvalidParameter, "line " + std::to_string(line_no) + ": cannot parse '" + token + "'");
  }
  return value;
}

}  // namespace

IrregularGrid read_grid(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw Error(ErrorCode::InvalidParameter, "empty grid file");
  ++line_no;
  std::istringstream header(line);
  std::string hash, keyword, lo, hi;
  if (!(header >> hash >> keyword >> lo >> hi) || hash != "#" || keyword != "interval") {
    throw Error(ErrorCode::InvalidParameter, "grid file must start with '# interval c d'");
  }
  const Interval interval{parse_real(lo, line_no), parse_real(hi, line_no)};

  std::vector<double> nodes;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    nodes.push_back(parse_real(line, line_no));
  }
  return IrregularGrid::from_nodes(interval, std::move(nodes));
}

}  // namespace tnn
