#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tnn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInconclusive = 3;

inline constexpr std::size_t kMaxCliDimension = 4;

/// Flags shared by every subcommand. Output is a pure function of these.
struct ExperimentConfig {
  std::string target = "paper_f";
  std::vector<double> interval;  // {c, d}; empty means the target's own domain
  std::vector<double> box;       // {a1, b1, a2, b2, ...}; empty means [0,1]^dim
  std::vector<int> orders{1};
  std::size_t dim = 1;
  std::size_t n = 16;
  std::size_t levels = 4;
  double jitter = 0.1;
  std::uint64_t seed = 42;
  std::size_t samples = 10000;
  double m = 1.0;
  std::string op = "taylor";  // taylor | lagrange | both

  std::string grid_file;  // eval: read the grid instead of generating it
  std::vector<double> points;
  std::string points_file;
};

/// Each command writes its product to `out`, diagnostics to `err`, and
/// returns the process exit code.
int cmd_grid(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_converge(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_compare(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_eval(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_jackson(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify_kernel(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace tnn::cli
