#include "tnn/cli_commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "tnn/analysis.hpp"
#include "tnn/error.hpp"
#include "tnn/format.hpp"
#include "tnn/grid.hpp"
#include "tnn/operator_multi.hpp"
#include "tnn/operator_uni.hpp"
#include "tnn/targets.hpp"

namespace tnn::cli {

namespace {

constexpr const char* kSchemaLine = "# schema=1\n";
constexpr const char* kErrorHeader = "n,h,d1,d2,r,operator,sup_error,argmax";
constexpr const char* kBaselineNote = "# lagrange=baseline-reconstruction (forward r+1 node stencil, shifted at the right end)\n";

template <class Command>
int guarded(std::ostream& err, Command&& command) {
  try {
    return command();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

std::vector<OperatorKind> selected_operators(const std::string& op) {
  if (op == "taylor") return {OperatorKind::Taylor};
  if (op == "lagrange") return {OperatorKind::Lagrange};
  if (op == "both") return {OperatorKind::Taylor, OperatorKind::Lagrange};
  throw Error(ErrorCode::InvalidParameter, "--operator must be taylor, lagrange or both");
}

void require_orders(const ExperimentConfig& config) {
  if (config.orders.empty()) throw Error(ErrorCode::InvalidParameter, "--r needs at least one order");
  for (int r : config.orders) {
    if (r < 0) throw Error(ErrorCode::InvalidParameter, "--r values must be non-negative");
  }
}

TargetFunction univariate_target(const ExperimentConfig& config) {
  if (config.interval.empty()) return builtin_target(config.target);
  if (config.interval.size() != 2) throw Error(ErrorCode::InvalidParameter, "--interval takes exactly two values");
  return builtin_target(config.target, Interval{config.interval[0], config.interval[1]});
}

Interval config_interval(const ExperimentConfig& config) {
  if (config.interval.empty()) return Interval{0.0, 1.0};
  if (config.interval.size() != 2) throw Error(ErrorCode::InvalidParameter, "--interval takes exactly two values");
  return Interval{config.interval[0], config.interval[1]};
}

BoxDomain config_box(const ExperimentConfig& config) {
  BoxDomain box;
  if (config.box.empty()) {
    box.axes.assign(config.dim, Interval{0.0, 1.0});
    return box;
  }
  if (config.box.size() != 2 * config.dim) {
    throw Error(ErrorCode::InvalidParameter, "--box needs 2 values per dimension");
  }
  for (std::size_t i = 0; i < config.dim; ++i) box.axes.push_back(Interval{config.box[2 * i], config.box[2 * i + 1]});
  return box;
}

void require_dimension(const ExperimentConfig& config) {
  if (config.dim < 1 || config.dim > kMaxCliDimension) {
    throw Error(ErrorCode::InvalidParameter, "--dim must be between 1 and " + std::to_string(kMaxCliDimension));
  }
}

std::string join_point(const std::vector<double>& point) {
  std::string out;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i) out += ';';
    out += format_real(point[i]);
  }
  return out;
}

void write_row(std::ostream& out, const ErrorReport& row) {
  out << row.n << ',' << format_real(row.mesh.h) << ',' << format_real(row.mesh.d1) << ','
      << format_real(row.mesh.d2) << ',' << row.r << ',' << row.operator_id << ',' << format_real(row.sup_error)
      << ',' << join_point(row.argmax);
}

void write_provenance(std::ostream& out, const std::string& command, const ExperimentConfig& config) {
  out << "# command=" << command << " target=" << config.target << " dim=" << config.dim << " n=" << config.n
      << " levels=" << config.levels << " jitter=" << format_real(config.jitter) << " seed=" << config.seed
      << " samples=" << config.samples << " m=" << format_real(config.m) << '\n';
}

void write_fit(std::ostream& out, const ConvergenceTable& table) {
  out << "# fitted_order r=" << table.r << ' ';
  if (table.regime == ConvergenceRegime::ExactReproduction) {
    out << "exact_reproduction";
  } else {
    out << format_real(table.fitted_order);
  }
  out << " operator=" << table.operator_id << '\n';
}

std::size_t samples_per_axis(const ExperimentConfig& config) {
  const double root = std::pow(static_cast<double>(config.samples), 1.0 / static_cast<double>(config.dim));
  return static_cast<std::size_t>(std::lround(root)) + 1;
}

int converge_multi(const ExperimentConfig& config, std::ostream& out) {
  if (config.op != "taylor") {
    throw Error(ErrorCode::InvalidParameter, "only the taylor operator is available for --dim > 1");
  }
  const MultiTargetFunction target = builtin_multi_target(config.target, config.dim);
  const auto ladder = tensor_ladder(config_box(config), config.n, config.levels, config.jitter, config.seed);
  const ActivationKernel kernel = make_ramp_kernel(config.m);
  std::ostringstream body;
  for (int r : config.orders) {
    const ConvergenceTable table = convergence_study(kernel, ladder, target, r, samples_per_axis(config));
    for (const auto& row : table.rows) {
      write_row(body, row);
      body << '\n';
    }
    write_fit(body, table);
  }
  out << kSchemaLine;
  write_provenance(out, "converge", config);
  out << kErrorHeader << '\n' << body.str();
  return kExitOk;
}

}  // namespace

int cmd_grid(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    write_grid(out, generate_quasi_uniform(config_interval(config), config.n, config.jitter, config.seed));
    return kExitOk;
  });
}

int cmd_converge(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_orders(config);
    require_dimension(config);
    if (config.dim > 1) return converge_multi(config, out);

    const auto kinds = selected_operators(config.op);
    const TargetFunction target = univariate_target(config);
    const auto ladder = nested_ladder(target.domain(), config.n, config.levels, config.jitter, config.seed);
    const ActivationKernel kernel = make_ramp_kernel(config.m);

    // Buffered so a failure part-way leaves stdout empty.
    std::ostringstream body;
    for (int r : config.orders) {
      for (OperatorKind kind : kinds) {
        const ConvergenceTable table = convergence_study(kind, kernel, ladder, target, r, config.samples);
        for (const auto& row : table.rows) {
          write_row(body, row);
          body << '\n';
        }
        write_fit(body, table);
      }
    }
    out << kSchemaLine;
    write_provenance(out, "converge", config);
    if (config.op != "taylor") out << kBaselineNote;
    out << kErrorHeader << '\n' << body.str();
    return kExitOk;
  });
}

int cmd_compare(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_orders(config);
    if (config.dim != 1) throw Error(ErrorCode::InvalidParameter, "compare is univariate only");
    const TargetFunction target = univariate_target(config);
    const auto ladder = nested_ladder(target.domain(), config.n, config.levels, config.jitter, config.seed);
    const ActivationKernel kernel = make_ramp_kernel(config.m);

    std::ostringstream body;
    for (int r : config.orders) {
      for (const auto& grid : ladder) {
        const Comparison c = compare(TaylorInterpolant::build(kernel, grid, r, target),
                                     LagrangeInterpolant::build(kernel, grid, r, target), target, config.samples);
        for (const ErrorReport* row : {&c.taylor, &c.lagrange}) {
          write_row(body, *row);
          body << ',' << winner_name(c.winner) << '\n';
        }
      }
    }
    out << kSchemaLine;
    write_provenance(out, "compare", config);
    out << kBaselineNote;
    out << kErrorHeader << ",winner\n" << body.str();
    return kExitOk;
  });
}

namespace {

std::vector<double> read_points(const ExperimentConfig& config) {
  std::vector<double> points = config.points;
  if (config.points_file.empty()) return points;
  std::ifstream in(config.points_file);
  if (!in) throw Error(ErrorCode::InvalidParameter, "cannot open points file " + config.points_file);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    try {
      std::size_t used = 0;
      points.push_back(std::stod(line, &used));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidParameter, "cannot parse point '" + line + "'");
    }
  }
  return points;
}

}  // namespace

int cmd_eval(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.orders.size() != 1) throw Error(ErrorCode::InvalidParameter, "eval takes exactly one --r");
    const int r = config.orders.front();
    const TargetFunction target = univariate_target(config);
    IrregularGrid grid = [&] {
      if (config.grid_file.empty()) {
        return generate_quasi_uniform(target.domain(), config.n, config.jitter, config.seed);
      }
      std::ifstream in(config.grid_file);
      if (!in) throw Error(ErrorCode::InvalidParameter, "cannot open grid file " + config.grid_file);
      return read_grid(in);
    }();
    const std::vector<double> points = read_points(config);
    const ActivationKernel kernel = make_ramp_kernel(config.m);

    RealFunction approx;
    if (config.op == "lagrange") {
      approx = [interp = LagrangeInterpolant::build(kernel, grid, r, target)](double y) { return interp(y); };
    } else if (config.op == "taylor" || config.op == "both") {
      approx = [interp = TaylorInterpolant::build(kernel, grid, r, target)](double y) { return interp(y); };
    } else {
      throw Error(ErrorCode::InvalidParameter, "--operator must be taylor, lagrange or both");
    }

    int status = kExitOk;
    out << kSchemaLine << "y,value,target,abs_error\n";
    for (double y : points) {
      try {
        const double value = approx(y);
        const double exact = target(y);
        out << format_real(y) << ',' << format_real(value) << ',' << format_real(exact) << ','
            << format_real(std::abs(value - exact)) << '\n';
      } catch (const Error& e) {
        out << format_real(y) << ",error:" << error_name(e.code()) << ",,\n";
        err << "error: " << e.what() << '\n';
        status = kExitValidation;
      }
    }
    return status;
  });
}

int cmd_jackson(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_orders(config);
    const TargetFunction target = univariate_target(config);
    const auto ladder = nested_ladder(target.domain(), config.n, config.levels, config.jitter, config.seed);
    const ActivationKernel kernel = make_ramp_kernel(config.m);

    bool inconclusive = false;
    std::ostringstream body;
    for (int r : config.orders) {
      const JacksonReport report = jackson_ladder(kernel, ladder, target, r, config.samples);
      for (const auto& level : report.levels) {
        body << level.error.n << ',' << format_real(level.error.mesh.h) << ',' << r << ','
             << format_real(level.error.sup_error) << ',' << format_real(level.modulus.value) << ','
             << format_real(level.ratio) << ',' << (level.inconclusive ? "true" : "false") << '\n';
      }
      body << "# spread r=" << r << ' ';
      if (report.inconclusive) {
        body << "inconclusive\n";
        inconclusive = true;
      } else {
        body << format_real(report.spread) << " bounded=" << (report.bounded ? "true" : "false") << '\n';
      }
    }
    out << kSchemaLine;
    write_provenance(out, "jackson", config);
    out << "n,h,r,sup_error,modulus,ratio,inconclusive\n" << body.str();
    if (inconclusive) err << "jackson check inconclusive: error and modulus both at the noise floor\n";
    return inconclusive ? kExitInconclusive : kExitOk;
  });
}

int cmd_verify_kernel(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const VerificationReport report = verify_kernel(make_ramp_kernel(config.m), config.samples);
    out << kSchemaLine << "axiom,max_violation,passed\n";
    for (const auto& check : report.checks) {
      out << check.name << ',' << format_real(check.max_violation) << ',' << (check.passed ? "true" : "false")
          << '\n';
    }
    return report.passed() ? kExitOk : kExitValidation;
  });
}

}  // namespace tnn::cli
