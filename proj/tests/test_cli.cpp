#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "tnn/cli_commands.hpp"

using namespace tnn::cli;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

template <typename Command>
Run run(Command command, const ExperimentConfig& config) {
  std::ostringstream out, err;
  const int status = command(config, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> result;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) result.push_back(line);
  return result;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::vector<std::vector<std::string>> data_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  bool header_seen = false;
  for (const auto& line : lines(text)) {
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    rows.push_back(split(line));
  }
  return rows;
}

std::string shell_output(const std::string& command) {
  std::string text;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer{};
  std::size_t got = 0;
  while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) text.append(buffer.data(), got);
  pclose(pipe);
  return text;
}

}  // namespace

TEST_CASE("grid writes the uniform grid at zero jitter") {
  ExperimentConfig config;
  config.n = 10;
  config.jitter = 0.0;
  config.interval = {0.0, 1.0};
  const auto result = run(cmd_grid, config);
  REQUIRE(result.status == kExitOk);
  const auto text = lines(result.out);
  REQUIRE(text.size() == 12);
  CHECK(text.front() == "# interval 0 1");
  CHECK(text[1] == "0");
  CHECK(text[6] == "0.5");
  CHECK(text.back() == "1");
}

TEST_CASE("grid is deterministic and rejects large jitter") {
  ExperimentConfig config;
  config.jitter = 0.2;
  CHECK(run(cmd_grid, config).out == run(cmd_grid, config).out);
  config.seed = 43;
  ExperimentConfig base;
  base.jitter = 0.2;
  CHECK(run(cmd_grid, config).out != run(cmd_grid, base).out);

  config.jitter = 0.3;
  const auto bad = run(cmd_grid, config);
  CHECK(bad.status == kExitValidation);
  CHECK(bad.out.empty());
  CHECK(bad.err.find("JitterTooLarge") != std::string::npos);
}

TEST_CASE("converge output layout") {
  ExperimentConfig config;
  config.orders = {1, 2};
  config.samples = 2000;
  const auto result = run(cmd_converge, config);
  REQUIRE(result.status == kExitOk);
  const auto text = lines(result.out);
  CHECK(text.front() == "# schema=1");
  CHECK(result.out.find("n,h,d1,d2,r,operator,sup_error,argmax\n") != std::string::npos);
  CHECK(result.out.find("# fitted_order r=1 ") != std::string::npos);
  CHECK(result.out.find("# fitted_order r=2 ") != std::string::npos);
  CHECK(result.out.find("lagrange=baseline") == std::string::npos);
  const auto rows = data_rows(result.out);
  CHECK(rows.size() == 8);
  for (const auto& row : rows) {
    CHECK(row.size() == 8);
    CHECK(row[5] == "taylor");
  }
  CHECK(run(cmd_converge, config).out == result.out);
}

TEST_CASE("converge reports exact reproduction for polynomials") {
  ExperimentConfig config;
  config.target = "poly:1,-2,0.5";
  config.orders = {2};
  config.samples = 1000;
  const auto result = run(cmd_converge, config);
  REQUIRE(result.status == kExitOk);
  CHECK(result.out.find("# fitted_order r=2 exact_reproduction") != std::string::npos);
  for (const auto& row : data_rows(result.out)) CHECK(std::stod(row[6]) <= 1e-10);
}

TEST_CASE("converge with both operators carries the baseline note") {
  ExperimentConfig config;
  config.op = "both";
  config.samples = 1000;
  const auto result = run(cmd_converge, config);
  REQUIRE(result.status == kExitOk);
  CHECK(result.out.find("# lagrange=baseline-reconstruction") != std::string::npos);
  CHECK(result.out.find("operator=lagrange") != std::string::npos);
}

TEST_CASE("converge in two dimensions") {
  ExperimentConfig config;
  config.target = "sincos";
  config.dim = 2;
  config.levels = 2;
  config.n = 8;
  config.samples = 400;
  const auto result = run(cmd_converge, config);
  REQUIRE(result.status == kExitOk);
  CHECK(data_rows(result.out).size() == 2);
}

TEST_CASE("converge rejects bad parameters") {
  ExperimentConfig config;
  config.orders = {-1};
  CHECK(run(cmd_converge, config).status == kExitValidation);
  config.orders = {1};
  config.target = "nonsense";
  const auto result = run(cmd_converge, config);
  CHECK(result.status == kExitValidation);
  CHECK(result.err.find("UnknownTarget") != std::string::npos);
  CHECK(result.out.empty());
}

TEST_CASE("compare winners") {
  ExperimentConfig config;
  config.orders = {0, 1, 2};
  config.levels = 3;
  config.samples = 2000;
  const auto result = run(cmd_compare, config);
  REQUIRE(result.status == kExitOk);
  const auto rows = data_rows(result.out);
  REQUIRE(rows.size() == 18);
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    REQUIRE(rows[i].size() == 9);
    CHECK(rows[i][5] == "taylor");
    CHECK(rows[i + 1][5] == "lagrange");
    const std::string& winner = rows[i][8];
    CHECK(winner == rows[i + 1][8]);
    if (rows[i][4] == "0") {
      CHECK(winner == "tie");
      CHECK(rows[i][6] == rows[i + 1][6]);
    } else {
      CHECK(winner == "taylor");
    }
  }
}

TEST_CASE("eval at nodes and outside the domain") {
  ExperimentConfig config;
  config.n = 10;
  config.jitter = 0.0;
  config.points = {0.0, 0.3, 1.0};
  auto result = run(cmd_eval, config);
  REQUIRE(result.status == kExitOk);
  auto rows = data_rows(result.out);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) CHECK(std::stod(row[3]) <= 1e-12);

  config.points = {0.5, 1.5};
  result = run(cmd_eval, config);
  CHECK(result.status == kExitValidation);
  rows = data_rows(result.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][0] == "1.5");
  CHECK(rows[1][1] == "error:OutOfDomain");

  config.points.clear();
  result = run(cmd_eval, config);
  CHECK(result.status == kExitOk);
  CHECK(result.out == "# schema=1\ny,value,target,abs_error\n");
}

TEST_CASE("eval reads a written grid") {
  ExperimentConfig config;
  config.n = 12;
  config.jitter = 0.2;
  config.seed = 9;
  const std::string path = "test_cli_grid.txt";
  {
    std::ofstream file(path);
    file << run(cmd_grid, config).out;
  }
  config.points = {0.1, 0.77};
  const auto generated = run(cmd_eval, config);
  config.grid_file = path;
  config.seed = 1000;  // ignored once the grid comes from a file
  const auto loaded = run(cmd_eval, config);
  std::remove(path.c_str());
  CHECK(generated.status == kExitOk);
  CHECK(loaded.out == generated.out);
}

TEST_CASE("jackson and verify-kernel") {
  ExperimentConfig config;
  config.samples = 2000;
  auto result = run(cmd_jackson, config);
  CHECK(result.status == kExitOk);
  CHECK(result.out.find("bounded=true") != std::string::npos);

  config.target = "poly:1,2";
  result = run(cmd_jackson, config);
  CHECK(result.status == kExitInconclusive);
  CHECK(result.out.find("inconclusive") != std::string::npos);

  result = run(cmd_verify_kernel, ExperimentConfig{});
  CHECK(result.status == kExitOk);
  CHECK(data_rows(result.out).size() == 5);
}

TEST_CASE("binary output is byte-identical across runs") {
  const std::string command = std::string(TNN_CLI_PATH) + " converge --r 1,2 --samples 2000 2>&1";
  const std::string first = shell_output(command);
  CHECK(first.rfind("# schema=1\n", 0) == 0);
  CHECK(first == shell_output(command));
  CHECK(shell_output(std::string(TNN_CLI_PATH) + " grid --jitter 0.3 >/dev/null 2>&1; echo $?") == "2\n");
}
