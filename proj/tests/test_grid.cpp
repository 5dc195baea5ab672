#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "tnn/error.hpp"
#include "tnn/grid.hpp"
#include "tnn/rng.hpp"

using namespace tnn;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidParameter;
}

void check_min_separation(const IrregularGrid& g) {
  const auto z = g.nodes();
  for (std::size_t j = 0; j < z.size(); ++j) {
    for (std::size_t k = j + 1; k < z.size(); ++k) REQUIRE(std::abs(z[j] - z[k]) >= g.d1());
  }
}

}  // namespace

TEST_CASE("splitmix64 reference outputs") {
  // Published SplitMix64 outputs for seed 0.
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.next() == 0x06C45D188009454FULL);
}

TEST_CASE("from_nodes computes gap extremes") {
  const auto g = IrregularGrid::from_nodes({0.0, 1.0}, {0.0, 0.3, 0.55, 0.8, 1.0});
  CHECK(g.d1() == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(g.d2() == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(g.stats().ratio == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(g.stats().h == g.d2());
  CHECK(g.n() == 4);
}

TEST_CASE("from_nodes rejects invalid node lists") {
  CHECK(code_of([] { IrregularGrid::from_nodes({0, 1}, {0.0, 0.1, 0.5, 1.0}); }) ==
        ErrorCode::QuasiUniformityViolated);
  CHECK(code_of([] { IrregularGrid::from_nodes({0, 1}, {0.0, 0.6, 0.5, 1.0}); }) ==
        ErrorCode::NotStrictlyIncreasing);
  CHECK(code_of([] { IrregularGrid::from_nodes({0, 1}, {0.0, 0.5, 0.5, 1.0}); }) ==
        ErrorCode::NotStrictlyIncreasing);
  CHECK(code_of([] { IrregularGrid::from_nodes({0, 1}, {0.1, 0.5, 1.0}); }) == ErrorCode::EndpointMismatch);
  CHECK(code_of([] { IrregularGrid::from_nodes({0, 1}, {0.0, 0.5, 0.9}); }) == ErrorCode::EndpointMismatch);
  CHECK(code_of([] { IrregularGrid::from_nodes({0, 1}, {0.0}); }) == ErrorCode::TooFewNodes);
}

TEST_CASE("quasi-uniformity error reports the ratio") {
  try {
    IrregularGrid::from_nodes({0, 1}, {0.0, 0.1, 0.5, 1.0});
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("d2/d1 = 5") != std::string::npos);
  }
}

TEST_CASE("equispaced grid") {
  const auto g = generate_quasi_uniform({0.0, 1.0}, 10, 0.0, 7);
  REQUIRE(g.size() == 11);
  for (std::size_t k = 0; k <= 10; ++k) CHECK(g.node(k) == doctest::Approx(k / 10.0).epsilon(1e-15));
  CHECK(g.d1() == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(g.d2() == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("generation is deterministic in the seed") {
  const auto a = generate_quasi_uniform({0.0, 1.0}, 10, 0.2, 7);
  const auto b = generate_quasi_uniform({0.0, 1.0}, 10, 0.2, 7);
  const auto c = generate_quasi_uniform({0.0, 1.0}, 10, 0.2, 8);
  CHECK(std::equal(a.nodes().begin(), a.nodes().end(), b.nodes().begin(), b.nodes().end()));
  CHECK_FALSE(std::equal(a.nodes().begin(), a.nodes().end(), c.nodes().begin(), c.nodes().end()));
}

TEST_CASE("perturbations stay within the jitter band and endpoints are fixed") {
  const double jitter = 0.15;
  const auto g = generate_quasi_uniform({-2.0, 3.0}, 25, jitter, 99);
  const double u = 5.0 / 25.0;
  CHECK(g.node(0) == -2.0);
  CHECK(g.node(25) == 3.0);
  for (std::size_t k = 1; k < 25; ++k) CHECK(std::abs(g.node(k) - (-2.0 + k * u)) <= jitter * u * (1 + 1e-12));
}

TEST_CASE("jitter in the rejection band still yields quasi-uniform grids") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto g = generate_quasi_uniform({0.0, 1.0}, 10, 0.2, seed);
    REQUIRE(g.d2() / g.d1() < 2.0);
  }
}

TEST_CASE("jitter bounds") {
  CHECK(code_of([] { generate_quasi_uniform({0, 1}, 10, 0.25, 1); }) == ErrorCode::JitterTooLarge);
  CHECK(code_of([] { generate_quasi_uniform({0, 1}, 10, 0.3, 1); }) == ErrorCode::JitterTooLarge);
  CHECK(code_of([] { generate_quasi_uniform({0, 1}, 10, -0.1, 1); }) == ErrorCode::InvalidParameter);
  CHECK(code_of([] { generate_quasi_uniform({0, 1}, 0, 0.1, 1); }) == ErrorCode::InvalidParameter);
  CHECK(generate_quasi_uniform({0, 1}, 1, 0.2, 1).size() == 2);
}

TEST_CASE("refining a uniform grid with zero jitter gives the uniform grid") {
  const auto parent = generate_quasi_uniform({0.0, 1.0}, 10, 0.0, 1);
  const auto child = refine_nested(parent, 5, 0.0);
  REQUIRE(child.size() == 21);
  for (std::size_t k = 0; k <= 20; ++k) CHECK(child.node(k) == doctest::Approx(k / 20.0).epsilon(1e-14));
}

TEST_CASE("refinement invariants over seeded grids") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto parent = generate_quasi_uniform({0.0, 1.0}, 7 + seed % 13, 0.2, seed);
    const auto child = refine_nested(parent, seed * 31 + 1);
    CHECK(child.size() == 2 * parent.size() - 1);
    CHECK(child.d2() / child.d1() < 2.0);
    const double clamp = (parent.d1() - parent.d2() / 2.0) / 4.0;
    CHECK(child.d2() <= parent.d2() / 2.0 + clamp);
    // parents copied bit-for-bit
    const std::set<double> child_nodes(child.nodes().begin(), child.nodes().end());
    for (double z : parent.nodes()) CHECK(child_nodes.count(z) == 1);
    for (std::size_t k = 0; k < parent.size(); ++k) CHECK(child.node(2 * k) == parent.node(k));
  }
}

TEST_CASE("refinement clamps out-of-range jitter") {
  const auto parent = generate_quasi_uniform({0.0, 1.0}, 12, 0.15, 3);
  for (double jitter : {-1.0, 5.0, std::nan("")}) {
    const auto child = refine_nested(parent, 11, jitter);
    CHECK(child.d2() / child.d1() < 2.0);
  }
}

TEST_CASE("repeated refinement drives the mesh norm to zero") {
  for (std::uint64_t seed : {1u, 42u, 777u}) {
    auto g = generate_quasi_uniform({0.0, 1.0}, 10, 0.15, seed);
    const double h0 = g.d2();
    for (int level = 1; level <= 5; ++level) {
      g = refine_nested(g, seed + level);
      CHECK(g.d2() <= h0 / std::pow(2.0, level) * 1.25);
      CHECK(g.d2() / g.d1() < 2.0);
      check_min_separation(g);
    }
  }
}

TEST_CASE("nested ladder") {
  const auto ladder = nested_ladder({0.0, 1.0}, 16, 4, 0.1, 42);
  REQUIRE(ladder.size() == 4);
  CHECK(ladder[0].n() == 16);
  CHECK(ladder[3].n() == 128);
  for (std::size_t i = 1; i < ladder.size(); ++i) CHECK(ladder[i].d2() < ladder[i - 1].d2());
}

TEST_CASE("grid text round trip is exact") {
  const auto g = generate_quasi_uniform({-1.5, 2.25}, 17, 0.2, 5);
  std::stringstream buffer;
  write_grid(buffer, g);
  const std::string text = buffer.str();
  CHECK(text.rfind("# interval -1.5 2.25\n", 0) == 0);
  const auto back = read_grid(buffer);
  CHECK(std::equal(g.nodes().begin(), g.nodes().end(), back.nodes().begin(), back.nodes().end()));
  CHECK(back.interval().lo == -1.5);
}

TEST_CASE("grid reader rejects malformed input") {
  std::istringstream no_header("0\n1\n");
  CHECK(code_of([&] { read_grid(no_header); }) == ErrorCode::InvalidParameter);
  std::istringstream bad_value("# interval 0 1\n0\nabc\n1\n");
  CHECK(code_of([&] { read_grid(bad_value); }) == ErrorCode::InvalidParameter);
  std::istringstream bad_grid("# interval 0 1\n0\n0.1\n1\n");
  CHECK(code_of([&] { read_grid(bad_grid); }) == ErrorCode::QuasiUniformityViolated);
}
