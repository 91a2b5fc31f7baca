// Copyright (c) 2026 the edmc authors
// SPDX-License-Identifier: Apache-2.0

#include "edmc/io.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include "doctest.h"
#include "edmc/edm.hpp"
#include "edmc/mask.hpp"
#include "edmc/rng.hpp"

using namespace edmc;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& stem) {
  const auto dir = fs::temp_directory_path() / "edmc_io_tests";
  fs::create_directories(dir);
  return dir / stem;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Index count_lines(const fs::path& path) {
  std::ifstream in(path);
  Index lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  return lines;
}

bool bitwise_equal(const DenseMatrix& a, const DenseMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a.array() == b.array()).all();
}

io::RunReport sample_report() {
  io::RunReport report;
  report.rng_name = rng::kGeneratorName;
  report.generator = io::GeneratorParams{"edm_points", 50, 3, "uniform_unit_cube", 42};
  report.mask = io::MaskParams{0.5, "symmetric_pairs", true, 43};
  report.solver.algorithm = "fixed_rank_soft_impute";
  report.solver.beta = 0.8;
  report.solver.epsilon = 1e-8;
  report.solver.lambda0 = 2.5;
  report.solver.max_iterations = 1000;
  report.solver.target_rank = 5;
  report.solver.svd_backend = "dense";
  report.outcome.termination = "converged";
  report.outcome.iteration_count = 2;
  report.outcome.wall_time_seconds = 0.125;
  report.outcome.errors = metrics::ErrorReport{1e-12, 3e-10, 2e-10};
  report.trace = std::vector<solver::IterationRecord>{
      {1, 2.5, 1.25, std::numeric_limits<double>::infinity(), 7},
      {2, 1.0, 0.5, 1e-9, 5},
  };
  return report;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("dense matrices round-trip bitwise") {
  DenseMatrix m(2, 3);
  m << 0.1, -1.0 / 3.0, 1e308,
       5e-324, -0.0, 3.141592653589793;
  const auto path = temp_file("dense_roundtrip.csv");
  io::write_dense(path, m);
  CHECK(bitwise_equal(io::read_dense(path), m));

  const DenseMatrix big = edm::random_gaussian_lowrank(40, 7, 11);
  io::write_dense(path, big);
  CHECK(bitwise_equal(io::read_dense(path), big));
}

TEST_CASE("dense reader rejects ragged and empty input") {
  const auto ragged = temp_file("ragged.csv");
  write_text(ragged, "1,2,3\n4,5\n");
  CHECK_THROWS_WITH_AS(io::read_dense(ragged), doctest::Contains(":2:"), io::ParseError);

  const auto empty = temp_file("empty.csv");
  write_text(empty, "");
  CHECK_THROWS_AS(io::read_dense(empty), io::ParseError);

  const auto junk = temp_file("junk.csv");
  write_text(junk, "1,two,3\n");
  CHECK_THROWS_AS(io::read_dense(junk), io::ParseError);

  CHECK_THROWS_AS(io::read_dense(temp_file("does_not_exist.csv")), io::IoError);
}

TEST_CASE("hand-written fixture matches the generator") {
  // Squared distances for the points (0,0), (1,0), (0,1).
  const auto path = temp_file("triangle.csv");
  write_text(path, "0,1,1\n1,0,2\n1,2,0\n");
  edm::PointCloud pc;
  pc.points = DenseMatrix(3, 2);
  pc.points << 0, 0, 1, 0, 0, 1;
  CHECK(bitwise_equal(io::read_dense(path), edm::edm_from_points(pc).d));
}

TEST_CASE("observed-entry files") {
  DenseMatrix d(2, 2);
  d << 1, 2, 3, 4;
  const auto full = mask::observe(d, mask::ObservationMask::full(2));
  const auto path = temp_file("observed_full.txt");
  io::write_observed(path, full);
  CHECK(count_lines(path) == 5);  // header + one triple per entry
  const auto back = io::read_observed(path);
  CHECK(back.mask == full.mask);
  CHECK(bitwise_equal(back.values, full.values));

  const mask::ObservedMatrix none{mask::ObservationMask(3), DenseMatrix::Zero(3, 3)};
  io::write_observed(path, none);
  CHECK(count_lines(path) == 1);
  CHECK(read_text(path) == "n 3\n");
  CHECK(io::read_observed(path).mask.observed_count() == 0);
}

TEST_CASE("masked distance matrix round-trips") {
  const auto pc = edm::random_points(100, 3, edm::PointDistribution::UniformUnitCube, 9);
  const DenseMatrix d = edm::edm_from_points(pc).d;
  const auto m = mask::random_mask(100, 0.6, mask::MaskMode::SymmetricPairs, true, 10);
  const auto observed = mask::observe(d, m);
  const auto path = temp_file("observed_edm.txt");
  io::write_observed(path, observed);
  const auto back = io::read_observed(path);
  CHECK(back.mask == observed.mask);
  CHECK(bitwise_equal(back.values, observed.values));
}

TEST_CASE("observed-entry parse errors") {
  const auto path = temp_file("observed_bad.txt");
  write_text(path, "n 2\n0 0 1.5\n0 0 2.5\n");
  CHECK_THROWS_WITH_AS(io::read_observed(path), doctest::Contains("duplicate"), io::ParseError);

  write_text(path, "n 2\n0 2 1.5\n");
  CHECK_THROWS_WITH_AS(io::read_observed(path), doctest::Contains("out of range"), io::ParseError);

  write_text(path, "0 0 1.5\n");
  CHECK_THROWS_AS(io::read_observed(path), io::ParseError);

  write_text(path, "n 2\n0 0\n");
  CHECK_THROWS_AS(io::read_observed(path), io::ParseError);
}

TEST_CASE("run reports round-trip") {
  const auto report = sample_report();
  const auto path = temp_file("report.json");
  io::write_report(path, report);
  const auto back = io::read_report(path);
  CHECK(back == report);
  // The first trace entry carries +infinity; it must survive serialization.
  CHECK(std::isinf(back.trace->front().relative_change));

  io::RunReport minimal;
  minimal.rng_name = rng::kGeneratorName;
  minimal.solver.algorithm = "soft_impute";
  minimal.outcome.termination = "max_iterations";
  io::write_report(path, minimal);
  CHECK(io::read_report(path) == minimal);
}

TEST_CASE("reports without a format version are rejected") {
  const auto path = temp_file("report_broken.json");
  write_text(path, "{\"rng_name\": \"x\"}\n");
  CHECK_THROWS_WITH_AS(io::read_report(path), doctest::Contains("format_version"),
                       io::ParseError);

  write_text(path, "{\"format_version\": 999}\n");
  CHECK_THROWS_AS(io::read_report(path), io::ParseError);

  write_text(path, "not json");
  CHECK_THROWS_AS(io::read_report(path), io::ParseError);
}

TEST_CASE("trace CSV has one line per record plus a header") {
  const auto report = sample_report();
  const auto path = temp_file("trace.csv");
  io::write_trace_csv(path, *report.trace);
  CHECK(count_lines(path) == static_cast<Index>(report.trace->size()) + 1);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "iteration,lambda,sigma_r_plus_1,relative_change,rank");
}

}  // TEST_SUITE
