// Copyright (c) 2026 the edmc authors
// SPDX-License-Identifier: Apache-2.0

#include "edmc/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace edmc::io {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& token, const std::string& where) {
  const char* begin = token.c_str();
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(begin, &end);
  while (end && (*end == ' ' || *end == '\t')) ++end;
  if (end == begin || (end && *end != '\0'))
    throw ParseError(where + ": cannot parse number from '" + token + "'");
  return value;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return in;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t") == std::string::npos;
}

// Non-finite doubles have no JSON representation, so they travel as strings.
json json_from_double(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double double_from_json(const json& j, const char* key) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ParseError(std::string("report field '") + key + "' is not a number");
}

}  // namespace

void write_dense(const std::filesystem::path& path, const DenseMatrix& matrix) {
  if (matrix.rows() < 1 || matrix.cols() < 1)
    throw std::invalid_argument("write_dense: matrix must be non-empty");
  std::ofstream out = open_for_write(path);
  for (Index i = 0; i < matrix.rows(); ++i) {
    for (Index j = 0; j < matrix.cols(); ++j) {
      if (j > 0) out << ',';
      out << fmt(matrix(i, j));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

DenseMatrix read_dense(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  Index line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    strip_cr(line);
    if (is_blank(line)) {
      if (in.peek() == std::ifstream::traits_type::eof()) break;
      throw ParseError(path.string() + ":" + std::to_string(line_number) + ": blank line");
    }
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string token = line.substr(start, comma - start);
      row.push_back(
          parse_double(token, path.string() + ":" + std::to_string(line_number)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError(path.string() + ":" + std::to_string(line_number) + ": expected " +
                       std::to_string(rows.front().size()) + " columns, found " +
                       std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path.string() + ": no rows");
  DenseMatrix matrix(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < matrix.rows(); ++i)
    for (Index j = 0; j < matrix.cols(); ++j)
      matrix(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return matrix;
}

void write_observed(const std::filesystem::path& path, const mask::ObservedMatrix& observed) {
  if (observed.values.rows() != observed.mask.n() || observed.values.cols() != observed.mask.n())
    throw std::invalid_argument("write_observed: values shape does not match mask");
  std::ofstream out = open_for_write(path);
  out << "n " << observed.mask.n() << '\n';
  observed.mask.for_each_observed(
      [&](Index i, Index j) { out << i << ' ' << j << ' ' << fmt(observed.values(i, j)) << '\n'; });
  if (!out) throw IoError("write failed: " + path.string());
}

mask::ObservedMatrix read_observed(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  std::string line;
  Index line_number = 0;

  Index n = -1;
  while (std::getline(in, line)) {
    ++line_number;
    strip_cr(line);
    if (is_blank(line)) continue;
    std::istringstream header(line);
    std::string tag;
    header >> tag >> n;
    if (tag != "n" || header.fail() || n < 1 ||
        !(header >> std::ws).eof())
      throw ParseError(path.string() + ":" + std::to_string(line_number) +
                       ": expected header 'n <size>'");
    break;
  }
  if (n < 1) throw ParseError(path.string() + ": missing header 'n <size>'");

  mask::ObservedMatrix observed{mask::ObservationMask(n), DenseMatrix::Zero(n, n)};
  while (std::getline(in, line)) {
    ++line_number;
    strip_cr(line);
    if (is_blank(line)) continue;
    const std::string where = path.string() + ":" + std::to_string(line_number);
    std::istringstream triple(line);
    Index i = -1, j = -1;
    std::string value_token;
    triple >> i >> j >> value_token;
    if (triple.fail() || !(triple >> std::ws).eof())
      throw ParseError(where + ": expected 'i j value'");
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw ParseError(where + ": position (" + std::to_string(i) + ", " + std::to_string(j) +
                       ") out of range for n=" + std::to_string(n));
    if (observed.mask.contains(i, j))
      throw ParseError(where + ": duplicate position (" + std::to_string(i) + ", " +
                       std::to_string(j) + ")");
    observed.mask.insert(i, j);
    observed.values(i, j) = parse_double(value_token, where);
  }
  return observed;
}

void write_report(const std::filesystem::path& path, const RunReport& report) {
  json j;
  j["format_version"] = report.format_version;
  j["rng_name"] = report.rng_name;
  if (report.generator) {
    j["generator"] = {{"family", report.generator->family},
                      {"n", report.generator->n},
                      {"dimension_or_rank", report.generator->dimension_or_rank},
                      {"distribution", report.generator->distribution},
                      {"seed", report.generator->seed}};
  }
  if (report.mask) {
    j["mask"] = {{"deletion_fraction", report.mask->deletion_fraction},
                 {"mode", report.mask->mode},
                 {"keep_diagonal", report.mask->keep_diagonal},
                 {"seed", report.mask->seed}};
  }
  j["solver"] = {{"algorithm", report.solver.algorithm},
                 {"beta", report.solver.beta},
                 {"epsilon", report.solver.epsilon},
                 {"max_iterations", report.solver.max_iterations},
                 {"target_rank", report.solver.target_rank},
                 {"svd_backend", report.solver.svd_backend}};
  if (report.solver.lambda0) j["solver"]["lambda0"] = *report.solver.lambda0;
  j["outcome"] = {{"termination", report.outcome.termination},
                  {"iteration_count", report.outcome.iteration_count},
                  {"wall_time_seconds", report.outcome.wall_time_seconds}};
  if (report.outcome.errors) {
    j["outcome"]["errors"] = {{"relative_error", report.outcome.errors->relative_error},
                              {"max_error", report.outcome.errors->max_error},
                              {"masked_only_max_error", report.outcome.errors->masked_only_max_error}};
  }
  if (report.trace) {
    json records = json::array();
    for (const auto& rec : *report.trace) {
      records.push_back({{"iteration", rec.index},
                         {"lambda", rec.lambda},
                         {"sigma_r_plus_1", rec.sigma_r_plus_1},
                         {"relative_change", json_from_double(rec.relative_change)},
                         {"rank", rec.iterate_rank}});
    }
    j["trace"] = std::move(records);
  }

  std::ofstream out = open_for_write(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

RunReport read_report(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }

  try {
    RunReport report;
    report.format_version = j.at("format_version").get<int>();
    if (report.format_version != kReportFormatVersion)
      throw ParseError(path.string() + ": unsupported format_version " +
                       std::to_string(report.format_version));
    report.rng_name = j.at("rng_name").get<std::string>();
    if (j.contains("generator")) {
      const json& g = j.at("generator");
      GeneratorParams params;
      params.family = g.at("family").get<std::string>();
      params.n = g.at("n").get<Index>();
      params.dimension_or_rank = g.at("dimension_or_rank").get<Index>();
      params.distribution = g.at("distribution").get<std::string>();
      params.seed = g.at("seed").get<std::uint64_t>();
      report.generator = std::move(params);
    }
    if (j.contains("mask")) {
      const json& m = j.at("mask");
      MaskParams params;
      params.deletion_fraction = m.at("deletion_fraction").get<double>();
      params.mode = m.at("mode").get<std::string>();
      params.keep_diagonal = m.at("keep_diagonal").get<bool>();
      params.seed = m.at("seed").get<std::uint64_t>();
      report.mask = std::move(params);
    }
    const json& s = j.at("solver");
    report.solver.algorithm = s.at("algorithm").get<std::string>();
    report.solver.beta = s.at("beta").get<double>();
    report.solver.epsilon = s.at("epsilon").get<double>();
    if (s.contains("lambda0")) report.solver.lambda0 = s.at("lambda0").get<double>();
    report.solver.max_iterations = s.at("max_iterations").get<Index>();
    report.solver.target_rank = s.at("target_rank").get<Index>();
    report.solver.svd_backend = s.at("svd_backend").get<std::string>();
    const json& o = j.at("outcome");
    report.outcome.termination = o.at("termination").get<std::string>();
    report.outcome.iteration_count = o.at("iteration_count").get<Index>();
    report.outcome.wall_time_seconds = o.at("wall_time_seconds").get<double>();
    if (o.contains("errors")) {
      const json& e = o.at("errors");
      metrics::ErrorReport errors;
      errors.relative_error = e.at("relative_error").get<double>();
      errors.max_error = e.at("max_error").get<double>();
      errors.masked_only_max_error = e.at("masked_only_max_error").get<double>();
      report.outcome.errors = errors;
    }
    if (j.contains("trace")) {
      std::vector<solver::IterationRecord> trace;
      for (const json& rec : j.at("trace")) {
        solver::IterationRecord record;
        record.index = rec.at("iteration").get<Index>();
        record.lambda = rec.at("lambda").get<double>();
        record.sigma_r_plus_1 = rec.at("sigma_r_plus_1").get<double>();
        record.relative_change = double_from_json(rec.at("relative_change"), "relative_change");
        record.iterate_rank = rec.at("rank").get<Index>();
        trace.push_back(record);
      }
      report.trace = std::move(trace);
    }
    return report;
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_trace_csv(const std::filesystem::path& path,
                     const std::vector<solver::IterationRecord>& trace) {
  std::ofstream out = open_for_write(path);
  out << "iteration,lambda,sigma_r_plus_1,relative_change,rank\n";
  for (const auto& rec : trace) {
    out << rec.index << ',' << fmt(rec.lambda) << ',' << fmt(rec.sigma_r_plus_1) << ','
        << fmt(rec.relative_change) << ',' << rec.iterate_rank << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace edmc::io
