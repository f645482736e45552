// Copyright 2026 The areaot Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Plain CSV for matrices, vectors and traces; JSON for solution summaries.
// Decimals are written with 17 significant digits so they round-trip.

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "areaot/problem.hpp"
#include "areaot/solver.hpp"

namespace areaot {

inline std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": " + std::strerror(errno));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path + ": " + std::strerror(errno));
  out << text;
  out.flush();
  if (!out) throw std::runtime_error(path + ": write failed: " + std::strerror(errno));
}

// One vector per non-empty line; fields separated by commas or whitespace.
inline std::vector<Vector> parse_csv_rows(const std::string& text, const std::string& origin) {
  std::vector<Vector> rows;
  std::istringstream lines(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    for (char& ch : line)
      if (ch == ',' || ch == '\r' || ch == '\t' || ch == ';') ch = ' ';
    std::istringstream fields(line);
    Vector row;
    std::string tok;
    while (fields >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) {
        throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": not a number: '" +
                                    tok + "'");
      }
      row.push_back(v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

inline SquareMatrix parse_matrix_csv(const std::string& text, const std::string& origin = "matrix") {
  const auto rows = parse_csv_rows(text, origin);
  const std::size_t n = rows.size();
  if (n == 0) throw std::invalid_argument(origin + ": empty matrix");
  SquareMatrix M(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw std::invalid_argument(origin + ": row " + std::to_string(i + 1) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(n));
    }
    std::copy(rows[i].begin(), rows[i].end(), M.data.begin() + static_cast<std::ptrdiff_t>(i * n));
  }
  return M;
}

// Accepts a single row, a single column, or any mix; entries are read in order.
inline Vector parse_vector_csv(const std::string& text, const std::string& origin = "vector") {
  Vector out;
  for (const auto& row : parse_csv_rows(text, origin)) out.insert(out.end(), row.begin(), row.end());
  if (out.empty()) throw std::invalid_argument(origin + ": empty vector");
  return out;
}

inline SquareMatrix read_matrix_csv(const std::string& path) {
  return parse_matrix_csv(read_text_file(path), path);
}

inline Vector read_vector_csv(const std::string& path) {
  return parse_vector_csv(read_text_file(path), path);
}

inline std::string format_matrix_csv(const SquareMatrix& M) {
  std::string out;
  for (std::size_t i = 0; i < M.n; ++i) {
    for (std::size_t j = 0; j < M.n; ++j) {
      if (j) out += ',';
      out += format_double(M(i, j));
    }
    out += '\n';
  }
  return out;
}

inline std::string format_vector_csv(const Vector& v) {
  std::string out;
  for (double e : v) {
    out += format_double(e);
    out += '\n';
  }
  return out;
}

inline void write_matrix_csv(const std::string& path, const SquareMatrix& M) {
  write_text_file(path, format_matrix_csv(M));
}

inline void write_vector_csv(const std::string& path, const Vector& v) {
  write_text_file(path, format_vector_csv(v));
}

inline constexpr const char* kTraceHeader = "iter,matvecs,primal,dual,gap,elapsed_ms";

inline std::string format_trace_csv(const ConvergenceTrace& trace) {
  std::string out = kTraceHeader;
  out += '\n';
  for (const auto& row : trace) {
    out += std::to_string(row.iter) + ',' + std::to_string(row.matvecs) + ',' +
           format_double(row.primal) + ',' + format_double(row.dual) + ',' +
           format_double(row.gap) + ',' + format_double(row.elapsed_ms) + '\n';
  }
  return out;
}

inline void emit_trace(const ConvergenceTrace& trace, const std::string& path) {
  write_text_file(path, format_trace_csv(trace));
}

// Plan file sits next to the solution: "out.json" -> "out.plan.csv".
inline std::string plan_path_for(const std::string& solution_path) {
  std::filesystem::path p(solution_path);
  p.replace_extension(".plan.csv");
  return p.string();
}

inline nlohmann::json solution_json(const Solution& sol, const nlohmann::json& config,
                                    const std::string& plan_file) {
  nlohmann::json j;
  j["objective"] = sol.objective;
  j["gap"] = sol.gap;
  j["outer_iterations"] = sol.outer_iterations;
  j["matvecs"] = sol.matvecs;
  j["solver"] = sol.solver;
  j["config"] = config;
  j["plan_file"] = plan_file;
  j["experimental"] = sol.experimental;
  j["status"] = sol.status == SolveStatus::kConverged ? "converged" : "iteration_limit";
  return j;
}

inline void emit_solution(const Solution& sol, const std::string& path,
                          const nlohmann::json& config = nlohmann::json::object()) {
  const std::string plan_file = plan_path_for(path);
  write_matrix_csv(plan_file, sol.plan.X);
  write_text_file(path, solution_json(sol, config, plan_file).dump(2) + "\n");
}

}  // namespace areaot
