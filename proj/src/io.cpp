// Copyright 2026 The sfqopt Authors
//
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

#include "sfqopt/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sfqopt/errors.hpp"

namespace sfqopt {
namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

double parse_double(const std::string& token, const std::filesystem::path& path, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size()) throw ParseError(line, path.string() + ": bad number '" + token + "'");
  return v;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

void write_barcode(const std::filesystem::path& path, const PulseSequence& alpha) {
  auto out = open_for_write(path);
  out << alpha.to_string() << '\n';
  finish(out, path);
}

PulseSequence read_barcode(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line, text;
  while (std::getline(in, line)) {
    for (char c : line) {
      if (c == '0' || c == '1') {
        text.push_back(c);
      } else if (c != '\r' && c != ' ' && c != '\t') {
        throw IoError(path.string() + ": unexpected character in pulse sequence");
      }
    }
  }
  if (text.empty()) throw IoError(path.string() + ": empty pulse sequence");
  return PulseSequence::from_string(text);
}

void write_populations_csv(const std::filesystem::path& path, const ForwardTrajectory& traj, double tau_p,
                           int n_essential) {
  if (!traj.complete) throw MissingSnapshots("population output needs every snapshot");
  auto out = open_for_write(path);
  const Eigen::Index n = traj.snapshots.front().rows();
  out << "time_ns";
  for (int a = 0; a < n_essential; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) out << ",pop_" << a << '_' << b;
  }
  out << '\n';
  const auto rows = essential_populations(traj, n_essential);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    out << format_number(static_cast<double>(j) * tau_p);
    for (double v : rows[j]) out << ',' << format_number(v);
    out << '\n';
  }
  finish(out, path);
}

void write_convergence_csv(const std::filesystem::path& path, const OptimizationTrace& trace) {
  auto out = open_for_write(path);
  out << "iter,J,J1,J2,Delta,rho,accepted,hamming\n";
  out << 0 << ',' << format_number(trace.initial.j) << ',' << format_number(trace.initial.j1) << ','
      << format_number(trace.initial.j2) << ',' << trace.initial_radius << ",nan,1,0\n";
  for (const auto& r : trace.records) {
    out << r.iteration << ',' << format_number(r.value.j) << ',' << format_number(r.value.j1) << ','
        << format_number(r.value.j2) << ',' << r.radius << ',' << format_number(r.rho) << ','
        << (r.accepted ? 1 : 0) << ',' << r.hamming_step << '\n';
  }
  finish(out, path);
}

void write_restarts_csv(const std::filesystem::path& path, const std::vector<RestartSummary>& summaries) {
  auto out = open_for_write(path);
  out << "restart,J,J1,J2,iterations,accepted,terminal\n";
  for (const auto& s : summaries) {
    out << s.index << ',' << format_number(s.value.j) << ',' << format_number(s.value.j1) << ','
        << format_number(s.value.j2) << ',' << s.iterations << ',' << s.accepted_steps << ','
        << to_string(s.terminal_reason) << '\n';
  }
  finish(out, path);
}

ComplexMatrix read_gate_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::vector<Complex>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<Complex> row;
    std::string token;
    while (ls >> token) {
      const auto comma = token.find(',');
      if (comma == std::string::npos) {
        row.emplace_back(parse_double(token, path, line_no), 0.0);
      } else {
        row.emplace_back(parse_double(token.substr(0, comma), path, line_no),
                         parse_double(token.substr(comma + 1), path, line_no));
      }
    }
    if (!row.empty()) {
      if (!rows.empty() && row.size() != rows.front().size()) {
        throw ParseError(line_no, path.string() + ": ragged gate matrix");
      }
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) throw ParseError(line_no, path.string() + ": empty gate matrix");
  if (rows.size() != rows.front().size()) throw ParseError(line_no, path.string() + ": gate matrix is not square");
  const auto e = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix m(e, e);
  for (Eigen::Index i = 0; i < e; ++i) {
    for (Eigen::Index j = 0; j < e; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::string format_matrix(const ComplexMatrix& m) {
  std::ostringstream out;
  char buf[80];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", m(i, j).real(), m(i, j).imag());
      out << (j ? " " : "") << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace sfqopt
