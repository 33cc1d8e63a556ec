// SPDX-License-Identifier: Apache-2.0
//
// milac-kit: capacity-achieving MiLAC architectures for MIMO systems
// Copyright (C) 2026 milac-kit contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "milac/matrix_io.hpp"

#include <bit>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "milac/error.hpp"

namespace milac {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary matrix format assumes a little-endian host");

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& text, const std::string& cell) {
  if (text.empty()) throw ParseError("empty number in cell '" + cell + "'");
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + text.size()) throw ParseError("bad number '" + text + "' in cell '" + cell + "'");
  return v;
}

template <typename Scalar, typename CellParser>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> read_csv(std::istream& is, CellParser parse) {
  std::vector<std::vector<Scalar>> rows;
  std::string line;
  while (std::getline(is, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<Scalar> row;
    std::stringstream ls(t);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(parse(trim(cell)));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("ragged CSV: row " + std::to_string(rows.size() + 1) + " has " +
                       std::to_string(row.size()) + " cells, expected " +
                       std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(
      static_cast<Eigen::Index>(rows.size()),
      static_cast<Eigen::Index>(rows.empty() ? 0 : rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

void write_u64(std::ostream& os, std::uint64_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint64_t read_u64(std::istream& is) {
  std::uint64_t v = 0;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw ParseError("truncated binary header");
  return v;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(std::complex<double> z) {
  std::string im = format_double(z.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return format_double(z.real()) + im + "j";
}

std::complex<double> parse_complex(const std::string& raw) {
  const std::string cell = trim(raw);
  if (cell.empty()) throw ParseError("empty CSV cell");
  if (cell.back() != 'j' && cell.back() != 'J') return {parse_real(cell, cell), 0.0};
  const std::string body = cell.substr(0, cell.size() - 1);
  // The imaginary part starts at the last sign that is neither leading nor
  // part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_real(body, cell)};
  return {parse_real(body.substr(0, split), cell), parse_real(body.substr(split), cell)};
}

void write_complex_csv(std::ostream& os, const Eigen::MatrixXcd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << format_complex(m(i, j));
    }
    os << '\n';
  }
}

Eigen::MatrixXcd read_complex_csv(std::istream& is) {
  return read_csv<std::complex<double>>(is, [](const std::string& c) { return parse_complex(c); });
}

void write_real_csv(std::ostream& os, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

Eigen::MatrixXd read_real_csv(std::istream& is) {
  return read_csv<double>(is, [](const std::string& c) { return parse_real(c, c); });
}

void write_complex_binary(std::ostream& os, const Eigen::MatrixXcd& m) {
  write_u64(os, static_cast<std::uint64_t>(m.rows()));
  write_u64(os, static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double parts[2] = {m(i, j).real(), m(i, j).imag()};
      os.write(reinterpret_cast<const char*>(parts), sizeof parts);
    }
  }
}

Eigen::MatrixXcd read_complex_binary(std::istream& is) {
  const std::uint64_t rows = read_u64(is);
  const std::uint64_t cols = read_u64(is);
  if (rows > (1u << 20) || cols > (1u << 20)) throw ParseError("implausible binary matrix size");
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double parts[2];
      if (!is.read(reinterpret_cast<char*>(parts), sizeof parts)) {
        throw ParseError("truncated binary matrix data");
      }
      m(i, j) = {parts[0], parts[1]};
    }
  }
  return m;
}

Eigen::MatrixXcd load_complex_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_complex_csv(in);
}

Eigen::MatrixXd load_real_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_real_csv(in);
}

void save_complex_csv(const std::string& path, const Eigen::MatrixXcd& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_complex_csv(out, m);
}

void save_real_csv(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_real_csv(out, m);
}

}  // namespace milac
