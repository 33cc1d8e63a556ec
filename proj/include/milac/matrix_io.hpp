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

#pragma once

// Matrix serialization.
//
// Complex CSV: one row per line, comma-separated cells written as "re+imj"
// or "re-imj" (e.g. "0.5-1.25j"), full round-trip precision. A cell without a
// trailing 'j' is read as a real number. Lines starting with '#' are comments.
//
// Real CSV: plain comma-separated doubles, same comment rule.
//
// Complex binary: little-endian u64 rows, u64 cols, then rows*cols entries
// in row-major order, each as f64 real part followed by f64 imaginary part.

#include <complex>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

namespace milac {

std::string format_complex(std::complex<double> z);
std::complex<double> parse_complex(const std::string& cell);

void write_complex_csv(std::ostream& os, const Eigen::MatrixXcd& m);
Eigen::MatrixXcd read_complex_csv(std::istream& is);

void write_real_csv(std::ostream& os, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_real_csv(std::istream& is);

void write_complex_binary(std::ostream& os, const Eigen::MatrixXcd& m);
Eigen::MatrixXcd read_complex_binary(std::istream& is);

// Shortest "%.17g"-style rendering used for every number the tools emit.
std::string format_double(double x);

// File helpers; throw ParseError / Error on I/O failure.
Eigen::MatrixXcd load_complex_csv(const std::string& path);
Eigen::MatrixXd load_real_csv(const std::string& path);
void save_complex_csv(const std::string& path, const Eigen::MatrixXcd& m);
void save_real_csv(const std::string& path, const Eigen::MatrixXd& m);

}  // namespace milac
