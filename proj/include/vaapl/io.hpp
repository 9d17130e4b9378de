// SPDX-License-Identifier: Apache-2.0
//
// vaapl - omni-directional pathloss estimation with directional-antenna virtual arrays
// Copyright (C) 2026 vaapl contributors
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

#ifndef VAAPL_IO_HPP
#define VAAPL_IO_HPP

#include <complex>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace vaapl
{

// Minimal CSV reader for the numeric file formats used by the toolkit.
// '#' lines and blank lines are skipped; errors carry file name and line.
class CsvReader
{
  public:
    CsvReader(std::istream &in, std::string name);

    // Consume the first data line and require it to equal the given header.
    void expect_header(const std::vector<std::string> &columns);

    // Parse the next data row into doubles. Returns false at end of input;
    // throws std::runtime_error on malformed rows or column-count mismatch.
    bool next_row(std::vector<double> &out);

    std::size_t line_number() const { return line_; }

  private:
    bool next_line(std::string &out);

    std::istream &in_;
    std::string name_;
    std::size_t line_ = 0;
    std::size_t ncols_ = 0;
};

std::vector<std::string> split_csv_line(const std::string &line);

// printf-style double formatting into a std::string.
std::string format_double(double v, const char *fmt = "%.10g");

// Per-rotation-angle sweep file: header freq_hz,re,im. Values are written
// with 17 significant digits so a write/read round trip is exact.
void write_sweep_csv(const std::filesystem::path &file, const std::vector<double> &freqs_hz,
                     const std::complex<double> *values, std::size_t count);

struct SweepFile
{
    std::vector<double> freqs_hz;
    std::vector<std::complex<double>> values;
};

SweepFile read_sweep_csv(const std::filesystem::path &file);

} // namespace vaapl

#endif
