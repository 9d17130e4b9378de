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

#include "vaapl/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace vaapl
{

namespace
{

std::string trim(const std::string &s)
{
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

std::vector<std::string> split_csv_line(const std::string &line)
{
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true)
    {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos)
        {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

std::string format_double(double v, const char *fmt)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

CsvReader::CsvReader(std::istream &in, std::string name) : in_(in), name_(std::move(name)) {}

bool CsvReader::next_line(std::string &out)
{
    std::string raw;
    while (std::getline(in_, raw))
    {
        ++line_;
        std::string t = trim(raw);
        if (t.empty() || t[0] == '#')
            continue;
        out = t;
        return true;
    }
    return false;
}

void CsvReader::expect_header(const std::vector<std::string> &columns)
{
    std::string line;
    if (!next_line(line))
        throw std::runtime_error(name_ + ": empty file, expected header");
    auto fields = split_csv_line(line);
    if (fields.size() != columns.size())
        throw std::runtime_error(name_ + ":" + std::to_string(line_) + ": expected " +
                                 std::to_string(columns.size()) + " header columns, got " +
                                 std::to_string(fields.size()));
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (fields[i] != columns[i])
            throw std::runtime_error(name_ + ":" + std::to_string(line_) + ": header column " +
                                     std::to_string(i + 1) + " is '" + fields[i] + "', expected '" +
                                     columns[i] + "'");
    ncols_ = columns.size();
}

bool CsvReader::next_row(std::vector<double> &out)
{
    std::string line;
    if (!next_line(line))
        return false;
    auto fields = split_csv_line(line);
    if (ncols_ != 0 && fields.size() != ncols_)
        throw std::runtime_error(name_ + ":" + std::to_string(line_) + ": expected " +
                                 std::to_string(ncols_) + " columns, got " +
                                 std::to_string(fields.size()));
    out.clear();
    out.reserve(fields.size());
    for (const auto &f : fields)
    {
        try
        {
            std::size_t pos = 0;
            double v = std::stod(f, &pos);
            if (pos != f.size())
                throw std::invalid_argument("trailing characters");
            out.push_back(v);
        }
        catch (const std::exception &)
        {
            throw std::runtime_error(name_ + ":" + std::to_string(line_) + ": malformed number '" +
                                     f + "'");
        }
    }
    return true;
}

void write_sweep_csv(const std::filesystem::path &file, const std::vector<double> &freqs_hz,
                     const std::complex<double> *values, std::size_t count)
{
    if (freqs_hz.size() != count)
        throw std::invalid_argument("write_sweep_csv: frequency/value length mismatch");
    std::ofstream out(file);
    if (!out)
        throw std::runtime_error("write_sweep_csv: cannot open " + file.string());
    out << "freq_hz,re,im\n";
    for (std::size_t i = 0; i < count; ++i)
        out << format_double(freqs_hz[i], "%.17g") << ',' << format_double(values[i].real(), "%.17g")
            << ',' << format_double(values[i].imag(), "%.17g") << '\n';
    if (!out)
        throw std::runtime_error("write_sweep_csv: write failed for " + file.string());
}

SweepFile read_sweep_csv(const std::filesystem::path &file)
{
    std::ifstream in(file);
    if (!in)
        throw std::runtime_error("read_sweep_csv: cannot open " + file.string());
    CsvReader reader(in, file.string());
    reader.expect_header({"freq_hz", "re", "im"});
    SweepFile sweep;
    std::vector<double> row;
    while (reader.next_row(row))
    {
        sweep.freqs_hz.push_back(row[0]);
        sweep.values.emplace_back(row[1], row[2]);
    }
    if (sweep.freqs_hz.empty())
        throw std::runtime_error("read_sweep_csv: " + file.string() + ": no data rows");
    return sweep;
}

} // namespace vaapl
