// Copyright 2026 The Authors.
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

#ifndef DADS_IO_HPP
#define DADS_IO_HPP

#include <fstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace dads {

/// Shortest round-trip decimal form; identical bytes for identical doubles.
std::string format_number(double v);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  template <typename... Ts>
  void row(const Ts&... cells) {
    bool first = true;
    ((put(cells, first), first = false), ...);
    out_ << '\n';
  }

 private:
  void sep(bool first) {
    if (!first) out_ << ',';
  }
  void put(double v, bool first) {
    sep(first);
    out_ << format_number(v);
  }
  void put(std::string_view v, bool first) {
    sep(first);
    out_ << v;
  }
  void put(const std::string& v, bool first) { put(std::string_view(v), first); }
  void put(const char* v, bool first) { put(std::string_view(v), first); }
  template <typename I>
    requires std::is_integral_v<I>
  void put(I v, bool first) {
    sep(first);
    out_ << v;
  }

  std::ofstream out_;
};

/// A parsed CSV file: header names and string cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by name; throws ContractViolation when absent.
  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
  const std::string& text(std::size_t row, std::string_view name) const;
};

CsvTable read_csv(const std::string& path);

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool log_y = false;
};

/// Standalone SVG line chart.
void write_line_plot(const std::string& path, const PlotSpec& spec, const std::vector<Series>& series);

/// Creates `dir` and its parents if needed.
void ensure_directory(const std::string& dir);

}  // namespace dads

#endif  // DADS_IO_HPP
