// Copyright 2026 The Trajcast Authors
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

#ifndef TRAJCAST_SVG_REPORT_H_
#define TRAJCAST_SVG_REPORT_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace trajcast {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

// A self-contained SVG line chart with linear axes. Non-finite points are
// skipped.
std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, std::span<const Series> series);

// One series per training-log field ("total", "l_reg", ...) against epoch.
Series log_series(std::istream& log, const std::string& field, const std::string& name);

// The "jitter" column of a grid CSV against row index.
Series grid_series(std::istream& csv, const std::string& column);

}  // namespace trajcast

#endif  // TRAJCAST_SVG_REPORT_H_
