#pragma once

#include <string>
#include <vector>

namespace arbsim::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> err;  // optional symmetric error bars, same length as y
  bool line = false;        // polyline instead of markers
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<Series> series;
};

/// Points that cannot be placed (non-finite, or non-positive on a log
/// axis) are dropped.
std::string render_svg(const Plot& plot);

}  // namespace arbsim::cli
