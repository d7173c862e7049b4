#pragma once

#include <string>
#include <vector>

namespace odebench::svg {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;  // draw points instead of a line
};

/// Renders a line chart with axes, ticks and a legend. Output depends only on
/// the inputs (no timestamps), so identical data gives identical bytes.
std::string render(const std::string& title, const std::string& x_label,
                   const std::string& y_label, const std::vector<Series>& series);

}  // namespace odebench::svg
