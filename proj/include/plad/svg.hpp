#pragma once

#include <string>
#include <vector>

namespace plad::svg {

/// One polyline. `x` and `y` are parallel; a NaN y value breaks the line
/// into separate segments (gap in the data).
struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Bar {
  std::string label;
  double value = 0.0;
};

struct Box {
  std::string label;
  double whisker_low = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double whisker_high = 0.0;
};

/// Self-contained SVG documents; output is a pure function of the inputs.
std::string line_chart(const std::string& title, const std::vector<Series>& series,
                       const std::string& x_label = "", const std::string& y_label = "");
std::string bar_chart(const std::string& title, const std::vector<Bar>& bars,
                      const std::string& y_label = "");
std::string box_chart(const std::string& title, const std::vector<Box>& boxes,
                      const std::string& y_label = "");

void save(const std::string& svg, const std::string& path);

}  // namespace plad::svg
