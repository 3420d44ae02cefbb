#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pitchcatch {

/// Minimal deterministic SVG line plot: axes, ticks, a few series, legend.
/// Enough for visual regression of the simulated figure analogues.
class SvgPlot {
  public:
    SvgPlot(std::string title, std::string x_label, std::string y_label);

    void add_series(std::string name, std::vector<double> x,
                    std::vector<double> y);
    void write(std::ostream& os) const;

  private:
    std::string title_, x_label_, y_label_;
    struct Series {
        std::string name;
        std::vector<double> x, y;
    };
    std::vector<Series> series_;
};

}  // namespace pitchcatch
