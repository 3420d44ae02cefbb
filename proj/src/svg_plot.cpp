#include "pitchcatch/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace pitchcatch {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)),
      x_label_(std::move(x_label)),
      y_label_(std::move(y_label)) {}

void SvgPlot::add_series(std::string name, std::vector<double> x,
                         std::vector<double> y) {
    series_.push_back({std::move(name), std::move(x), std::move(y)});
}

void SvgPlot::write(std::ostream& os) const {
    const double width = 720, height = 480;
    const double ml = 70, mr = 20, mt = 40, mb = 55;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const Series& s : series_) {
        for (double v : s.x) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
        for (double v : s.y) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (!(xmax > xmin)) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (!(ymax > ymin)) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) {
        return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr);
    };
    auto py = [&](double y) {
        return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
    };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
       << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
       << "font-family=\"sans-serif\" font-size=\"16\">" << title_
       << "</text>\n";

    // axes
    os << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\""
       << width - mr << "\" y2=\"" << height - mb
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
       << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double xv = xmin + (xmax - xmin) * k / 5.0;
        const double yv = ymin + (ymax - ymin) * k / 5.0;
        os << "<line x1=\"" << px(xv) << "\" y1=\"" << height - mb << "\" x2=\""
           << px(xv) << "\" y2=\"" << height - mb + 5
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << px(xv) << "\" y=\"" << height - mb + 20
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
              "font-size=\"11\">"
           << fmt(xv) << "</text>\n";
        os << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << ml
           << "\" y2=\"" << py(yv) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
              "font-size=\"11\">"
           << fmt(yv) << "</text>\n";
    }
    os << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"13\">"
       << x_label_ << "</text>\n";
    os << "<text x=\"18\" y=\"" << (mt + height - mb) / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"13\" transform=\"rotate(-90 18 "
       << (mt + height - mb) / 2 << ")\">" << y_label_ << "</text>\n";

    for (std::size_t si = 0; si < series_.size(); ++si) {
        const Series& s = series_[si];
        const char* color = kColors[si % 6];
        os << "<polyline fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.5\" points=\"";
        const std::size_t n = s.x.size();
        const std::size_t stride = n > 2000 ? n / 2000 + 1 : 1;
        for (std::size_t k = 0; k < n; k += stride)
            os << fmt(px(s.x[k])) << ',' << fmt(py(s.y[k])) << ' ';
        if (stride > 1 && n > 0)
            os << fmt(px(s.x[n - 1])) << ',' << fmt(py(s.y[n - 1]));
        os << "\"/>\n";
        const double lx = width - mr - 150, ly = mt + 18 * (si + 1);
        os << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\""
           << lx + 24 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
           << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << lx + 30 << "\" y=\"" << ly
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name
           << "</text>\n";
    }
    os << "</svg>\n";
}

}  // namespace pitchcatch
