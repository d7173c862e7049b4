#include "odebench/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace odebench::svg {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 540.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr std::size_t kMaxPoints = 2000;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  void finish() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
};

}  // namespace

std::string render(const std::string& title, const std::string& x_label,
                   const std::string& y_label, const std::vector<Series>& series) {
  Range xr;
  Range yr;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (std::isfinite(s.y[i])) {
        xr.add(s.x[i]);
        yr.add(s.y[i]);
      }
    }
  }
  xr.finish();
  yr.finish();

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * plot_h; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) +
         "\" height=\"" + fmt(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fmt(kLeft + plot_w / 2) + "\" y=\"22\" text-anchor=\"middle\" "
         "font-size=\"15\">" + escape(title) + "</text>\n";
  out += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(plot_w) +
         "\" height=\"" + fmt(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 5; ++i) {
    const double xv = xr.lo + (xr.hi - xr.lo) * i / 5.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * i / 5.0;
    const std::string gx = fmt(px(xv));
    const std::string gy = fmt(py(yv));
    out += "<line x1=\"" + gx + "\" y1=\"" + fmt(kTop + plot_h) + "\" x2=\"" + gx +
           "\" y2=\"" + fmt(kTop + plot_h + 5) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + gx + "\" y=\"" + fmt(kTop + plot_h + 18) +
           "\" text-anchor=\"middle\">" + tick_label(xv) + "</text>\n";
    out += "<line x1=\"" + fmt(kLeft - 5) + "\" y1=\"" + gy + "\" x2=\"" + fmt(kLeft) +
           "\" y2=\"" + gy + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fmt(kLeft - 8) + "\" y=\"" + fmt(py(yv) + 4) +
           "\" text-anchor=\"end\">" + tick_label(yv) + "</text>\n";
  }
  out += "<text x=\"" + fmt(kLeft + plot_w / 2) + "\" y=\"" + fmt(kHeight - 15) +
         "\" text-anchor=\"middle\">" + escape(x_label) + "</text>\n";
  out += "<text x=\"20\" y=\"" + fmt(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " + fmt(kTop + plot_h / 2) +
         ")\">" + escape(y_label) + "</text>\n";

  for (const auto& s : series) {
    const std::size_t n = s.x.size();
    if (s.markers) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(s.y[i])) continue;
        out += "<circle cx=\"" + fmt(px(s.x[i])) + "\" cy=\"" + fmt(py(s.y[i])) +
               "\" r=\"3\" fill=\"none\" stroke=\"" + s.color + "\"/>\n";
      }
      continue;
    }
    const std::size_t stride = std::max<std::size_t>(1, (n + kMaxPoints - 1) / kMaxPoints);
    std::string points;
    for (std::size_t i = 0; i < n; ++i) {
      if (i % stride != 0 && i + 1 != n) continue;
      if (!std::isfinite(s.y[i])) continue;
      if (!points.empty()) points += ' ';
      points += fmt(px(s.x[i])) + "," + fmt(py(s.y[i]));
    }
    out += "<polyline fill=\"none\" stroke=\"" + s.color +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
  }

  double ly = kTop + 10;
  const double lx = kLeft + plot_w + 15;
  for (const auto& s : series) {
    if (s.markers) {
      out += "<circle cx=\"" + fmt(lx + 10) + "\" cy=\"" + fmt(ly) +
             "\" r=\"3\" fill=\"none\" stroke=\"" + s.color + "\"/>\n";
    } else {
      out += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(ly) + "\" x2=\"" + fmt(lx + 20) +
             "\" y2=\"" + fmt(ly) + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"/>\n";
    }
    out += "<text x=\"" + fmt(lx + 26) + "\" y=\"" + fmt(ly + 4) + "\">" +
           escape(s.label) + "</text>\n";
    ly += 18;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace odebench::svg
