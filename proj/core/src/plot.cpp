#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gnd/bench.hpp"

// Hand-rolled SVG scatter/line plot on log-log axes. No dependencies, so
// results render anywhere and diffs stay readable.

namespace gnd {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fmt_tick(int exponent) {
  return "1e" + std::to_string(exponent);
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Series {
  std::string label;
  std::vector<const LerPoint*> points;  // sorted by physical_p
};

}  // namespace

std::string emit_plot(const std::vector<LerPoint>& points,
                      const std::string& title) {
  if (points.empty())
    throw std::invalid_argument("emit_plot: no points to plot");

  // Group by decoder label, first appearance fixes the order.
  std::vector<Series> series;
  for (const LerPoint& pt : points) {
    auto it = std::find_if(series.begin(), series.end(), [&](const Series& s) {
      return s.label == pt.decoder;
    });
    if (it == series.end()) {
      series.push_back({pt.decoder, {}});
      it = series.end() - 1;
    }
    it->points.push_back(&pt);
  }
  for (Series& s : series)
    std::sort(s.points.begin(), s.points.end(),
              [](const LerPoint* a, const LerPoint* b) {
                return a->physical_p < b->physical_p;
              });

  // Zero failure counts have no log-scale position; stand in with the
  // resolution of the experiment (below one failure per shot count). CI
  // bands are clamped to the y floor the same way.
  double y_floor = 1.0;
  for (const LerPoint& pt : points)
    if (pt.shots) y_floor = std::min(y_floor, 0.5 / pt.shots);
  auto y_value = [&](const LerPoint& pt) {
    return std::max(pt.ler, y_floor);
  };

  double xmin = 1.0, xmax = 0.0, ymin = 1.0, ymax = 0.0;
  for (const LerPoint& pt : points) {
    if (pt.physical_p <= 0.0)
      throw std::invalid_argument("emit_plot: physical_p must be positive");
    xmin = std::min(xmin, pt.physical_p);
    xmax = std::max(xmax, pt.physical_p);
    ymin = std::min(ymin, y_value(pt));
    ymax = std::max(ymax, std::max(y_value(pt), std::max(pt.ci.hi, y_floor)));
  }
  if (xmin == xmax) {
    xmin /= 2.0;
    xmax *= 2.0;
  }
  // Snap to whole decades so the grid is round.
  const int xe_lo = static_cast<int>(std::floor(std::log10(xmin)));
  const int xe_hi = static_cast<int>(std::ceil(std::log10(xmax)));
  const int ye_lo = static_cast<int>(std::floor(std::log10(ymin)));
  const int ye_hi = static_cast<int>(std::ceil(std::log10(std::min(1.0, ymax))));

  const double width = 860, height = 600;
  const double ml = 80, mr = 30, mt = title.empty() ? 30 : 56, mb = 64;
  const double pw = width - ml - mr, ph = height - mt - mb;

  auto sx = [&](double p) {
    const double t = (std::log10(p) - xe_lo) / std::max(1, xe_hi - xe_lo);
    return ml + t * pw;
  };
  auto sy = [&](double v) {
    const double t =
        (std::log10(std::max(v, y_floor)) - ye_lo) / std::max(1, ye_hi - ye_lo);
    return mt + (1.0 - t) * ph;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) +
         "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(width) +
         " " + fmt(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<g font-family=\"Helvetica, Arial, sans-serif\" font-size=\"13\">\n";

  if (!title.empty())
    svg += "<text x=\"" + fmt(width / 2) +
           "\" y=\"28\" text-anchor=\"middle\" font-size=\"17\">" +
           escape_xml(title) + "</text>\n";

  // Gridlines and ticks per decade, with minor x10 subdivisions.
  for (int e = xe_lo; e <= xe_hi; ++e) {
    const double x = sx(std::pow(10.0, e));
    svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(mt) + "\" x2=\"" +
           fmt(x) + "\" y2=\"" + fmt(mt + ph) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(mt + ph + 20) +
           "\" text-anchor=\"middle\">" + fmt_tick(e) + "</text>\n";
    if (e < xe_hi)
      for (int m = 2; m <= 9; ++m) {
        const double xm = sx(m * std::pow(10.0, e));
        svg += "<line x1=\"" + fmt(xm) + "\" y1=\"" + fmt(mt) + "\" x2=\"" +
               fmt(xm) + "\" y2=\"" + fmt(mt + ph) +
               "\" stroke=\"#f3f3f3\" stroke-width=\"1\"/>\n";
      }
  }
  for (int e = ye_lo; e <= ye_hi; ++e) {
    const double y = sy(std::pow(10.0, e));
    svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
           fmt(ml + pw) + "\" y2=\"" + fmt(y) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(y + 4) +
           "\" text-anchor=\"end\">" + fmt_tick(e) + "</text>\n";
    if (e < ye_hi)
      for (int m = 2; m <= 9; ++m) {
        const double ym = sy(m * std::pow(10.0, e));
        svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(ym) + "\" x2=\"" +
               fmt(ml + pw) + "\" y2=\"" + fmt(ym) +
               "\" stroke=\"#f3f3f3\" stroke-width=\"1\"/>\n";
      }
  }

  // Frame and axis labels.
  svg += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" +
         fmt(pw) + "\" height=\"" + fmt(ph) +
         "\" fill=\"none\" stroke=\"#333333\"/>\n";
  svg += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"" + fmt(height - 18) +
         "\" text-anchor=\"middle\">physical error rate p</text>\n";
  svg += "<text x=\"20\" y=\"" + fmt(mt + ph / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
         fmt(mt + ph / 2) + ")\">logical error rate</text>\n";

  // Series: CI band, then line, then markers.
  for (std::size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
    if (s.points.size() > 1) {
      std::string band = "<polygon fill=\"" + std::string(color) +
                         "\" fill-opacity=\"0.15\" stroke=\"none\" points=\"";
      for (const LerPoint* pt : s.points)
        band += fmt(sx(pt->physical_p)) + "," +
                fmt(sy(std::max(pt->ci.hi, y_floor))) + " ";
      for (auto it = s.points.rbegin(); it != s.points.rend(); ++it)
        band += fmt(sx((*it)->physical_p)) + "," +
                fmt(sy(std::max((*it)->ci.lo, y_floor))) + " ";
      band += "\"/>\n";
      svg += band;
      std::string line = "<polyline fill=\"none\" stroke=\"" +
                         std::string(color) +
                         "\" stroke-width=\"1.8\" points=\"";
      for (const LerPoint* pt : s.points)
        line += fmt(sx(pt->physical_p)) + "," + fmt(sy(y_value(*pt))) + " ";
      line += "\"/>\n";
      svg += line;
    }
    for (const LerPoint* pt : s.points) {
      svg += "<circle cx=\"" + fmt(sx(pt->physical_p)) + "\" cy=\"" +
             fmt(sy(y_value(*pt))) + "\" r=\"3.4\" fill=\"" + color +
             "\"/>\n";
      if (pt->ler <= 0.0)  // zero-failure stand-in: mark as an upper bound
        svg += "<text x=\"" + fmt(sx(pt->physical_p)) + "\" y=\"" +
               fmt(sy(y_value(*pt)) - 7) +
               "\" text-anchor=\"middle\" font-size=\"11\" fill=\"" + color +
               "\">&lt;</text>\n";
    }
  }

  // Legend, config order, top-right corner of the frame.
  {
    const double lw = 170, lh = 22.0 * series.size() + 10;
    const double lx = ml + pw - lw - 12, ly = mt + 12;
    svg += "<rect x=\"" + fmt(lx) + "\" y=\"" + fmt(ly) + "\" width=\"" +
           fmt(lw) + "\" height=\"" + fmt(lh) +
           "\" fill=\"white\" fill-opacity=\"0.85\" stroke=\"#999999\"/>\n";
    for (std::size_t si = 0; si < series.size(); ++si) {
      const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
      const double y = ly + 22.0 * si + 16;
      svg += "<line x1=\"" + fmt(lx + 10) + "\" y1=\"" + fmt(y - 4) +
             "\" x2=\"" + fmt(lx + 38) + "\" y2=\"" + fmt(y - 4) +
             "\" stroke=\"" + color + "\" stroke-width=\"2.5\"/>\n";
      svg += "<text x=\"" + fmt(lx + 46) + "\" y=\"" + fmt(y) + "\">" +
             escape_xml(series[si].label) + "</text>\n";
    }
  }

  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace gnd
