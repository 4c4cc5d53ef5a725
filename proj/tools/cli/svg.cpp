#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace arbsim::cli {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 55;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  bool log = false;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  bool accepts(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
  double t(double v) const { return log ? std::log10(v) : v; }
  void include(double v) {
    if (!accepts(v)) return;
    lo = std::min(lo, t(v));
    hi = std::max(hi, t(v));
  }
  void finish() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12) {
      const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
      lo -= pad;
      hi += pad;
    }
    const double pad = (hi - lo) * 0.05;
    lo -= pad;
    hi += pad;
  }
  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      for (double e = std::ceil(lo); e <= hi; e += 1.0) out.push_back(std::pow(10.0, e));
      if (out.size() >= 2) return out;
      out.clear();
    }
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
      step = m * mag;
      if (span / step <= 6.0) break;
    }
    for (double v = std::ceil(lo / step) * step; v <= hi; v += step) {
      out.push_back(log ? std::pow(10.0, v) : (std::abs(v) < step * 1e-9 ? 0.0 : v));
    }
    return out;
  }
};

}  // namespace

std::string render_svg(const Plot& plot) {
  Axis ax{plot.log_x}, ay{plot.log_y};
  for (const auto& s : plot.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!ax.accepts(s.x[i]) || !ay.accepts(s.y[i])) continue;
      ax.include(s.x[i]);
      const double e = i < s.err.size() && std::isfinite(s.err[i]) ? s.err[i] : 0.0;
      ay.include(s.y[i] + e);
      ay.include(plot.log_y && s.y[i] - e <= 0.0 ? s.y[i] : s.y[i] - e);
    }
  }
  ax.finish();
  ay.finish();

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (ax.t(v) - ax.lo) / (ax.hi - ax.lo) * pw; };
  auto py = [&](double v) { return kTop + ph - (ay.t(v) - ay.lo) / (ay.hi - ay.lo) * ph; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
         fmt(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(plot.title) + "</text>\n";
  out += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(pw) +
         "\" height=\"" + fmt(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double v : ax.ticks()) {
    const double x = px(v);
    out += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kTop + ph) + "\" x2=\"" + fmt(x) + "\" y2=\"" +
           fmt(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kTop + ph + 18) + "\" text-anchor=\"middle\">" +
           tick_label(v) + "</text>\n";
  }
  for (double v : ay.ticks()) {
    const double y = py(v);
    out += "<line x1=\"" + fmt(kLeft - 5) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(kLeft) +
           "\" y2=\"" + fmt(y) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fmt(kLeft - 8) + "\" y=\"" + fmt(y + 4) + "\" text-anchor=\"end\">" +
           tick_label(v) + "</text>\n";
  }
  out += "<text x=\"" + fmt(kLeft + pw / 2) + "\" y=\"" + fmt(kHeight - 12) +
         "\" text-anchor=\"middle\">" + escape(plot.x_label) + "</text>\n";
  out += "<text transform=\"translate(16," + fmt(kTop + ph / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + escape(plot.y_label) + "</text>\n";

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const Series& s = plot.series[k];
    const std::string color = kColors[k % std::size(kColors)];
    std::string points;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!ax.accepts(s.x[i]) || !ay.accepts(s.y[i])) continue;
      const double x = px(s.x[i]), y = py(s.y[i]);
      if (s.line) {
        points += fmt(x) + "," + fmt(y) + " ";
        continue;
      }
      if (i < s.err.size() && std::isfinite(s.err[i]) && s.err[i] > 0.0) {
        const double lo = s.y[i] - s.err[i];
        const double y_lo = ay.accepts(lo) ? py(lo) : kTop + ph;
        out += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(py(s.y[i] + s.err[i])) + "\" x2=\"" +
               fmt(x) + "\" y2=\"" + fmt(y_lo) + "\" stroke=\"" + color + "\"/>\n";
      }
      out += "<circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) + "\" r=\"3\" fill=\"" + color +
             "\"/>\n";
    }
    if (s.line && !points.empty()) {
      points.pop_back();
      out += "<polyline fill=\"none\" stroke=\"" + color + "\" points=\"" + points + "\"/>\n";
    }
    const double ly = kTop + 14 + 16 * static_cast<double>(k);
    out += "<rect x=\"" + fmt(kLeft + pw - 150) + "\" y=\"" + fmt(ly - 9) +
           "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
    out += "<text x=\"" + fmt(kLeft + pw - 135) + "\" y=\"" + fmt(ly) + "\">" + escape(s.label) +
           "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace arbsim::cli
