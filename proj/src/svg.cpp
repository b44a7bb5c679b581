#include "plad/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "plad/error.hpp"

namespace plad::svg {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 64.0, kRight = 180.0, kTop = 44.0, kBottom = 52.0;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

const char* kPalette[] = {"#2563eb", "#dc2626", "#059669", "#d97706", "#7c3aed", "#0891b2"};
constexpr int kPaletteSize = 6;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
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

struct Range {
  double lo = 0.0, hi = 1.0;

  double clamp_span() {
    if (!(hi > lo)) hi = lo + 1.0;
    return hi - lo;
  }
};

/// 1/2/5 tick ladder aiming for about `target` intervals.
std::vector<double> ticks(const Range& range, int target = 5) {
  double span = range.hi - range.lo;
  double raw = span / target;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * m >= raw) {
      step = mag * m;
      break;
    }
  }
  std::vector<double> out;
  double first = std::ceil(range.lo / step) * step;
  for (double t = first; t <= range.hi + step * 1e-9; t += step) {
    if (std::abs(t) < step * 1e-9) t = 0.0;  // avoid "-0"
    out.push_back(t);
  }
  return out;
}

std::string header(const std::string& title) {
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
                  "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " +
                  num(kHeight) + "\" font-family=\"sans-serif\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(kLeft) + "\" y=\"24\" font-size=\"16\" fill=\"#111\">" +
       escape(title) + "</text>\n";
  return s;
}

std::string axes(const Range& xr, const Range& yr, const std::string& x_label,
                 const std::string& y_label, bool x_ticks) {
  std::string s;
  auto sx = [&](double v) { return kLeft + (v - xr.lo) / (xr.hi - xr.lo) * kPlotW; };
  auto sy = [&](double v) { return kTop + kPlotH - (v - yr.lo) / (yr.hi - yr.lo) * kPlotH; };

  for (double t : ticks(yr)) {
    double y = sy(t);
    s += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft + kPlotW) +
         "\" y2=\"" + num(y) + "\" stroke=\"#e5e5e5\"/>\n";
    s += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(y + 4) +
         "\" font-size=\"11\" text-anchor=\"end\" fill=\"#444\">" + num(t) + "</text>\n";
  }
  if (x_ticks) {
    for (double t : ticks(xr, 7)) {
      double x = sx(t);
      s += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop + kPlotH) + "\" x2=\"" + num(x) +
           "\" y2=\"" + num(kTop + kPlotH + 5) + "\" stroke=\"#888\"/>\n";
      s += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + kPlotH + 18) +
           "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#444\">" + num(t) + "</text>\n";
    }
  }
  s += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) +
       "\" y2=\"" + num(kTop + kPlotH) + "\" stroke=\"#888\"/>\n";
  s += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop + kPlotH) + "\" x2=\"" +
       num(kLeft + kPlotW) + "\" y2=\"" + num(kTop + kPlotH) + "\" stroke=\"#888\"/>\n";
  if (!x_label.empty())
    s += "<text x=\"" + num(kLeft + kPlotW / 2) + "\" y=\"" + num(kHeight - 10) +
         "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#222\">" + escape(x_label) +
         "</text>\n";
  if (!y_label.empty())
    s += "<text x=\"16\" y=\"" + num(kTop + kPlotH / 2) +
         "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#222\" transform=\"rotate(-90 16 " +
         num(kTop + kPlotH / 2) + ")\">" + escape(y_label) + "</text>\n";
  return s;
}

}  // namespace

std::string line_chart(const std::string& title, const std::vector<Series>& series,
                       const std::string& x_label, const std::string& y_label) {
  Range xr{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
  Range yr = xr;
  bool any = false;
  for (const Series& s : series) {
    if (s.x.size() != s.y.size()) throw InvalidArgument("series x and y lengths differ");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (std::isnan(s.y[i])) continue;
      any = true;
      xr.lo = std::min(xr.lo, s.x[i]);
      xr.hi = std::max(xr.hi, s.x[i]);
      yr.lo = std::min(yr.lo, s.y[i]);
      yr.hi = std::max(yr.hi, s.y[i]);
    }
  }
  if (!any) xr = yr = Range{0.0, 1.0};
  xr.clamp_span();
  double pad = yr.clamp_span() * 0.05;
  yr.lo -= pad;
  yr.hi += pad;

  std::string out = header(title) + axes(xr, yr, x_label, y_label, true);
  auto sx = [&](double v) { return kLeft + (v - xr.lo) / (xr.hi - xr.lo) * kPlotW; };
  auto sy = [&](double v) { return kTop + kPlotH - (v - yr.lo) / (yr.hi - yr.lo) * kPlotH; };

  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kPalette[k % kPaletteSize];
    std::string points;
    auto flush = [&]() {
      if (!points.empty())
        out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
      points.clear();
    };
    for (std::size_t i = 0; i < series[k].x.size(); ++i) {
      if (std::isnan(series[k].y[i])) {
        flush();
        continue;
      }
      if (!points.empty()) points += " ";
      points += num(sx(series[k].x[i])) + "," + num(sy(series[k].y[i]));
    }
    flush();
    double ly = kTop + 14.0 * static_cast<double>(k);
    out += "<rect x=\"" + num(kLeft + kPlotW + 12) + "\" y=\"" + num(ly) +
           "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
    out += "<text x=\"" + num(kLeft + kPlotW + 26) + "\" y=\"" + num(ly + 9) +
           "\" font-size=\"11\" fill=\"#222\">" + escape(series[k].label) + "</text>\n";
  }
  return out + "</svg>\n";
}

std::string bar_chart(const std::string& title, const std::vector<Bar>& bars,
                      const std::string& y_label) {
  Range yr{0.0, 0.0};
  for (const Bar& b : bars) {
    yr.lo = std::min(yr.lo, b.value);
    yr.hi = std::max(yr.hi, b.value);
  }
  yr.clamp_span();
  Range xr{0.0, 1.0};

  std::string out = header(title) + axes(xr, yr, "", y_label, false);
  auto sy = [&](double v) { return kTop + kPlotH - (v - yr.lo) / (yr.hi - yr.lo) * kPlotH; };

  auto n = static_cast<double>(bars.empty() ? 1 : bars.size());
  double slot = kPlotW / n;
  double bw = slot * 0.6;
  for (std::size_t i = 0; i < bars.size(); ++i) {
    double cx = kLeft + slot * (static_cast<double>(i) + 0.5);
    double y0 = sy(std::max(0.0, bars[i].value));
    double h = std::abs(sy(0.0) - sy(bars[i].value));
    out += "<rect x=\"" + num(cx - bw / 2) + "\" y=\"" + num(y0) + "\" width=\"" + num(bw) +
           "\" height=\"" + num(h) + "\" fill=\"" +
           kPalette[i % kPaletteSize] + "\"/>\n";
    out += "<text x=\"" + num(cx) + "\" y=\"" + num(kTop + kPlotH + 18) +
           "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#222\">" + escape(bars[i].label) +
           "</text>\n";
    out += "<text x=\"" + num(cx) + "\" y=\"" + num(y0 - 4) +
           "\" font-size=\"10\" text-anchor=\"middle\" fill=\"#444\">" + num(bars[i].value) +
           "</text>\n";
  }
  return out + "</svg>\n";
}

std::string box_chart(const std::string& title, const std::vector<Box>& boxes,
                      const std::string& y_label) {
  Range yr{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
  for (const Box& b : boxes) {
    yr.lo = std::min(yr.lo, b.whisker_low);
    yr.hi = std::max(yr.hi, b.whisker_high);
  }
  if (boxes.empty()) yr = Range{0.0, 1.0};
  double pad = yr.clamp_span() * 0.08;
  yr.lo -= pad;
  yr.hi += pad;
  Range xr{0.0, 1.0};

  std::string out = header(title) + axes(xr, yr, "", y_label, false);
  auto sy = [&](double v) { return kTop + kPlotH - (v - yr.lo) / (yr.hi - yr.lo) * kPlotH; };

  auto n = static_cast<double>(boxes.empty() ? 1 : boxes.size());
  double slot = kPlotW / n;
  double bw = std::min(slot * 0.5, 48.0);
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const Box& b = boxes[i];
    double cx = kLeft + slot * (static_cast<double>(i) + 0.5);
    const char* color = kPalette[i % kPaletteSize];
    out += "<line x1=\"" + num(cx) + "\" y1=\"" + num(sy(b.whisker_low)) + "\" x2=\"" + num(cx) +
           "\" y2=\"" + num(sy(b.whisker_high)) + "\" stroke=\"#555\"/>\n";
    for (double w : {b.whisker_low, b.whisker_high})
      out += "<line x1=\"" + num(cx - bw / 3) + "\" y1=\"" + num(sy(w)) + "\" x2=\"" +
             num(cx + bw / 3) + "\" y2=\"" + num(sy(w)) + "\" stroke=\"#555\"/>\n";
    out += "<rect x=\"" + num(cx - bw / 2) + "\" y=\"" + num(sy(b.q3)) + "\" width=\"" + num(bw) +
           "\" height=\"" + num(sy(b.q1) - sy(b.q3)) + "\" fill=\"" + color +
           "\" fill-opacity=\"0.35\" stroke=\"" + color + "\"/>\n";
    out += "<line x1=\"" + num(cx - bw / 2) + "\" y1=\"" + num(sy(b.median)) + "\" x2=\"" +
           num(cx + bw / 2) + "\" y2=\"" + num(sy(b.median)) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + num(cx) + "\" y=\"" + num(kTop + kPlotH + 18) +
           "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#222\">" + escape(b.label) +
           "</text>\n";
  }
  return out + "</svg>\n";
}

void save(const std::string& svg, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << svg;
  if (!out.flush()) throw IoError("failed writing " + path);
}

}  // namespace plad::svg
