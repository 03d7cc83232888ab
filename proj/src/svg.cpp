// SPDX-License-Identifier: Apache-2.0
#include "numlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace numlab {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 52.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string px(double v) {
  return format_double(std::round(v * 100.0) / 100.0);
}

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool stepped = false;
};

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

class Canvas {
 public:
  Canvas(Range x, Range y) : x_(x), y_(y) {}

  double map_x(double v) const {
    return kLeft + (v - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight);
  }
  double map_y(double v) const {
    return kHeight - kBottom - (v - y_.lo) / (y_.hi - y_.lo) * (kHeight - kTop - kBottom);
  }

  void open(std::string& out, const std::string& title) const {
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kWidth) +
           "\" height=\"" + px(kHeight) + "\" viewBox=\"0 0 " + px(kWidth) + " " +
           px(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty()) {
      out += "<text x=\"" + px(kWidth / 2) +
             "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"15\">" +
             title + "</text>\n";
    }
    // Frame
    out += "<rect x=\"" + px(kLeft) + "\" y=\"" + px(kTop) + "\" width=\"" +
           px(kWidth - kLeft - kRight) + "\" height=\"" + px(kHeight - kTop - kBottom) +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }

  void x_tick(std::string& out, double v, const std::string& label) const {
    const double x = map_x(v);
    out += "<line x1=\"" + px(x) + "\" y1=\"" + px(kHeight - kBottom) + "\" x2=\"" + px(x) +
           "\" y2=\"" + px(kHeight - kBottom + 5) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + px(x) + "\" y=\"" + px(kHeight - kBottom + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + label +
           "</text>\n";
  }

  void y_tick(std::string& out, double v, const std::string& label) const {
    const double y = map_y(v);
    out += "<line x1=\"" + px(kLeft - 5) + "\" y1=\"" + px(y) + "\" x2=\"" + px(kLeft) +
           "\" y2=\"" + px(y) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + px(kLeft - 8) + "\" y=\"" + px(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + label +
           "</text>\n";
  }

  void axis_labels(std::string& out, const std::string& x_label,
                   const std::string& y_label) const {
    out += "<text x=\"" + px((kLeft + kWidth - kRight) / 2) + "\" y=\"" +
           px(kHeight - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           x_label + "</text>\n";
    out += "<text x=\"16\" y=\"" + px((kTop + kHeight - kBottom) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 16 " +
           px((kTop + kHeight - kBottom) / 2) + ")\">" + y_label + "</text>\n";
  }

  void polyline(std::string& out, const Series& series, const char* color) const {
    if (series.points.empty()) return;
    out += "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"1.6\" points=\"";
    bool first = true;
    double prev_y = 0.0;
    for (const auto& [vx, vy] : series.points) {
      const double x = map_x(vx);
      const double y = map_y(vy);
      if (series.stepped && !first) {
        out += " " + px(x) + "," + px(prev_y);
      }
      if (!first) out += ' ';
      out += px(x) + "," + px(y);
      prev_y = y;
      first = false;
    }
    out += "\"/>\n";
  }

  void legend(std::string& out, const std::vector<Series>& series) const {
    double y = kTop + 14.0;
    const double x = kWidth - kRight - 150.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
      const char* color = kPalette[i % std::size(kPalette)];
      out += "<line x1=\"" + px(x) + "\" y1=\"" + px(y - 4) + "\" x2=\"" + px(x + 22) +
             "\" y2=\"" + px(y - 4) + "\" stroke=\"";
      out += color;
      out += "\" stroke-width=\"2\"/>\n";
      out += "<text x=\"" + px(x + 28) + "\" y=\"" + px(y) +
             "\" font-family=\"sans-serif\" font-size=\"11\">" + series[i].label +
             "</text>\n";
      y += 15.0;
    }
  }

 private:
  Range x_;
  Range y_;
};

std::string column_label(const Column& column) {
  return column.name + " (" + column.unit + ")";
}

std::string exp_label(int exponent) { return "1e" + std::to_string(exponent); }

std::string render_loglog(const ExperimentTable& table, const PlotSpec& spec) {
  const std::size_t xcol = table.column_index(spec.x_column);
  if (spec.y_columns.empty()) {
    throw std::invalid_argument("loglog plot needs at least one y column");
  }
  std::vector<Series> series;
  Range x{1e300, -1e300};
  Range y{1e300, -1e300};
  for (const auto& name : spec.y_columns) {
    const std::size_t ycol = table.column_index(name);
    Series s;
    s.label = name;
    for (std::size_t r = 0; r < table.rows().size(); ++r) {
      const double vx = table.number_at(r, xcol);
      const double vy = table.number_at(r, ycol);
      if (!(vx > 0.0) || !(vy > 0.0) || !std::isfinite(vx) || !std::isfinite(vy)) continue;
      const double lx = std::log10(vx);
      const double ly = std::log10(vy);
      s.points.emplace_back(lx, ly);
      x.lo = std::min(x.lo, lx);
      x.hi = std::max(x.hi, lx);
      y.lo = std::min(y.lo, ly);
      y.hi = std::max(y.hi, ly);
    }
    series.push_back(std::move(s));
  }
  bool any = false;
  for (const auto& s : series) any = any || !s.points.empty();
  if (!any) throw std::invalid_argument("loglog plot has no positive data points");
  if (x.hi <= x.lo) { x.lo -= 0.5; x.hi += 0.5; }
  if (y.hi <= y.lo) { y.lo -= 0.5; y.hi += 0.5; }

  std::string out;
  Canvas canvas(x, y);
  canvas.open(out, spec.title);
  const int x_first = static_cast<int>(std::ceil(x.lo - 1e-9));
  const int x_last = static_cast<int>(std::floor(x.hi + 1e-9));
  const int x_stride = std::max(1, (x_last - x_first) / 10);
  for (int e = x_first; e <= x_last; e += x_stride) canvas.x_tick(out, e, exp_label(e));
  const int y_first = static_cast<int>(std::ceil(y.lo - 1e-9));
  const int y_last = static_cast<int>(std::floor(y.hi + 1e-9));
  const int y_stride = std::max(1, (y_last - y_first) / 8);
  for (int e = y_first; e <= y_last; e += y_stride) canvas.y_tick(out, e, exp_label(e));
  canvas.axis_labels(out, column_label(table.columns()[xcol]),
                     spec.y_columns.size() == 1 ? spec.y_columns.front() : "value");
  for (std::size_t i = 0; i < series.size(); ++i) {
    canvas.polyline(out, series[i], kPalette[i % std::size(kPalette)]);
  }
  canvas.legend(out, series);
  out += "</svg>\n";
  return out;
}

std::string render_histogram(const ExperimentTable& table, const PlotSpec& spec) {
  const std::size_t xcol = table.column_index(spec.x_column);
  const std::size_t vcol = table.column_index(spec.value_column);
  const bool with_overlay = !spec.overlay_column.empty();
  const std::size_t ocol = with_overlay ? table.column_index(spec.overlay_column) : 0;
  const std::size_t gcol = table.column_index(spec.group_column);

  // Split rows by the group column, keeping first-appearance order.
  std::vector<std::string> groups;
  auto group_key = [&](std::size_t r) {
    const auto& cell = table.rows()[r][gcol];
    if (const double* num = std::get_if<double>(&cell)) return format_double(*num);
    return std::get<std::string>(cell);
  };
  for (std::size_t r = 0; r < table.rows().size(); ++r) {
    const std::string key = group_key(r);
    if (std::find(groups.begin(), groups.end(), key) == groups.end()) groups.push_back(key);
  }

  std::vector<Series> series;
  Range x{1e300, -1e300};
  Range y{0.0, -1e300};
  for (const auto& group : groups) {
    Series stepped;
    stepped.label = spec.group_column + "=" + group;
    stepped.stepped = true;
    Series smooth;
    smooth.label = stepped.label + " (analytic)";
    for (std::size_t r = 0; r < table.rows().size(); ++r) {
      if (group_key(r) != group) continue;
      const double vx = table.number_at(r, xcol);
      const double vv = table.number_at(r, vcol);
      x.lo = std::min(x.lo, vx);
      x.hi = std::max(x.hi, vx);
      if (std::isfinite(vv)) {
        stepped.points.emplace_back(vx, vv);
        y.hi = std::max(y.hi, vv);
      }
      if (with_overlay) {
        const double vo = table.number_at(r, ocol);
        if (std::isfinite(vo)) {
          smooth.points.emplace_back(vx, vo);
          y.hi = std::max(y.hi, vo);
        }
      }
    }
    series.push_back(std::move(stepped));
    if (with_overlay && !smooth.points.empty()) series.push_back(std::move(smooth));
  }
  if (!(y.hi > 0.0) || !(x.hi > x.lo)) {
    throw std::invalid_argument("histogram plot has no drawable data");
  }
  y.hi *= 1.05;

  std::string out;
  Canvas canvas(x, y);
  canvas.open(out, spec.title);
  for (int i = 0; i <= 4; ++i) {
    const double v = x.lo + (x.hi - x.lo) * i / 4.0;
    canvas.x_tick(out, v, format_double(std::round(v * 1000.0) / 1000.0));
  }
  for (int i = 0; i <= 4; ++i) {
    const double v = y.lo + (y.hi - y.lo) * i / 4.0;
    canvas.y_tick(out, v, format_double(std::round(v * 1000.0) / 1000.0));
  }
  canvas.axis_labels(out, column_label(table.columns()[xcol]),
                     column_label(table.columns()[vcol]));
  for (std::size_t i = 0; i < series.size(); ++i) {
    canvas.polyline(out, series[i], kPalette[i % std::size(kPalette)]);
  }
  canvas.legend(out, series);
  out += "</svg>\n";
  return out;
}

}  // namespace

std::string render_svg(const ExperimentTable& table, const PlotSpec& spec) {
  if (table.rows().empty()) {
    throw std::invalid_argument("cannot plot a table with no rows");
  }
  switch (spec.kind) {
    case PlotKind::loglog_lines: return render_loglog(table, spec);
    case PlotKind::histogram_overlay: return render_histogram(table, spec);
  }
  throw std::invalid_argument("unknown plot kind");
}

}  // namespace numlab
