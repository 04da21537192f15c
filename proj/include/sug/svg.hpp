#pragma once

#include <sug/csv.hpp>

#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sug::svg {

inline constexpr double kWidth = 960.0;
inline constexpr double kHeight = 540.0;

inline std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

inline std::string num(double v) {
  // Two decimals are plenty for coordinates and keep files diff-friendly.
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << v;
  std::string out = s.str();
  while (!out.empty() && out.back() == '0') out.pop_back();
  if (!out.empty() && out.back() == '.') out.pop_back();
  if (out == "-0") out = "0";
  return out;
}

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Self-contained SVG document on a fixed 960x540 canvas.
class Document {
 public:
  explicit Document(std::string title) : title_(std::move(title)) {}

  void rect(double x, double y, double w, double h, std::string_view fill, double opacity = 1.0,
            std::string_view stroke = "none") {
    body_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
          << "\" fill=\"" << fill << "\"";
    if (opacity < 1.0) body_ << " fill-opacity=\"" << num(opacity) << "\"";
    if (stroke != "none") body_ << " stroke=\"" << stroke << "\"";
    body_ << "/>\n";
  }

  void line(Point a, Point b, std::string_view stroke, double width = 1.0, bool dashed = false) {
    body_ << "<line x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\"" << num(b.x) << "\" y2=\"" << num(b.y)
          << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"";
    if (dashed) body_ << " stroke-dasharray=\"4 3\"";
    body_ << "/>\n";
  }

  void polyline(const std::vector<Point>& pts, std::string_view stroke, double width = 1.5) {
    if (pts.empty()) return;
    body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) body_ << ' ';
      body_ << num(pts[i].x) << ',' << num(pts[i].y);
    }
    body_ << "\"/>\n";
  }

  void circle(Point c, double r, std::string_view fill, std::string_view stroke = "none") {
    body_ << "<circle cx=\"" << num(c.x) << "\" cy=\"" << num(c.y) << "\" r=\"" << num(r) << "\" fill=\"" << fill
          << "\"";
    if (stroke != "none") body_ << " stroke=\"" << stroke << "\"";
    body_ << "/>\n";
  }

  void text(Point at, std::string_view content, std::string_view anchor = "start", std::string_view fill = "#222",
            double rotate = 0.0) {
    body_ << "<text x=\"" << num(at.x) << "\" y=\"" << num(at.y) << "\" text-anchor=\"" << anchor << "\" fill=\""
          << fill << "\"";
    if (rotate != 0.0) body_ << " transform=\"rotate(" << num(rotate) << ' ' << num(at.x) << ' ' << num(at.y) << ")\"";
    body_ << '>' << escape(content) << "</text>\n";
  }

  void write(std::ostream& out) const {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight)
        << "\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
        << "\" font-family=\"sans-serif\" font-size=\"12px\">\n"
        << "<title>" << escape(title_) << "</title>\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight) << "\" fill=\"#fff\"/>\n"
        << body_.str() << "</svg>\n";
  }

 private:
  std::string title_;
  std::ostringstream body_;
};

/// Categorical palette for series.
inline std::string_view palette(std::size_t i) {
  static constexpr std::string_view colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                                 "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return colours[i % (sizeof colours / sizeof colours[0])];
}

}  // namespace sug::svg
