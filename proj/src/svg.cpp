#include "ftl_arena/svg.hpp"

#include <algorithm>
#include <cmath>

#include "ftl_arena/csv.hpp"

namespace ftla {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string xml_escape(const std::string& s) {
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

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", x);
  return buf;
}

std::string tick_label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

}  // namespace

void SvgChart::render(std::ostream& out) const {
  const double ml = 70, mr = 160, mt = 40, mb = 55;
  const double pw = width - ml - mr;
  const double ph = height - mt - mb;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      const double b = s.band.empty() ? 0.0 : s.band[i];
      ymin = std::min(ymin, s.y[i] - b);
      ymax = std::max(ymax, s.y[i] + b);
    }
  }
  if (!(xmin < xmax)) { xmin -= 0.5; xmax += 0.5; }
  if (!(ymin < ymax)) { ymin -= 0.5; ymax += 0.5; }
  const double ypad = 0.04 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const auto px = [&](double x) { return ml + pw * (x - xmin) / (xmax - xmin); };
  const auto py = [&](double y) { return mt + ph * (1.0 - (y - ymin) / (ymax - ymin)); };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">"
      << xml_escape(title) << "</text>\n";

  // axes
  out << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw
      << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 5.0;
    const double yv = ymin + (ymax - ymin) * i / 5.0;
    out << "<line x1=\"" << num(px(xv)) << "\" y1=\"" << mt + ph << "\" x2=\""
        << num(px(xv)) << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(px(xv)) << "\" y=\"" << mt + ph + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << tick_label(xv) << "</text>\n";
    out << "<line x1=\"" << ml - 5 << "\" y1=\"" << num(py(yv)) << "\" x2=\""
        << ml << "\" y2=\"" << num(py(yv)) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << num(py(yv) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << tick_label(yv) << "</text>\n";
  }
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << xml_escape(x_label) << "</text>\n";
  out << "<text x=\"18\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 18 "
      << mt + ph / 2 << ")\">" << xml_escape(y_label) << "</text>\n";

  // bands first so the lines stay visible
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    if (s.band.empty() || s.x.empty()) continue;
    const char* color = kPalette[si % std::size(kPalette)];
    out << "<polygon fill=\"" << color << "\" fill-opacity=\"0.15\" "
           "stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      out << num(px(s.x[i])) << "," << num(py(s.y[i] + s.band[i])) << " ";
    }
    for (std::size_t i = s.x.size(); i-- > 0;) {
      out << num(px(s.x[i])) << "," << num(py(s.y[i] - s.band[i]));
      if (i > 0) out << " ";
    }
    out << "\"/>\n";
  }
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.6\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i > 0) out << " ";
      out << num(px(s.x[i])) << "," << num(py(s.y[i]));
    }
    out << "\"/>\n";
    const double ly = mt + 16 + 18 * static_cast<double>(si);
    out << "<line x1=\"" << ml + pw + 12 << "\" y1=\"" << ly - 4 << "\" x2=\""
        << ml + pw + 34 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << ml + pw + 40 << "\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << xml_escape(s.label) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace ftla
