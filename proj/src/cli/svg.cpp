#include "rdyn/cli/svg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "rdyn/cli/config.hpp"
#include "rdyn/cli/serialize.hpp"

namespace rdyn::cli {

namespace {

constexpr std::array<const char*, 10> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

double percentile(std::vector<double> values, double pct) {
  std::sort(values.begin(), values.end());
  const double pos = pct / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

std::pair<double, double> padded(double lo, double hi) {
  const double pad = std::max(0.05 * (hi - lo), 1e-9 * std::max({1.0, std::abs(lo), std::abs(hi)}));
  return {lo - pad, hi + pad};
}

std::string fixed2(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 2);
  return std::string(buf, ptr);
}

double to_double(const std::string& text) {
  double value = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), value);
  return value;
}

std::string short_num(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 4);
  return std::string(buf, ptr);
}

constexpr double kPlotSpan = kSvgSize - 2 * kSvgMargin;

}  // namespace

SvgView percentile_view(const std::vector<SvgSeries>& series) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& s : series) {
    for (Complex z : s.points) {
      if (!is_finite(z)) continue;
      xs.push_back(z.real());
      ys.push_back(z.imag());
    }
  }
  if (xs.empty()) return {};
  SvgView v;
  std::tie(v.x_min, v.x_max) = padded(percentile(xs, kSvgLowPercentile), percentile(xs, kSvgHighPercentile));
  std::tie(v.y_min, v.y_max) = padded(percentile(ys, kSvgLowPercentile), percentile(ys, kSvgHighPercentile));
  return v;
}

std::string render_scatter_svg(const std::vector<SvgSeries>& series, const std::string& title) {
  const SvgView v = percentile_view(series);
  const auto px = [&](double x) { return kSvgMargin + (x - v.x_min) / (v.x_max - v.x_min) * kPlotSpan; };
  const auto py = [&](double y) { return kSvgSize - kSvgMargin - (y - v.y_min) / (v.y_max - v.y_min) * kPlotSpan; };

  json meta = {{"x_min", v.x_min},
               {"x_max", v.x_max},
               {"y_min", v.y_min},
               {"y_max", v.y_max},
               {"size", kSvgSize},
               {"margin", kSvgMargin},
               {"axis_percentiles", json::array({kSvgLowPercentile, kSvgHighPercentile})},
               {"padding_fraction", 0.05},
               {"series", series.size()}};

  std::ostringstream out;
  const std::string lo = std::to_string(kSvgMargin);
  const std::string hi = std::to_string(kSvgSize - kSvgMargin);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSvgSize << "\" height=\""
      << kSvgSize << "\" viewBox=\"0 0 " << kSvgSize << ' ' << kSvgSize << "\">\n"
      << "<metadata>" << meta.dump() << "</metadata>\n"
      << "<defs><clipPath id=\"plot\"><rect x=\"" << lo << "\" y=\"" << lo << "\" width=\"" << kPlotSpan
      << "\" height=\"" << kPlotSpan << "\"/></clipPath></defs>\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kSvgSize << "\" height=\"" << kSvgSize << "\" fill=\"#ffffff\"/>\n"
      << "<rect x=\"" << lo << "\" y=\"" << lo << "\" width=\"" << kPlotSpan << "\" height=\"" << kPlotSpan
      << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n"
      << "<text x=\"" << kSvgSize / 2 << "\" y=\"30\" font-family=\"sans-serif\" font-size=\"16\" "
         "text-anchor=\"middle\">"
      << title << "</text>\n";

  // Axes through the origin when it is inside the window.
  if (v.x_min < 0.0 && v.x_max > 0.0) {
    out << "<line x1=\"" << fixed2(px(0.0)) << "\" y1=\"" << lo << "\" x2=\"" << fixed2(px(0.0)) << "\" y2=\"" << hi
        << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  }
  if (v.y_min < 0.0 && v.y_max > 0.0) {
    out << "<line x1=\"" << lo << "\" y1=\"" << fixed2(py(0.0)) << "\" x2=\"" << hi << "\" y2=\"" << fixed2(py(0.0))
        << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  }
  const auto label = [&](double x, double y, const std::string& anchor, const std::string& text) {
    out << "<text x=\"" << fixed2(x) << "\" y=\"" << fixed2(y)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"" << anchor << "\">" << text << "</text>\n";
  };
  label(kSvgMargin, kSvgSize - kSvgMargin + 18, "start", short_num(v.x_min));
  label(kSvgSize - kSvgMargin, kSvgSize - kSvgMargin + 18, "end", short_num(v.x_max));
  label(kSvgSize / 2.0, kSvgSize - 15, "middle", "Re");
  label(kSvgMargin - 6, kSvgSize - kSvgMargin, "end", short_num(v.y_min));
  label(kSvgMargin - 6, kSvgMargin + 10, "end", short_num(v.y_max));
  label(20, kSvgSize / 2.0, "middle", "Im");

  out << "<g clip-path=\"url(#plot)\">\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    out << "<g id=\"series-" << s << "\" fill=\"" << kPalette[s % kPalette.size()]
        << "\" fill-opacity=\"0.6\"><title>" << series[s].label << "</title>\n";
    for (Complex z : series[s].points) {
      if (!is_finite(z)) continue;
      out << "<circle cx=\"" << fixed2(px(z.real())) << "\" cy=\"" << fixed2(py(z.imag())) << "\" r=\"1.2\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

ParsedSvg parse_scatter_svg(const std::string& svg) {
  ParsedSvg parsed;
  const auto m0 = svg.find("<metadata>");
  const auto m1 = svg.find("</metadata>");
  if (m0 == std::string::npos || m1 == std::string::npos) {
    throw Error(ErrorCode::InvalidArgument, "SVG has no metadata block");
  }
  const json meta = json::parse(svg.substr(m0 + 10, m1 - m0 - 10));
  parsed.view = {meta.at("x_min").get<double>(), meta.at("x_max").get<double>(), meta.at("y_min").get<double>(),
                 meta.at("y_max").get<double>()};
  const auto& v = parsed.view;

  static const std::regex group_re("<g id=\"series-[0-9]+\"");
  static const std::regex circle_re("<circle cx=\"([-0-9.]+)\" cy=\"([-0-9.]+)\"");
  std::istringstream lines(svg);
  std::string line;
  std::smatch m;
  while (std::getline(lines, line)) {
    if (std::regex_search(line, group_re)) {
      parsed.series.emplace_back();
    } else if (std::regex_search(line, m, circle_re) && !parsed.series.empty()) {
      const double cx = to_double(m[1].str());
      const double cy = to_double(m[2].str());
      const double x = v.x_min + (cx - kSvgMargin) / kPlotSpan * (v.x_max - v.x_min);
      const double y = v.y_min + (kSvgSize - kSvgMargin - cy) / kPlotSpan * (v.y_max - v.y_min);
      parsed.series.back().emplace_back(x, y);
    }
  }
  return parsed;
}

}  // namespace rdyn::cli
