#include "figure_svg.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

namespace cqed_cli {

namespace {

constexpr double kWidth = 800.0, kHeight = 520.0;
constexpr double kLeft = 70.0, kRight = 770.0, kTop = 50.0, kBottom = 460.0;
constexpr double kPi = 3.14159265358979323846;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string pi_thirds_label(int k) {
  if (k == 0) return "0";
  int g = std::gcd(k, 3);
  int numerator = k / g, denominator = 3 / g;
  std::string s = numerator == 1 ? "π" : std::to_string(numerator) + "π";
  if (denominator > 1) s += "/" + std::to_string(denominator);
  return s;
}

std::string polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                     double x0, double x1, const std::string& style) {
  std::string pts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double px = kLeft + (xs[i] - x0) / (x1 - x0) * (kRight - kLeft);
    double py = kBottom - ys[i] * (kBottom - kTop);
    pts += num(px) + "," + num(py) + " ";
  }
  if (!pts.empty()) pts.pop_back();
  return "  <polyline fill=\"none\" " + style + " points=\"" + pts + "\"/>\n";
}

}  // namespace

std::string svg_figure(const cqed::SweepSeries& series) {
  const auto& grid = series.grid();
  double x0 = grid.front(), x1 = grid.back();

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  svg += "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  svg += "  <text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\" fill=\"#1a1a1a\">collision readout probabilities</text>\n";

  // axes
  svg += "  <line x1=\"" + num(kLeft) + "\" y1=\"" + num(kBottom) + "\" x2=\"" + num(kRight) +
         "\" y2=\"" + num(kBottom) + "\" stroke=\"#1a1a1a\" stroke-width=\"1\"/>\n";
  svg += "  <line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) +
         "\" y2=\"" + num(kBottom) + "\" stroke=\"#1a1a1a\" stroke-width=\"1\"/>\n";

  // y ticks every 0.25
  for (int k = 0; k <= 4; ++k) {
    double y = kBottom - 0.25 * k * (kBottom - kTop);
    svg += "  <line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) +
           "\" y2=\"" + num(y) + "\" stroke=\"#1a1a1a\" stroke-width=\"1\"/>\n";
    char label[16];
    std::snprintf(label, sizeof label, "%.2f", 0.25 * k);
    svg += "  <text x=\"" + num(kLeft - 10) + "\" y=\"" + num(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
           "fill=\"#1a1a1a\">" + label + "</text>\n";
  }

  // x ticks at multiples of pi/3 inside the domain
  int k_min = static_cast<int>(std::ceil(x0 / (kPi / 3.0) - 1e-9));
  int k_max = static_cast<int>(std::floor(x1 / (kPi / 3.0) + 1e-9));
  for (int k = k_min; k <= k_max; ++k) {
    double xv = k * kPi / 3.0;
    double px = kLeft + (xv - x0) / (x1 - x0) * (kRight - kLeft);
    svg += "  <line x1=\"" + num(px) + "\" y1=\"" + num(kBottom) + "\" x2=\"" + num(px) +
           "\" y2=\"" + num(kBottom + 5) + "\" stroke=\"#1a1a1a\" stroke-width=\"1\"/>\n";
    svg += "  <text x=\"" + num(px) + "\" y=\"" + num(kBottom + 22) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "fill=\"#1a1a1a\">" + pi_thirds_label(k < 0 ? -k : k) + "</text>\n";
  }

  svg += "  <text x=\"420\" y=\"500\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\" fill=\"#1a1a1a\">λt</text>\n";

  svg += polyline(grid, series.column("P_eg"), x0, x1,
                  "stroke=\"#1a1a1a\" stroke-width=\"2\"");
  svg += polyline(grid, series.column("P_ge"), x0, x1,
                  "stroke=\"#1a1a1a\" stroke-width=\"2\" stroke-dasharray=\"8 4\"");
  svg += polyline(grid, series.column("P_ee"), x0, x1,
                  "stroke=\"#1a1a1a\" stroke-width=\"2\" stroke-dasharray=\"2 4\"");

  // legend
  double lx = kRight - 190, ly = kTop + 10;
  auto legend_row = [&](double y, const std::string& dash, const std::string& text) {
    std::string line = "  <line x1=\"" + num(lx) + "\" y1=\"" + num(y) + "\" x2=\"" +
                       num(lx + 40) + "\" y2=\"" + num(y) +
                       "\" stroke=\"#1a1a1a\" stroke-width=\"2\"" +
                       (dash.empty() ? "" : " stroke-dasharray=\"" + dash + "\"") + "/>\n";
    line += "  <text x=\"" + num(lx + 48) + "\" y=\"" + num(y + 4) +
            "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#1a1a1a\">" + text +
            "</text>\n";
    return line;
  };
  svg += legend_row(ly, "", "P(e,g)");
  svg += legend_row(ly + 22, "8 4", "P(g,e)");
  svg += legend_row(ly + 44, "2 4", "P(e,e) = P(g,g)");

  svg += "</svg>\n";
  return svg;
}

}  // namespace cqed_cli
