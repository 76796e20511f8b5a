#include "lowdeg/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "lowdeg/error.hpp"

namespace lowdeg {

namespace {

constexpr double kWidth = 800, kHeight = 500;
constexpr double kLeft = 70, kRight = 780, kTop = 30, kBottom = 440;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string emit_svg(const std::vector<SweepRow>& rows) {
  std::map<int, std::vector<const SweepRow*>> series;
  for (const auto& r : rows)
    if (r.success_rate) series[r.p].push_back(&r);
  if (series.empty()) fail(ErrorCode::InvalidArgument, "plot: no sweep cells with a success rate");

  int x_max = 1;
  for (const auto& [p, cells] : series) {
    x_max = std::max(x_max, p);
    for (const auto* c : cells) x_max = std::max(x_max, c->d);
  }
  auto sx = [&](double d) { return kLeft + (kRight - kLeft) * d / x_max; };
  auto sy = [&](double rate) { return kBottom - (kBottom - kTop) * rate; };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + fixed(kWidth) + "\" height=\"" + fixed(kHeight) + "\" fill=\"#ffffff\"/>\n";
  s += "<g class=\"axes\" stroke=\"#000000\" stroke-width=\"1\" fill=\"none\">\n";
  s += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(kBottom) + "\" x2=\"" + fixed(kRight) + "\" y2=\"" +
       fixed(kBottom) + "\"/>\n";
  s += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(kBottom) + "\" x2=\"" + fixed(kLeft) + "\" y2=\"" + fixed(kTop) +
       "\"/>\n";
  s += "</g>\n";

  s += "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#000000\">\n";
  const int step = std::max(1, (x_max + 15) / 16);
  for (int d = 0; d <= x_max; d += step) {
    s += "<line x1=\"" + fixed(sx(d)) + "\" y1=\"" + fixed(kBottom) + "\" x2=\"" + fixed(sx(d)) + "\" y2=\"" +
         fixed(kBottom + 5) + "\" stroke=\"#000000\"/>\n";
    s += "<text x=\"" + fixed(sx(d)) + "\" y=\"" + fixed(kBottom + 18) + "\" text-anchor=\"middle\">" +
         std::to_string(d) + "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double rate = k / 4.0;
    s += "<line x1=\"" + fixed(kLeft - 5) + "\" y1=\"" + fixed(sy(rate)) + "\" x2=\"" + fixed(kLeft) + "\" y2=\"" +
         fixed(sy(rate)) + "\" stroke=\"#000000\"/>\n";
    s += "<text x=\"" + fixed(kLeft - 8) + "\" y=\"" + fixed(sy(rate) + 4) + "\" text-anchor=\"end\">" + fixed(rate) +
         "</text>\n";
  }
  s += "<text x=\"" + fixed((kLeft + kRight) / 2) + "\" y=\"" + fixed(kBottom + 40) +
       "\" text-anchor=\"middle\">degree cutoff d</text>\n";
  s += "<text x=\"20\" y=\"" + fixed((kTop + kBottom) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
       fixed((kTop + kBottom) / 2) + ")\">certified fraction</text>\n";
  s += "</g>\n";

  std::size_t idx = 0;
  for (const auto& [p, cells] : series) {
    const std::string color = kPalette[idx % std::size(kPalette)];
    auto sorted = cells;
    std::sort(sorted.begin(), sorted.end(), [](const SweepRow* a, const SweepRow* b) { return a->d < b->d; });
    const SweepRow& theory = *sorted.front();
    s += "<g class=\"series\" data-p=\"" + std::to_string(p) + "\">\n";

    const std::pair<const char*, double> markers[] = {
        {"lower", theory.d_lower}, {"half", p / 2.0}, {"upper", theory.d_upper}};
    for (const auto& [name, at] : markers) {
      if (!(at >= 0 && at <= x_max)) continue;
      s += std::string("<line class=\"marker ") + name + "\" x1=\"" + fixed(sx(at)) + "\" y1=\"" + fixed(kTop) +
           "\" x2=\"" + fixed(sx(at)) + "\" y2=\"" + fixed(kBottom) + "\" stroke=\"" + color +
           "\" stroke-opacity=\"0.6\" stroke-dasharray=\"" + (std::string(name) == "half" ? "2,3" : "6,4") + "\"/>\n";
    }
    if (sorted.size() > 1) {
      s += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i) s += ' ';
        s += fixed(sx(sorted[i]->d)) + ',' + fixed(sy(*sorted[i]->success_rate));
      }
      s += "\"/>\n";
    }
    for (const auto* c : sorted)
      s += "<circle cx=\"" + fixed(sx(c->d)) + "\" cy=\"" + fixed(sy(*c->success_rate)) + "\" r=\"3\" fill=\"" + color +
           "\"/>\n";
    const double ly = kTop + 10 + 16.0 * static_cast<double>(idx);
    s += "<text x=\"" + fixed(kRight - 60) + "\" y=\"" + fixed(ly + 4) +
         "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + color + "\">p = " + std::to_string(p) + "</text>\n";
    s += "</g>\n";
    ++idx;
  }
  s += "</svg>\n";
  return s;
}

}  // namespace lowdeg
