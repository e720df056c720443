#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <tuple>

#include "mrsearch/error.hpp"
#include "mrsearch/harness.hpp"

namespace mrsearch {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 200.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

bool plottable(const SummaryRow& r) { return r.feasible && r.trials > 0 && std::isfinite(r.mean_steps); }

std::string series_name(const SummaryRow& r) {
  return r.instance + " " + std::string(to_string(r.strategy)) + " " + std::string(to_string(r.intruder));
}

struct Frame {
  double xmin, xmax, ymin, ymax;
  double px(double x) const {
    const double span = xmax > xmin ? xmax - xmin : 1.0;
    return kLeft + (x - xmin) / span * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    const double span = ymax > ymin ? ymax - ymin : 1.0;
    return kHeight - kBottom - (y - ymin) / span * (kHeight - kTop - kBottom);
  }
};

void axes(std::string& out, const Frame& f, const std::string& xlabel, bool x_ticks) {
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  out += "<line class=\"axis\" x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x1) +
         "\" y2=\"" + num(y0) + "\" stroke=\"black\"/>\n";
  out += "<line class=\"axis\" x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x0) +
         "\" y2=\"" + num(y1) + "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double y = f.ymin + (f.ymax - f.ymin) * i / 4.0;
    out += "<text x=\"" + num(x0 - 6) + "\" y=\"" + num(f.py(y) + 4) +
           "\" font-size=\"11\" text-anchor=\"end\">" + num(y) + "</text>\n";
    if (x_ticks) {
      const double x = f.xmin + (f.xmax - f.xmin) * i / 4.0;
      out += "<text x=\"" + num(f.px(x)) + "\" y=\"" + num(y0 + 16) +
             "\" font-size=\"11\" text-anchor=\"middle\">" + num(x) + "</text>\n";
    }
  }
  out += "<text x=\"" + num((x0 + x1) / 2) + "\" y=\"" + num(kHeight - 10) +
         "\" font-size=\"12\" text-anchor=\"middle\">" + escape(xlabel) + "</text>\n";
  out += "<text x=\"16\" y=\"" + num((y0 + y1) / 2) + "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         num((y0 + y1) / 2) + ")\">mean steps to capture</text>\n";
}

void legend(std::string& out, std::size_t i, const std::string& label) {
  const double y = kTop + 16.0 * static_cast<double>(i);
  const double x = kWidth - kRight + 12;
  out += "<rect x=\"" + num(x) + "\" y=\"" + num(y - 9) + "\" width=\"10\" height=\"10\" fill=\"" +
         kPalette[i % std::size(kPalette)] + "\"/>\n";
  out += "<text class=\"legend\" x=\"" + num(x + 14) + "\" y=\"" + num(y) + "\" font-size=\"11\">" +
         escape(label) + "</text>\n";
}

}  // namespace

PlotKind parse_plot_kind(std::string_view name) {
  if (name == "line") return PlotKind::kLine;
  if (name == "bar") return PlotKind::kBar;
  throw Error(ErrorCode::kInvalidArgument, "unknown plot kind '" + std::string(name) + "'");
}

std::string render_svg(const std::vector<SummaryRow>& rows, PlotKind kind, const std::string& title) {
  std::vector<SummaryRow> data;
  for (const SummaryRow& r : rows) {
    if (plottable(r)) data.push_back(r);
  }
  if (data.empty()) throw Error(ErrorCode::kEmptyInput, "no plottable rows");

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
                    num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    out += "<text x=\"" + num(kWidth / 2) + "\" y=\"22\" font-size=\"15\" text-anchor=\"middle\">" +
           escape(title) + "</text>\n";
  }

  double ymax = 0.0;
  for (const SummaryRow& r : data) {
    ymax = std::max(ymax, r.mean_steps + (std::isfinite(r.ci95) ? r.ci95 : 0.0));
  }
  if (ymax <= 0.0) ymax = 1.0;

  if (kind == PlotKind::kLine) {
    // Series keyed by first appearance so colours follow the CSV order.
    std::vector<std::string> order;
    std::map<std::string, std::vector<const SummaryRow*>> series;
    double xmin = data.front().k, xmax = data.front().k;
    for (const SummaryRow& r : data) {
      const std::string key = series_name(r);
      if (!series.count(key)) order.push_back(key);
      series[key].push_back(&r);
      xmin = std::min<double>(xmin, r.k);
      xmax = std::max<double>(xmax, r.k);
    }
    const Frame f{xmin, xmax, 0.0, ymax};
    axes(out, f, "robots (k)", true);
    for (std::size_t i = 0; i < order.size(); ++i) {
      auto pts = series[order[i]];
      std::stable_sort(pts.begin(), pts.end(), [](const SummaryRow* a, const SummaryRow* b) { return a->k < b->k; });
      const char* colour = kPalette[i % std::size(kPalette)];
      std::string upper, lower, line;
      for (const SummaryRow* r : pts) {
        const double ci = std::isfinite(r->ci95) ? r->ci95 : 0.0;
        upper += num(f.px(r->k)) + "," + num(f.py(r->mean_steps + ci)) + " ";
        line += num(f.px(r->k)) + "," + num(f.py(r->mean_steps)) + " ";
      }
      for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        const double ci = std::isfinite((*it)->ci95) ? (*it)->ci95 : 0.0;
        lower += num(f.px((*it)->k)) + "," + num(f.py(std::max(0.0, (*it)->mean_steps - ci))) + " ";
      }
      out += "<polygon class=\"band\" points=\"" + upper + lower + "\" fill=\"" + colour +
             "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
      out += "<polyline class=\"series\" points=\"" + line + "\" fill=\"none\" stroke=\"" + colour +
             "\" stroke-width=\"2\"/>\n";
      legend(out, i, order[i]);
    }
  } else {
    // Bars grouped by instance, coloured by strategy/intruder.
    std::vector<std::string> groups, labels;
    for (const SummaryRow& r : data) {
      if (std::find(groups.begin(), groups.end(), r.instance) == groups.end()) groups.push_back(r.instance);
      const std::string label = std::string(to_string(r.strategy)) + " " + std::string(to_string(r.intruder)) +
                                " k=" + std::to_string(r.k);
      if (std::find(labels.begin(), labels.end(), label) == labels.end()) labels.push_back(label);
    }
    const Frame f{0.0, static_cast<double>(groups.size()), 0.0, ymax};
    axes(out, f, "instance", false);
    const double group_w = (kWidth - kLeft - kRight) / static_cast<double>(groups.size());
    const double bar_w = group_w * 0.8 / static_cast<double>(labels.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
      out += "<text x=\"" + num(kLeft + group_w * (g + 0.5)) + "\" y=\"" + num(kHeight - kBottom + 16) +
             "\" font-size=\"11\" text-anchor=\"middle\">" + escape(groups[g]) + "</text>\n";
    }
    for (const SummaryRow& r : data) {
      const auto g = static_cast<std::size_t>(std::find(groups.begin(), groups.end(), r.instance) - groups.begin());
      const std::string label = std::string(to_string(r.strategy)) + " " + std::string(to_string(r.intruder)) +
                                " k=" + std::to_string(r.k);
      const auto l = static_cast<std::size_t>(std::find(labels.begin(), labels.end(), label) - labels.begin());
      const double x = kLeft + group_w * g + group_w * 0.1 + bar_w * l;
      const double y = f.py(r.mean_steps);
      out += "<rect class=\"bar\" x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(bar_w) +
             "\" height=\"" + num(f.py(0.0) - y) + "\" fill=\"" + kPalette[l % std::size(kPalette)] + "\"/>\n";
      if (std::isfinite(r.ci95) && r.ci95 > 0.0) {
        const double cx = x + bar_w / 2;
        out += "<line class=\"ci\" x1=\"" + num(cx) + "\" y1=\"" + num(f.py(r.mean_steps + r.ci95)) + "\" x2=\"" +
               num(cx) + "\" y2=\"" + num(f.py(std::max(0.0, r.mean_steps - r.ci95))) + "\" stroke=\"black\"/>\n";
      }
    }
    for (std::size_t l = 0; l < labels.size(); ++l) legend(out, l, labels[l]);
  }
  out += "</svg>\n";
  return out;
}

void emit_svg(const std::vector<SummaryRow>& rows, PlotKind kind, const std::string& path, const std::string& title) {
  const std::string svg = render_svg(rows, kind, title);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path);
  out << svg;
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path);
}

}  // namespace mrsearch
