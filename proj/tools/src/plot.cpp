#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "ripkit/errors.hpp"

namespace ripkit::cli {

namespace {

struct Series {
  std::string name;
  std::vector<double> x, y;
};

struct Figure {
  std::string title, xlabel, ylabel;
  bool log_y = false;
  bool equal_aspect = false;
  std::vector<Series> series;
  std::vector<double> hlines;  // horizontal reference lines
};

constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string render(const Figure& f) {
  const double W = 720, H = 460, L = 80, R = 160, T = 40, B = 60;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  auto ty = [&](double y) { return f.log_y ? std::log10(std::max(y, 1e-300)) : y; };
  for (const auto& s : f.series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]) || (f.log_y && s.y[i] <= 0.0)) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  for (double h : f.hlines) {
    y0 = std::min(y0, ty(h));
    y1 = std::max(y1, ty(h));
  }
  if (!std::isfinite(x0)) throw ConfigError("plot: no finite data");
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) y1 = y0 + 1.0;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  if (f.equal_aspect) {
    const double span = std::max(x1 - x0, y1 - y0);
    const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
    x0 = cx - span / 2; x1 = cx + span / 2; y0 = cy - span / 2; y1 = cy + span / 2;
  }
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (ty(y) - y0) / (y1 - y0) * (H - T - B); };
  auto py_raw = [&](double yt) { return H - B - (yt - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << f.title << "</text>\n";
  os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double xv = x0 + (x1 - x0) * k / 5, yv = y0 + (y1 - y0) * k / 5;
    os << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << py_raw(yv) + 4 << "\" text-anchor=\"end\">"
       << (f.log_y ? "1e" + num(yv) : num(yv)) << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 16 << "\" text-anchor=\"middle\">" << f.xlabel << "</text>\n";
  os << "<text transform=\"translate(18," << (T + H - B) / 2 << ") rotate(-90)\" text-anchor=\"middle\">" << f.ylabel
     << "</text>\n";
  for (double h : f.hlines)
    os << "<line x1=\"" << L << "\" x2=\"" << W - R << "\" y1=\"" << py(h) << "\" y2=\"" << py(h)
       << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
  for (std::size_t s = 0; s < f.series.size(); ++s) {
    const char* color = kColors[s % std::size(kColors)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    const Series& ser = f.series[s];
    for (std::size_t i = 0; i < ser.x.size(); ++i) {
      if (!std::isfinite(ser.y[i]) || (f.log_y && ser.y[i] <= 0.0)) continue;
      os << num(px(ser.x[i])) << ',' << num(py(ser.y[i])) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << W - R + 10 << "\" y=\"" << T + 16 * (s + 1) << "\" fill=\"" << color << "\">" << ser.name
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string text(const Cell& c) { return format_cell(c); }

Figure rates_figure(const Table& t) {
  Figure f{"omega_zz vs drive detuning", "Delta_cd (MHz)", "omega_zz (MHz)", false, false, {}, {}};
  const auto d = t.numbers("delta_cd_mhz"), z = t.numbers("omega_zz_mhz");
  const int mc = t.column("model");
  std::map<std::string, Series> by;
  std::vector<std::string> order;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const std::string m = mc >= 0 ? text(t.rows[i][static_cast<std::size_t>(mc)]) : "omega_zz";
    if (!by.count(m)) order.push_back(m);
    by[m].name = m;
    by[m].x.push_back(d[i]);
    by[m].y.push_back(z[i]);
  }
  for (const auto& m : order) f.series.push_back(by[m]);
  return f;
}

Figure leakage_figure(const Table& t) {
  // first numeric column that is not a leakage quantity is the x axis
  static const std::vector<std::string> leak{"total", "resonator", "qubit", "shared", "norm_drift", "top_photon"};
  std::string xcol;
  for (std::size_t c = 0; c < t.columns.size() && xcol.empty(); ++c) {
    if (std::find(leak.begin(), leak.end(), t.columns[c]) != leak.end()) continue;
    if (!t.rows.empty() && !std::holds_alternative<std::string>(t.rows[0][c])) xcol = t.columns[c];
  }
  if (xcol.empty()) throw ConfigError("plot: leakage table has no numeric axis column");
  Figure f{"leakage", xcol, "leakage", true, false, {}, {1e-5}};
  const auto x = t.numbers(xcol);
  for (const std::string c : {"total", "resonator", "qubit"}) {
    if (t.column(c) < 0) continue;
    f.series.push_back({c, x, t.numbers(c)});
  }
  return f;
}

Figure response_figure(const Table& t) {
  Figure f{"resonator phase space", "Re eta", "Im eta", false, true, {}, {}};
  f.series.push_back({"eta", t.numbers("re_eta"), t.numbers("im_eta")});
  return f;
}

}  // namespace

std::string detect_plot_kind(const Table& t) {
  if (t.column("omega_zz_mhz") >= 0 && t.column("delta_cd_mhz") >= 0) return "rates";
  if (t.column("total") >= 0 && t.column("qubit") >= 0) return "leakage";
  if (t.column("re_eta") >= 0 && t.column("im_eta") >= 0) return "response";
  throw ConfigError("plot: unrecognized CSV schema in " + t.name);
}

std::filesystem::path emit_plot(const Table& t, const std::string& kind, const std::filesystem::path& out) {
  const std::string k = kind == "auto" ? detect_plot_kind(t) : kind;
  Figure f;
  if (k == "rates") f = rates_figure(t);
  else if (k == "leakage") f = leakage_figure(t);
  else if (k == "response") f = response_figure(t);
  else throw ConfigError("plot: unknown kind '" + kind + "'");
  std::filesystem::path path = out;
  if (path.extension() != ".svg") path /= t.name + "_" + k + ".svg";
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw ConfigError("plot: cannot write " + path.string());
  os << render(f);
  return path;
}

}  // namespace ripkit::cli
