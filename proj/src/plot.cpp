#include "selectra/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "selectra/errors.hpp"

namespace selectra {

namespace {

constexpr double kWidth = 640, kHeight = 400;
constexpr double kLeft = 60, kRight = 20, kTop = 20, kBottom = 50;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

struct Range {
  double lo = 0, hi = 1;
  bool seen = false;
  void add(double v) {
    if (!seen) {
      lo = hi = v;
      seen = true;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  void pad() {
    if (!seen) {
      lo = 0;
      hi = 1;
    }
    const double span = hi - lo;
    const double p = span > 0 ? 0.1 * span : 1.0;
    lo -= p;
    hi += p;
  }
};

struct Frame {
  Range x, y;
  double px(double v) const { return kLeft + (v - x.lo) / (x.hi - x.lo) * (kWidth - kLeft - kRight); }
  double py(double v) const { return kHeight - kBottom - (v - y.lo) / (y.hi - y.lo) * (kHeight - kTop - kBottom); }
  double clip_y(const ExtRational& v) const {
    if (v.is_pos_inf()) return kTop;
    if (v.is_neg_inf()) return kHeight - kBottom;
    return py(v.value().get_d());
  }
};

std::string colour(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(40 + 200 * t), b = static_cast<int>(240 - 200 * t);
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x50%02x", r, b);
  return buf;
}

void header(std::ostringstream& os) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
  os << "<rect class=\"frame\" x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\""
     << num(kWidth - kLeft - kRight) << "\" height=\"" << num(kHeight - kTop - kBottom)
     << "\" fill=\"none\" stroke=\"#999\"/>\n";
}

void axis_labels(std::ostringstream& os, const Frame& f) {
  os << "<g class=\"axes\" font-size=\"11\" font-family=\"monospace\">\n";
  os << "<text x=\"4\" y=\"" << num(f.py(f.y.hi) + 4) << "\">" << num(f.y.hi) << "</text>\n";
  os << "<text x=\"4\" y=\"" << num(f.py(f.y.lo) + 4) << "\">" << num(f.y.lo) << "</text>\n";
  os << "<text x=\"" << num(f.px(f.x.lo)) << "\" y=\"" << num(kHeight - 8) << "\">" << num(f.x.lo) << "</text>\n";
  os << "<text x=\"" << num(f.px(f.x.hi) - 30) << "\" y=\"" << num(kHeight - 8) << "\">" << num(f.x.hi)
     << "</text>\n";
  os << "</g>\n";
}

std::string svg_1d(const PlotData& d) {
  const auto& k = *d.complex;
  Frame f;
  for (const auto& p : k.vertices()) f.x.add(p[0].get_d());
  for (const auto* field : {&d.lower, &d.upper}) {
    if (!*field) continue;
    for (const auto& v : (*field)->values) {
      if (v.is_finite()) f.y.add(v.value().get_d());
    }
  }
  if (d.curve) {
    for (const auto& v : d.curve->values()) f.y.add(v[0].get_d());
  }
  if (f.x.hi == f.x.lo) {
    f.x.lo -= 1;
    f.x.hi += 1;
  }
  f.y.pad();
  std::ostringstream os;
  header(os);
  if (d.lower && d.upper) {
    os << "<g class=\"bands\" fill=\"#4a7\" stroke=\"#4a7\">\n";
    for (CellId c = 0; c < k.num_cells(); ++c) {
      const double top = f.clip_y((*d.upper)[c]), bottom = f.clip_y((*d.lower)[c]);
      const auto& cell = k.cell(c);
      if (cell.size() == 1) {
        const double x = f.px(k.vertex(cell[0])[0].get_d());
        os << "<line x1=\"" << num(x) << "\" y1=\"" << num(bottom) << "\" x2=\"" << num(x) << "\" y2=\"" << num(top)
           << "\" stroke-width=\"3\"/>\n";
      } else {
        double a = f.px(k.vertex(cell[0])[0].get_d()), b = f.px(k.vertex(cell[1])[0].get_d());
        if (a > b) std::swap(a, b);
        os << "<rect x=\"" << num(a) << "\" y=\"" << num(top) << "\" width=\"" << num(b - a) << "\" height=\""
           << num(bottom - top) << "\" fill-opacity=\"0.25\" stroke=\"none\"/>\n";
      }
    }
    os << "</g>\n";
  }
  const double base = kHeight - kBottom + 15;
  os << "<g class=\"complex\" stroke=\"#333\" fill=\"#333\">\n";
  for (CellId c = 0; c < k.num_cells(); ++c) {
    const auto& cell = k.cell(c);
    if (cell.size() == 2) {
      os << "<line x1=\"" << num(f.px(k.vertex(cell[0])[0].get_d())) << "\" y1=\"" << num(base) << "\" x2=\""
         << num(f.px(k.vertex(cell[1])[0].get_d())) << "\" y2=\"" << num(base) << "\"/>\n";
    }
  }
  for (VertexId v = 0; v < k.num_vertices(); ++v) {
    os << "<circle cx=\"" << num(f.px(k.vertex(v)[0].get_d())) << "\" cy=\"" << num(base) << "\" r=\"3\"/>\n";
  }
  os << "</g>\n";
  if (d.curve) {
    const auto& fine = *d.curve->complex();
    os << "<g class=\"curve\" stroke=\"#c33\" stroke-width=\"2\" fill=\"#c33\">\n";
    for (CellId c = 0; c < fine.num_cells(); ++c) {
      const auto& cell = fine.cell(c);
      if (cell.size() != 2) continue;
      os << "<line x1=\"" << num(f.px(fine.vertex(cell[0])[0].get_d())) << "\" y1=\""
         << num(f.py(d.curve->at(cell[0])[0].get_d())) << "\" x2=\"" << num(f.px(fine.vertex(cell[1])[0].get_d()))
         << "\" y2=\"" << num(f.py(d.curve->at(cell[1])[0].get_d())) << "\"/>\n";
    }
    for (VertexId v = 0; v < fine.num_vertices(); ++v) {
      os << "<circle cx=\"" << num(f.px(fine.vertex(v)[0].get_d())) << "\" cy=\""
         << num(f.py(d.curve->at(v)[0].get_d())) << "\" r=\"2\"><title>" << format_vec(d.curve->at(v))
         << "</title></circle>\n";
    }
    os << "</g>\n";
  }
  axis_labels(os, f);
  os << "</svg>\n";
  return os.str();
}

std::string svg_2d(const PlotData& d) {
  const auto& k = *d.complex;
  Frame f;
  for (const auto& p : k.vertices()) {
    f.x.add(p[0].get_d());
    f.y.add(p[1].get_d());
  }
  f.x.pad();
  f.y.pad();
  std::ostringstream os;
  header(os);
  os << "<g class=\"complex\" stroke=\"#666\" fill=\"#ddd\">\n";
  for (CellId c = 0; c < k.num_cells(); ++c) {
    const auto& cell = k.cell(c);
    if (cell.size() == 3) {
      os << "<polygon points=\"";
      for (std::size_t i = 0; i < 3; ++i) {
        const auto& p = k.vertex(cell[i]);
        os << (i ? " " : "") << num(f.px(p[0].get_d())) << "," << num(f.py(p[1].get_d()));
      }
      os << "\"/>\n";
    } else if (cell.size() == 2) {
      const auto& a = k.vertex(cell[0]);
      const auto& b = k.vertex(cell[1]);
      os << "<line x1=\"" << num(f.px(a[0].get_d())) << "\" y1=\"" << num(f.py(a[1].get_d())) << "\" x2=\""
         << num(f.px(b[0].get_d())) << "\" y2=\"" << num(f.py(b[1].get_d())) << "\"/>\n";
    }
  }
  os << "</g>\n";
  if (d.lower && d.upper) {
    os << "<g class=\"bands\" font-size=\"10\" font-family=\"monospace\" fill=\"#275\">\n";
    for (VertexId v = 0; v < k.num_vertices(); ++v) {
      const CellId c = k.vertex_cell(v);
      const auto& p = k.vertex(v);
      os << "<text x=\"" << num(f.px(p[0].get_d()) + 5) << "\" y=\"" << num(f.py(p[1].get_d()) - 5) << "\">("
         << format_ext((*d.lower)[c]) << ", " << format_ext((*d.upper)[c]) << ")</text>\n";
    }
    os << "</g>\n";
  }
  if (d.curve) {
    const auto& fine = *d.curve->complex();
    Range val;
    for (const auto& y : d.curve->values()) val.add(y[0].get_d());
    const double span = val.hi > val.lo ? val.hi - val.lo : 1.0;
    os << "<g class=\"curve\" stroke=\"#222\" stroke-width=\"0.5\">\n";
    for (VertexId v = 0; v < fine.num_vertices(); ++v) {
      const auto& p = fine.vertex(v);
      os << "<circle cx=\"" << num(f.px(p[0].get_d())) << "\" cy=\"" << num(f.py(p[1].get_d()))
         << "\" r=\"4\" fill=\"" << colour((d.curve->at(v)[0].get_d() - val.lo) / span) << "\"><title>"
         << format_vec(d.curve->at(v)) << "</title></circle>\n";
    }
    os << "</g>\n";
  }
  axis_labels(os, f);
  os << "</svg>\n";
  return os.str();
}

}  // namespace

std::string render_svg(const PlotData& data) {
  const std::size_t d = data.complex->dim_ambient();
  if (d == 0 || d > 2) throw Error(ErrorCode::UnsupportedDim, "SVG needs a base of dimension 1 or 2, got " + std::to_string(d));
  if (data.curve && data.curve->target_dim() != 1) {
    throw Error(ErrorCode::UnsupportedDim, "SVG draws scalar maps only");
  }
  return d == 1 ? svg_1d(data) : svg_2d(data);
}

std::string render_csv(const PlotData& data) {
  if (!data.curve) throw Error(ErrorCode::InvalidArgument, "nothing to sample: no selection");
  const auto& f = *data.curve;
  const auto& k = *f.complex();
  std::ostringstream os;
  for (std::size_t i = 0; i < k.dim_ambient(); ++i) os << (i ? "," : "") << "x" << i + 1;
  for (std::size_t i = 0; i < f.target_dim(); ++i) os << ",f" << i + 1;
  os << "\n";
  for (CellId c = 0; c < k.num_cells(); ++c) {
    const std::size_t m = k.cell(c).size();
    const Vec w(m, make_rational(1, static_cast<long>(m)));
    const Vec x = k.barycenter(c);
    const Vec y = eval_in_cell(f, c, w);
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << format_rational(x[i]);
    for (const auto& v : y) os << "," << format_rational(v);
    os << "\n";
  }
  return os.str();
}

}  // namespace selectra
