#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "synthesis.hpp"
#include "wavefront.hpp"

namespace so3tos {

inline constexpr const char* kSchemaVersion = "so3tos-chart/1";

using Json = nlohmann::json;

inline Json to_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

inline Vec3 vec3_from_json(const Json& j) { return Vec3(j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()); }

inline Json to_json(const std::vector<Vec3>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(to_json(p));
  return out;
}

inline std::vector<Vec3> points_from_json(const Json& j) {
  std::vector<Vec3> out;
  out.reserve(j.size());
  for (const auto& p : j) out.push_back(vec3_from_json(p));
  return out;
}

inline Json to_json(const ExtremalArcSequence& seq) {
  Json signs = Json::array(), durations = Json::array();
  for (const auto& arc : seq.arcs) {
    signs.push_back(arc_sign(arc.kind));
    durations.push_back(arc.duration);
  }
  return Json{{"signs", signs}, {"durations", durations}, {"lambda0", seq.covector ? Json(seq.covector->lambda0) : Json(nullptr)}};
}

inline ExtremalArcSequence arc_sequence_from_json(const Json& j) {
  ExtremalArcSequence seq;
  const auto& signs = j.at("signs");
  const auto& durations = j.at("durations");
  if (signs.size() != durations.size()) throw std::runtime_error("arc_sequence_from_json: signs and durations differ in length");
  for (std::size_t i = 0; i < signs.size(); ++i) seq.arcs.push_back(ArcSpec{arc_kind(signs[i].get<int>()), durations[i].get<double>()});
  if (!j.at("lambda0").is_null()) {
    Covector cov;
    cov.lambda0 = j.at("lambda0");
    seq.covector = cov;
  }
  return seq;
}

inline Json to_json(const BangProgramS& p) {
  return Json{{"first_sign", p.first_sign}, {"s", p.s}, {"m", p.m}, {"t", p.t}};
}

inline Json to_json(const SwitchConstants& k) {
  return Json{{"n0", k.n0},         {"n_s", k.n_s},         {"n_a", k.n_a},
              {"n_a_index", k.n_a_agr}, {"k_tilde", k.k_tilde}, {"resonant", k.resonant},
              {"n_s_below", k.n_s_below}, {"n_s_above", k.n_s_above}, {"r", k.r},
              {"r_alpha", k.r_alpha}};
}

inline SwitchConstants switch_constants_from_json(const Json& j) {
  SwitchConstants k;
  k.n0 = j.at("n0");
  k.n_s = j.at("n_s");
  k.n_a = j.at("n_a");
  k.n_a_agr = j.at("n_a_index");
  k.k_tilde = j.at("k_tilde");
  k.resonant = j.at("resonant");
  k.n_s_below = j.at("n_s_below");
  k.n_s_above = j.at("n_s_above");
  k.r = j.at("r");
  k.r_alpha = j.at("r_alpha");
  return k;
}

inline Json to_json(const SynthesisChart& ch) {
  Json curves = Json::array();
  for (const auto& c : ch.curves) curves.push_back(Json{{"k", c.k}, {"eps", c.eps}, {"s", c.s}, {"points", to_json(c.y)}});
  Json regions = Json::array();
  for (const auto& r : ch.regions) regions.push_back(Json{{"eps", r.eps}, {"k", r.k}, {"boundary", to_json(r.boundary)}});
  return Json{{"schema", kSchemaVersion},
              {"alpha", ch.alpha},
              {"constants", to_json(ch.constants)},
              {"k_eq", ch.k_eq},
              {"curves", curves},
              {"abnormal_plus", to_json(ch.abnormal_plus)},
              {"abnormal_minus", to_json(ch.abnormal_minus)},
              {"regions", regions},
              {"t_eq_plus", ch.t_eq_plus},
              {"t_eq_minus", ch.t_eq_minus},
              {"y_eq_plus", to_json(ch.y_eq_plus)},
              {"y_eq_minus", to_json(ch.y_eq_minus)},
              {"t_op", ch.t_op},
              {"equator_count", ch.equator_count},
              {"case_label", ch.case_label}};
}

inline SynthesisChart chart_from_json(const Json& j) {
  if (j.at("schema").get<std::string>() != kSchemaVersion)
    throw std::runtime_error("chart_from_json: unsupported schema " + j.at("schema").get<std::string>());
  SynthesisChart ch;
  ch.alpha = j.at("alpha");
  ch.constants = switch_constants_from_json(j.at("constants"));
  ch.k_eq = j.at("k_eq");
  for (const auto& c : j.at("curves")) {
    ch.curves.push_back(SwitchingCurveS{c.at("k"), c.at("eps"), c.at("s").get<std::vector<double>>(), points_from_json(c.at("points"))});
  }
  ch.abnormal_plus = points_from_json(j.at("abnormal_plus"));
  ch.abnormal_minus = points_from_json(j.at("abnormal_minus"));
  for (const auto& r : j.at("regions")) ch.regions.push_back(RegionLoop{r.at("eps"), r.at("k"), points_from_json(r.at("boundary"))});
  ch.t_eq_plus = j.at("t_eq_plus");
  ch.t_eq_minus = j.at("t_eq_minus");
  ch.y_eq_plus = vec3_from_json(j.at("y_eq_plus"));
  ch.y_eq_minus = vec3_from_json(j.at("y_eq_minus"));
  ch.t_op = j.at("t_op");
  ch.equator_count = j.at("equator_count");
  ch.case_label = j.at("case_label");
  return ch;
}

inline Json to_json(const std::vector<FrontSample>& front, double T) {
  Json samples = Json::array();
  for (const auto& f : front) samples.push_back(Json{{"point", to_json(f.point)}, {"generator", to_json(f.generator)}});
  return Json{{"schema", kSchemaVersion}, {"T", T}, {"samples", samples}};
}

inline Json to_json(const std::vector<OverlapCurve>& curves) {
  Json out = Json::array();
  for (const auto& c : curves) out.push_back(Json{{"points", to_json(c.points)}, {"times", c.times}});
  return out;
}

inline Json to_json(const SouthPoleReport& r) {
  auto finite = [](double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); };
  return Json{{"label", r.label},
              {"r", r.r},
              {"n_a", r.n_a},
              {"index", r.index},
              {"cell", r.cell},
              {"extent", r.extent},
              {"disk", r.disk},
              {"touch_P", finite(r.touch_P)},
              {"touch_curve", finite(r.touch_curve)},
              {"junction_s", r.junction_s},
              {"junction_length", r.junction_length},
              {"arms", r.arms},
              {"pole_overlap", r.pole_overlap},
              {"diagnostics", r.diagnostics}};
}

// ---------------------------------------------------------------------------
// CSV.

namespace detail {

inline std::string num(double x, int digits = 17) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

}  // namespace detail

inline void write_front_csv(std::ostream& os, const std::vector<FrontSample>& front) {
  os << "T,y1,y2,y3,sign,s,m,t\n";
  for (const auto& f : front) {
    os << detail::num(f.T) << ',' << detail::num(f.point.x()) << ',' << detail::num(f.point.y()) << ','
       << detail::num(f.point.z()) << ',' << f.generator.first_sign << ',' << detail::num(f.generator.s) << ','
       << f.generator.m << ',' << detail::num(f.generator.t) << '\n';
  }
}

inline void write_map_csv(std::ostream& os, const MinTimeMap& map) {
  os << "y1,y2,y3,time,sign,s,m,t,runner_up_time\n";
  for (const auto& c : map.cells) {
    os << detail::num(c.center.x()) << ',' << detail::num(c.center.y()) << ',' << detail::num(c.center.z()) << ','
       << detail::num(c.best_time) << ',' << c.best.first_sign << ',' << detail::num(c.best.s) << ',' << c.best.m << ','
       << detail::num(c.best.t) << ',' << detail::num(c.runner_up_time) << '\n';
  }
}

inline void write_curves_csv(std::ostream& os, const SynthesisChart& ch) {
  os << "k,eps,s,y1,y2,y3\n";
  for (const auto& c : ch.curves)
    for (std::size_t i = 0; i < c.y.size(); ++i)
      os << c.k << ',' << c.eps << ',' << detail::num(c.s[i]) << ',' << detail::num(c.y[i].x()) << ','
         << detail::num(c.y[i].y()) << ',' << detail::num(c.y[i].z()) << '\n';
}

// ---------------------------------------------------------------------------
// SVG: two orthographic discs, the sphere seen from +z (left) and from -z
// (right, mirrored so that handedness is preserved).

class SphereSvg {
 public:
  explicit SphereSvg(std::string title, double radius = 240.0) : title_(std::move(title)), R_(radius) {}

  void polyline(const std::vector<Vec3>& pts, const std::string& color, double width = 1.2, bool closed = false,
                const std::string& fill = "none", double fill_opacity = 0.0) {
    if (closed && fill != "none") {
      region(pts, color, width, fill, fill_opacity);
      return;
    }
    for (int view = 0; view < 2; ++view) {
      std::vector<std::vector<std::pair<double, double>>> runs(1);
      for (const auto& p : pts) {
        if (visible(view, p)) {
          runs.back().push_back(screen(view, p));
        } else if (!runs.back().empty()) {
          runs.emplace_back();
        }
      }
      for (const auto& run : runs) {
        if (run.size() < 2) continue;
        std::ostringstream os;
        os << "<polyline points=\"";
        for (const auto& [x, y] : run) os << fmt(x) << ',' << fmt(y) << ' ';
        os << "\" stroke=\"" << color << "\" stroke-width=\"" << fmt(width) << "\" fill=\"none\"/>";
        body_.push_back(os.str());
      }
    }
  }

  // Northern view only. Hidden stretches of the loop are pushed radially onto
  // the rim, the orthographic image of the clipping great circle.
  void region(const std::vector<Vec3>& pts, const std::string& color, double width, const std::string& fill,
              double fill_opacity) {
    for (int view = 0; view < 1; ++view) {
      if (std::none_of(pts.begin(), pts.end(), [&](const Vec3& p) { return visible(view, p); })) continue;
      std::ostringstream os;
      os << "<polygon points=\"";
      for (const auto& p : pts) {
        Vec3 q = p;
        if (!visible(view, p)) {
          const double n = std::hypot(p.x(), p.y());
          q = n > 0.0 ? Vec3(p.x() / n, p.y() / n, 0.0) : Vec3::UnitX();
        }
        const auto [x, y] = screen(view, q);
        os << fmt(x) << ',' << fmt(y) << ' ';
      }
      os << "\" stroke=\"" << color << "\" stroke-width=\"" << fmt(width) << "\" fill=\"" << fill
         << "\" fill-opacity=\"" << fmt(fill_opacity) << "\"/>";
      body_.push_back(os.str());
    }
  }

  void point(const Vec3& p, const std::string& color, double r = 3.0) {
    for (int view = 0; view < 2; ++view) {
      if (!visible(view, p)) continue;
      const auto [x, y] = screen(view, p);
      body_.push_back("<circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) + "\" r=\"" + fmt(r) + "\" fill=\"" + color + "\"/>");
    }
  }

  void note(const std::string& text) { notes_.push_back(text); }

  std::string str() const {
    const double w = 4.0 * R_ + 120.0, h = 2.0 * R_ + 60.0 + 18.0 * (notes_.size() + 1);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\"" << fmt(h) << "\">\n";
    os << "<metadata>" << kSchemaVersion << "</metadata>\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (int view = 0; view < 2; ++view) {
      const auto [cx, cy] = center(view);
      os << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"" << fmt(R_) << "\" stroke=\"black\" fill=\"none\"/>\n";
      os << "<text x=\"" << fmt(cx - R_) << "\" y=\"" << fmt(cy - R_ - 8.0) << "\" font-size=\"13\">"
         << (view == 0 ? "view from +z" : "view from -z") << "</text>\n";
    }
    for (const auto& b : body_) os << b << '\n';
    double y = 2.0 * R_ + 60.0;
    os << "<text x=\"20\" y=\"" << fmt(y) << "\" font-size=\"13\">" << title_ << "</text>\n";
    for (const auto& n : notes_) {
      y += 18.0;
      os << "<text x=\"20\" y=\"" << fmt(y) << "\" font-size=\"13\">" << n << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
  }

 private:
  static std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
  }
  std::pair<double, double> center(int view) const { return {40.0 + R_ + view * (2.0 * R_ + 40.0), 30.0 + R_}; }
  static bool visible(int view, const Vec3& p) { return view == 0 ? p.z() >= -1e-12 : p.z() <= 1e-12; }
  std::pair<double, double> screen(int view, const Vec3& p) const {
    const auto [cx, cy] = center(view);
    const double x = view == 0 ? p.x() : -p.x();
    return {cx + R_ * x, cy - R_ * p.y()};
  }

  std::string title_;
  double R_;
  std::vector<std::string> body_;
  std::vector<std::string> notes_;
};

inline std::vector<Vec3> great_circle(const Vec3& normal, int n = 512) {
  const Vec3 nn = normal.normalized();
  const Vec3 u = (std::abs(nn.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY()).cross(nn).normalized();
  const Vec3 v = nn.cross(u);
  std::vector<Vec3> out;
  for (int i = 0; i <= n; ++i) {
    const double t = 2.0 * kPi * i / n;
    out.push_back(std::cos(t) * u + std::sin(t) * v);
  }
  return out;
}

inline std::string chart_svg(const SynthesisChart& ch) {
  std::ostringstream title;
  title << "alpha = " << detail::num(ch.alpha, 6) << ", N_S = " << ch.constants.n_s << ", N_A = " << ch.constants.n_a;
  SphereSvg svg(title.str());
  svg.polyline(great_circle(Vec3::UnitY()), "#888888", 1.0);  // meridian
  svg.polyline(great_circle(Vec3::UnitZ()), "#888888", 1.0);  // equator
  for (const auto& r : ch.regions) {
    const char* c = r.eps > 0 ? "#2a9d8f" : "#e9c46a";
    svg.polyline(r.boundary, c, 0.6, true, c, r.k % 2 == 0 ? 0.10 : 0.22);
  }
  svg.polyline(ch.abnormal_plus, "#e76f51", 1.4);
  svg.polyline(ch.abnormal_minus, "#f4a261", 1.4);
  for (const auto& c : ch.curves) svg.polyline(c.y, c.eps > 0 ? "#264653" : "#6a4c93", 1.6);
  svg.point(kY0, "black");
  svg.point(ch.y_eq_plus, "#e76f51");
  svg.point(ch.y_eq_minus, "#f4a261");
  svg.note(std::to_string(ch.equator_count) + " meridian crossings on the way to the equator (max switchings in the northern hemisphere)");
  svg.note("switching curves C_1..C_" + std::to_string(ch.k_eq) + ", abnormal supports, snake regions shaded");
  return svg.str();
}

inline std::string front_svg(const Alpha& a, double T, const std::vector<FrontSample>& front) {
  std::ostringstream title;
  title << "front at T = " << detail::num(T, 6) << ", alpha = " << detail::num(a.value(), 6);
  SphereSvg svg(title.str());
  svg.polyline(great_circle(Vec3::UnitY()), "#888888", 1.0);
  svg.polyline(great_circle(Vec3::UnitZ()), "#888888", 1.0);
  for (int sign : {+1, -1}) {
    // One polyline per (sign, m) branch, in grid order.
    std::map<int, std::vector<Vec3>> branches;
    for (const auto& f : front)
      if (f.generator.first_sign == sign) branches[f.generator.m].push_back(f.point);
    for (const auto& [m, pts] : branches) {
      if (pts.size() == 1) {
        svg.point(pts.front(), sign > 0 ? "#264653" : "#6a4c93");
      } else {
        svg.polyline(pts, sign > 0 ? "#264653" : "#6a4c93", 1.4);
      }
    }
  }
  svg.point(kY0, "black");
  svg.note(std::to_string(front.size()) + " front samples");
  return svg.str();
}

}  // namespace so3tos
