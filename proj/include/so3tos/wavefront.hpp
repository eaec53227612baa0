#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "hopf_sphere.hpp"
#include "oracle.hpp"
#include "parallel.hpp"
#include "synthesis.hpp"

namespace so3tos {

struct FrontSample {
  double T = 0.0;
  Vec3 point = Vec3::Zero();
  BangProgramS generator;
};

/**
 * @brief Endpoints of the structured families at total time T.
 *
 * For each (sign, m) and s on a uniform grid of `resolution` points, the last
 * arc t = T - s - (m - 2) v(s) must lie in [0, v(s)].
 */
inline std::vector<FrontSample> propagate_front(const Alpha& a, double T, int resolution = 512) {
  std::vector<FrontSample> out;
  if (!(T > 0.0)) throw std::invalid_argument("propagate_front: T must be positive");
  for (int sign : {+1, -1}) {
    if (T <= kPi) {
      const BangProgramS p{sign, T, 1, 0.0};
      out.push_back({T, endpoint_S(p, a), p});
    }
    const int m_max = static_cast<int>(std::floor(T / kPi)) + 2;
    for (int m = 2; m <= m_max; ++m) {
      for (int i = 0; i < resolution; ++i) {
        const double s = kPi * i / (resolution - 1);
        const double v = v_of_s(s, a);
        const double t = T - s - (m - 2) * v;
        if (t < 0.0 || t > v) continue;
        const BangProgramS p{sign, s, m, t};
        out.push_back({T, endpoint_S(p, a), p});
      }
    }
  }
  return out;
}

/// Branch coordinate on a circle: the extremal (+, s) sits at s, (-, s) at pi + s.
inline double branch_angle(const BangProgramS& p) {
  if (p.m == 1) return p.first_sign > 0 ? kPi : 0.0;
  return p.first_sign > 0 ? p.s : kPi + p.s;
}

inline double branch_distance(const BangProgramS& p, const BangProgramS& q) {
  double d = std::fmod(std::abs(branch_angle(p) - branch_angle(q)), 2.0 * kPi);
  return std::min(d, 2.0 * kPi - d);
}

inline constexpr double kBranchSeparation = 0.05;

struct MinTimeCell {
  Vec3 center = Vec3::Zero();
  double best_time = kInf;
  BangProgramS best;
  double runner_up_time = kInf;
  BangProgramS runner_up;
  double diameter = 0.0;
};

/// Best solution and best solution on a structurally different branch.
inline MinTimeCell evaluate_cell(const StructuredSolver& solver, const Vec3& y, double diameter) {
  MinTimeCell c;
  c.center = y;
  c.diameter = diameter;
  const auto sols = solver.solve_all(y);
  StructuredSolution best;
  for (const auto& s : sols)
    if (StructuredSolver::better(s, best)) best = s;
  c.best_time = best.time;
  c.best = best.program;
  StructuredSolution second;
  for (const auto& s : sols) {
    if (branch_distance(s.program, best.program) <= kBranchSeparation) continue;
    if (StructuredSolver::better(s, second)) second = s;
  }
  c.runner_up_time = second.time;
  c.runner_up = second.program;
  return c;
}

inline std::vector<Vec3> fibonacci_sphere(int n) {
  std::vector<Vec3> pts(n);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    pts[i] = Vec3(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

struct MinTimeMap {
  double alpha = 0.0;
  double horizon = 0.0;
  double spacing = 0.0;
  std::vector<MinTimeCell> cells;
};

inline MinTimeMap min_time_map(const Alpha& a, double horizon, int n_cells = 10000) {
  MinTimeMap map;
  map.alpha = a.value();
  map.horizon = horizon;
  map.spacing = std::sqrt(4.0 * kPi / n_cells);
  const StructuredSolver solver(a, horizon);
  const auto pts = fibonacci_sphere(n_cells);
  map.cells.resize(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { map.cells[i] = evaluate_cell(solver, pts[i], map.spacing); });
  return map;
}

/// Time tolerance for calling two branches equal within one cell.
inline double overlap_tolerance(double diameter) { return 2.0 * diameter; }

inline bool is_overlap(const MinTimeCell& c) {
  if (!std::isfinite(c.best_time) || !std::isfinite(c.runner_up_time)) return false;
  return c.runner_up_time - c.best_time < overlap_tolerance(c.diameter);
}

struct OverlapCurve {
  std::vector<Vec3> points;
  std::vector<double> times;
};

namespace detail {

inline long long hash3(long ix, long iy, long iz) {
  return (ix * 73856093LL) ^ (iy * 19349663LL) ^ (iz * 83492791LL);
}

/// Index pairs closer than radius, via a uniform bucket grid.
inline std::vector<std::vector<std::size_t>> neighbor_lists(const std::vector<Vec3>& pts, double radius) {
  std::unordered_map<long long, std::vector<std::size_t>> buckets;
  auto cell = [&](const Vec3& p) {
    return std::array<long, 3>{static_cast<long>(std::floor(p.x() / radius)), static_cast<long>(std::floor(p.y() / radius)),
                               static_cast<long>(std::floor(p.z() / radius))};
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto c = cell(pts[i]);
    buckets[hash3(c[0], c[1], c[2])].push_back(i);
  }
  std::vector<std::vector<std::size_t>> nb(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto c = cell(pts[i]);
    for (long dx = -1; dx <= 1; ++dx)
      for (long dy = -1; dy <= 1; ++dy)
        for (long dz = -1; dz <= 1; ++dz) {
          auto it = buckets.find(hash3(c[0] + dx, c[1] + dy, c[2] + dz));
          if (it == buckets.end()) continue;
          for (std::size_t k : it->second)
            if (k != i && (pts[k] - pts[i]).norm() < radius) nb[i].push_back(k);
        }
  }
  return nb;
}

inline std::vector<std::vector<std::size_t>> components(const std::vector<std::vector<std::size_t>>& nb,
                                                        const std::vector<char>& keep) {
  std::vector<int> label(nb.size(), -1);
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t i = 0; i < nb.size(); ++i) {
    if (!keep[i] || label[i] >= 0) continue;
    comps.emplace_back();
    std::vector<std::size_t> stack{i};
    label[i] = static_cast<int>(comps.size() - 1);
    while (!stack.empty()) {
      const std::size_t j = stack.back();
      stack.pop_back();
      comps.back().push_back(j);
      for (std::size_t k : nb[j]) {
        if (keep[k] && label[k] < 0) {
          label[k] = label[i];
          stack.push_back(k);
        }
      }
    }
  }
  return comps;
}

inline std::vector<std::vector<std::size_t>> components(const std::vector<Vec3>& pts, double radius) {
  return components(neighbor_lists(pts, radius), std::vector<char>(pts.size(), 1));
}

/// Orders a point cloud into a polyline: start at an extreme point, then nearest unvisited.
inline std::vector<std::size_t> order_polyline(const std::vector<Vec3>& pts, const std::vector<std::size_t>& comp) {
  if (comp.size() <= 2) return comp;
  auto farthest = [&](std::size_t from) {
    std::size_t best = comp.front();
    double d = -1.0;
    for (std::size_t k : comp) {
      const double dd = (pts[k] - pts[from]).norm();
      if (dd > d) { d = dd; best = k; }
    }
    return best;
  };
  const std::size_t start = farthest(farthest(comp.front()));
  std::vector<std::size_t> order{start};
  std::vector<char> used(pts.size(), 0);
  used[start] = 1;
  for (std::size_t n = 1; n < comp.size(); ++n) {
    const Vec3& cur = pts[order.back()];
    std::size_t best = comp.front();
    double d = kInf;
    for (std::size_t k : comp) {
      if (used[k]) continue;
      const double dd = (pts[k] - cur).norm();
      if (dd < d) { d = dd; best = k; }
    }
    used[best] = 1;
    order.push_back(best);
  }
  return order;
}

}  // namespace detail

inline constexpr double kExchangeMatch = 0.25;

/**
 * @brief Overlap flags on a cell graph.
 *
 * A cell is flagged when its runner-up is within tolerance, or when across an
 * edge the two best branches differ and each is the other cell's runner-up:
 * the minimum passes from one branch to the other between the two cells.
 */
inline std::vector<char> flag_overlaps(const std::vector<MinTimeCell>& cells,
                                       const std::vector<std::vector<std::size_t>>& nb, double min_time = 0.0) {
  std::vector<char> flag(cells.size(), 0);
  auto usable = [&](const MinTimeCell& c) {
    return std::isfinite(c.best_time) && std::isfinite(c.runner_up_time) && c.best_time >= min_time;
  };
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    if (!usable(c)) continue;
    if (is_overlap(c)) flag[i] = 1;
    for (std::size_t k : nb[i]) {
      const auto& d = cells[k];
      if (!usable(d)) continue;
      if (branch_distance(c.best, d.best) <= kBranchSeparation) continue;
      if (branch_distance(c.runner_up, d.best) <= kExchangeMatch &&
          branch_distance(d.runner_up, c.best) <= kExchangeMatch) {
        flag[i] = 1;
        flag[k] = 1;
      }
    }
  }
  return flag;
}

/// Neighbor lists of the Fibonacci lattice cells.
inline std::vector<std::vector<std::size_t>> map_neighbors(const MinTimeMap& map) {
  std::vector<Vec3> pts;
  pts.reserve(map.cells.size());
  for (const auto& c : map.cells) pts.push_back(c.center);
  return detail::neighbor_lists(pts, 1.6 * map.spacing);
}

/// Flagged cells chained into polylines by adjacency.
inline std::vector<OverlapCurve> detect_overlaps(const MinTimeMap& map, double min_time = 0.0) {
  const auto nb = map_neighbors(map);
  const auto flag = flag_overlaps(map.cells, nb, min_time);
  std::vector<Vec3> pts;
  for (const auto& c : map.cells) pts.push_back(c.center);
  std::vector<OverlapCurve> curves;
  for (const auto& comp : detail::components(nb, flag)) {
    OverlapCurve oc;
    for (std::size_t k : detail::order_polyline(pts, comp)) {
      oc.points.push_back(pts[k]);
      oc.times.push_back(map.cells[k].best_time);
    }
    curves.push_back(std::move(oc));
  }
  return curves;
}

// ---------------------------------------------------------------------------
// South pole.

/// Point at geodesic offset (u, v) from the south pole (azimuthal equidistant chart).
inline Vec3 south_chart(double u, double v) {
  const double rho = std::hypot(u, v);
  if (rho == 0.0) return Vec3(0.0, 0.0, -1.0);
  const double k = std::sin(rho) / rho;
  return Vec3(k * u, k * v, -std::cos(rho));
}

struct SouthCap {
  double alpha = 0.0;
  double h = 0.0;      // grid step in the chart
  double radius = 0.0;
  int half = 0;        // grid is (2 half + 1)^2
  std::vector<MinTimeCell> cells;  // row-major, index (i + half) * (2 half + 1) + (j + half)
  std::vector<char> inside;
  int index(int i, int j) const { return (i + half) * (2 * half + 1) + (j + half); }
};

inline SouthCap south_cap_map(const Alpha& a, const StructuredSolver& solver, double radius, double h) {
  SouthCap cap;
  cap.alpha = a.value();
  cap.h = h;
  cap.radius = radius;
  cap.half = static_cast<int>(std::ceil(radius / h));
  const int w = 2 * cap.half + 1;
  cap.cells.resize(static_cast<std::size_t>(w) * w);
  cap.inside.assign(cap.cells.size(), 0);
  parallel_for(cap.cells.size(), [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / w - cap.half, j = static_cast<int>(idx) % w - cap.half;
    const double u = i * h, v = j * h;
    if (std::hypot(u, v) > radius) return;
    cap.inside[idx] = 1;
    cap.cells[idx] = evaluate_cell(solver, south_chart(u, v), h * std::sqrt(2.0));
  });
  return cap;
}

inline std::vector<std::vector<std::size_t>> cap_neighbors(const SouthCap& cap) {
  const int w = 2 * cap.half + 1;
  std::vector<std::vector<std::size_t>> nb(cap.cells.size());
  for (int i = 0; i < w; ++i)
    for (int j = 0; j < w; ++j) {
      const int idx = i * w + j;
      if (!cap.inside[idx]) continue;
      for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          const int ii = i + di, jj = j + dj;
          if ((di || dj) && ii >= 0 && jj >= 0 && ii < w && jj < w && cap.inside[ii * w + jj])
            nb[idx].push_back(static_cast<std::size_t>(ii * w + jj));
        }
    }
  return nb;
}

inline std::vector<char> cap_overlap_flags(const SouthCap& cap) {
  std::vector<char> f = flag_overlaps(cap.cells, cap_neighbors(cap));
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = f[i] && cap.inside[i];
  return f;
}

struct SouthPoleReport {
  std::string label = "boundary";
  double r = 0.0;
  int n_a = 0;
  int index = 0;           // switching-curve index used (N_A, or N_A - 1 when r = 0)
  double cell = 0.0;
  double extent = 0.0;      // farthest overlap distance from the pole, pole component
  double disk = 0.0;        // distance from the pole to P^+-_index
  double touch_P = 0.0;     // pole component to the nearer P^+-_index
  double touch_curve = 0.0; // pole component inside the disk to C^+-_index, away from P^+-_index
  double junction_s = 0.0;  // C^+_index is optimal for s below this
  double junction_length = 0.0;  // geodesic from P^+_index to the junction
  int arms = 0;             // pole-component clusters on the circle of radius disk / 2
  bool pole_overlap = false;
  std::string diagnostics;
};

}  // namespace so3tos

namespace so3tos {

/**
 * @brief Shape of the overlap set through the south pole.
 *
 * The pole component of the overlap set is measured against P^+-_n and the
 * switching curves C^+-_n, n = N_A (n = N_A - 1 when r = 0):
 *   B: its far end sits on P^+-_n;
 *   A: its far end sits on C^+-_n before reaching P^+-_n;
 *   C: more than two arms leave the pole, or the end is on neither.
 * Anything not separable at the cap resolution is "boundary".
 */
struct Junction {
  double s = 0.0;
  Vec3 point = Vec3::Zero();
  double length = 0.0;
};

/**
 * @brief Where the switching curve C^+_k stops being time-optimal.
 *
 * Scans s upward from P^+_k and bisects the first sign change of
 * (curve time - minimum time) beyond `tol`.
 */
inline Junction curve_junction(const Alpha& a, const StructuredSolver& solver, int k, double tol = 1e-8, int samples = 2000) {
  auto gap = [&](double s) {
    BangProgramS p = curve_program(k, +1, s);
    p.t = v_of_s(s, a);
    return total_time(p, a) - solver.best(endpoint_S(p, a)).time;
  };
  double lo = 0.0, hi = kPi;
  bool found = false;
  for (int q = 1; q <= samples; ++q) {
    const double s = kPi * q / samples;
    if (gap(s) > tol) {
      hi = s;
      found = true;
      break;
    }
    lo = s;
  }
  if (found) {
    for (int it = 0; it < 40 && hi - lo > 1e-10; ++it) {
      const double mid = 0.5 * (lo + hi);
      (gap(mid) > tol ? hi : lo) = mid;
    }
  }
  Junction j;
  j.s = found ? lo : kPi;
  j.point = switching_point(k, +1, j.s, a);
  j.length = geodesic(j.point, P_n(a, +1, k));
  return j;
}

/**
 * @brief Case label of the synthesis near the south pole.
 *
 * The overlap component through the pole is cut by the circle of radius
 * disk / 2, disk being the distance to P^+-_index. Two crossings mean a single
 * curve through the pole: A when C^+_index stays optimal past P^+_index or the
 * curve meets C^+-_index inside the disk, B when it reaches P^+-_index instead.
 * More crossings give C.
 */
inline SouthPoleReport classify_south_pole_cap(const Alpha& a, const StructuredSolver& solver, const SouthCap& cap) {
  SouthPoleReport rep;
  const SwitchConstants k = switch_constants(a);
  rep.n_a = k.n_a;
  rep.r = k.r;
  rep.index = k.r == 0.0 ? k.n_a - 1 : k.n_a;
  rep.cell = cap.h;
  const double h = cap.h;
  const int w = 2 * cap.half + 1;
  // Chains break for a cell where the partner branch changes; bridge gaps of one cell.
  constexpr int kReach = 2;

  const auto flags = cap_overlap_flags(cap);
  std::vector<int> comp_of(cap.cells.size(), -1);
  for (std::size_t idx = 0; idx < cap.cells.size(); ++idx)
    if (flags[idx]) comp_of[idx] = -2;
  auto uv = [&](int idx) { return Eigen::Vector2d((idx / w - cap.half) * h, (idx % w - cap.half) * h); };

  std::vector<std::vector<int>> comps;
  for (std::size_t idx = 0; idx < cap.cells.size(); ++idx) {
    if (comp_of[idx] != -2) continue;
    comps.emplace_back();
    std::vector<int> stack{static_cast<int>(idx)};
    comp_of[idx] = static_cast<int>(comps.size() - 1);
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      comps.back().push_back(c);
      const int i = c / w, j = c % w;
      for (int di = -kReach; di <= kReach; ++di)
        for (int dj = -kReach; dj <= kReach; ++dj) {
          const int ii = i + di, jj = j + dj;
          if (ii < 0 || jj < 0 || ii >= w || jj >= w) continue;
          const int n = ii * w + jj;
          if (comp_of[n] == -2) {
            comp_of[n] = comp_of[idx];
            stack.push_back(n);
          }
        }
    }
  }

  int pole = -1;
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    if (comps[ci].size() < 3) continue;
    for (int c : comps[ci])
      if (uv(c).norm() <= 1.5 * h + 1e-15) pole = static_cast<int>(ci);
  }
  if (pole < 0) {
    rep.diagnostics = "no overlap component through the south pole";
    return rep;
  }
  rep.pole_overlap = true;
  const auto& comp = comps[pole];
  for (int c : comp) rep.extent = std::max(rep.extent, uv(c).norm());
  rep.disk = geodesic(Vec3(0.0, 0.0, -1.0), P_n(a, +1, rep.index));
  const Vec3 Pp = P_n(a, +1, rep.index), Pm = P_n(a, -1, rep.index);
  std::vector<Vec3> curve;
  for (int eps : {+1, -1})
    for (int q = 0; q <= 4000; ++q) {
      const Vec3 y = switching_point(rep.index, eps, kPi * q / 4000, a);
      if (y.z() < -std::cos(rep.disk)) curve.push_back(y);
    }
  rep.touch_P = kInf;
  rep.touch_curve = kInf;
  for (int c : comp) {
    const Vec3 y = south_chart(uv(c).x(), uv(c).y());
    const double dP = std::min(geodesic(y, Pp), geodesic(y, Pm));
    rep.touch_P = std::min(rep.touch_P, dP);
    if (dP <= 6.0 * h || uv(c).norm() > rep.disk - 3.0 * h) continue;
    for (const Vec3& q : curve) rep.touch_curve = std::min(rep.touch_curve, geodesic(y, q));
  }

  const Junction jn = curve_junction(a, solver, rep.index);
  rep.junction_s = jn.s;
  rep.junction_length = jn.length;

  const double ring = 0.5 * rep.disk;
  std::vector<Vec3> ring_pts;
  for (int c : comp) {
    const double d = uv(c).norm();
    if (std::abs(d - ring) <= 1.0 * h) ring_pts.push_back(Vec3(uv(c).x(), uv(c).y(), 0.0));
  }
  rep.arms = static_cast<int>(detail::components(ring_pts, 2.5 * h).size());

  std::ostringstream diag;
  diag << "size=" << comp.size() << " extent=" << rep.extent << " disk=" << rep.disk  << " touch_P=" << rep.touch_P << " touch_curve=" << rep.touch_curve << " junction_s=" << rep.junction_s
       << " junction_length=" << rep.junction_length << " arms=" << rep.arms << " h=" << h;
  rep.diagnostics = diag.str();
  if (rep.arms > 2) {
    rep.label = "C";
  } else if (rep.arms < 2) {
    rep.label = "boundary";
  } else if (rep.junction_length > 2.0 * h || rep.touch_curve <= 1.5 * h) {
    rep.label = "A";
  } else if (rep.touch_P <= 3.0 * h) {
    rep.label = "B";
  } else {
    rep.label = "boundary";
  }
  return rep;
}

struct CapSettings {
  double cells_per_alpha = 30.0;  // chart step at most alpha / cells_per_alpha
  double cells_per_disk = 24.0;   // and at most disk / cells_per_disk
  double radius_factor = 1.5;     // cap radius in units of the disk, plus a margin
};

inline SouthPoleReport classify_south_pole(const Alpha& a, const CapSettings& cs = {}) {
  const SwitchConstants k = switch_constants(a);
  const int index = k.r == 0.0 ? k.n_a - 1 : k.n_a;
  const double disk = geodesic(Vec3(0.0, 0.0, -1.0), P_n(a, +1, index));
  const StructuredSolver solver(a, (k.n_a + 2) * kPi);
  const double h = std::min({0.01, a.value() / cs.cells_per_alpha, disk / cs.cells_per_disk});
  const SouthCap cap = south_cap_map(a, solver, cs.radius_factor * disk + 6.0 * h, h);
  return classify_south_pole_cap(a, solver, cap);
}

/// Bracket of a case transition in alpha, with the remainder r at its midpoint.
struct Transition {
  double alpha_lo = 0.0;  // predicate false
  double alpha_hi = 0.0;  // predicate true
  double r = 0.0;
  bool resolved = false;
};

struct CaseThresholds {
  int n_a = 0;
  double cycle_lo = 0.0;  // alpha range with this N_A: (cycle_lo, cycle_hi]
  double cycle_hi = 0.0;
  Transition a_to_b;      // r_2: label leaves A
  Transition b_to_c;      // r_1: label becomes C
};

namespace detail {

template <class Pred>
Transition bisect_transition(int n_a, double lo, double hi, double resolution, Pred pred) {
  Transition t;
  t.alpha_lo = lo;
  t.alpha_hi = hi;
  if (pred(lo) || !pred(hi)) return t;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? hi : lo) = mid;
  }
  t.alpha_lo = lo;
  t.alpha_hi = hi;
  t.r = kPi - 2.0 * n_a * 0.5 * (lo + hi);
  t.resolved = true;
  return t;
}

}  // namespace detail

/**
 * @brief Measures the A/B and B/C transitions within one N_A cycle.
 *
 * Alpha increases while r decreases from 2 alpha to 0, so within a cycle the
 * order is A, B, C. Unresolved brackets mean the predicate did not change sign
 * between the cycle ends.
 */
inline CaseThresholds measure_case_thresholds(int n_a, const CapSettings& cs = {}, double resolution = 1e-4) {
  if (n_a < 1) throw std::invalid_argument("measure_case_thresholds: N_A must be at least 1");
  CaseThresholds out;
  out.n_a = n_a;
  out.cycle_lo = kPi / (2.0 * n_a + 2.0);
  out.cycle_hi = kPi / (2.0 * n_a);
  // Stay clear of r = 0 and r = 2 alpha; alpha = pi / (2 N_A + rho).
  const double lo = kPi / (2.0 * n_a + 1.98), hi = std::min(kPi / (2.0 * n_a + 0.02), kPi / 4.0 - 2e-3);
  // Unresolved "boundary" labels also occur inside the A band; only B or C counts as past A.
  auto not_a = [&](double al) {
    const auto l = classify_south_pole(Alpha(al), cs).label;
    return l == "B" || l == "C";
  };
  auto is_c = [&](double al) { return classify_south_pole(Alpha(al), cs).label == "C"; };
  out.a_to_b = detail::bisect_transition(n_a, lo, hi, resolution, not_a);
  out.b_to_c = detail::bisect_transition(n_a, lo, hi, resolution, is_c);
  return out;
}

}  // namespace so3tos
