#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "lie_core.hpp"

namespace so3tos {

// Points of S^2 are plain unit Vec3. Upstairs x acts on the right; downstairs
// y = x^T e3, so x e^{tz} projects to the rotation of y by -t about phi_L(z).

inline const Vec3 kY0(0.0, 0.0, 1.0);

inline Vec3 hopf_project(const Rotation& x) { return x.matrix().transpose().col(2); }

/// Rotation of y by angle t about the unit axis a (right-hand rule).
inline Vec3 rotate_about(const Vec3& a, double t, const Vec3& y) {
  const double ct = std::cos(t), st = std::sin(t);
  Vec3 r = y * ct + a.cross(y) * st + a * (a.dot(y)) * (1.0 - ct);
  return r / r.norm();
}

/// Downstairs rotation axes: F_S(y) = axis_F x y, and so on.
inline Vec3 axis_F(const Alpha& a) { return Vec3(0.0, 0.0, a.c()); }
inline Vec3 axis_G(const Alpha& a) { return Vec3(a.s(), 0.0, 0.0); }
inline Vec3 axis_X(const Alpha& a, int sign) { return Vec3(sign * a.s(), 0.0, a.c()); }

enum class FieldKind { F, G, Xplus, Xminus };

inline Vec3 field_eval(const Alpha& a, FieldKind k, const Vec3& y) {
  switch (k) {
    case FieldKind::F: return axis_F(a).cross(y);
    case FieldKind::G: return axis_G(a).cross(y);
    case FieldKind::Xplus: return axis_X(a, +1).cross(y);
    default: return axis_X(a, -1).cross(y);
  }
}

/// Flow of X^sign_S for time t: rotation about (sign s, 0, c) by angle t.
inline Vec3 flow_S(const Alpha& a, int sign, double t, const Vec3& y) {
  return rotate_about(axis_X(a, sign), t, y);
}

inline Vec3 meridian_point(double xi) {
  if (xi < -kPi - 1e-12 || xi > kPi + 1e-12) {
    throw std::invalid_argument("meridian_point: xi must lie in [-pi, pi]");
  }
  return Vec3(std::sin(xi), 0.0, std::cos(xi));
}

/// P^sign_n = P(sign * 2 n alpha), wrapped into [-pi, pi].
inline Vec3 P_n(const Alpha& a, int sign, int n) {
  return Vec3(std::sin(sign * 2.0 * n * a.value()), 0.0, std::cos(2.0 * n * a.value()));
}

inline double geodesic(const Vec3& u, const Vec3& w) {
  return std::atan2(u.cross(w).norm(), u.dot(w));
}

/**
 * @brief Right-handed orthonormal tangent basis (e_theta, e_phi) at y.
 *
 * e_theta x e_phi = y, so 2x2 determinants in this basis equal y . (V x W).
 */
inline std::pair<Vec3, Vec3> tangent_basis(const Vec3& y) {
  const double theta = std::acos(std::clamp(y.z(), -1.0, 1.0));
  const double rho = std::hypot(y.x(), y.y());
  const double phi = rho > 0.0 ? std::atan2(y.y(), y.x()) : 0.0;
  Vec3 et(std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi), -std::sin(theta));
  Vec3 ep(-std::sin(phi), std::cos(phi), 0.0);
  return {et, ep};
}

inline double det_tangent(const Vec3& y, const Vec3& V, const Vec3& W) {
  const auto [e1, e2] = tangent_basis(y);
  return V.dot(e1) * W.dot(e2) - V.dot(e2) * W.dot(e1);
}

/// [F,G](y) for F = a x y, G = b x y, with [F,G] = DG F - DF G.
inline Vec3 bracket_FG(const Alpha& a, const Vec3& y) {
  return -(axis_F(a).cross(axis_G(a))).cross(y);
}

inline double delta_A(const Alpha& a, const Vec3& y) {
  return det_tangent(y, field_eval(a, FieldKind::F, y), field_eval(a, FieldKind::G, y));
}

inline double delta_B(const Alpha& a, const Vec3& y) {
  return det_tangent(y, field_eval(a, FieldKind::G, y), bracket_FG(a, y));
}

inline double f_S_ratio(const Alpha& a, const Vec3& y) {
  const double dA = delta_A(a, y);
  if (std::abs(dA) < 1e-14) throw std::domain_error("Delta_A singular");
  return -delta_B(a, y) / dA;
}

inline constexpr double kZeroTol = 1e-12;

/// Canonical antipodal representative in the closed set NH plus E+.
inline Vec3 canonical(const Vec3& y) {
  if (y.z() > kZeroTol) return y;
  if (y.z() < -kZeroTol) return -y;
  if (y.y() < -kZeroTol) return y;
  if (y.y() > kZeroTol) return -y;
  return y.x() >= 0.0 ? y : Vec3(-y);
}

enum class Region { NHp, NHm, Mp, Mm, Ep, Em, NorthPole, SouthPole, SHp, SHm };

inline const char* to_string(Region r) {
  switch (r) {
    case Region::NHp: return "NH+";
    case Region::NHm: return "NH-";
    case Region::Mp: return "M+";
    case Region::Mm: return "M-";
    case Region::Ep: return "E+";
    case Region::Em: return "E-";
    case Region::NorthPole: return "north-pole";
    case Region::SouthPole: return "south-pole";
    case Region::SHp: return "SH+";
    default: return "SH-";
  }
}

/**
 * @brief Region label of y.
 *
 * M+- is the open top half-meridian with y1 >< 0; the bottom half-meridian is
 * folded into SH+, (1,0,0) into E+ and (-1,0,0) into E-.
 */
inline Region region_of(const Vec3& y) {
  const double tol = kZeroTol;
  if (std::abs(y.x()) <= tol && std::abs(y.y()) <= tol) {
    return y.z() > 0.0 ? Region::NorthPole : Region::SouthPole;
  }
  if (std::abs(y.z()) <= tol) {
    if (std::abs(y.y()) <= tol) return y.x() > 0.0 ? Region::Ep : Region::Em;
    return y.y() < 0.0 ? Region::Ep : Region::Em;
  }
  if (y.z() > 0.0) {
    if (std::abs(y.y()) <= tol) return y.x() > 0.0 ? Region::Mp : Region::Mm;
    return y.y() < 0.0 ? Region::NHp : Region::NHm;
  }
  if (std::abs(y.y()) <= tol) return Region::SHp;
  return y.y() < 0.0 ? Region::SHp : Region::SHm;
}

/// Scale r of the sphere for which the X+ equilibrium projects exactly to (1,0).
inline double pendulum_radius(const Alpha& a) { return 1.0 / (2.0 * std::tan(0.5 * a.value())); }

/// Projection from the south pole onto the tangent plane at the north pole of the sphere of radius r.
inline Eigen::Vector2d stereographic(const Vec3& y, double r) {
  if (1.0 + y.z() < 1e-12) throw std::domain_error("stereographic: south pole has no image");
  return 2.0 * r * Eigen::Vector2d(y.x(), y.y()) / (1.0 + y.z());
}

inline Eigen::Vector2d pendulum_field(const Eigen::Vector2d& p, double u) {
  return Eigen::Vector2d(-p.y(), p.x() - u);
}

}  // namespace so3tos
