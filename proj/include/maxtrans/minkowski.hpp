#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string_view>

namespace maxtrans {

/// Vector of Lorentz-Minkowski 3-space with metric dx^2 + dy^2 - dz^2.
struct MVec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr MVec3& operator+=(const MVec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr MVec3& operator-=(const MVec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr MVec3& operator*=(double a) {
    x *= a;
    y *= a;
    z *= a;
    return *this;
  }

  friend constexpr MVec3 operator+(MVec3 a, const MVec3& b) { return a += b; }
  friend constexpr MVec3 operator-(MVec3 a, const MVec3& b) { return a -= b; }
  friend constexpr MVec3 operator-(const MVec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr MVec3 operator*(MVec3 a, double s) { return a *= s; }
  friend constexpr MVec3 operator*(double s, MVec3 a) { return a *= s; }
  friend constexpr MVec3 operator/(const MVec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
  friend constexpr bool operator==(const MVec3&, const MVec3&) = default;

  friend std::ostream& operator<<(std::ostream& os, const MVec3& v) {
    return os << '(' << v.x << ", " << v.y << ", " << v.z << ')';
  }
};

inline constexpr MVec3 kE1{1.0, 0.0, 0.0};
inline constexpr MVec3 kE2{0.0, 1.0, 0.0};
inline constexpr MVec3 kE3{0.0, 0.0, 1.0};

/// Default relative tolerance for causal classification.
inline constexpr double kCausalityTol = 1e-9;

/// Lorentzian inner product <u, v> = u.x v.x + u.y v.y - u.z v.z.
constexpr double inner(const MVec3& u, const MVec3& v) { return u.x * v.x + u.y * v.y - u.z * v.z; }

/// det(u, v, w) with u, v, w as rows.
constexpr double det3(const MVec3& u, const MVec3& v, const MVec3& w) {
  return u.x * (v.y * w.z - v.z * w.y) - u.y * (v.x * w.z - v.z * w.x) + u.z * (v.x * w.y - v.y * w.x);
}

/// Lorentzian cross product: the unique vector with <u x v, w> = det(u, v, w)
/// for every w. Equal to the Euclidean cross product with its z-component negated.
constexpr MVec3 cross(const MVec3& u, const MVec3& v) {
  return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, -(u.x * v.y - u.y * v.x)};
}

constexpr double euclid_dot(const MVec3& u, const MVec3& v) { return u.x * v.x + u.y * v.y + u.z * v.z; }
constexpr double euclid_norm2(const MVec3& v) { return euclid_dot(v, v); }
inline double euclid_norm(const MVec3& v) { return std::sqrt(euclid_norm2(v)); }

/// |v| = sqrt(|<v, v>|).
inline double lorentz_norm(const MVec3& v) { return std::sqrt(std::abs(inner(v, v))); }

inline double max_abs_component(const MVec3& v) {
  return std::max({std::abs(v.x), std::abs(v.y), std::abs(v.z)});
}

inline bool is_finite(const MVec3& v) { return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z); }

enum class Causality { Spacelike, Timelike, Lightlike };

constexpr std::string_view to_string(Causality c) {
  switch (c) {
    case Causality::Spacelike:
      return "spacelike";
    case Causality::Timelike:
      return "timelike";
    case Causality::Lightlike:
      return "lightlike";
  }
  return "?";
}

/// Causal character of v. The threshold is tol * max(|v|_E^2, 1), so
/// near-null vectors at large scale are not misclassified; v = 0 is spacelike.
inline Causality causality(const MVec3& v, double tol = kCausalityTol) {
  const double q = inner(v, v);
  const double m = euclid_norm2(v);
  if (m == 0.0) return Causality::Spacelike;
  const double thresh = tol * std::max(m, 1.0);
  if (q > thresh) return Causality::Spacelike;
  if (q < -thresh) return Causality::Timelike;
  return Causality::Lightlike;
}

}  // namespace maxtrans
