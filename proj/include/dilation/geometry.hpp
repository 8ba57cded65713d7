#pragma once
// Pentagon rooms, the SL2(R) action and projective action on directions.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "dilation/error.hpp"
#include "dilation/numeric.hpp"

namespace dilation {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class T>
struct Vec2T {
  T x{};
  T y{};

  friend Vec2T operator+(const Vec2T& a, const Vec2T& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2T operator-(const Vec2T& a, const Vec2T& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2T operator*(const T& s, const Vec2T& a) { return {s * a.x, s * a.y}; }
  friend Vec2T operator/(const Vec2T& a, const T& s) { return {a.x / s, a.y / s}; }
  friend bool operator==(const Vec2T& a, const Vec2T& b) { return a.x == b.x && a.y == b.y; }
};

using Vec2 = Vec2T<double>;

template <class T>
T cross(const Vec2T<T>& a, const Vec2T<T>& b) {
  return a.x * b.y - a.y * b.x;
}
template <class T>
T dot(const Vec2T<T>& a, const Vec2T<T>& b) {
  return a.x * b.x + a.y * b.y;
}
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
inline double angle_of(const Vec2& v) { return std::atan2(v.y, v.x); }
inline Vec2 unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Reduces an angle into [0, 2pi).
inline double wrap_two_pi(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}
/// Reduces an angle into [0, pi).
inline double wrap_pi(double theta) {
  double r = std::fmod(theta, kPi);
  if (r < 0) r += kPi;
  if (r >= kPi) r = 0.0;
  return r;
}
/// Reduces an angle into (-pi, pi].
inline double wrap_signed(double theta) {
  double r = wrap_two_pi(theta);
  return r > kPi ? r - kTwoPi : r;
}
/// Distance between two directions taken mod pi.
inline double projective_distance(double a, double b) {
  double d = wrap_pi(a - b);
  return std::min(d, kPi - d);
}

template <class T>
struct BasisT {
  Vec2T<T> e1;
  Vec2T<T> e2;
  T det() const { return cross(e1, e2); }
};
using Basis = BasisT<double>;

/// Log-dilation parameters. The optional exact form carries a + b*sqrt(d)
/// entries; the doubles are always populated.
struct LogDilationParams {
  double mu1 = 0.0;
  double mu2 = 0.0;
  std::optional<std::array<QuadraticSurd, 2>> exact;

  LogDilationParams() = default;
  LogDilationParams(double m1, double m2) : mu1(m1), mu2(m2) {}
  LogDilationParams(QuadraticSurd m1, QuadraticSurd m2)
      : mu1(m1.to_double()), mu2(m2.to_double()), exact(std::array{std::move(m1), std::move(m2)}) {}

  bool is_exact() const { return exact.has_value(); }
  int sign1() const { return exact ? (*exact)[0].sign() : (mu1 > 0) - (mu1 < 0); }
  int sign2() const { return exact ? (*exact)[1].sign() : (mu2 > 0) - (mu2 < 0); }
  double nu1() const { return std::exp(mu1); }
  double nu2() const { return std::exp(mu2); }
};

/// True when (mu1, mu2) lies in the admissible region (not both negative).
inline bool in_admissible_region(const LogDilationParams& p) { return !(p.sign1() < 0 && p.sign2() < 0); }

struct SL2Matrix {
  double a = 1, b = 0, c = 0, d = 1;

  double det() const { return a * d - b * c; }
  Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  friend SL2Matrix operator*(const SL2Matrix& m, const SL2Matrix& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
  SL2Matrix inverse() const { return {d, -b, -c, a}; }
  static SL2Matrix identity() { return {}; }
  static SL2Matrix rotation(double phi) {
    return {std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi)};
  }
};

/// Validating constructor: determinant must be 1 up to 1e-12 (relative).
inline SL2Matrix make_sl2(double a, double b, double c, double d) {
  for (double v : {a, b, c, d})
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "matrix entries must be finite");
  double det = a * d - b * c;
  double scale = std::max(1.0, std::abs(a * d) + std::abs(b * c));
  if (std::abs(det - 1.0) > 1e-12 * scale)
    fail(ErrorCode::InvalidArgument, "matrix determinant is not 1");
  return {a, b, c, d};
}

inline SL2Matrix geodesic_matrix(double t) {
  if (!std::isfinite(t)) fail(ErrorCode::InvalidArgument, "t must be finite");
  return {std::exp(-t / 2), 0.0, 0.0, std::exp(t / 2)};
}

/// Direction of A*(cos theta, sin theta), in [0, 2pi).
inline double projective_action(const SL2Matrix& A, double theta) {
  return wrap_two_pi(angle_of(A * unit(theta)));
}

/// Pentagon vertices from the basis and the inverse side ratios.
template <class T>
std::array<Vec2T<T>, 5> pentagon_vertices(const BasisT<T>& b, const T& inv_nu1, const T& inv_nu2) {
  Vec2T<T> zero{T(0), T(0)};
  Vec2T<T> v2 = b.e1 + b.e2;
  return {zero, b.e1, v2, v2 - inv_nu1 * b.e1, inv_nu2 * b.e2};
}

/// Side indices: 0 bottom V0V1, 1 right V1V2, 2 top V2V3, 3 door V3V4, 4 left V4V0.
enum class Side { Bottom = 0, Right = 1, Top = 2, Door = 3, Left = 4 };

namespace detail {

inline bool segments_cross(const Vec2& p, const Vec2& q, const Vec2& r, const Vec2& s, double tol) {
  auto orient = [](const Vec2& a, const Vec2& b, const Vec2& c) { return cross(b - a, c - a); };
  double d1 = orient(r, s, p), d2 = orient(r, s, q), d3 = orient(p, q, r), d4 = orient(p, q, s);
  if (((d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol)) &&
      ((d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol)))
    return true;
  auto on_segment = [tol](const Vec2& a, const Vec2& b, const Vec2& c, double o) {
    return std::abs(o) <= tol && std::min(a.x, b.x) - tol <= c.x && c.x <= std::max(a.x, b.x) + tol &&
           std::min(a.y, b.y) - tol <= c.y && c.y <= std::max(a.y, b.y) + tol;
  };
  return on_segment(r, s, p, d1) || on_segment(r, s, q, d2) || on_segment(p, q, r, d3) ||
         on_segment(p, q, s, d4);
}

inline bool is_simple_positive(const std::array<Vec2, 5>& v) {
  double scale = 0;
  for (const auto& p : v) scale = std::max(scale, norm(p));
  double tol = 1e-13 * std::max(1.0, scale * scale);
  for (std::size_t i = 0; i < 5; ++i)
    if (norm(v[(i + 1) % 5] - v[i]) <= 1e-13 * std::max(1.0, scale)) return false;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 2; j < 5; ++j) {
      if (i == 0 && j == 4) continue;  // adjacent through V0
      if (segments_cross(v[i], v[(i + 1) % 5], v[j], v[(j + 1) % 5], tol)) return false;
    }
  }
  double area2 = 0;
  for (std::size_t i = 0; i < 5; ++i) area2 += cross(v[i], v[(i + 1) % 5]);
  return area2 > 0;
}

}  // namespace detail

class Room {
 public:
  const Basis& basis() const { return basis_; }
  const LogDilationParams& params() const { return params_; }
  const std::array<Vec2, 5>& vertices() const { return vertices_; }
  const Vec2& vertex(std::size_t i) const { return vertices_.at(i); }
  double nu1() const { return nu1_; }
  double nu2() const { return nu2_; }
  Vec2 door_start() const { return vertices_[3]; }
  Vec2 door_end() const { return vertices_[4]; }
  double det() const { return basis_.det(); }

  /// Signed turn at each vertex (cross product of incoming and outgoing edges).
  std::array<double, 5> turns() const {
    std::array<double, 5> out{};
    for (std::size_t i = 0; i < 5; ++i) {
      const Vec2& prev = vertices_[(i + 4) % 5];
      const Vec2& cur = vertices_[i];
      const Vec2& next = vertices_[(i + 1) % 5];
      out[i] = cross(cur - prev, next - cur);
    }
    return out;
  }
  bool is_convex() const {
    double scale = std::abs(det());
    for (double t : turns())
      if (t < -1e-12 * scale) return false;
    return true;
  }

 private:
  friend Room build_room(const Basis&, const LogDilationParams&);
  Basis basis_;
  LogDilationParams params_;
  std::array<Vec2, 5> vertices_{};
  double nu1_ = 1.0;
  double nu2_ = 1.0;
};

inline Room build_room(const Basis& basis, const LogDilationParams& params) {
  for (double v : {basis.e1.x, basis.e1.y, basis.e2.x, basis.e2.y, params.mu1, params.mu2})
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "room data must be finite");
  if (!(basis.det() > 0)) fail(ErrorCode::NonOrientedBasis, "det(e1,e2) must be positive");
  if (params.sign1() == 0 && params.sign2() == 0)
    fail(ErrorCode::DegenerateDoor, "mu1 = mu2 = 0 gives a door of length zero");
  if (!in_admissible_region(params)) fail(ErrorCode::OutsideQ, "mu1 and mu2 are both negative");
  Room r;
  r.basis_ = basis;
  r.params_ = params;
  r.nu1_ = std::exp(params.mu1);
  r.nu2_ = std::exp(params.mu2);
  r.vertices_ = pentagon_vertices<double>(basis, 1.0 / r.nu1_, 1.0 / r.nu2_);
  // simplicity is affine invariant, so test the pentagon in basis coordinates
  Basis unit_basis{{1, 0}, {0, 1}};
  if (!detail::is_simple_positive(pentagon_vertices<double>(unit_basis, 1.0 / r.nu1_, 1.0 / r.nu2_)))
    fail(ErrorCode::NonSimplePentagon, "derived pentagon is not simple");
  return r;
}

inline Room build_room(Vec2 e1, Vec2 e2, double mu1, double mu2) {
  return build_room(Basis{e1, e2}, LogDilationParams(mu1, mu2));
}

/// Rescales the basis so that det(e1, e2) = 1.
inline Room canonicalize(const Room& room) {
  double s = 1.0 / std::sqrt(room.det());
  Basis b{s * room.basis().e1, s * room.basis().e2};
  return build_room(b, room.params());
}

inline Room apply_sl2(const SL2Matrix& A, const Room& room) {
  Basis b{A * room.basis().e1, A * room.basis().e2};
  return build_room(b, room.params());
}

/// Direction of the door V3 -> V4, mod pi, in [0, pi).
inline double door_direction(const Room& room) { return wrap_pi(angle_of(room.door_end() - room.door_start())); }

/// Open interval (lo, lo + pi) of directions pointing into the room from the door.
struct AngleInterval {
  double lo = 0;
  double hi = 0;
  double length() const { return hi - lo; }
  bool contains(double theta) const {
    double shifted = lo + wrap_two_pi(theta - lo);
    return shifted > lo && shifted < hi;
  }
};

inline AngleInterval inward_directions(const Room& room) {
  double lo = wrap_signed(angle_of(room.door_end() - room.door_start()));
  return {lo, lo + kPi};
}

/// Representative of theta (mod pi) lying in the inward interval; nullopt for the door direction.
inline std::optional<double> inward_representative(const Room& room, double theta, double tol = 1e-12) {
  AngleInterval in = inward_directions(room);
  double shifted = in.lo + wrap_pi(theta - in.lo);
  if (shifted - in.lo <= tol || in.hi - shifted <= tol) return std::nullopt;
  return shifted;
}

}  // namespace dilation
