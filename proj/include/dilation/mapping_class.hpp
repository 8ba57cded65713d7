#pragma once
// Dehn-twist moves on rooms, admissible words, Gauss contraction, SL2(N)
// decomposition and holonomy classification.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stop_token>
#include <string>
#include <string_view>
#include <vector>

#include "dilation/error.hpp"
#include "dilation/geometry.hpp"
#include "dilation/numeric.hpp"

namespace dilation {

enum class Twist { T1, T2, T1inv, T2inv };

/// Literal applies the basis formulas as stated for the twist moves.
/// CutAndPaste uses the shear sign that realizes each move as an actual
/// cut-and-paste of the pentagon for this vertex rule, so the surface is
/// unchanged. Both act identically on (mu1, mu2).
enum class TwistConvention { Literal, CutAndPaste };

using Word = std::vector<Twist>;

inline char to_char(Twist g) {
  switch (g) {
    case Twist::T1: return 'A';
    case Twist::T1inv: return 'a';
    case Twist::T2: return 'B';
    case Twist::T2inv: return 'b';
  }
  return '?';
}

inline Twist inverse(Twist g) {
  switch (g) {
    case Twist::T1: return Twist::T1inv;
    case Twist::T1inv: return Twist::T1;
    case Twist::T2: return Twist::T2inv;
    case Twist::T2inv: return Twist::T2;
  }
  return g;
}

inline std::string to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Twist g : w) s.push_back(to_char(g));
  return s;
}

inline Word parse_word(std::string_view s) {
  Word w;
  w.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case 'A': w.push_back(Twist::T1); break;
      case 'a': w.push_back(Twist::T1inv); break;
      case 'B': w.push_back(Twist::T2); break;
      case 'b': w.push_back(Twist::T2inv); break;
      default: fail(ErrorCode::InvalidArgument, std::string("unknown twist letter '") + c + "'");
    }
  }
  return w;
}

/// Integer 2x2 matrix [[a, b], [c, d]].
struct IntMatrix2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;
  friend IntMatrix2 operator*(const IntMatrix2& m, const IntMatrix2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
  friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;
  std::int64_t det() const { return a * d - b * c; }
};

inline constexpr IntMatrix2 kMatrixR{1, 1, 0, 1};
inline constexpr IntMatrix2 kMatrixL{1, 0, 1, 1};

/// Linear action of a generator on (mu1, mu2).
inline IntMatrix2 mu_matrix(Twist g) {
  switch (g) {
    case Twist::T1: return kMatrixL;
    case Twist::T2: return kMatrixR;
    case Twist::T1inv: return {1, 0, -1, 1};
    case Twist::T2inv: return {1, -1, 0, 1};
  }
  return {};
}

/// Matrix acting on mu for the whole word (last letter leftmost).
inline IntMatrix2 mu_matrix(const Word& w) {
  IntMatrix2 m;
  for (Twist g : w) m = mu_matrix(g) * m;
  return m;
}

/// Basis part of a twist, generic in the scalar type. nu1, nu2 are the
/// dilation parameters before the move.
template <class T>
BasisT<T> twist_basis(Twist g, const BasisT<T>& b, const T& nu1, const T& nu2, TwistConvention conv) {
  const T one(1);
  const bool lit = conv == TwistConvention::Literal;
  switch (g) {
    case Twist::T1:
      return {lit ? b.e1 + nu1 * b.e2 : b.e1 - nu1 * b.e2, nu1 * b.e2};
    case Twist::T2:
      return {nu2 * b.e1, lit ? b.e2 + nu2 * b.e1 : b.e2 - nu2 * b.e1};
    case Twist::T1inv:
      return {lit ? b.e1 - b.e2 : b.e1 + b.e2, (one / nu1) * b.e2};
    case Twist::T2inv:
      return {(one / nu2) * b.e1, lit ? b.e2 - b.e1 : b.e2 + b.e1};
  }
  return b;
}

struct TwistResult {
  Basis basis;
  LogDilationParams params;
};

namespace detail {

inline LogDilationParams twist_params(Twist g, const LogDilationParams& p) {
  if (p.exact) {
    const auto& [m1, m2] = *p.exact;
    try {
      switch (g) {
        case Twist::T1: return {m1, m1 + m2};
        case Twist::T2: return {m1 + m2, m2};
        case Twist::T1inv: return {m1, m2 - m1};
        case Twist::T2inv: return {m1 - m2, m2};
      }
    } catch (const Error&) {
      // different radicands: the sum has no a + b*sqrt(d) form, continue in floats
    }
  }
  switch (g) {
    case Twist::T1: return {p.mu1, p.mu1 + p.mu2};
    case Twist::T2: return {p.mu1 + p.mu2, p.mu2};
    case Twist::T1inv: return {p.mu1, p.mu2 - p.mu1};
    case Twist::T2inv: return {p.mu1 - p.mu2, p.mu2};
  }
  return p;
}

/// Beyond this |e1| |e2| the determinant of a unimodular basis is lost to
/// rounding once it is written out as two vectors.
inline constexpr double kMaxShear = 1e8;

/// Unimodular basis kept as e1 = r11 q1, e2 = r12 q1 + r22 q2 with q2 = q1
/// turned by 90 degrees and r11 r22 = 1. Long twist words shear the basis
/// far enough that its determinant cannot be recovered from the vectors.
class FrameBasis {
 public:
  explicit FrameBasis(const Basis& b) {
    double det = b.det();
    double s = 1.0 / std::sqrt(det);
    r11_ = s * norm(b.e1);
    q1_ = (1.0 / norm(b.e1)) * b.e1;
    r12_ = s * dot(b.e2, q1_);
    r22_ = 1.0 / r11_;
  }

  void apply(Twist g, double nu1, double nu2, TwistConvention conv) {
    // coefficients of the new vectors in the old ones
    Basis c = twist_basis<double>(g, Basis{{1, 0}, {0, 1}}, nu1, nu2, conv);
    Vec2 f1{c.e1.x * r11_ + c.e1.y * r12_, c.e1.y * r22_};
    Vec2 f2{c.e2.x * r11_ + c.e2.y * r12_, c.e2.y * r22_};
    double det = c.det();  // old frame determinant is 1
    double len = norm(f1);
    double co = f1.x / len, si = f1.y / len;
    double s = 1.0 / std::sqrt(det);
    r11_ = s * len;
    r12_ = s * (co * f2.x + si * f2.y);
    r22_ = 1.0 / r11_;
    q1_ = Vec2{co * q1_.x - si * q1_.y, si * q1_.x + co * q1_.y};
  }

  Basis basis() const {
    Vec2 q2{-q1_.y, q1_.x};
    return {r11_ * q1_, r12_ * q1_ + r22_ * q2};
  }

  /// |e1| |e2|; equals 1 exactly for orthonormal frames
  double shear() const { return r11_ * std::hypot(r12_, r22_); }

 private:
  Vec2 q1_{1, 0};
  double r11_ = 1, r12_ = 0, r22_ = 1;
};

}  // namespace detail


/// One twist move on a room datum. Throws ResultOutsideQ when the new
/// parameters leave the admissible region.
inline TwistResult twist(Twist g, const Vec2& e1, const Vec2& e2, const LogDilationParams& mu,
                         TwistConvention conv = TwistConvention::Literal) {
  Basis b = twist_basis<double>(g, Basis{e1, e2}, mu.nu1(), mu.nu2(), conv);
  LogDilationParams out = detail::twist_params(g, mu);
  if (!in_admissible_region(out)) fail(ErrorCode::ResultOutsideQ, "twist result has both mu negative");
  return {b, out};
}

/// Exact datum: rational basis and rational dilation parameters nu = e^mu.
struct ExactDatum {
  BasisT<Rational> basis;
  Rational nu1;
  Rational nu2;
  friend bool operator==(const ExactDatum& x, const ExactDatum& y) {
    return x.basis.e1 == y.basis.e1 && x.basis.e2 == y.basis.e2 && x.nu1 == y.nu1 && x.nu2 == y.nu2;
  }
};

inline ExactDatum twist_exact(Twist g, const ExactDatum& x, TwistConvention conv = TwistConvention::Literal) {
  if (x.nu1 <= 0 || x.nu2 <= 0) fail(ErrorCode::InvalidArgument, "dilation parameters must be positive");
  ExactDatum out{twist_basis<Rational>(g, x.basis, x.nu1, x.nu2, conv), x.nu1, x.nu2};
  switch (g) {
    case Twist::T1: out.nu2 = x.nu1 * x.nu2; break;
    case Twist::T2: out.nu1 = x.nu1 * x.nu2; break;
    case Twist::T1inv: out.nu2 = x.nu2 / x.nu1; break;
    case Twist::T2inv: out.nu1 = x.nu1 / x.nu2; break;
  }
  if (out.nu1 < 1 && out.nu2 < 1) fail(ErrorCode::ResultOutsideQ, "twist result has both mu negative");
  return out;
}

/// Applies a twist to a room and rescales the result to det 1.
inline Room twist_room(Twist g, const Room& room, TwistConvention conv = TwistConvention::Literal) {
  TwistResult r = twist(g, room.basis().e1, room.basis().e2, room.params(), conv);
  return canonicalize(build_room(r.basis, r.params));
}

struct WordResult {
  Room room;
  std::vector<std::array<double, 2>> mu_trajectory;  // includes the start
};

inline bool in_positive_quadrant(const LogDilationParams& p) { return p.sign1() >= 0 && p.sign2() >= 0; }

/// Applies an admissible word; every intermediate mu must stay in the
/// closed positive quadrant. The failing step is reported 1-based.
inline WordResult apply_word(const Word& w, const Room& room, TwistConvention conv = TwistConvention::Literal) {
  WordResult out{room, {}};
  out.mu_trajectory.reserve(w.size() + 1);
  out.mu_trajectory.push_back({room.params().mu1, room.params().mu2});
  detail::FrameBasis b(room.basis());
  LogDilationParams p = room.params();
  for (std::size_t k = 0; k < w.size(); ++k) {
    b.apply(w[k], p.nu1(), p.nu2(), conv);
    p = detail::twist_params(w[k], p);
    if (!in_positive_quadrant(p))
      fail(ErrorCode::InadmissibleAtStep, "word leaves the positive quadrant at step " + std::to_string(k + 1),
           k + 1);
    out.mu_trajectory.push_back({p.mu1, p.mu2});
  }
  if (b.shear() > detail::kMaxShear)
    fail(ErrorCode::PrecisionLoss, "twisted basis is too sheared to represent in double precision");
  out.room = w.empty() ? room : build_room(b.basis(), p);
  return out;
}

/// Parameter trajectory of a word, checking admissibility of every prefix
/// without building rooms.
inline std::vector<std::array<double, 2>> mu_trajectory(const Word& w, LogDilationParams p) {
  std::vector<std::array<double, 2>> out{{p.mu1, p.mu2}};
  for (std::size_t k = 0; k < w.size(); ++k) {
    p = detail::twist_params(w[k], p);
    if (!in_positive_quadrant(p))
      fail(ErrorCode::InadmissibleAtStep, "word leaves the positive quadrant at step " + std::to_string(k + 1),
           k + 1);
    out.push_back({p.mu1, p.mu2});
  }
  return out;
}

struct GaussBlock {
  Twist generator;
  std::uint64_t count;
};

struct GaussResult {
  Word word;
  std::vector<GaussBlock> blocks;
  LogDilationParams final_mu;
};

namespace detail {

inline double mu_norm(const LogDilationParams& p) { return std::hypot(p.mu1, p.mu2); }

/// Largest k >= 0 with x - k*y > 0 (exact when both carry exact forms).
inline std::uint64_t gauss_quotient(const LogDilationParams& p, bool first_is_larger) {
  if (p.exact) {
    const auto& [m1, m2] = *p.exact;
    BigInt k = first_is_larger ? largest_positive_multiple(m1, m2) : largest_positive_multiple(m2, m1);
    return k.convert_to<std::uint64_t>();
  }
  double x = first_is_larger ? p.mu1 : p.mu2;
  double y = first_is_larger ? p.mu2 : p.mu1;
  double margin = 1e-12 * std::max(x, 1.0);
  double k = std::ceil(x / y) - 1.0;
  while (k > 0 && x - k * y <= margin) k -= 1.0;
  while (x - (k + 1) * y > margin) k += 1.0;
  return static_cast<std::uint64_t>(std::max(k, 0.0));
}

inline bool first_larger(const LogDilationParams& p) {
  if (p.exact) return (*p.exact)[0] > (*p.exact)[1];
  return p.mu1 > p.mu2;
}

}  // namespace detail

/// Gauss contraction: subtract the smaller coordinate from the larger as
/// many times as positivity allows, until |mu| < eps.
inline GaussResult gauss_contraction(const LogDilationParams& mu0, double eps, std::size_t max_blocks = 100000) {
  if (!(eps > 0)) fail(ErrorCode::InvalidArgument, "eps must be positive");
  if (mu0.sign1() <= 0 || mu0.sign2() <= 0) fail(ErrorCode::InvalidArgument, "both mu entries must be positive");
  GaussResult out{{}, {}, mu0};
  LogDilationParams& p = out.final_mu;
  while (detail::mu_norm(p) >= eps) {
    if (out.blocks.size() >= max_blocks) fail(ErrorCode::BudgetExhausted, "gauss contraction block limit reached");
    bool first = detail::first_larger(p);
    std::uint64_t k = detail::gauss_quotient(p, first);
    if (k == 0) fail(ErrorCode::RationalRatio, "contraction reached a zero coordinate: ratio is rational");
    Twist g = first ? Twist::T2inv : Twist::T1inv;
    out.blocks.push_back({g, k});
    out.word.insert(out.word.end(), k, g);
    for (std::uint64_t i = 0; i < k; ++i) p = detail::twist_params(g, p);
    if (p.sign1() <= 0 || p.sign2() <= 0)
      fail(ErrorCode::RationalRatio, "contraction reached a zero coordinate: ratio is rational");
  }
  return out;
}

/// Writes a nonnegative integer matrix of det 1 as a word in R and L.
inline std::string decompose_sl2n(IntMatrix2 m) {
  if (m.a < 0 || m.b < 0 || m.c < 0 || m.d < 0 || m.det() != 1)
    fail(ErrorCode::NotInMonoid, "matrix is not a nonnegative integer matrix of determinant 1");
  std::string rev;
  while (!(m == IntMatrix2{})) {
    if (m.a >= m.b && m.c >= m.d) {
      m = {m.a - m.b, m.b, m.c - m.d, m.d};
      rev.push_back('L');
    } else if (m.b >= m.a && m.d >= m.c) {
      m = {m.a, m.b - m.a, m.c, m.d - m.c};
      rev.push_back('R');
    } else {
      fail(ErrorCode::NotInMonoid, "matrix is not in the monoid generated by R and L");
    }
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

inline IntMatrix2 rl_product(std::string_view word) {
  IntMatrix2 m;
  for (char c : word) {
    if (c == 'R') m = m * kMatrixR;
    else if (c == 'L') m = m * kMatrixL;
    else fail(ErrorCode::InvalidArgument, "R/L word expected");
  }
  return m;
}

struct ReachResult {
  Word word;
  std::vector<std::array<double, 2>> mu_trajectory;
  double final_error = 0;
  std::optional<Room> final_room;  // absent when the final basis is too sheared for doubles
  double final_shear = 1;          // |e1| |e2| of the final unimodular basis
  SL2Matrix basis_map;             // final basis = basis_map * start basis (both det 1)
  std::size_t contraction_steps = 0;
  std::size_t push_steps = 0;
  std::size_t monoid_steps = 0;
};

namespace detail {

struct ColumnPair {
  std::int64_t p, q;  // primary column, approximates the target direction
  std::int64_t r, s;  // companion column
};

/// Coprime (p, q) approximating the direction of (x, y) so that the distance
/// from the target to the line through (p, q) is below tol.
inline std::pair<std::int64_t, std::int64_t> direction_convergent(double x, double y, double tol) {
  double len = std::hypot(x, y);
  auto good = [&](std::int64_t p, std::int64_t q) {
    double pn = std::hypot(double(p), double(q));
    return std::abs(x * double(q) - y * double(p)) / pn <= tol;
  };
  if (y <= 0) return {1, 0};
  if (x <= 0) return {0, 1};
  // continued fraction of x / y
  std::int64_t p0 = 1, q0 = 0, p1 = 0, q1 = 1;
  double v = x / y;
  for (int i = 0; i < 60; ++i) {
    double fl = std::floor(v);
    auto a = static_cast<std::int64_t>(fl);
    std::int64_t p2 = a * p0 + p1, q2 = a * q0 + q1;
    p1 = p0;
    q1 = q0;
    p0 = p2;
    q0 = q2;
    if (good(p0, q0)) return {p0, q0};
    double frac = v - fl;
    if (frac < 1e-15 * len) break;
    v = 1.0 / frac;
  }
  return {p0, q0};
}

/// Companion column (r, s) with 0 <= r <= p, 0 <= s <= q and p*s - q*r = sign.
inline std::pair<std::int64_t, std::int64_t> companion(std::int64_t p, std::int64_t q, int sign) {
  // extended Euclid on (p, q)
  std::int64_t old_r = p, r = q, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t qt = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - qt * r};
    std::tie(old_s, s) = std::pair{s, old_s - qt * s};
    std::tie(old_t, t) = std::pair{t, old_t - qt * t};
  }
  // p*old_s + q*old_t = 1 ; want p*S - q*R = sign  =>  S = sign*old_s, R = -sign*old_t
  std::int64_t S = sign * old_s, R = -sign * old_t;
  // shift by multiples of (p, q) into the nonnegative range
  if (p > 0) {
    std::int64_t k = (R >= 0) ? R / p : -((-R + p - 1) / p);
    R -= k * p;
    S -= k * q;
  } else {
    std::int64_t k = (S >= 0) ? S / q : -((-S + q - 1) / q);
    S -= k * q;
    R -= k * p;
  }
  if (R < 0 || S < 0) {
    R += p;
    S += q;
  }
  return {R, S};
}

}  // namespace detail

/// Three-phase constructive search: contract mu towards 0, push along one
/// axis with repeated positive twists, then apply a positive SL2(N) word.
inline ReachResult reach_target(const Room& room0, const LogDilationParams& target, double eps, std::size_t budget,
                                std::stop_token stop = {}, TwistConvention conv = TwistConvention::Literal) {
  if (!(eps > 0)) fail(ErrorCode::InvalidArgument, "eps must be positive");
  if (!(target.mu1 >= 0 && target.mu2 >= 0)) fail(ErrorCode::InvalidArgument, "target must lie in the positive quadrant");
  const LogDilationParams& mu0 = room0.params();
  if (mu0.sign1() <= 0 || mu0.sign2() <= 0)
    fail(ErrorCode::InvalidArgument, "start parameters must be positive");

  ReachResult out{};
  detail::FrameBasis basis(room0.basis());
  LogDilationParams p = mu0;
  out.mu_trajectory.push_back({p.mu1, p.mu2});
  auto err_to_target = [&] { return std::hypot(p.mu1 - target.mu1, p.mu2 - target.mu2); };

  auto step = [&](Twist g) {
    if (stop.stop_requested()) fail(ErrorCode::Cancelled, "search cancelled");
    if (out.word.size() >= budget)
      fail(ErrorCode::BudgetExhausted, "step budget of " + std::to_string(budget) + " exhausted");
    basis.apply(g, p.nu1(), p.nu2(), conv);
    p = detail::twist_params(g, p);
    if (!in_positive_quadrant(p)) fail(ErrorCode::InadmissibleAtStep, "internal: inadmissible step", out.word.size() + 1);
    out.word.push_back(g);
    out.mu_trajectory.push_back({p.mu1, p.mu2});
  };

  if (err_to_target() >= eps) {
    // target direction and the companion column of the positive matrix
    auto [tp, tq] = detail::direction_convergent(target.mu1, target.mu2, eps / 4);
    const double col_len = std::hypot(double(tp), double(tq));

    // contraction threshold is fixed once the push axis is known; pick it
    // conservatively for both axes
    auto [cr1, cs1] = detail::companion(tp, tq, -1);  // (r,s) first column, (tp,tq) second
    auto [cr2, cs2] = detail::companion(tp, tq, 1);   // (tp,tq) first column, (r,s) second
    double comp = std::max(std::hypot(double(cr1), double(cs1)), std::hypot(double(cr2), double(cs2)));
    const double thresh = eps / (4.0 * (col_len + comp));

    // phase 1: single-step contraction
    while (std::hypot(p.mu1, p.mu2) >= thresh) {
      bool first = detail::first_larger(p);
      if (detail::gauss_quotient(p, first) == 0)
        fail(ErrorCode::RationalRatio, "contraction reached a zero coordinate: ratio is rational");
      step(first ? Twist::T2inv : Twist::T1inv);
      ++out.contraction_steps;
    }

    // phase 2: push with the larger coordinate as increment
    const double scale = (target.mu1 * double(tp) + target.mu2 * double(tq)) / (col_len * col_len);
    bool push_second = p.mu1 >= p.mu2;  // T1 adds mu1 to mu2
    if (tq == 0) push_second = false;   // target on the mu1 axis
    if (tp == 0) push_second = true;    // target on the mu2 axis
    const double inc = push_second ? p.mu1 : p.mu2;
    const double cur = push_second ? p.mu2 : p.mu1;
    double n = std::round((scale - cur) / inc);
    if (n < 0) n = 0;
    if (n > double(budget)) fail(ErrorCode::BudgetExhausted, "push phase needs more steps than the budget");
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
      step(push_second ? Twist::T1 : Twist::T2);
      ++out.push_steps;
    }

    // phase 3: positive matrix with (tp,tq) as the column that multiplies the pushed coordinate
    IntMatrix2 m = push_second ? IntMatrix2{cr1, tp, cs1, tq} : IntMatrix2{tp, cr2, tq, cs2};
    std::string rl = decompose_sl2n(m);
    for (auto it = rl.rbegin(); it != rl.rend(); ++it) {
      step(*it == 'L' ? Twist::T1 : Twist::T2);
      ++out.monoid_steps;
    }
  }

  out.final_error = err_to_target();
  if (out.final_error >= eps)
    fail(ErrorCode::BudgetExhausted, "search finished outside the target tolerance");
  out.final_shear = basis.shear();
  if (out.word.empty()) out.final_room = room0;
  else if (out.final_shear <= detail::kMaxShear) out.final_room = build_room(basis.basis(), p);
  // basis_map sends the start basis to the final one
  const Basis& b0 = room0.basis();
  double s0 = 1.0 / std::sqrt(b0.det());
  Basis u{s0 * b0.e1, s0 * b0.e2};
  Basis v = basis.basis();
  // M = V * U^{-1}, U^{-1} = [[u2y, -u2x], [-u1y, u1x]] (det U = 1)
  out.basis_map = {v.e1.x * u.e2.y - v.e2.x * u.e1.y, -v.e1.x * u.e2.x + v.e2.x * u.e1.x,
                   v.e1.y * u.e2.y - v.e2.y * u.e1.y, -v.e1.y * u.e2.x + v.e2.y * u.e1.x};
  return out;
}

enum class HolonomyVerdict { Discrete, NonDiscrete, UndecidedFloat };
enum class OrbitClosure { Closed, Dense, Unknown };

struct HolonomyClass {
  HolonomyVerdict verdict = HolonomyVerdict::UndecidedFloat;
  std::optional<Rational> ratio;  // mu1 / mu2 when discrete and mu2 != 0
  OrbitClosure orbit() const {
    switch (verdict) {
      case HolonomyVerdict::Discrete: return OrbitClosure::Closed;
      case HolonomyVerdict::NonDiscrete: return OrbitClosure::Dense;
      default: return OrbitClosure::Unknown;
    }
  }
};

inline std::string_view to_string(HolonomyVerdict v) {
  switch (v) {
    case HolonomyVerdict::Discrete: return "discrete";
    case HolonomyVerdict::NonDiscrete: return "non-discrete";
    case HolonomyVerdict::UndecidedFloat: return "undecided";
  }
  return "?";
}
inline std::string_view to_string(OrbitClosure o) {
  switch (o) {
    case OrbitClosure::Closed: return "closed";
    case OrbitClosure::Dense: return "dense";
    case OrbitClosure::Unknown: return "unknown";
  }
  return "?";
}

namespace detail {

/// Small-denominator rational match for a float ratio. The tolerance sits far
/// below 1/q^2 so that convergents of irrationals are not mistaken for it.
inline std::optional<Rational> float_ratio(double x, double y, std::int64_t max_den = 10000, double tol = 1e-13) {
  if (y == 0) return std::nullopt;
  double v = x / y;
  bool neg = v < 0;
  double a = std::abs(v);
  std::int64_t p0 = 1, q0 = 0, p1 = 0, q1 = 1;
  double rest = a;
  for (int i = 0; i < 64; ++i) {
    double fl = std::floor(rest);
    if (fl > 9e15) break;
    auto t = static_cast<std::int64_t>(fl);
    std::int64_t p2 = t * p0 + p1, q2 = t * q0 + q1;
    if (q2 > max_den) break;
    p1 = p0;
    q1 = q0;
    p0 = p2;
    q0 = q2;
    if (std::abs(a - double(p0) / double(q0)) <= tol * std::max(1.0, a)) {
      Rational r(p0, q0);
      return neg ? Rational(-r) : r;
    }
    double frac = rest - fl;
    if (frac <= 0) break;
    rest = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace detail

inline HolonomyClass holonomy_class(const LogDilationParams& mu) {
  HolonomyClass out;
  if (mu.exact) {
    const auto& [m1, m2] = *mu.exact;
    if (m1.is_zero() || m2.is_zero()) {
      out.verdict = HolonomyVerdict::Discrete;
      if (!m2.is_zero()) out.ratio = Rational(0);
      return out;
    }
    bool r1 = m1.is_rational(), r2 = m2.is_rational();
    if (r1 && r2) {
      out.verdict = HolonomyVerdict::Discrete;
      out.ratio = m1.rational_part() / m2.rational_part();
    } else if (r1 != r2 || m1.radicand() != m2.radicand()) {
      out.verdict = HolonomyVerdict::NonDiscrete;
    } else if (m1.rational_part() * m2.surd_part() == m2.rational_part() * m1.surd_part()) {
      out.verdict = HolonomyVerdict::Discrete;
      out.ratio = m1.surd_part() / m2.surd_part();
    } else {
      out.verdict = HolonomyVerdict::NonDiscrete;
    }
    return out;
  }
  if (mu.mu1 == 0 || mu.mu2 == 0) {
    out.verdict = HolonomyVerdict::Discrete;
    if (mu.mu2 != 0) out.ratio = Rational(0);
    return out;
  }
  if (auto r = detail::float_ratio(mu.mu1, mu.mu2)) {
    out.verdict = HolonomyVerdict::Discrete;
    out.ratio = *r;
  }
  return out;
}

}  // namespace dilation
