#pragma once
// (rhoA, rhoB)-maps of [0,1], their orbits and periodic cycles, and the
// reduction of one-discontinuity piecewise affine maps to that normal form.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "dilation/error.hpp"
#include "dilation/numeric.hpp"

namespace dilation {

enum class Branch { A, B };
enum class SideFlag { None, Left, Right };

inline char to_char(Branch b) { return b == Branch::A ? 'A' : 'B'; }

/// Range of x_T for which the (rhoA, rhoB)-map is injective, intersected with [0,1].
template <class T>
std::pair<T, T> valid_range(const T& rhoA, const T& rhoB) {
  T lo(0), hi(1);
  if (rhoA > rhoB) {
    T x = (T(1) - rhoB) / (rhoA - rhoB);
    if (x < hi) hi = x;
  } else if (rhoB > rhoA) {
    T x = (rhoB - T(1)) / (rhoB - rhoA);
    if (x > lo) lo = x;
  }
  return {lo, hi};
}

/// T(x) = rhoA*x + bA on A = [0, xT), T(x) = rhoB*(x - xT) on B = (xT, 1].
template <class T>
class TwoSlopeMap {
 public:
  TwoSlopeMap() = default;
  TwoSlopeMap(T rhoA, T rhoB, T xT) : rhoA_(std::move(rhoA)), rhoB_(std::move(rhoB)), xT_(std::move(xT)) {
    if (!(rhoA_ > 0) || !(rhoB_ > 0)) fail(ErrorCode::InvalidArgument, "slopes must be positive");
    if (rhoA_ > 1 && rhoB_ > 1) fail(ErrorCode::InvalidArgument, "slopes may not both exceed 1");
    if (!(xT_ > 0) || !(xT_ < 1)) fail(ErrorCode::InvalidArgument, "discontinuity must lie in (0,1)");
    T slack(0);
    if constexpr (std::is_floating_point_v<T>) slack = T(1e-12);
    if (rhoB_ * (T(1) - xT_) > T(1) - rhoA_ * xT_ + slack) fail(ErrorCode::InvalidArgument, "map is not injective");
  }

  const T& rhoA() const { return rhoA_; }
  const T& rhoB() const { return rhoB_; }
  const T& xT() const { return xT_; }
  T bA() const { return T(1) - rhoA_ * xT_; }
  const T& slope(Branch b) const { return b == Branch::A ? rhoA_ : rhoB_; }

  Branch branch(const T& x) const {
    if (x < xT_) return Branch::A;
    if (x > xT_) return Branch::B;
    fail(ErrorCode::AtDiscontinuity, "point is the discontinuity");
  }

  T operator()(const T& x, SideFlag side = SideFlag::None) const {
    if (x < xT_ || (x == xT_ && side == SideFlag::Left)) return rhoA_ * x + bA();
    if (x > xT_ || (x == xT_ && side == SideFlag::Right)) return rhoB_ * (x - xT_);
    fail(ErrorCode::AtDiscontinuity, "evaluation at the discontinuity needs a side");
  }

  friend bool operator==(const TwoSlopeMap& a, const TwoSlopeMap& b) {
    return a.rhoA_ == b.rhoA_ && a.rhoB_ == b.rhoB_ && a.xT_ == b.xT_;
  }

 private:
  T rhoA_{1};
  T rhoB_{1};
  T xT_{T(1) / T(2)};
};

template <class T>
T evaluate(const TwoSlopeMap<T>& m, const T& x, SideFlag side = SideFlag::None) {
  return m(x, side);
}

template <class T>
struct PeriodicCycle {
  std::vector<T> points;
  std::size_t period = 0;
  T multiplier{};
  std::string word;  // branch letters along the cycle
  bool attracting() const { return multiplier < 1; }
};

namespace detail {
template <class T>
bool near_discontinuity(const T& x, const T& xT) {
  if constexpr (std::is_floating_point_v<T>) return std::abs(x - xT) <= 1e-15;
  else return x == xT;
}
}  // namespace detail

/// The 2-cycle of a map whose discontinuity lies in the hole between the
/// branch images.
template <class T>
PeriodicCycle<T> attracting_cycle_in_hole(const TwoSlopeMap<T>& m) {
  const T& a = m.rhoA();
  const T& b = m.rhoB();
  T left = b / (T(1) + b);
  T right = T(1) / (T(1) + a);
  if (!(m.xT() > left && m.xT() < right)) fail(ErrorCode::NotInHole, "x_T is not in the hole");
  T x = b * (m.bA() - m.xT()) / (T(1) - a * b);
  T y = a * x + m.bA();
  return {{x, y}, 2, a * b, "AB"};
}

template <class T>
struct OrbitResult {
  std::vector<T> values;
  std::vector<Branch> branches;  // branch of values[i] for i < values.size() - 1
  bool hit_discontinuity = false;
};

template <class T>
OrbitResult<T> orbit(const TwoSlopeMap<T>& m, T x0, std::size_t n) {
  OrbitResult<T> out;
  out.values.reserve(n + 1);
  out.values.push_back(x0);
  T x = std::move(x0);
  for (std::size_t i = 0; i < n; ++i) {
    if (detail::near_discontinuity(x, m.xT())) {
      out.hit_discontinuity = true;
      break;
    }
    Branch br = x < m.xT() ? Branch::A : Branch::B;
    out.branches.push_back(br);
    x = m(x);
    out.values.push_back(x);
  }
  return out;
}

/// Brute-force cycle search by iteration from several seeds.
inline std::optional<PeriodicCycle<double>> find_periodic_oracle(const TwoSlopeMap<double>& m, std::size_t max_iter,
                                                                 double tol) {
  const double seeds[] = {0.05, 0.3, 0.55, 0.8, 0.97};
  const std::size_t burn = max_iter / 2;
  const std::size_t max_period = max_iter - burn;
  for (double s : seeds) {
    double x = s;
    bool hit = false;
    for (std::size_t i = 0; i < burn; ++i) {
      if (detail::near_discontinuity(x, m.xT())) {
        hit = true;
        break;
      }
      x = m(x);
    }
    if (hit) continue;
    // look for the first return of x within tol, then confirm with a second loop
    double y = x;
    std::vector<double> pts{y};
    std::string word;
    for (std::size_t k = 1; k <= max_period / 2; ++k) {
      if (detail::near_discontinuity(y, m.xT())) break;
      word.push_back(y < m.xT() ? 'A' : 'B');
      y = m(y);
      if (std::abs(y - x) <= tol) {
        double z = y;
        bool same = true;
        for (std::size_t j = 0; j < k && same; ++j) {
          if (detail::near_discontinuity(z, m.xT()) || (z < m.xT() ? 'A' : 'B') != word[j]) same = false;
          else z = m(z);
        }
        if (same && std::abs(z - y) <= tol) {
          double mult = 1.0;
          for (char c : word) mult *= c == 'A' ? m.rhoA() : m.rhoB();
          return PeriodicCycle<double>{pts, k, mult, word};
        }
      }
      pts.push_back(y);
    }
  }
  return std::nullopt;
}

/// Affine branch y = slope * x + offset on [lo, hi].
struct AffineBranch {
  double lo = 0;
  double hi = 0;
  double slope = 1;
  double offset = 0;
  double operator()(double x) const { return slope * x + offset; }
  double image_lo() const { return (*this)(lo); }
  double image_hi() const { return (*this)(hi); }
};

/// Injective piecewise affine map on [branches.front().lo, branches.back().hi]
/// with contiguous branches in increasing order.
struct PiecewiseAffineMap {
  std::vector<AffineBranch> branches;

  double domain_lo() const { return branches.front().lo; }
  double domain_hi() const { return branches.back().hi; }
  std::size_t branch_index(double x) const {
    for (std::size_t i = 0; i + 1 < branches.size(); ++i)
      if (x < branches[i].hi) return i;
    return branches.size() - 1;
  }
  double operator()(double x) const { return branches[branch_index(x)](x); }
  std::vector<double> discontinuities() const {
    std::vector<double> d;
    for (std::size_t i = 0; i + 1 < branches.size(); ++i) d.push_back(branches[i].hi);
    return d;
  }
};

inline PiecewiseAffineMap to_piecewise(const TwoSlopeMap<double>& m) {
  return {{AffineBranch{0.0, m.xT(), m.rhoA(), m.bA()}, AffineBranch{m.xT(), 1.0, m.rhoB(), -m.rhoB() * m.xT()}}};
}

/// Affine chart s -> (s - origin) / length.
struct AffineChart {
  double origin = 0;
  double length = 1;
  double to_unit(double s) const { return (s - origin) / length; }
  double from_unit(double x) const { return origin + length * x; }
};

struct Reduction {
  TwoSlopeMap<double> map;
  AffineChart chart;
};

/// Restricts f to the hull of its image and rescales it to [0,1].
inline Reduction restrict_to_image(const PiecewiseAffineMap& f, double tol = 1e-12) {
  if (f.branches.size() != 2) fail(ErrorCode::NotReducible, "map must have exactly one discontinuity");
  const AffineBranch& L = f.branches[0];
  const AffineBranch& R = f.branches[1];
  if (!(L.slope > 0 && R.slope > 0)) fail(ErrorCode::NotReducible, "branches must preserve orientation");
  const double d = L.hi;
  const double top = L(d);     // left limit
  const double bottom = R(d);  // right limit
  const double span = f.domain_hi() - f.domain_lo();
  const double slack = tol * std::max(1.0, span);
  if (!(R.image_hi() <= L.image_lo() + slack))
    fail(ErrorCode::NotReducible, "branch images are not exchanged");
  if (bottom < f.domain_lo() - slack || top > f.domain_hi() + slack)
    fail(ErrorCode::NotReducible, "image leaves the domain");
  if (!(d > bottom + slack && d < top - slack))
    fail(ErrorCode::NotReducible, "discontinuity lies outside the image hull");
  AffineChart chart{bottom, top - bottom};
  double xT = chart.to_unit(d);
  return {TwoSlopeMap<double>(L.slope, R.slope, xT), chart};
}

}  // namespace dilation
