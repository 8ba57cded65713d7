#pragma once
// Geodesic flow on rooms, projective tracking of direction intervals and
// trend monitors for divergence.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "dilation/error.hpp"
#include "dilation/geometry.hpp"
#include "dilation/surface.hpp"

namespace dilation {

inline Room flow(const Room& room, double t) { return apply_sl2(geodesic_matrix(t), room); }

/// Endpoint-wise image of a direction interval of length < pi, kept in one chart.
inline std::pair<double, double> track_direction_interval(const SL2Matrix& A, double theta1, double theta2) {
  if (!(theta2 >= theta1) || theta2 - theta1 >= kPi)
    fail(ErrorCode::InvalidArgument, "interval must satisfy theta1 <= theta2 < theta1 + pi");
  double a0 = projective_action(A, theta1);
  double len = wrap_two_pi(projective_action(A, theta2) - a0);
  double a = a0 + std::round((theta1 - a0) / kTwoPi) * kTwoPi;  // stay near the input chart
  return {a, a + len};
}

/// Sup/inf ratio of the derivative of the projective action of g_t on
/// the preimage of [-pi/4, pi/4].
inline double distortion(double t) {
  if (!(t >= 0)) fail(ErrorCode::InvalidArgument, "t must be nonnegative");
  return 2.0 / (1.0 + std::exp(-2.0 * t));
}

/// Derivative of theta -> projective_action(g_t, theta).
inline double projective_derivative(double t, double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  double et = std::exp(t);
  return et / (c * c + et * et * s * s);
}

struct MonitorConfig {
  double theta_tol = 0.05;
  double multiplier_threshold = 1e6;
};

struct FlowSample {
  double t = 0;
  double theta_sup = 0;
  double max_multiplier = 1;
  bool criterion1 = false;
  bool criterion2 = false;
  bool budget_exhausted = false;
  std::size_t cylinders = 0;
  std::string horizontal;       // verdict of the horizontal direction
  std::string horizontal_word;  // its renormalization word
  bool word_changed = false;
};

struct MonitorResult {
  std::vector<FlowSample> samples;
  bool criterion1 = false;  // fired on every sample of the last quarter
  bool criterion2 = false;
};

inline FlowSample flow_sample(const Room& room, double t, double eps_angle, std::size_t budget,
                              const MonitorConfig& cfg) {
  FlowSample s;
  s.t = t;
  const SL2Matrix g = geodesic_matrix(t);
  CylinderScan scan = find_cylinders(room, g, eps_angle, budget);
  s.budget_exhausted = scan.budget_exhausted;
  s.cylinders = scan.cylinders.size();
  bool big = false;
  for (const auto& c : scan.cylinders) {
    s.theta_sup = std::max(s.theta_sup, c.angle());
    if (c.angle() >= eps_angle) {
      big = true;
      s.max_multiplier = std::max(s.max_multiplier, c.multiplier);
    }
  }
  s.criterion1 = s.theta_sup > kPi - cfg.theta_tol || s.theta_sup < cfg.theta_tol;
  s.criterion2 = big && s.max_multiplier > cfg.multiplier_threshold;
  try {
    DirectionClass h = classify_direction(room, projective_action(g.inverse(), 0.0), budget);
    s.horizontal = std::string(to_string(h.verdict));
    s.horizontal_word = h.rauzy_word;
  } catch (const Error& e) {
    s.horizontal = std::string(to_string(e.code()));
  }
  return s;
}

inline MonitorResult divergence_monitor(const Room& room, double t_max, std::size_t steps, double eps_angle,
                                        std::size_t budget, const MonitorConfig& cfg = {}) {
  if (!(t_max >= 0) || !std::isfinite(t_max)) fail(ErrorCode::InvalidArgument, "t_max must be a nonnegative number");
  if (!(eps_angle > 0)) fail(ErrorCode::InvalidArgument, "eps_angle must be positive");
  MonitorResult out;
  std::size_t n = (t_max == 0 || steps == 0) ? 1 : steps + 1;
  for (std::size_t i = 0; i < n; ++i) {
    double t = n == 1 ? 0.0 : t_max * double(i) / double(steps);
    out.samples.push_back(flow_sample(room, t, eps_angle, budget, cfg));
    if (i > 0) out.samples[i].word_changed = out.samples[i].horizontal_word != out.samples[i - 1].horizontal_word;
  }
  if (n > 1) {
    std::size_t from = n - std::max<std::size_t>(1, n / 4);
    out.criterion1 = std::all_of(out.samples.begin() + from, out.samples.end(), [](const FlowSample& s) { return s.criterion1; });
    out.criterion2 = std::all_of(out.samples.begin() + from, out.samples.end(), [](const FlowSample& s) { return s.criterion2; });
  }
  return out;
}

}  // namespace dilation
