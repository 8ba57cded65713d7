#pragma once

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dilation/error.hpp"
#include "dilation/geometry.hpp"
#include "dilation/interval_maps.hpp"
#include "dilation/mapping_class.hpp"
#include "dilation/numeric.hpp"
#include "dilation/rauzy.hpp"
#include "dilation/surface.hpp"
#include "dilation/teichmuller.hpp"

namespace dilation::io {

using Json = nlohmann::json;

// ---------------------------------------------------------------- JSON

inline Json to_json(const Vec2& v) { return Json::array({v.x, v.y}); }

inline Json to_json(const QuadraticSurd& q) {
  return Json::array({to_string(q.rational_part()), to_string(q.surd_part()), q.radicand()});
}

inline Json to_json(const Room& room) {
  Json j;
  j["e1"] = to_json(room.basis().e1);
  j["e2"] = to_json(room.basis().e2);
  j["mu"] = Json::array({room.params().mu1, room.params().mu2});
  if (room.params().exact)
    j["mu_exact"] = Json::array({to_json((*room.params().exact)[0]), to_json((*room.params().exact)[1])});
  Json vs = Json::array();
  for (const auto& v : room.vertices()) vs.push_back(to_json(v));
  j["vertices"] = vs;
  j["nu"] = Json::array({room.nu1(), room.nu2()});
  j["det"] = room.det();
  j["convex"] = room.is_convex();
  j["door_direction"] = door_direction(room);
  AngleInterval in = inward_directions(room);
  j["inward"] = Json::array({in.lo, in.hi});
  return j;
}

namespace detail {

inline Vec2 parse_vec(const Json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorCode::InvalidArgument, std::string("missing field ") + key);
  const Json& v = j.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    fail(ErrorCode::InvalidArgument, std::string(key) + " must be a pair of numbers");
  return {v[0].get<double>(), v[1].get<double>()};
}

inline Rational parse_rational_field(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_number()) {
    std::ostringstream os;
    os << std::setprecision(17) << v.get<double>();
    return parse_rational(os.str());
  }
  fail(ErrorCode::InvalidArgument, "exact coefficient must be a number or a string");
}

inline QuadraticSurd parse_surd(const Json& v) {
  if (!v.is_array() || v.size() != 3 || !v[2].is_number_integer())
    fail(ErrorCode::InvalidArgument, "exact value must be [a, b, d] with integer d");
  return QuadraticSurd(parse_rational_field(v[0]), parse_rational_field(v[1]), v[2].get<std::int64_t>());
}

}  // namespace detail

/// Reads {"e1":[x,y],"e2":[x,y],"mu":[m1,m2]} or the same with "mu_exact".
/// The basis defaults to the standard one when absent.
inline LogDilationParams params_from_json(const Json& j) {
  if (j.contains("mu_exact")) {
    const Json& m = j.at("mu_exact");
    if (!m.is_array() || m.size() != 2) fail(ErrorCode::InvalidArgument, "mu_exact must hold two values");
    return LogDilationParams(detail::parse_surd(m[0]), detail::parse_surd(m[1]));
  }
  if (!j.contains("mu")) fail(ErrorCode::InvalidArgument, "missing field mu");
  const Json& m = j.at("mu");
  if (!m.is_array() || m.size() != 2 || !m[0].is_number() || !m[1].is_number())
    fail(ErrorCode::InvalidArgument, "mu must be a pair of numbers");
  return {m[0].get<double>(), m[1].get<double>()};
}

inline Room room_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::InvalidArgument, "room must be a JSON object");
  Basis b;
  b.e1 = j.contains("e1") ? detail::parse_vec(j, "e1") : Vec2{1, 0};
  b.e2 = j.contains("e2") ? detail::parse_vec(j, "e2") : Vec2{0, 1};
  return build_room(b, params_from_json(j));
}

inline Room room_from_json(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::InvalidArgument, "room is not valid JSON");
  return room_from_json(j);
}

template <class T>
Json number(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) return to_string(v);
  else return v;
}

template <class T>
Json to_json(const PeriodicCycle<T>& c) {
  Json pts = Json::array();
  for (const auto& p : c.points) pts.push_back(number(p));
  return {{"points", pts}, {"period", c.period}, {"multiplier", number(c.multiplier)}, {"word", c.word}};
}

template <class T>
Json to_json(const TwoSlopeMap<T>& m) {
  return {{"rhoA", number(m.rhoA())}, {"rhoB", number(m.rhoB())}, {"xT", number(m.xT())}};
}

template <class T>
Json to_json(const RauzyOutcome<T>& o) {
  Json j{{"word", o.word}, {"terminal", std::string(to_string(o.terminal))}, {"final_map", to_json(o.final_map)}};
  j["cycle"] = o.cycle ? to_json(*o.cycle) : Json(nullptr);
  return j;
}

inline Json to_json(const ReachResult& r) {
  Json traj = Json::array();
  for (const auto& m : r.mu_trajectory) traj.push_back(Json::array({m[0], m[1]}));
  Json j{{"word", to_string(r.word)}, {"mu_trajectory", traj}, {"final_error", r.final_error}};
  j["final_shear"] = r.final_shear;
  j["final_room"] = r.final_room ? to_json(*r.final_room) : Json(nullptr);
  return j;
}

inline Json to_json(const HolonomyClass& h) {
  Json j{{"verdict", std::string(to_string(h.verdict))}, {"orbit_closure", std::string(to_string(h.orbit()))}};
  j["ratio"] = h.ratio ? Json(to_string(*h.ratio)) : Json(nullptr);
  return j;
}

inline Json to_json(const DirectionClass& c) {
  Json j{{"verdict", std::string(to_string(c.verdict))},
         {"theta", c.theta},
         {"rauzy_word", c.rauzy_word},
         {"period", c.period}};
  if (c.verdict == DirectionVerdict::Cylinder) {
    j["cycle_word"] = c.cycle_word;
    j["multiplier"] = c.multiplier;
    j["cycle"] = c.cycle;
  }
  j["section"] = c.section ? Json(to_string(*c.section)) : Json(nullptr);
  j["reduced"] = c.reduced ? to_json(*c.reduced) : Json(nullptr);
  return j;
}

inline Json to_json(const Cylinder& c) {
  return {{"theta1", c.theta1}, {"theta2", c.theta2}, {"angle", c.angle()}, {"multiplier", c.multiplier},
          {"word", c.word}};
}

inline Json to_json(const CylinderScan& s) {
  Json cs = Json::array();
  for (const auto& c : s.cylinders) cs.push_back(to_json(c));
  return {{"cylinders", cs}, {"budget_exhausted", s.budget_exhausted}, {"samples", s.samples}};
}

inline Json to_json(const RotationNumber& r) {
  Json j{{"value", r.value}, {"iterations", r.iterations}, {"bracket", Json::array({r.bracket_lo, r.bracket_hi})}};
  j["exact"] = r.exact ? Json(to_string(*r.exact)) : Json(nullptr);
  return j;
}

inline Json to_json(const FlowSample& s) {
  return {{"t", s.t},
          {"theta_sup", s.theta_sup},
          {"max_multiplier", s.max_multiplier},
          {"criterion1", s.criterion1},
          {"criterion2", s.criterion2},
          {"budget_exhausted", s.budget_exhausted},
          {"cylinders", s.cylinders},
          {"horizontal", s.horizontal},
          {"horizontal_word", s.horizontal_word},
          {"word_changed", s.word_changed}};
}

inline Json to_json(const MonitorResult& m) {
  Json ss = Json::array();
  for (const auto& s : m.samples) ss.push_back(to_json(s));
  return {{"samples", ss}, {"criterion1", m.criterion1}, {"criterion2", m.criterion2}};
}

// ----------------------------------------------------------------- CSV

inline std::string csv_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

template <class T>
void write_orbit_csv(std::ostream& out, const TwoSlopeMap<T>& m, const OrbitResult<T>& o) {
  out << "index,value,branch\n";
  for (std::size_t i = 0; i < o.values.size(); ++i) {
    const T& x = o.values[i];
    std::string br = x < m.xT() ? "A" : (x > m.xT() ? "B" : "T");
    if constexpr (std::is_same_v<T, Rational>) out << i << ',' << to_string(x) << ',' << br << '\n';
    else out << i << ',' << csv_number(x) << ',' << br << '\n';
  }
}

template <class T>
void write_survivor_csv(std::ostream& out, const std::vector<std::pair<std::size_t, T>>& rows) {
  out << "n,measure\n";
  for (const auto& [n, v] : rows) {
    if constexpr (std::is_same_v<T, Rational>) out << n << ',' << to_string(v) << '\n';
    else out << n << ',' << csv_number(v) << '\n';
  }
}

struct RotationRow {
  double rhoA, rhoB;
  RotationNumber rot;
};

inline void write_rotation_csv(std::ostream& out, const std::vector<RotationRow>& rows) {
  out << "rhoA,rhoB,rotation,exact,iterations\n";
  for (const auto& r : rows)
    out << csv_number(r.rhoA) << ',' << csv_number(r.rhoB) << ',' << csv_number(r.rot.value) << ','
        << (r.rot.exact ? to_string(*r.rot.exact) : "") << ',' << r.rot.iterations << '\n';
}

inline void write_flow_csv(std::ostream& out, const MonitorResult& m) {
  out << "t,theta_sup,max_multiplier,criterion1,criterion2,budget_exhausted,cylinders,word_changed\n";
  for (const auto& s : m.samples)
    out << csv_number(s.t) << ',' << csv_number(s.theta_sup) << ',' << csv_number(s.max_multiplier) << ','
        << s.criterion1 << ',' << s.criterion2 << ',' << s.budget_exhausted << ',' << s.cylinders << ','
        << s.word_changed << '\n';
}

inline void write_cylinders_csv(std::ostream& out, const CylinderScan& s) {
  out << "theta1,theta2,angle,multiplier,word\n";
  for (const auto& c : s.cylinders)
    out << csv_number(c.theta1) << ',' << csv_number(c.theta2) << ',' << csv_number(c.angle()) << ','
        << csv_number(c.multiplier) << ',' << c.word << '\n';
}

// ----------------------------------------------------------------- SVG

/// Pentagon with glued pairs in matching colours and the door dashed.
inline std::string pentagon_svg(const Room& room, double size = 400) {
  const auto& v = room.vertices();
  double xmin = v[0].x, xmax = v[0].x, ymin = v[0].y, ymax = v[0].y;
  for (const auto& p : v) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  double span = std::max(xmax - xmin, ymax - ymin);
  if (!(span > 0)) span = 1;
  const double pad = 0.08 * size;
  const double s = (size - 2 * pad) / span;
  auto X = [&](const Vec2& p) { return pad + (p.x - xmin) * s; };
  auto Y = [&](const Vec2& p) { return size - pad - (p.y - ymin) * s; };  // flip to y-up

  static constexpr const char* colour[5] = {"#1f77b4", "#d62728", "#1f77b4", "#000000", "#d62728"};
  std::ostringstream os;
  os << std::setprecision(10);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  os << "  <polygon fill=\"#f4f4f4\" stroke=\"none\" points=\"";
  for (const auto& p : v) os << X(p) << ',' << Y(p) << ' ';
  os << "\"/>\n";
  for (int i = 0; i < 5; ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % 5];
    os << "  <line x1=\"" << X(a) << "\" y1=\"" << Y(a) << "\" x2=\"" << X(b) << "\" y2=\"" << Y(b)
       << "\" stroke=\"" << colour[i] << "\" stroke-width=\"3\"" << (i == 3 ? " stroke-dasharray=\"6,4\"" : "")
       << "/>\n";
  }
  for (int i = 0; i < 5; ++i)
    os << "  <text x=\"" << X(v[i]) + 4 << "\" y=\"" << Y(v[i]) - 4 << "\" font-size=\"12\">V" << i << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

struct WheelSample {
  double theta;
  DirectionVerdict verdict;
};

inline const char* verdict_colour(DirectionVerdict v) {
  switch (v) {
    case DirectionVerdict::Cylinder: return "#2ca02c";
    case DirectionVerdict::CantorLike: return "#9467bd";
    case DirectionVerdict::Door: return "#000000";
    case DirectionVerdict::Boundary: return "#ff7f0e";
  }
  return "#7f7f7f";
}

/// Colour-coded verdicts on the circle of directions. Each sample covers the
/// arc up to the next one and is drawn at theta and theta + pi.
inline std::string direction_wheel_svg(std::vector<WheelSample> samples, double size = 400) {
  std::sort(samples.begin(), samples.end(), [](const WheelSample& a, const WheelSample& b) { return a.theta < b.theta; });
  const double c = size / 2, r0 = 0.30 * size, r1 = 0.45 * size;
  std::ostringstream os;
  os << std::setprecision(10);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  auto pt = [&](double r, double a) {
    std::ostringstream p;
    p << std::setprecision(10) << c + r * std::cos(a) << ',' << c - r * std::sin(a);
    return p.str();
  };
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double a0 = samples[i].theta;
    double a1 = i + 1 < samples.size() ? samples[i + 1].theta : samples.front().theta + kPi;
    for (double shift : {0.0, kPi}) {
      double b0 = a0 + shift, b1 = a1 + shift;
      os << "  <path fill=\"" << verdict_colour(samples[i].verdict) << "\" stroke=\"none\" d=\"M " << pt(r0, b0)
         << " L " << pt(r1, b0) << " A " << r1 << ',' << r1 << " 0 0 0 " << pt(r1, b1) << " L " << pt(r0, b1)
         << " A " << r0 << ',' << r0 << " 0 0 1 " << pt(r0, b0) << " Z\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace dilation::io
