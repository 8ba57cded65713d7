#pragma once
// Straight-line flow on a glued pentagon, first-return maps to diagonals and
// the classification of directions.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dilation/detail/parallel.hpp"
#include "dilation/error.hpp"
#include "dilation/geometry.hpp"
#include "dilation/interval_maps.hpp"
#include "dilation/rauzy.hpp"

namespace dilation {

/// Diagonal between two non-adjacent vertices, oriented from -> to.
struct Diagonal {
  int from = 0;
  int to = 2;
  friend bool operator==(const Diagonal&, const Diagonal&) = default;
};

inline constexpr std::array<Diagonal, 5> kDiagonals{{{0, 2}, {0, 3}, {1, 3}, {1, 4}, {2, 4}}};

inline std::string to_string(const Diagonal& d) {
  return "V" + std::to_string(d.from) + "V" + std::to_string(d.to);
}

/// Where a point leaving through a glued side re-enters, and the derivative.
struct Regluing {
  int entry_side;
  Vec2 point;
  double factor;
};

inline Regluing reglue(const Room& room, int exit_side, const Vec2& q) {
  const auto& v = room.vertices();
  switch (exit_side) {
    case 0: return {2, v[3] + (1.0 / room.nu1()) * q, 1.0 / room.nu1()};
    case 2: return {0, room.nu1() * (q - v[3]), room.nu1()};
    case 1: return {4, (1.0 / room.nu2()) * (q - v[1]), 1.0 / room.nu2()};
    case 4: return {1, v[1] + room.nu2() * q, room.nu2()};
    default: fail(ErrorCode::InvalidArgument, "the door is not glued");
  }
}

enum class TraceEnd { Door, SectionHit, Budget, VertexHit };

inline std::string_view to_string(TraceEnd e) {
  switch (e) {
    case TraceEnd::Door: return "door";
    case TraceEnd::SectionHit: return "section";
    case TraceEnd::Budget: return "budget";
    case TraceEnd::VertexHit: return "vertex";
  }
  return "?";
}

struct Segment {
  Vec2 start;
  Vec2 end;
};

struct RayTrace {
  std::vector<Segment> segments;
  std::vector<double> factors;   // one per glued-side crossing
  std::vector<int> exit_sides;   // side left at each crossing
  TraceEnd terminal = TraceEnd::Budget;
  Vec2 end_point;                // last point reached (re-entry point on Budget)
  double section_coordinate = 0;  // arc length along the section on SectionHit
  int vertex = -1;                // on VertexHit
  double derivative() const {
    double d = 1;
    for (double f : factors) d *= f;
    return d;
  }
};

namespace detail {

struct SectionGeom {
  Vec2 start;
  Vec2 dir;  // unit
  double length;
};

inline SectionGeom section_geometry(const Room& room, const Diagonal& d) {
  Vec2 a = room.vertex(d.from), b = room.vertex(d.to);
  double len = norm(b - a);
  return {a, (1.0 / len) * (b - a), len};
}

inline double room_scale(const Room& room) {
  double s = 0;
  for (const auto& v : room.vertices()) s = std::max(s, norm(v));
  return std::max(s, 1e-300);
}

struct Hit {
  enum Kind { None, SideHit, Section, Vertex } kind = None;
  int side = -1;
  int vertex = -1;
  double t = 0;
  double lambda = 0;
  Vec2 point;
};

/// First boundary or section crossing of p + t*u, t > 0.
inline Hit next_hit(const Room& room, const Vec2& p, const Vec2& u, int exclude_side, const SectionGeom* sec,
                    bool exclude_section, double t_eps, double vertex_tol) {
  const auto& v = room.vertices();
  Hit best;
  best.t = INFINITY;
  auto consider = [&](const Vec2& a, const Vec2& e, Hit::Kind kind, int side, int va, int vb) {
    double denom = cross(u, e);
    if (denom == 0) return;
    Vec2 ap = a - p;
    double t = cross(ap, e) / denom;
    double lam = cross(ap, u) / denom;
    if (!(t > t_eps) || lam < -vertex_tol || lam > 1 + vertex_tol) return;
    if (t >= best.t) return;
    best.t = t;
    best.lambda = lam;
    best.side = side;
    if (lam <= vertex_tol) {
      best.kind = Hit::Vertex;
      best.vertex = va;
      best.point = a;
    } else if (lam >= 1 - vertex_tol) {
      best.kind = Hit::Vertex;
      best.vertex = vb;
      best.point = a + e;
    } else {
      best.kind = kind;
      best.vertex = -1;
      best.point = a + lam * e;
    }
  };
  for (int k = 0; k < 5; ++k) {
    if (k == exclude_side) continue;
    consider(v[k], v[(k + 1) % 5] - v[k], Hit::SideHit, k, k, (k + 1) % 5);
  }
  if (sec && !exclude_section) consider(sec->start, sec->length * sec->dir, Hit::Section, -1, -1, -1);
  return best;
}

struct TraceOptions {
  std::size_t max_crossings = 10000;
  bool record = false;
};

/// Follows the flow from p until the door, the section, a vertex, or the crossing budget.
inline RayTrace trace(const Room& room, Vec2 p, const Vec2& u, int start_side, const SectionGeom* sec,
                      bool start_on_section, const TraceOptions& opt) {
  RayTrace out;
  const double scale = room_scale(room);
  const double t_eps = 1e-13 * scale;
  const double vtol = 1e-12;
  int exclude = start_side;
  bool skip_sec = start_on_section;
  for (;;) {
    Hit h = next_hit(room, p, u, exclude, sec, skip_sec, t_eps, vtol);
    if (h.kind == Hit::None) {
      // numerically outside: treat as a singular leaf
      out.terminal = TraceEnd::VertexHit;
      out.end_point = p;
      return out;
    }
    if (opt.record) out.segments.push_back({p, h.point});
    if (h.kind == Hit::Vertex) {
      out.terminal = TraceEnd::VertexHit;
      out.vertex = h.vertex;
      out.end_point = h.point;
      return out;
    }
    if (h.kind == Hit::Section) {
      out.terminal = TraceEnd::SectionHit;
      out.end_point = h.point;
      out.section_coordinate = h.lambda * sec->length;
      return out;
    }
    if (h.side == static_cast<int>(Side::Door)) {
      out.terminal = TraceEnd::Door;
      out.end_point = h.point;
      return out;
    }
    if (out.factors.size() >= opt.max_crossings) {
      out.terminal = TraceEnd::Budget;
      out.end_point = h.point;
      return out;
    }
    Regluing g = reglue(room, h.side, h.point);
    out.factors.push_back(g.factor);
    out.exit_sides.push_back(h.side);
    p = g.point;
    exclude = g.entry_side;
    skip_sec = false;
    out.end_point = p;
    if (out.factors.size() >= opt.max_crossings) {
      out.terminal = TraceEnd::Budget;
      return out;
    }
  }
}

/// Index of the side containing p, or -1.
inline int side_containing(const Room& room, const Vec2& p) {
  const auto& v = room.vertices();
  double scale = room_scale(room);
  for (int k = 0; k < 5; ++k) {
    Vec2 a = v[k], e = v[(k + 1) % 5] - v[k];
    double len2 = dot(e, e);
    double lam = dot(p - a, e) / len2;
    if (lam < -1e-12 || lam > 1 + 1e-12) continue;
    if (std::abs(cross(e, p - a)) <= 1e-12 * scale * std::sqrt(len2)) return k;
  }
  return -1;
}

inline bool point_in_room(const Room& room, const Vec2& p) {
  const auto& v = room.vertices();
  bool inside = false;
  for (int i = 0, j = 4; i < 5; j = i++) {
    if ((v[i].y > p.y) != (v[j].y > p.y)) {
      double x = (v[j].x - v[i].x) * (p.y - v[i].y) / (v[j].y - v[i].y) + v[i].x;
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

}  // namespace detail

/// Public ray tracer. Throws VertexHit when the trajectory meets a vertex.
inline RayTrace trace_ray(const Room& room, const Vec2& p, double theta, std::size_t max_crossings) {
  if (!std::isfinite(theta) || !std::isfinite(p.x) || !std::isfinite(p.y))
    fail(ErrorCode::InvalidArgument, "ray data must be finite");
  int side = detail::side_containing(room, p);
  if (side < 0 && !detail::point_in_room(room, p)) fail(ErrorCode::InvalidArgument, "start point is outside the room");
  detail::TraceOptions opt{max_crossings, true};
  RayTrace r = detail::trace(room, p, unit(theta), side, nullptr, false, opt);
  if (r.terminal == TraceEnd::VertexHit) fail(ErrorCode::VertexHit, "trajectory meets a vertex");
  return r;
}

/// True when the open diagonal lies inside the room.
inline bool diagonal_inside(const Room& room, const Diagonal& d) {
  const auto& v = room.vertices();
  Vec2 a = v[d.from], b = v[d.to];
  if (!detail::point_in_room(room, 0.5 * (a + b))) return false;
  double tol = 1e-12 * detail::room_scale(room) * detail::room_scale(room);
  for (int k = 0; k < 5; ++k) {
    int k1 = (k + 1) % 5;
    if (k == d.from || k == d.to || k1 == d.from || k1 == d.to) continue;
    if (detail::segments_cross(a, b, v[k], v[k1], tol)) return false;
  }
  return true;
}

/// Angular distance between theta and the diagonal direction (mod pi).
inline double transversality(const Room& room, const Diagonal& d, double theta) {
  Vec2 e = room.vertex(d.to) - room.vertex(d.from);
  return projective_distance(angle_of(e), theta);
}

struct FirstReturn {
  PiecewiseAffineMap map;  // on [0, length] in arc length
  Diagonal section;
  double length = 0;
  std::vector<double> slopes;  // per branch, from crossing factors
};

namespace detail {

/// Traces one first return from arc-length coordinate s.
inline RayTrace section_return(const Room& room, const SectionGeom& sec, const Vec2& u, double s,
                               std::size_t max_crossings = 20000) {
  Vec2 p = sec.start + s * sec.dir;
  return trace(room, p, u, -1, &sec, true, TraceOptions{max_crossings, false});
}

}  // namespace detail

/// First-return map of the flow in direction theta to a diagonal.
inline FirstReturn first_return_map(const Room& room, double theta, const Diagonal& section) {
  if (!diagonal_inside(room, section)) fail(ErrorCode::NotTransverse, "diagonal is not inside the room");
  if (transversality(room, section, theta) < 1e-9) fail(ErrorCode::NotTransverse, "direction is parallel to the section");
  const detail::SectionGeom sec = detail::section_geometry(room, section);
  const Vec2 u = unit(theta);
  const Vec2 back = unit(theta + kPi);
  const double L = sec.length;
  const auto& v = room.vertices();

  // candidates: points whose forward trajectory runs into a corner
  std::vector<double> cuts;
  for (int k = 0; k < 5; ++k) {
    Vec2 out_edge = v[(k + 1) % 5] - v[k];
    Vec2 in_edge = v[(k + 4) % 5] - v[k];
    double cone = wrap_two_pi(angle_of(in_edge) - angle_of(out_edge));
    double dirb = wrap_two_pi(angle_of(back) - angle_of(out_edge));
    if (!(dirb > 1e-12 && dirb < cone - 1e-12)) continue;
    RayTrace r = detail::trace(room, v[k], back, -1, &sec, k == section.from || k == section.to,
                               detail::TraceOptions{20000, false});
    if (r.terminal == TraceEnd::SectionHit) cuts.push_back(r.section_coordinate);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> knots{0.0};
  for (double c : cuts)
    if (c > 1e-12 * L && c < L * (1 - 1e-12) && c - knots.back() > 1e-12 * L) knots.push_back(c);
  if (L - knots.back() <= 1e-12 * L) knots.pop_back();
  knots.push_back(L);

  FirstReturn fr;
  fr.section = section;
  fr.length = L;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    double a = knots[i], b = knots[i + 1];
    double x1 = a + (b - a) / 3, x2 = a + 2 * (b - a) / 3;
    RayTrace r1 = detail::section_return(room, sec, u, x1);
    RayTrace r2 = detail::section_return(room, sec, u, x2);
    if (r1.terminal != TraceEnd::SectionHit || r2.terminal != TraceEnd::SectionHit)
      fail(ErrorCode::NotTransverse, "first return to the section is not defined");
    double slope = r1.derivative();
    double offset = r1.section_coordinate - slope * x1;
    if (std::abs(r2.derivative() - slope) > 1e-9 * slope ||
        std::abs(slope * x2 + offset - r2.section_coordinate) > 1e-9 * L)
      fail(ErrorCode::NotTransverse, "first return is not affine on a branch");
    AffineBranch br{a, b, slope, offset};
    if (!fr.map.branches.empty()) {
      AffineBranch& prev = fr.map.branches.back();
      if (std::abs(prev.slope - slope) <= 1e-12 * slope && std::abs(prev(a) - br(a)) <= 1e-11 * L) {
        prev.hi = b;
        continue;
      }
    }
    fr.map.branches.push_back(br);
    fr.slopes.push_back(slope);
  }
  fr.slopes.clear();
  for (const auto& br : fr.map.branches) fr.slopes.push_back(br.slope);
  return fr;
}

struct DirectionReduction {
  TwoSlopeMap<double> map{0.5, 0.5, 0.5};
  AffineChart chart;   // arc length on the section <-> [0,1]
  Diagonal section;
  double theta = 0;    // inward representative used
  FirstReturn first_return;
};

namespace detail {

inline std::vector<Diagonal> sections_by_margin(const Room& room, double theta) {
  std::vector<Diagonal> ds;
  for (const auto& d : kDiagonals)
    if (diagonal_inside(room, d)) ds.push_back(d);
  std::stable_sort(ds.begin(), ds.end(), [&](const Diagonal& a, const Diagonal& b) {
    return transversality(room, a, theta) > transversality(room, b, theta) + 1e-15;
  });
  return ds;
}

}  // namespace detail

/// Fixed-point outcome when the first return has a single branch.
struct SingleBranchReturn {
  FirstReturn first_return;
  double theta = 0;
};

/// Reduces the foliation in direction theta to a (rhoA, rhoB)-map.
inline DirectionReduction direction_to_two_slope(const Room& room, double theta) {
  auto rep = inward_representative(room, theta);
  if (!rep) fail(ErrorCode::InvalidArgument, "the door direction has no two-slope reduction");
  std::string last = "no diagonal inside the room";
  for (const Diagonal& d : detail::sections_by_margin(room, *rep)) {
    try {
      FirstReturn fr = first_return_map(room, *rep, d);
      Reduction red = restrict_to_image(fr.map);
      return {red.map, red.chart, d, *rep, std::move(fr)};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotReducible && e.code() != ErrorCode::NotTransverse &&
          e.code() != ErrorCode::InvalidArgument)
        throw;
      last = e.what();
    }
  }
  fail(ErrorCode::NotReducible, "no diagonal gives a two-slope reduction: " + last);
}

/// Attracting fixed point of a branch, inside that branch's domain.
/// With a positive slack, fixed points within slack of a branch end are accepted.
inline std::optional<double> attracting_fixed_point(const PiecewiseAffineMap& f, double slack = 0) {
  for (const auto& b : f.branches) {
    if (!(b.slope < 1)) continue;
    double x = b.offset / (1 - b.slope);
    if (slack > 0 ? (x >= b.lo - slack && x <= b.hi + slack) : (x > b.lo && x < b.hi)) return x;
  }
  return std::nullopt;
}

enum class DirectionVerdict { Cylinder, CantorLike, Door, Boundary };

inline std::string_view to_string(DirectionVerdict v) {
  switch (v) {
    case DirectionVerdict::Cylinder: return "cylinder";
    case DirectionVerdict::CantorLike: return "cantor";
    case DirectionVerdict::Door: return "door";
    case DirectionVerdict::Boundary: return "boundary";
  }
  return "?";
}

struct DirectionClass {
  DirectionVerdict verdict = DirectionVerdict::Door;
  double theta = 0;            // inward representative
  std::string rauzy_word;      // renormalization word (prefix for CantorLike)
  std::string cycle_word;      // canonical cyclic word of exit sides (Cylinder)
  double multiplier = 0;       // expanding multiplier, > 1 (Cylinder)
  std::vector<double> cycle;   // cycle points in arc length on the section (Cylinder)
  std::size_t period = 0;      // period of the cycle for the first-return map
  std::optional<Diagonal> section;
  std::optional<TwoSlopeMap<double>> reduced;
};

namespace detail {

/// Lexicographically least rotation of a cyclic word.
inline std::string least_rotation(const std::string& w) {
  if (w.empty()) return w;
  std::string best = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::string r = w.substr(i) + w.substr(0, i);
    if (r < best) best = r;
  }
  return best;
}

/// Exit sides along the closed leaf through arc-length point s (returns times).
inline std::string cycle_sides(const Room& room, const Diagonal& d, double theta, double s, std::size_t returns) {
  SectionGeom sec = section_geometry(room, d);
  Vec2 u = unit(theta);
  std::string w;
  for (std::size_t i = 0; i < returns; ++i) {
    RayTrace r = section_return(room, sec, u, s);
    if (r.terminal != TraceEnd::SectionHit) fail(ErrorCode::VertexHit, "closed leaf meets a vertex");
    for (int k : r.exit_sides) w.push_back(static_cast<char>('0' + k));
    s = r.section_coordinate;
  }
  return w;
}

}  // namespace detail

/// Cylinder / Cantor-like / door trichotomy for the direction theta.
inline DirectionClass classify_direction(const Room& room, double theta, std::size_t budget,
                                         double door_tol = 1e-12) {
  DirectionClass out;
  auto rep = inward_representative(room, theta, door_tol);
  if (!rep) {
    out.verdict = DirectionVerdict::Door;
    out.theta = door_direction(room);
    return out;
  }
  out.theta = *rep;
  DirectionReduction red;
  try {
    red = direction_to_two_slope(room, *rep);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotReducible) throw;
    // the first return collapses onto a single branch: an attracting fixed point
    bool singular = false;
    for (const Diagonal& d : detail::sections_by_margin(room, *rep)) {
      FirstReturn fr;
      try {
        fr = first_return_map(room, *rep, d);
      } catch (const Error& inner) {
        if (inner.code() != ErrorCode::NotTransverse) throw;
        continue;
      }
      if (auto fp = attracting_fixed_point(fr.map)) {
        out.verdict = DirectionVerdict::Cylinder;
        out.section = d;
        out.period = 1;
        double slope = fr.map.branches[fr.map.branch_index(*fp)].slope;
        out.multiplier = 1.0 / slope;
        out.cycle = {*fp};
        out.cycle_word = detail::least_rotation(detail::cycle_sides(room, d, *rep, *fp, 1));
        return out;
      }
      if (attracting_fixed_point(fr.map, 1e-9 * fr.length)) singular = true;
    }
    if (singular) {
      // the limiting closed leaf runs through the vertex: edge of a cylinder interval
      out.verdict = DirectionVerdict::Boundary;
      return out;
    }
    throw;
  }
  out.section = red.section;
  out.reduced = red.map;
  RauzyOutcome<double> rz = iterate_induction(red.map, budget);
  out.rauzy_word = rz.word;
  switch (rz.terminal) {
    case Terminal::Boundary: out.verdict = DirectionVerdict::Boundary; return out;
    case Terminal::BudgetExhausted: out.verdict = DirectionVerdict::CantorLike; return out;
    case Terminal::Halt: break;
  }
  out.verdict = DirectionVerdict::Cylinder;
  const PeriodicCycle<double>& c = *rz.cycle;
  out.multiplier = c.multiplier < 1 ? 1.0 / c.multiplier : c.multiplier;
  out.period = c.period;
  for (double x : c.points) out.cycle.push_back(red.chart.from_unit(x));
  out.cycle_word = detail::least_rotation(detail::cycle_sides(room, red.section, *rep, out.cycle.front(), c.period));
  return out;
}

struct Cylinder {
  double theta1 = 0;
  double theta2 = 0;
  double multiplier = 1;
  std::string word;
  double angle() const { return theta2 - theta1; }
};

struct CylinderScan {
  std::vector<Cylinder> cylinders;
  bool budget_exhausted = false;  // some sampled direction stayed unresolved
  std::size_t samples = 0;
};

namespace detail {

inline std::optional<std::string> cylinder_signature(const Room& room, double theta, std::size_t budget,
                                                     double* multiplier = nullptr, bool* exhausted = nullptr) {
  try {
    DirectionClass c = classify_direction(room, theta, budget);
    if (c.verdict == DirectionVerdict::CantorLike && exhausted) *exhausted = true;
    if (c.verdict != DirectionVerdict::Cylinder) return std::nullopt;
    if (multiplier) *multiplier = c.multiplier;
    return c.cycle_word;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::VertexHit || e.code() == ErrorCode::NotReducible ||
        e.code() == ErrorCode::NotTransverse)
      return std::nullopt;
    throw;
  }
}

}  // namespace detail

namespace detail {

template <class Sig>
CylinderScan scan_cylinders(const AngleInterval& in, double eps_angle, Sig&& signature) {
  if (!(eps_angle > 0) || eps_angle > kPi) fail(ErrorCode::InvalidArgument, "eps_angle must lie in (0, pi]");
  const double h = eps_angle / 2;
  const auto n = static_cast<std::size_t>(std::ceil(kPi / h));
  const double step = kPi / double(n);
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = in.lo + (double(i) + 0.5) * step;

  std::vector<std::optional<std::string>> sig(n);
  std::vector<double> mult(n, 0.0);
  std::vector<char> exhausted(n, 0);
  parallel_for(n, [&](std::size_t i) {
    bool ex = false;
    sig[i] = signature(grid[i], &mult[i], &ex);
    exhausted[i] = ex;
  });

  CylinderScan scan;
  scan.samples = n;
  scan.budget_exhausted = std::any_of(exhausted.begin(), exhausted.end(), [](char c) { return c != 0; });

  struct Run {
    std::size_t first, last;
  };
  std::vector<Run> runs;
  for (std::size_t i = 0; i < n; ++i) {
    if (!sig[i]) continue;
    if (!runs.empty() && runs.back().last + 1 == i && sig[runs.back().last] == sig[i]) runs.back().last = i;
    else runs.push_back({i, i});
  }

  std::vector<Cylinder> found(runs.size());
  parallel_for(runs.size(), [&](std::size_t r) {
    const Run& run = runs[r];
    const std::string& s = *sig[run.first];
    auto refine = [&](double inside, double outside) {
      while (std::abs(outside - inside) > 1e-10) {
        double mid = 0.5 * (inside + outside);
        if (signature(mid, nullptr, nullptr) == s) inside = mid;
        else outside = mid;
      }
      return inside;
    };
    double left_out = run.first == 0 ? in.lo : grid[run.first - 1];
    double right_out = run.last + 1 == n ? in.hi : grid[run.last + 1];
    Cylinder c;
    c.theta1 = refine(grid[run.first], left_out);
    c.theta2 = refine(grid[run.last], right_out);
    c.word = s;
    c.multiplier = mult[run.first];
    found[r] = c;
  });
  for (auto& c : found) {
    // midpoint validation
    if (signature(0.5 * (c.theta1 + c.theta2), nullptr, nullptr) == c.word) scan.cylinders.push_back(c);
  }
  return scan;
}

}  // namespace detail

/// Direction intervals of cylinders, found on a grid of spacing eps_angle/2
/// over the inward half-circle and refined by bisection to 1e-10.
inline CylinderScan find_cylinders(const Room& room, double eps_angle, std::size_t budget) {
  return detail::scan_cylinders(inward_directions(room), eps_angle, [&](double th, double* m, bool* ex) {
    return detail::cylinder_signature(room, th, budget, m, ex);
  });
}

/// Same scan for the room A * base, with each direction classified in the
/// base room after pulling it back by A. The linear map conjugates the
/// directional flows, so verdicts, cycle words and multipliers agree, while
/// the base geometry stays well conditioned for large distortions.
inline CylinderScan find_cylinders(const Room& base, const SL2Matrix& A, double eps_angle, std::size_t budget) {
  const Room image = apply_sl2(A, base);
  const SL2Matrix inv = A.inverse();
  return detail::scan_cylinders(inward_directions(image), eps_angle, [&](double th, double* m, bool* ex) {
    return detail::cylinder_signature(base, projective_action(inv, th), budget, m, ex);
  });
}

/// Largest cylinder angle among the cylinders found at this resolution.
inline double theta_sup(const Room& room, double eps_angle, std::size_t budget) {
  double best = 0;
  for (const auto& c : find_cylinders(room, eps_angle, budget).cylinders) best = std::max(best, c.angle());
  return best;
}

struct RotationNumber {
  double value = 0;
  std::optional<Rational> exact;  // set when a periodic orbit is verified
  std::size_t iterations = 0;
  double bracket_lo = 0;
  double bracket_hi = 1;
};

/// Circle map of the Herman family: the (rhoA, rhoB)-map at the parameter
/// where the two branch images concatenate.
inline TwoSlopeMap<double> herman_map(double rhoA, double rhoB) {
  if (!(rhoA > 1 && rhoB > 0 && rhoB < 1)) fail(ErrorCode::InvalidArgument, "need rhoA > 1 > rhoB > 0");
  return TwoSlopeMap<double>(rhoA, rhoB, (1 - rhoB) / (rhoA - rhoB));
}

namespace detail {

/// Degree-one lift of the Herman circle map.
struct HermanLift {
  double rhoA, rhoB, xs, bA;
  double operator()(double x) const {
    double fl = std::floor(x);
    double f = x - fl;
    double y = f < xs ? rhoA * f + bA : rhoB * (f - xs) + 1.0;
    return fl + y;
  }
};

}  // namespace detail

/// Birkhoff estimate with iteration count n (no stopping rule).
inline double rotation_estimate(double rhoA, double rhoB, std::size_t n) {
  TwoSlopeMap<double> m = herman_map(rhoA, rhoB);
  detail::HermanLift F{rhoA, rhoB, m.xT(), m.bA()};
  double x = 0;
  for (std::size_t i = 0; i < n; ++i) x = F(x);
  return x / double(n);
}

inline RotationNumber rotation_number(double rhoA, double rhoB, double tol, std::size_t max_iter = std::size_t(1) << 30) {
  if (!(tol > 0)) fail(ErrorCode::InvalidArgument, "tol must be positive");
  TwoSlopeMap<double> m = herman_map(rhoA, rhoB);
  detail::HermanLift F{rhoA, rhoB, m.xT(), m.bA()};
  RotationNumber out;

  // periodic orbit check after a burn-in
  double x = 0;
  for (int i = 0; i < 2000; ++i) x = F(x) - std::floor(F(x));
  for (std::int64_t q = 1; q <= 2000; ++q) {
    double y = x;
    for (std::int64_t i = 0; i < q; ++i) y = F(y);
    double p = std::round(y - x);
    if (std::abs(y - x - p) <= 1e-12) {
      double z = y - p;  // back near x; one more period must return to x + p
      for (std::int64_t i = 0; i < q; ++i) z = F(z);
      if (std::abs(z - x - p) <= 1e-12) {
        out.exact = Rational(static_cast<long long>(p), q);
        out.value = to_double(*out.exact);
        out.iterations = 2000 + 2 * std::size_t(q);
        out.bracket_lo = out.bracket_hi = out.value;
        return out;
      }
    }
  }

  // doubling Birkhoff averages with a Cauchy stopping rule
  double y = 0;
  std::size_t done = 0;
  double prev = NAN;
  for (std::size_t n = 1024; n <= max_iter; n *= 2) {
    for (; done < n; ++done) y = F(y);
    double est = y / double(n);
    out.value = est;
    out.iterations = n;
    out.bracket_lo = (y - 1) / double(n);
    out.bracket_hi = (y + 1) / double(n);
    if (!std::isnan(prev) && std::abs(est - prev) <= tol && 2.0 / double(n) <= 2 * tol) return out;
    prev = est;
  }
  fail(ErrorCode::NonConvergence, "rotation number not converged; bracket [" + std::to_string(out.bracket_lo) + ", " +
                                      std::to_string(out.bracket_hi) + "]");
}

}  // namespace dilation
