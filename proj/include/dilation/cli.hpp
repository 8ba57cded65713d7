#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dilation/io.hpp"

namespace dilation::cli {

/// Parsed flags shared by every command.
struct RunConfig {
  std::string command;
  std::string format = "json";
  std::string svg;
  std::uint64_t seed = 0;
  std::optional<std::size_t> budget;  // per-command default when absent
  double tol = 1e-8;

  // room description
  std::string room_file;
  std::string e1 = "1,0", e2 = "0,1";
  std::optional<double> mu1, mu2;
  std::string mu1_exact, mu2_exact;

  // command specific
  std::string matrix;
  std::string word;
  std::string convention = "cut-and-paste";
  std::string target;
  double theta = 0;
  double eps = 1e-2;
  double t_max = 12;
  std::size_t steps = 12;
  std::string rhoA = "0.5", rhoB = "0.5";
  std::size_t n = 0;
  bool float_mode = false;
  bool table = false;
  std::string rhoA_range;

  std::size_t budget_or(std::size_t fallback) const { return budget.value_or(fallback); }
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

inline double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument, what + ": not a number: '" + s + "'");
  }
}

inline std::vector<double> parse_doubles(const std::string& s, std::size_t count, const std::string& what) {
  auto parts = split(s, ',');
  if (parts.size() != count)
    fail(ErrorCode::InvalidArgument, what + " expects " + std::to_string(count) + " comma-separated values");
  std::vector<double> out;
  for (const auto& p : parts) out.push_back(parse_double(p, what));
  return out;
}

inline QuadraticSurd parse_surd_flag(const std::string& s, const std::string& what) {
  auto parts = split(s, ',');
  if (parts.size() != 3) fail(ErrorCode::InvalidArgument, what + " expects a,b,d");
  std::int64_t d = 0;
  try {
    std::size_t pos = 0;
    d = std::stoll(parts[2], &pos);
    if (pos != parts[2].size()) throw std::invalid_argument(parts[2]);
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument, what + ": radicand must be an integer");
  }
  return QuadraticSurd(parse_rational(parts[0]), parse_rational(parts[1]), d);
}

inline LogDilationParams params_from_flags(const RunConfig& c) {
  bool any_float = c.mu1.has_value() || c.mu2.has_value();
  bool any_exact = !c.mu1_exact.empty() || !c.mu2_exact.empty();
  if (any_float && any_exact) fail(ErrorCode::InvalidArgument, "mixing exact and float parameter flags is not allowed");
  if (any_exact) {
    if (c.mu1_exact.empty() || c.mu2_exact.empty())
      fail(ErrorCode::InvalidArgument, "both --mu1-exact and --mu2-exact are required");
    return {parse_surd_flag(c.mu1_exact, "--mu1-exact"), parse_surd_flag(c.mu2_exact, "--mu2-exact")};
  }
  if (!c.mu1 || !c.mu2) fail(ErrorCode::InvalidArgument, "both --mu1 and --mu2 are required");
  return {*c.mu1, *c.mu2};
}

inline Room room_from_flags(const RunConfig& c) {
  if (!c.room_file.empty()) {
    if (c.mu1 || c.mu2 || !c.mu1_exact.empty() || !c.mu2_exact.empty())
      fail(ErrorCode::InvalidArgument, "--room cannot be combined with parameter flags");
    std::ifstream in(c.room_file);
    if (!in) fail(ErrorCode::InvalidArgument, "cannot read room file " + c.room_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return io::room_from_json(ss.str());
  }
  auto a = parse_doubles(c.e1, 2, "--e1");
  auto b = parse_doubles(c.e2, 2, "--e2");
  return build_room(Basis{{a[0], a[1]}, {b[0], b[1]}}, params_from_flags(c));
}

inline TwistConvention convention_from(const std::string& s) {
  if (s == "literal") return TwistConvention::Literal;
  if (s == "cut-and-paste") return TwistConvention::CutAndPaste;
  fail(ErrorCode::InvalidArgument, "--convention must be literal or cut-and-paste");
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

inline void emit(std::ostream& out, const io::Json& j) { out << j.dump(2) << '\n'; }

inline bool csv(const RunConfig& c) { return c.format == "csv"; }

inline void require_json(const RunConfig& c) {
  if (csv(c)) fail(ErrorCode::InvalidArgument, "command '" + c.command + "' has no CSV output");
}

// ------------------------------------------------------------ commands

inline int cmd_room(const RunConfig& c, std::ostream& out) {
  require_json(c);
  Room room = canonicalize(room_from_flags(c));
  if (!c.svg.empty()) write_file(c.svg, io::pentagon_svg(room));
  emit(out, io::to_json(room));
  return 0;
}

inline int cmd_act(const RunConfig& c, std::ostream& out) {
  require_json(c);
  auto m = parse_doubles(c.matrix, 4, "--matrix");
  Room room = apply_sl2(make_sl2(m[0], m[1], m[2], m[3]), room_from_flags(c));
  if (!c.svg.empty()) write_file(c.svg, io::pentagon_svg(room));
  emit(out, io::to_json(room));
  return 0;
}

inline int cmd_twist(const RunConfig& c, std::ostream& out) {
  Word w = parse_word(c.word);
  WordResult r = apply_word(w, room_from_flags(c), convention_from(c.convention));
  if (!c.svg.empty()) write_file(c.svg, io::pentagon_svg(r.room));
  if (csv(c)) {
    out << "step,mu1,mu2\n";
    for (std::size_t i = 0; i < r.mu_trajectory.size(); ++i)
      out << i << ',' << io::csv_number(r.mu_trajectory[i][0]) << ',' << io::csv_number(r.mu_trajectory[i][1])
          << '\n';
    return 0;
  }
  io::Json traj = io::Json::array();
  for (const auto& p : r.mu_trajectory) traj.push_back(io::Json::array({p[0], p[1]}));
  emit(out, {{"word", to_string(w)}, {"room", io::to_json(r.room)}, {"mu_trajectory", traj}});
  return 0;
}

inline int cmd_reach(const RunConfig& c, std::ostream& out) {
  Room room = room_from_flags(c);
  LogDilationParams target;
  if (c.target.empty()) {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    double a = u(rng);
    double b = u(rng);
    target = {a, b};
  } else {
    auto t = parse_doubles(c.target, 2, "--target");
    target = {t[0], t[1]};
  }
  ReachResult r = reach_target(room, target, c.eps, c.budget_or(100000), {}, convention_from(c.convention));
  if (csv(c)) {
    out << "step,mu1,mu2\n";
    for (std::size_t i = 0; i < r.mu_trajectory.size(); ++i)
      out << i << ',' << io::csv_number(r.mu_trajectory[i][0]) << ',' << io::csv_number(r.mu_trajectory[i][1]) << '\n';
    return 0;
  }
  io::Json j = io::to_json(r);
  j["target"] = io::Json::array({target.mu1, target.mu2});
  emit(out, j);
  return 0;
}

inline int cmd_classify(const RunConfig& c, std::ostream& out) {
  require_json(c);
  DirectionClass d = classify_direction(room_from_flags(c), c.theta, c.budget_or(200));
  emit(out, io::to_json(d));
  return 0;
}

inline int cmd_scan(const RunConfig& c, std::ostream& out) {
  Room room = room_from_flags(c);
  CylinderScan s = find_cylinders(room, c.eps, c.budget_or(60));
  if (!c.svg.empty()) {
    AngleInterval in = inward_directions(room);
    const std::size_t n = 360;
    std::vector<io::WheelSample> wheel;
    for (std::size_t i = 0; i < n; ++i) {
      double th = in.lo + kPi * (double(i) + 0.5) / double(n);
      DirectionVerdict v = DirectionVerdict::Boundary;
      try {
        v = classify_direction(room, th, c.budget_or(60)).verdict;
      } catch (const Error&) {
      }
      wheel.push_back({in.lo + kPi * double(i) / double(n), v});
    }
    write_file(c.svg, io::direction_wheel_svg(wheel));
  }
  if (csv(c)) io::write_cylinders_csv(out, s);
  else emit(out, io::to_json(s));
  return 0;
}

inline int cmd_flow(const RunConfig& c, std::ostream& out) {
  MonitorResult m = divergence_monitor(room_from_flags(c), c.t_max, c.steps, c.eps, c.budget_or(60));
  if (csv(c)) io::write_flow_csv(out, m);
  else emit(out, io::to_json(m));
  return 0;
}

inline int cmd_rotnum(const RunConfig& c, std::ostream& out) {
  double b = detail::parse_double(c.rhoB, "--rhoB");
  std::vector<double> as;
  if (!c.rhoA_range.empty()) {
    auto r = parse_doubles(c.rhoA_range, 3, "--rhoA-range");
    auto count = static_cast<std::size_t>(r[2]);
    if (count < 2 || double(count) != r[2]) fail(ErrorCode::InvalidArgument, "--rhoA-range count must be an integer >= 2");
    for (std::size_t i = 0; i < count; ++i) as.push_back(r[0] + (r[1] - r[0]) * double(i) / double(count - 1));
  } else {
    as.push_back(detail::parse_double(c.rhoA, "--rhoA"));
  }
  std::vector<io::RotationRow> rows;
  for (double a : as) rows.push_back({a, b, rotation_number(a, b, c.tol)});
  if (csv(c)) {
    io::write_rotation_csv(out, rows);
  } else if (rows.size() == 1) {
    emit(out, io::to_json(rows.front().rot));
  } else {
    io::Json arr = io::Json::array();
    for (const auto& r : rows) {
      io::Json j = io::to_json(r.rot);
      j["rhoA"] = r.rhoA;
      j["rhoB"] = r.rhoB;
      arr.push_back(j);
    }
    emit(out, arr);
  }
  return 0;
}

inline int cmd_measure(const RunConfig& c, std::ostream& out) {
  std::vector<std::size_t> ns;
  if (c.table)
    for (std::size_t k = 0; k <= c.n; ++k) ns.push_back(k);
  else
    ns.push_back(c.n);
  if (c.float_mode) {
    double a = detail::parse_double(c.rhoA, "--rhoA");
    double b = detail::parse_double(c.rhoB, "--rhoB");
    std::vector<std::pair<std::size_t, double>> rows;
    for (auto k : ns) rows.emplace_back(k, survivor_measure(a, b, k));
    if (c.table || csv(c)) io::write_survivor_csv(out, rows);
    else out << io::csv_number(rows.front().second) << '\n';
  } else {
    Rational a = parse_rational(c.rhoA);
    Rational b = parse_rational(c.rhoB);
    std::vector<std::pair<std::size_t, Rational>> rows;
    for (auto k : ns) rows.emplace_back(k, survivor_measure(a, b, k));
    if (c.table || csv(c)) io::write_survivor_csv(out, rows);
    else out << to_string(rows.front().second) << '\n';
  }
  return 0;
}

inline int cmd_orbit_closure(const RunConfig& c, std::ostream& out) {
  require_json(c);
  LogDilationParams p = c.room_file.empty() ? params_from_flags(c) : room_from_flags(c).params();
  emit(out, io::to_json(holonomy_class(p)));
  return 0;
}

inline int exit_code_for(ErrorCode code) {
  return code == ErrorCode::BudgetExhausted || code == ErrorCode::NonConvergence ? 3 : 2;
}

inline void diagnostic(std::ostream& err, const std::string& code, const std::string& message) {
  io::Json j{{"error", code}, {"message", message}};
  err << j.dump() << '\n';
}

}  // namespace detail

/// Runs one command line (without the program name).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Dilation tori: rooms, twists, directions and flows", "dilation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--svg", c.svg, "Write an SVG picture to this path");
  app.add_option("--seed", c.seed, "Seed for sampled choices");
  app.add_option("--budget", c.budget, "Step budget");
  app.add_option("--tol", c.tol, "Numerical tolerance");

  auto room_flags = [&](CLI::App* s) {
    s->add_option("--room", c.room_file, "Room JSON file");
    s->add_option("--e1", c.e1, "First basis vector x,y");
    s->add_option("--e2", c.e2, "Second basis vector x,y");
    s->add_option("--mu1", c.mu1, "First log-dilation parameter");
    s->add_option("--mu2", c.mu2, "Second log-dilation parameter");
    s->add_option("--mu1-exact", c.mu1_exact, "First parameter as a,b,d meaning a+b*sqrt(d)");
    s->add_option("--mu2-exact", c.mu2_exact, "Second parameter as a,b,d");
  };

  auto* room = app.add_subcommand("room", "Build, validate and canonicalize a room");
  room_flags(room);
  auto* act = app.add_subcommand("act", "Apply an SL2 matrix to a room");
  room_flags(act);
  act->add_option("--matrix", c.matrix, "Matrix entries a,b,c,d")->required();
  auto* tw = app.add_subcommand("twist", "Apply a twist word over {A,a,B,b}");
  room_flags(tw);
  tw->add_option("--word", c.word, "Twist word")->required();
  tw->add_option("--convention", c.convention, "literal or cut-and-paste");
  auto* reach = app.add_subcommand("reach", "Search a twist word reaching a target parameter");
  room_flags(reach);
  reach->add_option("--target", c.target, "Target mu1,mu2 (random from the seed when absent)");
  reach->add_option("--eps", c.eps, "Target tolerance");
  reach->add_option("--convention", c.convention, "literal or cut-and-paste");
  auto* cls = app.add_subcommand("classify", "Classify one direction");
  room_flags(cls);
  cls->add_option("--theta", c.theta, "Direction angle")->required();
  auto* scan = app.add_subcommand("scan", "Find cylinder direction intervals");
  room_flags(scan);
  scan->add_option("--eps", c.eps, "Angular resolution");
  auto* flow = app.add_subcommand("flow", "Divergence monitor along the diagonal flow");
  room_flags(flow);
  flow->add_option("--t-max", c.t_max, "Final flow time");
  flow->add_option("--steps", c.steps, "Number of time steps");
  flow->add_option("--eps", c.eps, "Angular resolution");
  auto* rot = app.add_subcommand("rotnum", "Rotation number of the circle map");
  rot->add_option("--rhoA", c.rhoA, "Left slope (> 1)");
  rot->add_option("--rhoB", c.rhoB, "Right slope (< 1)");
  rot->add_option("--rhoA-range", c.rhoA_range, "Scan lo,hi,count");
  auto* meas = app.add_subcommand("measure", "Measure of n-times renormalizable parameters");
  meas->add_option("--rhoA", c.rhoA, "Left slope");
  meas->add_option("--rhoB", c.rhoB, "Right slope");
  meas->add_option("--n", c.n, "Depth");
  meas->add_flag("--float", c.float_mode, "Floating point instead of exact rationals");
  meas->add_flag("--exact", [&c](std::int64_t) { c.float_mode = false; }, "Exact rationals (default)");
  meas->add_flag("--table", c.table, "CSV table for every depth up to n");
  auto* oc = app.add_subcommand("orbit-closure", "Orbit closure of the twist action");
  room_flags(oc);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    detail::diagnostic(err, "InvalidArgument", e.what());
    return 2;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    if (c.command == "room") return detail::cmd_room(c, out);
    if (c.command == "act") return detail::cmd_act(c, out);
    if (c.command == "twist") return detail::cmd_twist(c, out);
    if (c.command == "reach") return detail::cmd_reach(c, out);
    if (c.command == "classify") return detail::cmd_classify(c, out);
    if (c.command == "scan") return detail::cmd_scan(c, out);
    if (c.command == "flow") return detail::cmd_flow(c, out);
    if (c.command == "rotnum") return detail::cmd_rotnum(c, out);
    if (c.command == "measure") return detail::cmd_measure(c, out);
    if (c.command == "orbit-closure") return detail::cmd_orbit_closure(c, out);
  } catch (const Error& e) {
    detail::diagnostic(err, std::string(to_string(e.code())), e.what());
    return detail::exit_code_for(e.code());
  }
  detail::diagnostic(err, "InvalidArgument", "unknown command");
  return 2;
}

}  // namespace dilation::cli
