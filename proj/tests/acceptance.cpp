// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dilation/dilation.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace dilation;

namespace {

struct Verdict {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail << "failed: " << what << "; ";
    }
  }
};

const Rational kHalf(1, 2);
const Twist kAll[4] = {Twist::T1, Twist::T2, Twist::T1inv, Twist::T2inv};

void subdivision_formulas(Verdict& v) {
  auto s = subdivision(kHalf, kHalf);
  v.require(s.left_length == Rational(1, 3) && s.hole_length == Rational(1, 3) && s.right_length == Rational(1, 3),
            "(1/2,1/2) triple is not (1/3,1/3,1/3)");
  gen::Rng rng(1001);
  double worst = 0;
  int n = 0;
  while (n < 1000) {
    double a = gen::uniform(rng, 0.01, 5), b = gen::uniform(rng, 0.01, 5);
    if (a > 1 && b > 1) continue;  // no valid triple
    ++n;
    auto d = subdivision(a, b);
    worst = std::max({worst, std::abs(d.left_length - b / (1 + b)), std::abs(d.right_length - a / (1 + a)),
                      std::abs(d.hole_length - std::max(0.0, 1 - a * b) / ((1 + a) * (1 + b)))});
  }
  v.require(worst <= 1e-12, "closed-form lengths");
  v.detail << "max length error " << worst;
}

void rauzy_oracle(Verdict& v) {
  gen::Rng rng(1002);
  double worst = 0;
  for (int n = 0; n < 1000;) {
    TwoSlopeMap<double> m = gen::any_map(rng);
    StepClass c = classify_step(m);
    if (c != StepClass::WinnerA && c != StepClass::WinnerB) continue;
    ++n;
    worst = std::max(worst, oracle::induction_error(m, 200));
  }
  v.require(worst <= 1e-9, "first-return oracle");
  int slopes = 0;
  while (slopes < 1000) {
    Rational a(gen::uniform_int(rng, 1, 60), 20), b(gen::uniform_int(rng, 1, 19), 20);
    auto [lo, hi] = valid_range(a, b);
    Rational x = lo + (hi - lo) * Rational(gen::uniform_int(rng, 1, 99), 100);
    if (!(x > 0 && x < 1)) continue;
    TwoSlopeMap<Rational> m(a, b, x);
    StepClass c = classify_step(m);
    if (c != StepClass::WinnerA && c != StepClass::WinnerB) continue;
    ++slopes;
    auto step = induce(m);
    bool rule = c == StepClass::WinnerA ? (step.map.rhoA() == a && step.map.rhoB() == a * b)
                                        : (step.map.rhoA() == a * b && step.map.rhoB() == b);
    v.require(rule, "slope rule");
  }
  v.detail << "sup error " << worst << " over 1000 maps; 1000 exact slope pairs";
}

void hole_dynamics(Verdict& v) {
  auto c = attracting_cycle_in_hole(TwoSlopeMap<Rational>(kHalf, kHalf, kHalf));
  v.require(c.points.size() == 2 && c.points[0] == Rational(1, 6) && c.points[1] == Rational(5, 6), "cycle points");
  v.require(c.multiplier == Rational(1, 4), "cycle multiplier");
  TwoSlopeMap<double> m(0.5, 0.5, 0.5);
  gen::Rng rng(1003);
  int converged = 0, worst_iters = 0;
  for (int s = 0; s < 100; ++s) {
    double x = gen::uniform(rng, 0, 1);
    for (int it = 1; it <= 10000; ++it) {
      if (x == m.xT()) break;
      x = m(x);
      if (std::min(std::abs(x - 1.0 / 6), std::abs(x - 5.0 / 6)) < 1e-8) {
        ++converged;
        worst_iters = std::max(worst_iters, it);
        break;
      }
    }
  }
  v.require(converged == 100, "random starts converge");
  v.detail << "cycle {1/6, 5/6} multiplier 1/4; " << converged << "/100 starts within 1e-8, worst " << worst_iters
           << " iterations";
}

void cantor_measure(Verdict& v) {
  v.require(survivor_measure(kHalf, kHalf, 0) == 1, "n=0");
  v.require(survivor_measure(kHalf, kHalf, 1) == Rational(2, 3), "n=1");
  v.require(survivor_measure(kHalf, kHalf, 2) == Rational(8, 21), "n=2");
  Rational bound(1);
  for (std::size_t n = 0; n <= 12; ++n) {
    Rational s = survivor_measure(kHalf, kHalf, n);
    v.require(s <= bound, "geometric bound at n=" + std::to_string(n));
    if (n == 12) v.detail << "1, 2/3, 8/21; n=12 measure " << to_double(s) << " <= " << to_double(bound);
    bound *= Rational(2, 3);
  }
}

void equivariance(Verdict& v) {
  gen::Rng rng(1005);
  int compared = 0, cylinders = 0, skipped = 0;
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    Room r = gen::room(rng);
    SL2Matrix A = gen::sl2(rng, 0.7);
    AngleInterval in = inward_directions(r);
    double theta = gen::uniform(rng, in.lo + 0.02, in.hi - 0.02);
    DirectionClass a, b;
    try {
      a = classify_direction(r, theta, 200);
      b = classify_direction(apply_sl2(A, r), projective_action(A, theta), 200);
    } catch (const Error&) {
      ++skipped;
      continue;
    }
    ++compared;
    v.require(a.verdict == b.verdict, "verdict changed under the action");
    if (a.verdict == DirectionVerdict::Cylinder && b.verdict == DirectionVerdict::Cylinder) {
      ++cylinders;
      worst = std::max(worst, std::abs(a.multiplier - b.multiplier) / a.multiplier);
    }
  }
  v.require(worst <= 1e-9, "multiplier drift");
  v.require(compared >= 150, "too few comparable samples");
  v.detail << compared << " samples compared (" << skipped << " degenerate), " << cylinders
           << " cylinders, max relative multiplier change " << worst;
}

void twist_correctness(Verdict& v) {
  v.require(mu_matrix(Twist::T1) == IntMatrix2{1, 0, 1, 1} && mu_matrix(Twist::T2) == IntMatrix2{1, 1, 0, 1} &&
                mu_matrix(Twist::T1inv) == IntMatrix2{1, 0, -1, 1} && mu_matrix(Twist::T2inv) == IntMatrix2{1, -1, 0, 1},
            "mu matrices");
  gen::Rng rng(1006);
  auto q = [&](int lo, int hi) { return Rational(gen::uniform_int(rng, lo, hi), gen::uniform_int(rng, 1, 9)); };
  int trips = 0;
  for (auto conv : {TwistConvention::Literal, TwistConvention::CutAndPaste}) {
    for (int i = 0; i < 200; ++i) {
      BasisT<Rational> b{{q(-9, 9), q(-9, 9)}, {q(-9, 9), q(-9, 9)}};
      Rational nu1 = q(1, 30), nu2 = q(1, 30);
      if (b.det() <= 0 || (nu1 < 1 && nu2 < 1)) continue;
      ExactDatum x{b, nu1, nu2};
      for (Twist g : kAll) {
        try {
          ExactDatum y = twist_exact(g, x, conv);
          v.require(twist_exact(inverse(g), y, conv) == x, "exact round trip");
          ++trips;
        } catch (const Error& e) {
          v.require(e.code() == ErrorCode::ResultOutsideQ, "unexpected twist error");
        }
      }
    }
  }
  v.detail << "mu matrices and inverses exact; " << trips << " exact round trips";
}

void density_machinery(Verdict& v) {
  LogDilationParams mu(QuadraticSurd(1), QuadraticSurd(0, 1, 2));
  GaussResult g = gauss_contraction(mu, 1e-3);
  mu_trajectory(g.word, mu);  // throws on an inadmissible prefix
  double nrm = std::hypot(g.final_mu.mu1, g.final_mu.mu2);
  v.require(nrm < 1e-3, "contraction norm");
  v.detail << "contraction to |mu| " << nrm << " in " << g.word.size() << " admissible steps; ";

  gen::Rng rng(1007);
  Room r = build_room({1, 0}, {0, 1}, 1.0, std::sqrt(2.0));
  double worst = 0;
  std::size_t longest = 0;
  for (int i = 0; i < 20; ++i) {
    LogDilationParams target{gen::uniform(rng, 0.1, 10), gen::uniform(rng, 0.1, 10)};
    ReachResult res = reach_target(r, target, 1e-2, 100000, {}, TwistConvention::CutAndPaste);
    auto replay = mu_trajectory(res.word, r.params());
    double err = std::hypot(replay.back()[0] - target.mu1, replay.back()[1] - target.mu2);
    worst = std::max(worst, err);
    longest = std::max(longest, res.word.size());
  }
  v.require(worst < 1e-2, "target distance");
  v.detail << "20 targets reached, worst distance " << worst << ", longest word " << longest;
}

std::array<QuadraticSurd, 2> act(const IntMatrix2& m, const std::array<QuadraticSurd, 2>& mu) {
  auto scale = [](std::int64_t k, const QuadraticSurd& x) { return QuadraticSurd(Rational(k)) * x; };
  return {scale(m.a, mu[0]) + scale(m.b, mu[1]), scale(m.c, mu[0]) + scale(m.d, mu[1])};
}

void orbit_closure(Verdict& v) {
  HolonomyClass d = holonomy_class(LogDilationParams(QuadraticSurd(1), QuadraticSurd(2)));
  v.require(d.verdict == HolonomyVerdict::Discrete && d.orbit() == OrbitClosure::Closed, "(1,2)");
  HolonomyClass n = holonomy_class(LogDilationParams(QuadraticSurd(1), QuadraticSurd(0, 1, 2)));
  v.require(n.verdict == HolonomyVerdict::NonDiscrete && n.orbit() == OrbitClosure::Dense, "(1,sqrt2)");
  gen::Rng rng(1008);
  int words = 0;
  for (const auto& mu : {std::array<QuadraticSurd, 2>{QuadraticSurd(1), QuadraticSurd(2)},
                         std::array<QuadraticSurd, 2>{QuadraticSurd(1), QuadraticSurd(0, 1, 2)}}) {
    HolonomyVerdict v0 = holonomy_class(LogDilationParams(mu[0], mu[1])).verdict;
    for (int i = 0; i < 100; ++i) {
      Word w;
      int len = gen::uniform_int(rng, 1, 15);
      for (int k = 0; k < len; ++k) w.push_back(kAll[gen::uniform_int(rng, 0, 3)]);
      auto m = act(mu_matrix(w), mu);
      v.require(holonomy_class(LogDilationParams(m[0], m[1])).verdict == v0, "verdict changed under " + to_string(w));
      ++words;
    }
  }
  v.detail << "Discrete/Closed and NonDiscrete/Dense; invariant over " << words << " random words";
}

void distortion_bound(Verdict& v) {
  v.require(distortion(0) == 1, "distortion(0)");
  double worst = 0;
  for (int i = 0; i < 3000; ++i) worst = std::max(worst, distortion(30.0 * i / 2999));
  v.require(worst <= 2 + 1e-9, "bound");
  v.detail << "max " << worst << " over 3000 points";
}

Room rotated_to_horizontal(const Room& r, double theta) { return apply_sl2(SL2Matrix::rotation(-theta), r); }

void divergence_trends(Verdict& v) {
  Room sym = gen::symmetric_room();

  // (a) horizontal cylinder: rotate the widest cylinder's midpoint to the horizontal
  CylinderScan s = find_cylinders(sym, 0.05, 60);
  const Cylinder* widest = &s.cylinders.front();
  for (const auto& c : s.cylinders)
    if (c.angle() > widest->angle()) widest = &c;
  Room ra = rotated_to_horizontal(sym, 0.5 * (widest->theta1 + widest->theta2));
  MonitorResult ma = divergence_monitor(ra, 12, 12, 0.05, 60);
  bool increasing = true;
  for (std::size_t i = 1; i < ma.samples.size(); ++i)
    increasing = increasing && ma.samples[i].theta_sup >= ma.samples[i - 1].theta_sup - 1e-9;
  double m0 = classify_direction(ra, 0.0, 200).multiplier, drift = 0;
  for (double t = 0; t <= 12; t += 1) drift = std::max(drift, std::abs(classify_direction(flow(ra, t), 0.0, 200).multiplier - m0));
  v.require(increasing, "(a) theta_sup not increasing");
  v.require(ma.samples.back().theta_sup > 3.0, "(a) final theta_sup");
  v.require(drift < 1e-9, "(a) multiplier drift");
  v.detail << "(a) theta_sup " << ma.samples.front().theta_sup << " -> " << ma.samples.back().theta_sup
           << ", multiplier " << m0 << " drift " << drift << "; ";

  // (b) door direction horizontal
  Room rb = rotated_to_horizontal(sym, door_direction(sym));
  double sup_b = flow_sample(rb, 12, 0.01, 60, {}).theta_sup;
  v.require(sup_b < 0.05, "(b) final theta_sup");
  v.detail << "(b) theta_sup(12) " << sup_b << "; ";

  // (c) a direction that renormalizes many times, chosen inside a long word interval
  Room rc = rotated_to_horizontal(build_room({1, 0}, {0, 1}, 0.1, 0.1), -0.84407547342431233);
  DirectionClass h = classify_direction(rc, 0.0, 200);
  v.require(h.rauzy_word.size() >= 8, "(c) horizontal renormalizes fewer than 8 times");
  MonitorResult mc = divergence_monitor(rc, 12, 12, 0.01, 60);
  bool growing = true;
  for (std::size_t i = 1; i < mc.samples.size(); ++i)
    growing = growing && mc.samples[i].max_multiplier >= mc.samples[i - 1].max_multiplier;
  double factor = mc.samples.back().max_multiplier / mc.samples.front().max_multiplier;
  v.require(growing, "(c) max_multiplier not increasing");
  v.require(factor >= 1e3, "(c) growth factor");
  v.detail << "(c) horizontal word " << h.rauzy_word << ", max_multiplier x" << factor;
}

void herman_rotation(Verdict& v) {
  RotationNumber r = rotation_number(2, 0.5, 1e-8);
  v.require(r.exact && *r.exact == kHalf, "exact 1/2");
  // Cauchy check of the Birkhoff estimator itself
  double prev = rotation_estimate(2, 0.5, 1024), gap = 1;
  std::size_t n = 1024;
  while (gap > 1e-8 && n < (std::size_t(1) << 30)) {
    n *= 2;
    double est = rotation_estimate(2, 0.5, n);
    gap = std::abs(est - prev);
    prev = est;
  }
  v.require(gap <= 1e-8, "cap doubling");
  v.require(std::abs(prev - 0.5) <= 1e-8, "limit");
  v.detail << "exact 1/2 (estimator gap " << gap << " at n=" << n << "); ";

  // an irrational case where the estimator has to converge slowly
  const double a = 3, b = 0.5, expected = std::log(a) / (std::log(a) - std::log(b));
  RotationNumber ir = rotation_number(a, b, 1e-8);
  double longer = rotation_estimate(a, b, 2 * ir.iterations);
  v.require(!ir.exact, "(3,1/2) reported as rational");
  v.require(std::abs(ir.value - longer) <= 1e-8, "(3,1/2) cap doubling");
  v.require(std::abs(ir.value - expected) <= 2e-8, "(3,1/2) log-ratio value");
  v.detail << "(3,1/2) " << ir.value << " after " << ir.iterations << " iterations, doubled-cap change "
           << std::abs(ir.value - longer) << ", log-ratio error " << std::abs(ir.value - expected);
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Verdict&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"subdivision formulas", subdivision_formulas}, {"Rauzy oracle equivalence", rauzy_oracle},
      {"hole dynamics", hole_dynamics},               {"Cantor measure trend", cantor_measure},
      {"equivariance", equivariance},                 {"twist correctness", twist_correctness},
      {"density machinery", density_machinery},       {"orbit-closure dichotomy", orbit_closure},
      {"distortion", distortion_bound},               {"divergence trends", divergence_trends},
      {"Herman rotation number", herman_rotation},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].run(v);
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail << "exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!v.ok) ++failures;
    std::printf("%s %2zu %s (%.1fs): %s\n", v.ok ? "PASS" : "FAIL", i + 1, criteria[i].name, secs, v.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
