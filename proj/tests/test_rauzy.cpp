#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "dilation/dilation.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace dilation;

namespace {

const Rational kHalf(1, 2);

TwoSlopeMap<double> winner_map(gen::Rng& rng) {
  for (;;) {
    TwoSlopeMap<double> m = gen::any_map(rng);
    StepClass c = classify_step(m);
    if (c == StepClass::WinnerA || c == StepClass::WinnerB) return m;
  }
}

Rational random_rational(gen::Rng& rng, int lo, int hi, int den) {
  return Rational(gen::uniform_int(rng, lo, hi), den);
}

std::string random_word(gen::Rng& rng, std::size_t n) {
  std::string w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(gen::uniform_int(rng, 0, 1) ? 'R' : 'L');
  return w;
}

}  // namespace

TEST(ClassifyStep, Examples) {
  EXPECT_EQ(classify_step(TwoSlopeMap<double>(0.5, 0.5, 0.2)), StepClass::WinnerB);
  EXPECT_EQ(classify_step(TwoSlopeMap<double>(0.5, 0.5, 0.5)), StepClass::Halt);
  EXPECT_EQ(classify_step(TwoSlopeMap<double>(0.5, 0.5, 0.8)), StepClass::WinnerA);
  EXPECT_EQ(classify_step(TwoSlopeMap<Rational>(kHalf, kHalf, Rational(1, 3))), StepClass::Boundary);
  EXPECT_EQ(classify_step(TwoSlopeMap<Rational>(kHalf, kHalf, Rational(2, 3))), StepClass::Boundary);
}

TEST(ClassifyStep, NoHaltWhenSlopeProductIsOne) {
  gen::Rng rng(1);
  auto [lo, hi] = valid_range(2.0, 0.5);
  for (int i = 0; i < 1000; ++i) {
    double x = gen::uniform(rng, lo, hi);
    if (!(x > 0 && x < 1)) continue;
    EXPECT_NE(classify_step(TwoSlopeMap<double>(2.0, 0.5, x)), StepClass::Halt);
  }
}

TEST(ClassifyStepProperty, ForcedRegimeOnlyAllowsB) {
  gen::Rng rng(2);
  int seen = 0;
  while (seen < 2000) {
    TwoSlopeMap<double> m = gen::any_map(rng);
    if (!(m.rhoA() > 1 && m.rhoA() * m.rhoB() > 1)) continue;
    ++seen;
    StepClass c = classify_step(m);
    EXPECT_NE(c, StepClass::WinnerA);
    EXPECT_NE(c, StepClass::Halt);
  }
}

TEST(ClassifyStepProperty, MatchesBranchImageMembership) {
  gen::Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    TwoSlopeMap<double> m = gen::any_map(rng);
    double x = m.xT();
    bool in_image_b = x < m.rhoB() * (1 - x);  // T(B) = (0, rhoB (1 - xT)]
    bool in_image_a = x > m.bA();               // T(A) = [bA, 1)
    Subdivision<double> s = subdivision(m.rhoA(), m.rhoB());
    switch (classify_step(m)) {
      case StepClass::WinnerB:
        EXPECT_TRUE(in_image_b);
        EXPECT_LT(x, s.left.hi);
        break;
      case StepClass::WinnerA:
        EXPECT_TRUE(in_image_a);
        EXPECT_GT(x, s.right.lo);
        break;
      case StepClass::Halt:
        EXPECT_FALSE(in_image_a || in_image_b);
        ASSERT_TRUE(s.hole.has_value());
        EXPECT_TRUE(s.hole->contains(x));
        break;
      case StepClass::Boundary:
        break;
    }
  }
}

TEST(Induce, Examples) {
  auto b = induce(TwoSlopeMap<Rational>(kHalf, kHalf, Rational(1, 5)));
  EXPECT_EQ(b.winner, Branch::B);
  EXPECT_EQ(b.map, TwoSlopeMap<Rational>(Rational(1, 4), kHalf, kHalf));
  auto a = induce(TwoSlopeMap<Rational>(kHalf, kHalf, Rational(4, 5)));
  EXPECT_EQ(a.winner, Branch::A);
  EXPECT_EQ(a.map, TwoSlopeMap<Rational>(kHalf, Rational(1, 4), kHalf));
  try {
    induce(TwoSlopeMap<Rational>(kHalf, kHalf, kHalf));
    FAIL() << "expected NotRenormalizable";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotRenormalizable);
  }
}

TEST(Induce, ExamplesAgreeWithSimulatedFirstReturn) {
  EXPECT_LE(oracle::induction_error(TwoSlopeMap<double>(0.5, 0.5, 0.2)), 1e-12);
  EXPECT_LE(oracle::induction_error(TwoSlopeMap<double>(0.5, 0.5, 0.8)), 1e-12);
}

TEST(InduceProperty, AgreesWithSimulatedFirstReturn) {
  gen::Rng rng(4);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    TwoSlopeMap<double> m = winner_map(rng);
    double err = oracle::induction_error(m, 200);
    worst = std::max(worst, err);
    ASSERT_LE(err, 1e-9) << m.rhoA() << " " << m.rhoB() << " " << m.xT();
  }
  RecordProperty("worst", std::to_string(worst));
}

TEST(InduceProperty, SlopeRuleIsExact) {
  gen::Rng rng(5);
  int checked = 0;
  while (checked < 500) {
    Rational a = random_rational(rng, 1, 60, 20), b = random_rational(rng, 1, 19, 20);
    auto [lo, hi] = valid_range(a, b);
    Rational x = lo + (hi - lo) * Rational(gen::uniform_int(rng, 1, 99), 100);
    if (!(x > 0 && x < 1)) continue;
    TwoSlopeMap<Rational> m(a, b, x);
    StepClass c = classify_step(m);
    if (c != StepClass::WinnerA && c != StepClass::WinnerB) continue;
    ++checked;
    auto step = induce(m);
    if (c == StepClass::WinnerA) {
      EXPECT_EQ(step.map.rhoA(), a);
      EXPECT_EQ(step.map.rhoB(), a * b);
    } else {
      EXPECT_EQ(step.map.rhoA(), a * b);
      EXPECT_EQ(step.map.rhoB(), b);
    }
  }
}

TEST(Subdivision, Examples) {
  auto s = subdivision(kHalf, kHalf);
  EXPECT_EQ(s.left_length, Rational(1, 3));
  EXPECT_EQ(s.hole_length, Rational(1, 3));
  EXPECT_EQ(s.right_length, Rational(1, 3));
  auto one = subdivision(Rational(1), Rational(1));
  EXPECT_EQ(one.left_length, kHalf);
  EXPECT_EQ(one.hole_length, 0);
  EXPECT_FALSE(one.hole.has_value());
  EXPECT_EQ(one.right_length, kHalf);
  auto forced = subdivision(Rational(2), kHalf);
  EXPECT_EQ(forced.left_length, Rational(1, 3));
  EXPECT_EQ(forced.hole_length, 0);
  EXPECT_EQ(forced.right_length, Rational(2, 3));
}

TEST(SubdivisionProperty, LengthsMatchClosedForms) {
  gen::Rng rng(6);
  for (int i = 0; i < 1000; ++i) {
    double a = gen::uniform(rng, 0.01, 5), b = gen::uniform(rng, 0.01, 5);
    auto s = subdivision(a, b);
    EXPECT_NEAR(s.left_length, b / (1 + b), 1e-12);
    EXPECT_NEAR(s.right_length, a / (1 + a), 1e-12);
    EXPECT_NEAR(s.hole_length, std::max(0.0, 1 - a * b) / ((1 + a) * (1 + b)), 1e-12);
    EXPECT_NEAR(s.left.length(), s.left_length, 1e-12);
    EXPECT_NEAR(s.right.length(), s.right_length, 1e-12);
    if (s.hole) {
      EXPECT_NEAR(s.hole->length(), s.hole_length, 1e-12);
      EXPECT_NEAR(s.left_length + s.hole_length + s.right_length, 1.0, 1e-12);
    }
  }
}

TEST(IterateInduction, Examples) {
  auto one = iterate_induction(TwoSlopeMap<Rational>(kHalf, kHalf, Rational(1, 5)), 10);
  EXPECT_EQ(one.word, "L");
  EXPECT_EQ(one.terminal, Terminal::Halt);
  EXPECT_EQ(one.final_map, TwoSlopeMap<Rational>(Rational(1, 4), kHalf, kHalf));
  EXPECT_EQ(classify_step(one.final_map), StepClass::Halt);

  auto zero = iterate_induction(TwoSlopeMap<Rational>(kHalf, kHalf, kHalf), 10);
  EXPECT_EQ(zero.word, "");
  EXPECT_EQ(zero.terminal, Terminal::Halt);
  ASSERT_TRUE(zero.cycle.has_value());
  ASSERT_EQ(zero.cycle->points.size(), 2u);
  EXPECT_EQ(std::min(zero.cycle->points[0], zero.cycle->points[1]), Rational(1, 6));
  EXPECT_EQ(std::max(zero.cycle->points[0], zero.cycle->points[1]), Rational(5, 6));
}

TEST(IterateInduction, WordIntervalParameterReproducesWord) {
  Interval<Rational> iv = interval_for_word(kHalf, kHalf, "RLRLRL");
  Rational mid = (iv.lo + iv.hi) / 2;
  auto out = iterate_induction(TwoSlopeMap<Rational>(kHalf, kHalf, mid), 6);
  EXPECT_EQ(out.word.substr(0, 6), "RLRLRL");
}

TEST(IterateInduction, ZeroBudgetStopsImmediately) {
  auto out = iterate_induction(TwoSlopeMap<double>(0.5, 0.5, 0.2), 0);
  EXPECT_EQ(out.word, "");
  EXPECT_EQ(out.terminal, Terminal::BudgetExhausted);
}

TEST(IterateInductionProperty, HaltingCycleIsAnAttractingOrbitOfTheOriginalMap) {
  gen::Rng rng(7);
  int halted = 0;
  for (int i = 0; i < 500; ++i) {
    TwoSlopeMap<double> m = gen::contracting_map(rng);
    auto out = iterate_induction(m, 60);
    ASSERT_LE(out.word.size(), 60u);
    if (out.terminal != Terminal::Halt) continue;
    ++halted;
    ASSERT_TRUE(out.cycle.has_value());
    const auto& c = *out.cycle;
    ASSERT_EQ(c.points.size(), c.period);
    double slope_product = 1;
    for (std::size_t k = 0; k < c.period; ++k) {
      double p = c.points[k], q = c.points[(k + 1) % c.period];
      EXPECT_NEAR(m(p), q, 1e-9 * std::max(1.0, double(c.period)));
      slope_product *= m.slope(m.branch(p));
    }
    EXPECT_NEAR(c.multiplier, slope_product, 1e-12);
    EXPECT_LT(c.multiplier, 1);
  }
  EXPECT_GT(halted, 100);
}

TEST(IntervalForWord, Examples) {
  auto all = interval_for_word(kHalf, kHalf, "");
  EXPECT_EQ(all.lo, 0);
  EXPECT_EQ(all.hi, 1);
  auto l = interval_for_word(kHalf, kHalf, "L");
  EXPECT_EQ(l.lo, 0);
  EXPECT_EQ(l.hi, Rational(1, 3));
  // the child hole (1/3, 4/5) of the (1/4, 1/2) pair, pulled back through x' = 2x/(1-x)
  EXPECT_EQ(parent_parameter('L', kHalf, kHalf, Rational(1, 3)), Rational(1, 7));
  EXPECT_EQ(parent_parameter('L', kHalf, kHalf, Rational(4, 5)), Rational(2, 7));
}

TEST(IntervalForWord, InfeasibleWordIsEmpty) {
  // with rhoA * rhoB >= 1 the first step is forced to be L
  try {
    interval_for_word(Rational(2), kHalf, "R");
    FAIL() << "expected EmptyInterval";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyInterval);
  }
  EXPECT_THROW(interval_for_word(kHalf, kHalf, "LX"), Error);
}

TEST(IntervalForWord, FloatResolutionIsReported) {
  // the exact interval has width about 1e-23
  auto exact = interval_for_word(kHalf, kHalf, "LRLRLRLL");
  EXPECT_GT(exact.length(), 0);
  EXPECT_LT(exact.length(), Rational(1, 1000000000) * Rational(1, 1000000000));
  try {
    interval_for_word(0.5, 0.5, "LRLRLRLL");
    FAIL() << "expected PrecisionLoss";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PrecisionLoss);
  }
}

TEST(IntervalForWordProperty, Nesting) {
  gen::Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    Rational a = random_rational(rng, 1, 19, 20), b = random_rational(rng, 1, 19, 20);
    std::string w = random_word(rng, gen::uniform_int(rng, 0, 6));
    Interval<Rational> parent;
    try {
      parent = interval_for_word(a, b, w);
    } catch (const Error&) {
      continue;
    }
    for (char c : {'L', 'R'}) {
      try {
        Interval<Rational> child = interval_for_word(a, b, w + c);
        EXPECT_GE(child.lo, parent.lo);
        EXPECT_LE(child.hi, parent.hi);
        EXPECT_LT(child.length(), parent.length());
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyInterval);
      }
    }
  }
}

TEST(IntervalForWordProperty, InteriorParametersFollowTheWord) {
  gen::Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    double a = gen::uniform(rng, 0.1, 0.95), b = gen::uniform(rng, 0.1, 0.95);
    std::string w = random_word(rng, gen::uniform_int(rng, 1, 5));
    Interval<double> iv = interval_for_word(a, b, w);
    if (iv.hi - iv.lo < 1e-9) continue;
    double x = iv.lo + gen::uniform(rng, 0.1, 0.9) * (iv.hi - iv.lo);
    auto out = iterate_induction(TwoSlopeMap<double>(a, b, x), w.size());
    EXPECT_EQ(out.word, w);
  }
}

TEST(SurvivorMeasure, ExactExamples) {
  EXPECT_EQ(survivor_measure(kHalf, kHalf, 0), 1);
  EXPECT_EQ(survivor_measure(kHalf, kHalf, 1), Rational(2, 3));
  EXPECT_EQ(survivor_measure(kHalf, kHalf, 2), Rational(8, 21));
}

TEST(SurvivorMeasure, FloatAgreesWithExact) {
  for (std::size_t n = 0; n <= 4; ++n)
    EXPECT_NEAR(survivor_measure(0.5, 0.5, n), to_double(survivor_measure(kHalf, kHalf, n)), 1e-13);
}

TEST(SurvivorMeasureProperty, DecreasesBelowGeometricBound) {
  double prev = 1;
  for (std::size_t n = 0; n <= 12; ++n) {
    double m = survivor_measure(0.5, 0.5, n);
    EXPECT_LE(m, std::pow(2.0 / 3.0, double(n)) + 1e-12) << n;
    EXPECT_LE(m, prev + 1e-15);
    prev = m;
  }
}

TEST(SurvivorMeasureProperty, NonincreasingForRandomSlopes) {
  gen::Rng rng(10);
  for (int i = 0; i < 20; ++i) {
    double a = gen::uniform(rng, 0.1, 2.0), b = gen::uniform(rng, 0.1, 0.9);
    double prev = 1;
    for (std::size_t n = 0; n <= 7; ++n) {
      double m = survivor_measure(a, b, n);
      EXPECT_GE(m, 0);
      EXPECT_LE(m, prev + 1e-12);
      prev = m;
    }
  }
}

TEST(Accelerate, Examples) {
  auto a = accelerate(Rational(8), kHalf);
  EXPECT_EQ(a.rhoA, 1);
  EXPECT_EQ(a.rhoB, kHalf);
  EXPECT_EQ(a.forced_steps, 3u);
  auto none = accelerate(kHalf, kHalf);
  EXPECT_EQ(none.forced_steps, 0u);
  EXPECT_EQ(none.rhoA, kHalf);
  // product already below 1, so no step is forced
  auto below = accelerate(Rational(2), Rational(1, 4));
  EXPECT_EQ(below.forced_steps, 0u);
}

TEST(AccelerateProperty, StepsAreForcedAndEndBelowOne) {
  gen::Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    double a = gen::uniform(rng, 1.01, 50), b = gen::uniform(rng, 0.05, 0.99);
    auto acc = accelerate(a, b);
    EXPECT_LT(acc.rhoA * acc.rhoB, 1);
    EXPECT_NEAR(acc.rhoA, a * std::pow(b, double(acc.forced_steps)), 1e-9 * a);
    // every intermediate pair is in the forced regime
    double r = a;
    for (std::size_t k = 0; k < acc.forced_steps; ++k) {
      EXPECT_GE(r * b, 1);
      EXPECT_FALSE(subdivision(r, b).hole.has_value());
      r *= b;
    }
  }
}
