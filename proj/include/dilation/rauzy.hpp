#pragma once
// Rauzy-type renormalization of (rhoA, rhoB)-maps and the parameter-space
// subdivision it induces.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "dilation/detail/parallel.hpp"
#include "dilation/error.hpp"
#include "dilation/interval_maps.hpp"

namespace dilation {

enum class StepClass { WinnerA, WinnerB, Halt, Boundary };

inline std::string_view to_string(StepClass c) {
  switch (c) {
    case StepClass::WinnerA: return "winner-A";
    case StepClass::WinnerB: return "winner-B";
    case StepClass::Halt: return "halt";
    case StepClass::Boundary: return "boundary";
  }
  return "?";
}

/// Left threshold rhoB/(1+rhoB) and right threshold 1/(1+rhoA).
template <class T>
std::pair<T, T> thresholds(const T& rhoA, const T& rhoB) {
  return {rhoB / (T(1) + rhoB), T(1) / (T(1) + rhoA)};
}

template <class T>
StepClass classify_step(const TwoSlopeMap<T>& m) {
  auto [tB, tA] = thresholds(m.rhoA(), m.rhoB());
  const T& x = m.xT();
  if (x == tB || x == tA) return StepClass::Boundary;
  if (x < tB) return StepClass::WinnerB;
  if (x > tA) return StepClass::WinnerA;
  return StepClass::Halt;
}

/// Unit chart of a subinterval: parent = origin + length * child.
template <class T>
struct UnitChart {
  T origin{0};
  T length{1};
  T to_parent(const T& x) const { return origin + length * x; }
  T to_child(const T& x) const { return (x - origin) / length; }
  /// this chart followed by an inner one (inner coordinates -> this parent)
  UnitChart compose(const UnitChart& inner) const { return {origin + length * inner.origin, length * inner.length}; }
};

template <class T>
struct Induction {
  TwoSlopeMap<T> map;
  Branch winner;
  UnitChart<T> chart;
};

inline char letter_for(Branch winner) { return winner == Branch::A ? 'R' : 'L'; }

/// One induction step: first return to the winning branch, rescaled to [0,1].
template <class T>
Induction<T> induce(const TwoSlopeMap<T>& m) {
  const T& a = m.rhoA();
  const T& b = m.rhoB();
  const T& x = m.xT();
  switch (classify_step(m)) {
    case StepClass::WinnerA:
      return {TwoSlopeMap<T>(a, a * b, ((T(1) + a) * x - T(1)) / (a * x)), Branch::A, UnitChart<T>{T(0), x}};
    case StepClass::WinnerB:
      return {TwoSlopeMap<T>(a * b, b, x / (b * (T(1) - x))), Branch::B, UnitChart<T>{x, T(1) - x}};
    default:
      fail(ErrorCode::NotRenormalizable, "induction needs a winner");
  }
}

/// Parent x_T as a function of the child x_T (increasing Moebius maps).
template <class T>
T parent_parameter(char letter, const T& rhoA, const T& rhoB, const T& child) {
  if (letter == 'L') return rhoB * child / (T(1) + rhoB * child);
  if (letter == 'R') return T(1) / ((T(1) + rhoA) - rhoA * child);
  fail(ErrorCode::InvalidArgument, "word letters must be L or R");
}

template <class T>
std::pair<T, T> child_slopes(char letter, const T& rhoA, const T& rhoB) {
  if (letter == 'L') return {rhoA * rhoB, rhoB};
  if (letter == 'R') return {rhoA, rhoA * rhoB};
  fail(ErrorCode::InvalidArgument, "word letters must be L or R");
}

enum class Terminal { Halt, BudgetExhausted, Boundary };

inline std::string_view to_string(Terminal t) {
  switch (t) {
    case Terminal::Halt: return "halt";
    case Terminal::BudgetExhausted: return "budget-exhausted";
    case Terminal::Boundary: return "boundary";
  }
  return "?";
}

template <class T>
struct RauzyOutcome {
  std::string word;
  Terminal terminal = Terminal::BudgetExhausted;
  std::optional<PeriodicCycle<T>> cycle;  // on the original interval, when halting
  TwoSlopeMap<T> final_map;
  UnitChart<T> chart;  // final coordinates -> original coordinates
  std::size_t return_A = 1;
  std::size_t return_B = 1;
};

template <class T>
RauzyOutcome<T> iterate_induction(const TwoSlopeMap<T>& m0, std::size_t budget) {
  RauzyOutcome<T> out;
  out.final_map = m0;
  for (;;) {
    StepClass c = classify_step(out.final_map);
    if (c == StepClass::Boundary) {
      out.terminal = Terminal::Boundary;
      return out;
    }
    if (c == StepClass::Halt) {
      out.terminal = Terminal::Halt;
      PeriodicCycle<T> local = attracting_cycle_in_hole(out.final_map);
      T x = out.chart.to_parent(local.points.front());
      PeriodicCycle<T> cyc;
      cyc.period = out.return_A + out.return_B;
      cyc.multiplier = T(1);
      for (std::size_t i = 0; i < cyc.period; ++i) {
        if (x == m0.xT()) {  // the cycle passes through the discontinuity
          out.terminal = Terminal::Boundary;
          return out;
        }
        cyc.points.push_back(x);
        Branch br = x < m0.xT() ? Branch::A : Branch::B;
        cyc.word.push_back(to_char(br));
        cyc.multiplier *= m0.slope(br);
        x = m0(x);
      }
      out.cycle = std::move(cyc);
      return out;
    }
    if (out.word.size() >= budget) {
      out.terminal = Terminal::BudgetExhausted;
      return out;
    }
    Induction<T> step = induce(out.final_map);
    out.word.push_back(letter_for(step.winner));
    out.chart = out.chart.compose(step.chart);
    if (step.winner == Branch::A) out.return_B += out.return_A;
    else out.return_A += out.return_B;
    out.final_map = step.map;
  }
}

template <class T>
struct Interval {
  T lo{0};
  T hi{0};
  T length() const { return hi > lo ? T(hi - lo) : T(0); }
  bool empty() const { return lo > hi; }
  bool contains(const T& x) const { return lo <= x && x <= hi; }
};

template <class T>
struct Subdivision {
  Interval<T> left;
  std::optional<Interval<T>> hole;
  Interval<T> right;
  T left_length{0};
  T hole_length{0};
  T right_length{0};
};

template <class T>
Subdivision<T> subdivision(const T& rhoA, const T& rhoB) {
  if (!(rhoA > 0) || !(rhoB > 0)) fail(ErrorCode::InvalidArgument, "slopes must be positive");
  auto [tB, tA] = thresholds(rhoA, rhoB);
  Subdivision<T> s;
  s.left = {T(0), tB};
  s.right = {tA, T(1)};
  s.left_length = tB;
  s.right_length = rhoA / (T(1) + rhoA);
  if (rhoA * rhoB < 1) {
    s.hole = Interval<T>{tB, tA};
    s.hole_length = (T(1) - rhoA * rhoB) / ((T(1) + rhoA) * (T(1) + rhoB));
  }
  return s;
}

namespace detail {

/// Increasing Moebius map x -> (a x + b) / (c x + d).
template <class T>
struct Moebius {
  T a{1}, b{0}, c{0}, d{1};
  T operator()(const T& x) const { return (a * x + b) / (c * x + d); }
  Moebius then_inner(const Moebius& n) const {  // this o n
    return {a * n.a + b * n.c, a * n.b + b * n.d, c * n.a + d * n.c, c * n.b + d * n.d};
  }
};

template <class T>
Moebius<T> parent_map(char letter, const T& rhoA, const T& rhoB) {
  if (letter == 'L') return {rhoB, T(0), rhoB, T(1)};
  return {T(0), T(1), -rhoA, T(1) + rhoA};
}

template <class T>
struct WordNode {
  T rhoA, rhoB;
  Moebius<T> to_root;
  Interval<T> interval;  // in root coordinates
};

/// Child of a word node, or nullopt when the letter is infeasible. With
/// `strict`, floating point intervals narrower than the rounding of their
/// endpoints raise PrecisionLoss instead of being reported as empty.
template <class T>
std::optional<WordNode<T>> child_node(const WordNode<T>& n, char letter, bool strict = false) {
  auto [ca, cb] = child_slopes(letter, n.rhoA, n.rhoB);
  Moebius<T> m = n.to_root.then_inner(parent_map(letter, n.rhoA, n.rhoB));
  auto [vlo, vhi] = valid_range(ca, cb);
  Interval<T> iv{m(vlo), m(vhi)};
  if (n.interval.lo > iv.lo) iv.lo = n.interval.lo;
  if (n.interval.hi < iv.hi) iv.hi = n.interval.hi;
  // each letter also confines the parent parameter to its side of the thresholds
  auto [tB, tA] = thresholds(n.rhoA, n.rhoB);
  Interval<T> side = letter == 'L' ? Interval<T>{n.to_root(T(0)), n.to_root(tB)} : Interval<T>{n.to_root(tA), n.to_root(T(1))};
  if (side.lo > iv.lo) iv.lo = side.lo;
  if (side.hi < iv.hi) iv.hi = side.hi;
  if (!(iv.lo < iv.hi)) {  // a single point is a threshold parameter
    if constexpr (std::is_floating_point_v<T>) {
      T scale = std::max<T>(T(1), std::abs(iv.lo));
      if (strict && iv.lo - iv.hi <= T(64) * std::numeric_limits<T>::epsilon() * scale)
        fail(ErrorCode::PrecisionLoss, "word interval is narrower than floating point resolution");
    }
    return std::nullopt;
  }
  return WordNode<T>{ca, cb, m, iv};
}

template <class T>
WordNode<T> root_node(const T& rhoA, const T& rhoB) {
  auto [lo, hi] = valid_range(rhoA, rhoB);
  return {rhoA, rhoB, Moebius<T>{}, Interval<T>{lo, hi}};
}

template <class T>
T leaf_measure(const WordNode<T>& n, std::size_t depth) {
  if (depth == 0) return n.interval.length();
  T sum(0);
  for (char c : {'L', 'R'})
    if (auto ch = child_node(n, c)) sum += leaf_measure(*ch, depth - 1);
  return sum;
}

}  // namespace detail

/// Parameters x_T whose induction word starts with `word`.
template <class T>
Interval<T> interval_for_word(const T& rhoA, const T& rhoB, std::string_view word) {
  if (!(rhoA > 0) || !(rhoB > 0)) fail(ErrorCode::InvalidArgument, "slopes must be positive");
  detail::WordNode<T> n = detail::root_node(rhoA, rhoB);
  for (char c : word) {
    if (c != 'L' && c != 'R') fail(ErrorCode::InvalidArgument, "word letters must be L or R");
    auto ch = detail::child_node(n, c, true);
    if (!ch) fail(ErrorCode::EmptyInterval, "no parameter realizes the word '" + std::string(word) + "'");
    n = std::move(*ch);
  }
  return n.interval;
}

/// Slopes of the renormalized map reached after `word`.
template <class T>
std::pair<T, T> slopes_for_word(T rhoA, T rhoB, std::string_view word) {
  for (char c : word) std::tie(rhoA, rhoB) = child_slopes(c, rhoA, rhoB);
  return {rhoA, rhoB};
}

/// Lebesgue measure of the n-times renormalizable parameters, as a fraction
/// of the valid parameter range.
template <class T>
T survivor_measure(const T& rhoA, const T& rhoB, std::size_t n) {
  if (!(rhoA > 0) || !(rhoB > 0)) fail(ErrorCode::InvalidArgument, "slopes must be positive");
  detail::WordNode<T> root = detail::root_node(rhoA, rhoB);
  T total = root.interval.length();
  if (!(total > 0)) fail(ErrorCode::InvalidArgument, "no valid parameters for these slopes");
  // split the first levels into independent jobs
  std::size_t split = std::min<std::size_t>(n, 3);
  std::vector<std::optional<detail::WordNode<T>>> seeds{root};
  for (std::size_t level = 0; level < split; ++level) {
    std::vector<std::optional<detail::WordNode<T>>> next;
    for (auto& s : seeds) {
      if (!s) continue;
      next.push_back(detail::child_node(*s, 'L'));
      next.push_back(detail::child_node(*s, 'R'));
    }
    seeds = std::move(next);
  }
  std::vector<T> parts(seeds.size(), T(0));
  detail::parallel_for(seeds.size(), [&](std::size_t i) {
    if (seeds[i]) parts[i] = detail::leaf_measure(*seeds[i], n - split);
  });
  T sum(0);
  for (const T& p : parts) sum += p;
  return sum / total;
}

template <class T>
struct Acceleration {
  T rhoA;
  T rhoB;
  std::size_t forced_steps = 0;
};

/// Forced L-steps while rhoA * rhoB >= 1.
template <class T>
Acceleration<T> accelerate(T rhoA, T rhoB) {
  if (!(rhoA > 0) || !(rhoB > 0)) fail(ErrorCode::InvalidArgument, "slopes must be positive");
  if (!(rhoB < 1) && rhoA * rhoB >= 1) fail(ErrorCode::InvalidArgument, "acceleration needs rhoB < 1");
  Acceleration<T> out{std::move(rhoA), std::move(rhoB), 0};
  while (out.rhoA * out.rhoB >= 1) {
    out.rhoA *= out.rhoB;
    ++out.forced_steps;
  }
  return out;
}

}  // namespace dilation
