// Exact measure of the n-times renormalizable parameters for (1/2, 1/2),
// next to the (2/3)^n bound and a Rauzy run at a sample parameter.
#include <iostream>

#include "dilation/dilation.hpp"

int main() {
  using namespace dilation;
  const Rational half(1, 2);
  Rational bound(1);
  std::cout << "n,exact,float,(2/3)^n\n";
  for (std::size_t n = 0; n <= 10; ++n) {
    // exact fractions grow quickly, so print them only for small n
    std::string exact = n <= 4 ? to_string(survivor_measure(half, half, n)) : "";
    std::cout << n << ',' << exact << ',' << survivor_measure(0.5, 0.5, n) << ',' << to_double(bound) << '\n';
    bound *= Rational(2, 3);
  }

  TwoSlopeMap<Rational> m(half, half, Rational(1, 2));
  RauzyOutcome<Rational> out = iterate_induction(m, 50);
  std::cout << "x_T = 1/2: word '" << out.word << "', " << to_string(out.terminal) << '\n';
  if (out.cycle) std::cout << io::to_json(*out.cycle).dump() << '\n';
}
