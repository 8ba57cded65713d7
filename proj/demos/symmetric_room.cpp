// Cylinder directions of the room with e1, e2 standard and nu1 = nu2 = 2.
#include <cmath>
#include <fstream>
#include <iostream>

#include "dilation/dilation.hpp"

int main() {
  using namespace dilation;
  Room room = build_room({1, 0}, {0, 1}, std::log(2.0), std::log(2.0));
  std::cout << io::to_json(room).dump(2) << '\n';

  CylinderScan scan = find_cylinders(room, 0.01, 60);
  std::cout << scan.cylinders.size() << " cylinder intervals, theta_sup = " << theta_sup(room, 0.01, 60) << '\n';
  for (std::size_t i = 0; i < std::min<std::size_t>(scan.cylinders.size(), 8); ++i) {
    const Cylinder& c = scan.cylinders[i];
    std::cout << "  [" << c.theta1 << ", " << c.theta2 << "]  multiplier " << c.multiplier << "  sides " << c.word
              << '\n';
  }

  std::ofstream("symmetric_room.svg") << io::pentagon_svg(room);
  std::cout << "wrote symmetric_room.svg\n";
}
