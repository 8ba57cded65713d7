// Divergence monitor on the symmetric room turned so that the middle of a
// cylinder interval becomes horizontal.
#include <cmath>
#include <iostream>

#include "dilation/dilation.hpp"

int main() {
  using namespace dilation;
  Room room = build_room({1, 0}, {0, 1}, std::log(2.0), std::log(2.0));
  CylinderScan scan = find_cylinders(room, 0.01, 60);
  const Cylinder* widest = &scan.cylinders.front();
  for (const auto& c : scan.cylinders)
    if (c.angle() > widest->angle()) widest = &c;
  double mid = 0.5 * (widest->theta1 + widest->theta2);
  Room turned = apply_sl2(SL2Matrix::rotation(-mid), room);

  MonitorResult m = divergence_monitor(turned, 12, 12, 0.01, 60);
  io::write_flow_csv(std::cout, m);
  std::cout << "criterion1 " << m.criterion1 << ", criterion2 " << m.criterion2 << '\n';
}
