#include "hpst/closedforms.hpp"

#include <cmath>

namespace hpst::closedforms {

std::array<double, 2> two_node_P(double tau) {
  const double c = std::cos(0.5 * tau);
  const double s = std::sin(0.5 * tau);
  return {c * c, s * s};
}

std::array<double, 4> rect_P(double tau, double d13, double d14) {
  const double c = std::cos(tau);
  const double c14 = std::cos(d14 * tau);
  const double c13 = std::cos(d13 * tau);
  return {0.25 * (1.0 + c * (c14 + c13) + c14 * c13), 0.25 * (1.0 - c * (c14 + c13) + c14 * c13),
          0.25 * (1.0 + c * (c14 - c13) - c14 * c13), 0.25 * (1.0 + c * (-c14 + c13) - c14 * c13)};
}

std::array<double, 4> rect_degenerate_P(double tau, double d13) {
  const double c = std::cos(tau);
  const double s = std::sin(tau);
  const double c13 = std::cos(d13 * tau);
  const double side = 0.25 * s * s;
  return {0.25 * (1.0 + c * c + 2.0 * c * c13), side, 0.25 * (1.0 + c * c - 2.0 * c * c13), side};
}

std::array<double, 8> cube_P(double tau) {
  const double r = 4.0 * std::sqrt(2.0);
  const double c1 = std::cos(tau);
  const double c2 = std::cos(2.0 * tau);
  const double c3 = std::cos(3.0 * tau);
  const double c4 = std::cos(4.0 * tau);
  const double slow = std::cos(tau / r);
  const double slow3 = std::cos(3.0 * tau / r);
  const double s1 = std::sin(tau);
  const double s2 = std::sin(2.0 * tau);

  const double p12 = s2 * s2 / 16.0;
  const double p11 = (7.0 + c4 + 8.0 * slow * (c1 + c2 * slow) + 4.0 * (c1 + c3) * slow3) / 32.0;
  const double p13 = (7.0 + c4 - 8.0 * slow * (c1 - c2 * slow) - 4.0 * (c1 + c3) * slow3) / 32.0;
  const double p15 = s1 * s1 / 8.0 * (3.0 + c2 + 4.0 * c1 * slow3);
  const double p16 = (3.0 + c4 - 2.0 * std::cos((std::sqrt(2.0) - 8.0) * tau / 4.0) -
                      2.0 * std::cos((std::sqrt(2.0) + 8.0) * tau / 4.0)) /
                     32.0;
  const double p17 = s1 * s1 / 8.0 * (3.0 + c2 - 4.0 * c1 * slow3);
  return {p11, p12, p13, p12, p15, p16, p17, p16};
}

}  // namespace hpst::closedforms
