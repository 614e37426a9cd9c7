#pragma once

#include <array>

// Analytic transfer probabilities from node 1 for the special geometries.
// These are independent of the spectral evolution path and serve as its oracle.
namespace hpst::closedforms {

// (P11, P12) for two nodes.
std::array<double, 2> two_node_P(double tau);

// (P11, P12, P13, P14) for the rectangle with couplings d13, d14 (d12 = 1).
std::array<double, 4> rect_P(double tau, double d13, double d14);

// Rectangle with |d14| = 1. P12 = P14 = sin^2(tau) / 4.
std::array<double, 4> rect_degenerate_P(double tau, double d13);

// (P11, ..., P18) for the unit cube.
std::array<double, 8> cube_P(double tau);

}  // namespace hpst::closedforms
