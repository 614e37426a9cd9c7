#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hpst/closedforms.hpp"
#include "hpst/dynamics.hpp"
#include "hpst/entanglement.hpp"
#include "hpst/geometry.hpp"

namespace hpst {

// Closed forms under test. Defaults are the real ones; the test harness swaps
// in perturbed versions to check that verification notices.
struct ClosedFormSet {
  std::function<std::array<double, 2>(double)> two_node = closedforms::two_node_P;
  std::function<std::array<double, 4>(double, double, double)> rectangle = closedforms::rect_P;
  std::function<std::array<double, 4>(double, double)> degenerate = closedforms::rect_degenerate_P;
  std::function<std::array<double, 8>(double)> cube = closedforms::cube_P;
};

struct VerifyOptions {
  std::uint64_t seed = 20240611;
  int draws = 1000;
  double tau_max = 30.0;
  double tau_step = 0.001;
  ClosedFormSet closed_forms;
};

struct SuiteReport {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::size_t checks = 0;

  bool passed() const { return max_deviation <= tolerance; }
};

struct VerifyReport {
  std::vector<SuiteReport> suites;

  bool passed() const;
};

VerifyReport run_verification(const VerifyOptions& options = {});

// Random layout of n nodes: node 1 at the origin, node 2 at unit distance in
// a random direction, further nodes uniform in [-1.5, 1.5]^3 with every pair
// at least min_distance apart, random field axis.
NodeLayout random_layout(std::size_t n, std::mt19937_64& rng, double min_distance = 0.4);

// A random single-excitation state drawn from one of the geometry families
// (or a random layout) with n nodes, random source node and tau in [0, tau_max].
TransferState random_state(std::size_t n, std::mt19937_64& rng, double tau_max = 30.0);

// Random bipartition of n nodes; each node goes to A, B or C.
Bipartition random_bipartition(std::size_t n, std::mt19937_64& rng);

}  // namespace hpst
