#include "hpst/verify.hpp"

#include <algorithm>
#include <cmath>

#include "hpst/hamiltonian.hpp"
#include "hpst/search.hpp"

namespace hpst {

namespace {

constexpr double kClosedFormTolerance = 1e-10;
constexpr double kConcurrenceTolerance = 1e-10;
constexpr double kNegativityTolerance = 1e-9;
constexpr double kSpectrumTolerance = 1e-10;
constexpr double kUnitarityTolerance = 1e-10;

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  for (;;) {
    Vec3 v{g(rng), g(rng), g(rng)};
    const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (r > 1e-6) return {v[0] / r, v[1] / r, v[2] / r};
  }
}

struct Recorder {
  SuiteReport suite;
  double* unitarity;

  void observe(double deviation) {
    suite.max_deviation = std::max(suite.max_deviation, deviation);
    ++suite.checks;
  }
  void observe_state(const TransferState& s) { *unitarity = std::max(*unitarity, normalization_error(s)); }
};

template <std::size_t N>
void compare_series(Recorder& rec, const Propagator& prop, const TimeGrid& grid,
                    const std::function<std::array<double, N>(double)>& closed) {
  for (std::size_t i = 0; i < grid.points(); ++i) {
    const auto state = prop.state_at(grid.at(i));
    rec.observe_state(state);
    const auto expected = closed(grid.at(i));
    for (std::size_t m = 0; m < N; ++m) rec.observe(std::abs(state.probabilities[m] - expected[m]));
  }
}

double projector_distance(const Spectrum& a, const Spectrum& b) {
  const auto pa = spectral_projectors(a);
  const auto pb = spectral_projectors(b);
  if (pa.size() != pb.size()) return 1.0;
  double worst = 0.0;
  for (std::size_t k = 0; k < pa.size(); ++k) {
    if (pa[k].multiplicity != pb[k].multiplicity) return 1.0;
    worst = std::max(worst, std::abs(pa[k].eigenvalue - pb[k].eigenvalue));
    worst = std::max(worst, max_abs(pa[k].projector - pb[k].projector));
  }
  return worst;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.passed(); });
}

NodeLayout random_layout(std::size_t n, std::mt19937_64& rng, double min_distance) {
  std::vector<Vec3> nodes{{0.0, 0.0, 0.0}, random_unit(rng)};
  while (nodes.size() < n) {
    const Vec3 candidate{uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5)};
    const bool far = std::all_of(nodes.begin(), nodes.end(), [&](const Vec3& p) {
      const double dx = p[0] - candidate[0], dy = p[1] - candidate[1], dz = p[2] - candidate[2];
      return std::sqrt(dx * dx + dy * dy + dz * dz) >= min_distance;
    });
    if (far) nodes.push_back(candidate);
  }
  nodes.resize(n);
  return NodeLayout(std::move(nodes), random_unit(rng));
}

TransferState random_state(std::size_t n, std::mt19937_64& rng, double tau_max) {
  const double tau = uniform(rng, 0.0, tau_max);
  const bool family = std::bernoulli_distribution(0.5)(rng);
  NodeLayout layout = layout_chain2();
  if (family && n == 2) {
    layout = layout_chain2();
  } else if (family && n == 4) {
    const auto mode = std::bernoulli_distribution(0.5)(rng) ? FieldMode::AlongSideB : FieldMode::PerpendicularToPlane;
    layout = layout_rectangle(delta_to_b(uniform(rng, 0.2, 40.0)), mode);
  } else if (family && n == 8) {
    layout = layout_parallelepiped(delta_to_b(uniform(rng, 0.2, 30.0)), delta_to_b(uniform(rng, 0.2, 30.0)));
  } else {
    layout = random_layout(n, rng);
  }
  const auto spectrum = diagonalize(build_D(coupling_matrix(layout)));
  const auto k0 = std::uniform_int_distribution<std::size_t>(1, n)(rng);
  return evolve(spectrum, k0, tau);
}

Bipartition random_bipartition(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> part(0, 2);
  for (;;) {
    std::vector<std::size_t> a, b;
    for (std::size_t node = 1; node <= n; ++node) {
      const int which = part(rng);
      if (which == 0) a.push_back(node);
      if (which == 1) b.push_back(node);
    }
    if (!a.empty() && !b.empty()) return Bipartition(std::move(a), std::move(b));
  }
}

VerifyReport run_verification(const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed);
  double unitarity = 0.0;
  VerifyReport report;
  const TimeGrid grid(options.tau_max, options.tau_step);
  const auto& cf = options.closed_forms;

  {
    Recorder rec{{"closed-form two-node", 0.0, kClosedFormTolerance}, &unitarity};
    const Propagator prop(make_spectrum(SystemSpec::chain2()), 1);
    compare_series<2>(rec, prop, grid, cf.two_node);
    report.suites.push_back(rec.suite);
  }
  {
    Recorder rec{{"closed-form rectangle", 0.0, kClosedFormTolerance}, &unitarity};
    for (auto mode : {FieldMode::PerpendicularToPlane, FieldMode::AlongSideB})
      for (int draw = 0; draw < 8; ++draw) {
        const double delta = uniform(rng, 0.2, 40.0);
        const auto c = coupling_matrix(layout_rectangle(delta_to_b(delta), mode));
        const Propagator prop(diagonalize(build_D(c)), 1);
        const double d13 = c.at(1, 3), d14 = c.at(1, 4);
        compare_series<4>(rec, prop, grid,
                          [&](double tau) { return cf.rectangle(tau, d13, d14); });
      }
    report.suites.push_back(rec.suite);
  }
  {
    Recorder rec{{"closed-form degenerate rectangle", 0.0, kClosedFormTolerance}, &unitarity};
    const std::pair<double, FieldMode> cases[] = {{1.0, FieldMode::PerpendicularToPlane},
                                                  {std::cbrt(2.0), FieldMode::AlongSideB}};
    for (const auto& [b, mode] : cases) {
      const auto c = coupling_matrix(layout_rectangle(b, mode));
      const Propagator prop(diagonalize(build_D(c)), 1);
      const double d13 = c.at(1, 3);
      compare_series<4>(rec, prop, grid, [&](double tau) { return cf.degenerate(tau, d13); });
    }
    report.suites.push_back(rec.suite);
  }
  {
    Recorder rec{{"closed-form cube", 0.0, kClosedFormTolerance}, &unitarity};
    const Propagator prop(make_spectrum(SystemSpec::box(1.0, 1.0)), 1);
    compare_series<8>(rec, prop, grid, cf.cube);
    report.suites.push_back(rec.suite);
  }

  const std::size_t sizes[] = {2, 3, 4, 8};
  {
    Recorder rec{{"concurrence vs Wootters oracle", 0.0, kConcurrenceTolerance}, &unitarity};
    for (int draw = 0; draw < options.draws; ++draw) {
      const std::size_t n = sizes[draw % 4];
      const auto state = random_state(n, rng);
      rec.observe_state(state);
      std::uniform_int_distribution<std::size_t> node(1, n);
      std::size_t i = node(rng), j = node(rng);
      while (j == i) j = node(rng);
      rec.observe(std::abs(concurrence(state, i, j) - concurrence_oracle(state, i, j)));
    }
    report.suites.push_back(rec.suite);
  }
  {
    Recorder rec{{"negativity vs partial-transpose oracle", 0.0, kNegativityTolerance}, &unitarity};
    for (int draw = 0; draw < options.draws; ++draw) {
      const std::size_t n = sizes[draw % 4];
      const auto state = random_state(n, rng);
      rec.observe_state(state);
      const auto part = random_bipartition(n, rng);
      rec.observe(std::abs(negativity(state, part) - negativity_oracle(state, part)));
    }
    report.suites.push_back(rec.suite);
  }
  {
    Recorder rec{{"analytic vs numeric spectra", 0.0, kSpectrumTolerance}, &unitarity};
    for (int draw = 0; draw < 100; ++draw) {
      const auto mode = draw % 2 == 0 ? FieldMode::PerpendicularToPlane : FieldMode::AlongSideB;
      const auto rc = coupling_matrix(layout_rectangle(delta_to_b(uniform(rng, 0.2, 40.0)), mode));
      const auto rect_numeric = diagonalize(build_D(rc));
      const double rect_scale = std::max(1.0, max_abs(build_D(rc).m));
      rec.observe(projector_distance(rect_numeric, analytic_rectangle_spectrum(rc.at(1, 3), rc.at(1, 4))) /
                  rect_scale);

      const auto bc = coupling_matrix(
          layout_parallelepiped(delta_to_b(uniform(rng, 0.2, 30.0)), delta_to_b(uniform(rng, 0.2, 30.0))));
      std::array<double, 7> d{};
      for (std::size_t k = 0; k < 7; ++k) d[k] = bc.at(1, k + 2);
      const double box_scale = std::max(1.0, max_abs(build_D(bc).m));
      rec.observe(projector_distance(diagonalize(build_D(bc)), analytic_parallelepiped_spectrum(d)) / box_scale);
    }
    report.suites.push_back(rec.suite);
  }

  report.suites.push_back({"unitarity of every evolved state", unitarity, kUnitarityTolerance, 1});
  return report;
}

}  // namespace hpst
