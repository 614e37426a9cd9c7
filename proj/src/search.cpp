#include "hpst/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "hpst/entanglement.hpp"
#include "hpst/errors.hpp"

namespace hpst {

namespace {

// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
// handled exactly once, so output slots indexed by i are deterministic.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
}

void check_sweep_options(const SweepOptions& options) {
  const TimeGrid probe(options.T, options.dtau);
  (void)probe;
  if (!(options.p0 > 0.0 && options.p0 <= 1.0)) throw DomainError("P0 must lie in (0, 1]");
}

}  // namespace

std::string_view to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::Chain2: return "chain2";
    case SystemKind::RectPerp: return "rect-perp";
    case SystemKind::RectAlong: return "rect-along";
    case SystemKind::Box: return "box";
  }
  return "?";
}

SystemKind parse_system_kind(std::string_view name) {
  for (auto kind : {SystemKind::Chain2, SystemKind::RectPerp, SystemKind::RectAlong, SystemKind::Box})
    if (to_string(kind) == name) return kind;
  throw DomainError("unknown system kind '" + std::string(name) + "'");
}

SystemSpec SystemSpec::chain2() { return {SystemKind::Chain2, 0.0, 0.0, 0.0}; }

SystemSpec SystemSpec::rectangle(FieldMode mode, double delta) {
  return {mode == FieldMode::PerpendicularToPlane ? SystemKind::RectPerp : SystemKind::RectAlong, delta, 0.0,
          0.0};
}

SystemSpec SystemSpec::box(double delta1, double delta2) { return {SystemKind::Box, 0.0, delta1, delta2}; }

std::size_t SystemSpec::nodes() const {
  switch (kind) {
    case SystemKind::Chain2: return 2;
    case SystemKind::RectPerp:
    case SystemKind::RectAlong: return 4;
    case SystemKind::Box: return 8;
  }
  return 0;
}

NodeLayout make_layout(const SystemSpec& system) {
  switch (system.kind) {
    case SystemKind::Chain2: return layout_chain2();
    case SystemKind::RectPerp: return layout_rectangle(delta_to_b(system.delta), FieldMode::PerpendicularToPlane);
    case SystemKind::RectAlong: return layout_rectangle(delta_to_b(system.delta), FieldMode::AlongSideB);
    case SystemKind::Box: return layout_parallelepiped(delta_to_b(system.delta1), delta_to_b(system.delta2));
  }
  throw DomainError("unknown system kind");
}

Spectrum make_spectrum(const SystemSpec& system) { return diagonalize(build_D(coupling_matrix(make_layout(system)))); }

GridMaxima scan_maxima(const Spectrum& spectrum, std::size_t k0, const TimeGrid& grid, bool with_pairs) {
  const Propagator prop(spectrum, k0);
  const std::size_t n = spectrum.size();
  GridMaxima out;
  out.probability.assign(n, 0.0);
  if (with_pairs) out.pair_negativity.assign(n * (n - 1) / 2, 0.0);

  std::vector<Complex> f(n);
  std::vector<double> p(n);
  for (std::size_t i = 0; i < grid.points(); ++i) {
    prop.amplitudes_at(grid.at(i), f);
    double total = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      p[m] = std::norm(f[m]);
      total += p[m];
      out.probability[m] = std::max(out.probability[m], p[m]);
    }
    out.norm_error = std::max(out.norm_error, std::abs(total - 1.0));
    if (with_pairs) {
      std::size_t k = 0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b, ++k) {
          const double value = negativity_from_sums(1.0 - p[a] - p[b], p[a], p[b]);
          out.pair_negativity[k] = std::max(out.pair_negativity[k], value);
        }
    }
  }
  return out;
}

FigureOfMerit evaluate(const SystemSpec& system, double T, double dtau, bool with_fn, std::size_t k0) {
  const TimeGrid grid(T, dtau);
  const auto maxima = scan_maxima(make_spectrum(system), k0, grid, with_fn);
  FigureOfMerit out;
  out.fp = *std::min_element(maxima.probability.begin(), maxima.probability.end());
  if (with_fn) out.fn = *std::min_element(maxima.pair_negativity.begin(), maxima.pair_negativity.end());
  out.norm_error = maxima.norm_error;
  return out;
}

double fp_value(const SystemSpec& system, double T, double dtau, std::size_t k0) {
  return evaluate(system, T, dtau, false, k0).fp;
}

double fn_value(const SystemSpec& system, double T, double dtau, std::size_t k0) {
  return *evaluate(system, T, dtau, true, k0).fn;
}

std::vector<Interval> extract_intervals(std::span<const double> grid, std::span<const double> values,
                                        double threshold) {
  if (grid.size() != values.size()) throw DomainError("grid and values differ in length");
  std::vector<Interval> out;
  std::size_t i = 0;
  while (i < values.size()) {
    if (values[i] < threshold) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < values.size() && values[j + 1] >= threshold) ++j;
    out.push_back({grid[i], grid[j]});
    i = j + 1;
  }
  return out;
}

std::vector<double> ParameterRange::points() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("range step must be positive");
  if (!(lo > 0.0) || !std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("range bounds must be positive");
  if (hi < lo) throw DomainError("range upper bound below lower bound");
  const double count = std::floor((hi - lo) / step + 0.5);
  if (count + 1 > static_cast<double>(kMaxSweepPoints)) throw ResourceError("range has too many points");
  std::vector<double> out(static_cast<std::size_t>(count) + 1);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = lo + static_cast<double>(i) * step;
  return out;
}

SweepResult sweep1d(FieldMode mode, const ParameterRange& delta, const SweepOptions& options) {
  if (!(delta.lo < delta.hi)) throw DomainError("sweep range must satisfy lo < hi");
  check_sweep_options(options);
  SweepResult out;
  out.delta1 = delta.points();
  const std::size_t count = out.delta1.size();
  out.fp.assign(count, 0.0);
  if (options.with_fn) out.fn.assign(count, 0.0);
  std::vector<double> norm(count, 0.0);

  parallel_for(count, options.threads, [&](std::size_t i) {
    const auto merit =
        evaluate(SystemSpec::rectangle(mode, out.delta1[i]), options.T, options.dtau, options.with_fn, options.k0);
    out.fp[i] = merit.fp;
    if (options.with_fn) out.fn[i] = *merit.fn;
    norm[i] = merit.norm_error;
  });

  out.hpst.resize(count);
  for (std::size_t i = 0; i < count; ++i) out.hpst[i] = out.fp[i] >= options.p0;
  out.intervals = extract_intervals(out.delta1, out.fp, options.p0);
  out.norm_error = *std::max_element(norm.begin(), norm.end());
  return out;
}

SweepResult sweep2d(const ParameterRange& delta1, const ParameterRange& delta2, const SweepOptions& options) {
  check_sweep_options(options);
  const auto g1 = delta1.points();
  const auto g2 = delta2.points();
  if (static_cast<double>(g1.size()) * static_cast<double>(g2.size()) > static_cast<double>(kMaxSweepPoints))
    throw ResourceError("2D sweep grid exceeds 10^6 points");

  SweepResult out;
  const std::size_t count = g1.size() * g2.size();
  out.delta1.resize(count);
  out.delta2.resize(count);
  for (std::size_t a = 0; a < g1.size(); ++a)
    for (std::size_t b = 0; b < g2.size(); ++b) {
      out.delta1[a * g2.size() + b] = g1[a];
      out.delta2[a * g2.size() + b] = g2[b];
    }
  out.fp.assign(count, 0.0);
  if (options.with_fn) out.fn.assign(count, 0.0);
  std::vector<double> norm(count, 0.0);

  parallel_for(count, options.threads, [&](std::size_t i) {
    const auto merit =
        evaluate(SystemSpec::box(out.delta1[i], out.delta2[i]), options.T, options.dtau, options.with_fn, options.k0);
    out.fp[i] = merit.fp;
    if (options.with_fn) out.fn[i] = *merit.fn;
    norm[i] = merit.norm_error;
  });

  out.hpst.resize(count);
  for (std::size_t i = 0; i < count; ++i) out.hpst[i] = out.fp[i] >= options.p0;
  out.norm_error = *std::max_element(norm.begin(), norm.end());
  return out;
}

PeakReport hpst_times(const SystemSpec& system, double T, double dtau, double p0, std::size_t k0) {
  const TimeGrid grid(T, dtau);
  const Propagator prop(make_spectrum(system), k0);
  const std::size_t n = prop.size();
  const std::size_t points = grid.points();

  PeakReport report;
  std::vector<double> series(points * n);
  std::vector<Complex> f(n);
  for (std::size_t i = 0; i < points; ++i) {
    prop.amplitudes_at(grid.at(i), f);
    double total = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      series[i * n + m] = std::norm(f[m]);
      total += series[i * n + m];
    }
    report.norm_error = std::max(report.norm_error, std::abs(total - 1.0));
  }

  auto p = [&](std::size_t i, std::size_t m) { return series[i * n + m]; };
  auto is_local_max = [&](std::size_t i, std::size_t m) {
    if (points == 1) return true;
    if (i == 0) return p(0, m) > p(1, m);
    if (i + 1 == points) return p(i, m) >= p(i - 1, m);
    return p(i, m) >= p(i - 1, m) && p(i, m) > p(i + 1, m);
  };
  auto refine = [&](std::size_t i, std::size_t m) {
    PeakRecord r{m + 1, grid.at(i), p(i, m), false};
    if (i == 0 || i + 1 == points) return r;
    const double left = p(i - 1, m);
    const double right = p(i + 1, m);
    const double curvature = left - 2.0 * r.p_star + right;
    if (!(curvature < 0.0)) return r;
    const double shift = std::clamp(0.5 * (left - right) / curvature, -1.0, 1.0);
    const double tau = r.tau_star + shift * dtau;
    const double value = prop.state_at(tau).probabilities[m];
    if (value >= r.p_star) {
      r.tau_star = tau;
      r.p_star = value;
    }
    return r;
  };

  bool all = true;
  double window = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    std::optional<PeakRecord> found;
    for (std::size_t i = 0; i < points && !found; ++i)
      if (p(i, m) >= p0 && is_local_max(i, m)) found = refine(i, m);
    if (found) {
      found->hpst = true;
      window = std::max(window, found->tau_star);
      report.records.push_back(*found);
      continue;
    }
    all = false;
    std::size_t best = 0;
    for (std::size_t i = 1; i < points; ++i)
      if (p(i, m) > p(best, m)) best = i;
    report.records.push_back(refine(best, m));
  }
  if (all) report.window = window;
  return report;
}

}  // namespace hpst
