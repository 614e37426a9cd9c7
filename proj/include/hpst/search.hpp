#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hpst/dynamics.hpp"
#include "hpst/geometry.hpp"
#include "hpst/hamiltonian.hpp"

namespace hpst {

inline constexpr double kDefaultP0 = 0.9;

enum class SystemKind { Chain2, RectPerp, RectAlong, Box };

std::string_view to_string(SystemKind kind);
// "chain2", "rect-perp", "rect-along", "box".
SystemKind parse_system_kind(std::string_view name);

// A member of one of the geometry families, parameterized by delta = b^-3.
struct SystemSpec {
  SystemKind kind = SystemKind::Chain2;
  double delta = 0.0;   // rectangles
  double delta1 = 0.0;  // parallelepiped base side 1-4
  double delta2 = 0.0;  // parallelepiped edge 1-5 (along the field)

  static SystemSpec chain2();
  static SystemSpec rectangle(FieldMode mode, double delta);
  static SystemSpec box(double delta1, double delta2);

  std::size_t nodes() const;
};

NodeLayout make_layout(const SystemSpec& system);
Spectrum make_spectrum(const SystemSpec& system);

// Per-target maximum of P_{k0 m} over the time grid and, optionally, the
// per-pair maximum of the 1-vs-1 negativity N_{n,m} (pairs in lexicographic
// order (1,2), (1,3), ..., (N-1,N)).
struct GridMaxima {
  std::vector<double> probability;
  std::vector<double> pair_negativity;
  double norm_error = 0.0;  // max |sum_m P - 1| seen on the grid
};

GridMaxima scan_maxima(const Spectrum& spectrum, std::size_t k0, const TimeGrid& grid, bool with_pairs);

struct FigureOfMerit {
  double fp = 0.0;
  std::optional<double> fn;
  double norm_error = 0.0;
};

// F^P = min_k max_i P_{k0 k}(tau_i), k over all nodes including k0.
// F^N = min_{n<m} max_i N_{n,m}(tau_i).
FigureOfMerit evaluate(const SystemSpec& system, double T, double dtau, bool with_fn, std::size_t k0 = 1);
double fp_value(const SystemSpec& system, double T, double dtau, std::size_t k0 = 1);
double fn_value(const SystemSpec& system, double T, double dtau, std::size_t k0 = 1);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Maximal runs of consecutive grid points with values >= threshold, reported
// by their outermost grid points.
std::vector<Interval> extract_intervals(std::span<const double> grid, std::span<const double> values,
                                        double threshold);

// Points lo + i * step, i = 0 .. round((hi - lo) / step).
struct ParameterRange {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.01;

  std::vector<double> points() const;
};

struct SweepOptions {
  double T = 10.0;
  double dtau = 0.01;
  double p0 = kDefaultP0;
  bool with_fn = false;
  unsigned threads = 1;
  std::size_t k0 = 1;
};

struct SweepResult {
  // 1D sweeps fill delta1 only; 2D sweeps are row-major with delta1 outer.
  std::vector<double> delta1;
  std::vector<double> delta2;
  std::vector<double> fp;
  std::vector<double> fn;
  std::vector<bool> hpst;
  std::vector<Interval> intervals;  // 1D only
  double norm_error = 0.0;

  bool two_dimensional() const { return !delta2.empty(); }
};

inline constexpr std::size_t kMaxSweepPoints = 1'000'000;

SweepResult sweep1d(FieldMode mode, const ParameterRange& delta, const SweepOptions& options);
SweepResult sweep2d(const ParameterRange& delta1, const ParameterRange& delta2, const SweepOptions& options);

struct PeakRecord {
  std::size_t target = 0;
  double tau_star = 0.0;
  double p_star = 0.0;
  bool hpst = false;
};

struct PeakReport {
  std::vector<PeakRecord> records;  // one per target, in node order
  std::optional<double> window;     // max tau_star, only when every target is an HPST
  double norm_error = 0.0;
};

// Per target: the earliest grid-local maximum with P >= p0, refined by a
// parabola through the three neighbouring grid points. Targets without one
// report their global grid maximum with hpst = false.
PeakReport hpst_times(const SystemSpec& system, double T, double dtau, double p0 = kDefaultP0, std::size_t k0 = 1);

}  // namespace hpst
