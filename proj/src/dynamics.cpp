#include "hpst/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "hpst/errors.hpp"

namespace hpst {

namespace {

void require_node(std::size_t node, std::size_t n) {
  if (node < 1 || node > n) throw DomainError("node index out of range");
}

}  // namespace

Complex TransferState::amplitude(std::size_t m) const {
  require_node(m, size());
  return amplitudes[m - 1];
}

double TransferState::probability(std::size_t m) const {
  require_node(m, size());
  return probabilities[m - 1];
}

Propagator::Propagator(const Spectrum& spectrum, std::size_t k0)
    : n_(spectrum.size()), k0_(k0), half_lambda_(spectrum.size()), weights_(spectrum.size(), spectrum.size()) {
  require_node(k0, n_);
  const Matrix& u = spectrum.eigenvectors();
  for (std::size_t j = 0; j < n_; ++j) {
    half_lambda_[j] = 0.5 * spectrum.eigenvalues()[j];
    for (std::size_t m = 0; m < n_; ++m) weights_(m, j) = u(k0 - 1, j) * u(m, j);
  }
}

void Propagator::amplitudes_at(double tau, std::span<Complex> out) const {
  if (out.size() != n_) throw DomainError("amplitude buffer has the wrong size");
  if (tau == 0.0) {
    std::fill(out.begin(), out.end(), Complex{});
    out[k0_ - 1] = 1.0;
    return;
  }
  constexpr std::size_t kStackNodes = 64;
  std::array<Complex, kStackNodes> stack;
  std::vector<Complex> heap;
  std::span<Complex> phases;
  if (n_ <= kStackNodes) {
    phases = std::span<Complex>(stack.data(), n_);
  } else {
    heap.resize(n_);
    phases = heap;
  }
  for (std::size_t j = 0; j < n_; ++j) phases[j] = std::polar(1.0, -half_lambda_[j] * tau);
  for (std::size_t m = 0; m < n_; ++m) {
    Complex f{};
    for (std::size_t j = 0; j < n_; ++j) f += weights_(m, j) * phases[j];
    out[m] = f;
  }
}

TransferState Propagator::state_at(double tau) const {
  TransferState s{tau, k0_, std::vector<Complex>(n_), std::vector<double>(n_)};
  amplitudes_at(tau, s.amplitudes);
  for (std::size_t m = 0; m < n_; ++m) s.probabilities[m] = std::norm(s.amplitudes[m]);
  return s;
}

TransferState evolve(const Spectrum& spectrum, std::size_t k0, double tau) {
  return Propagator(spectrum, k0).state_at(tau);
}

Complex density_element(const TransferState& state, std::size_t i, std::size_t j) {
  return state.amplitude(i) * std::conj(state.amplitude(j));
}

double fidelity(Complex f) {
  const double mag = std::abs(f);
  // |f| cos(arg f) is Re f.
  return f.real() / 3.0 + mag * mag / 6.0 + 0.5;
}

double fidelity(const TransferState& state, std::size_t m) { return fidelity(state.amplitude(m)); }

TimeGrid::TimeGrid(double T_, double dtau_) : T(T_), dtau(dtau_) {
  if (!(dtau > 0.0) || !std::isfinite(dtau)) throw DomainError("dtau must be positive");
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("T must be positive");
  if (dtau > T) throw DomainError("dtau must not exceed T");
  const double k = std::round(T / dtau);
  if (k > 1e9) throw ResourceError("time grid too large");
  count_ = static_cast<std::size_t>(k) + 1;
}

std::vector<TransferState> evolve_grid(const Spectrum& spectrum, std::size_t k0, double T, double dtau) {
  const TimeGrid grid(T, dtau);
  const Propagator prop(spectrum, k0);
  std::vector<TransferState> states;
  states.reserve(grid.points());
  for (std::size_t i = 0; i < grid.points(); ++i) states.push_back(prop.state_at(grid.at(i)));
  return states;
}

double normalization_error(const TransferState& state) {
  double s = 0.0;
  for (double p : state.probabilities) s += p;
  return std::abs(s - 1.0);
}

}  // namespace hpst
