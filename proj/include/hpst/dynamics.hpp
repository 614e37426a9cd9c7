#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "hpst/hamiltonian.hpp"
#include "hpst/linalg.hpp"

namespace hpst {

// Single-excitation state at time tau, started from node k0 (1-based).
// amplitudes[m-1] = f_{k0 m}, probabilities[m-1] = |f_{k0 m}|^2.
struct TransferState {
  double tau = 0.0;
  std::size_t k0 = 1;
  std::vector<Complex> amplitudes;
  std::vector<double> probabilities;

  std::size_t size() const { return amplitudes.size(); }
  // 1-based.
  Complex amplitude(std::size_t m) const;
  double probability(std::size_t m) const;
};

// f_{k0 m}(tau) = sum_j u_{k0 j} u_{m j} exp(-i lambda_j tau / 2).
// Weights u_{k0 j} u_{m j} are precomputed once per source node.
class Propagator {
 public:
  Propagator(const Spectrum& spectrum, std::size_t k0);

  std::size_t size() const { return n_; }
  std::size_t source() const { return k0_; }

  void amplitudes_at(double tau, std::span<Complex> out) const;
  TransferState state_at(double tau) const;

 private:
  std::size_t n_;
  std::size_t k0_;
  std::vector<double> half_lambda_;
  Matrix weights_;  // (m, j) -> u_{k0 j} u_{m j}
};

TransferState evolve(const Spectrum& spectrum, std::size_t k0, double tau);

// a_ij = f_{k0 i} conj(f_{k0 j}).
Complex density_element(const TransferState& state, std::size_t i, std::size_t j);

// |f| cos(arg f) / 3 + |f|^2 / 6 + 1/2.
double fidelity(Complex f);
double fidelity(const TransferState& state, std::size_t m);

// Uniform grid: K = round(T / dtau) + 1 points, tau_i = i * dtau.
struct TimeGrid {
  double T;
  double dtau;

  TimeGrid(double T, double dtau);
  std::size_t points() const { return count_; }
  double at(std::size_t i) const { return static_cast<double>(i) * dtau; }

 private:
  std::size_t count_;
};

std::vector<TransferState> evolve_grid(const Spectrum& spectrum, std::size_t k0, double T, double dtau);

// |sum_m P_m - 1|
double normalization_error(const TransferState& state);

}  // namespace hpst
