#pragma once

#include <vector>

#include "kmb/gaussian.hpp"

namespace kmb {

// Periodic harmonic chain with dimensionless frequency and temperature.
struct ChainParams {
  int modes = 1;
  double omega_tilde = 1.0;
  double temperature = 1.0;
};

void check_chain(const ChainParams& p);

// Omega_j = sqrt(omega_tilde + 4 sin^2(j pi / N)), j = 1..N
Vector chain_modes(const ChainParams& p);
// nu_j = coth(Omega_j / (2T)) / 2
Vector chain_symplectic_eigenvalues(const ChainParams& p);

enum class HamCoefficient {
  ModeFormula,  // omega_tilde + 2, consistent with chain_modes
  AsPrinted,    // omega_tilde^2 + 2
};

// Cyclic adjacency: sum over bonds (i, i+1 mod N) of e_{i,i+1} + e_{i+1,i}.
Matrix chain_adjacency(int modes);
Matrix chain_hamiltonian(const ChainParams& p,
                         HamCoefficient coefficient = HamCoefficient::ModeFormula);

// Lowest temperature for which every nu_j stays at least 1/2 + tau_faith.
double chain_temperature_floor(int modes, double omega_tilde);

struct ChainScanRow {
  int modes;
  double omega_tilde;
  double temperature;
  double scal;
  double ratio;
  double entropy_nats;
};

ChainScanRow chain_curvature_point(const ChainParams& p);
std::vector<ChainScanRow> chain_curvature_scan(const std::vector<ChainParams>& grid);

// n points log-spaced over [lo, hi], endpoints included.
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace kmb
