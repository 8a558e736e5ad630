#include "kmb/chain.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kmb/curvature_closed.hpp"
#include "kmb/errors.hpp"
#include "kmb/parallel.hpp"

namespace kmb {

void check_chain(const ChainParams& p) {
  if (p.modes < 1) throw InvalidDimension("chain needs at least one site");
  if (!(p.omega_tilde > 0.0) || !std::isfinite(p.omega_tilde)) {
    throw InvalidInput("omega_tilde must be positive");
  }
  if (!(p.temperature > 0.0) || !std::isfinite(p.temperature)) {
    throw InvalidInput("temperature must be positive");
  }
}

Vector chain_modes(const ChainParams& p) {
  check_chain(p);
  Vector w(p.modes);
  for (int j = 1; j <= p.modes; ++j) {
    double s = std::sin(j * std::numbers::pi / p.modes);
    w[j - 1] = std::sqrt(p.omega_tilde + 4.0 * s * s);
  }
  return w;
}

Vector chain_symplectic_eigenvalues(const ChainParams& p) {
  Vector w = chain_modes(p);
  Vector nu(w.size());
  for (int j = 0; j < w.size(); ++j) nu[j] = 0.5 + 1.0 / std::expm1(w[j] / p.temperature);
  return nu;
}

Matrix chain_adjacency(int modes) {
  if (modes < 1) throw InvalidDimension("chain needs at least one site");
  Matrix m = Matrix::Zero(modes, modes);
  for (int i = 0; i < modes; ++i) {
    int j = (i + 1) % modes;
    m(i, j) += 1.0;
    m(j, i) += 1.0;
  }
  return m;
}

Matrix chain_hamiltonian(const ChainParams& p, HamCoefficient coefficient) {
  check_chain(p);
  const int n = p.modes;
  double c = coefficient == HamCoefficient::ModeFormula ? p.omega_tilde + 2.0
                                                        : p.omega_tilde * p.omega_tilde + 2.0;
  Matrix h = Matrix::Zero(2 * n, 2 * n);
  h.topLeftCorner(n, n) = c * Matrix::Identity(n, n) - chain_adjacency(n);
  h.bottomRightCorner(n, n).setIdentity();
  return h / p.temperature;
}

double chain_temperature_floor(int modes, double omega_tilde) {
  ChainParams p{modes, omega_tilde, 1.0};
  Vector w = chain_modes(p);
  // nu - 1/2 = 1/expm1(Omega/T) >= tau_faith
  return w.maxCoeff() / std::log1p(1.0 / tau_faith);
}

ChainScanRow chain_curvature_point(const ChainParams& p) {
  Vector nu = chain_symplectic_eigenvalues(p);
  for (int j = 0; j < nu.size(); ++j) {
    if (!(nu[j] >= 0.5 + tau_faith)) {
      throw BoundaryDegeneracy(
          "temperature " + std::to_string(p.temperature) +
              " is below the floor " +
              std::to_string(chain_temperature_floor(p.modes, p.omega_tilde)) +
              " (mode " + std::to_string(j) + " within 1e-9 of the pure state)",
          j, nu[j]);
    }
  }
  double scal = scalar_curvature(nu);
  return ChainScanRow{p.modes, p.omega_tilde, p.temperature, scal,
                      curvature_ratio(scal, p.modes), von_neumann_entropy(nu)};
}

std::vector<ChainScanRow> chain_curvature_scan(const std::vector<ChainParams>& grid) {
  std::vector<ChainScanRow> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { rows[i] = chain_curvature_point(grid[i]); });
  return rows;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi >= lo) || n < 1) throw InvalidInput("bad log grid");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * i / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace kmb
