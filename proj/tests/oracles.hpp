#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "kmb/gaussian.hpp"

// Reference computations that do not share code paths with the library.
namespace oracle {

using kmb::Matrix;
using kmb::Vector;

inline Matrix omega(int n) {
  Matrix o = Matrix::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    o(j, n + j) = 1.0;
    o(n + j, j) = -1.0;
  }
  return o;
}

// Moduli of the eigenvalues of i Omega V, paired and sorted ascending.
inline Vector symplectic_spectrum(const Matrix& v) {
  const int n = static_cast<int>(v.rows() / 2);
  Eigen::MatrixXcd m = std::complex<double>(0.0, 1.0) * (omega(n) * v).cast<std::complex<double>>();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  std::vector<double> mods;
  for (int i = 0; i < 2 * n; ++i) mods.push_back(std::abs(es.eigenvalues()[i]));
  std::sort(mods.begin(), mods.end());
  Vector nu(n);
  for (int j = 0; j < n; ++j) nu[j] = 0.5 * (mods[2 * j] + mods[2 * j + 1]);
  return nu;
}

inline Matrix diag_covariance(const Vector& nu) {
  const int n = static_cast<int>(nu.size());
  Matrix v = Matrix::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) v(j, j) = v(n + j, n + j) = nu[j];
  return v;
}

inline double arccoth(double x) { return std::atanh(1.0 / x); }

// Corollary formula for one mode.
inline double single_mode_scal(double nu) {
  double f = arccoth(2.0 * nu);
  return -(2 * nu - f + 4 * nu * nu * f) * (f + 2 * nu * (-1 + 6 * nu * f)) /
         (8 * nu * nu * (-1 + 4 * nu * nu) * f * f);
}

// Composite Gauss-Legendre over [-1,1] split into panels, nodes from a
// fixed 20-point rule computed by Newton iteration.
template <class F>
double integrate(F f, int panels = 64) {
  static std::vector<double> x, w;
  if (x.empty()) {
    const int n = 20;
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1, p1 = 0;
        for (int k = 1; k <= n; ++k) {
          double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p2) / k;
        }
        double dp = n * (z * p0 - p1) / (z * z - 1);
        double dz = p0 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) {
          w[i] = 2 / ((1 - z * z) * dp * dp);
          break;
        }
      }
      x[i] = z;
    }
  }
  double h = 2.0 / panels, sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    double mid = -1.0 + (p + 0.5) * h;
    for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * f(mid + 0.5 * h * x[i]);
  }
  return sum * 0.5 * h;
}

// Kernel integrals over lambda in [-1,1].
inline double f_int(double a, double b) {
  return integrate([&](double l) { return 1.0 / ((2 * a + l) * (2 * b + l)); });
}
inline double g_int(double a, double b) {
  return integrate([&](double l) { return 1.0 / ((2 * a + l) * (2 * b - l)); });
}
inline double a_int(double a, double b, double c) {
  return 2.0 * integrate([&](double l) { return 1.0 / ((2 * a + l) * (2 * b + l) * (2 * c + l)); });
}
// odd sign in the middle slot
inline double b_int(double a, double b, double c) {
  return 2.0 * integrate([&](double l) { return 1.0 / ((2 * a + l) * (2 * b - l) * (2 * c + l)); });
}

inline double rel(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

inline double rel(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

}  // namespace oracle
