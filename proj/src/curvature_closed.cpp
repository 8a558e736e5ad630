#include "kmb/curvature_closed.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kmb/errors.hpp"

namespace kmb {

double phi1(const SpectralKernels& k, int i) {
  double a = k.A(i, i, i), b = k.B(i, i, i);
  double f = k.f(i, i), g = k.g(i, i);
  return -b * (2.0 * a * g - b * f) / (f * f * g * g);
}

double phi2(const SpectralKernels& k, int i, int j) {
  const double fii = k.f(i, i), fjj = k.f(j, j), fij = k.f(i, j);
  const double gii = k.g(i, i), gjj = k.g(j, j), gij = k.g(i, j);
  const double aiij = k.A(i, i, j), aijj = k.A(i, j, j);
  const double aiii = k.A(i, i, i), ajjj = k.A(j, j, j);
  const double biii = k.B(i, i, i), bjjj = k.B(j, j, j);
  const double biji = k.B(i, j, i), bjij = k.B(j, i, j);
  const double biij = k.B(i, i, j), bijj = k.B(i, j, j);

  double t1 = aiij / (fii * fij) *
              (aiij / (4.0 * fij) - biji / gij - 2.0 * biii / gii - aiii / fii);
  double t2 = aijj / (fjj * fij) *
              (aijj / (4.0 * fij) - bjij / gij - 2.0 * bjjj / gjj - ajjj / fjj);
  double t3 = 3.0 / (fij * gij) * (biij * biij / gii + bijj * bijj / gjj);
  double t4 = biji / (fii * gij) * (biji / (4.0 * gij) - 2.0 * biii / gii - aiii / fii);
  double t5 = bjij / (fjj * gij) * (bjij / (4.0 * gij) - 2.0 * bjjj / gjj - ajjj / fjj);
  return t1 + t2 + t3 + t4 + t5;
}

double phi3(const SpectralKernels& k, int i, int j, int l) {
  const double fij = k.f(i, j), fil = k.f(i, l), fjl = k.f(j, l);
  const double gij = k.g(i, j), gil = k.g(i, l), gjl = k.g(j, l);
  const double fii = k.f(i, i), fjj = k.f(j, j), fll = k.f(l, l);

  double a = k.A(i, j, l);
  double sq = a * a / (fij * fil * fjl) +
              k.B(i, l, j) * k.B(i, l, j) / (fij * gil * gjl) +
              k.B(i, j, l) * k.B(i, j, l) / (fil * gjl * gij) +
              k.B(j, i, l) * k.B(j, i, l) / (fjl * gij * gil);

  double cj = (k.A(j, j, l) / (fjj * fjl) + k.B(j, l, j) / (fjj * gjl)) *
              (k.B(j, i, j) / gij + k.A(i, j, j) / fij);
  double ci = (k.A(i, i, j) / (fii * fij) + k.B(i, j, i) / (fii * gij)) *
              (k.B(i, l, i) / gil + k.A(i, i, l) / fil);
  double cl = (k.A(i, l, l) / (fll * fil) + k.B(l, i, l) / (fll * gil)) *
              (k.B(l, j, l) / gjl + k.A(j, l, l) / fjl);
  return 1.5 * sq - cj - ci - cl;
}

double scalar_curvature(const SpectralKernels& k) {
  const int n = k.modes();
  // Neumaier summation in a fixed order
  double sum = 0.0, comp = 0.0;
  auto add = [&](double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  };
  for (int i = 0; i < n; ++i) add(phi1(k, i));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      add(phi2(k, i, j));
      for (int l = j + 1; l < n; ++l) add(phi3(k, i, j, l));
    }
  }
  return sum + comp;
}

double scalar_curvature(const Vector& nu) { return scalar_curvature(kernels(nu)); }

double scalar_curvature_single_mode(double nu) {
  Vector v(1);
  v[0] = nu;
  check_spectrum(v, tau_faith);
  double f = arccoth2(nu);
  double num = (2.0 * nu - f + 4.0 * nu * nu * f) * (f + 2.0 * nu * (-1.0 + 6.0 * nu * f));
  double den = 8.0 * nu * nu * ((2.0 * nu - 1.0) * (2.0 * nu + 1.0)) * f * f;
  return -num / den;
}

double classical_curvature(int d) {
  if (d < 1) throw InvalidDimension("dimension must be at least 1");
  double x = d;
  return -x * (x - 1.0) * (x + 2.0) / 4.0;
}

double curvature_ratio(double scal, int modes) {
  if (modes < 1) throw InvalidDimension("mode count must be at least 1");
  double n = modes;
  return scal / (n * (2.0 * n - 1.0) * (n + 1.0));
}

double curvature_ratio(const Vector& nu) {
  return curvature_ratio(scalar_curvature(nu), static_cast<int>(nu.size()));
}

double high_temperature_ratio(const Vector& omegas, double temperature) {
  const int n = static_cast<int>(omegas.size());
  if (n < 1) throw InvalidDimension("need at least one mode");
  if (!(temperature > 0.0)) throw InvalidInput("temperature must be positive");
  for (double w : omegas) {
    if (!(w > 0.0)) throw InvalidInput("mode frequencies must be positive");
  }
  // Each of the pair (triple) sums counts every Omega_i^2 N-1 (C(N-1,2)) times.
  double sq = omegas.squaredNorm();
  double m = n - 1.0;
  double bracket = sq * (0.5 + 1.25 * m + (2.0 / 3.0) * m * (m - 1.0) / 2.0);
  double nn = n;
  return -1.0 - bracket / (temperature * temperature * nn * (2.0 * nn - 1.0) * (nn + 1.0));
}

double unit_ball_volume(int modes) {
  if (modes < 1) throw InvalidDimension("mode count must be at least 1");
  return std::pow(std::numbers::pi, modes) / std::tgamma(modes + 1.0);
}

double ball_volume_expansion(int modes, double scal, double eps) {
  if (!(eps > 0.0)) throw InvalidInput("radius must be positive");
  double e2n = std::pow(eps, 2 * modes);
  return unit_ball_volume(modes) * (e2n - scal * e2n * eps * eps / (12.0 * (modes + 1.0)));
}

}  // namespace kmb
