#pragma once

#include <vector>

#include "kmb/gaussian.hpp"
#include "kmb/metric.hpp"

namespace kmb {

inline constexpr double tau_speed = 1e-6;
inline constexpr int min_geodesic_steps = 16;

struct GeodesicPath {
  std::vector<double> times;
  std::vector<CovarianceMatrix> points;
  std::vector<TangentMatrix> velocities;
};

// Classical RK4 on (V, dV/dt) with d2V/dt2 = 1/2 Delta^{-1} dDelta(V')(V'),
// over t in [0, 1].
GeodesicPath geodesic_shoot(const CovarianceMatrix& v0, const TangentMatrix& a0,
                            int steps = 256);

std::vector<double> path_speeds(const GeodesicPath& path);
// max |g(V',V') - g_0| / g_0 along the path; 0 for a constant path
double speed_drift(const GeodesicPath& path);
double path_length(const GeodesicPath& path);

struct ShootingControls {
  int steps = 128;
  int max_iterations = 100;
  double tolerance = 1e-8;  // relative to ||V1||_F
};

struct ShootingResult {
  double length = 0.0;
  double residual = 0.0;  // ||gamma(1) - V1||_F / ||V1||_F
  int iterations = 0;
  TangentMatrix initial_velocity;
  GeodesicPath path;
};

// Finds A0 with gamma(1) = V1 by damped quasi-Newton iteration started from
// the flat-space guess V1 - V0 with the identity as initial Jacobian. A
// forward-difference Jacobian replaces the Broyden estimate when a line
// search fails to reduce the residual.
ShootingResult shoot_to(const CovarianceMatrix& v0, const CovarianceMatrix& v1,
                        ShootingControls controls = {});
double geodesic_distance_estimate(const CovarianceMatrix& v0, const CovarianceMatrix& v1,
                                  ShootingControls controls = {});

}  // namespace kmb
