#pragma once

#include "kmb/gaussian.hpp"
#include "kmb/kernels.hpp"

namespace kmb {

// Spectral building blocks of the closed-form scalar curvature.
double phi1(const SpectralKernels& k, int i);
double phi2(const SpectralKernels& k, int i, int j);
double phi3(const SpectralKernels& k, int i, int j, int l);

// Scal = sum_i phi1 + sum_{i<j} phi2 + sum_{i<j<l} phi3.
double scalar_curvature(const SpectralKernels& k);
double scalar_curvature(const Vector& nu);

double scalar_curvature_single_mode(double nu);

// -d(d-1)(d+2)/4, the curvature of d-variate zero-mean normal families.
double classical_curvature(int d);

// Scal / (N(2N-1)(N+1)); tends to -1 for highly mixed states.
double curvature_ratio(const Vector& nu);
double curvature_ratio(double scal, int modes);

// Leading quantum correction to the ratio at high temperature.
double high_temperature_ratio(const Vector& omegas, double temperature);

// pi^N / N!, the volume of the unit ball in 2N dimensions.
double unit_ball_volume(int modes);
double ball_volume_expansion(int modes, double scal, double eps);

}  // namespace kmb
