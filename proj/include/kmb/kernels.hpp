#pragma once

#include <vector>

#include "kmb/gaussian.hpp"

namespace kmb {

// Scalar kernels over symplectic eigenvalues, with f(x) = arccoth(2x).
// All of them are continuous through coincident arguments.

// f_ab = (f(b) - f(a)) / (a - b); equals 2/(4a^2-1) at a = b.
double kernel_f(double a, double b);
// g_ab = (f(a) + f(b)) / (a + b).
double kernel_g(double a, double b);
// A_ijk = (f_jk - f_ij) / (nu_i - nu_k), the second divided difference of f.
double kernel_A(double a, double b, double c);
// B_ijk = (g_jk - g_ij) / (nu_i - nu_k).
double kernel_B(double i, double j, double k);

// n-th derivative of f divided by n!; n = 0 gives f itself.
double f_taylor_coefficient(int n, double x);

class SpectralKernels {
 public:
  explicit SpectralKernels(const Vector& nu);

  int modes() const { return n_; }
  const Vector& nu() const { return nu_; }
  const Matrix& f_table() const { return f_; }
  const Matrix& g_table() const { return g_; }

  double f(int i, int j) const { return f_(i, j); }
  double g(int i, int j) const { return g_(i, j); }
  double A(int i, int j, int k) const { return a_[index(i, j, k)]; }
  double B(int i, int j, int k) const { return b_[index(i, j, k)]; }

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }

  int n_;
  Vector nu_;
  Matrix f_;
  Matrix g_;
  std::vector<double> a_;
  std::vector<double> b_;
};

// Throws BoundaryDegeneracy if some nu_j <= 1/2 + tau_faith.
SpectralKernels kernels(const Vector& nu);

void check_spectrum(const Vector& nu, double margin);

}  // namespace kmb
