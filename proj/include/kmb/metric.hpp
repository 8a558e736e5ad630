#pragma once

#include <utility>
#include <vector>

#include "kmb/gaussian.hpp"
#include "kmb/kernels.hpp"

namespace kmb {

// Metric operations refuse points with min nu below 1/2 + this margin.
inline constexpr double metric_boundary_margin = 1e-6;

// Per-point data for the Delta family, evaluated in the Williamson frame
// rotated by U (x) I_N, where Delta is a Hadamard product.
class DeltaKernel {
 public:
  explicit DeltaKernel(const CovarianceMatrix& v);

  int modes() const { return n_; }
  const CovarianceMatrix& point() const { return v_; }
  const WilliamsonDecomposition& decomposition() const { return w_; }
  const SpectralKernels& spectral() const { return k_; }
  const Matrix& f_table() const { return k_.f_table(); }
  const Matrix& g_table() const { return k_.g_table(); }

  TangentMatrix delta(const TangentMatrix& a) const;
  TangentMatrix delta_inverse(const TangentMatrix& a) const;
  double metric(const TangentMatrix& a, const TangentMatrix& b) const;
  // dDelta(C)(A) = 2 int theta (C theta A + A theta C) theta
  TangentMatrix ddelta(const TangentMatrix& c, const TangentMatrix& a) const;
  // -1/2 Delta^{-1} dDelta(B)(A)
  TangentMatrix christoffel(const TangentMatrix& a, const TangentMatrix& b) const;

  // Frame maps. Tangents go in by U^+ S^{-1} A S^{-T} U, covectors by
  // U^+ S^T B S U.
  CMatrix to_frame(const TangentMatrix& a) const;
  CMatrix to_frame_dual(const TangentMatrix& b) const;
  TangentMatrix from_frame(const CMatrix& x) const;
  TangentMatrix from_frame_dual(const CMatrix& x) const;

  CMatrix frame_delta(const CMatrix& x) const;
  CMatrix frame_delta_inverse(const CMatrix& x) const;
  CMatrix frame_ddelta(const CMatrix& c, const CMatrix& x) const;

 private:
  void check(const TangentMatrix& a) const;
  double triple(int alpha, int beta, int gamma) const;

  int n_;
  CovarianceMatrix v_;
  WilliamsonDecomposition w_;
  SpectralKernels k_;
  Matrix sinv_;
  CMatrix su_;      // S U
  CMatrix sinv_t_u_;  // S^{-T} U
  Matrix k2_;
  std::vector<double> t3_;
};

TangentMatrix delta(const CovarianceMatrix& v, const TangentMatrix& a);
TangentMatrix delta_inverse(const CovarianceMatrix& v, const TangentMatrix& a);
double metric(const CovarianceMatrix& v, const TangentMatrix& a,
              const TangentMatrix& b);
TangentMatrix ddelta(const CovarianceMatrix& v, const TangentMatrix& c,
                     const TangentMatrix& a);
TangentMatrix christoffel(const CovarianceMatrix& v, const TangentMatrix& a,
                          const TangentMatrix& b);

// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<Vector, Vector> gauss_legendre(int nodes);

// Quadrature of int_{-1}^{1} theta A theta, theta = (2V + i lambda Omega)^{-1}.
CMatrix delta_quadrature_complex(const CovarianceMatrix& v, const TangentMatrix& a,
                                 int nodes = 64);
TangentMatrix delta_quadrature(const CovarianceMatrix& v, const TangentMatrix& a,
                               int nodes = 64);

}  // namespace kmb
