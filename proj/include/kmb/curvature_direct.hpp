#pragma once

#include <vector>

#include "kmb/gaussian.hpp"
#include "kmb/metric.hpp"

namespace kmb {

inline constexpr int max_direct_modes = 6;

// Hilbert-Schmidt orthonormal basis of symmetric 2N x 2N matrices, built
// from a_n (x) e_jj (n = 1..3), a_n (x) b_jk (n = 1, 2), g_jk and g~_jk.
class OrthonormalBasis {
 public:
  OrthonormalBasis(int modes, std::vector<TangentMatrix> elements);

  int modes() const { return modes_; }
  std::size_t size() const { return elements_.size(); }
  const TangentMatrix& operator[](std::size_t i) const { return elements_[i]; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

 private:
  int modes_;
  std::vector<TangentMatrix> elements_;
};

OrthonormalBasis orthonormal_basis(int modes);

// R(A,B)C = 1/4 D^{-1} dD(B) D^{-1} dD(A) C - 1/4 D^{-1} dD(A) D^{-1} dD(B) C
TangentMatrix riemann(const DeltaKernel& k, const TangentMatrix& a,
                      const TangentMatrix& b, const TangentMatrix& c);
TangentMatrix riemann(const CovarianceMatrix& v, const TangentMatrix& a,
                      const TangentMatrix& b, const TangentMatrix& c);

// K(A,B) = <R(B, A, Delta^{-1} A), B>
double sectional_like_term(const DeltaKernel& k, const TangentMatrix& a,
                           const TangentMatrix& b);
double sectional_like_term(const CovarianceMatrix& v, const TangentMatrix& a,
                           const TangentMatrix& b);

// Sum over s != t of K(X_s, X_t); pairwise-summed in a fixed order.
double scalar_curvature_direct(const DeltaKernel& k, const OrthonormalBasis& basis);
double scalar_curvature_direct(const CovarianceMatrix& v);

// sum_s <R(X_s, A, B), X_s>
double ricci(const DeltaKernel& k, const OrthonormalBasis& basis,
             const TangentMatrix& a, const TangentMatrix& b);
double ricci(const CovarianceMatrix& v, const TangentMatrix& a, const TangentMatrix& b);

double pairwise_sum(const std::vector<double>& x);

}  // namespace kmb
