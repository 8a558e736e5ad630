#include "kmb/metric.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "kmb/errors.hpp"

namespace kmb {

namespace {

using cd = std::complex<double>;

WilliamsonDecomposition checked_decomposition(const CovarianceMatrix& v) {
  WilliamsonDecomposition w = williamson(v);
  check_spectrum(w.nu, metric_boundary_margin);
  return w;
}

CMatrix rotation(int n) {
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix u = CMatrix::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    u(j, j) = r;
    u(j, n + j) = r;
    u(n + j, j) = cd(0.0, r);
    u(n + j, n + j) = cd(0.0, -r);
  }
  return u;
}

}  // namespace

DeltaKernel::DeltaKernel(const CovarianceMatrix& v)
    : n_(v.modes()),
      v_(v),
      w_(checked_decomposition(v)),
      k_(w_.nu),
      sinv_(symplectic_inverse(w_.S)) {
  CMatrix u = rotation(n_);
  su_ = w_.S.cast<cd>() * u;
  sinv_t_u_ = sinv_.transpose().cast<cd>() * u;

  const int d = 2 * n_;
  k2_.resize(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      int j = a % n_, k = b % n_;
      k2_(a, b) = (a / n_ == b / n_) ? k_.f(j, k) : k_.g(j, k);
    }
  }
  t3_.resize(static_cast<std::size_t>(d) * d * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) {
        t3_[(static_cast<std::size_t>(a) * d + b) * d + c] = triple(a, b, c);
      }
    }
  }
}

double DeltaKernel::triple(int alpha, int beta, int gamma) const {
  int s = alpha / n_, t = beta / n_, u = gamma / n_;
  int j = alpha % n_, k = beta % n_, l = gamma % n_;
  if (s == t && t == u) return k_.A(j, k, l);
  if (s == u) return k_.B(j, k, l);
  if (s == t) return k_.B(j, l, k);
  return k_.B(k, j, l);
}

void DeltaKernel::check(const TangentMatrix& a) const {
  if (a.modes() != n_) {
    throw InvalidDimension("tangent has " + std::to_string(a.modes()) +
                       " modes, base point has " + std::to_string(n_));
  }
}

CMatrix DeltaKernel::to_frame(const TangentMatrix& a) const {
  check(a);
  return sinv_t_u_.adjoint() * a.matrix().cast<cd>() * sinv_t_u_;
}

CMatrix DeltaKernel::to_frame_dual(const TangentMatrix& b) const {
  check(b);
  return su_.adjoint() * b.matrix().cast<cd>() * su_;
}

TangentMatrix DeltaKernel::from_frame(const CMatrix& x) const {
  return TangentMatrix::symmetrized((su_ * x * su_.adjoint()).real());
}

TangentMatrix DeltaKernel::from_frame_dual(const CMatrix& x) const {
  return TangentMatrix::symmetrized((sinv_t_u_ * x * sinv_t_u_.adjoint()).real());
}

CMatrix DeltaKernel::frame_delta(const CMatrix& x) const {
  return x.cwiseProduct(k2_.cast<cd>());
}

CMatrix DeltaKernel::frame_delta_inverse(const CMatrix& x) const {
  return x.cwiseQuotient(k2_.cast<cd>());
}

CMatrix DeltaKernel::frame_ddelta(const CMatrix& c, const CMatrix& x) const {
  const int d = 2 * n_;
  CMatrix out = CMatrix::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    for (int g = 0; g < d; ++g) {
      cd sum = 0.0;
      const double* t = &t3_[static_cast<std::size_t>(a) * d * d + g];
      for (int b = 0; b < d; ++b) {
        sum += (c(a, b) * x(b, g) + x(a, b) * c(b, g)) * t[b * d];
      }
      out(a, g) = sum;
    }
  }
  return out;
}

TangentMatrix DeltaKernel::delta(const TangentMatrix& a) const {
  return from_frame_dual(frame_delta(to_frame(a)));
}

TangentMatrix DeltaKernel::delta_inverse(const TangentMatrix& a) const {
  return from_frame(frame_delta_inverse(to_frame_dual(a)));
}

double DeltaKernel::metric(const TangentMatrix& a, const TangentMatrix& b) const {
  CMatrix x = to_frame(a);
  CMatrix y = to_frame(b);
  return (y.transpose().cwiseProduct(frame_delta(x))).sum().real();
}

TangentMatrix DeltaKernel::ddelta(const TangentMatrix& c, const TangentMatrix& a) const {
  return from_frame_dual(frame_ddelta(to_frame(c), to_frame(a)));
}

TangentMatrix DeltaKernel::christoffel(const TangentMatrix& a,
                                       const TangentMatrix& b) const {
  return -0.5 * delta_inverse(ddelta(b, a));
}

TangentMatrix delta(const CovarianceMatrix& v, const TangentMatrix& a) {
  return DeltaKernel(v).delta(a);
}

TangentMatrix delta_inverse(const CovarianceMatrix& v, const TangentMatrix& a) {
  return DeltaKernel(v).delta_inverse(a);
}

double metric(const CovarianceMatrix& v, const TangentMatrix& a,
              const TangentMatrix& b) {
  return DeltaKernel(v).metric(a, b);
}

TangentMatrix ddelta(const CovarianceMatrix& v, const TangentMatrix& c,
                     const TangentMatrix& a) {
  return DeltaKernel(v).ddelta(c, a);
}

TangentMatrix christoffel(const CovarianceMatrix& v, const TangentMatrix& a,
                          const TangentMatrix& b) {
  return DeltaKernel(v).christoffel(a, b);
}

std::pair<Vector, Vector> gauss_legendre(int nodes) {
  if (nodes < 1) throw InvalidInput("quadrature needs at least one node");
  Vector x(nodes), w(nodes);
  for (int i = 0; i < (nodes + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (nodes + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= nodes; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = nodes * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // refresh derivative at the converged node
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= nodes; ++k) {
      double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = nodes * (z * p0 - p1) / (z * z - 1.0);
    x[i] = -z;
    x[nodes - 1 - i] = z;
    w[i] = w[nodes - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

CMatrix delta_quadrature_complex(const CovarianceMatrix& v, const TangentMatrix& a,
                                 int nodes) {
  check_spectrum(symplectic_eigenvalues(v), metric_boundary_margin);
  if (a.modes() != v.modes()) throw InvalidDimension("tangent and point mode counts differ");
  auto [x, w] = gauss_legendre(nodes);
  const Matrix omega = SymplecticForm(v.modes()).matrix();
  const CMatrix am = a.matrix().cast<cd>();
  CMatrix sum = CMatrix::Zero(am.rows(), am.cols());
  for (int i = 0; i < nodes; ++i) {
    CMatrix m = 2.0 * v.matrix().cast<cd>() + cd(0.0, x[i]) * omega.cast<cd>();
    Eigen::PartialPivLU<CMatrix> lu(m);
    CMatrix theta = lu.inverse();
    sum += w[i] * (theta * am * theta);
  }
  return sum;
}

TangentMatrix delta_quadrature(const CovarianceMatrix& v, const TangentMatrix& a,
                               int nodes) {
  return TangentMatrix::symmetrized(delta_quadrature_complex(v, a, nodes).real());
}

}  // namespace kmb
