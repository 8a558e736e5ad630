#include "doctest.h"
#include "oracles.hpp"

#include "kmb/errors.hpp"
#include "kmb/metric.hpp"

using namespace kmb;

namespace {

TangentMatrix random_tangent(int n, Random& rng) {
  return TangentMatrix::symmetrized(random_symmetric(2 * n, rng));
}

Matrix thermal(int n, double nu) { return nu * Matrix::Identity(2 * n, 2 * n); }

// -d/dh Delta_{V + hC}(A), central differences with h relative to ||V||
Matrix fd_ddelta(const CovarianceMatrix& v, const TangentMatrix& c, const TangentMatrix& a,
                 double h) {
  double step = h * v.matrix().norm() / c.matrix().norm();
  CovarianceMatrix vp(v.matrix() + step * c.matrix());
  CovarianceMatrix vm(v.matrix() - step * c.matrix());
  return -(delta(vp, a).matrix() - delta(vm, a).matrix()) / (2 * step);
}

// d/dh g_{V + hC}(A, B)
double fd_metric(const CovarianceMatrix& v, const TangentMatrix& c, const TangentMatrix& a,
                 const TangentMatrix& b, double h) {
  double step = h * v.matrix().norm() / c.matrix().norm();
  CovarianceMatrix vp(v.matrix() + step * c.matrix());
  CovarianceMatrix vm(v.matrix() - step * c.matrix());
  return (metric(vp, a, b) - metric(vm, a, b)) / (2 * step);
}

}  // namespace

TEST_CASE("delta at thermal single-mode states") {
  for (double nu : {0.6, 1.0, 2.5}) {
    CovarianceMatrix v(thermal(1, nu));
    TangentMatrix id(Matrix::Identity(2, 2));
    double f = 2.0 / (4 * nu * nu - 1);
    CHECK(oracle::rel(delta(v, id).matrix(), f * Matrix::Identity(2, 2)) < 1e-13);
    CHECK(oracle::rel(delta_inverse(v, id).matrix(), Matrix::Identity(2, 2) / f) < 1e-13);
    CHECK(metric(v, id, id) == doctest::Approx(4.0 / (4 * nu * nu - 1)).epsilon(1e-13));
    CHECK(oracle::rel(ddelta(v, id, id).matrix(),
                      16 * nu / ((4 * nu * nu - 1) * (4 * nu * nu - 1)) * Matrix::Identity(2, 2)) <
          1e-12);
    CHECK(oracle::rel(christoffel(v, id, id).matrix(),
                      -4 * nu / (4 * nu * nu - 1) * Matrix::Identity(2, 2)) < 1e-12);
  }
}

TEST_CASE("delta is linear") {
  Random rng(1);
  CovarianceMatrix v = random_covariance(3, rng);
  DeltaKernel k(v);
  TangentMatrix a = random_tangent(3, rng), b = random_tangent(3, rng);
  Matrix lhs = k.delta(2.0 * a + b * -0.5).matrix();
  Matrix rhs = 2.0 * k.delta(a).matrix() - 0.5 * k.delta(b).matrix();
  CHECK(oracle::rel(lhs, rhs) < 1e-13);
}

TEST_CASE("delta agrees with quadrature of its integral form") {
  Random rng(10);
  double worst = 0, worst_imag = 0, worst_nodes = 0;
  for (int t = 0; t < 60; ++t) {
    int n = 1 + t % 3;
    CovarianceMatrix v = random_covariance(n, rng);
    TangentMatrix a = random_tangent(n, rng);
    Matrix closed = delta(v, a).matrix();
    CMatrix q128 = delta_quadrature_complex(v, a, 128);
    worst = std::max(worst, oracle::rel(closed, q128.real()));
    worst_imag = std::max(worst_imag, q128.imag().norm() / closed.norm());
    worst_nodes = std::max(worst_nodes, oracle::rel(delta_quadrature(v, a, 64).matrix(), q128.real()));
  }
  CHECK(worst < 1e-9);
  CHECK(worst_imag < 1e-12);
  CHECK(worst_nodes < 1e-12);
}

TEST_CASE("delta inverse round trip") {
  Random rng(12);
  double worst = 0;
  for (int t = 0; t < 500; ++t) {
    int n = 1 + t % 3;
    CovarianceMatrix v = random_covariance(n, rng);
    DeltaKernel k(v);
    TangentMatrix a = random_tangent(n, rng);
    worst = std::max(worst, oracle::rel(k.delta_inverse(k.delta(a)).matrix(), a.matrix()));
    worst = std::max(worst, oracle::rel(k.delta(k.delta_inverse(a)).matrix(), a.matrix()));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("metric is symmetric and positive") {
  Random rng(13);
  for (int t = 0; t < 1000; ++t) {
    int n = 1 + t % 3;
    CovarianceMatrix v = random_covariance(n, rng);
    DeltaKernel k(v);
    TangentMatrix a = random_tangent(n, rng), b = random_tangent(n, rng);
    CHECK(k.metric(a, a) > 0);
    CHECK(k.metric(a, b) == doctest::Approx(k.metric(b, a)).epsilon(1e-12));
  }
}

TEST_CASE("metric is invariant under symplectic conjugation") {
  Random rng(14);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    int n = 1 + t % 3;
    CovarianceMatrix v = random_covariance(n, rng);
    TangentMatrix a = random_tangent(n, rng), b = random_tangent(n, rng);
    Matrix s = random_symplectic(n, rng, 0.3);
    CovarianceMatrix sv(s * v.matrix() * s.transpose());
    TangentMatrix sa = TangentMatrix::symmetrized(s * a.matrix() * s.transpose());
    TangentMatrix sb = TangentMatrix::symmetrized(s * b.matrix() * s.transpose());
    worst = std::max(worst, oracle::rel(metric(sv, sa, sb), metric(v, a, b)));
  }
  CHECK(worst < 1e-7);
}

TEST_CASE("ddelta matches finite differences of delta") {
  Random rng(15);
  for (int t = 0; t < 60; ++t) {
    int n = 1 + t % 3;
    CovarianceMatrix v = random_covariance(n, rng);
    TangentMatrix a = random_tangent(n, rng), c = random_tangent(n, rng);
    Matrix exact = ddelta(v, c, a).matrix();
    for (double h : {1e-5, 1e-6}) {
      Matrix fd = fd_ddelta(v, c, a, h);
      CHECK((exact - fd).norm() < 1e-6 * std::max(1.0, exact.norm()));
    }
    CHECK(oracle::rel(ddelta(v, a, c).matrix(), exact) < 1e-12);
  }
}

TEST_CASE("christoffel satisfies the Koszul formula") {
  Random rng(16);
  for (int t = 0; t < 30; ++t) {
    int n = 1 + t % 3;
    CovarianceMatrix v = random_covariance(n, rng);
    DeltaKernel k(v);
    TangentMatrix a = random_tangent(n, rng), b = random_tangent(n, rng), c = random_tangent(n, rng);
    double lhs = k.metric(k.christoffel(a, b), c);
    double rhs = 0.5 * (fd_metric(v, a, b, c, 1e-5) + fd_metric(v, b, a, c, 1e-5) -
                        fd_metric(v, c, a, b, 1e-5));
    CHECK(std::abs(lhs - rhs) < 1e-6 * std::max(1.0, std::abs(lhs)));
    CHECK(oracle::rel(k.christoffel(a, b).matrix(), k.christoffel(b, a).matrix()) < 1e-12);
  }
}

TEST_CASE("parallel transport along a line conserves the metric") {
  Random rng(17);
  CovarianceMatrix v0 = random_covariance(2, rng);
  TangentMatrix dir = random_tangent(2, rng);
  dir *= 0.2 * v0.matrix().norm() / dir.matrix().norm();
  TangentMatrix p = random_tangent(2, rng);
  auto rhs = [&](double t, const TangentMatrix& q) {
    CovarianceMatrix vt(v0.matrix() + t * dir.matrix());
    return -1.0 * christoffel(vt, dir, q);
  };
  double g0 = metric(v0, p, p);
  const int steps = 200;
  double h = 1.0 / steps;
  for (int i = 0; i < steps; ++i) {
    double t = i * h;
    TangentMatrix k1 = rhs(t, p);
    TangentMatrix k2 = rhs(t + h / 2, p + k1 * (h / 2));
    TangentMatrix k3 = rhs(t + h / 2, p + k2 * (h / 2));
    TangentMatrix k4 = rhs(t + h, p + k3 * h);
    p += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  CovarianceMatrix v1(v0.matrix() + dir.matrix());
  CHECK(metric(v1, p, p) == doctest::Approx(g0).epsilon(1e-8));
}

TEST_CASE("metric is the negative Hessian of relative entropy") {
  Random rng(18);
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    int n = 1 + t % 3;
    CovarianceMatrix v = random_covariance(n, rng);
    TangentMatrix a = random_tangent(n, rng), b = random_tangent(n, rng);
    double h = 1e-5 * v.matrix().norm();
    double ha = h / a.matrix().norm(), hb = h / b.matrix().norm();
    auto s = [&](double x, double y) {
      return relative_entropy(CovarianceMatrix(v.matrix() + x * a.matrix()),
                              CovarianceMatrix(v.matrix() + y * b.matrix()));
    };
    double mixed = (s(ha, hb) - s(ha, -hb) - s(-ha, hb) + s(-ha, -hb)) / (4 * ha * hb);
    double g = metric(v, a, b);
    worst = std::max(worst, oracle::rel(-mixed, g));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("frame maps are mutually inverse") {
  Random rng(19);
  CovarianceMatrix v = random_covariance(3, rng);
  DeltaKernel k(v);
  TangentMatrix a = random_tangent(3, rng);
  CHECK(oracle::rel(k.from_frame(k.to_frame(a)).matrix(), a.matrix()) < 1e-12);
  CHECK(oracle::rel(k.from_frame_dual(k.to_frame_dual(a)).matrix(), a.matrix()) < 1e-12);
  CMatrix x = k.to_frame(a);
  CHECK((x - x.adjoint()).norm() < 1e-12 * x.norm());
}

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
  auto [x, w] = gauss_legendre(16);
  CHECK(w.sum() == doctest::Approx(2.0).epsilon(1e-14));
  double m30 = 0;
  for (int i = 0; i < 16; ++i) m30 += w[i] * std::pow(x[i], 30);
  CHECK(m30 == doctest::Approx(2.0 / 31).epsilon(1e-13));
}

TEST_CASE("metric refuses states near the boundary") {
  CHECK_THROWS_AS(DeltaKernel(CovarianceMatrix(thermal(1, 0.5 + 1e-8))), BoundaryDegeneracy);
  CHECK_NOTHROW(DeltaKernel(CovarianceMatrix(thermal(1, 0.5 + 1e-4))));
  Random rng(20);
  DeltaKernel k(random_covariance(2, rng));
  CHECK_THROWS_AS(k.delta(TangentMatrix(Matrix::Identity(2, 2))), InvalidDimension);
}
