#include "doctest.h"
#include "oracles.hpp"

#include "kmb/errors.hpp"
#include "kmb/gaussian.hpp"

using namespace kmb;

namespace {

Matrix thermal(int n, double nu) { return nu * Matrix::Identity(2 * n, 2 * n); }

Matrix symplectic_conjugate(const Matrix& v, Random& rng, double scale = 0.4) {
  Matrix s = random_symplectic(static_cast<int>(v.rows() / 2), rng, scale);
  return s * v * s.transpose();
}

}  // namespace

TEST_CASE("symplectic form layout") {
  Matrix o1 = symplectic_form(1);
  Matrix e1(2, 2);
  e1 << 0, 1, -1, 0;
  CHECK(o1 == e1);

  Matrix o2 = symplectic_form(2);
  Matrix e2 = Matrix::Zero(4, 4);
  e2(0, 2) = e2(1, 3) = 1;
  e2(2, 0) = e2(3, 1) = -1;
  CHECK(o2 == e2);

  for (int n = 1; n <= 5; ++n) {
    Matrix o = symplectic_form(n);
    CHECK((o * o.transpose()).isIdentity(0.0));
    CHECK((o + o.transpose()).isZero(0.0));
  }
  CHECK_THROWS_AS(symplectic_form(0), InvalidDimension);
}

TEST_CASE("validate classifies vacuum, identity and sub-vacuum") {
  ValidityReport vac = validate(thermal(1, 0.5));
  CHECK(vac.valid);
  CHECK_FALSE(vac.faithful);

  ValidityReport id = validate(Matrix::Identity(2, 2));
  CHECK(id.valid);
  CHECK(id.faithful);
  CHECK(id.min_symplectic_eigenvalue == doctest::Approx(1.0).epsilon(1e-14));

  ValidityReport sub = validate(thermal(1, 0.25));
  CHECK_FALSE(sub.valid);

  Matrix indefinite = Matrix::Identity(2, 2);
  indefinite(1, 1) = -1;
  CHECK_FALSE(validate(indefinite).valid);
}

TEST_CASE("validate rejects malformed shapes and asymmetry") {
  CHECK_THROWS_AS(validate(Matrix::Identity(3, 3)), InvalidDimension);
  CHECK_THROWS_AS(validate(Matrix::Identity(2, 4)), InvalidDimension);
  Matrix a = Matrix::Identity(2, 2);
  a(0, 1) = 1e-3;
  CHECK_THROWS_AS(validate(a), InvalidInput);
  CHECK_THROWS_AS(CovarianceMatrix(thermal(1, 0.25)), InvalidInput);
}

TEST_CASE("squeezed vacuum is valid but not faithful") {
  Matrix v = Matrix::Zero(2, 2);
  v(0, 0) = 0.5 * std::exp(1.3);
  v(1, 1) = 0.5 * std::exp(-1.3);
  ValidityReport r = validate(v);
  CHECK(r.valid);
  CHECK_FALSE(r.faithful);
  CHECK(r.min_symplectic_eigenvalue == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("williamson on thermal input") {
  CovarianceMatrix v(thermal(1, 2.0));
  WilliamsonDecomposition w = williamson(v);
  CHECK(w.nu[0] == doctest::Approx(2.0).epsilon(1e-13));
  Matrix o = symplectic_form(1);
  CHECK((w.S * o * w.S.transpose() - o).norm() < 1e-12);
  CHECK((w.S * w.S.transpose() - Matrix::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("williamson recovers a planted spectrum") {
  Random rng(11);
  for (int n : {1, 2, 3, 5}) {
    Vector d(n);
    for (int j = 0; j < n; ++j) d[j] = 0.6 + 0.7 * j;
    Matrix s0 = random_symplectic(n, rng, 0.5);
    Matrix dd = oracle::diag_covariance(d);
    CovarianceMatrix v(s0 * dd * s0.transpose());
    WilliamsonDecomposition w = williamson(v);
    for (int j = 0; j < n; ++j) CHECK(std::abs(w.nu[j] - d[j]) < 1e-10 * d[j]);
  }
}

TEST_CASE("williamson invariants on random instances") {
  Random rng(2024);
  double worst_symp = 0, worst_rec = 0, worst_nu = 0;
  for (int trial = 0; trial < 500; ++trial) {
    int n = 1 + trial % 4;
    CovarianceMatrix v = random_covariance(n, rng);
    WilliamsonDecomposition w = williamson(v);
    Matrix o = symplectic_form(n);
    Matrix dd = oracle::diag_covariance(w.nu);
    worst_symp = std::max(worst_symp, (w.S * o * w.S.transpose() - o).norm());
    worst_rec = std::max(worst_rec, oracle::rel(w.S * dd * w.S.transpose(), v.matrix()));
    Vector ref = oracle::symplectic_spectrum(v.matrix());
    worst_nu = std::max(worst_nu, (w.nu - ref).cwiseAbs().maxCoeff() / ref.maxCoeff());
    for (int j = 1; j < n; ++j) CHECK(w.nu[j] >= w.nu[j - 1]);
  }
  CHECK(worst_symp < tau_symp);
  CHECK(worst_rec < tau_rec);
  CHECK(worst_nu < 1e-10);
}

TEST_CASE("williamson rejects boundary states") {
  CHECK_THROWS_AS(williamson(CovarianceMatrix(thermal(2, 0.5))), BoundaryDegeneracy);
}

TEST_CASE("symplectic eigenvalues") {
  Matrix v = Matrix::Zero(4, 4);
  v.diagonal() << 2, 0.5, 2, 0.5;
  Vector nu = symplectic_eigenvalues(CovarianceMatrix(v));
  CHECK(nu[0] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(nu[1] == doctest::Approx(2.0).epsilon(1e-13));

  Vector nu1 = symplectic_eigenvalues(CovarianceMatrix(Matrix::Identity(4, 4)));
  CHECK(nu1[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(nu1[1] == doctest::Approx(1.0).epsilon(1e-13));

  // diag(a, b) has nu = sqrt(ab)
  Matrix q = Matrix::Zero(2, 2);
  q(0, 0) = 3.0;
  q(1, 1) = 0.75;
  CHECK(symplectic_eigenvalues(CovarianceMatrix(q))[0] == doctest::Approx(1.5).epsilon(1e-13));

  Random rng(5);
  for (int t = 0; t < 20; ++t) {
    Matrix v0 = random_covariance(3, rng).matrix();
    Vector a = symplectic_eigenvalues(CovarianceMatrix(v0));
    Matrix v1 = symplectic_conjugate(v0, rng);
    Vector b = symplectic_eigenvalues(CovarianceMatrix(v1));
    CHECK((a - b).norm() < 1e-9 * a.norm());
  }
}

TEST_CASE("hamiltonian of thermal states") {
  for (double nu : {0.6, 1.0, 3.0}) {
    Matrix h = hamiltonian_matrix(CovarianceMatrix(thermal(1, nu)));
    double expect = 2.0 * oracle::arccoth(2.0 * nu);
    CHECK((h - expect * Matrix::Identity(2, 2)).norm() < 1e-13 * expect);
  }
  for (double beta : {0.1, 1.0, 5.0}) {
    CovarianceMatrix v = covariance_from_hamiltonian(beta * Matrix::Identity(2, 2));
    double expect = 0.5 / std::tanh(0.5 * beta);
    CHECK(oracle::rel(v.matrix(), expect * Matrix::Identity(2, 2)) < 1e-13);
  }
  CHECK(arccoth2(1.0) == doctest::Approx(std::atanh(0.5)).epsilon(1e-15));
}

TEST_CASE("hamiltonian round trip") {
  Random rng(77);
  for (int t = 0; t < 50; ++t) {
    CovarianceMatrix v = random_covariance(1 + t % 3, rng);
    Matrix h = hamiltonian_matrix(v);
    CHECK((h - h.transpose()).norm() < 1e-12 * h.norm());
    CovarianceMatrix back = covariance_from_hamiltonian(h);
    CHECK(oracle::rel(back.matrix(), v.matrix()) < 1e-9);
  }
  CHECK_THROWS_AS(hamiltonian_matrix(CovarianceMatrix(thermal(1, 0.5))), BoundaryDegeneracy);
  Matrix bad = Matrix::Identity(2, 2);
  bad(1, 1) = -1;
  CHECK_THROWS_AS(covariance_from_hamiltonian(bad), InvalidInput);
}

TEST_CASE("von Neumann entropy") {
  Vector vac(1);
  vac << 0.5;
  CHECK(std::abs(von_neumann_entropy(vac)) < 1e-15);

  Vector one(1);
  one << 1.0;
  double bits = 1.5 * std::log2(1.5) - 0.5 * std::log2(0.5);
  CHECK(von_neumann_entropy(one, EntropyBase::Bits) == doctest::Approx(bits).epsilon(1e-14));
  CHECK(von_neumann_entropy(one, EntropyBase::Bits) == doctest::Approx(1.37744).epsilon(1e-5));
  CHECK(von_neumann_entropy(one) == doctest::Approx(bits * std::log(2.0)).epsilon(1e-14));

  Vector pair(2);
  pair << 0.8, 2.5;
  Vector a(1), b(1);
  a << 0.8;
  b << 2.5;
  CHECK(von_neumann_entropy(pair) ==
        doctest::Approx(von_neumann_entropy(a) + von_neumann_entropy(b)).epsilon(1e-14));

  double prev = -1;
  for (double nu = 0.5; nu < 100; nu *= 1.1) {
    Vector x(1);
    x << nu;
    double s = von_neumann_entropy(x);
    CHECK(s > prev);
    prev = s;
  }

  Random rng(3);
  CovarianceMatrix v = random_covariance(3, rng);
  CHECK(von_neumann_entropy(v) ==
        doctest::Approx(von_neumann_entropy(oracle::symplectic_spectrum(v.matrix()))).epsilon(1e-10));
}

TEST_CASE("relative entropy") {
  Random rng(19);
  for (int t = 0; t < 200; ++t) {
    int n = 1 + t % 3;
    CovarianceMatrix v = random_covariance(n, rng);
    CovarianceMatrix w = random_covariance(n, rng);
    CHECK(std::abs(relative_entropy(v, v)) < 1e-11);
    CHECK(relative_entropy(v, w) > -1e-12);
  }
  // thermal pair: S(nu1 I || nu2 I) from the mode formula
  double n1 = 1.0, n2 = 2.0;
  auto ent = [](double nu) { return (nu + 0.5) * std::log(nu + 0.5) - (nu - 0.5) * std::log(nu - 0.5); };
  double b2 = 2 * oracle::arccoth(2 * n2);
  double expect = -ent(n1) + b2 * n1 + std::log(std::sqrt(n2 * n2 - 0.25));
  double got = relative_entropy(CovarianceMatrix(thermal(1, n1)), CovarianceMatrix(thermal(1, n2)));
  CHECK(got == doctest::Approx(expect).epsilon(1e-12));

  CHECK_THROWS_AS(relative_entropy(CovarianceMatrix(thermal(1, 1)), CovarianceMatrix(thermal(2, 1))),
                  InvalidDimension);
}

TEST_CASE("random covariance generator") {
  CovarianceMatrix a = random_covariance(3, 42);
  CovarianceMatrix b = random_covariance(3, 42);
  CHECK(a.matrix() == b.matrix());
  CovarianceMatrix c = random_covariance(3, 43);
  CHECK(a.matrix() != c.matrix());

  Random rng(8);
  for (int t = 0; t < 100; ++t) {
    CovarianceMatrix v = random_covariance(2, rng, {0.55, 20.0});
    Vector nu = oracle::symplectic_spectrum(v.matrix());
    CHECK(nu.minCoeff() > 0.55 - 1e-9);
    CHECK(nu.maxCoeff() < 20.0 + 1e-8);
    CHECK(v.faithful());
  }
  CHECK_THROWS_AS(random_covariance(2, 1, {2.0, 1.0}), InvalidInput);
  CHECK_THROWS_AS(random_covariance(2, 1, {0.4, 1.0}), InvalidInput);
}

TEST_CASE("random symplectic preserves the form") {
  Random rng(99);
  for (int n = 1; n <= 6; ++n) {
    Matrix s = random_symplectic(n, rng, 0.5);
    Matrix o = symplectic_form(n);
    CHECK((s * o * s.transpose() - o).norm() < 1e-10 * s.squaredNorm());
    CHECK((symplectic_inverse(s) * s - Matrix::Identity(2 * n, 2 * n)).norm() < 1e-10 * s.squaredNorm());
  }
}

TEST_CASE("ordering conversion") {
  Matrix o = symplectic_form(3);
  Matrix inter = block_to_interleaved(o);
  for (int j = 0; j < 3; ++j) {
    CHECK(inter(2 * j, 2 * j + 1) == 1.0);
    CHECK(inter(2 * j + 1, 2 * j) == -1.0);
  }
  CHECK(inter.cwiseAbs().sum() == 6.0);
  Random rng(1);
  Matrix m = random_symmetric(6, rng);
  CHECK(interleaved_to_block(block_to_interleaved(m)) == m);
}

TEST_CASE("tangent matrices") {
  Matrix a = Matrix::Identity(2, 2);
  a(0, 1) = 1;
  CHECK_THROWS_AS(TangentMatrix{a}, InvalidInput);
  TangentMatrix s = TangentMatrix::symmetrized(a);
  CHECK(s.matrix()(0, 1) == 0.5);
  CHECK(s.matrix()(1, 0) == 0.5);
  TangentMatrix z = TangentMatrix::zero(2);
  CHECK(z.matrix().isZero(0.0));
  CHECK(hs_inner(s, s) == doctest::Approx(2.5));
  TangentMatrix t = 2.0 * s - s;
  CHECK(t.matrix() == s.matrix());
  CHECK_THROWS_AS(TangentMatrix(Matrix::Identity(3, 3)), InvalidDimension);
}
