#include "kmb/gaussian.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kmb/errors.hpp"

namespace kmb {

namespace {

void check_shape(const Matrix& v) {
  if (v.rows() != v.cols() || v.rows() == 0 || v.rows() % 2 != 0) {
    throw InvalidDimension("expected a square matrix of even size, got " +
                           std::to_string(v.rows()) + "x" +
                           std::to_string(v.cols()));
  }
}

double asymmetry_of(const Matrix& v) {
  return (v - v.transpose()).cwiseAbs().maxCoeff();
}

void check_symmetric(const Matrix& v, const char* what) {
  double scale = v.cwiseAbs().maxCoeff();
  double asym = asymmetry_of(v);
  if (asym > tau_sym * scale) {
    throw InvalidInput(std::string(what) + " is not symmetric (max deviation " +
                       std::to_string(asym) + ")");
  }
}

Matrix sqrt_spd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Vector d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

// Williamson form of a symmetric positive definite matrix.
WilliamsonDecomposition diagonalize(const Matrix& m) {
  const int n = static_cast<int>(m.rows() / 2);
  const Matrix omega = SymplecticForm(n).matrix();
  Matrix root = sqrt_spd(m);
  Matrix b = root * omega * root;
  CMatrix k = std::complex<double>(0.0, 1.0) * b.cast<std::complex<double>>();
  k = 0.5 * (k + k.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(k);

  WilliamsonDecomposition w;
  w.nu = es.eigenvalues().tail(n);
  Matrix o(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXcd u = es.eigenvectors().col(n + j);
    o.col(j) = std::sqrt(2.0) * u.real();
    o.col(n + j) = -std::sqrt(2.0) * u.imag();
  }
  Vector scale(2 * n);
  scale << w.nu.cwiseSqrt().cwiseInverse(), w.nu.cwiseSqrt().cwiseInverse();
  w.S = root * o * scale.asDiagonal();

  Matrix e = (w.S * omega * w.S.transpose() - omega) * omega.transpose();
  if (e.cwiseAbs().maxCoeff() > tau_symp) {
    w.S = (Matrix::Identity(2 * n, 2 * n) - 0.5 * e) * w.S;
  }
  return w;
}

bool positive_definite(const Matrix& m) {
  Eigen::LLT<Matrix> llt(m);
  return llt.info() == Eigen::Success;
}

// Moduli of eig(i Omega V) paired off; works for any symmetric V.
Vector paired_moduli(const Matrix& v) {
  const int n = static_cast<int>(v.rows() / 2);
  Eigen::EigenSolver<Matrix> es(SymplecticForm(n).matrix() * v, false);
  std::vector<double> mods(2 * n);
  for (int i = 0; i < 2 * n; ++i) mods[i] = std::abs(es.eigenvalues()[i]);
  std::sort(mods.begin(), mods.end());
  Vector nu(n);
  for (int j = 0; j < n; ++j) nu[j] = 0.5 * (mods[2 * j] + mods[2 * j + 1]);
  return nu;
}

}  // namespace

SymplecticForm::SymplecticForm(int modes) : modes_(modes) {
  if (modes < 1) throw InvalidDimension("mode count must be at least 1");
  m_ = Matrix::Zero(2 * modes, 2 * modes);
  m_.topRightCorner(modes, modes).setIdentity();
  m_.bottomLeftCorner(modes, modes) = -Matrix::Identity(modes, modes);
}

SymplecticForm symplectic_form(int modes) { return SymplecticForm(modes); }

ValidityReport validate(const Matrix& v) {
  check_shape(v);
  ValidityReport r;
  r.modes = static_cast<int>(v.rows() / 2);
  r.asymmetry = asymmetry_of(v);
  check_symmetric(v, "covariance matrix");
  r.symmetric = true;
  Matrix sym = 0.5 * (v + v.transpose());
  if (positive_definite(sym)) {
    r.nu = diagonalize(sym).nu;
    Eigen::Index at = 0;
    r.min_symplectic_eigenvalue = r.nu.minCoeff(&at);
    r.min_mode = static_cast<int>(at);
  } else {
    Vector mods = paired_moduli(sym);
    r.min_symplectic_eigenvalue = mods.minCoeff();
    r.valid = false;
    r.faithful = false;
    return r;
  }
  r.valid = r.min_symplectic_eigenvalue >= 0.5 - tau_faith;
  r.faithful = r.min_symplectic_eigenvalue > 0.5 + tau_faith;
  return r;
}

CovarianceMatrix::CovarianceMatrix(const Matrix& entries) {
  ValidityReport r = validate(entries);
  if (!r.valid) {
    throw InvalidInput("covariance matrix violates the uncertainty bound "
                       "(min symplectic eigenvalue " +
                       std::to_string(r.min_symplectic_eigenvalue) + ")");
  }
  modes_ = r.modes;
  m_ = 0.5 * (entries + entries.transpose());
  min_nu_ = r.min_symplectic_eigenvalue;
}

bool CovarianceMatrix::faithful() const { return min_nu_ > 0.5 + tau_faith; }

TangentMatrix::TangentMatrix(const Matrix& entries) {
  check_shape(entries);
  check_symmetric(entries, "tangent matrix");
  m_ = 0.5 * (entries + entries.transpose());
}

TangentMatrix TangentMatrix::zero(int modes) {
  if (modes < 1) throw InvalidDimension("mode count must be at least 1");
  TangentMatrix t;
  t.m_ = Matrix::Zero(2 * modes, 2 * modes);
  return t;
}

TangentMatrix TangentMatrix::symmetrized(const Matrix& entries) {
  check_shape(entries);
  TangentMatrix t;
  t.m_ = 0.5 * (entries + entries.transpose());
  return t;
}

TangentMatrix& TangentMatrix::operator+=(const TangentMatrix& o) {
  m_ += o.m_;
  return *this;
}

TangentMatrix& TangentMatrix::operator-=(const TangentMatrix& o) {
  m_ -= o.m_;
  return *this;
}

TangentMatrix& TangentMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

TangentMatrix operator+(TangentMatrix a, const TangentMatrix& b) { return a += b; }
TangentMatrix operator-(TangentMatrix a, const TangentMatrix& b) { return a -= b; }
TangentMatrix operator*(double s, TangentMatrix a) { return a *= s; }
TangentMatrix operator*(TangentMatrix a, double s) { return a *= s; }

double hs_inner(const TangentMatrix& a, const TangentMatrix& b) {
  return a.matrix().cwiseProduct(b.matrix()).sum();
}

WilliamsonDecomposition williamson(const CovarianceMatrix& v) {
  WilliamsonDecomposition w = diagonalize(v.matrix());
  for (int j = 0; j < w.nu.size(); ++j) {
    if (w.nu[j] <= 0.5 + tau_faith) {
      throw BoundaryDegeneracy("mode " + std::to_string(j) +
                                   " is at the pure-state boundary (nu = " +
                                   std::to_string(w.nu[j]) + ")",
                               j, w.nu[j]);
    }
  }
  return w;
}

Vector symplectic_eigenvalues(const CovarianceMatrix& v) {
  return diagonalize(v.matrix()).nu;
}

Matrix symplectic_inverse(const Matrix& s) {
  const Matrix omega = SymplecticForm(static_cast<int>(s.rows() / 2)).matrix();
  return -omega * s.transpose() * omega;
}

double arccoth2(double x) { return 0.5 * std::log1p(2.0 / (2.0 * x - 1.0)); }

Matrix hamiltonian_matrix(const CovarianceMatrix& v) {
  WilliamsonDecomposition w = williamson(v);
  const int n = v.modes();
  Vector e(2 * n);
  for (int j = 0; j < n; ++j) e[j] = e[n + j] = 2.0 * arccoth2(w.nu[j]);
  Matrix sinv = symplectic_inverse(w.S);
  Matrix h = sinv.transpose() * e.asDiagonal() * sinv;
  return 0.5 * (h + h.transpose());
}

CovarianceMatrix covariance_from_hamiltonian(const Matrix& h) {
  check_shape(h);
  check_symmetric(h, "Hamiltonian matrix");
  Matrix sym = 0.5 * (h + h.transpose());
  if (!positive_definite(sym)) {
    throw InvalidInput("Hamiltonian matrix is not positive definite");
  }
  WilliamsonDecomposition w = diagonalize(sym);
  const int n = static_cast<int>(sym.rows() / 2);
  Vector d(2 * n);
  for (int j = 0; j < n; ++j) {
    // coth(e/2)/2 = 1/2 + 1/expm1(e)
    d[j] = d[n + j] = 0.5 + 1.0 / std::expm1(w.nu[j]);
  }
  Matrix sinv = symplectic_inverse(w.S);
  Matrix v = sinv.transpose() * d.asDiagonal() * sinv;
  return CovarianceMatrix(0.5 * (v + v.transpose()));
}

double von_neumann_entropy(const Vector& nu, EntropyBase base) {
  double s = 0.0;
  for (double x : nu) {
    double lo = x - 0.5;
    double hi = x + 0.5;
    s += hi * std::log(hi);
    if (lo > 0.0) s -= lo * std::log(lo);
  }
  if (base == EntropyBase::Bits) s /= std::numbers::ln2;
  return s;
}

double von_neumann_entropy(const CovarianceMatrix& v, EntropyBase base) {
  return von_neumann_entropy(symplectic_eigenvalues(v), base);
}

double relative_entropy(const CovarianceMatrix& v, const CovarianceMatrix& v2) {
  if (v.modes() != v2.modes()) {
    throw InvalidDimension("relative entropy needs equal mode counts (" +
                       std::to_string(v.modes()) + " vs " +
                       std::to_string(v2.modes()) + ")");
  }
  // -S(V) - Tr rho ln rho2 with ln Z2 eliminated through S(V2 || V2) = 0; the
  // trace only sees V - V2, so nearby states lose no digits to cancellation.
  Matrix h2 = hamiltonian_matrix(v2);
  double cross = 0.5 * h2.cwiseProduct(v.matrix() - v2.matrix()).sum();
  return von_neumann_entropy(williamson(v2).nu) - von_neumann_entropy(williamson(v).nu) + cross;
}

double Random::uniform() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Random::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Random::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  while (u1 == 0.0) u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

Matrix random_symmetric(int dim, Random& rng, double scale) {
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) a(i, j) = a(j, i) = scale * rng.normal();
  }
  return a;
}

Matrix random_symplectic(int modes, Random& rng, double scale) {
  Matrix a = random_symmetric(2 * modes, rng, scale);
  Matrix x = SymplecticForm(modes).matrix() * a;
  return x.exp();
}

CovarianceMatrix random_covariance(int modes, Random& rng, NuRange range) {
  if (modes < 1) throw InvalidDimension("mode count must be at least 1");
  if (!(range.lo > 0.5) || !(range.hi >= range.lo) || !std::isfinite(range.hi)) {
    throw InvalidInput("symplectic eigenvalue range must be a nonempty "
                       "subset of (1/2, inf)");
  }
  Vector d(2 * modes);
  for (int j = 0; j < modes; ++j) d[j] = d[modes + j] = rng.uniform(range.lo, range.hi);
  Matrix s = random_symplectic(modes, rng, 0.3 / std::sqrt(static_cast<double>(modes)));
  Matrix v = s * d.asDiagonal() * s.transpose();
  return CovarianceMatrix(0.5 * (v + v.transpose()));
}

CovarianceMatrix random_covariance(int modes, std::uint64_t seed, NuRange range) {
  Random rng(seed);
  return random_covariance(modes, rng, range);
}

namespace {

Eigen::PermutationMatrix<Eigen::Dynamic> interleave_perm(int n) {
  // block index b -> interleaved index
  Eigen::VectorXi idx(2 * n);
  for (int j = 0; j < n; ++j) {
    idx[j] = 2 * j;
    idx[n + j] = 2 * j + 1;
  }
  return Eigen::PermutationMatrix<Eigen::Dynamic>(idx);
}

}  // namespace

Matrix interleaved_to_block(const Matrix& m) {
  check_shape(m);
  auto p = interleave_perm(static_cast<int>(m.rows() / 2));
  return p.transpose() * m * p;
}

Matrix block_to_interleaved(const Matrix& m) {
  check_shape(m);
  auto p = interleave_perm(static_cast<int>(m.rows() / 2));
  return p * m * p.transpose();
}

}  // namespace kmb
