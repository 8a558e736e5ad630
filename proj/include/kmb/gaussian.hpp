#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace kmb {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double tau_sym = 1e-10;  // relative to max |entry|
inline constexpr double tau_symp = 1e-9;
inline constexpr double tau_rec = 1e-9;
inline constexpr double tau_faith = 1e-9;

// Block ordering (q_1..q_N, p_1..p_N): Omega = [[0, I], [-I, 0]].
class SymplecticForm {
 public:
  explicit SymplecticForm(int modes);
  int modes() const { return modes_; }
  const Matrix& matrix() const { return m_; }
  operator const Matrix&() const { return m_; }

 private:
  int modes_;
  Matrix m_;
};

SymplecticForm symplectic_form(int modes);

// A valid covariance matrix: square, even, symmetric, V + i Omega / 2 >= 0.
// The stored matrix is exactly symmetric.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(const Matrix& entries);

  int modes() const { return modes_; }
  const Matrix& matrix() const { return m_; }
  double min_symplectic_eigenvalue() const { return min_nu_; }
  bool faithful() const;

 private:
  int modes_;
  Matrix m_;
  double min_nu_;
};

// Symmetric 2N x 2N matrix; a tangent vector to the state manifold.
class TangentMatrix {
 public:
  explicit TangentMatrix(const Matrix& entries);
  static TangentMatrix zero(int modes);
  // Symmetrizes without the tolerance check; for values computed in-library.
  static TangentMatrix symmetrized(const Matrix& entries);

  int modes() const { return static_cast<int>(m_.rows() / 2); }
  const Matrix& matrix() const { return m_; }

  TangentMatrix& operator+=(const TangentMatrix& o);
  TangentMatrix& operator-=(const TangentMatrix& o);
  TangentMatrix& operator*=(double s);

 private:
  TangentMatrix() = default;
  Matrix m_;
};

TangentMatrix operator+(TangentMatrix a, const TangentMatrix& b);
TangentMatrix operator-(TangentMatrix a, const TangentMatrix& b);
TangentMatrix operator*(double s, TangentMatrix a);
TangentMatrix operator*(TangentMatrix a, double s);

// Hilbert-Schmidt inner product Tr[A^T B].
double hs_inner(const TangentMatrix& a, const TangentMatrix& b);

struct ValidityReport {
  int modes = 0;
  bool symmetric = false;
  double asymmetry = 0.0;
  bool valid = false;
  bool faithful = false;
  double min_symplectic_eigenvalue = 0.0;
  int min_mode = 0;
  Vector nu;  // ascending; empty if V is not positive definite
};

ValidityReport validate(const Matrix& v);

struct WilliamsonDecomposition {
  Matrix S;
  Vector nu;  // ascending
};

WilliamsonDecomposition williamson(const CovarianceMatrix& v);
Vector symplectic_eigenvalues(const CovarianceMatrix& v);

// Inverse of a symplectic matrix, -Omega S^T Omega.
Matrix symplectic_inverse(const Matrix& s);

// arccoth(2x), stable near x = 1/2 and for large x.
double arccoth2(double x);

Matrix hamiltonian_matrix(const CovarianceMatrix& v);
CovarianceMatrix covariance_from_hamiltonian(const Matrix& h);

enum class EntropyBase { Nats, Bits };

double von_neumann_entropy(const Vector& nu, EntropyBase base = EntropyBase::Nats);
double von_neumann_entropy(const CovarianceMatrix& v,
                           EntropyBase base = EntropyBase::Nats);

// S(V || V2) in nats.
double relative_entropy(const CovarianceMatrix& v, const CovarianceMatrix& v2);

struct NuRange {
  double lo = 0.6;
  double hi = 5.0;
};

// Portable variates; identical streams on every platform for a given seed.
class Random {
 public:
  explicit Random(std::uint64_t seed) : eng_(seed) {}
  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  double normal();
  std::uint64_t bits() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

Matrix random_symmetric(int dim, Random& rng, double scale = 1.0);
// exp(Omega A) with A random symmetric of the given entry scale.
Matrix random_symplectic(int modes, Random& rng, double scale);
CovarianceMatrix random_covariance(int modes, std::uint64_t seed,
                                   NuRange range = {});
CovarianceMatrix random_covariance(int modes, Random& rng, NuRange range = {});

// (q1,p1,q2,p2,...) <-> (q1,q2,...,p1,p2,...)
Matrix interleaved_to_block(const Matrix& m);
Matrix block_to_interleaved(const Matrix& m);

}  // namespace kmb
