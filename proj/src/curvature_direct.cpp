#include "kmb/curvature_direct.hpp"

#include <cmath>
#include <string>

#include "kmb/errors.hpp"
#include "kmb/parallel.hpp"

namespace kmb {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix unit(int n, int j, int k) {
  Matrix e = Matrix::Zero(n, n);
  e(j, k) = 1.0;
  return e;
}

double pairwise(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  if (n == 1) return x[0];
  std::size_t h = n / 2;
  return pairwise(x, h) + pairwise(x + h, n - h);
}

}  // namespace

OrthonormalBasis::OrthonormalBasis(int modes, std::vector<TangentMatrix> elements)
    : modes_(modes), elements_(std::move(elements)) {
  for (const auto& e : elements_) {
    if (e.modes() != modes_) throw InvalidDimension("basis element has wrong size");
  }
}

OrthonormalBasis orthonormal_basis(int modes) {
  if (modes < 1) throw InvalidDimension("mode count must be at least 1");
  const int n = modes;
  const double r = 1.0 / std::sqrt(2.0);
  Matrix a1(2, 2), a2(2, 2), a3(2, 2), a4(2, 2);
  a1 << 1, 0, 0, 0;
  a2 << 0, 0, 0, 1;
  a3 << 0, r, r, 0;
  a4 << 0, r, -r, 0;

  std::vector<TangentMatrix> out;
  out.reserve(static_cast<std::size_t>(2 * n * n + n));
  for (const Matrix* a : {&a1, &a2, &a3}) {
    for (int j = 0; j < n; ++j) out.emplace_back(kron(*a, unit(n, j, j)));
  }
  auto b = [&](int j, int k) { return Matrix(r * (unit(n, j, k) + unit(n, k, j))); };
  auto bt = [&](int j, int k) { return Matrix(r * (unit(n, j, k) - unit(n, k, j))); };
  for (const Matrix* a : {&a1, &a2}) {
    for (int j = 0; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) out.emplace_back(kron(*a, b(j, k)));
    }
  }
  for (double sign : {1.0, -1.0}) {
    for (int j = 0; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        out.emplace_back(Matrix(r * (kron(a3, b(j, k)) + sign * kron(a4, bt(j, k)))));
      }
    }
  }
  return OrthonormalBasis(n, std::move(out));
}

TangentMatrix riemann(const DeltaKernel& k, const TangentMatrix& a,
                      const TangentMatrix& b, const TangentMatrix& c) {
  TangentMatrix ba = k.delta_inverse(k.ddelta(b, k.delta_inverse(k.ddelta(a, c))));
  TangentMatrix ab = k.delta_inverse(k.ddelta(a, k.delta_inverse(k.ddelta(b, c))));
  return 0.25 * (ba - ab);
}

TangentMatrix riemann(const CovarianceMatrix& v, const TangentMatrix& a,
                      const TangentMatrix& b, const TangentMatrix& c) {
  return riemann(DeltaKernel(v), a, b, c);
}

double sectional_like_term(const DeltaKernel& k, const TangentMatrix& a,
                           const TangentMatrix& b) {
  return hs_inner(riemann(k, b, a, k.delta_inverse(a)), b);
}

double sectional_like_term(const CovarianceMatrix& v, const TangentMatrix& a,
                           const TangentMatrix& b) {
  return sectional_like_term(DeltaKernel(v), a, b);
}

double pairwise_sum(const std::vector<double>& x) { return pairwise(x.data(), x.size()); }

double scalar_curvature_direct(const DeltaKernel& k, const OrthonormalBasis& basis) {
  if (basis.modes() != k.modes()) throw InvalidDimension("basis and point mode counts differ");
  const std::size_t m = basis.size();
  std::vector<std::vector<double>> rows(m);
  parallel_for(m, [&](std::size_t t) {
    const TangentMatrix& a = basis[t];
    // K(A,B) = 1/4 <D^-1 dD(A) D^-1 dD(B) D^-1 A, B> - 1/4 <D^-1 dD(B) D^-1 dD(A) D^-1 A, B>
    TangentMatrix p = k.delta_inverse(a);
    TangentMatrix q = k.delta_inverse(k.ddelta(a, p));
    rows[t].reserve(m - 1);
    for (std::size_t s = 0; s < m; ++s) {
      if (s == t) continue;
      const TangentMatrix& b = basis[s];
      TangentMatrix first = k.delta_inverse(k.ddelta(a, k.delta_inverse(k.ddelta(b, p))));
      TangentMatrix second = k.delta_inverse(k.ddelta(b, q));
      rows[t].push_back(0.25 * (hs_inner(first, b) - hs_inner(second, b)));
    }
  });
  std::vector<double> terms;
  terms.reserve(m * (m - 1));
  for (const auto& r : rows) terms.insert(terms.end(), r.begin(), r.end());
  return pairwise_sum(terms);
}

double scalar_curvature_direct(const CovarianceMatrix& v) {
  if (v.modes() > max_direct_modes) {
    throw DimensionLimit("direct curvature summation supports at most " +
                         std::to_string(max_direct_modes) + " modes, got " +
                         std::to_string(v.modes()));
  }
  return scalar_curvature_direct(DeltaKernel(v), orthonormal_basis(v.modes()));
}

double ricci(const DeltaKernel& k, const OrthonormalBasis& basis,
             const TangentMatrix& a, const TangentMatrix& b) {
  std::vector<double> terms;
  terms.reserve(basis.size());
  for (const auto& x : basis) terms.push_back(hs_inner(riemann(k, x, a, b), x));
  return pairwise_sum(terms);
}

double ricci(const CovarianceMatrix& v, const TangentMatrix& a, const TangentMatrix& b) {
  return ricci(DeltaKernel(v), orthonormal_basis(v.modes()), a, b);
}

}  // namespace kmb
