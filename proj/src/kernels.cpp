#include "kmb/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "kmb/errors.hpp"

namespace kmb {

namespace {

constexpr int series_terms = 26;
constexpr double series_spread = 0.1;

// log1p(u)/u
double log1p_ratio(double u) {
  if (std::abs(u) < 1e-4) {
    return 1.0 - u / 2.0 + u * u / 3.0 - u * u * u / 4.0;
  }
  return std::log1p(u) / u;
}

// First divided difference f[a,b] = (f(a) - f(b)) / (a - b).
double dd1(double a, double b) {
  double p = (2.0 * a - 1.0) * (2.0 * b + 1.0);
  double u = 4.0 * (b - a) / p;
  if (std::abs(u) < 0.5) return -2.0 * log1p_ratio(u) / p;
  double num = std::log(2.0 * a + 1.0) - std::log(2.0 * a - 1.0) -
               std::log(2.0 * b + 1.0) + std::log(2.0 * b - 1.0);
  return 0.5 * num / (a - b);
}

// Complete homogeneous symmetric polynomials h_0..h_m in three variables.
std::array<double, series_terms + 1> complete_homogeneous(double x, double y,
                                                          double z) {
  std::array<double, series_terms + 1> h1{}, h2{}, h3{};
  h1[0] = h2[0] = h3[0] = 1.0;
  for (int m = 1; m <= series_terms; ++m) {
    h1[m] = h1[m - 1] * x;
    h2[m] = h1[m] + y * h2[m - 1];
    h3[m] = h2[m] + z * h3[m - 1];
  }
  return h3;
}

// f[x0,x1,x2] by Taylor expansion about the mean of the nodes.
double dd2_series(double x0, double x1, double x2) {
  double c = (x0 + x1 + x2) / 3.0;
  double t = 2.0 / (2.0 * c - 1.0);
  double s = 2.0 / (2.0 * c + 1.0);
  double diff = 4.0 / ((2.0 * c - 1.0) * (2.0 * c + 1.0));  // t - s
  double r = s / t;
  auto h = complete_homogeneous(t * (x0 - c), t * (x1 - c), t * (x2 - c));
  double geo = 1.0;  // sum_{i<n} r^i
  double rp = 1.0;
  std::array<double, series_terms + 1> terms{};
  for (int m = 0; m <= series_terms; ++m) {
    int n = m + 2;
    if (m == 0) {
      rp = r;
      geo = 1.0 + r;
    } else {
      rp *= r;
      geo += rp;
    }
    double sign = (m % 2 == 0) ? 1.0 : -1.0;
    terms[m] = 0.5 * sign / n * geo * h[m];
  }
  double sum = 0.0;
  for (int m = series_terms; m >= 0; --m) sum += terms[m];
  return diff * t * sum;
}

double dd2(double a, double b, double c) {
  std::array<double, 3> x{a, b, c};
  std::sort(x.begin(), x.end());
  double spread = x[2] - x[0];
  if (spread <= series_spread * (x[0] - 0.5)) return dd2_series(x[0], x[1], x[2]);
  return (dd1(x[0], x[1]) - dd1(x[1], x[2])) / (x[0] - x[2]);
}

}  // namespace

double kernel_f(double a, double b) {
  if (a > b) std::swap(a, b);
  return -dd1(a, b);
}

double kernel_g(double a, double b) {
  if (a > b) std::swap(a, b);
  return (arccoth2(a) + arccoth2(b)) / (a + b);
}

double kernel_A(double a, double b, double c) { return dd2(a, b, c); }

double kernel_B(double i, double j, double k) {
  if (i > k) std::swap(i, k);
  double sjk = j + k;
  double sij = i + j;
  return kernel_f(i, k) / sjk + (arccoth2(i) + arccoth2(j)) / (sij * sjk);
}

double f_taylor_coefficient(int n, double x) {
  double t = 2.0 / (2.0 * x - 1.0);
  double s = 2.0 / (2.0 * x + 1.0);
  if (n == 0) return 0.5 * std::log1p(t);
  double sign = (n % 2 == 1) ? 1.0 : -1.0;
  return 0.5 * sign / n * (std::pow(s, n) - std::pow(t, n));
}

void check_spectrum(const Vector& nu, double margin) {
  for (int j = 0; j < nu.size(); ++j) {
    if (!(nu[j] > 0.5 + margin)) {
      throw BoundaryDegeneracy("mode " + std::to_string(j) +
                                   " is too close to the pure-state boundary "
                                   "(nu = " + std::to_string(nu[j]) + ")",
                               j, nu[j]);
    }
  }
}

SpectralKernels::SpectralKernels(const Vector& nu)
    : n_(static_cast<int>(nu.size())), nu_(nu) {
  if (n_ < 1) throw InvalidDimension("empty symplectic spectrum");
  check_spectrum(nu_, tau_faith);
  f_.resize(n_, n_);
  g_.resize(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      f_(i, j) = f_(j, i) = kernel_f(nu_[i], nu_[j]);
      g_(i, j) = g_(j, i) = kernel_g(nu_[i], nu_[j]);
    }
  }
  const std::size_t total = static_cast<std::size_t>(n_) * n_ * n_;
  a_.assign(total, 0.0);
  b_.assign(total, 0.0);
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      for (int k = j; k < n_; ++k) {
        double v = kernel_A(nu_[i], nu_[j], nu_[k]);
        for (auto [p, q, r] : {std::array{i, j, k}, std::array{i, k, j},
                               std::array{j, i, k}, std::array{j, k, i},
                               std::array{k, i, j}, std::array{k, j, i}}) {
          a_[index(p, q, r)] = v;
        }
      }
    }
  }
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      for (int k = i; k < n_; ++k) {
        double v = kernel_B(nu_[i], nu_[j], nu_[k]);
        b_[index(i, j, k)] = v;
        b_[index(k, j, i)] = v;
      }
    }
  }
}

SpectralKernels kernels(const Vector& nu) { return SpectralKernels(nu); }

}  // namespace kmb
