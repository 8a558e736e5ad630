#include "kmb/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "kmb/errors.hpp"

namespace kmb {

namespace {

struct State {
  Matrix v;
  Matrix p;
};

// Returns the acceleration at (v, p), or nothing if v has left the manifold.
std::optional<Matrix> acceleration(const Matrix& v, const Matrix& p) {
  try {
    CovarianceMatrix point(0.5 * (v + v.transpose()));
    DeltaKernel k(point);
    TangentMatrix vel = TangentMatrix::symmetrized(p);
    return (0.5 * k.delta_inverse(k.ddelta(vel, vel))).matrix();
  } catch (const InvalidInput&) {
    return std::nullopt;
  } catch (const BoundaryDegeneracy&) {
    return std::nullopt;
  }
}

[[noreturn]] void exit_at(double t) {
  throw BoundaryExit("geodesic left the faithful region near t = " + std::to_string(t), t);
}

}  // namespace

GeodesicPath geodesic_shoot(const CovarianceMatrix& v0, const TangentMatrix& a0, int steps) {
  if (steps < min_geodesic_steps) {
    throw InvalidInput("geodesic integration needs at least " +
                       std::to_string(min_geodesic_steps) + " steps");
  }
  if (a0.modes() != v0.modes()) throw InvalidDimension("velocity and point mode counts differ");
  if (!v0.faithful()) exit_at(0.0);

  const double h = 1.0 / steps;
  GeodesicPath path;
  path.times.reserve(steps + 1);
  path.times.push_back(0.0);
  path.points.push_back(v0);
  path.velocities.push_back(a0);

  State s{v0.matrix(), a0.matrix()};
  for (int i = 0; i < steps; ++i) {
    double t = i * h;
    auto k1a = acceleration(s.v, s.p);
    if (!k1a) exit_at(t);
    Matrix k1v = s.p;

    Matrix v2 = s.v + 0.5 * h * k1v, p2 = s.p + 0.5 * h * *k1a;
    auto k2a = acceleration(v2, p2);
    if (!k2a) exit_at(t + 0.5 * h);
    Matrix k2v = p2;

    Matrix v3 = s.v + 0.5 * h * k2v, p3 = s.p + 0.5 * h * *k2a;
    auto k3a = acceleration(v3, p3);
    if (!k3a) exit_at(t + 0.5 * h);
    Matrix k3v = p3;

    Matrix v4 = s.v + h * k3v, p4 = s.p + h * *k3a;
    auto k4a = acceleration(v4, p4);
    if (!k4a) exit_at(t + h);
    Matrix k4v = p4;

    s.v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    s.p += h / 6.0 * (*k1a + 2.0 * *k2a + 2.0 * *k3a + *k4a);
    s.v = 0.5 * (s.v + s.v.transpose()).eval();
    s.p = 0.5 * (s.p + s.p.transpose()).eval();

    double tn = (i + 1 == steps) ? 1.0 : (i + 1) * h;
    std::optional<CovarianceMatrix> next;
    try {
      next.emplace(s.v);
    } catch (const InvalidInput&) {
      exit_at(tn);
    }
    if (next->min_symplectic_eigenvalue() < 0.5 + metric_boundary_margin) exit_at(tn);
    path.times.push_back(tn);
    path.points.push_back(*next);
    path.velocities.push_back(TangentMatrix::symmetrized(s.p));
  }
  return path;
}

std::vector<double> path_speeds(const GeodesicPath& path) {
  std::vector<double> out;
  out.reserve(path.points.size());
  for (std::size_t i = 0; i < path.points.size(); ++i) {
    const TangentMatrix& p = path.velocities[i];
    if (p.matrix().isZero(0.0)) {
      out.push_back(0.0);
      continue;
    }
    DeltaKernel k(path.points[i]);
    out.push_back(std::sqrt(std::max(0.0, k.metric(p, p))));
  }
  return out;
}

double speed_drift(const GeodesicPath& path) {
  std::vector<double> s = path_speeds(path);
  if (s.empty() || s.front() == 0.0) return 0.0;
  double g0 = s.front() * s.front();
  double worst = 0.0;
  for (double x : s) worst = std::max(worst, std::abs(x * x - g0) / g0);
  return worst;
}

double path_length(const GeodesicPath& path) {
  std::vector<double> s = path_speeds(path);
  const std::size_t n = s.size();
  if (n < 2) return 0.0;
  const std::size_t intervals = n - 1;
  bool uniform = true;
  double h = path.times[1] - path.times[0];
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(path.times[i] - path.times[i - 1] - h) > 1e-12) uniform = false;
  }
  if (uniform && intervals % 2 == 0) {
    double sum = s.front() + s.back();
    for (std::size_t i = 1; i < intervals; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * s[i];
    return sum * h / 3.0;
  }
  double sum = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    sum += 0.5 * (s[i] + s[i - 1]) * (path.times[i] - path.times[i - 1]);
  }
  return sum;
}

namespace {

Vector pack(const Matrix& m) {
  const int d = static_cast<int>(m.rows());
  Vector x(d * (d + 1) / 2);
  int idx = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) x[idx++] = m(i, j);
  }
  return x;
}

Matrix unpack(const Vector& x, int d) {
  Matrix m(d, d);
  int idx = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) m(i, j) = m(j, i) = x[idx++];
  }
  return m;
}

struct Trial {
  bool ok = false;
  Vector residual;
  std::optional<GeodesicPath> path;
};

Trial attempt(const CovarianceMatrix& v0, const CovarianceMatrix& v1, const Vector& x,
              int steps) {
  Trial t;
  try {
    TangentMatrix a = TangentMatrix::symmetrized(unpack(x, static_cast<int>(v0.matrix().rows())));
    t.path.emplace(geodesic_shoot(v0, a, steps));
    t.residual = pack(t.path->points.back().matrix() - v1.matrix());
    t.ok = true;
  } catch (const BoundaryExit&) {
    t.ok = false;
  }
  return t;
}

double frob_of_packed(const Vector& r, int d) { return unpack(r, d).norm(); }

constexpr int max_jacobian_refreshes = 20;

}  // namespace

ShootingResult shoot_to(const CovarianceMatrix& v0, const CovarianceMatrix& v1,
                        ShootingControls controls) {
  if (v0.modes() != v1.modes()) throw InvalidDimension("endpoints have different mode counts");
  const int d = static_cast<int>(v0.matrix().rows());
  const double v1_norm = v1.matrix().norm();
  const double target = controls.tolerance * v1_norm;

  Vector x = pack(v1.matrix() - v0.matrix());
  Trial cur = attempt(v0, v1, x, controls.steps);
  double damping = 1.0;
  while (!cur.ok && damping > 1e-6) {
    damping *= 0.5;
    x *= 0.5;
    cur = attempt(v0, v1, x, controls.steps);
  }
  if (!cur.ok) throw NoConvergence("initial shooting guess leaves the manifold", INFINITY, 0);
  if (x.norm() == 0.0) {
    return ShootingResult{0.0, 0.0, 0, TangentMatrix::zero(v0.modes()), std::move(*cur.path)};
  }

  Matrix jac = Matrix::Identity(x.size(), x.size());
  double res = frob_of_packed(cur.residual, d);
  int it = 0;
  int refreshes = 0;
  bool fresh = false;
  while (res > target && it < controls.max_iterations) {
    ++it;
    Vector step = -jac.partialPivLu().solve(cur.residual);
    double alpha = 1.0;
    Trial next;
    double next_res = INFINITY;
    for (int tries = 0; tries < 30; ++tries) {
      next = attempt(v0, v1, x + alpha * step, controls.steps);
      if (next.ok) {
        next_res = frob_of_packed(next.residual, d);
        if (next_res < res) break;
      }
      alpha *= 0.5;
    }
    if (!next.ok || !(next_res < res)) {
      // Broyden model went stale: rebuild the Jacobian by forward differences
      if (fresh || refreshes >= max_jacobian_refreshes) {
        throw NoConvergence("shooting stalled with residual " + std::to_string(res / v1_norm),
                            res / v1_norm, it);
      }
      ++refreshes;
      fresh = true;
      double h = 1e-7 * std::max(x.norm(), v0.matrix().norm());
      bool built = true;
      for (int k = 0; k < x.size() && built; ++k) {
        Vector xk = x;
        xk[k] += h;
        Trial tk = attempt(v0, v1, xk, controls.steps);
        if (!tk.ok) {
          built = false;
          break;
        }
        jac.col(k) = (tk.residual - cur.residual) / h;
      }
      if (!built) throw NoConvergence("shooting Jacobian left the manifold", res / v1_norm, it);
      continue;
    }
    fresh = false;
    Vector dx = alpha * step;
    Vector df = next.residual - cur.residual;
    jac += (df - jac * dx) * dx.transpose() / dx.squaredNorm();
    x += dx;
    cur = std::move(next);
    res = next_res;
  }
  if (res > target) {
    throw NoConvergence("shooting did not converge in " + std::to_string(it) +
                            " iterations (residual " + std::to_string(res / v1_norm) + ")",
                        res / v1_norm, it);
  }
  TangentMatrix a0 = TangentMatrix::symmetrized(unpack(x, d));
  double length = path_length(*cur.path);
  return ShootingResult{length, res / v1_norm, it, a0, std::move(*cur.path)};
}

double geodesic_distance_estimate(const CovarianceMatrix& v0, const CovarianceMatrix& v1,
                                  ShootingControls controls) {
  return shoot_to(v0, v1, controls).length;
}

}  // namespace kmb
