// Test-only brute-force references: dense grid minimizers, finite
// differences, simplex enumeration. Everything here is independent of the
// library's prox/envelope computation paths so it can serve as an oracle
// for them.
#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/Dense>

namespace oracles {

using Vec = Eigen::VectorXd;

// Dense 1-D grid argmin with one refinement pass around the best cell.
inline double grid_argmin_1d(const std::function<double(double)>& f, double lo, double hi,
                             int n = 4000) {
  double best_x = lo, best_v = std::numeric_limits<double>::infinity();
  const double step = (hi - lo) / n;
  for (int i = 0; i <= n; ++i) {
    const double x = lo + i * step;
    const double v = f(x);
    if (v < best_v) {
      best_v = v;
      best_x = x;
    }
  }
  double fine_best = best_x;
  const double flo = best_x - step, fhi = best_x + step, fstep = 2.0 * step / n;
  for (int i = 0; i <= n; ++i) {
    const double x = flo + i * fstep;
    const double v = f(x);
    if (v < best_v) {
      best_v = v;
      fine_best = x;
    }
  }
  (void)fhi;
  return fine_best;
}

inline Eigen::Vector2d grid_argmin_2d(const std::function<double(double, double)>& f, double lo,
                                      double hi, int n = 400) {
  Eigen::Vector2d best(lo, lo);
  double best_v = std::numeric_limits<double>::infinity();
  double step = (hi - lo) / n;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const double x = lo + i * step, y = lo + j * step;
      const double v = f(x, y);
      if (v < best_v) {
        best_v = v;
        best = {x, y};
      }
    }
  }
  // Refine around the best coarse cell.
  const Eigen::Vector2d center = best;
  const double r = step;
  step = 2.0 * r / n;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const double x = center.x() - r + i * step, y = center.y() - r + j * step;
      const double v = f(x, y);
      if (v < best_v) {
        best_v = v;
        best = {x, y};
      }
    }
  }
  return best;
}

/// Grid oracle for prox: argmin_w J(w) + (w - z)^2 / (2 mu), searched on
/// [z - radius, z + radius].
inline double prox_oracle_1d(const std::function<double(double)>& J, double mu, double z,
                             double radius = 0.0) {
  if (radius <= 0.0) radius = 2.0 + std::abs(z);
  return grid_argmin_1d([&](double w) { return J(w) + (w - z) * (w - z) / (2.0 * mu); }, z - radius,
                        z + radius);
}

inline Eigen::Vector2d prox_oracle_2d(const std::function<double(double, double)>& J, double mu,
                                      const Eigen::Vector2d& z, double radius = 0.0) {
  if (radius <= 0.0) radius = 2.0 + z.lpNorm<Eigen::Infinity>();
  const double lo = z.minCoeff() - radius, hi = z.maxCoeff() + radius;
  return grid_argmin_2d(
      [&](double a, double b) {
        return J(a, b) + (Eigen::Vector2d(a, b) - z).squaredNorm() / (2.0 * mu);
      },
      lo, hi);
}

/// Envelope value through the 1-D grid (never through the library's prox).
inline double moreau_oracle_1d(const std::function<double(double)>& J, double mu, double z) {
  const double w = prox_oracle_1d(J, mu, z);
  return J(w) + (w - z) * (w - z) / (2.0 * mu);
}

/// Central finite difference of a scalar function, step 1e-6 (1 + ||x||).
inline Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x) {
  const double h = 1e-6 * (1.0 + x.norm());
  Vec grad(x.size());
  Vec probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double fp = f(probe);
    probe[i] = x[i] - h;
    const double fm = f(probe);
    probe[i] = x[i];
    grad[i] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

/// Directional central finite difference of a vector-valued map.
inline Vec fd_directional(const std::function<Vec(const Vec&)>& F, const Vec& x, const Vec& v) {
  const double h = 1e-6 * (1.0 + x.norm());
  return (F(x + h * v) - F(x - h * v)) / (2.0 * h);
}

/// Brute-force projection onto the unit simplex by fine grid enumeration
/// (m = 2 or 3 only).
inline Vec simplex_oracle(const Vec& v, int n = 2000) {
  const Eigen::Index m = v.size();
  Vec best = Vec::Zero(m);
  double best_d = std::numeric_limits<double>::infinity();
  if (m == 2) {
    for (int i = 0; i <= n; ++i) {
      const double p = static_cast<double>(i) / n;
      Vec cand(2);
      cand << p, 1.0 - p;
      const double d = (cand - v).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = cand;
      }
    }
    return best;
  }
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n - i; ++j) {
      Vec cand(3);
      cand << static_cast<double>(i) / n, static_cast<double>(j) / n,
          1.0 - static_cast<double>(i + j) / n;
      const double d = (cand - v).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = cand;
      }
    }
  }
  return best;
}

/// Best dispersion cost max_j(-w_j ||x - u_j||^2) over B(0,1) on an
/// (n+1) x (n+1) grid of [-1,1]^2.
inline double dispersion_grid_best(const Eigen::MatrixXd& points, const Vec& weights, int n = 400) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      Eigen::Vector2d x(-1.0 + 2.0 * i / n, -1.0 + 2.0 * j / n);
      if (x.norm() > 1.0) continue;
      double cost = -std::numeric_limits<double>::infinity();
      for (Eigen::Index p = 0; p < points.rows(); ++p) {
        cost = std::max(cost, -weights[p] * (x - points.row(p).transpose()).squaredNorm());
      }
      best = std::min(best, cost);
    }
  }
  return best;
}

/// Brute-force nearest point of the regular M-gon (vertices on the unit
/// circle): dense sample of boundary edges plus interior grid.
inline Eigen::Vector2d polygon_oracle(int M, const Eigen::Vector2d& z, int n = 2000) {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  Eigen::Vector2d best(std::cos(0.0), std::sin(0.0));
  double best_d = (best - z).squaredNorm();
  auto consider = [&](const Eigen::Vector2d& c) {
    const double d = (c - z).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  };
  for (int m = 0; m < M; ++m) {
    const Eigen::Vector2d a(std::cos(kTwoPi * m / M), std::sin(kTwoPi * m / M));
    const Eigen::Vector2d b(std::cos(kTwoPi * (m + 1) / M), std::sin(kTwoPi * (m + 1) / M));
    for (int i = 0; i <= n; ++i) consider(a + (static_cast<double>(i) / n) * (b - a));
  }
  const int g = 400;
  for (int i = 0; i <= g; ++i) {
    for (int j = 0; j <= g; ++j) {
      const Eigen::Vector2d c(-1.0 + 2.0 * i / g, -1.0 + 2.0 * j / g);
      bool inside = true;
      for (int m = 0; m < M && inside; ++m) {
        const Eigen::Vector2d normal(std::cos(kTwoPi * (m + 0.5) / M),
                                     std::sin(kTwoPi * (m + 0.5) / M));
        if (normal.dot(c) > std::cos(kTwoPi / (2.0 * M))) inside = false;
      }
      if (inside) consider(c);
    }
  }
  return best;
}

}  // namespace oracles
