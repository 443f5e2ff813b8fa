#include "proxsmooth/mimo.hpp"

#include <cmath>
#include <complex>
#include <memory>

#include "proxsmooth/mathkit.hpp"
#include "proxsmooth/rng.hpp"

namespace proxsmooth::mimo {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

int int_log2(int m) {
  int bits = 0;
  while ((1 << bits) < m) ++bits;
  return bits;
}

bool is_power_of_two(int m) { return m >= 2 && (m & (m - 1)) == 0; }

int gray_encode(int m) { return m ^ (m >> 1); }

double operator_norm(const Mat& H) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(H.transpose() * H);
  return std::sqrt(std::max(eig.eigenvalues().maxCoeff(), 0.0));
}

/// Lifted constellation point m: [cos(2 pi m / M) 1; sin(2 pi m / M) 1].
Vec lifted_constellation_point(int m, int M, int U) {
  const double angle = kTwoPi * m / M;
  Vec s(2 * U);
  s.head(U).setConstant(std::cos(angle));
  s.tail(U).setConstant(std::sin(angle));
  return s;
}

}  // namespace

int MimoScene::bits_per_symbol() const { return int_log2(M); }

MimoScene generate_scene(int U, int B, int M, double snr_db, std::uint64_t seed) {
  require(U >= 1 && B >= 1, "generate_scene: U, B must be >= 1");
  require(is_power_of_two(M), "generate_scene: M must be a power of two");
  require(!std::isnan(snr_db), "generate_scene: snr_db must not be NaN");

  MimoScene scene;
  scene.U = U;
  scene.B = B;
  scene.M = M;
  scene.seed = seed;
  scene.sigma2 = std::isinf(snr_db) ? 0.0 : std::pow(10.0, -snr_db / 10.0);

  const int k = int_log2(M);
  CounterRng symbol_rng(seed, streams::kMimoSymbols);
  scene.true_symbols.resize(U);
  scene.true_bits.resize(static_cast<std::size_t>(U) * k);
  Eigen::VectorXcd s_star(U);
  for (int u = 0; u < U; ++u) {
    const int m = static_cast<int>(symbol_rng.next_below(static_cast<std::uint64_t>(M)));
    scene.true_symbols[u] = m;
    const int code = gray_encode(m);
    for (int b = 0; b < k; ++b) {
      scene.true_bits[static_cast<std::size_t>(u) * k + b] =
          static_cast<std::uint8_t>((code >> (k - 1 - b)) & 1);
    }
    s_star[u] = std::polar(1.0, kTwoPi * m / M);
  }

  // H = sqrt(R) G with exponential receive correlation.
  Mat R(B, B);
  for (int j = 0; j < B; ++j)
    for (int l = 0; l < B; ++l) R(j, l) = std::pow(0.5, std::abs(j - l));
  const Mat sqrtR = symmetric_sqrt(R);

  CounterRng channel_rng(seed, streams::kMimoChannel);
  const double g_dev = std::sqrt(0.5 / B);
  Eigen::MatrixXcd G(B, U);
  for (int j = 0; j < B; ++j)
    for (int u = 0; u < U; ++u)
      G(j, u) = std::complex<double>(g_dev * channel_rng.next_gaussian(),
                                     g_dev * channel_rng.next_gaussian());
  const Eigen::MatrixXcd H = sqrtR * G;

  CounterRng noise_rng(seed, streams::kMimoNoise);
  const double e_dev = std::sqrt(scene.sigma2 / 2.0);
  Eigen::VectorXcd e(B);
  for (int j = 0; j < B; ++j)
    e[j] = std::complex<double>(e_dev * noise_rng.next_gaussian(),
                                e_dev * noise_rng.next_gaussian());

  const Eigen::VectorXcd y = H * s_star + e;

  scene.H_real.resize(2 * B, 2 * U);
  scene.H_real.topLeftCorner(B, U) = H.real();
  scene.H_real.topRightCorner(B, U) = -H.imag();
  scene.H_real.bottomLeftCorner(B, U) = H.imag();
  scene.H_real.bottomRightCorner(B, U) = H.real();

  scene.y_real.resize(2 * B);
  scene.y_real.head(B) = y.real();
  scene.y_real.tail(B) = y.imag();

  scene.s_true_real.resize(2 * U);
  scene.s_true_real.head(U) = s_star.real();
  scene.s_true_real.tail(U) = s_star.imag();
  return scene;
}

Vec polar_map(const Vec& r, const Vec& theta) {
  require(r.size() == theta.size(), "polar_map: r/theta size mismatch");
  const Eigen::Index U = r.size();
  Vec s(2 * U);
  for (Eigen::Index u = 0; u < U; ++u) {
    s[u] = r[u] * std::cos(theta[u]);
    s[U + u] = r[u] * std::sin(theta[u]);
  }
  return s;
}

BarrierValue barrier_d(double t, double r_lb) {
  require(r_lb > 0.0 && r_lb <= 1.0, "barrier_d: r_lb must lie in (0,1]");
  if (t >= r_lb) return {1.0 / t, -1.0 / (t * t)};
  return {-t / r_lb + 1.0 + 1.0 / r_lb, -1.0 / r_lb};
}

CompositeProblem build_proposed_model(const MimoScene& scene, double lambda_r, double lambda_theta,
                                      double r_lb) {
  require(lambda_r >= 0.0 && lambda_theta >= 0.0, "build_proposed_model: weights must be >= 0");
  require(r_lb > 0.0 && r_lb <= 1.0, "build_proposed_model: r_lb must lie in (0,1]");

  const int U = scene.U;
  const auto H = std::make_shared<const Mat>(scene.H_real);
  const auto y = std::make_shared<const Vec>(scene.y_real);
  const int M = scene.M;

  auto h_value = [H, y, U, lambda_r, r_lb](const Vec& x) {
    const Vec s = polar_map(x.head(U), x.tail(U));
    double barrier = 0.0;
    for (int u = 0; u < U; ++u) barrier += barrier_d(x[u], r_lb).value;
    return 0.5 * (*y - *H * s).squaredNorm() + lambda_r * barrier;
  };
  auto h_gradient = [H, y, U, lambda_r, r_lb](const Vec& x) {
    const Vec s = polar_map(x.head(U), x.tail(U));
    const Vec gs = H->transpose() * (*H * s - *y);
    Vec grad(2 * U);
    for (int u = 0; u < U; ++u) {
      const double c = std::cos(x[U + u]);
      const double sn = std::sin(x[U + u]);
      grad[u] = c * gs[u] + sn * gs[U + u] + lambda_r * barrier_d(x[u], r_lb).deriv;
      grad[U + u] = x[u] * (-sn * gs[u] + c * gs[U + u]);
    }
    return grad;
  };

  // Crude but valid gradient-Lipschitz bound over the feasible box
  // (||J|| <= 1 for r <= 1, second derivative of the lifting <= 3 per
  // antenna, barrier curvature <= 2 / r_lb^3).
  const double h_norm = operator_norm(*H);
  const double residual_bound = h_norm * std::sqrt(static_cast<double>(U)) + y->norm();
  const double lip_h =
      h_norm * h_norm + 3.0 * h_norm * residual_bound + 2.0 * lambda_r / (r_lb * r_lb * r_lb);

  auto S_value = [U, M](const Vec& x) {
    Vec z(U);
    for (int u = 0; u < U; ++u) z[u] = std::sin(0.5 * M * x[U + u]);
    return z;
  };
  auto S_adjoint = [U, M](const Vec& x, const Vec& w) {
    Vec out = Vec::Zero(2 * U);
    for (int u = 0; u < U; ++u) out[U + u] = 0.5 * M * std::cos(0.5 * M * x[U + u]) * w[u];
    return out;
  };

  Vec lo(2 * U), hi(2 * U);
  lo.head(U).setConstant(r_lb);
  lo.tail(U).setConstant(-kInf);
  hi.head(U).setConstant(1.0);
  hi.tail(U).setConstant(kInf);

  CompositeProblem p;
  p.h = std::make_shared<CallbackSmoothTerm>(std::move(h_value), std::move(h_gradient), lip_h);
  p.g = std::make_shared<ScaledL1>(lambda_theta, U);
  p.S = std::make_shared<CallbackSmoothMap>(2 * U, U, std::move(S_value), std::move(S_adjoint));
  p.phi = indicator_box(std::move(lo), std::move(hi));
  p.dim_in = 2 * U;
  p.dim_out = U;

  const double map_deriv_bound = 0.5 * M;
  const double map_deriv_lip = 0.25 * M * M;
  const double l_g = lambda_theta * std::sqrt(static_cast<double>(U));
  p.lipschitz_smoothed_grad = [lip_h, map_deriv_bound, map_deriv_lip, l_g](double mu) {
    return lip_h + map_deriv_lip * l_g + map_deriv_bound * map_deriv_bound / mu;
  };
  return p;
}

CompositeProblem build_modulus_model(const MimoScene& scene) {
  return build_proposed_model(scene, 0.0, 0.0, 1.0);
}

CompositeProblem build_soav_model(const MimoScene& scene, double lambda) {
  require(lambda >= 0.0, "build_soav_model: lambda must be >= 0");
  const int U = scene.U;
  const int M = scene.M;
  const auto H = std::make_shared<const Mat>(scene.H_real);
  const auto y = std::make_shared<const Vec>(scene.y_real);

  auto h_value = [H, y](const Vec& s) { return 0.5 * (*y - *H * s).squaredNorm(); };
  auto h_gradient = [H, y](const Vec& s) { return H->transpose() * (*H * s - *y); };
  const double h_norm = operator_norm(*H);
  const double lip_h = h_norm * h_norm;

  auto shifts = std::make_shared<std::vector<Vec>>();
  for (int m = 0; m < M; ++m) shifts->push_back(lifted_constellation_point(m, M, U));

  auto S_value = [shifts, U, M](const Vec& s) {
    Vec z(2 * U * M);
    for (int m = 0; m < M; ++m) z.segment(2 * U * m, 2 * U) = s - (*shifts)[m];
    return z;
  };
  auto S_adjoint = [U, M](const Vec&, const Vec& w) {
    Vec out = Vec::Zero(2 * U);
    for (int m = 0; m < M; ++m) out += w.segment(2 * U * m, 2 * U);
    return out;
  };

  // Conv(constellation) factors per antenna into a regular M-gon on the
  // (Re, Im) pair.
  auto project = [U, M](const Vec& s) {
    Vec out(2 * U);
    for (int u = 0; u < U; ++u) {
      const Eigen::Vector2d q = project_regular_polygon(M, {s[u], s[U + u]});
      out[u] = q.x();
      out[U + u] = q.y();
    }
    return out;
  };
  auto member = [U, M](const Vec& s) {
    for (int u = 0; u < U; ++u) {
      const Eigen::Vector2d pair(s[u], s[U + u]);
      if ((project_regular_polygon(M, pair) - pair).norm() > 1e-9) return false;
    }
    return true;
  };

  CompositeProblem p;
  p.h = std::make_shared<CallbackSmoothTerm>(std::move(h_value), std::move(h_gradient), lip_h);
  p.g = std::make_shared<ScaledL1>(lambda / M, 2 * U * M);
  p.S = std::make_shared<CallbackSmoothMap>(2 * U, 2 * U * M, std::move(S_value), std::move(S_adjoint));
  p.phi = std::make_shared<IndicatorSet>(std::move(project), std::move(member));
  p.dim_in = 2 * U;
  p.dim_out = 2 * U * M;

  p.lipschitz_smoothed_grad = [lip_h, M](double mu) { return lip_h + M / mu; };
  return p;
}

Vec lmmse(const MimoScene& scene) {
  const Mat& H = scene.H_real;
  const Vec rhs = H.transpose() * scene.y_real;
  Mat A = H.transpose() * H;
  A.diagonal().array() += scene.sigma2;

  Eigen::LDLT<Mat> ldlt(A);
  require(ldlt.info() == Eigen::Success, "lmmse: symmetric solve failed");
  const Vec s = ldlt.solve(rhs);
  if ((A * s - rhs).norm() > 1e-6 * (1.0 + rhs.norm())) {
    throw std::runtime_error("lmmse: singular normal equations (sigma^2 = 0 and rank-deficient H)");
  }
  return s;
}

BerResult demodulate_ber(const MimoScene& scene, const Vec& s_est) {
  require(s_est.size() == 2 * scene.U, "demodulate_ber: estimate has wrong size");
  const int U = scene.U;
  const int M = scene.M;
  const int k = scene.bits_per_symbol();

  BerResult result;
  int bit_errors = 0;
  for (int u = 0; u < U; ++u) {
    const double angle = std::atan2(s_est[U + u], s_est[u]);
    int m = static_cast<int>(std::llround(angle * M / kTwoPi)) % M;
    if (m < 0) m += M;
    if (m != scene.true_symbols[u]) ++result.symbol_errors;
    const int code = gray_encode(m);
    for (int b = 0; b < k; ++b) {
      const int bit = (code >> (k - 1 - b)) & 1;
      if (bit != scene.true_bits[static_cast<std::size_t>(u) * k + b]) ++bit_errors;
    }
  }
  result.ber = static_cast<double>(bit_errors) / (static_cast<double>(U) * k);
  return result;
}

Vec polar_init_from_lmmse(const MimoScene& scene, double r_lb) {
  const Vec s = lmmse(scene);
  const int U = scene.U;
  Vec x(2 * U);
  for (int u = 0; u < U; ++u) {
    x[u] = std::clamp(std::hypot(s[u], s[U + u]), r_lb, 1.0);
    x[U + u] = std::atan2(s[U + u], s[u]);
  }
  return x;
}

Vec hull_init_from_lmmse(const MimoScene& scene) {
  const Vec s = lmmse(scene);
  const int U = scene.U;
  Vec out(2 * U);
  for (int u = 0; u < U; ++u) {
    const Eigen::Vector2d q = project_regular_polygon(scene.M, {s[u], s[U + u]});
    out[u] = q.x();
    out[U + u] = q.y();
  }
  return out;
}

double subgradient_eta(const MimoScene& scene) {
  const double h_norm = operator_norm(scene.H_real);
  const double sqrt_u = std::sqrt(static_cast<double>(scene.U));
  return 4.0 * ((2.0 + sqrt_u) * h_norm * h_norm +
                (scene.H_real.transpose() * scene.y_real).norm()) +
         sqrt_u * scene.M * scene.M / 4.0;
}

}  // namespace proxsmooth::mimo
