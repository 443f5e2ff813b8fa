#include "proxsmooth/mathkit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace proxsmooth {

Vec project_simplex(const Vec& v) {
  const Eigen::Index m = v.size();
  require(m >= 1, "project_simplex: empty input");

  std::vector<double> sorted(v.data(), v.data() + m);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());

  double running = 0.0;
  double tau = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    running += sorted[j];
    const double candidate = (running - 1.0) / static_cast<double>(j + 1);
    if (j + 1 == m || sorted[j + 1] <= candidate) {
      tau = candidate;
      break;
    }
  }

  Vec out(m);
  for (Eigen::Index i = 0; i < m; ++i) out[i] = std::max(v[i] - tau, 0.0);
  return out;
}

SubspaceProjector random_subspace_projector(int d, int d_V, CounterRng& rng) {
  require(d >= 1 && d_V >= 1 && d_V <= d, "random_subspace_projector: need 1 <= d_V <= d");

  for (int attempt = 0; attempt < 16; ++attempt) {
    Mat A(d, d_V);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d_V; ++j) A(i, j) = rng.next_gaussian();

    Eigen::HouseholderQR<Mat> qr(A);
    Mat R = qr.matrixQR().topRows(d_V).triangularView<Eigen::Upper>();
    bool rank_ok = true;
    for (int j = 0; j < d_V; ++j) {
      if (std::abs(R(j, j)) < 1e-12) rank_ok = false;
    }
    if (!rank_ok) continue;  // probability-zero event; redraw

    Mat Q = qr.householderQ() * Mat::Identity(d, d_V);
    // Fix the QR sign convention (diagonal of R nonnegative). P = Q Q^T is
    // sign-invariant, so this only pins down intermediate values.
    for (int j = 0; j < d_V; ++j) {
      if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
    }
    SubspaceProjector proj;
    proj.P = Q * Q.transpose();
    proj.rank = d_V;
    return proj;
  }
  throw std::runtime_error("random_subspace_projector: persistent rank deficiency");
}

SubspaceProjector random_subspace_projector(int d, int d_V, std::uint64_t seed) {
  CounterRng rng(seed, streams::kSubspaceProjector);
  return random_subspace_projector(d, d_V, rng);
}

Vec project_ball_subspace(const SubspaceProjector& proj, const Vec& z) {
  require(proj.P.cols() == z.size(), "project_ball_subspace: dimension mismatch");
  Vec w = proj.P * z;
  const double norm = w.norm();
  if (norm > 1.0) w /= norm;
  return w;
}

Mat symmetric_sqrt(const Mat& R) {
  require(R.rows() == R.cols(), "symmetric_sqrt: matrix must be square");
  const double scale = std::max(R.norm(), 1.0);
  require((R - R.transpose()).norm() <= 1e-10 * scale, "symmetric_sqrt: matrix must be symmetric");

  Eigen::SelfAdjointEigenSolver<Mat> eig(R);
  require(eig.info() == Eigen::Success, "symmetric_sqrt: eigendecomposition failed");
  Vec lambda = eig.eigenvalues();
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    require(lambda[i] >= -1e-10 * scale, "symmetric_sqrt: matrix is not PSD");
    lambda[i] = std::sqrt(std::max(lambda[i], 0.0));
  }
  return eig.eigenvectors() * lambda.asDiagonal() * eig.eigenvectors().transpose();
}

Eigen::Vector2d project_regular_polygon(int M, const Eigen::Vector2d& z2) {
  require(M >= 1, "project_regular_polygon: M must be >= 1");
  constexpr double kTwoPi = 6.283185307179586476925286766559;

  if (M == 1) return {1.0, 0.0};
  if (M == 2) {
    // Segment between (1,0) and (-1,0).
    return {std::clamp(z2.x(), -1.0, 1.0), 0.0};
  }

  const double sector = kTwoPi / M;
  double angle = std::atan2(z2.y(), z2.x());
  if (angle < 0.0) angle += kTwoPi;
  int k = static_cast<int>(angle / sector);
  if (k >= M) k = M - 1;

  // Within angular sector k only edge k's half-plane can be violated.
  const Eigen::Vector2d normal(std::cos((k + 0.5) * sector), std::sin((k + 0.5) * sector));
  if (normal.dot(z2) <= std::cos(sector / 2.0)) return z2;

  const Eigen::Vector2d v0(std::cos(k * sector), std::sin(k * sector));
  const Eigen::Vector2d v1(std::cos((k + 1) * sector), std::sin((k + 1) * sector));
  const Eigen::Vector2d edge = v1 - v0;
  const double t = std::clamp(edge.dot(z2 - v0) / edge.squaredNorm(), 0.0, 1.0);
  return v0 + t * edge;
}

}  // namespace proxsmooth
