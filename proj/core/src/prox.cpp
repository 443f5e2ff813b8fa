#include "proxsmooth/prox.hpp"

#include <cmath>

#include "proxsmooth/mathkit.hpp"

namespace proxsmooth {

void check_prox_index(double mu, double eta) {
  require(mu > 0.0, "prox index mu must be positive");
  if (eta > 0.0) {
    require(mu < 1.0 / eta, "prox index mu must lie in (0, 1/eta)");
  }
}

double moreau_value(const ProxFunction& g, double mu, const Vec& z) {
  check_prox_index(mu, g.weak_convexity_modulus());
  const Vec p = g.prox(mu, z);
  return g.evaluate(p) + (p - z).squaredNorm() / (2.0 * mu);
}

Vec moreau_gradient(const ProxFunction& g, double mu, const Vec& z) {
  check_prox_index(mu, g.weak_convexity_modulus());
  return (z - g.prox(mu, z)) / mu;
}

double smoothing_schedule(long n, double eta, double alpha) {
  require(n >= 1, "smoothing_schedule: n must be >= 1");
  require(eta > 0.0, "smoothing_schedule: eta must be positive");
  require(alpha >= 1.0, "smoothing_schedule: alpha must be >= 1");
  return std::pow(static_cast<double>(n), -1.0 / alpha) / (2.0 * eta);
}

Vec prox_scaled_l1(double lambda, double mu, const Vec& z) {
  require(lambda >= 0.0, "prox_scaled_l1: lambda must be nonnegative");
  require(mu > 0.0, "prox_scaled_l1: mu must be positive");
  const double level = lambda * mu;
  Vec out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double zi = z[i];
    out[i] = std::copysign(std::max(std::abs(zi) - level, 0.0), zi);
  }
  return out;
}

Vec prox_max(double mu, const Vec& z) {
  require(mu > 0.0, "prox_max: mu must be positive");
  require(z.size() >= 1, "prox_max: empty input");
  return z - mu * project_simplex(z / mu);
}

ScaledL1::ScaledL1(double lambda, int dim) : lambda_(lambda), dim_(dim) {
  require(lambda >= 0.0, "ScaledL1: lambda must be nonnegative");
  require(dim >= 1, "ScaledL1: dim must be >= 1");
}

double ScaledL1::evaluate(const Vec& z) const { return lambda_ * z.lpNorm<1>(); }

Vec ScaledL1::prox(double mu, const Vec& z) const {
  check_prox_index(mu, 0.0);
  return prox_scaled_l1(lambda_, mu, z);
}

double ScaledL1::lipschitz_const() const { return lambda_ * std::sqrt(static_cast<double>(dim_)); }

MaxOfCoordinates::MaxOfCoordinates(int dim) : dim_(dim) {
  require(dim >= 1, "MaxOfCoordinates: dim must be >= 1");
}

double MaxOfCoordinates::evaluate(const Vec& z) const { return z.maxCoeff(); }

Vec MaxOfCoordinates::prox(double mu, const Vec& z) const {
  check_prox_index(mu, 0.0);
  return prox_max(mu, z);
}

Vec ZeroProx::prox(double mu, const Vec& z) const {
  check_prox_index(mu, 0.0);
  return z;
}

}  // namespace proxsmooth
