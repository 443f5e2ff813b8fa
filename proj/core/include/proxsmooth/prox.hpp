#pragma once

#include <memory>

#include "proxsmooth/types.hpp"

namespace proxsmooth {

// A weakly convex, Lipschitz, prox-friendly function g. prox(mu, .) must be
// the exact minimizer of w |-> g(w) + ||w - z||^2 / (2 mu) for
// mu in (0, 1/eta) (eta == 0 means no upper bound on mu).
class ProxFunction {
 public:
  virtual ~ProxFunction() = default;

  virtual double evaluate(const Vec& z) const = 0;
  virtual Vec prox(double mu, const Vec& z) const = 0;

  /// Weak-convexity modulus eta >= 0 (0 for convex functions).
  virtual double weak_convexity_modulus() const = 0;

  /// A Lipschitz constant of evaluate() w.r.t. the Euclidean norm.
  virtual double lipschitz_const() const = 0;
};

/// Throws unless mu in (0, 1/eta); eta == 0 only requires mu > 0.
void check_prox_index(double mu, double eta);

/// Moreau envelope value: g(p) + ||p - z||^2 / (2 mu) with p = prox(mu, z).
double moreau_value(const ProxFunction& g, double mu, const Vec& z);

/// Envelope gradient (z - prox(mu, z)) / mu; its norm never exceeds L_g.
Vec moreau_gradient(const ProxFunction& g, double mu, const Vec& z);

/// Smoothing-parameter schedule (2 eta)^-1 n^(-1/alpha), n >= 1, alpha >= 1.
double smoothing_schedule(long n, double eta, double alpha);

/// Componentwise soft threshold at level lambda * mu.
Vec prox_scaled_l1(double lambda, double mu, const Vec& z);

/// Exact prox of z |-> max_i [z]_i, via z - mu * project_simplex(z / mu).
Vec prox_max(double mu, const Vec& z);

// g(z) = lambda * ||z||_1. Convex (eta = 0); L_g = lambda * sqrt(dim).
class ScaledL1 : public ProxFunction {
 public:
  ScaledL1(double lambda, int dim);

  double evaluate(const Vec& z) const override;
  Vec prox(double mu, const Vec& z) const override;
  double weak_convexity_modulus() const override { return 0.0; }
  double lipschitz_const() const override;
  double lambda() const { return lambda_; }

 private:
  double lambda_;
  int dim_;
};

// g(z) = max_i [z]_i. Convex; L_g = 1.
class MaxOfCoordinates : public ProxFunction {
 public:
  explicit MaxOfCoordinates(int dim);

  double evaluate(const Vec& z) const override;
  Vec prox(double mu, const Vec& z) const override;
  double weak_convexity_modulus() const override { return 0.0; }
  double lipschitz_const() const override { return 1.0; }

 private:
  int dim_;
};

// g identically zero; prox is the identity.
class ZeroProx : public ProxFunction {
 public:
  double evaluate(const Vec&) const override { return 0.0; }
  Vec prox(double mu, const Vec& z) const override;
  double weak_convexity_modulus() const override { return 0.0; }
  double lipschitz_const() const override { return 0.0; }
};

}  // namespace proxsmooth
