#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "proxsmooth/problem.hpp"

namespace proxsmooth {

struct SolverConfig {
  // Armijo parameter c, shrink factor rho, initial trial stepsize, and the
  // exponent alpha of the smoothing schedule (2 eta)^-1 n^(-1/alpha).
  double c = 0.0001220703125;  // 2^-13
  double rho = 0.5;
  double gamma_init = 1.0;
  double alpha = 3.0;

  // Effective weak-convexity modulus for the schedule. When unset, the
  // problem's own eta is used, substituting 1 for convex g (eta = 0).
  std::optional<double> eta_override;

  // Stop when ||x_{n+1} - x_n|| < eps_stop or the elapsed wall-clock time
  // exceeds time_limit_sec, whichever comes first; max_iters is a hard cap.
  double eps_stop = 1e-5;
  double time_limit_sec = 5.0;
  long max_iters = 200000;

  void validate() const;
};

struct IterationRecord {
  long n = 0;
  double mu_n = 0.0;
  double gamma_n = 0.0;
  int backtrack_count = 0;
  double cost_smoothed = 0.0;  // (F_n + phi)(x_n)
  double cost_true = 0.0;      // (F + phi)(x_n)
  double measure = 0.0;        // stationarity measure at gamma_bar = gamma_init
  double step_norm = 0.0;      // ||x_{n+1} - x_n||
};

enum class Termination { kToleranceReached, kTimeLimit, kMaxIters };

const char* to_string(Termination t);

struct SolveResult {
  Vec x_final;
  std::vector<IterationRecord> trace;
  Termination termination = Termination::kMaxIters;
  std::vector<std::string> warnings;
};

/// Effective eta for the smoothing schedule: override if set, else the
/// problem's modulus, else 1 for convex g.
double effective_eta(const CompositeProblem& p, const SolverConfig& cfg);

/// Gradient of the smoothed cost h + (envelope of g at index mu) o S:
/// grad h(x) + DS(x)^*[envelope gradient at S(x)].
Vec smoothed_gradient(const CompositeProblem& p, double mu, const Vec& x);

/// Forward-backward residual (x - prox_{gamma phi}(x - gamma grad)) / gamma.
Vec gradient_mapping(const CompositeProblem& p, double mu, double gamma, const Vec& x);

/// Norm of the gradient mapping; zero exactly at stationary points of the
/// smoothed cost, nonincreasing in gamma.
double stationarity_measure(const CompositeProblem& p, double mu, double gamma, const Vec& x);

/// Sufficient-decrease test at stepsize gamma: the smoothed cost at the
/// prox-gradient candidate must not exceed the current smoothed cost minus
/// c * gamma * measure^2. A relative slack of 1e-12 (1 + |lhs|) absorbs
/// roundoff. Requires x in dom phi.
bool armijo_holds(const CompositeProblem& p, double mu, const Vec& x, double gamma, double c);

struct BacktrackResult {
  double gamma = 0.0;
  int count = 0;  // number of shrinks applied to gamma_init
};

/// Largest gamma in {gamma_init rho^l : l >= 0} passing the Armijo test;
/// l = 0 is tried first so gamma_init itself can be returned. Throws
/// divergence_error after 10^4 shrinks.
BacktrackResult backtrack(const CompositeProblem& p, double mu, const Vec& x, const SolverConfig& cfg);

/// True iff step_norm < eps_stop or elapsed_sec > time_limit_sec.
bool stopping_rule(double step_norm, double elapsed_sec, const SolverConfig& cfg);

/// Per-iteration observer: called with (n, x_n, mu_n, gamma_n) after the
/// stepsize for iteration n has been accepted.
using IterationObserver = std::function<void(long, const Vec&, double, double)>;

/// Proximal variable smoothing: x_{n+1} = prox_{gamma_n phi}(x_n - gamma_n
/// grad F_n(x_n)) with F_n the smoothed cost at mu_n from the schedule and
/// gamma_n from backtracking. Infeasible x_1 is projected (with a warning).
/// The per-iteration measure is evaluated at the fixed gamma_bar = gamma_init.
SolveResult solve(const CompositeProblem& p, Vec x1, const SolverConfig& cfg,
                  const IterationObserver& observer = {});

enum class SubgradientRule { kEtaSqrt, kInvSqrt, kInv };

struct SubgradientOptions {
  SubgradientRule rule = SubgradientRule::kInvSqrt;
  double eta_sub = 1.0;  // used by kEtaSqrt: gamma_n = n^(-1/2) / eta_sub
  // Subgradient selection v_n; when empty, the smoothed gradient with a
  // fixed tiny mu = 1e-8 approximates a limiting subgradient.
  std::function<Vec(const Vec&)> selector;
};

/// Projected subgradient baseline x_{n+1} = prox_{gamma_n phi}(x_n - gamma_n v_n)
/// under the same stopping rule; records cost_true per iteration.
SolveResult solve_subgradient(const CompositeProblem& p, Vec x1, const SubgradientOptions& opts,
                              const SolverConfig& cfg);

}  // namespace proxsmooth
