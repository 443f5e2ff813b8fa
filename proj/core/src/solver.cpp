#include "proxsmooth/solver.hpp"

#include <chrono>
#include <cmath>

namespace proxsmooth {

namespace {

constexpr int kMaxBacktrackShrinks = 10000;
constexpr double kSubgradientMu = 1e-8;

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool armijo_with_slack(double lhs, double rhs) { return lhs <= rhs + 1e-12 * (1.0 + std::abs(lhs)); }

struct BacktrackState {
  double gamma = 0.0;
  int count = 0;
  Vec candidate;  // accepted prox-gradient point at gamma
};

// Shares the per-iterate gradient and base cost across all trial stepsizes.
BacktrackState backtrack_impl(const CompositeProblem& p, double mu, const Vec& x, const Vec& grad,
                              double base_cost, const SolverConfig& cfg) {
  double gamma = cfg.gamma_init;
  for (int count = 0; count <= kMaxBacktrackShrinks; ++count) {
    Vec candidate = p.phi->prox(gamma, x - gamma * grad);
    const double lhs = p.smoothed_cost(mu, candidate);
    const double measure = (x - candidate).norm() / gamma;
    if (armijo_with_slack(lhs, base_cost - cfg.c * gamma * measure * measure)) {
      return {gamma, count, std::move(candidate)};
    }
    gamma *= cfg.rho;
  }
  throw divergence_error(
      "backtrack: no acceptable stepsize after 10^4 shrinks "
      "(wrong gradient or non-Lipschitz setup?)");
}

}  // namespace

void SolverConfig::validate() const {
  require(c > 0.0 && c < 1.0, "SolverConfig: c must lie in (0,1)");
  require(rho > 0.0 && rho < 1.0, "SolverConfig: rho must lie in (0,1)");
  require(gamma_init > 0.0, "SolverConfig: gamma_init must be positive");
  require(alpha >= 1.0, "SolverConfig: alpha must be >= 1");
  if (eta_override) require(*eta_override > 0.0, "SolverConfig: eta_override must be positive");
  require(eps_stop >= 0.0, "SolverConfig: eps_stop must be nonnegative");
  require(time_limit_sec > 0.0, "SolverConfig: time_limit_sec must be positive");
  require(max_iters >= 1, "SolverConfig: max_iters must be >= 1");
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::kToleranceReached:
      return "tolerance";
    case Termination::kTimeLimit:
      return "time_limit";
    case Termination::kMaxIters:
      return "max_iters";
  }
  return "unknown";
}

double effective_eta(const CompositeProblem& p, const SolverConfig& cfg) {
  if (cfg.eta_override) return *cfg.eta_override;
  const double eta = p.g->weak_convexity_modulus();
  return eta > 0.0 ? eta : 1.0;
}

Vec smoothed_gradient(const CompositeProblem& p, double mu, const Vec& x) {
  require(x.size() == p.dim_in, "smoothed_gradient: dimension mismatch");
  const Vec z = p.S->value(x);
  require(z.size() == p.dim_out, "smoothed_gradient: S output dimension mismatch");
  return p.h->gradient(x) + p.S->jacobian_adjoint(x, moreau_gradient(*p.g, mu, z));
}

Vec gradient_mapping(const CompositeProblem& p, double mu, double gamma, const Vec& x) {
  require(gamma > 0.0, "gradient_mapping: gamma must be positive");
  const Vec grad = smoothed_gradient(p, mu, x);
  return (x - p.phi->prox(gamma, x - gamma * grad)) / gamma;
}

double stationarity_measure(const CompositeProblem& p, double mu, double gamma, const Vec& x) {
  return gradient_mapping(p, mu, gamma, x).norm();
}

bool armijo_holds(const CompositeProblem& p, double mu, const Vec& x, double gamma, double c) {
  require(p.phi->in_domain(x), "armijo_holds: x must lie in dom phi");
  const Vec grad = smoothed_gradient(p, mu, x);
  const Vec candidate = p.phi->prox(gamma, x - gamma * grad);
  const double lhs = p.smoothed_cost(mu, candidate);
  const double measure = (x - candidate).norm() / gamma;
  return armijo_with_slack(lhs, p.smoothed_cost(mu, x) - c * gamma * measure * measure);
}

BacktrackResult backtrack(const CompositeProblem& p, double mu, const Vec& x, const SolverConfig& cfg) {
  require(p.phi->in_domain(x), "backtrack: x must lie in dom phi");
  const Vec grad = smoothed_gradient(p, mu, x);
  const auto state = backtrack_impl(p, mu, x, grad, p.smoothed_cost(mu, x), cfg);
  return {state.gamma, state.count};
}

bool stopping_rule(double step_norm, double elapsed_sec, const SolverConfig& cfg) {
  return step_norm < cfg.eps_stop || elapsed_sec > cfg.time_limit_sec;
}

SolveResult solve(const CompositeProblem& p, Vec x1, const SolverConfig& cfg,
                  const IterationObserver& observer) {
  p.validate();
  cfg.validate();

  SolveResult result;
  if (!p.phi->in_domain(x1)) {
    x1 = p.phi->prox(1.0, x1);
    result.warnings.push_back("initial point outside dom phi; projected via prox");
  }

  const double eta = effective_eta(p, cfg);
  const double gamma_bar = cfg.gamma_init;
  const auto start = std::chrono::steady_clock::now();

  Vec x = std::move(x1);
  result.termination = Termination::kMaxIters;
  for (long n = 1; n <= cfg.max_iters; ++n) {
    const double mu = smoothing_schedule(n, eta, cfg.alpha);
    const Vec grad = smoothed_gradient(p, mu, x);
    const double cost_smoothed = p.smoothed_cost(mu, x);
    auto step = backtrack_impl(p, mu, x, grad, cost_smoothed, cfg);
    if (observer) observer(n, x, mu, step.gamma);

    IterationRecord rec;
    rec.n = n;
    rec.mu_n = mu;
    rec.gamma_n = step.gamma;
    rec.backtrack_count = step.count;
    rec.cost_smoothed = cost_smoothed;
    rec.cost_true = p.true_cost(x);
    rec.step_norm = (step.candidate - x).norm();
    // The trace logs the measure at the uniform stepsize bound gamma_bar;
    // when no shrink happened the accepted candidate is already the
    // gamma_bar point.
    rec.measure = step.count == 0
                      ? rec.step_norm / gamma_bar
                      : (x - p.phi->prox(gamma_bar, x - gamma_bar * grad)).norm() / gamma_bar;
    result.trace.push_back(rec);

    x = std::move(step.candidate);
    if (rec.step_norm < cfg.eps_stop) {
      result.termination = Termination::kToleranceReached;
      break;
    }
    if (elapsed_seconds(start) > cfg.time_limit_sec) {
      result.termination = Termination::kTimeLimit;
      break;
    }
  }
  result.x_final = std::move(x);
  return result;
}

SolveResult solve_subgradient(const CompositeProblem& p, Vec x1, const SubgradientOptions& opts,
                              const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  if (opts.rule == SubgradientRule::kEtaSqrt) {
    require(opts.eta_sub > 0.0, "solve_subgradient: eta_sub must be positive");
  }

  SolveResult result;
  if (!p.phi->in_domain(x1)) {
    x1 = p.phi->prox(1.0, x1);
    result.warnings.push_back("initial point outside dom phi; projected via prox");
  }

  const auto start = std::chrono::steady_clock::now();
  Vec x = std::move(x1);
  result.termination = Termination::kMaxIters;
  for (long n = 1; n <= cfg.max_iters; ++n) {
    double gamma = 0.0;
    switch (opts.rule) {
      case SubgradientRule::kEtaSqrt:
        gamma = 1.0 / (opts.eta_sub * std::sqrt(static_cast<double>(n)));
        break;
      case SubgradientRule::kInvSqrt:
        gamma = 1.0 / std::sqrt(static_cast<double>(n));
        break;
      case SubgradientRule::kInv:
        gamma = 1.0 / static_cast<double>(n);
        break;
    }

    const Vec v = opts.selector ? opts.selector(x) : smoothed_gradient(p, kSubgradientMu, x);
    const Vec x_next = p.phi->prox(gamma, x - gamma * v);

    IterationRecord rec;
    rec.n = n;
    rec.mu_n = 0.0;
    rec.gamma_n = gamma;
    rec.backtrack_count = 0;
    rec.cost_true = p.true_cost(x);
    rec.cost_smoothed = rec.cost_true;
    rec.measure = std::numeric_limits<double>::quiet_NaN();
    rec.step_norm = (x_next - x).norm();
    result.trace.push_back(rec);

    x = x_next;
    if (rec.step_norm < cfg.eps_stop) {
      result.termination = Termination::kToleranceReached;
      break;
    }
    if (elapsed_seconds(start) > cfg.time_limit_sec) {
      result.termination = Termination::kTimeLimit;
      break;
    }
  }
  result.x_final = std::move(x);
  return result;
}

}  // namespace proxsmooth
