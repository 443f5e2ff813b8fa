#include "proxsmooth/problem.hpp"

#include <algorithm>
#include <cmath>

namespace proxsmooth {

IndicatorBox::IndicatorBox(Vec lo, Vec hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  require(lo_.size() == hi_.size(), "IndicatorBox: lo/hi size mismatch");
  for (Eigen::Index i = 0; i < lo_.size(); ++i) {
    require(lo_[i] <= hi_[i], "IndicatorBox: lo > hi in some coordinate");
  }
}

Vec IndicatorBox::prox(double, const Vec& z) const {
  require(z.size() == lo_.size(), "IndicatorBox: dimension mismatch");
  Vec out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) out[i] = std::clamp(z[i], lo_[i], hi_[i]);
  return out;
}

double IndicatorBox::evaluate(const Vec& z) const { return in_domain(z) ? 0.0 : kInf; }

bool IndicatorBox::in_domain(const Vec& z) const {
  if (z.size() != lo_.size()) return false;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    // Tiny feasibility slack so prox outputs are never rejected by roundoff.
    const double tol = 1e-12 * (1.0 + std::min(std::abs(lo_[i]), std::abs(hi_[i])));
    if (z[i] < lo_[i] - tol || z[i] > hi_[i] + tol) return false;
  }
  return true;
}

std::shared_ptr<const IndicatorBox> indicator_box(Vec lo, Vec hi) {
  return std::make_shared<const IndicatorBox>(std::move(lo), std::move(hi));
}

void CompositeProblem::validate() const {
  require(h && g && S && phi, "CompositeProblem: all four terms must be set");
  require(dim_in >= 1 && dim_out >= 1, "CompositeProblem: dimensions must be positive");
  require(S->input_dim() == dim_in, "CompositeProblem: S input dimension mismatch");
  require(S->output_dim() == dim_out, "CompositeProblem: S output dimension mismatch");
}

double CompositeProblem::true_cost(const Vec& x) const {
  return h->value(x) + g->evaluate(S->value(x)) + phi->evaluate(x);
}

double CompositeProblem::smoothed_cost(double mu, const Vec& x) const {
  return h->value(x) + moreau_value(*g, mu, S->value(x)) + phi->evaluate(x);
}

}  // namespace proxsmooth
