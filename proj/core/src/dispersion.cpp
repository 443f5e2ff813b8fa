#include "proxsmooth/dispersion.hpp"

#include <cmath>
#include <memory>

namespace proxsmooth::dispersion {

DispersionInstance random_dispersion_instance(int d, int m, int d_V, std::uint64_t seed) {
  require(d >= 1 && m >= 1, "random_dispersion_instance: d, m must be >= 1");
  require(d_V >= 1 && d_V <= d, "random_dispersion_instance: need 1 <= d_V <= d");

  DispersionInstance inst;
  inst.seed = seed;
  CounterRng point_rng(seed, streams::kDispersionPoints);
  inst.points.resize(m, d);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < d; ++i) inst.points(j, i) = point_rng.uniform(-2.0, 2.0);
  inst.weights = Vec::Ones(m);
  inst.projector = random_subspace_projector(d, d_V, seed ^ kProjectorSubseedXor);
  return inst;
}

CompositeProblem build_dispersion_problem(const DispersionInstance& inst) {
  const int d = inst.dim();
  const int m = inst.num_points();
  const auto points = std::make_shared<const Mat>(inst.points);
  const auto weights = std::make_shared<const Vec>(inst.weights);
  const auto projector = std::make_shared<const SubspaceProjector>(inst.projector);

  auto map_value = [points, weights, m](const Vec& x) {
    Vec z(m);
    for (int j = 0; j < m; ++j) z[j] = -(*weights)[j] * (x - points->row(j).transpose()).squaredNorm();
    return z;
  };
  auto map_adjoint = [points, weights, m, d](const Vec& x, const Vec& y) {
    Vec out = Vec::Zero(d);
    for (int j = 0; j < m; ++j) out -= 2.0 * y[j] * (*weights)[j] * (x - points->row(j).transpose());
    return out;
  };

  auto member = [projector](const Vec& x) {
    return (projector->P * x - x).norm() <= 1e-8 && x.norm() <= 1.0 + 1e-12;
  };
  auto project = [projector](const Vec& z) { return project_ball_subspace(*projector, z); };

  CompositeProblem p;
  p.h = std::make_shared<ZeroSmoothTerm>();
  p.g = std::make_shared<MaxOfCoordinates>(m);
  p.S = std::make_shared<CallbackSmoothMap>(d, m, std::move(map_value), std::move(map_adjoint));
  p.phi = std::make_shared<IndicatorSet>(std::move(project), std::move(member));
  p.dim_in = d;
  p.dim_out = m;

  // Over C the map's derivative is bounded and Lipschitz; with L_g = 1 and
  // the 1/mu envelope-gradient Lipschitz constant for convex g this bounds
  // the smoothed cost's gradient Lipschitz constant.
  double sum_w2 = 0.0, sum_reach2 = 0.0;
  for (int j = 0; j < m; ++j) {
    const double w = inst.weights[j];
    const double reach = 1.0 + inst.points.row(j).norm();
    sum_w2 += w * w;
    sum_reach2 += w * w * reach * reach;
  }
  const double map_deriv_lip = 2.0 * std::sqrt(sum_w2);
  const double map_deriv_bound = 2.0 * std::sqrt(sum_reach2);
  p.lipschitz_smoothed_grad = [map_deriv_lip, map_deriv_bound](double mu) {
    return map_deriv_lip + map_deriv_bound * map_deriv_bound / mu;
  };
  return p;
}

double dispersion_cost(const DispersionInstance& inst, const Vec& x) {
  double best = -kInf;
  for (int j = 0; j < inst.num_points(); ++j) {
    best = std::max(best, -inst.weights[j] * (x - inst.points.row(j).transpose()).squaredNorm());
  }
  return best;
}

Vec random_feasible_init(const DispersionInstance& inst, std::uint64_t seed) {
  CounterRng rng(seed, streams::kDispersionInit);
  Vec z(inst.dim());
  for (int i = 0; i < inst.dim(); ++i) z[i] = rng.uniform(-1.0, 1.0);
  return project_ball_subspace(inst.projector, z);
}

}  // namespace proxsmooth::dispersion
