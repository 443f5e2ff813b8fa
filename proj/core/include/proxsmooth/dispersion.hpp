#pragma once

#include <cstdint>

#include "proxsmooth/mathkit.hpp"
#include "proxsmooth/problem.hpp"

namespace proxsmooth::dispersion {

// Maxmin dispersion instance: place x in C = V intersect B(0,1) maximizing
// the minimum weighted squared distance to the anchor points u_j.
struct DispersionInstance {
  Mat points;   // m x d, row j = u_j
  Vec weights;  // length m, all positive
  SubspaceProjector projector;
  std::uint64_t seed = 0;

  int dim() const { return static_cast<int>(points.cols()); }
  int num_points() const { return static_cast<int>(points.rows()); }
};

/// u_j i.i.d. uniform on [-2,2]^d, unit weights; the projector draws from a
/// sub-seed derived as seed XOR kProjectorSubseedXor.
DispersionInstance random_dispersion_instance(int d, int m, int d_V, std::uint64_t seed);

/// Composite formulation: h = 0, g = max of coordinates,
/// S(x) = -(w_j ||x - u_j||^2)_j, phi = indicator of V intersect B(0,1).
CompositeProblem build_dispersion_problem(const DispersionInstance& inst);

/// max_j (-w_j ||x - u_j||^2); lower is better.
double dispersion_cost(const DispersionInstance& inst, const Vec& x);

/// Feasible start: uniform draw on [-1,1]^d projected onto C (per-seed
/// deterministic, independent of the instance streams).
Vec random_feasible_init(const DispersionInstance& inst, std::uint64_t seed);

}  // namespace proxsmooth::dispersion
