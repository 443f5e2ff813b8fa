#pragma once

#include <cstdint>

#include "proxsmooth/rng.hpp"
#include "proxsmooth/types.hpp"

namespace proxsmooth {

// Orthogonal projector onto a d_V-dimensional linear subspace of R^d,
// stored as the symmetric idempotent matrix P = Q Q^T.
struct SubspaceProjector {
  Mat P;
  int rank = 0;

  Vec apply(const Vec& z) const { return P * z; }
  int dim() const { return static_cast<int>(P.rows()); }
};

/// Euclidean projection onto the unit simplex (sort-and-threshold).
Vec project_simplex(const Vec& v);

/// Projector onto the column span of a d x d_V standard-Gaussian draw,
/// orthonormalized by economy Householder QR.
SubspaceProjector random_subspace_projector(int d, int d_V, CounterRng& rng);
SubspaceProjector random_subspace_projector(int d, int d_V, std::uint64_t seed);

/// Projection onto V intersect B(0,1): w / max(||w||, 1) with w = P z.
Vec project_ball_subspace(const SubspaceProjector& proj, const Vec& z);

/// Principal square root of a symmetric PSD matrix by eigendecomposition;
/// eigenvalues >= -1e-10 are clipped to zero, non-symmetric input throws.
Mat symmetric_sqrt(const Mat& R);

/// Euclidean projection of a planar point onto the convex hull of the M-th
/// roots of unity (a regular M-gon; a segment for M = 2; a point for M = 1).
Eigen::Vector2d project_regular_polygon(int M, const Eigen::Vector2d& z2);

}  // namespace proxsmooth
