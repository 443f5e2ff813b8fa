#pragma once

#include <cstdint>
#include <vector>

#include "proxsmooth/problem.hpp"

namespace proxsmooth::mimo {

// One randomized detection scene: M-PSK symbols through a spatially
// correlated Rayleigh channel, stored in the real-valued lifting
// H = [Re -Im; Im Re], y = [Re; Im].
struct MimoScene {
  int U = 0;  // transmit antennas
  int B = 0;  // receive antennas
  int M = 0;  // PSK order (power of two)
  Mat H_real;              // 2B x 2U
  Vec y_real;              // 2B
  Vec s_true_real;         // 2U, lifted transmitted symbols
  std::vector<int> true_symbols;        // length U, constellation indices
  std::vector<std::uint8_t> true_bits;  // U * log2(M), Gray-coded, MSB first
  double sigma2 = 0.0;
  std::uint64_t seed = 0;

  int bits_per_symbol() const;
};

/// Symbols uniform over the M-PSK constellation, channel sqrt(R) G with
/// [R]_{jk} = 0.5^|j-k| and G ~ CN(0, 1/B) entrywise, noise CN(0, sigma^2)
/// with sigma^2 = 10^(-snr_db/10) (snr_db = +inf means noiseless).
MimoScene generate_scene(int U, int B, int M, double snr_db, std::uint64_t seed);

/// Polar lifting [r .* cos(theta); r .* sin(theta)].
Vec polar_map(const Vec& r, const Vec& theta);

struct BarrierValue {
  double value = 0.0;
  double deriv = 0.0;
};

/// Amplitude barrier: 1/t on [r_lb, +inf), linear continuation
/// -t/r_lb + 1 + 1/r_lb below (continuous at the knee).
BarrierValue barrier_d(double t, double r_lb);

/// Polar-coordinate detector over x = (r; theta) in R^{2U}:
/// h = 0.5 ||y - H phi(r,theta)||^2 + lambda_r sum d(r_u),
/// S(theta) = sin(M theta / 2), g = lambda_theta ||.||_1,
/// phi = indicator of [r_lb, 1]^U x R^U.
CompositeProblem build_proposed_model(const MimoScene& scene, double lambda_r, double lambda_theta,
                                      double r_lb);

/// Modulus-constrained least squares: the polar model with r pinned to 1 and
/// no regularization.
CompositeProblem build_modulus_model(const MimoScene& scene);

/// Sum-of-absolute-values detector over s in R^{2U}: h = 0.5 ||y - H s||^2,
/// S stacks s - s_hat_m over the M constellation shifts, g = (lambda/M) ||.||_1,
/// phi = indicator of Conv(constellation) applied per antenna pair.
CompositeProblem build_soav_model(const MimoScene& scene, double lambda);

/// (H^T H + sigma^2 I)^{-1} H^T y by a dense symmetric solve.
Vec lmmse(const MimoScene& scene);

struct BerResult {
  double ber = 0.0;
  int symbol_errors = 0;
};

/// Nearest-phase quantization, inverse Gray mapping, bit comparison against
/// the transmitted bits.
BerResult demodulate_ber(const MimoScene& scene, const Vec& s_est);

/// Warm start for the polar models: LMMSE amplitudes clipped into [r_lb, 1],
/// phases from atan2.
Vec polar_init_from_lmmse(const MimoScene& scene, double r_lb);

/// Warm start for the SOAV model: LMMSE projected per antenna onto the
/// constellation hull.
Vec hull_init_from_lmmse(const MimoScene& scene);

/// Weak-convexity parameter of the polar-model cost used by the subgradient
/// baseline stepsize: 4((2+sqrt(U))||H||_op^2 + ||H^T y||) + sqrt(U) M^2 / 4.
double subgradient_eta(const MimoScene& scene);

}  // namespace proxsmooth::mimo
