#pragma once

#include <complex>
#include <span>

#include "arcmusic/vec2.hpp"

namespace arcmusic {

using cplx = std::complex<double>;

/// Euler-Mascheroni constant (20 digits), used by the Y-series.
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// J_nu(x) for nu in {0,1}, x >= 0. Absolute error <= 1e-10 (power series up
/// to the seam, Hankel asymptotic expansion beyond). Negative x throws
/// std::domain_error; every caller in this project passes k|x-y| >= 0.
double bessel_j(int order, double x);

/// Y_nu(x) for nu in {0,1}, x > 0; x <= 0 throws (logarithmic singularity).
double bessel_y(int order, double x);

/// Entire part of Y_0: Y_0(x) - (2/pi)(ln(x/2) + gamma) J_0(x). Valid for
/// x >= 0; the forward solver uses it to split the log singularity off the
/// Helmholtz kernel analytically.
double bessel_y0_regular(double x);

/// H^(1)_nu(x) = J_nu(x) + i Y_nu(x), x > 0.
cplx hankel1(int order, double x);

/// (1/N) sum_n (theta_n . xi) exp(i k theta_n . x).
cplx lemma_average(std::span<const Vec2> directions, Vec2 xi, Vec2 x, double k);

/// Closed-form limit of the average over the full circle:
/// i (x/|x| . xi) J_1(k|x|), continuously extended to 0 at x = 0.
cplx lemma_closed_form(Vec2 xi, Vec2 x, double k);

}  // namespace arcmusic
