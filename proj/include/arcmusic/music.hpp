#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "arcmusic/geometry.hpp"
#include "arcmusic/linalg.hpp"
#include "arcmusic/msr.hpp"
#include "arcmusic/vec2.hpp"

namespace arcmusic {

/// Projector onto the orthogonal complement of the leading M left singular
/// vectors: P = I - sum_{m<=M} U_m U_m^*.
struct NoiseProjector {
    int dimension = 0;
    int signal_rank = 0;
    CMatrix basis;  // dimension x signal_rank, orthonormal columns

    std::vector<cplx> apply(std::span<const cplx> f) const;
};

NoiseProjector make_noise_projector(const SvdResult& svd, int signal_rank);

struct ImageGrid {
    double x_min = -1.0, x_max = 1.0;
    double y_min = -1.0, y_max = 1.0;
    int nx = 201, ny = 201;

    double x_at(int ix) const { return x_min + (x_max - x_min) * ix / (nx - 1); }
    double y_at(int iy) const { return y_min + (y_max - y_min) * iy / (ny - 1); }
};

enum class MapKind { music, theory_j1, theory_j0 };

struct MapMetadata {
    double wavelength = 0.0;
    int n_directions = 0;
    int signal_rank = 0;
    std::uint64_t seed = 0;
    long clamp_count = 0;
};

/// Scalar field over the grid, stored row-major (iy major, ix minor).
struct ImagingMap {
    ImageGrid grid;
    MapKind kind = MapKind::music;
    std::vector<double> values;
    MapMetadata meta;

    double value(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * grid.nx + ix]; }
    double max_value() const;
    double min_value() const;
};

/// Unit-norm plane-wave test vector (1/sqrt(N)) [exp(i k theta_n . z)]_n.
std::vector<cplx> steering_vector(Vec2 z, const DirectionSet& directions, double k);

/// General test vector [(c_n . theta_n) exp(i k theta_n . z)]_n (unnormalized).
/// Throws DataError when every weight c_n . theta_n vanishes.
std::vector<cplx> steering_vector_general(Vec2 z, std::span<const Vec2> c,
                                          const DirectionSet& directions, double k);

/// W = 1 / |P f| for a unit-norm test vector; |P f| below 1e-8 clamps to 1e8
/// and bumps *clamp_counter.
double music_value(const NoiseProjector& projector, std::span<const cplx> f,
                   long* clamp_counter = nullptr);

/// MUSIC map over the grid (parallel over points; values independent of the
/// thread count). Requires 0 <= signal_rank < N.
ImagingMap compute_map(const SvdResult& svd, int signal_rank, const ImageGrid& grid,
                       const DirectionSet& directions, double k);

/// Closed-form predictor with J_1^2 point spreads:
/// W(z) = (1 - 2 sum_m ((z-y_m)/|z-y_m| . n(y_m))^2 J_1(k|z-y_m|)^2)^{-1/2};
/// the m-th term is 0 at z = y_m, and radicands below 1e-6 clamp (counted).
ImagingMap theory_map_j1(const EffectiveSampling& sampling, const ImageGrid& grid, double k);
double theory_value_j1(const EffectiveSampling& sampling, Vec2 z, double k,
                       long* clamp_counter = nullptr);

/// Variant with J_0^2 point spreads: W(z) = (1 - sum_m J_0(k|z-y_m|)^2)^{-1/2};
/// clamps exactly at the sampling points.
ImagingMap theory_map_j0(const EffectiveSampling& sampling, const ImageGrid& grid, double k);
double theory_value_j0(const EffectiveSampling& sampling, Vec2 z, double k,
                       long* clamp_counter = nullptr);

/// Rank-M factorized response matrix K = sum_m sigma_m u_m u_m^T built from
/// normalized direction-weighted plane-wave vectors at the sampling points
/// (transpose, not adjoint: K stays complex symmetric). First-principles
/// oracle for MUSIC behavior, independent of the integral-equation solver.
/// Points must be pairwise separated by at least lambda/4.
MsrMatrix synthetic_msr(const EffectiveSampling& sampling, const DirectionSet& directions,
                        double k, std::span<const double> sigmas);

}  // namespace arcmusic
