#include "arcmusic/music.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "arcmusic/errors.hpp"
#include "arcmusic/parallel.hpp"
#include "arcmusic/specfun.hpp"

namespace arcmusic {

std::vector<cplx> NoiseProjector::apply(std::span<const cplx> f) const {
    if (static_cast<int>(f.size()) != dimension)
        throw std::invalid_argument("NoiseProjector::apply: size mismatch");
    std::vector<cplx> out(f.begin(), f.end());
    for (int m = 0; m < signal_rank; ++m) {
        cplx coeff{0.0, 0.0};
        for (int i = 0; i < dimension; ++i) coeff += std::conj(basis(i, m)) * f[i];
        for (int i = 0; i < dimension; ++i) out[i] -= coeff * basis(i, m);
    }
    return out;
}

NoiseProjector make_noise_projector(const SvdResult& svd, int signal_rank) {
    const int n = svd.left.rows();
    if (signal_rank < 0 || signal_rank > n)
        throw std::domain_error("make_noise_projector: signal rank out of range");
    NoiseProjector p;
    p.dimension = n;
    p.signal_rank = signal_rank;
    p.basis = CMatrix(n, signal_rank);
    for (int m = 0; m < signal_rank; ++m)
        for (int i = 0; i < n; ++i) p.basis(i, m) = svd.left(i, m);
    return p;
}

double ImagingMap::max_value() const {
    double best = -1e300;
    for (double v : values) best = std::max(best, v);
    return best;
}

double ImagingMap::min_value() const {
    double best = 1e300;
    for (double v : values) best = std::min(best, v);
    return best;
}

std::vector<cplx> steering_vector(Vec2 z, const DirectionSet& directions, double k) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(directions.count));
    std::vector<cplx> f(directions.count);
    for (int n = 0; n < directions.count; ++n) {
        const double phase = k * directions.vectors[n].dot(z);
        f[n] = scale * cplx{std::cos(phase), std::sin(phase)};
    }
    return f;
}

std::vector<cplx> steering_vector_general(Vec2 z, std::span<const Vec2> c,
                                          const DirectionSet& directions, double k) {
    if (static_cast<int>(c.size()) != directions.count)
        throw std::invalid_argument("steering_vector_general: one c_n per direction required");
    std::vector<cplx> f(directions.count);
    double largest = 0.0;
    for (int n = 0; n < directions.count; ++n) {
        const double w = c[n].dot(directions.vectors[n]);
        largest = std::max(largest, std::abs(w));
        const double phase = k * directions.vectors[n].dot(z);
        f[n] = w * cplx{std::cos(phase), std::sin(phase)};
    }
    if (largest < 1e-14) throw DataError("steering_vector_general: degenerate test vector (all c_n orthogonal to theta_n)");
    return f;
}

double music_value(const NoiseProjector& projector, std::span<const cplx> f, long* clamp_counter) {
    const std::vector<cplx> residual = projector.apply(f);
    double norm_sq = 0.0;
    for (const cplx& v : residual) norm_sq += std::norm(v);
    const double norm = std::sqrt(norm_sq);
    if (norm < 1e-8) {
        if (clamp_counter) ++*clamp_counter;
        return 1e8;
    }
    return 1.0 / norm;
}

ImagingMap compute_map(const SvdResult& svd, int signal_rank, const ImageGrid& grid,
                       const DirectionSet& directions, double k) {
    if (grid.nx < 2 || grid.ny < 2) throw std::domain_error("compute_map: grid must be at least 2x2");
    if (signal_rank < 0 || signal_rank >= directions.count)
        throw std::domain_error("compute_map: need 0 <= M < N");
    const NoiseProjector projector = make_noise_projector(svd, signal_rank);

    ImagingMap map;
    map.grid = grid;
    map.kind = MapKind::music;
    map.values.resize(static_cast<std::size_t>(grid.nx) * grid.ny);
    map.meta.n_directions = directions.count;
    map.meta.signal_rank = signal_rank;
    map.meta.wavelength = 2.0 * M_PI / k;

    std::atomic<long> clamps{0};
    parallel_for(map.values.size(), [&](std::size_t idx) {
        const int ix = static_cast<int>(idx) % grid.nx;
        const int iy = static_cast<int>(idx) / grid.nx;
        const Vec2 z{grid.x_at(ix), grid.y_at(iy)};
        long local = 0;
        map.values[idx] = music_value(projector, steering_vector(z, directions, k), &local);
        if (local) clamps += local;
    });
    map.meta.clamp_count = clamps.load();
    return map;
}

namespace {

double theory_value(const EffectiveSampling& sampling, Vec2 z, double k, bool j1_variant,
                    long* clamp_counter) {
    double radicand = 1.0;
    for (int m = 0; m < sampling.count; ++m) {
        const Vec2 diff = z - sampling.points[m];
        const double r = diff.norm();
        if (j1_variant) {
            if (r == 0.0) continue;  // J1(0) = 0: continuous extension of the m-th term
            const double along = diff.dot(sampling.normals[m]) / r;
            const double j1 = bessel_j(1, k * r);
            radicand -= 2.0 * along * along * j1 * j1;
        } else {
            const double j0 = bessel_j(0, k * r);
            radicand -= j0 * j0;
        }
    }
    if (radicand <= 1e-6) {
        if (clamp_counter) ++*clamp_counter;
        radicand = 1e-6;
    }
    return 1.0 / std::sqrt(radicand);
}

ImagingMap theory_map(const EffectiveSampling& sampling, const ImageGrid& grid, double k,
                      bool j1_variant) {
    if (!(k > 0.0)) throw std::domain_error("theory map: wavenumber must be > 0");
    if (sampling.count < 1) throw std::domain_error("theory map: sampling must not be empty");
    if (grid.nx < 2 || grid.ny < 2) throw std::domain_error("theory map: grid must be at least 2x2");
    ImagingMap map;
    map.grid = grid;
    map.kind = j1_variant ? MapKind::theory_j1 : MapKind::theory_j0;
    map.values.resize(static_cast<std::size_t>(grid.nx) * grid.ny);
    map.meta.wavelength = 2.0 * M_PI / k;
    map.meta.signal_rank = sampling.count;

    std::atomic<long> clamps{0};
    parallel_for(map.values.size(), [&](std::size_t idx) {
        const int ix = static_cast<int>(idx) % grid.nx;
        const int iy = static_cast<int>(idx) / grid.nx;
        const Vec2 z{grid.x_at(ix), grid.y_at(iy)};
        long local = 0;
        map.values[idx] = theory_value(sampling, z, k, j1_variant, &local);
        if (local) clamps += local;
    });
    map.meta.clamp_count = clamps.load();
    return map;
}

}  // namespace

ImagingMap theory_map_j1(const EffectiveSampling& sampling, const ImageGrid& grid, double k) {
    return theory_map(sampling, grid, k, true);
}

double theory_value_j1(const EffectiveSampling& sampling, Vec2 z, double k, long* clamp_counter) {
    return theory_value(sampling, z, k, true, clamp_counter);
}

ImagingMap theory_map_j0(const EffectiveSampling& sampling, const ImageGrid& grid, double k) {
    return theory_map(sampling, grid, k, false);
}

double theory_value_j0(const EffectiveSampling& sampling, Vec2 z, double k, long* clamp_counter) {
    return theory_value(sampling, z, k, false, clamp_counter);
}

MsrMatrix synthetic_msr(const EffectiveSampling& sampling, const DirectionSet& directions,
                        double k, std::span<const double> sigmas) {
    const int n = directions.count;
    const int m_count = sampling.count;
    if (static_cast<int>(sigmas.size()) != m_count)
        throw std::invalid_argument("synthetic_msr: one sigma per sampling point required");
    if (m_count >= n) throw std::domain_error("synthetic_msr: need M < N");
    const double lambda = 2.0 * M_PI / k;
    for (int a = 0; a < m_count; ++a) {
        for (int b = a + 1; b < m_count; ++b) {
            const double dist = (sampling.points[a] - sampling.points[b]).norm();
            if (dist < 0.25 * lambda)
                throw DataError("synthetic_msr: sampling points closer than lambda/4");
        }
    }
    for (const double s : sigmas)
        if (!(s > 0.0)) throw std::domain_error("synthetic_msr: sigmas must be positive");

    MsrMatrix out;
    out.entries = CMatrix(n, n);
    out.directions = directions;
    out.wavenumber = k;
    for (int m = 0; m < m_count; ++m) {
        std::vector<cplx> u(n);
        double norm_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            const double w = directions.vectors[i].dot(sampling.normals[m]);
            const double phase = k * directions.vectors[i].dot(sampling.points[m]);
            u[i] = w * cplx{std::cos(phase), std::sin(phase)};
            norm_sq += std::norm(u[i]);
        }
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (cplx& v : u) v *= inv;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out.entries(i, j) += sigmas[m] * u[i] * u[j];  // u u^T
    }
    return out;
}

}  // namespace arcmusic
