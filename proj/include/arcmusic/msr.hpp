#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arcmusic/forward.hpp"
#include "arcmusic/geometry.hpp"
#include "arcmusic/linalg.hpp"
#include "arcmusic/vec2.hpp"

namespace arcmusic {

enum class DirectionScheme {
    uniform,        // theta_l = -[cos, sin](2 pi (l-1)/N); N distinct directions
    paper_formula,  // theta_l = -[cos, sin](2 pi (l-1)/(N-1)); first = last
};

struct DirectionSet {
    int count = 0;
    DirectionScheme scheme = DirectionScheme::uniform;
    std::vector<Vec2> vectors;
};

/// n >= 2 unit incident directions per the chosen scheme.
DirectionSet build_directions(int n, DirectionScheme scheme = DirectionScheme::uniform);

struct NoiseSpec {
    double snr_db = 20.0;       // +inf disables the perturbation
    std::uint64_t seed = 0;
};

/// N x N far-field matrix under the coincident configuration x_hat_j = -theta_j.
struct MsrMatrix {
    CMatrix entries;  // entries(j, l) = u_inf(-theta_j, theta_l)
    DirectionSet directions;
    double wavenumber = 0.0;
    std::optional<NoiseSpec> noise_applied;
};

/// Solves the coupled forward problem on the union of the arcs and fills the
/// MSR matrix column by column (independent incident problems, disjoint
/// columns). Arcs must be pairwise disjoint.
MsrMatrix assemble_msr(const std::vector<ArcCurve>& arcs, double wavenumber,
                       const DirectionSet& directions, int nodes = 128);

/// Same, reusing an already assembled solver.
MsrMatrix assemble_msr(const NeumannArcSolver& solver, const DirectionSet& directions);

/// Additive white Gaussian noise calibrated to the matrix-wide mean power:
/// P = mean |K|^2, P_noise = P / 10^(snr/10), each entry perturbed by an
/// independent circular complex Gaussian. Entries are generated row-major
/// from the seed, so the output is bit-reproducible.
MsrMatrix add_awgn(const MsrMatrix& msr, const NoiseSpec& spec);

/// Full SVD of the response matrix.
SvdResult msr_svd(const MsrMatrix& msr);

/// Number of singular values with sigma_m / sigma_1 >= tau.
/// Throws DataError when sigma_1 is not positive.
int select_rank(std::span<const double> singular_values, double tau = 0.01);

/// ||K - K^T||_F / ||K||_F.
double symmetry_defect(const CMatrix& k);

/// Plain-text matrix dump (rows = observation, columns = incident, entries
/// "re,im"), with a small header carrying N, k, and the direction scheme.
void write_msr(const MsrMatrix& msr, const std::string& path);
MsrMatrix load_msr(const std::string& path);

/// CSV report: m, sigma, sigma_over_sigma1, selected.
std::string singular_value_csv(std::span<const double> singular_values, int selected);

}  // namespace arcmusic
