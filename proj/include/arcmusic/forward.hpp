#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "arcmusic/geometry.hpp"
#include "arcmusic/linalg.hpp"
#include "arcmusic/vec2.hpp"

namespace arcmusic {

/// Jump of the total field across the arc(s), solved for one plane-wave
/// incidence. The density is expanded in sine modes of the cosine-substituted
/// parameter, psi(gamma(cos t)) = sum_n a_n sin(n t), which builds the
/// square-root endpoint decay into the representation: psi vanishes at both
/// arc tips by construction.
struct DensitySolution {
    std::vector<std::vector<cplx>> coefficients;  // per arc, sine-mode coefficients a_n (n = 1..P)
    std::vector<std::vector<cplx>> node_values;   // per arc, density at the 2*nodes quadrature angles
    Vec2 incident_direction;
    double wavenumber = 0.0;
    int node_count = 0;
    std::uint64_t solver_tag = 0;   // fingerprint of the solver that produced this density
    double coefficient_tail = 0.0;  // max over arcs of tail-mode magnitude / peak magnitude
    bool tail_converged = true;     // false = accuracy warning: tail above 1e-8 at this resolution
};

/// One far-field evaluation u_inf(x_hat, theta; k).
struct FarFieldSample {
    Vec2 observation_direction;
    Vec2 incident_direction;
    cplx value;
    double wavenumber = 0.0;
};

/// Direct scattering solver for sound-hard (Neumann) open arcs.
///
/// Formulation: the scattered field is represented as a double-layer
/// potential over the arc with density psi (the field jump), and the Neumann
/// condition yields a hypersingular equation T psi = d(u_inc)/dn on the arc.
/// T is applied in its Maue-regularized form
///
///     (T psi)(x) = d/ds_x  S[dpsi/ds](x) + k^2 S_nn[psi](x),
///
/// where S is the single-layer with the Helmholtz kernel and S_nn carries an
/// n(x).n(y) weight, so only logarithmic singularities remain. Discretely:
/// cosine substitution s = cos t maps the arc to a 2pi-periodic problem; the
/// density uses the sine basis, the test space the same; the log kernel is
/// split off analytically and integrated with the classical trigonometric
/// log-quadrature, the analytic remainder with the trapezoid rule. For
/// analytic arcs every piece converges spectrally.
///
/// Multiple arcs form one coupled block system (mutual scattering included);
/// off-diagonal blocks have smooth kernels and use plain trapezoid weights.
class NeumannArcSolver {
public:
    /// Assembles and factorizes the collocated Galerkin system.
    /// nodes is the quadrature half-order (2*nodes angles on the full circle,
    /// nodes-1 density modes per arc); nodes >= 16. Throws SolverError when
    /// the discrete system's conditioning proxy exceeds 1e14.
    NeumannArcSolver(std::vector<ArcCurve> arcs, double wavenumber, int nodes = 128);
    ~NeumannArcSolver();
    NeumannArcSolver(NeumannArcSolver&&) noexcept;
    NeumannArcSolver& operator=(NeumannArcSolver&&) noexcept;

    /// Solves for the density under plane-wave incidence exp(i k theta.x).
    DensitySolution solve(Vec2 incident_direction) const;

    /// u_inf(x_hat) = -sqrt(k/(8 pi)) e^{-i pi/4} int_Gamma x_hat.n(y) e^{-ik x_hat.y} psi(y) ds(y).
    FarFieldSample far_field(const DensitySolution& density, Vec2 x_hat) const;

    /// Scattered field at a point off the arc (diagnostic). Sets *near_warning
    /// when x is closer than 1e-3 to an arc (plain quadrature degrades there).
    cplx scattered_field(const DensitySolution& density, Vec2 x, bool* near_warning = nullptr) const;

    /// Gradient of the scattered field at a point off the arc, from the
    /// analytically differentiated kernel.
    std::pair<cplx, cplx> scattered_gradient(const DensitySolution& density, Vec2 x) const;

    /// A-posteriori Neumann residual (T psi - du_inc/dn) at arc parameter s,
    /// evaluated off the collocation structure (spectral interpolation in the
    /// target variable, direct log-quadrature in the source variable).
    cplx neumann_residual(const DensitySolution& density, int arc_index, double s) const;

    /// psi(gamma_a(s)) synthesized from the mode coefficients.
    cplx density_value(const DensitySolution& density, int arc_index, double s) const;

    double condition_estimate() const;
    int arc_count() const;
    const ArcCurve& arc(int index) const;
    double wavenumber() const;
    int nodes() const;
    int modes_per_arc() const;
    std::uint64_t tag() const;
    double distance_to_arcs(Vec2 x) const;

    /// Diagnostics. galerkin_matrix exposes the assembled (complex symmetric)
    /// system; kernel_split_value reassembles Phi(x(t), y(tau)) on one arc
    /// from the solver's log/analytic kernel split, which must agree with the
    /// fundamental solution evaluated directly.
    const CMatrix& galerkin_matrix() const;
    cplx kernel_split_value(int arc_index, double t, double tau) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Weights R_j(t) of the trigonometric quadrature for the periodic log kernel:
/// int_0^{2pi} f(tau) ln(4 sin^2((t-tau)/2)) dtau ~= sum_j R_j(t) f(j pi/n),
/// exact for trigonometric polynomials up to degree n.
std::vector<double> log_quadrature_weights(int half_order, double t);

}  // namespace arcmusic
