#include "arcmusic/forward.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "arcmusic/errors.hpp"
#include "arcmusic/parallel.hpp"
#include "arcmusic/specfun.hpp"

namespace arcmusic {

namespace {

// Fundamental-solution split on the cosine-substituted torus. With
// r(t,tau) = |gamma(cos t) - gamma(cos tau)| and the factorization
// r^2 = (cos t - cos tau)^2 rho(t,tau), rho analytic and positive,
//
//   (i/4) H0^1(k r) = (CL/2) [ln(4 sin^2((t-tau)/2)) + ln(4 sin^2((t+tau)/2))] + G,
//   CL = -(1/2pi) J0(k r),
//   G  = -(1/4pi) J0(k r) (ln rho - ln 4) + [i/4 - (1/2pi)(ln(k/2)+gamma_E)] J0(k r)
//        - (1/4) Ytilde(k r),
//
// where Ytilde is the entire part of Y0. G is analytic in (t,tau), so the
// trapezoid rule applies to it; the log kernels get the trigonometric
// log-quadrature. Both log kernels contribute equally for integrands with the
// parity of this solver's basis, which folds the split onto a single kernel.
struct KernelParts {
    cplx log_coeff;  // CL
    cplx smooth;     // G
};

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t h) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

struct NeumannArcSolver::Impl {
    std::vector<ArcCurve> arcs;
    double k = 0.0;
    int nq = 0;      // quadrature half-order; 2*nq angles on the circle
    int modes = 0;   // sine modes per arc (nq - 1)
    double h = 0.0;  // pi / nq
    std::uint64_t tag = 0;

    // Per-arc discretization at t_i = i pi / nq, i = 0..2nq-1.
    struct Disc {
        std::vector<double> t, s;      // angle and s = cos t
        std::vector<Vec2> pos, nrm;    // gamma(s), unit normal
        std::vector<double> wtilde;    // |gamma'(s)| sin t (signed)
    };
    std::vector<Disc> disc;

    std::vector<double> kress;  // R_l at grid offsets l = 0..2nq-1

    // Per (target b, source a) block: combined quadrature weights
    // W_ij = R_|i-j| CL_ij + h G_ij (log part absent for cross blocks),
    // plus the n(x_i).n(y_j) table used by the k^2 term.
    std::vector<CMatrix> weights;
    std::vector<std::vector<double>> normal_dot;

    CMatrix galerkin;  // assembled system, kept for diagnostics
    std::unique_ptr<LuFactor> lu;

    int block(int b, int a) const { return b * static_cast<int>(arcs.size()) + a; }

    KernelParts same_arc_kernel(int a, double t, double tau) const;
    cplx cross_kernel(int b, double t, int a, double tau) const;
    double kress_weight_at(double t, double tau) const;

    void build();
    std::vector<cplx> galerkin_rhs(Vec2 theta) const;
};

KernelParts NeumannArcSolver::Impl::same_arc_kernel(int a, double t, double tau) const {
    const ArcCurve& arc = arcs[a];
    const double sa = std::cos(t), sb = std::cos(tau);
    const Vec2 pa = {arc.x_poly().eval(sa), arc.y_poly().eval(sa)};
    const Vec2 pb = {arc.x_poly().eval(sb), arc.y_poly().eval(sb)};
    const double r = (pa - pb).norm();
    const double z = k * r;
    const double j0 = bessel_j(0, z);
    const double ddx = arc.x_poly().divided_difference(sa, sb);
    const double ddy = arc.y_poly().divided_difference(sa, sb);
    const double rho = ddx * ddx + ddy * ddy;

    KernelParts out;
    out.log_coeff = -j0 / (2.0 * M_PI);
    const cplx ck{-(std::log(0.5 * k) + kEulerGamma) / (2.0 * M_PI), 0.25};
    out.smooth = -(j0 / (4.0 * M_PI)) * (std::log(rho) - std::log(4.0)) + ck * j0 -
                 0.25 * bessel_y0_regular(z);
    return out;
}

cplx NeumannArcSolver::Impl::cross_kernel(int b, double t, int a, double tau) const {
    const Vec2 x = {arcs[b].x_poly().eval(std::cos(t)), arcs[b].y_poly().eval(std::cos(t))};
    const Vec2 y = {arcs[a].x_poly().eval(std::cos(tau)), arcs[a].y_poly().eval(std::cos(tau))};
    const double z = k * (x - y).norm();
    return cplx{0.0, 0.25} * cplx{bessel_j(0, z), bessel_y(0, z)};
}

double NeumannArcSolver::Impl::kress_weight_at(double t, double tau) const {
    double sum = 0.0;
    for (int m = 1; m < nq; ++m) sum += std::cos(m * (t - tau)) / m;
    return -(2.0 * M_PI / nq) * sum - (M_PI / (nq * nq)) * std::cos(nq * (t - tau));
}

void NeumannArcSolver::Impl::build() {
    const int n2 = 2 * nq;
    const int na = static_cast<int>(arcs.size());
    h = M_PI / nq;
    modes = nq - 1;

    disc.resize(na);
    for (int a = 0; a < na; ++a) {
        Disc& d = disc[a];
        d.t.resize(n2);
        d.s.resize(n2);
        d.pos.resize(n2);
        d.nrm.resize(n2);
        d.wtilde.resize(n2);
        const Polynomial dx = arcs[a].x_poly().derivative();
        const Polynomial dy = arcs[a].y_poly().derivative();
        for (int i = 0; i < n2; ++i) {
            const double t = i * h;
            const double s = std::cos(t);
            d.t[i] = t;
            d.s[i] = s;
            d.pos[i] = {arcs[a].x_poly().eval(s), arcs[a].y_poly().eval(s)};
            const Vec2 tan{dx.eval(s), dy.eval(s)};
            d.nrm[i] = tan.normalized().perp();
            d.wtilde[i] = tan.norm() * std::sin(t);
        }
    }

    kress.resize(n2);
    for (int l = 0; l < n2; ++l) kress[l] = kress_weight_at(l * h, 0.0);

    weights.assign(static_cast<std::size_t>(na) * na, CMatrix());
    normal_dot.assign(static_cast<std::size_t>(na) * na, {});
    for (int b = 0; b < na; ++b) {
        for (int a = 0; a < na; ++a) {
            CMatrix w(n2, n2);
            std::vector<double> nn(static_cast<std::size_t>(n2) * n2);
            parallel_for(static_cast<std::size_t>(n2), [&](std::size_t iu) {
                const int i = static_cast<int>(iu);
                for (int j = 0; j < n2; ++j) {
                    nn[iu * n2 + j] = disc[b].nrm[i].dot(disc[a].nrm[j]);
                    if (a == b) {
                        const KernelParts kp = same_arc_kernel(a, disc[b].t[i], disc[a].t[j]);
                        w(i, j) = kress[std::abs(i - j)] * kp.log_coeff + h * kp.smooth;
                    } else {
                        w(i, j) = h * cross_kernel(b, disc[b].t[i], a, disc[a].t[j]);
                    }
                }
            });
            weights[block(b, a)] = std::move(w);
            normal_dot[block(b, a)] = std::move(nn);
        }
    }

    // Galerkin matrix. Per block:
    //   A_MN = -(M h/4) sum_i cos(M t_i) InnerS_N(t_i)
    //          + (k^2 h/4) sum_i sin(M t_i) wtilde_i InnerV_N(t_i),
    //   InnerS_N(t_i) = sum_j W_ij N cos(N tau_j),
    //   InnerV_N(t_i) = sum_j W_ij nn_ij sin(N tau_j) wtilde_j.
    const int p = modes;
    const int dim = na * p;
    // Mode tables on the shared angle grid, used by both integration variables.
    std::vector<double> cos_tab(static_cast<std::size_t>(n2) * p);
    std::vector<double> sin_tab(static_cast<std::size_t>(n2) * p);
    for (int i = 0; i < n2; ++i) {
        for (int m = 1; m <= p; ++m) {
            cos_tab[static_cast<std::size_t>(i) * p + m - 1] = std::cos(m * (i * h));
            sin_tab[static_cast<std::size_t>(i) * p + m - 1] = std::sin(m * (i * h));
        }
    }
    CMatrix a_mat(dim, dim);
    for (int b = 0; b < na; ++b) {
        for (int a = 0; a < na; ++a) {
            const CMatrix& w = weights[block(b, a)];
            const std::vector<double>& nn = normal_dot[block(b, a)];
            CMatrix inner_s(n2, p), inner_v(n2, p);
            parallel_for(static_cast<std::size_t>(n2), [&](std::size_t iu) {
                const int i = static_cast<int>(iu);
                for (int j = 0; j < n2; ++j) {
                    const cplx wij = w(i, j);
                    const cplx wv = wij * nn[iu * n2 + j] * disc[a].wtilde[j];
                    const double* cj = &cos_tab[static_cast<std::size_t>(j) * p];
                    const double* sj = &sin_tab[static_cast<std::size_t>(j) * p];
                    for (int nmode = 1; nmode <= p; ++nmode) {
                        inner_s(i, nmode - 1) += wij * (nmode * cj[nmode - 1]);
                        inner_v(i, nmode - 1) += wv * sj[nmode - 1];
                    }
                }
            });
            parallel_for(static_cast<std::size_t>(p), [&](std::size_t mu) {
                const int mmode = static_cast<int>(mu) + 1;
                for (int nmode = 1; nmode <= p; ++nmode) {
                    cplx s1{0.0, 0.0}, s2{0.0, 0.0};
                    for (int i = 0; i < n2; ++i) {
                        const std::size_t at = static_cast<std::size_t>(i) * p + mmode - 1;
                        s1 += cos_tab[at] * inner_s(i, nmode - 1);
                        s2 += sin_tab[at] * disc[b].wtilde[i] * inner_v(i, nmode - 1);
                    }
                    a_mat(b * p + mmode - 1, a * p + nmode - 1) =
                        -(mmode * h / 4.0) * s1 + (k * k * h / 4.0) * s2;
                }
            });
        }
    }

    galerkin = a_mat;
    lu = std::make_unique<LuFactor>(std::move(a_mat));
    if (lu->cond_estimate() > 1e14)
        throw SolverError("forward solver: discrete system ill-conditioned (estimate " +
                          std::to_string(lu->cond_estimate()) + ")");

    tag = fnv1a(&k, sizeof(k), 1469598103934665603ull);
    tag = fnv1a(&nq, sizeof(nq), tag);
    for (const ArcCurve& arc : arcs) {
        tag = fnv1a(arc.label().data(), arc.label().size(), tag);
        tag = fnv1a(arc.x_poly().coeff.data(), arc.x_poly().coeff.size() * sizeof(double), tag);
        tag = fnv1a(arc.y_poly().coeff.data(), arc.y_poly().coeff.size() * sizeof(double), tag);
    }
}

std::vector<cplx> NeumannArcSolver::Impl::galerkin_rhs(Vec2 theta) const {
    const int n2 = 2 * nq;
    const int na = static_cast<int>(arcs.size());
    const int p = modes;
    std::vector<cplx> rhs(static_cast<std::size_t>(na) * p);
    for (int a = 0; a < na; ++a) {
        std::vector<cplx> g(n2);
        for (int i = 0; i < n2; ++i) {
            const double phase = k * theta.dot(disc[a].pos[i]);
            g[i] = cplx{0.0, k} * theta.dot(disc[a].nrm[i]) * cplx{std::cos(phase), std::sin(phase)};
        }
        for (int mmode = 1; mmode <= p; ++mmode) {
            cplx sum{0.0, 0.0};
            for (int i = 0; i < n2; ++i)
                sum += g[i] * std::sin(mmode * disc[a].t[i]) * disc[a].wtilde[i];
            rhs[a * p + mmode - 1] = 0.5 * h * sum;
        }
    }
    return rhs;
}

NeumannArcSolver::NeumannArcSolver(std::vector<ArcCurve> arcs, double wavenumber, int nodes)
    : impl_(std::make_unique<Impl>()) {
    if (arcs.empty()) throw std::invalid_argument("forward solver: no arcs");
    if (!(wavenumber > 0.0)) throw std::domain_error("forward solver: wavenumber must be > 0");
    if (nodes < 16) throw std::domain_error("forward solver: nodes must be >= 16");
    // Arcs must be pairwise disjoint: coincident points make the coupling
    // kernels singular.
    const int probe = 256;
    for (std::size_t a = 0; a < arcs.size(); ++a) {
        for (std::size_t b = a + 1; b < arcs.size(); ++b) {
            for (int i = 0; i <= probe; ++i) {
                const Vec2 p = arcs[a].point(-1.0 + 2.0 * i / probe);
                for (int j = 0; j <= probe; ++j) {
                    if ((p - arcs[b].point(-1.0 + 2.0 * j / probe)).norm() < 1e-9)
                        throw GeometryError("forward solver: arcs '" + arcs[a].label() + "' and '" +
                                            arcs[b].label() + "' overlap");
                }
            }
        }
    }
    impl_->arcs = std::move(arcs);
    impl_->k = wavenumber;
    impl_->nq = nodes;
    impl_->build();
}

NeumannArcSolver::~NeumannArcSolver() = default;
NeumannArcSolver::NeumannArcSolver(NeumannArcSolver&&) noexcept = default;
NeumannArcSolver& NeumannArcSolver::operator=(NeumannArcSolver&&) noexcept = default;

DensitySolution NeumannArcSolver::solve(Vec2 incident_direction) const {
    const Impl& im = *impl_;
    const int na = static_cast<int>(im.arcs.size());
    const int p = im.modes;
    const int n2 = 2 * im.nq;

    std::vector<cplx> rhs = im.galerkin_rhs(incident_direction);
    im.lu->solve_in_place(rhs);

    DensitySolution d;
    d.incident_direction = incident_direction;
    d.wavenumber = im.k;
    d.node_count = im.nq;
    d.solver_tag = im.tag;
    d.coefficients.resize(na);
    d.node_values.resize(na);
    double worst_tail = 0.0;
    for (int a = 0; a < na; ++a) {
        d.coefficients[a].assign(rhs.begin() + a * p, rhs.begin() + (a + 1) * p);
        // Spectral tail: magnitude of the last decade of modes vs the peak.
        double peak = 0.0, tail = 0.0;
        const int tail_start = std::max(p - std::max(3, p / 10), 0);
        for (int n = 0; n < p; ++n) {
            const double mag = std::abs(d.coefficients[a][n]);
            peak = std::max(peak, mag);
            if (n >= tail_start) tail = std::max(tail, mag);
        }
        worst_tail = std::max(worst_tail, peak > 0.0 ? tail / peak : 0.0);
        // Density values at the quadrature angles.
        d.node_values[a].assign(n2, cplx{0.0, 0.0});
        for (int j = 0; j < n2; ++j) {
            cplx sum{0.0, 0.0};
            for (int nmode = 1; nmode <= p; ++nmode)
                sum += d.coefficients[a][nmode - 1] * std::sin(nmode * im.disc[a].t[j]);
            d.node_values[a][j] = sum;
        }
    }
    d.coefficient_tail = worst_tail;
    d.tail_converged = worst_tail <= 1e-8;
    return d;
}

namespace {

void check_density(const NeumannArcSolver& solver, const DensitySolution& d) {
    if (d.solver_tag != solver.tag() || d.wavenumber != solver.wavenumber() ||
        d.node_count != solver.nodes())
        throw DataError("density does not belong to this solver configuration");
}

}  // namespace

FarFieldSample NeumannArcSolver::far_field(const DensitySolution& density, Vec2 x_hat) const {
    check_density(*this, density);
    const Impl& im = *impl_;
    const int n2 = 2 * im.nq;
    const cplx prefactor = -std::sqrt(im.k / (8.0 * M_PI)) * cplx{M_SQRT1_2, -M_SQRT1_2};
    cplx integral{0.0, 0.0};
    for (std::size_t a = 0; a < im.arcs.size(); ++a) {
        const Impl::Disc& dc = im.disc[a];
        cplx sum{0.0, 0.0};
        for (int j = 0; j < n2; ++j) {
            const double geom = x_hat.dot(dc.nrm[j]) * dc.wtilde[j];
            if (geom == 0.0) continue;
            const double phase = -im.k * x_hat.dot(dc.pos[j]);
            sum += geom * cplx{std::cos(phase), std::sin(phase)} * density.node_values[a][j];
        }
        integral += 0.5 * im.h * sum;
    }
    return {x_hat, density.incident_direction, prefactor * integral, im.k};
}

cplx NeumannArcSolver::scattered_field(const DensitySolution& density, Vec2 x,
                                       bool* near_warning) const {
    check_density(*this, density);
    const Impl& im = *impl_;
    if (near_warning) *near_warning = distance_to_arcs(x) < 1e-3;
    const int n2 = 2 * im.nq;
    cplx total{0.0, 0.0};
    for (std::size_t a = 0; a < im.arcs.size(); ++a) {
        const Impl::Disc& dc = im.disc[a];
        cplx sum{0.0, 0.0};
        for (int j = 0; j < n2; ++j) {
            if (dc.wtilde[j] == 0.0) continue;
            const Vec2 diff = dc.pos[j] - x;
            const double r = diff.norm();
            const cplx h1 = hankel1(1, im.k * r);
            sum += cplx{0.0, 0.25 * im.k} * h1 * (diff.dot(dc.nrm[j]) / r) *
                   density.node_values[a][j] * dc.wtilde[j];
        }
        total += 0.5 * im.h * sum;
    }
    return total;
}

std::pair<cplx, cplx> NeumannArcSolver::scattered_gradient(const DensitySolution& density,
                                                           Vec2 x) const {
    check_density(*this, density);
    const Impl& im = *impl_;
    const int n2 = 2 * im.nq;
    cplx gx{0.0, 0.0}, gy{0.0, 0.0};
    for (std::size_t a = 0; a < im.arcs.size(); ++a) {
        const Impl::Disc& dc = im.disc[a];
        for (int j = 0; j < n2; ++j) {
            if (dc.wtilde[j] == 0.0) continue;
            const Vec2 diff = dc.pos[j] - x;  // y - x
            const double r = diff.norm();
            const double z = im.k * r;
            const cplx h1 = hankel1(1, z);
            const cplx h1p = hankel1(0, z) - h1 / z;
            const double along = diff.dot(dc.nrm[j]) / r;
            // grad_x of H1(kr) (y-x).n / r
            const Vec2 xmy = -1.0 * diff;
            const cplx radial = im.k * h1p * along / r;
            const cplx shape = -h1 / (r * r);
            const cplx weight = cplx{0.0, 0.25 * im.k} * density.node_values[a][j] *
                                dc.wtilde[j] * 0.5 * im.h;
            gx += weight * (radial * xmy.x + shape * (dc.nrm[j].x * r + along * xmy.x));
            gy += weight * (radial * xmy.y + shape * (dc.nrm[j].y * r + along * xmy.y));
        }
    }
    return {gx, gy};
}

cplx NeumannArcSolver::neumann_residual(const DensitySolution& density, int arc_index,
                                        double s) const {
    check_density(*this, density);
    const Impl& im = *impl_;
    const int na = static_cast<int>(im.arcs.size());
    const int n2 = 2 * im.nq;
    if (arc_index < 0 || arc_index >= na) throw std::domain_error("neumann_residual: bad arc index");
    if (!(s > -1.0 && s < 1.0)) throw std::domain_error("neumann_residual: interior parameter required");
    const double t_star = std::acos(s);

    // Tangential-derivative term: sample S(t) = sum_a int Phi(x_b(t), y_a) psi_a' on the
    // target grid, then differentiate its cosine series at t_star.
    std::vector<std::vector<cplx>> dphi(na);
    for (int a = 0; a < na; ++a) {
        dphi[a].assign(n2, cplx{0.0, 0.0});
        for (int j = 0; j < n2; ++j) {
            cplx sum{0.0, 0.0};
            for (int nmode = 1; nmode <= im.modes; ++nmode)
                sum += density.coefficients[a][nmode - 1] * (nmode * std::cos(nmode * im.disc[a].t[j]));
            dphi[a][j] = sum;
        }
    }
    std::vector<cplx> s_samples(n2, cplx{0.0, 0.0});
    for (int a = 0; a < na; ++a) {
        const CMatrix& w = im.weights[im.block(arc_index, a)];
        for (int i = 0; i < n2; ++i) {
            cplx sum{0.0, 0.0};
            for (int j = 0; j < n2; ++j) sum += w(i, j) * dphi[a][j];
            s_samples[i] += 0.5 * sum;
        }
    }
    cplx s_deriv{0.0, 0.0};
    for (int m = 1; m <= im.nq; ++m) {
        cplx beta{0.0, 0.0};
        for (int i = 0; i < n2; ++i) beta += s_samples[i] * std::cos(m * im.disc[arc_index].t[i]);
        beta *= (m == im.nq) ? 1.0 / n2 : 1.0 / im.nq;
        s_deriv += -beta * (m * std::sin(m * t_star));
    }
    const double wt_star = im.arcs[arc_index].speed(s) * std::sin(t_star);
    const cplx term1 = s_deriv / wt_star;

    // k^2 term at the off-grid target: log-quadrature weights evaluated at t_star.
    const Vec2 n_star = im.arcs[arc_index].unit_normal(s);
    cplx term2{0.0, 0.0};
    for (int a = 0; a < na; ++a) {
        const Impl::Disc& dc = im.disc[a];
        cplx sum{0.0, 0.0};
        for (int j = 0; j < n2; ++j) {
            cplx wj;
            if (a == arc_index) {
                const KernelParts kp = im.same_arc_kernel(a, t_star, dc.t[j]);
                wj = im.kress_weight_at(t_star, dc.t[j]) * kp.log_coeff + im.h * kp.smooth;
            } else {
                wj = im.h * im.cross_kernel(arc_index, t_star, a, dc.t[j]);
            }
            sum += wj * n_star.dot(dc.nrm[j]) * density.node_values[a][j] * dc.wtilde[j];
        }
        term2 += 0.5 * im.k * im.k * sum;
    }

    const Vec2 x_star = im.arcs[arc_index].point(s);
    const double phase = im.k * density.incident_direction.dot(x_star);
    const cplx g = cplx{0.0, im.k} * density.incident_direction.dot(n_star) *
                   cplx{std::cos(phase), std::sin(phase)};
    return term1 + term2 - g;
}

cplx NeumannArcSolver::density_value(const DensitySolution& density, int arc_index, double s) const {
    check_density(*this, density);
    const double t = std::acos(std::clamp(s, -1.0, 1.0));
    cplx sum{0.0, 0.0};
    for (int nmode = 1; nmode <= impl_->modes; ++nmode)
        sum += density.coefficients[arc_index][nmode - 1] * std::sin(nmode * t);
    return sum;
}

double NeumannArcSolver::condition_estimate() const { return impl_->lu->cond_estimate(); }
int NeumannArcSolver::arc_count() const { return static_cast<int>(impl_->arcs.size()); }
const ArcCurve& NeumannArcSolver::arc(int index) const { return impl_->arcs.at(index); }
double NeumannArcSolver::wavenumber() const { return impl_->k; }
int NeumannArcSolver::nodes() const { return impl_->nq; }
int NeumannArcSolver::modes_per_arc() const { return impl_->modes; }
std::uint64_t NeumannArcSolver::tag() const { return impl_->tag; }

double NeumannArcSolver::distance_to_arcs(Vec2 x) const {
    double best = 1e300;
    for (const ArcCurve& arc : impl_->arcs) {
        for (int i = 0; i <= 4096; ++i) {
            const double s = -1.0 + 2.0 * i / 4096.0;
            best = std::min(best, (x - arc.point(s)).norm());
        }
    }
    return best;
}

const CMatrix& NeumannArcSolver::galerkin_matrix() const { return impl_->galerkin; }

cplx NeumannArcSolver::kernel_split_value(int arc_index, double t, double tau) const {
    const KernelParts kp = impl_->same_arc_kernel(arc_index, t, tau);
    const double lm = std::log(4.0 * std::pow(std::sin(0.5 * (t - tau)), 2));
    const double lp = std::log(4.0 * std::pow(std::sin(0.5 * (t + tau)), 2));
    return 0.5 * kp.log_coeff * (lm + lp) + kp.smooth;
}

std::vector<double> log_quadrature_weights(int half_order, double t) {
    const int n = half_order;
    std::vector<double> r(2 * n);
    for (int j = 0; j < 2 * n; ++j) {
        const double tj = j * M_PI / n;
        double sum = 0.0;
        for (int m = 1; m < n; ++m) sum += std::cos(m * (t - tj)) / m;
        r[j] = -(2.0 * M_PI / n) * sum - (M_PI / (n * n)) * std::cos(n * (t - tj));
    }
    return r;
}

}  // namespace arcmusic
