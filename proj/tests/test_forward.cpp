#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "arcmusic/errors.hpp"
#include "arcmusic/forward.hpp"
#include "arcmusic/specfun.hpp"

using namespace arcmusic;

namespace {

ArcCurve flat_crack() { return ArcCurve::straight_segment("flat", {-1.0, 0.0}, {1.0, 0.0}); }

double far_field_row_change(const ArcCurve& arc, double k, Vec2 theta, int nodes_lo, int nodes_hi) {
    const NeumannArcSolver lo({arc}, k, nodes_lo);
    const NeumannArcSolver hi({arc}, k, nodes_hi);
    const DensitySolution dl = lo.solve(theta);
    const DensitySolution dh = hi.solve(theta);
    double max_diff = 0.0, max_mag = 0.0;
    for (int j = 0; j < 64; ++j) {
        const Vec2 xhat = Vec2::from_angle(2.0 * M_PI * j / 64.0);
        const cplx a = lo.far_field(dl, xhat).value;
        const cplx b = hi.far_field(dh, xhat).value;
        max_diff = std::max(max_diff, std::abs(a - b));
        max_mag = std::max(max_mag, std::abs(b));
    }
    return max_diff / max_mag;
}

}  // namespace

TEST_CASE("log-quadrature integrates its Fourier modes exactly") {
    const int n = 32;
    for (const double t : {0.0, 0.37, 1.9, 3.3}) {
        const std::vector<double> r = log_quadrature_weights(n, t);
        // Constant: integral of the log kernel over a period vanishes.
        double sum = 0.0;
        for (double w : r) sum += w;
        CHECK(std::abs(sum) <= 1e-12);
        // cos(m tau) integrates to -(2 pi / m) cos(m t).
        for (int m = 1; m <= 5; ++m) {
            double acc = 0.0;
            for (int j = 0; j < 2 * n; ++j) acc += r[j] * std::cos(m * (j * M_PI / n));
            CHECK(acc == doctest::Approx(-(2.0 * M_PI / m) * std::cos(m * t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("kernel split reassembles the fundamental solution on a curved arc") {
    const NeumannArcSolver solver({ArcCurve::preset_gamma2()}, 7.3, 24);
    const ArcCurve g2 = ArcCurve::preset_gamma2();
    for (const auto& [t, tau] : std::vector<std::pair<double, double>>{
             {0.4, 2.9}, {1.1, 1.7}, {2.8, 0.3}, {0.05, 3.1}, {2.2, 5.9}}) {
        const Vec2 x = g2.point(std::cos(t));
        const Vec2 y = g2.point(std::cos(tau));
        const double z = 7.3 * (x - y).norm();
        const cplx direct = cplx{0.0, 0.25} * hankel1(0, z);
        CHECK(std::abs(solver.kernel_split_value(0, t, tau) - direct) <= 1e-12);
    }
}

TEST_CASE("flat crack at vanishing wavenumber reduces to the exact diagonal") {
    // For the straight crack the tangential-derivative term has the closed
    // form -(pi/4) M delta_MN in this basis; at k = 1e-8 everything else is
    // below 1e-14.
    const NeumannArcSolver solver({flat_crack()}, 1e-8, 32);
    const CMatrix& a = solver.galerkin_matrix();
    for (int m = 0; m < a.rows(); ++m) {
        for (int n = 0; n < a.cols(); ++n) {
            if (m == n) {
                CHECK(a(m, n).real() == doctest::Approx(-(M_PI / 4.0) * (m + 1)).epsilon(1e-10));
                CHECK(std::abs(a(m, n).imag()) <= 1e-10);
            } else {
                CHECK(std::abs(a(m, n)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("assembled system is complex symmetric") {
    const NeumannArcSolver solver({ArcCurve::preset_gamma1()}, 2.0 * M_PI / 0.8, 32);
    const CMatrix& a = solver.galerkin_matrix();
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            worst = std::max(worst, std::abs(a(i, j) - a(j, i)));
            scale = std::max(scale, std::abs(a(i, j)));
        }
    CHECK(worst <= 1e-12 * scale);
}

TEST_CASE("density coefficients decay spectrally on analytic arcs") {
    const NeumannArcSolver solver({ArcCurve::preset_gamma1()}, 2.0 * M_PI / 0.4, 64);
    const DensitySolution d = solver.solve(Vec2::from_angle(0.7));
    CHECK(d.tail_converged);
    double peak = 0.0;
    for (const cplx& c : d.coefficients[0]) peak = std::max(peak, std::abs(c));
    bool below = false;
    for (std::size_t n = 0; n + 1 < d.coefficients[0].size(); ++n) {
        if (std::abs(d.coefficients[0][n]) < 1e-12 * peak) {
            below = true;
            break;
        }
    }
    CHECK(below);
}

TEST_CASE("far-field self-convergence under node doubling") {
    CHECK(far_field_row_change(ArcCurve::preset_gamma1(), 2.0 * M_PI / 0.4, Vec2::from_angle(0.3),
                               64, 128) <= 1e-8);
}

TEST_CASE("straight crack, normal incidence: density even in the parameter") {
    const NeumannArcSolver solver({flat_crack()}, 3.0, 48);
    const DensitySolution d = solver.solve({0.0, -1.0});
    for (double s = 0.05; s < 1.0; s += 0.1) {
        const cplx left = solver.density_value(d, 0, -s);
        const cplx right = solver.density_value(d, 0, s);
        CHECK(std::abs(left - right) <= 1e-10);
    }
}

TEST_CASE("double-layer jump relation recovers the solved density") {
    const double k = 2.0;  // lambda = pi
    const ArcCurve g1 = ArcCurve::preset_gamma1();
    const NeumannArcSolver solver({g1}, k, 128);
    const DensitySolution d = solver.solve(Vec2::from_angle(-0.4));
    const double s = 0.31;
    const Vec2 y = g1.point(s);
    const Vec2 n = g1.unit_normal(s);
    auto jump_at = [&](double h) {
        return solver.scattered_field(d, y + h * n) - solver.scattered_field(d, y - h * n);
    };
    // Two Richardson levels in h kill the O(h) and O(h^2) terms.
    const cplx f1 = jump_at(0.08), f2 = jump_at(0.04), f3 = jump_at(0.02);
    const cplx r1 = 2.0 * f2 - f1, r2 = 2.0 * f3 - f2;
    const cplx extrap = (4.0 * r2 - r1) / 3.0;
    const cplx psi = solver.density_value(d, 0, s);
    CHECK(std::abs(extrap - (-psi)) <= 0.02 * std::max(std::abs(psi), 0.1));
}

TEST_CASE("Neumann condition holds in the limit off the arc") {
    // Independent of the regularized operator: the total-field normal
    // derivative, from the analytically differentiated double-layer kernel,
    // must sink toward zero as the evaluation point approaches the arc.
    const double k = 2.0;
    const ArcCurve g1 = ArcCurve::preset_gamma1();
    const NeumannArcSolver solver({g1}, k, 256);
    const Vec2 theta = Vec2::from_angle(1.1);
    const DensitySolution d = solver.solve(theta);
    const double s = -0.22;
    const Vec2 y = g1.point(s);
    const Vec2 n = g1.unit_normal(s);
    auto total_normal_derivative = [&](double h) {
        const Vec2 x = y + h * n;
        const auto [gx, gy] = solver.scattered_gradient(d, x);
        const double phase = k * theta.dot(x);
        const cplx du_inc = cplx{0.0, k} * cplx{std::cos(phase), std::sin(phase)};
        return (gx + du_inc * theta.x) * n.x + (gy + du_inc * theta.y) * n.y;
    };
    double prev = 1e300;
    for (const double h : {0.16, 0.08, 0.04, 0.02}) {
        const double res = std::abs(total_normal_derivative(h));
        CHECK(res <= 0.75 * prev + 1e-9);
        prev = res;
    }
    CHECK(prev <= 0.05 * k);
}

TEST_CASE("a-posteriori Neumann residual at off-collocation points") {
    const double k = 2.0 * M_PI / 0.4;
    for (const ArcCurve& arc : {ArcCurve::preset_gamma1(), ArcCurve::preset_gamma2()}) {
        const NeumannArcSolver solver({arc}, k, 128);
        const DensitySolution d = solver.solve(Vec2::from_angle(2.3));
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double s = -0.95 + 1.9 * (i + 0.318) / 50.0;
            worst = std::max(worst, std::abs(solver.neumann_residual(d, 0, s)));
        }
        CHECK(worst / k <= 1e-6);
    }
}

TEST_CASE("scattered field matches the far-field expansion at distance 1000") {
    const double k = 2.0 * M_PI / 0.8;
    const NeumannArcSolver solver({ArcCurve::preset_gamma1()}, k, 96);
    const DensitySolution d = solver.solve(Vec2::from_angle(0.9));
    for (const double alpha : {0.0, 1.3, 2.6, 4.4}) {
        const Vec2 xhat = Vec2::from_angle(alpha);
        const double radius = 1000.0;
        const cplx us = solver.scattered_field(d, radius * xhat);
        const cplx expansion =
            cplx{std::cos(k * radius), std::sin(k * radius)} / std::sqrt(radius) *
            solver.far_field(d, xhat).value;
        CHECK(std::abs(us - expansion) <= 1e-2 * std::abs(expansion));
    }
}

TEST_CASE("scattered field satisfies the Helmholtz equation away from the arc") {
    const double k = 2.0;
    const NeumannArcSolver solver({ArcCurve::preset_gamma1()}, k, 64);
    const DensitySolution d = solver.solve(Vec2::from_angle(0.2));
    const Vec2 x0{-0.2, 0.9};  // 0.5 off the arc midpoint
    const double h = 1e-3;
    const cplx center = solver.scattered_field(d, x0);
    const cplx lap = (solver.scattered_field(d, {x0.x + h, x0.y}) +
                      solver.scattered_field(d, {x0.x - h, x0.y}) +
                      solver.scattered_field(d, {x0.x, x0.y + h}) +
                      solver.scattered_field(d, {x0.x, x0.y - h}) - 4.0 * center) /
                     (h * h);
    CHECK(std::abs(lap + k * k * center) <= 1e-4 * std::abs(center));
}

TEST_CASE("weak scattering in the low-frequency limit") {
    auto max_far_field = [](double k) {
        const NeumannArcSolver solver({ArcCurve::preset_gamma1()}, k, 64);
        const DensitySolution d = solver.solve({1.0, 0.0});
        double best = 0.0;
        for (int j = 0; j < 16; ++j)
            best = std::max(best, std::abs(solver.far_field(d, Vec2::from_angle(2.0 * M_PI * j / 16.0)).value));
        return best;
    };
    const double at_1e3 = max_far_field(1e-3);
    const double at_1e4 = max_far_field(1e-4);
    CHECK(at_1e3 <= 1e-1);
    CHECK(at_1e4 < at_1e3);
}

TEST_CASE("geometric zero: observation direction orthogonal to every normal") {
    const NeumannArcSolver solver({flat_crack()}, 5.0, 32);
    const DensitySolution d = solver.solve(Vec2::from_angle(0.77));
    const cplx u = solver.far_field(d, {1.0, 0.0}).value;  // x_hat . n == 0 along the arc
    CHECK(u == cplx{0.0, 0.0});
}

TEST_CASE("zero density produces zero fields") {
    const NeumannArcSolver solver({ArcCurve::preset_gamma1()}, 4.0, 32);
    DensitySolution d = solver.solve({1.0, 0.0});
    for (auto& arc_coeff : d.coefficients) arc_coeff.assign(arc_coeff.size(), cplx{0.0, 0.0});
    for (auto& arc_vals : d.node_values) arc_vals.assign(arc_vals.size(), cplx{0.0, 0.0});
    CHECK(solver.far_field(d, {0.0, 1.0}).value == cplx{0.0, 0.0});
    CHECK(solver.scattered_field(d, {2.0, 2.0}) == cplx{0.0, 0.0});
}

TEST_CASE("density/solver consistency checks") {
    const NeumannArcSolver a({ArcCurve::preset_gamma1()}, 4.0, 32);
    const NeumannArcSolver b({ArcCurve::preset_gamma1()}, 5.0, 32);
    const DensitySolution d = a.solve({1.0, 0.0});
    CHECK_THROWS_AS(b.far_field(d, {0.0, 1.0}), DataError);
    CHECK_THROWS_AS(b.scattered_field(d, {1.0, 1.0}), DataError);
}

TEST_CASE("near-field warning flag") {
    const ArcCurve g1 = ArcCurve::preset_gamma1();
    const NeumannArcSolver solver({g1}, 4.0, 32);
    const DensitySolution d = solver.solve({1.0, 0.0});
    bool warn = false;
    solver.scattered_field(d, g1.point(0.1) + Vec2{0.0, 5e-4}, &warn);
    CHECK(warn);
    solver.scattered_field(d, {5.0, 5.0}, &warn);
    CHECK_FALSE(warn);
}

TEST_CASE("overlapping arcs are rejected") {
    CHECK_THROWS_AS(NeumannArcSolver({ArcCurve::preset_gamma1(), ArcCurve::preset_gamma1()}, 4.0, 24),
                    GeometryError);
}

TEST_CASE("under-resolved solve carries an accuracy warning") {
    const NeumannArcSolver solver({ArcCurve::preset_gamma2()}, 2.0 * M_PI / 0.2, 16);
    const DensitySolution d = solver.solve({0.0, 1.0});
    CHECK_FALSE(d.tail_converged);
    CHECK(d.coefficient_tail > 1e-8);
}

TEST_CASE("reciprocity for non-coincident direction pairs") {
    const double k = 2.0 * M_PI / 0.4;
    const NeumannArcSolver solver({ArcCurve::preset_gamma1()}, k, 96);
    for (int i = 0; i < 8; ++i) {
        const Vec2 theta = Vec2::from_angle(0.21 + 0.73 * i);
        const Vec2 xhat = Vec2::from_angle(1.07 + 0.51 * i);
        const cplx fwd = solver.far_field(solver.solve(theta), xhat).value;
        const cplx rev = solver.far_field(solver.solve(-xhat), -theta).value;
        CHECK(std::abs(fwd - rev) <= 1e-6 * std::max(std::abs(fwd), 1e-6));
    }
}

TEST_CASE("boundary condition holds on randomized smooth arcs") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> coeff(-0.4, 0.4);
    const double k = 2.0 * M_PI / 0.5;
    int accepted = 0;
    while (accepted < 3) {
        Polynomial x{{coeff(rng), 0.6 + 0.4 * std::abs(coeff(rng)), coeff(rng), coeff(rng)}};
        Polynomial y{{coeff(rng), coeff(rng), coeff(rng), coeff(rng)}};
        try {
            const ArcCurve arc("random", std::move(x), std::move(y));
            const NeumannArcSolver solver({arc}, k, 96);
            const DensitySolution d = solver.solve(Vec2::from_angle(coeff(rng) * 7.0));
            double worst = 0.0;
            for (int i = 0; i < 20; ++i) {
                const double s = -0.9 + 1.8 * (i + 0.53) / 20.0;
                worst = std::max(worst, std::abs(solver.neumann_residual(d, 0, s)));
            }
            CHECK(worst / k <= 1e-6);
            ++accepted;
        } catch (const GeometryError&) {
            // draw again: the random coefficients produced a cusp or crossing
        }
    }
}

TEST_CASE("two disjoint arcs couple through one block system") {
    const double k = 2.0 * M_PI / 0.8;
    const NeumannArcSolver pair({ArcCurve::preset_gamma1(), ArcCurve::preset_gamma2()}, k, 48);
    CHECK(pair.arc_count() == 2);
    const DensitySolution d = pair.solve(Vec2::from_angle(0.5));
    REQUIRE(d.coefficients.size() == 2);
    // Mutual scattering: the pair response differs from the sum of the
    // single-arc responses.
    const NeumannArcSolver only1({ArcCurve::preset_gamma1()}, k, 48);
    const NeumannArcSolver only2({ArcCurve::preset_gamma2()}, k, 48);
    const Vec2 xhat = Vec2::from_angle(2.0);
    const cplx coupled = pair.far_field(d, xhat).value;
    const cplx superposed = only1.far_field(only1.solve(Vec2::from_angle(0.5)), xhat).value +
                            only2.far_field(only2.solve(Vec2::from_angle(0.5)), xhat).value;
    CHECK(std::abs(coupled - superposed) > 1e-4 * std::abs(coupled));
    // And the coupled solve still satisfies the boundary condition.
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double s = -0.9 + 1.8 * (i + 0.41) / 10.0;
        worst = std::max(worst, std::abs(pair.neumann_residual(d, 0, s)));
        worst = std::max(worst, std::abs(pair.neumann_residual(d, 1, s)));
    }
    CHECK(worst / k <= 1e-6);
}
