#include "arcmusic/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace arcmusic {

namespace {

constexpr double kSeriesAsymptoticSeam = 13.0;

void check_order(int order) {
    if (order != 0 && order != 1) throw std::domain_error("bessel: order must be 0 or 1");
}

double j0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int m = 1; m < 80; ++m) {
        term *= -q / (static_cast<double>(m) * m);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

double j1_series(double x) {
    const double q = 0.25 * x * x;
    double term = 0.5 * x, sum = term;
    for (int m = 1; m < 80; ++m) {
        term *= -q / (static_cast<double>(m) * (m + 1.0));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

// Entire parts of the ascending Y series:
//   Y0 = (2/pi)(ln(x/2)+gamma) J0 + y0reg
//   Y1 = (2/pi)(ln(x/2)+gamma) J1 - 2/(pi x) + y1sum
double y0_regular_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, harmonic = 0.0, sum = 0.0;
    for (int m = 1; m < 80; ++m) {
        term *= -q / (static_cast<double>(m) * m);
        harmonic += 1.0 / m;
        sum += -term * harmonic;  // (-1)^{m+1} H_m q^m/(m!)^2
        if (std::abs(term) * harmonic < 1e-17 * (std::abs(sum) + 1.0) + 1e-300) break;
    }
    return (2.0 / M_PI) * sum;
}

double y1_entire_sum(double x) {
    // -(1/pi) sum_{m>=0} (-1)^m (H_m + H_{m+1}) (x/2)^{2m+1} / (m! (m+1)!)
    const double q = 0.25 * x * x;
    double term = 0.5 * x;  // (x/2)^{2m+1}/(m!(m+1)!) at m=0
    double hm = 0.0, hm1 = 1.0;
    double sum = term * (hm + hm1);
    for (int m = 1; m < 80; ++m) {
        term *= -q / (static_cast<double>(m) * (m + 1.0));
        hm += 1.0 / m;
        hm1 += 1.0 / (m + 1.0);
        sum += term * (hm + hm1);
        if (std::abs(term) * (hm + hm1) < 1e-17 * (std::abs(sum) + 1.0) + 1e-300) break;
    }
    return -sum / M_PI;
}

// Hankel asymptotic expansion, x > seam:
//   J = sqrt(2/(pi x)) (P cos chi - Q sin chi),  Y = sqrt(2/(pi x)) (P sin chi + Q cos chi),
//   chi = x - (2 nu + 1) pi/4, terms a_m = prod_{j<=m} (4 nu^2 - (2j-1)^2) / (m! 8^m).
void hankel_pq(int order, double x, double& p, double& q) {
    const double mu = 4.0 * order * order;
    p = 1.0;
    q = 0.0;
    double term = 1.0;
    double prev = 1e300;
    for (int m = 1; m < 40; ++m) {
        term *= (mu - (2.0 * m - 1.0) * (2.0 * m - 1.0)) / (8.0 * m * x);
        const double mag = std::abs(term);
        if (mag > prev) break;  // optimal truncation
        prev = mag;
        if (m % 2 == 1)
            q += (m % 4 == 1) ? term : -term;
        else
            p += (m % 4 == 2) ? -term : term;
        if (mag < 1e-18) break;
    }
}

double j_asymptotic(int order, double x) {
    double p, q;
    hankel_pq(order, x, p, q);
    const double chi = x - (2.0 * order + 1.0) * M_PI / 4.0;
    return std::sqrt(2.0 / (M_PI * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double y_asymptotic(int order, double x) {
    double p, q;
    hankel_pq(order, x, p, q);
    const double chi = x - (2.0 * order + 1.0) * M_PI / 4.0;
    return std::sqrt(2.0 / (M_PI * x)) * (p * std::sin(chi) + q * std::cos(chi));
}

}  // namespace

double bessel_j(int order, double x) {
    check_order(order);
    if (x < 0.0) throw std::domain_error("bessel_j: negative argument");
    if (x <= kSeriesAsymptoticSeam) return order == 0 ? j0_series(x) : j1_series(x);
    return j_asymptotic(order, x);
}

double bessel_y(int order, double x) {
    check_order(order);
    if (!(x > 0.0)) throw std::domain_error("bessel_y: argument must be > 0");
    if (x <= kSeriesAsymptoticSeam) {
        const double lg = std::log(0.5 * x) + kEulerGamma;
        if (order == 0) return (2.0 / M_PI) * lg * j0_series(x) + y0_regular_series(x);
        return (2.0 / M_PI) * lg * j1_series(x) - 2.0 / (M_PI * x) + y1_entire_sum(x);
    }
    return y_asymptotic(order, x);
}

double bessel_y0_regular(double x) {
    if (x < 0.0) throw std::domain_error("bessel_y0_regular: negative argument");
    if (x <= kSeriesAsymptoticSeam) return y0_regular_series(x);
    return bessel_y(0, x) - (2.0 / M_PI) * (std::log(0.5 * x) + kEulerGamma) * bessel_j(0, x);
}

cplx hankel1(int order, double x) { return {bessel_j(order, x), bessel_y(order, x)}; }

cplx lemma_average(std::span<const Vec2> directions, Vec2 xi, Vec2 x, double k) {
    if (directions.size() < 2) throw std::domain_error("lemma_average: need at least 2 directions");
    cplx sum{0.0, 0.0};
    for (const Vec2& th : directions) {
        const double w = th.dot(xi);
        const double phase = k * th.dot(x);
        sum += w * cplx{std::cos(phase), std::sin(phase)};
    }
    return sum / static_cast<double>(directions.size());
}

cplx lemma_closed_form(Vec2 xi, Vec2 x, double k) {
    const double r = x.norm();
    if (r == 0.0) return {0.0, 0.0};  // unique continuous extension: J1(0) = 0
    const double radial = (x.x * xi.x + x.y * xi.y) / r;
    return cplx{0.0, 1.0} * radial * bessel_j(1, k * r);
}

}  // namespace arcmusic
