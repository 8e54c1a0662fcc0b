#include "arcmusic/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "arcmusic/errors.hpp"

namespace arcmusic {

namespace {

// 32-point Gauss-Legendre rule on [-1,1], nodes via Newton on the Legendre
// recurrence. Built once; accurate to ~1e-15.
struct GaussRule {
    std::array<double, 32> node{};
    std::array<double, 32> weight{};
    GaussRule() {
        const int n = 32;
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                pp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            node[i] = -x;
            node[n - 1 - i] = x;
            weight[i] = weight[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
        }
    }
};

const GaussRule& gauss32() {
    static const GaussRule rule;
    return rule;
}

double integrate_panel(const Polynomial& dx, const Polynomial& dy, double a, double b) {
    const GaussRule& g = gauss32();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < 32; ++i) {
        const double s = mid + half * g.node[i];
        sum += g.weight[i] * std::hypot(dx.eval(s), dy.eval(s));
    }
    return half * sum;
}

// Composite Gauss-Legendre with panel doubling until the value settles.
double integrate_speed(const Polynomial& dx, const Polynomial& dy, double a, double b) {
    double prev = integrate_panel(dx, dy, a, b);
    for (int panels = 2; panels <= 1024; panels *= 2) {
        double cur = 0.0;
        const double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p) cur += integrate_panel(dx, dy, a + p * h, a + (p + 1) * h);
        if (std::abs(cur - prev) <= 1e-13 * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_coeff_list(const std::string& text, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("arc file: bad number '" + item + "' in " + key);
        }
        if (pos != item.size())
            throw std::invalid_argument("arc file: bad number '" + item + "' in " + key);
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("arc file: empty coefficient list " + key);
    return out;
}

}  // namespace

double Polynomial::eval(double s) const {
    double v = 0.0;
    for (std::size_t i = coeff.size(); i-- > 0;) v = v * s + coeff[i];
    return v;
}

Polynomial Polynomial::derivative() const {
    Polynomial d;
    if (coeff.size() <= 1) {
        d.coeff = {0.0};
        return d;
    }
    d.coeff.resize(coeff.size() - 1);
    for (std::size_t i = 1; i < coeff.size(); ++i) d.coeff[i - 1] = coeff[i] * static_cast<double>(i);
    return d;
}

double Polynomial::divided_difference(double a, double b) const {
    // (p(a)-p(b))/(a-b) = sum_q c_q sum_{r<q} a^r b^{q-1-r}; exact at a == b.
    double total = 0.0;
    for (std::size_t q = 1; q < coeff.size(); ++q) {
        double inner = 0.0;
        double ar = 1.0;  // a^r
        for (std::size_t r = 0; r < q; ++r) {
            double bp = 1.0;  // b^{q-1-r}
            for (std::size_t t = 0; t < q - 1 - r; ++t) bp *= b;
            inner += ar * bp;
            ar *= a;
        }
        total += coeff[q] * inner;
    }
    return total;
}

Polynomial Polynomial::compose_affine(double shift, double scale) const {
    // Horner in polynomial arithmetic: q = (...(c_n * u + c_{n-1}) * u + ...), u = shift + scale s.
    std::vector<double> q{0.0};
    for (std::size_t i = coeff.size(); i-- > 0;) {
        std::vector<double> next(q.size() + 1, 0.0);
        for (std::size_t j = 0; j < q.size(); ++j) {
            next[j] += q[j] * shift;
            next[j + 1] += q[j] * scale;
        }
        next[0] += coeff[i];
        q = std::move(next);
    }
    while (q.size() > 1 && q.back() == 0.0) q.pop_back();
    return Polynomial{q};
}

ArcCurve::ArcCurve(std::string label, Polynomial x, Polynomial y)
    : label_(std::move(label)), x_(std::move(x)), y_(std::move(y)) {
    if (x_.coeff.empty() || y_.coeff.empty())
        throw std::invalid_argument("arc '" + label_ + "': empty coordinate polynomial");
    dx_ = x_.derivative();
    dy_ = y_.derivative();
    validate();
    length_ = integrate_speed(dx_, dy_, -1.0, 1.0);
}

ArcCurve ArcCurve::from_domain(std::string label, Polynomial x, Polynomial y, double s_min,
                               double s_max) {
    if (!(s_min < s_max)) throw std::invalid_argument("arc domain: need s_min < s_max");
    const double shift = 0.5 * (s_min + s_max);
    const double scale = 0.5 * (s_max - s_min);
    return ArcCurve(std::move(label), x.compose_affine(shift, scale), y.compose_affine(shift, scale));
}

ArcCurve ArcCurve::straight_segment(std::string label, Vec2 a, Vec2 b) {
    const Vec2 mid = 0.5 * (a + b), half = 0.5 * (b - a);
    return ArcCurve(std::move(label), Polynomial{{mid.x, half.x}}, Polynomial{{mid.y, half.y}});
}

ArcCurve ArcCurve::preset_gamma1() {
    return from_domain("gamma1", Polynomial{{-0.2, 1.0}}, Polynomial{{0.4, 0.0, -0.5}}, -0.5, 0.5);
}

ArcCurve ArcCurve::preset_gamma2() {
    return from_domain("gamma2", Polynomial{{0.2, 1.0}}, Polynomial{{-0.4, 0.0, 1.0, 1.0}}, -0.5, 0.5);
}

ArcCurve ArcCurve::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open arc file: " + path);
    std::string label = path;
    std::vector<double> xc, yc;
    double s_min = -1.0, s_max = 1.0;
    bool have_x = false, have_y = false;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("arc file: expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "label") {
            label = value;
        } else if (key == "x_coeffs") {
            xc = parse_coeff_list(value, key);
            have_x = true;
        } else if (key == "y_coeffs") {
            yc = parse_coeff_list(value, key);
            have_y = true;
        } else if (key == "s_min") {
            s_min = std::stod(value);
        } else if (key == "s_max") {
            s_max = std::stod(value);
        } else {
            throw std::invalid_argument("arc file: unknown key '" + key + "'");
        }
    }
    if (!have_x || !have_y) throw std::invalid_argument("arc file: x_coeffs and y_coeffs required");
    return from_domain(label, Polynomial{xc}, Polynomial{yc}, s_min, s_max);
}

ArcCurve ArcCurve::resolve(const std::string& label_or_path) {
    std::string low = label_or_path;
    std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
    if (low == "gamma1" || low == "g1") return preset_gamma1();
    if (low == "gamma2" || low == "g2") return preset_gamma2();
    return load(label_or_path);
}

Vec2 ArcCurve::point(double s) const {
    if (s < -1.0 - 1e-12 || s > 1.0 + 1e-12)
        throw std::domain_error("arc parameter " + std::to_string(s) + " outside [-1,1]");
    s = std::clamp(s, -1.0, 1.0);
    return {x_.eval(s), y_.eval(s)};
}

Vec2 ArcCurve::tangent(double s) const {
    if (s < -1.0 - 1e-12 || s > 1.0 + 1e-12)
        throw std::domain_error("arc parameter " + std::to_string(s) + " outside [-1,1]");
    s = std::clamp(s, -1.0, 1.0);
    return {dx_.eval(s), dy_.eval(s)};
}

Vec2 ArcCurve::unit_tangent(double s) const {
    const Vec2 t = tangent(s);
    const double n = t.norm();
    if (n < 1e-14) throw GeometryError("arc '" + label_ + "': vanishing derivative at s=" + std::to_string(s));
    return {t.x / n, t.y / n};
}

Vec2 ArcCurve::unit_normal(double s) const { return unit_tangent(s).perp(); }

double ArcCurve::speed(double s) const { return tangent(s).norm(); }

double ArcCurve::length_to(double s) const {
    if (s <= -1.0) return 0.0;
    if (s >= 1.0) return length_;
    return integrate_speed(dx_, dy_, -1.0, s);
}

double ArcCurve::parameter_at_length(double target) const {
    if (target <= 0.0) return -1.0;
    if (target >= length_) return 1.0;
    // Safeguarded Newton on L(s) - target, bisection fallback.
    double lo = -1.0, hi = 1.0;
    double s = -1.0 + 2.0 * target / length_;
    for (int iter = 0; iter < 100; ++iter) {
        const double f = length_to(s) - target;
        if (f > 0)
            hi = s;
        else
            lo = s;
        const double d = speed(s);
        double step = (d > 1e-14) ? f / d : 0.0;
        double next = s - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - s) < 1e-14) return next;
        s = next;
    }
    return s;
}

void ArcCurve::validate() const {
    const int samples = 512;
    std::vector<Vec2> pts(samples + 1);
    double max_speed = 0.0, min_speed = 1e300;
    for (int i = 0; i <= samples; ++i) {
        const double s = -1.0 + 2.0 * i / samples;
        pts[i] = Vec2{x_.eval(s), y_.eval(s)};
        const double sp = std::hypot(dx_.eval(s), dy_.eval(s));
        max_speed = std::max(max_speed, sp);
        min_speed = std::min(min_speed, sp);
    }
    if (max_speed <= 0.0 || min_speed < 1e-9 * max_speed)
        throw GeometryError("arc '" + label_ + "': derivative vanishes (cusp or degenerate segment)");
    // Injectivity probe: chord length must not collapse relative to parameter distance.
    const double ds = 2.0 / samples;
    for (int i = 0; i <= samples; ++i) {
        for (int j = i + 2; j <= samples; ++j) {
            const double chord = (pts[i] - pts[j]).norm();
            const double param = ds * (j - i);
            if (chord < 1e-6 * param * min_speed)
                throw GeometryError("arc '" + label_ + "': self-intersection detected");
        }
    }
}

EffectiveSampling sample_half_wavelength(const ArcCurve& arc, double wavelength) {
    if (!(wavelength > 0.0)) throw std::domain_error("sample_half_wavelength: wavelength must be > 0");
    const double half = 0.5 * wavelength;
    const double len = arc.length();
    const int m = std::max(1, static_cast<int>(std::llround(len / half)));
    EffectiveSampling out;
    out.count = m;
    out.spacing = len / m;
    out.points.reserve(m);
    out.normals.reserve(m);
    for (int i = 0; i < m; ++i) {
        const double target = len * (i + 0.5) / m;
        const double s = arc.parameter_at_length(target);
        out.points.push_back(arc.point(s));
        out.normals.push_back(arc.unit_normal(s));
    }
    return out;
}

}  // namespace arcmusic
