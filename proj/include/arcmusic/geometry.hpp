#pragma once

#include <string>
#include <vector>

#include "arcmusic/vec2.hpp"

namespace arcmusic {

/// Real polynomial in one variable, coefficients in ascending order.
struct Polynomial {
    std::vector<double> coeff;  // coeff[i] multiplies s^i

    double eval(double s) const;
    Polynomial derivative() const;

    /// (p(a) - p(b)) / (a - b), evaluated without cancellation; equals p'(a) at a == b.
    double divided_difference(double a, double b) const;

    /// Coefficients of q(s) = p(shift + scale * s).
    Polynomial compose_affine(double shift, double scale) const;
};

/// Smooth open arc s in [-1,1] -> R^2 with polynomial coordinate maps.
/// Arcs defined on another interval are brought to [-1,1] affinely on
/// construction, so one canonical parameter domain serves the quadrature
/// and the cosine substitution in the forward solver.
///
/// Construction validates the geometry on a fine parameter sample: the
/// derivative must not vanish (no cusp) and the arc must not self-intersect.
class ArcCurve {
public:
    ArcCurve(std::string label, Polynomial x, Polynomial y);

    static ArcCurve from_domain(std::string label, Polynomial x, Polynomial y,
                                double s_min, double s_max);
    static ArcCurve straight_segment(std::string label, Vec2 a, Vec2 b);
    /// Presets used throughout the test battery.
    static ArcCurve preset_gamma1();  // [s-0.2, -0.5 s^2+0.4], s in [-0.5, 0.5]
    static ArcCurve preset_gamma2();  // [s+0.2, s^3+s^2-0.4],  s in [-0.5, 0.5]
    /// Parses a key=value arc file (label, x_coeffs, y_coeffs, s_min, s_max).
    static ArcCurve load(const std::string& path);
    /// Resolves a preset label or falls back to load(path).
    static ArcCurve resolve(const std::string& label_or_path);

    /// gamma(s); throws std::domain_error for s outside [-1,1].
    Vec2 point(double s) const;
    /// gamma'(s), computed from the coefficient derivative (never differenced).
    Vec2 tangent(double s) const;
    Vec2 unit_tangent(double s) const;
    /// Unit tangent rotated +90 degrees. Throws GeometryError on vanishing derivative.
    Vec2 unit_normal(double s) const;
    /// |gamma'(s)|.
    double speed(double s) const;

    /// Total arclength, adaptive Gauss-Legendre, relative error <= 1e-12.
    double length() const { return length_; }
    /// Arclength of gamma([-1, s]).
    double length_to(double s) const;
    /// Inverse of length_to: parameter at a given arclength from the start.
    double parameter_at_length(double target) const;

    const std::string& label() const { return label_; }
    const Polynomial& x_poly() const { return x_; }
    const Polynomial& y_poly() const { return y_; }

private:
    std::string label_;
    Polynomial x_, y_;
    Polynomial dx_, dy_;
    double length_ = 0.0;

    void validate() const;
};

/// lambda/2 effective sampling of an arc: one point per half-wavelength segment.
struct EffectiveSampling {
    std::vector<Vec2> points;   // segment midpoints, arclength-equidistant
    std::vector<Vec2> normals;  // unit normals at the points
    double spacing = 0.0;       // arclength gap between consecutive points
    int count = 0;              // M >= 1
};

/// Splits the arc into M = max(1, round(length/(lambda/2))) equal-arclength
/// segments and returns their midpoints. Throws std::domain_error for
/// wavelength <= 0.
EffectiveSampling sample_half_wavelength(const ArcCurve& arc, double wavelength);

}  // namespace arcmusic
