#pragma once

#include "minsurf/path.hpp"
#include "minsurf/power_series.hpp"
#include "minsurf/rational.hpp"
#include "minsurf/vec3.hpp"

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace minsurf {

// Annular chart r_inner < |z| < r_outer.  Degenerate cases:
//   r_inner == 0, puncture_at_zero == false  -> disk, 0 is an interior point
//   r_inner == 0, puncture_at_zero == true   -> punctured disk, end at 0
//   r_outer == inf                           -> unbounded chart
// boundary_circle, when set, is the rim |z| == r carrying the surface
// boundary; the boundary-geometry routines read it.
struct AnnulusDomain {
    double r_inner = 0.0;
    double r_outer = std::numeric_limits<double>::infinity();
    bool puncture_at_zero = false;
    std::optional<double> boundary_circle;

    bool contains(const Complex& z) const;
    // A punctured disk or a true annulus has one generating loop.
    bool has_nontrivial_loop() const;
};

// Weierstrass datum (g, h) with dh = h(z) dz, plus the derived rational
// functions every routine needs, cached in reduced form.  Keeping g*h and
// h/g reduced is what makes the metric factor evaluable across removable
// singularities (matched zeros/poles of g and h cancel exactly).
struct WeierstrassData {
    RationalFunction g; // Gauss map, stereographic; g = 0 is the south pole
    RationalFunction h;
    AnnulusDomain domain;
    Complex basepoint{1.0, 0.0}; // X(basepoint) = origin

    RationalFunction gh;       // g * h
    RationalFunction h_over_g; // h / g
    // Coordinate differentials: X = Re \int (phi1, phi2, phi3) dz.
    RationalFunction phi1; // (h/g - g h) / 2
    RationalFunction phi2; // i (h/g + g h) / 2
    RationalFunction phi3; // h
    RationalFunction Phi;  // (g'/g) h, the Hopf differential coefficient

    WeierstrassData(RationalFunction g_, RationalFunction h_, AnnulusDomain dom,
                    std::optional<Complex> base = std::nullopt);
};

// Pointwise second-order data of the immersion at a chart point.
struct SurfaceJet {
    Complex z;
    Vec3 X;      // position, immersed from the datum basepoint
    Vec3 Xu, Xv; // coordinate tangents
    Vec3 N;      // unit normal, stereographic image of g(z)
    double Lambda = 0.0; // conformal factor, ds = Lambda |dz|
    double L = 0.0, M = 0.0, Nc = 0.0; // second fundamental form entries
    double K = 0.0;                    // Gauss curvature
    Complex Phi;                       // Hopf coefficient at z
    double kappa1 = 0.0, kappa2 = 0.0; // principal curvatures, kappa1 >= kappa2
    double H_mean = 0.0;               // (kappa1 + kappa2)/2, zero here
};

struct ValidationReport {
    bool regular = true;       // zero/pole orders of h match |those of g|
    bool periods_match = true; // conj(loop int of g h) == loop int of h/g
    bool height_real = true;   // Re loop int of h == 0
    bool has_loop = false;     // domain had a generating loop to test
    // Residual magnitudes for the two period conditions (0 when no loop).
    double period_defect = 0.0;
    double height_defect = 0.0;
    std::array<Complex, 3> loop_period{}; // loop int of (phi1, phi2, phi3)
    std::vector<std::string> problems;

    bool ok() const { return regular && periods_match && height_real; }
};

enum class EndKind { Planar, Catenoidal, EnneperType, Other };

struct EndClassification {
    EndKind kind = EndKind::Other;
    int gauss_zero_order = 0;  // n = order of the zero of g at the puncture
    int height_pole_order = 0; // pole order of h/g at the puncture
    int multiplicity = 1;      // winding of the end; 2q-5 for a Phi-pole of order q >= 4
};

struct TotalCurvature {
    double value = 0.0;     // integral of K dA over the region
    double reference = 0.0; // -4 pi deg(g), the full spherical-image count
};

// Height form in the Gauss coordinate w = g(z): the Laurent coefficients of
// (dh/g)(w) from w^lead upward, plus the inverted chart series z(w).
struct GaussChartSeries {
    int lead = 0;                 // lowest power, -(pole order of h/g at 0)
    std::vector<Complex> coeff;   // coeff[k] multiplies w^(lead + k)
    PowerSeries z_of_w;           // inverse of the Gauss map as a series at 0

    Complex coefficient(int power) const; // 0 outside the stored window
};

// Regularity plus period conditions on the generating loop, if any.
// Failures are reported, not thrown.
ValidationReport validate(const WeierstrassData& wd);

// X(target) - X(base) = Re of the path integral of (phi1, phi2, phi3).
// The explicit-path form checks that the path runs from base to target.
Vec3 immerse(const WeierstrassData& wd, const Complex& base, const Complex& target,
             const PathSpec& path);
Vec3 immerse(const WeierstrassData& wd, const Complex& target);

// Radial segment then arc, from `from` to `to`; stays inside any annulus
// containing both points.
PathSpec default_path(const Complex& from, const Complex& to);

// Pointwise geometry at z; throws SingularPoint where the regularity
// invariant fails (metric factor zero or infinite), InvalidInput outside
// the open domain.
SurfaceJet jet(const WeierstrassData& wd, const Complex& z);

// Loop integral of (phi1, phi2, phi3); loop must be closed.
std::array<Complex, 3> period_vector(const WeierstrassData& wd, const PathSpec& loop);

// Integral of K dA over the part of `region` inside the chart, on a
// (log r, theta) product grid: periodic trapezoid in theta, Simpson plus
// Richardson extrapolation in log r.  theta_n is the grid width; the
// log-radial direction uses theta_n panels before extrapolation.
TotalCurvature total_curvature(const WeierstrassData& wd, const AnnulusDomain& region,
                               std::size_t theta_n = 256);
TotalCurvature total_curvature(const WeierstrassData& wd, std::size_t theta_n = 256);

// End behavior at the puncture z = 0; requires g(0) = 0 (rotate the datum
// first if not).
EndClassification classify_end(const WeierstrassData& wd);

// Rewrites the datum near 0 in the coordinate w = g(z); needs g to have a
// simple zero at 0.  Returns the Laurent coefficients of (dh/g)(w) through
// w^N and the inverse series z(w).
GaussChartSeries reparametrize_by_gauss(const WeierstrassData& wd, int N);

// Stereographic unit normal for a Gauss-map value; the pole of g maps to
// the north pole (0, 0, 1).
Vec3 normal_from_gauss(const std::optional<Complex>& g_value);

} // namespace minsurf
