#include "minsurf/quadrature.hpp"
#include "minsurf/errors.hpp"

#include <array>
#include <cmath>

namespace minsurf {

namespace {

// 15-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 15> kNodes = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};

constexpr std::array<double, 15> kWeights = {
    0.03075324199611727, 0.07036604748810812, 0.10715922046717194,
    0.13957067792615432, 0.16626920581699392, 0.18616100001556220,
    0.19843148532711158, 0.20257824192556127, 0.19843148532711158,
    0.18616100001556220, 0.16626920581699392, 0.13957067792615432,
    0.10715922046717194, 0.07036604748810812, 0.03075324199611727};

Complex gauss15(const std::function<Complex(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    Complex acc(0.0);
    for (size_t i = 0; i < kNodes.size(); ++i) acc += kWeights[i] * f(mid + half * kNodes[i]);
    return half * acc;
}

Complex adapt(const std::function<Complex(double)>& f, double a, double b,
              Complex whole, double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const Complex left = gauss15(f, a, mid);
    const Complex right = gauss15(f, mid, b);
    const Complex refined = left + right;
    if (std::abs(refined - whole) <= tol) return refined;
    if (depth <= 0)
        throw IntegrationError("adaptive quadrature failed to converge to the requested tolerance");
    return adapt(f, a, mid, left, 0.5 * tol, depth - 1) +
           adapt(f, mid, b, right, 0.5 * tol, depth - 1);
}

} // namespace

Complex integrate_adaptive(const std::function<Complex(double)>& f,
                           double a, double b, double abs_tol) {
    if (!(abs_tol > 0.0)) throw InvalidInput("quadrature tolerance must be positive");
    if (a == b) return Complex(0.0);
    return adapt(f, a, b, gauss15(f, a, b), abs_tol, 40);
}

Complex integrate_path(const std::function<Complex(Complex)>& f,
                       const PathSpec& path, double abs_tol) {
    Complex total(0.0);
    const double per_piece = abs_tol / double(path.pieces().size());
    for (const PathPiece& piece : path.pieces()) {
        total += integrate_adaptive(
            [&](double s) { return f(piece.point(s)) * piece.velocity(s); },
            0.0, 1.0, per_piece);
    }
    return total;
}

} // namespace minsurf
