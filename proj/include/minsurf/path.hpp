#pragma once

#include "minsurf/complex_poly.hpp"

#include <vector>

namespace minsurf {

/**
 * Piecewise-smooth path in the parameter domain: a sequence of circular
 * arcs and straight segments.  Loops are paths whose endpoints coincide
 * (within 1e-12).
 */
struct PathPiece {
    enum class Kind { Segment, Arc } kind;
    // Segment: from a to b.
    Complex a, b;
    // Arc: center + radius, parameter angle from t0 to t1 (t1 < t0 runs
    // clockwise).
    Complex center;
    double radius = 0.0, t0 = 0.0, t1 = 0.0;

    Complex point(double s) const;      // s in [0,1]
    Complex velocity(double s) const;   // dz/ds
    double chart_length() const;
};

class PathSpec {
public:
    static PathSpec circle(double radius, Complex center = Complex(0.0), bool ccw = true);
    static PathSpec arc(Complex center, double radius, double theta0, double theta1);
    static PathSpec segment(Complex a, Complex b);
    static PathSpec polyline(const std::vector<Complex>& points, bool closed = false);

    PathSpec reversed() const;
    static PathSpec concat(const PathSpec& first, const PathSpec& second);

    bool closed() const;
    Complex start() const;
    Complex end() const;
    double chart_length() const;
    const std::vector<PathPiece>& pieces() const { return pieces_; }

    // n points spread over the path proportionally to chart length; for a
    // closed path the endpoint duplicate is omitted.
    std::vector<Complex> sample(int n) const;

private:
    explicit PathSpec(std::vector<PathPiece> p) : pieces_(std::move(p)) {}
    std::vector<PathPiece> pieces_;
};

} // namespace minsurf
