#include "minsurf/path.hpp"
#include "minsurf/errors.hpp"

#include <cmath>
#include <numbers>

namespace minsurf {

namespace {
constexpr double kWeldTol = 1e-12;
}

Complex PathPiece::point(double s) const {
    if (kind == Kind::Segment) return a + s * (b - a);
    const double t = t0 + s * (t1 - t0);
    return center + radius * Complex(std::cos(t), std::sin(t));
}

Complex PathPiece::velocity(double s) const {
    if (kind == Kind::Segment) return b - a;
    const double t = t0 + s * (t1 - t0);
    return (t1 - t0) * radius * Complex(-std::sin(t), std::cos(t));
}

double PathPiece::chart_length() const {
    if (kind == Kind::Segment) return std::abs(b - a);
    return radius * std::abs(t1 - t0);
}

PathSpec PathSpec::circle(double radius, Complex center, bool ccw) {
    if (!(radius > 0.0)) throw InvalidInput("circle path needs radius > 0");
    PathPiece p;
    p.kind = PathPiece::Kind::Arc;
    p.center = center;
    p.radius = radius;
    p.t0 = 0.0;
    p.t1 = ccw ? 2.0 * std::numbers::pi : -2.0 * std::numbers::pi;
    return PathSpec({p});
}

PathSpec PathSpec::arc(Complex center, double radius, double theta0, double theta1) {
    if (!(radius > 0.0)) throw InvalidInput("arc path needs radius > 0");
    if (theta0 == theta1) throw InvalidInput("arc with empty angle range");
    PathPiece p;
    p.kind = PathPiece::Kind::Arc;
    p.center = center;
    p.radius = radius;
    p.t0 = theta0;
    p.t1 = theta1;
    return PathSpec({p});
}

PathSpec PathSpec::segment(Complex a, Complex b) {
    if (std::abs(a - b) <= kWeldTol) throw InvalidInput("degenerate segment");
    PathPiece p;
    p.kind = PathPiece::Kind::Segment;
    p.a = a;
    p.b = b;
    return PathSpec({p});
}

PathSpec PathSpec::polyline(const std::vector<Complex>& pts, bool closed) {
    if (pts.size() < 2) throw InvalidInput("polyline needs at least two points");
    std::vector<PathPiece> pieces;
    auto push = [&](Complex a, Complex b) {
        if (std::abs(a - b) <= kWeldTol) return; // skip duplicated vertices
        PathPiece p;
        p.kind = PathPiece::Kind::Segment;
        p.a = a;
        p.b = b;
        pieces.push_back(p);
    };
    for (size_t i = 0; i + 1 < pts.size(); ++i) push(pts[i], pts[i + 1]);
    if (closed) push(pts.back(), pts.front());
    if (pieces.empty()) throw InvalidInput("polyline has zero length");
    return PathSpec(std::move(pieces));
}

PathSpec PathSpec::reversed() const {
    std::vector<PathPiece> out;
    out.reserve(pieces_.size());
    for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
        PathPiece p = *it;
        if (p.kind == PathPiece::Kind::Segment) {
            std::swap(p.a, p.b);
        } else {
            std::swap(p.t0, p.t1);
        }
        out.push_back(p);
    }
    return PathSpec(std::move(out));
}

PathSpec PathSpec::concat(const PathSpec& first, const PathSpec& second) {
    if (std::abs(first.end() - second.start()) > 1e-9)
        throw InvalidInput("paths are not concatenable: endpoint mismatch");
    std::vector<PathPiece> out = first.pieces_;
    out.insert(out.end(), second.pieces_.begin(), second.pieces_.end());
    return PathSpec(std::move(out));
}

bool PathSpec::closed() const { return std::abs(end() - start()) <= kWeldTol; }

Complex PathSpec::start() const { return pieces_.front().point(0.0); }

Complex PathSpec::end() const { return pieces_.back().point(1.0); }

double PathSpec::chart_length() const {
    double L = 0.0;
    for (const auto& p : pieces_) L += p.chart_length();
    return L;
}

std::vector<Complex> PathSpec::sample(int n) const {
    if (n < 2) throw InvalidInput("need at least two samples");
    const double total = chart_length();
    const bool loop = closed();
    const int segments = loop ? n : n - 1;
    std::vector<Complex> out;
    out.reserve(static_cast<size_t>(n));
    size_t piece = 0;
    double consumed = 0.0;
    for (int k = 0; k < n; ++k) {
        double target = total * double(k) / double(segments);
        while (piece + 1 < pieces_.size() &&
               consumed + pieces_[piece].chart_length() < target - 1e-15 * total) {
            consumed += pieces_[piece].chart_length();
            ++piece;
        }
        double local = (target - consumed) / pieces_[piece].chart_length();
        out.push_back(pieces_[piece].point(std::clamp(local, 0.0, 1.0)));
    }
    return out;
}

} // namespace minsurf
