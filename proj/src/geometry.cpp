#include "minsurf/geometry.hpp"

#include "minsurf/errors.hpp"
#include "minsurf/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace minsurf {

namespace {

const double kPi = 3.14159265358979323846;

Complex phi_at(const RationalFunction& phi, Complex z) {
    const auto v = phi.eval(z);
    if (!v) throw SingularPoint("height differential singular on the curve");
    return *v;
}

// Re of the integral of (phi1, phi2, phi3) along the path, at a caller
// controlled tolerance (the immersion's default is too loose for the
// finite-difference stencils downstream).
Vec3 displacement(const WeierstrassData& wd, const PathSpec& path, double tol) {
    const Complex p1 = integrate_path([&](Complex z) { return phi_at(wd.phi1, z); }, path, tol);
    const Complex p2 = integrate_path([&](Complex z) { return phi_at(wd.phi2, z); }, path, tol);
    const Complex p3 = integrate_path([&](Complex z) { return phi_at(wd.phi3, z); }, path, tol);
    return {p1.real(), p2.real(), p3.real()};
}

Vec3 arc_step(const WeierstrassData& wd, double radius, double theta0, double theta1,
              double tol = 1e-12) {
    return displacement(wd, PathSpec::arc(Complex(0.0), radius, theta0, theta1), tol);
}

// dX/dlambda at a path point: Re(phi * z'(lambda)).
Vec3 curve_velocity(const WeierstrassData& wd, Complex z, Complex zdot) {
    const Complex v1 = phi_at(wd.phi1, z) * zdot;
    const Complex v2 = phi_at(wd.phi2, z) * zdot;
    const Complex v3 = phi_at(wd.phi3, z) * zdot;
    return {v1.real(), v2.real(), v3.real()};
}

// Analytic second derivative of X along the circle z = r e^{i theta}:
// X_theta-theta = Re(phi' * (iz)^2 + phi * (i^2 z)) = -Re(z^2 phi' + z phi).
Vec3 circle_acceleration(const WeierstrassData& wd, Complex z) {
    const RationalFunction* comps[3] = {&wd.phi1, &wd.phi2, &wd.phi3};
    Vec3 acc;
    double* out[3] = {&acc.x, &acc.y, &acc.z};
    for (int i = 0; i < 3; ++i) {
        const Complex d = phi_at(comps[i]->derivative(), z);
        const Complex p = phi_at(*comps[i], z);
        *out[i] = -(z * z * d + z * p).real();
    }
    return acc;
}

} // namespace

FluxVector flux(const WeierstrassData& wd, const PathSpec& loop, int n_samples) {
    if (!loop.closed()) throw InvalidInput("flux needs a closed loop");
    if (n_samples < 16) throw InvalidInput("flux sampling too coarse");

    FluxVector out;
    const auto period = period_vector(wd, loop);
    out.value = {period[0].imag(), period[1].imag(), period[2].imag()};

    // Oracle route: integral of dX/ds x N over the loop, composite Simpson
    // per piece (the integrand is smooth within a piece).
    const double total_len = loop.chart_length();
    Vec3 acc;
    for (const PathPiece& piece : loop.pieces()) {
        int n = std::max(2, static_cast<int>(std::lround(
                                n_samples * piece.chart_length() / total_len)));
        if (n % 2 != 0) ++n;
        const double h = 1.0 / n;
        Vec3 piece_sum;
        for (int k = 0; k <= n; ++k) {
            const double s = k * h;
            const Complex z = piece.point(s);
            const Vec3 dX = curve_velocity(wd, z, piece.velocity(s));
            const Vec3 term = dX.cross(normal_from_gauss(wd.g.eval(z)));
            const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
            piece_sum += term * w;
        }
        acc += piece_sum * (h / 3.0);
    }
    out.conormal = acc;

    const Vec3 gap = out.value - out.conormal;
    out.method_gap = std::max({std::abs(gap.x), std::abs(gap.y), std::abs(gap.z)});
    return out;
}

ContactAngleReport contact_angle_profile(const WeierstrassData& wd, double boundary_radius,
                                         Vec3 sphere_center, double sphere_radius,
                                         int n_samples) {
    if (boundary_radius <= 0.0 || sphere_radius <= 0.0 || n_samples < 4)
        throw InvalidInput("contact angle profile: bad radius or sample count");

    ContactAngleReport rep;
    rep.sphere_center = sphere_center;
    rep.sphere_radius = sphere_radius;
    rep.samples.reserve(n_samples);

    const double dth = 2.0 * kPi / n_samples;
    Vec3 X = immerse(wd, Complex(boundary_radius));
    double sum = 0.0;
    for (int k = 0; k < n_samples; ++k) {
        const double theta = k * dth;
        const Complex z = std::polar(boundary_radius, theta);
        const Vec3 radial = X - sphere_center;
        const double off = std::abs(radial.norm() - sphere_radius);
        if (off > 1e-6 * std::max(1.0, sphere_radius))
            throw GeometryMismatch("boundary image leaves the sphere (distance " +
                                   std::to_string(off) + " at theta " + std::to_string(theta) + ")");
        const Vec3 n_out = radial / sphere_radius;
        const Vec3 N = normal_from_gauss(wd.g.eval(z));
        const double c = std::clamp(N.dot(n_out), -1.0, 1.0);
        const double angle = std::acos(c);
        rep.samples.push_back({theta, angle});
        sum += angle;
        X += arc_step(wd, boundary_radius, theta, theta + dth);
    }
    rep.mean = sum / n_samples;
    for (const auto& s : rep.samples)
        rep.max_deviation = std::max(rep.max_deviation, std::abs(s.angle - rep.mean));
    return rep;
}

BoundaryCurvatureReport boundary_curvatures(const WeierstrassData& wd, double boundary_radius,
                                            int n_samples, SphereSpec sphere) {
    if (boundary_radius <= 0.0 || n_samples < 4)
        throw InvalidInput("boundary curvatures: bad radius or sample count");

    BoundaryCurvatureReport rep;
    rep.sphere = sphere;
    rep.samples.reserve(n_samples);

    const RationalFunction f = wd.Phi * RationalFunction::monomial(2);
    const RationalFunction gp_over_g = wd.g.derivative() / wd.g;
    const RationalFunction hp_over_h = wd.h.derivative() / wd.h;

    const double dth = 2.0 * kPi / n_samples;
    const double delta = 2e-3; // five-point stencil spacing for the Frenet route
    Vec3 X = immerse(wd, Complex(boundary_radius));

    for (int k = 0; k < n_samples; ++k) {
        const double theta = k * dth;
        const Complex z = std::polar(boundary_radius, theta);
        const SurfaceJet j = jet(wd, z);

        const Complex fz = f(z);
        const double alpha = fz.real(), beta = fz.imag();
        const double v = j.Lambda * boundary_radius; // |X_theta|

        // inward sphere normal at the sample
        const Vec3 to_center = sphere.center - X;
        const double dist = to_center.norm();
        if (dist == 0.0) throw GeometryMismatch("boundary passes through the sphere center");
        const Vec3 n_in = to_center / dist;

        // ---- closed-form route ----------------------------------------
        // Frame: T along the curve, S = N x T the surface conormal; the
        // curve's curvature vector splits as kappa_g^surf S + kappa_n^surf N
        // with kappa_n^surf = alpha/v^2 and kappa_g^surf from the radial
        // logarithmic derivative of the conformal factor.
        const Complex zdot(-z.imag(), z.real()); // iz
        const Vec3 Xth = j.Xu * zdot.real() + j.Xv * zdot.imag();
        const Vec3 T = Xth / v;
        const Vec3 S = j.N.cross(T);

        const Complex e_r = z / std::abs(z);
        const double absg = std::abs(wd.g(z));
        const double gterm = (absg - 1.0 / absg) / (absg + 1.0 / absg);
        const double dlog_lambda = gterm * (e_r * gp_over_g(z)).real() +
                                   (e_r * hp_over_h(z)).real();
        const double kappa_g_surf =
            (1.0 + boundary_radius * dlog_lambda) / (j.Lambda * boundary_radius);
        const double kappa_n_surf = alpha / (v * v);

        const double a = n_in.dot(j.N);
        const double b = n_in.dot(S);
        // rotate the curvature vector into the sphere's Darboux frame:
        // S_sphere = T x n_in = -a S + b N
        const double kappa_g_data = -a * kappa_g_surf + b * kappa_n_surf;

        // ---- finite-difference Frenet route ---------------------------
        // positions only, five-point stencil; independent of the jet
        const Vec3 Xp1 = X + arc_step(wd, boundary_radius, theta, theta + delta, 1e-13);
        const Vec3 Xp2 = X + arc_step(wd, boundary_radius, theta, theta + 2.0 * delta, 1e-13);
        const Vec3 Xm1 = X + arc_step(wd, boundary_radius, theta, theta - delta, 1e-13);
        const Vec3 Xm2 = X + arc_step(wd, boundary_radius, theta, theta - 2.0 * delta, 1e-13);
        const Vec3 d1 = (Xm2 - Xp2 + (Xp1 - Xm1) * 8.0) / (12.0 * delta);
        const Vec3 d2 = ((Xp1 + Xm1) * 16.0 - Xp2 - Xm2 - X * 30.0) / (12.0 * delta * delta);
        const double v_fd = d1.norm();
        const Vec3 T_fd = d1 / v_fd;
        const Vec3 S_sphere = T_fd.cross(n_in);
        const double kappa_g_frenet = d2.dot(S_sphere) / (v_fd * v_fd);

        // normal curvature: analytic acceleration against the sphere normal
        const double kappa_n = circle_acceleration(wd, z).dot(n_in) / (v * v);

        rep.samples.push_back(
            {theta, kappa_g_frenet, kappa_g_data, kappa_n, alpha, beta, j.Lambda});
        X += arc_step(wd, boundary_radius, theta, theta + dth);
    }
    return rep;
}

namespace {

struct DirectionField {
    const RationalFunction& Phi;
    bool second;

    // Unit chart direction of the selected principal family at z, oriented
    // to continue `prev` (zero `prev` means free choice).  Returns nullopt
    // at an umbilic.
    std::optional<Complex> at(Complex z, Complex prev) const {
        const auto val = Phi.eval(z);
        if (!val) throw StepSizeError("trace reached a pole of the differential");
        if (std::abs(*val) < 1e-10) return std::nullopt;
        Complex u = 1.0 / std::sqrt(*val);
        u /= std::abs(u);
        if (second) u *= Complex(0.0, 1.0);
        if (std::abs(prev) > 0.0) {
            const double align = (u * std::conj(prev)).real();
            if (align < 0.0) u = -u;
            if (std::abs(align) < 0.2)
                throw StepSizeError("principal direction turned too fast for the step size");
        }
        return u;
    }
};

} // namespace

TraceResult trace_line_of_curvature(const WeierstrassData& wd, Complex z0,
                                    CurvatureBranch branch, double arclength, double step) {
    if (arclength <= 0.0 || step <= 0.0) throw InvalidInput("trace: nonpositive length or step");
    if (!wd.domain.contains(z0)) throw InvalidInput("trace: start outside the domain");
    const auto phi0 = wd.Phi.eval(z0);
    if (!phi0) throw InvalidInput("trace: start at a pole of the differential");
    if (std::abs(*phi0) < 1e-10)
        throw InvalidInput("trace: start at an umbilic point");

    const DirectionField field{wd.Phi, branch == CurvatureBranch::Second};
    TraceResult res;
    res.points.push_back(z0);

    Complex z = z0;
    Complex prev = *field.at(z0, Complex(0.0));
    double traced = 0.0;
    while (traced < arclength) {
        const double h = std::min(step, arclength - traced);
        const auto k1 = field.at(z, prev);
        if (!k1) { res.stop = TraceStop::UmbilicProximity; res.length = traced; return res; }
        const auto k2 = field.at(z + 0.5 * h * *k1, *k1);
        if (!k2) { res.stop = TraceStop::UmbilicProximity; res.length = traced; return res; }
        const auto k3 = field.at(z + 0.5 * h * *k2, *k2);
        if (!k3) { res.stop = TraceStop::UmbilicProximity; res.length = traced; return res; }
        const auto k4 = field.at(z + h * *k3, *k3);
        if (!k4) { res.stop = TraceStop::UmbilicProximity; res.length = traced; return res; }
        const Complex dir = (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4) / 6.0;
        const Complex znew = z + h * dir;
        if (!wd.domain.contains(znew)) {
            res.stop = TraceStop::DomainBoundary;
            res.length = traced;
            return res;
        }
        z = znew;
        prev = dir / std::abs(dir);
        traced += h;
        res.points.push_back(z);
    }
    res.stop = TraceStop::Completed;
    res.length = traced;
    return res;
}

} // namespace minsurf
