#pragma once

#include "minsurf/path.hpp"
#include "minsurf/vec3.hpp"
#include "minsurf/weierstrass.hpp"

#include <vector>

namespace minsurf {

/// Flux through a homology class, computed two independent ways: the
/// imaginary part of the period vector (primary) and the arc-length
/// integral of the outward conormal along the image curve (oracle).
struct FluxVector {
    Vec3 value;     // Im of the period vector
    Vec3 conormal;  // integral of dX/ds x N over the loop
    double method_gap = 0.0; // largest componentwise disagreement
};

FluxVector flux(const WeierstrassData& wd, const PathSpec& loop, int n_samples = 2048);

struct SphereSpec {
    Vec3 center{0.0, 0.0, 0.0};
    double radius = 1.0;
};

struct ContactAngleReport {
    struct Sample {
        double theta;
        double angle; // radians, in [0, pi]
    };
    std::vector<Sample> samples;
    double mean = 0.0;
    double max_deviation = 0.0; // max |angle - mean|
    Vec3 sphere_center;
    double sphere_radius = 0.0;
};

/// Angle between the surface normal and the outward sphere normal along
/// the image of |z| = boundary_radius.  The image must lie on the given
/// sphere within 1e-6 (GeometryMismatch otherwise).
ContactAngleReport contact_angle_profile(const WeierstrassData& wd, double boundary_radius,
                                         Vec3 sphere_center, double sphere_radius,
                                         int n_samples = 512);

struct BoundaryCurvatureSample {
    double theta;
    // Geodesic curvature of the boundary within the sphere, two routes:
    // a pure finite-difference Frenet computation on immersion samples,
    // and the closed form assembled from the Weierstrass data.
    double kappa_g_frenet;
    double kappa_g_data;
    // Normal curvature against the inward sphere normal (1/R on a sphere
    // of radius R, whatever the curve).
    double kappa_n;
    double alpha, beta; // boundary values of z^2 Phi
    double lambda;      // conformal factor
};

struct BoundaryCurvatureReport {
    std::vector<BoundaryCurvatureSample> samples;
    SphereSpec sphere;
};

BoundaryCurvatureReport boundary_curvatures(const WeierstrassData& wd, double boundary_radius,
                                            int n_samples = 512, SphereSpec sphere = {});

/// Which of the two orthogonal principal families to follow: the first
/// has Phi dz^2 > 0 along it, the second Phi dz^2 < 0.
enum class CurvatureBranch { First, Second };

enum class TraceStop { Completed, DomainBoundary, UmbilicProximity };

struct TraceResult {
    std::vector<Complex> points;
    TraceStop stop = TraceStop::Completed;
    double length = 0.0; // chart arclength actually covered
};

/// Integrate dz/ds = unit(1/sqrt(Phi)) (times i for the second branch)
/// by RK4 at unit chart speed, tracking the square-root branch by
/// continuity, until the arclength budget, the domain boundary, or an
/// umbilic (|Phi| < 1e-10) stops the trace.
TraceResult trace_line_of_curvature(const WeierstrassData& wd, Complex z0,
                                    CurvatureBranch branch, double arclength, double step);

} // namespace minsurf
