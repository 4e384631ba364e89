#pragma once

#include "minsurf/geometry.hpp"
#include "minsurf/vec3.hpp"
#include "minsurf/weierstrass.hpp"

#include <optional>
#include <string>
#include <vector>

namespace minsurf {

/**
 * Affine plane chart.  The plane sits outside the Weierstrass machinery:
 * a horizontal plane would need an identically-zero Gauss map, which the
 * representation cannot express; its quadratic differential vanishes
 * identically (every point umbilic) and the only geometry worth checking
 * is the contact angle, which is exact here.
 */
struct PlaneChart {
    Vec3 normal;      // unit normal
    double offset;    // plane = { x : <x, normal> = offset }
    Vec3 e1, e2;      // orthonormal in-plane basis, (e1, e2, normal) right-handed

    Vec3 point(double u, double v) const;

    // Angle between the plane normal and the outward sphere normal along
    // the plane/sphere intersection circle; constant by elementary
    // geometry.  GeometryMismatch when the sphere misses the plane.
    ContactAngleReport contact_angle(Vec3 sphere_center, double sphere_radius,
                                     int n_samples = 512) const;
};

/// Known-by-construction facts about a catalog surface, reproduced by the
/// corresponding operations in tests.
struct ExpectedProperties {
    std::optional<EndKind> end_kind;
    int end_multiplicity = 0;                  // 0 = not applicable
    std::optional<double> total_curvature;     // closed-surface reference value
    std::optional<Vec3> generator_flux;        // flux of the generating loop
    std::optional<int> umbilic_points;         // distinct interior umbilics
    bool totally_umbilic = false;
    std::optional<Complex> f_constant;         // value of z^2 Phi when constant
};

struct CatalogEntry {
    std::string name;
    std::optional<WeierstrassData> wd; // every entry except the plane
    std::optional<PlaneChart> plane;
    ExpectedProperties expected;
};

/// g = z, h = c/z on the punctured unit disk with capillary rim |z| = 1
/// (pass a domain to truncate differently).  c must be a nonzero real.
CatalogEntry make_catenoid(double c, std::optional<AnnulusDomain> domain = std::nullopt);

/// g = z^k, h = z^k on the plane; end at infinity of multiplicity 2k + 1.
CatalogEntry make_enneper(int k, std::optional<AnnulusDomain> domain = std::nullopt);

/// g = z^k + P(z), h = g; P must satisfy deg P <= k-1 and P(0) = 0 (the
/// latter keeps the normal at the origin at the south pole).
CatalogEntry make_perturbed_enneper(int k, const ComplexPoly& P,
                                    std::optional<AnnulusDomain> domain = std::nullopt);

/// Two Enneper-type ends joined by a catenoidal neck:
/// g = z(z^2 - R^2)/(R^2 z^2 - 1), h = -(z^4 - q z^2 + 1)/(q z^3) with
/// q = R^2 + R^-2.  Default domain: the annulus 0.6/R <= |z| <= 1.6 R with
/// the neck circle |z| = 1 as boundary of record.
CatalogEntry make_enneper_pair(double R, std::optional<AnnulusDomain> domain = std::nullopt);

/// Affine plane with the given unit normal and signed offset.
CatalogEntry make_plane(Vec3 orientation, double offset);

/// The catenoid piece meeting the unit sphere perpendicularly: the waist
/// parameter solves coth t = t, the scale is c = 1/sqrt(cosh^2 t0 + t0^2),
/// and the rim |z| = e^{t0} lands on the unit sphere centered at (c, 0, 0).
struct CriticalCatenoid {
    CatalogEntry entry;
    SphereSpec sphere;
    double t0 = 0.0;
    double c = 0.0;
};
CriticalCatenoid make_critical_catenoid();

/// Expand a CLI surface name: catenoid[:c], enneper:k, perturbed:k:c1,c2,...
/// (P coefficients from power 1 up), enneper-pair:R, critical-catenoid,
/// plane.  Unknown names raise InvalidInput.
CatalogEntry catalog_lookup(const std::string& name);

/// (name pattern, description) pairs for the CLI listing.
std::vector<std::pair<std::string, std::string>> catalog_descriptions();

} // namespace minsurf
