#pragma once

#include "minsurf/path.hpp"
#include "minsurf/rational.hpp"
#include "minsurf/weierstrass.hpp"

#include <string>
#include <vector>

namespace minsurf {

/// Exact half-integer: stores twice the value so index arithmetic never
/// touches floating point.
struct Half {
    int twice = 0;

    Half() = default;
    explicit Half(int whole) : twice(2 * whole) {}
    static Half halves(int twice_value) { return Half{0, twice_value}; }

    double value() const { return 0.5 * static_cast<double>(twice); }
    bool is_integer() const { return twice % 2 == 0; }
    std::string str() const;

    friend Half operator+(Half a, Half b) { return halves(a.twice + b.twice); }
    friend Half operator-(Half a) { return halves(-a.twice); }
    friend bool operator==(Half a, Half b) { return a.twice == b.twice; }
    friend bool operator!=(Half a, Half b) { return a.twice != b.twice; }

private:
    Half(int, int t) : twice(t) {}
};

/**
 * The quadratic differential Phi dz^2 whose real part is the traceless
 * second fundamental form.  Phi = (g'/g) h stays rational and carries the
 * zero/pole orders that all index computations read off exactly.
 */
struct HopfDifferential {
    RationalFunction Phi;
    AnnulusDomain domain;
};

/// Zero of Phi: an umbilic point of the surface.
struct UmbilicPoint {
    Complex location;
    int order = 1;            // multiplicity of the zero
    Half rotation_index;      // always -order/2
};

/// f(z) = z^2 Phi(z) = alpha + i beta; beta vanishes along a boundary
/// circle exactly when that circle is a line of curvature.
struct HopfFFunction {
    RationalFunction f;
    double alpha(Complex z) const;
    double beta(Complex z) const;
};

/// One isolated singularity of the curvature-line field.
struct IndexEntry {
    enum class At { Interior, Puncture, Infinity } at = At::Interior;
    Complex location;         // meaningful for Interior only
    int order = 0;            // zero order > 0, pole order < 0
    Half index;               // -order/2
};

/// Poincare-Hopf accounting for the curvature-line field.
struct IndexAudit {
    std::vector<IndexEntry> entries;
    Half index_sum;
    Half expected;
    bool pass = false;
    // Zeros of Phi sitting on the boundary circle make the interior count
    // ill-posed; they are listed and the audit marked indeterminate.
    bool indeterminate = false;
    std::vector<Complex> boundary_zeros;
    // Whether Im(z^2 Phi) vanishes along the boundary circle (sampled),
    // i.e. whether the boundary actually is a curvature line.
    bool curvature_line_boundary = true;
};

struct AuditTopology {
    enum class Kind { Closed, CapillaryDisk, PuncturedCapillaryDisk } kind;
    int genus = 0;

    static AuditTopology closed(int genus = 0) { return {Kind::Closed, genus}; }
    static AuditTopology capillary_disk() { return {Kind::CapillaryDisk, 0}; }
    static AuditTopology punctured_capillary_disk() {
        return {Kind::PuncturedCapillaryDisk, 0};
    }
};

HopfDifferential hopf_differential(const WeierstrassData& wd);

HopfFFunction f_function(const HopfDifferential& hd);

/// All zeros of Phi inside the region, clustered to multiplicities.
/// Identically-zero Phi raises TotallyUmbilic: the surface is a plane and
/// every point is umbilic, which an empty list must not suggest.
std::vector<UmbilicPoint> find_umbilics(const HopfDifferential& hd,
                                        const AnnulusDomain& region);

/// -order_at(Phi, z0)/2: zeros get negative indices, poles positive ones,
/// regular points 0.
Half rotation_index_exact(const HopfDifferential& hd, Complex z0);

/// Winding of arg Phi around the loop, sampled densely and unwrapped;
/// the result is snapped to the nearest half-integer (distance must be
/// below 0.01) and near-pi phase jumps raise UndersamplingError.
Half rotation_index_winding(const HopfDifferential& hd, const PathSpec& loop,
                            int n_samples = 4096);

/// Quadratic-differential pullback under z = 1/zeta:
/// Phi~(zeta) = Phi(1/zeta) zeta^-4.  Exact coefficient manipulation; an
/// involution on reduced rational Phi.
HopfDifferential invert_chart(const HopfDifferential& hd);

/// Sum the rotation indices over the singularities the topology sees and
/// compare with the Euler-characteristic target (2-2g closed, 1 for the
/// capillary disk).  Disk topologies read the boundary circle from
/// hd.domain.
IndexAudit index_audit(const HopfDifferential& hd, const AuditTopology& topology);

} // namespace minsurf
