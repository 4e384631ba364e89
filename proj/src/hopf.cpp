#include "minsurf/hopf.hpp"

#include "minsurf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace minsurf {

namespace {

const double kPi = 3.14159265358979323846;

struct Cluster {
    Complex location;
    int count = 0;
};

// Greedy proximity clustering; multiplicity is the cluster size.  Within a
// cluster the centroid is the reported location.
std::vector<Cluster> cluster_points(const std::vector<Complex>& pts, double tol) {
    std::vector<Cluster> cl;
    std::vector<Complex> sums;
    for (const Complex& p : pts) {
        bool placed = false;
        for (size_t i = 0; i < cl.size(); ++i) {
            if (std::abs(p - cl[i].location) < tol) {
                sums[i] += p;
                ++cl[i].count;
                cl[i].location = sums[i] / static_cast<double>(cl[i].count);
                placed = true;
                break;
            }
        }
        if (!placed) {
            cl.push_back({p, 1});
            sums.push_back(p);
        }
    }
    std::sort(cl.begin(), cl.end(), [](const Cluster& a, const Cluster& b) {
        if (a.location.real() != b.location.real())
            return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    return cl;
}

void require_nonzero(const RationalFunction& Phi) {
    if (Phi.is_zero())
        throw TotallyUmbilic("Hopf differential vanishes identically: every point is umbilic");
}

} // namespace

std::string Half::str() const {
    std::ostringstream os;
    if (twice % 2 == 0)
        os << twice / 2;
    else
        os << twice << "/2";
    return os.str();
}

HopfDifferential hopf_differential(const WeierstrassData& wd) {
    return {wd.Phi, wd.domain};
}

double HopfFFunction::alpha(Complex z) const { return f(z).real(); }
double HopfFFunction::beta(Complex z) const { return f(z).imag(); }

HopfFFunction f_function(const HopfDifferential& hd) {
    return {hd.Phi * RationalFunction::monomial(2)};
}

std::vector<UmbilicPoint> find_umbilics(const HopfDifferential& hd,
                                        const AnnulusDomain& region) {
    require_nonzero(hd.Phi);
    std::vector<UmbilicPoint> out;
    if (hd.Phi.num().degree() < 1) return out;
    std::vector<Complex> inside;
    for (const Complex& r : hd.Phi.num().roots())
        if (region.contains(r)) inside.push_back(r);
    for (const Cluster& c : cluster_points(inside, 1e-8))
        out.push_back({c.location, c.count, Half::halves(-c.count)});
    return out;
}

Half rotation_index_exact(const HopfDifferential& hd, Complex z0) {
    require_nonzero(hd.Phi);
    return Half::halves(-hd.Phi.order_at(z0));
}

Half rotation_index_winding(const HopfDifferential& hd, const PathSpec& loop,
                            int n_samples) {
    require_nonzero(hd.Phi);
    if (!loop.closed()) throw InvalidInput("winding needs a closed loop");
    if (n_samples < 8) throw InvalidInput("winding needs at least 8 samples");
    const std::vector<Complex> pts = loop.sample(n_samples);
    std::vector<Complex> vals(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        const auto v = hd.Phi.eval(pts[i]);
        if (!v || std::abs(*v) == 0.0)
            throw InvalidInput("loop passes through a zero or pole of the differential");
        vals[i] = *v;
    }
    double total = 0.0;
    for (size_t i = 0; i < vals.size(); ++i) {
        const Complex ratio = vals[(i + 1) % vals.size()] / vals[i];
        const double step = std::arg(ratio);
        // a phase step near pi is directionally ambiguous: the sampling is
        // too coarse for this differential on this loop
        if (std::abs(step) > 3.0)
            throw UndersamplingError("phase step of " + std::to_string(std::abs(step)) +
                                     " rad between adjacent samples");
        total += step;
    }
    const double twice_index = -total / (2.0 * kPi);
    const long snapped = std::lround(twice_index);
    const double snap_distance = 0.5 * std::abs(twice_index - static_cast<double>(snapped));
    if (snap_distance >= 0.01)
        throw UndersamplingError("winding snap distance " + std::to_string(snap_distance) +
                                 " exceeds 0.01");
    return Half::halves(static_cast<int>(snapped));
}

HopfDifferential invert_chart(const HopfDifferential& hd) {
    require_nonzero(hd.Phi);
    // Phi(1/zeta) zeta^-4 = rev(num)/rev(den) * zeta^{deg den - deg num - 4};
    // reversal keeps coefficients exact and rev(num), rev(den) stay coprime,
    // so only the explicit monomial moves between numerator and denominator.
    const ComplexPoly rn = hd.Phi.num().reversed();
    const ComplexPoly rd = hd.Phi.den().reversed();
    const int shift = hd.Phi.den().degree() - hd.Phi.num().degree() - 4;
    RationalFunction phi_inv =
        shift >= 0 ? RationalFunction(rn * ComplexPoly::monomial(shift), rd)
                   : RationalFunction(rn, rd * ComplexPoly::monomial(-shift));

    AnnulusDomain dom;
    dom.r_inner = std::isfinite(hd.domain.r_outer) ? 1.0 / hd.domain.r_outer : 0.0;
    dom.r_outer = hd.domain.r_inner > 0.0 ? 1.0 / hd.domain.r_inner
                                          : std::numeric_limits<double>::infinity();
    dom.puncture_at_zero = !std::isfinite(hd.domain.r_outer);
    if (hd.domain.boundary_circle)
        dom.boundary_circle = 1.0 / *hd.domain.boundary_circle;
    return {std::move(phi_inv), dom};
}

IndexAudit index_audit(const HopfDifferential& hd, const AuditTopology& topology) {
    require_nonzero(hd.Phi);
    IndexAudit audit;

    if (topology.kind == AuditTopology::Kind::Closed) {
        std::vector<Complex> zeros, poles;
        if (hd.Phi.num().degree() >= 1) zeros = hd.Phi.num().roots();
        if (hd.Phi.den().degree() >= 1) poles = hd.Phi.den().roots();
        for (const Cluster& c : cluster_points(zeros, 1e-8))
            audit.entries.push_back(
                {IndexEntry::At::Interior, c.location, c.count, Half::halves(-c.count)});
        for (const Cluster& c : cluster_points(poles, 1e-8))
            audit.entries.push_back(
                {IndexEntry::At::Interior, c.location, -c.count, Half::halves(c.count)});
        const int ord_inf = invert_chart(hd).Phi.order_at(Complex(0.0));
        if (ord_inf != 0)
            audit.entries.push_back(
                {IndexEntry::At::Infinity, Complex(0.0), ord_inf, Half::halves(-ord_inf)});
        int twice = 0;
        for (const IndexEntry& e : audit.entries) twice += e.index.twice;
        audit.index_sum = Half::halves(twice);
        audit.expected = Half(2 - 2 * topology.genus);
        audit.pass = audit.index_sum == audit.expected;
        return audit;
    }

    if (!hd.domain.boundary_circle)
        throw InvalidInput("capillary audit needs a boundary circle on the domain");
    const double rb = *hd.domain.boundary_circle;
    const bool punctured = topology.kind == AuditTopology::Kind::PuncturedCapillaryDisk;
    const double rim_tol = 1e-8 * std::max(1.0, rb);

    std::vector<Complex> zeros, poles;
    const auto classify = [&](const std::vector<Complex>& roots, std::vector<Complex>& interior) {
        for (const Complex& r : roots) {
            const double d = std::abs(std::abs(r) - rb);
            if (d < rim_tol) {
                audit.boundary_zeros.push_back(r);
                audit.indeterminate = true;
            } else if (std::abs(r) < rb) {
                if (punctured && std::abs(r) < 1e-8) continue; // puncture entry covers it
                interior.push_back(r);
            }
        }
    };
    if (hd.Phi.num().degree() >= 1) classify(hd.Phi.num().roots(), zeros);
    if (hd.Phi.den().degree() >= 1) classify(hd.Phi.den().roots(), poles);

    if (punctured) {
        const int ord0 = hd.Phi.order_at(Complex(0.0));
        if (ord0 != 0)
            audit.entries.push_back(
                {IndexEntry::At::Puncture, Complex(0.0), ord0, Half::halves(-ord0)});
    }
    for (const Cluster& c : cluster_points(zeros, 1e-8))
        audit.entries.push_back(
            {IndexEntry::At::Interior, c.location, c.count, Half::halves(-c.count)});
    for (const Cluster& c : cluster_points(poles, 1e-8))
        audit.entries.push_back(
            {IndexEntry::At::Interior, c.location, -c.count, Half::halves(c.count)});

    // Report whether the boundary circle really is a curvature line:
    // Im(z^2 Phi) must vanish along it.
    const RationalFunction f = hd.Phi * RationalFunction::monomial(2);
    double max_beta = 0.0, max_abs = 0.0;
    const int n = 512;
    for (int k = 0; k < n; ++k) {
        const Complex z = std::polar(rb, 2.0 * kPi * k / n);
        const auto v = f.eval(z);
        if (!v) continue; // pole on the rim is already flagged as indeterminate
        max_beta = std::max(max_beta, std::abs(v->imag()));
        max_abs = std::max(max_abs, std::abs(*v));
    }
    audit.curvature_line_boundary = max_beta <= 1e-8 * std::max(1.0, max_abs);

    int twice = 0;
    for (const IndexEntry& e : audit.entries) twice += e.index.twice;
    audit.index_sum = Half::halves(twice);
    audit.expected = Half(1);
    audit.pass = !audit.indeterminate && audit.index_sum == audit.expected;
    return audit;
}

} // namespace minsurf
