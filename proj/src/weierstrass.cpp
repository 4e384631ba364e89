#include "minsurf/weierstrass.hpp"

#include "minsurf/errors.hpp"
#include "minsurf/kernels.hpp"
#include "minsurf/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace minsurf {

namespace {

Complex default_basepoint(const AnnulusDomain& d) {
    if (std::isfinite(d.r_outer)) return Complex(d.r_outer, 0.0);
    return Complex(std::max(1.0, 2.0 * d.r_inner), 0.0);
}

Complex path_integral(const RationalFunction& f, const PathSpec& path) {
    return integrate_path(
        [&f](Complex z) {
            auto v = f.eval(z);
            if (!v) throw IntegrationError("path runs through a pole of the integrand");
            return *v;
        },
        path);
}

std::string fmt_complex(const Complex& z) {
    std::ostringstream os;
    os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

} // namespace

bool AnnulusDomain::contains(const Complex& z) const {
    const double r = std::abs(z);
    if (r >= r_outer) {
        // a capillary rim on the outer circle belongs to the surface
        if (!(boundary_circle && std::abs(r - *boundary_circle) <= 1e-9 * std::max(1.0, *boundary_circle)))
            return false;
    }
    if (r_inner > 0.0 || puncture_at_zero) return r > r_inner;
    return true;
}

bool AnnulusDomain::has_nontrivial_loop() const {
    return r_inner > 0.0 || puncture_at_zero;
}

WeierstrassData::WeierstrassData(RationalFunction g_, RationalFunction h_,
                                 AnnulusDomain dom, std::optional<Complex> base)
    : g(std::move(g_)), h(std::move(h_)), domain(dom) {
    if (g.is_zero())
        throw InvalidInput("weierstrass: Gauss map is identically zero; use the plane chart instead");
    if (h.is_zero())
        throw InvalidInput("weierstrass: height differential is identically zero");
    if (!(domain.r_inner >= 0.0) || !(domain.r_inner < domain.r_outer))
        throw InvalidInput("weierstrass: need 0 <= r_inner < r_outer");
    gh = g * h;
    h_over_g = h / g;
    const RationalFunction half = RationalFunction::constant(Complex(0.5, 0.0));
    const RationalFunction ihalf = RationalFunction::constant(Complex(0.0, 0.5));
    phi1 = (h_over_g - gh) * half;
    phi2 = (h_over_g + gh) * ihalf;
    phi3 = h;
    Phi = (g.derivative() / g) * h;
    basepoint = base ? *base : default_basepoint(domain);
}

Vec3 normal_from_gauss(const std::optional<Complex>& g_value) {
    if (!g_value) return {0.0, 0.0, 1.0};
    const double x = g_value->real(), y = g_value->imag();
    const double q = x * x + y * y;
    if (!(q < 1e300)) return {0.0, 0.0, 1.0};
    const double s = 1.0 / (q + 1.0);
    return {2.0 * x * s, 2.0 * y * s, (q - 1.0) * s};
}

PathSpec default_path(const Complex& from, const Complex& to) {
    const double rf = std::abs(from), rt = std::abs(to);
    if (rf < 1e-300 || rt < 1e-300) return PathSpec::segment(from, to);
    const double thf = std::arg(from);
    const double dth = std::remainder(std::arg(to) - thf, 2.0 * M_PI);
    const Complex mid = std::polar(rt, thf);
    const bool swing = std::abs(dth) > 1e-14;
    const bool radial = std::abs(mid - from) > 1e-12 * std::max(1.0, rt);
    if (radial && swing)
        return PathSpec::concat(PathSpec::segment(from, mid),
                                PathSpec::arc(Complex(0.0), rt, thf, thf + dth));
    if (swing) return PathSpec::arc(Complex(0.0), rt, thf, thf + dth);
    return PathSpec::segment(from, to);
}

Vec3 immerse(const WeierstrassData& wd, const Complex& base, const Complex& target,
             const PathSpec& path) {
    if (std::abs(path.start() - base) > 1e-9 || std::abs(path.end() - target) > 1e-9)
        throw InvalidInput("immerse: path does not run from base to target");
    const Complex i1 = path_integral(wd.phi1, path);
    const Complex i2 = path_integral(wd.phi2, path);
    const Complex i3 = path_integral(wd.phi3, path);
    return {i1.real(), i2.real(), i3.real()};
}

Vec3 immerse(const WeierstrassData& wd, const Complex& target) {
    if (std::abs(target - wd.basepoint) == 0.0) return {0.0, 0.0, 0.0};
    return immerse(wd, wd.basepoint, target, default_path(wd.basepoint, target));
}

SurfaceJet jet(const WeierstrassData& wd, const Complex& z) {
    if (!wd.domain.contains(z)) throw InvalidInput("jet: point outside the open chart domain");
    const auto gh_v = wd.gh.eval(z);
    const auto hog_v = wd.h_over_g.eval(z);
    if (!gh_v || !hog_v)
        throw SingularPoint("jet: metric factor is infinite at " + fmt_complex(z));
    const double lambda = 0.5 * (std::abs(*gh_v) + std::abs(*hog_v));
    if (lambda <= 0.0) throw SingularPoint("jet: metric factor vanishes at " + fmt_complex(z));

    const auto p1 = wd.phi1.eval(z), p2 = wd.phi2.eval(z), p3 = wd.phi3.eval(z);
    const auto phi_v = wd.Phi.eval(z);
    if (!p1 || !p2 || !p3 || !phi_v)
        throw SingularPoint("jet: differential has a pole at " + fmt_complex(z));

    SurfaceJet out;
    out.z = z;
    out.Lambda = lambda;
    out.Xu = {p1->real(), p2->real(), p3->real()};
    out.Xv = {-p1->imag(), -p2->imag(), -p3->imag()};
    out.N = normal_from_gauss(wd.g.eval(z));
    out.Phi = *phi_v;
    // Second fundamental form for the south-pole normal: b(v,v) = -Re(Phi v^2).
    out.L = -phi_v->real();
    out.M = phi_v->imag();
    out.Nc = phi_v->real();
    const double k = std::abs(*phi_v) / (lambda * lambda);
    out.kappa1 = k;
    out.kappa2 = -k;
    out.H_mean = 0.0;
    out.K = -k * k;
    out.X = immerse(wd, z);
    return out;
}

std::array<Complex, 3> period_vector(const WeierstrassData& wd, const PathSpec& loop) {
    if (!loop.closed()) throw InvalidInput("period_vector: path is not closed");
    return {path_integral(wd.phi1, loop), path_integral(wd.phi2, loop),
            path_integral(wd.phi3, loop)};
}

namespace {

// Radius for the generating loop: inside the annulus and clear of every
// integrand pole modulus.
double generator_radius(const WeierstrassData& wd) {
    const AnnulusDomain& d = wd.domain;
    double r;
    if (std::isfinite(d.r_outer))
        r = d.r_inner > 0.0 ? std::sqrt(d.r_inner * d.r_outer) : 0.5 * d.r_outer;
    else
        r = std::max(1.0, 2.0 * d.r_inner);
    std::vector<double> bad;
    for (const ComplexPoly* den : {&wd.gh.den(), &wd.h_over_g.den(), &wd.h.den()})
        if (den->degree() >= 1)
            for (const Complex& p : den->roots()) bad.push_back(std::abs(p));
    for (int tries = 0; tries < 64; ++tries) {
        bool clear = r > d.r_inner && r < d.r_outer;
        for (double b : bad)
            if (std::abs(r - b) < 1e-6 * std::max(1.0, r)) clear = false;
        if (clear) break;
        r *= 1.0078125;
    }
    return r;
}

} // namespace

ValidationReport validate(const WeierstrassData& wd) {
    ValidationReport rep;

    // Regularity: wherever g or h has a zero or pole inside the open domain,
    // the orders must satisfy ord(h) = |ord(g)|.
    std::vector<Complex> candidates;
    for (const ComplexPoly* p : {&wd.g.num(), &wd.g.den(), &wd.h.num(), &wd.h.den()})
        if (p->degree() >= 1)
            for (const Complex& r : p->roots()) candidates.push_back(r);
    std::vector<Complex> points;
    for (const Complex& c : candidates) {
        bool dup = false;
        for (const Complex& p : points)
            if (std::abs(c - p) < 1e-8) { dup = true; break; }
        if (!dup) points.push_back(c);
    }
    for (const Complex& p : points) {
        if (!wd.domain.contains(p)) continue;
        const int og = wd.g.order_at(p);
        const int oh = wd.h.order_at(p);
        if (oh != std::abs(og)) {
            rep.regular = false;
            std::ostringstream os;
            os << "order mismatch at z = " << fmt_complex(p) << ": ord(h) = " << oh
               << ", |ord(g)| = " << std::abs(og);
            rep.problems.push_back(os.str());
        }
    }

    if (wd.domain.has_nontrivial_loop()) {
        rep.has_loop = true;
        const double r = generator_radius(wd);
        const PathSpec loop = PathSpec::circle(r);
        const Complex p_gh = path_integral(wd.gh, loop);
        const Complex p_hog = path_integral(wd.h_over_g, loop);
        const Complex p_h = path_integral(wd.h, loop);
        rep.period_defect = std::abs(std::conj(p_gh) - p_hog);
        rep.height_defect = std::abs(p_h.real());
        rep.periods_match = rep.period_defect < 1e-10;
        rep.height_real = rep.height_defect < 1e-10;
        rep.loop_period = period_vector(wd, loop);
        if (!rep.periods_match) {
            std::ostringstream os;
            os << "horizontal period defect " << rep.period_defect << " on |z| = " << r;
            rep.problems.push_back(os.str());
        }
        if (!rep.height_real) {
            std::ostringstream os;
            os << "real height period " << p_h.real() << " on |z| = " << r;
            rep.problems.push_back(os.str());
        }
    }
    return rep;
}

namespace {

struct Soa {
    std::vector<double> re, im;
};

Soa poly_soa(const ComplexPoly& p) {
    Soa s;
    for (const Complex& c : p.coeffs()) {
        s.re.push_back(c.real());
        s.im.push_back(c.imag());
    }
    if (s.re.empty()) {
        s.re.push_back(0.0);
        s.im.push_back(0.0);
    }
    return s;
}

} // namespace

TotalCurvature total_curvature(const WeierstrassData& wd, const AnnulusDomain& region,
                               std::size_t theta_n) {
    TotalCurvature out;
    out.reference = -4.0 * M_PI * wd.g.map_degree();
    if (wd.g.is_constant()) return out; // constant normal: flat image, zero curvature

    double lo = std::max(region.r_inner, wd.domain.r_inner);
    double hi = std::min(region.r_outer, wd.domain.r_outer);
    if (!(lo < hi)) throw InvalidInput("total_curvature: region does not meet the chart");
    // The density in (log r, theta) decays at least like e^{-2|log r|} toward
    // 0 and infinity, so clipping costs O(1e-16) relative; the outer cap also
    // keeps |z|^deg within double range inside the kernel.
    hi = std::min(hi, 1e8);
    if (lo <= 0.0) lo = std::min(1e-4, 0.5 * hi);
    const double t_lo = std::log(lo), t_hi = std::log(hi);

    const std::size_t n_th = std::max<std::size_t>(theta_n, 8);
    std::size_t n_t = n_th;
    if (n_t % 4 != 0) n_t += 4 - n_t % 4; // fine and coarse Simpson both need even panel counts

    const ComplexPoly& nu = wd.g.num();
    const ComplexPoly& de = wd.g.den();
    const Soa c_nu = poly_soa(nu), c_de = poly_soa(de);
    const Soa c_dnu = poly_soa(nu.derivative()), c_dde = poly_soa(de.derivative());

    std::vector<double> cth(n_th), sth(n_th);
    for (std::size_t j = 0; j < n_th; ++j) {
        const double th = 2.0 * M_PI * double(j) / double(n_th);
        cth[j] = std::cos(th);
        sth[j] = std::sin(th);
    }

    const auto& table = kernels::active();
    std::vector<double> zr(n_th), zi(n_th), dens(n_th);
    std::vector<double> nr(n_th), ni(n_th), dr(n_th), di(n_th);
    std::vector<double> pr(n_th), pi_(n_th), qr(n_th), qi(n_th);

    // G(t) = e^{2t} * integral over theta of the pullback density.
    std::vector<double> rows(n_t + 1);
    const double dt = (t_hi - t_lo) / double(n_t);
    for (std::size_t i = 0; i <= n_t; ++i) {
        const double t = t_lo + dt * double(i);
        const double r = std::exp(t);
        for (std::size_t j = 0; j < n_th; ++j) {
            zr[j] = r * cth[j];
            zi[j] = r * sth[j];
        }
        table.poly_eval(c_nu.re.data(), c_nu.im.data(), c_nu.re.size(), zr.data(), zi.data(),
                        nr.data(), ni.data(), n_th);
        table.poly_eval(c_de.re.data(), c_de.im.data(), c_de.re.size(), zr.data(), zi.data(),
                        dr.data(), di.data(), n_th);
        table.poly_eval(c_dnu.re.data(), c_dnu.im.data(), c_dnu.re.size(), zr.data(), zi.data(),
                        pr.data(), pi_.data(), n_th);
        table.poly_eval(c_dde.re.data(), c_dde.im.data(), c_dde.re.size(), zr.data(), zi.data(),
                        qr.data(), qi.data(), n_th);
        table.spherical_density(nr.data(), ni.data(), dr.data(), di.data(), pr.data(),
                                pi_.data(), qr.data(), qi.data(), dens.data(), n_th);
        double acc = 0.0;
        for (std::size_t j = 0; j < n_th; ++j) acc += dens[j];
        rows[i] = acc * (2.0 * M_PI / double(n_th)) * r * r;
    }

    auto simpson = [&](std::size_t stride) {
        const double h = dt * double(stride);
        double s = rows[0] + rows[n_t];
        for (std::size_t i = stride; i < n_t; i += stride)
            s += rows[i] * ((i / stride) % 2 == 1 ? 4.0 : 2.0);
        return s * h / 3.0;
    };
    const double fine = simpson(1);
    const double coarse = simpson(2);
    out.value = fine + (fine - coarse) / 15.0;
    return out;
}

TotalCurvature total_curvature(const WeierstrassData& wd, std::size_t theta_n) {
    return total_curvature(wd, wd.domain, theta_n);
}

EndClassification classify_end(const WeierstrassData& wd) {
    if (!wd.domain.puncture_at_zero)
        throw InvalidInput("classify_end: the chart has no puncture at 0");
    const Complex z0(0.0);
    const int n = wd.g.order_at(z0);
    if (n <= 0)
        throw InvalidInput("classify_end: Gauss map must vanish at the puncture; "
                           "rotate the datum so the limit normal is the south pole");
    EndClassification ec;
    ec.gauss_zero_order = n;
    ec.height_pole_order = -wd.h_over_g.order_at(z0);
    const int p = ec.height_pole_order;
    if (n == 1 && p == 2) {
        ec.kind = EndKind::Catenoidal;
        ec.multiplicity = 1;
    } else if (n > 1 && p == 2) {
        ec.kind = EndKind::Planar;
        ec.multiplicity = 1;
    } else if (n == 1 && p == 4) {
        ec.kind = EndKind::EnneperType;
        ec.multiplicity = 3;
    } else {
        ec.kind = EndKind::Other;
        const int q = -wd.Phi.order_at(z0); // pole order of the Hopf coefficient
        ec.multiplicity = std::max(1, 2 * q - 5);
    }
    return ec;
}

namespace {

PowerSeries poly_series(const ComplexPoly& p, int order) {
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1, Complex(0.0));
    for (int k = 0; k <= order; ++k) c[static_cast<std::size_t>(k)] = p.coeff(k);
    return PowerSeries(std::move(c), order);
}

// Taylor expansion at 0 of a rational function regular there.
PowerSeries rational_series(const RationalFunction& f, int order) {
    return (poly_series(f.num(), order) * poly_series(f.den(), order).reciprocal())
        .truncated(order);
}

} // namespace

Complex GaussChartSeries::coefficient(int power) const {
    const int k = power - lead;
    if (k < 0 || k >= static_cast<int>(coeff.size())) return Complex(0.0);
    return coeff[static_cast<std::size_t>(k)];
}

GaussChartSeries reparametrize_by_gauss(const WeierstrassData& wd, int N) {
    const Complex z0(0.0);
    if (wd.g.order_at(z0) != 1)
        throw NotInvertible("reparametrize_by_gauss: Gauss map needs a simple zero at 0");
    const int o = wd.h_over_g.order_at(z0); // leading power of dh/g at 0
    if (N < o)
        throw InvalidInput("reparametrize_by_gauss: requested order is below the leading power");
    const int M = N - o;
    const int W = M + 1;

    const PowerSeries gz = rational_series(wd.g, W);
    const PowerSeries z_of_w = gz.inverse();
    const PowerSeries zp = z_of_w.derivative().truncated(M);

    // dh/g = z^o G(z) with G regular and nonzero at 0.
    const RationalFunction greg = wd.h_over_g * RationalFunction::monomial(-o);
    const PowerSeries gsz = rational_series(greg, W).compose(z_of_w).truncated(M);

    // z(w) = w U(w); z^o contributes w^o U^o.
    std::vector<Complex> uc(static_cast<std::size_t>(W), Complex(0.0));
    for (int k = 0; k < W; ++k) uc[static_cast<std::size_t>(k)] = z_of_w.coeff(k + 1);
    const PowerSeries u(std::move(uc), W - 1);
    PowerSeries upow = PowerSeries::constant(Complex(1.0), M);
    const PowerSeries ubase = o >= 0 ? u : u.reciprocal();
    for (int k = 0; k < std::abs(o); ++k) upow = (upow * ubase).truncated(M);

    const PowerSeries b = (upow * gsz * zp).truncated(M);

    GaussChartSeries out;
    out.lead = o;
    out.coeff.resize(static_cast<std::size_t>(M) + 1);
    for (int k = 0; k <= M; ++k) out.coeff[static_cast<std::size_t>(k)] = b.coeff(k);
    out.z_of_w = z_of_w;
    return out;
}

} // namespace minsurf
