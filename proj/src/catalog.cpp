#include "minsurf/catalog.hpp"

#include "minsurf/errors.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

namespace minsurf {

namespace {

std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Complex default_basepoint(const AnnulusDomain& dom) {
    if (dom.contains(Complex(1.0, 0.0))) return Complex(1.0, 0.0);
    const double lo = dom.r_inner;
    const double hi = dom.r_outer;
    if (std::isfinite(hi) && lo > 0.0) return Complex(std::sqrt(lo * hi), 0.0);
    if (std::isfinite(hi)) return Complex(hi / 2.0, 0.0);
    return Complex(2.0 * lo, 0.0);
}

} // namespace

Vec3 PlaneChart::point(double u, double v) const {
    return normal * offset + e1 * u + e2 * v;
}

ContactAngleReport PlaneChart::contact_angle(Vec3 sphere_center, double sphere_radius,
                                             int n_samples) const {
    if (sphere_radius <= 0.0) throw InvalidInput("contact_angle: sphere radius must be positive");
    if (n_samples < 1) throw InvalidInput("contact_angle: need at least one sample");
    const double rho = sphere_center.dot(normal) - offset;
    if (std::abs(rho) >= sphere_radius)
        throw GeometryMismatch("plane misses the sphere: center is at distance " +
                               fmt_num(std::abs(rho)) + " from the plane, radius is " +
                               fmt_num(sphere_radius));
    const Vec3 foot = sphere_center - normal * rho;
    const double circle_r = std::sqrt(sphere_radius * sphere_radius - rho * rho);

    ContactAngleReport report;
    report.sphere_center = sphere_center;
    report.sphere_radius = sphere_radius;
    report.samples.reserve(static_cast<size_t>(n_samples));
    double sum = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double theta = 2.0 * M_PI * i / n_samples;
        const Vec3 X = foot + (e1 * std::cos(theta) + e2 * std::sin(theta)) * circle_r;
        const Vec3 n_out = (X - sphere_center) / sphere_radius;
        const double c = std::max(-1.0, std::min(1.0, normal.dot(n_out)));
        const double angle = std::acos(c);
        report.samples.push_back({theta, angle});
        sum += angle;
    }
    report.mean = sum / n_samples;
    report.max_deviation = 0.0;
    for (const auto& s : report.samples)
        report.max_deviation = std::max(report.max_deviation, std::abs(s.angle - report.mean));
    return report;
}

CatalogEntry make_catenoid(double c, std::optional<AnnulusDomain> domain) {
    if (c == 0.0 || !std::isfinite(c))
        throw InvalidInput("make_catenoid: scale must be a nonzero finite real");
    AnnulusDomain dom = domain.value_or(AnnulusDomain{0.0, 1.0, true, 1.0});
    RationalFunction g = RationalFunction::monomial(1);
    RationalFunction h = RationalFunction::monomial(-1, Complex(c, 0.0));

    CatalogEntry entry;
    entry.name = (c == 1.0) ? "catenoid" : "catenoid:" + fmt_num(c);
    entry.wd.emplace(g, h, dom, default_basepoint(dom));
    entry.expected.end_kind = EndKind::Catenoidal;
    entry.expected.end_multiplicity = 1;
    entry.expected.total_curvature = -4.0 * M_PI;
    entry.expected.generator_flux = Vec3{0.0, 0.0, 2.0 * M_PI * c};
    entry.expected.umbilic_points = 0;
    entry.expected.f_constant = Complex(c, 0.0);
    return entry;
}

CatalogEntry make_enneper(int k, std::optional<AnnulusDomain> domain) {
    if (k < 1) throw InvalidInput("make_enneper: order must be a positive integer");
    AnnulusDomain dom = domain.value_or(AnnulusDomain{});
    RationalFunction g = RationalFunction::monomial(k);

    CatalogEntry entry;
    entry.name = "enneper:" + std::to_string(k);
    entry.wd.emplace(g, g, dom, dom.contains(Complex(0.0)) ? Complex(0.0) : default_basepoint(dom));
    entry.expected.end_kind = EndKind::EnneperType;
    entry.expected.end_multiplicity = 2 * k + 1;
    entry.expected.total_curvature = -4.0 * M_PI * k;
    entry.expected.generator_flux = Vec3{0.0, 0.0, 0.0};
    entry.expected.umbilic_points = (k >= 2) ? 1 : 0;
    return entry;
}

CatalogEntry make_perturbed_enneper(int k, const ComplexPoly& P,
                                    std::optional<AnnulusDomain> domain) {
    if (k < 1) throw InvalidInput("make_perturbed_enneper: order must be a positive integer");
    if (P.degree() > k - 1)
        throw InvalidInput("make_perturbed_enneper: perturbation degree must stay below the order");
    if (P.coeff(0) != Complex(0.0))
        throw InvalidInput("make_perturbed_enneper: perturbation must vanish at the origin");
    if (P.is_zero()) {
        CatalogEntry entry = make_enneper(k, domain);
        entry.name = "perturbed:" + std::to_string(k) + ":";
        return entry;
    }
    AnnulusDomain dom = domain.value_or(AnnulusDomain{});
    RationalFunction g(ComplexPoly::monomial(k) + P);

    CatalogEntry entry;
    std::string coeffs;
    for (int j = 1; j <= P.degree(); ++j) {
        if (j > 1) coeffs += ",";
        const Complex a = P.coeff(j);
        coeffs += fmt_num(a.real());
        if (a.imag() != 0.0) coeffs += (a.imag() > 0 ? "+" : "") + fmt_num(a.imag()) + "i";
    }
    entry.name = "perturbed:" + std::to_string(k) + ":" + coeffs;
    entry.wd.emplace(g, g, dom, dom.contains(Complex(0.0)) ? Complex(0.0) : default_basepoint(dom));
    entry.expected.end_kind = EndKind::EnneperType;
    entry.expected.end_multiplicity = 2 * k + 1;
    entry.expected.total_curvature = -4.0 * M_PI * k;
    entry.expected.generator_flux = Vec3{0.0, 0.0, 0.0};
    return entry;
}

CatalogEntry make_enneper_pair(double R, std::optional<AnnulusDomain> domain) {
    if (!(R > 1.0) || !std::isfinite(R))
        throw InvalidInput("make_enneper_pair: neck ratio must be a finite real greater than 1");
    const double R2 = R * R;
    const double q = R2 + 1.0 / R2;
    RationalFunction g(ComplexPoly({0.0, -R2, 0.0, 1.0}), ComplexPoly({-1.0, 0.0, R2}));
    RationalFunction h(ComplexPoly({-1.0, 0.0, q, 0.0, -1.0}), ComplexPoly::monomial(3, q));
    AnnulusDomain dom = domain.value_or(AnnulusDomain{0.6 / R, 1.6 * R, false, 1.0});

    CatalogEntry entry;
    entry.name = "enneper-pair:" + fmt_num(R);
    entry.wd.emplace(g, h, dom, default_basepoint(dom));
    entry.expected.end_kind = EndKind::EnneperType; // the end at the inner puncture
    entry.expected.end_multiplicity = 3;
    entry.expected.total_curvature = -12.0 * M_PI;
    entry.expected.generator_flux = Vec3{0.0, 0.0, 2.0 * M_PI};
    entry.expected.umbilic_points = 4;
    return entry;
}

CatalogEntry make_plane(Vec3 orientation, double offset) {
    const double n = orientation.norm();
    if (!(n > 1e-12) || !std::isfinite(n))
        throw InvalidInput("make_plane: orientation must be a nonzero vector");
    PlaneChart chart;
    chart.normal = orientation / n;
    chart.offset = offset;
    const Vec3 seed = (std::abs(chart.normal.x) < 0.9) ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
    chart.e1 = (seed - chart.normal * seed.dot(chart.normal)).normalized();
    chart.e2 = chart.normal.cross(chart.e1);

    CatalogEntry entry;
    entry.name = "plane";
    entry.plane = chart;
    entry.expected.totally_umbilic = true;
    entry.expected.total_curvature = 0.0;
    return entry;
}

CriticalCatenoid make_critical_catenoid() {
    // coth t = t has a single root above 1; bisect 1/tanh(t) - t on [1, 2]
    double lo = 1.0, hi = 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double f = 1.0 / std::tanh(mid) - mid;
        (f > 0.0 ? lo : hi) = mid;
    }
    CriticalCatenoid cc;
    cc.t0 = 0.5 * (lo + hi);
    const double ch = std::cosh(cc.t0);
    cc.c = 1.0 / std::sqrt(ch * ch + cc.t0 * cc.t0);
    const double rim = std::exp(cc.t0);
    cc.entry = make_catenoid(cc.c, AnnulusDomain{0.0, rim, true, rim});
    cc.entry.name = "critical-catenoid";
    cc.sphere = SphereSpec{Vec3{cc.c, 0.0, 0.0}, 1.0};
    return cc;
}

namespace {

double parse_real(const std::string& s, const char* what) {
    try {
        size_t idx = 0;
        const double v = std::stod(s, &idx);
        if (idx == s.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw InvalidInput(std::string("catalog name: cannot read ") + what + " from '" + s + "'");
}

int parse_order(const std::string& s) {
    try {
        size_t idx = 0;
        const int v = std::stoi(s, &idx);
        if (idx == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw InvalidInput("catalog name: cannot read an integer order from '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        const size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace

CatalogEntry catalog_lookup(const std::string& name) {
    const std::vector<std::string> parts = split(name, ':');
    const std::string& head = parts[0];
    if (head == "catenoid") {
        if (parts.size() == 1) return make_catenoid(1.0);
        if (parts.size() == 2) return make_catenoid(parse_real(parts[1], "the catenoid scale"));
    } else if (head == "critical-catenoid" && parts.size() == 1) {
        return make_critical_catenoid().entry;
    } else if (head == "enneper" && parts.size() == 2) {
        return make_enneper(parse_order(parts[1]));
    } else if (head == "perturbed" && (parts.size() == 2 || parts.size() == 3)) {
        const int k = parse_order(parts[1]);
        std::vector<Complex> coeffs{0.0}; // power 0 stays zero
        if (parts.size() == 3 && !parts[2].empty())
            for (const std::string& piece : split(parts[2], ','))
                coeffs.push_back(parse_real(piece, "a perturbation coefficient"));
        return make_perturbed_enneper(k, ComplexPoly(coeffs));
    } else if (head == "enneper-pair" && parts.size() == 2) {
        return make_enneper_pair(parse_real(parts[1], "the neck ratio"));
    } else if (head == "plane" && parts.size() == 1) {
        return make_plane(Vec3{1.0, 0.0, 0.0}, 0.0);
    }
    throw InvalidInput("unknown catalog surface '" + name + "'");
}

std::vector<std::pair<std::string, std::string>> catalog_descriptions() {
    return {
        {"catenoid[:c]", "catenoid of scale c (default 1) on the punctured unit disk"},
        {"critical-catenoid", "catenoid piece meeting the unit sphere at a right angle"},
        {"enneper:k", "Enneper surface of order k on the full plane"},
        {"perturbed:k:c1,c2,...", "order-k Enneper with g = z^k + c1 z + c2 z^2 + ..."},
        {"enneper-pair:R", "two Enneper-type ends joined by a neck, ratio R > 1"},
        {"plane", "flat plane through the origin, normal (1,0,0)"},
    };
}

} // namespace minsurf
