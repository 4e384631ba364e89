#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "minsurf/errors.hpp"
#include "minsurf/hopf.hpp"
#include "minsurf/weierstrass.hpp"

#include <cmath>
#include <random>

using namespace minsurf;

namespace {

const double kPi = 3.14159265358979323846;

AnnulusDomain punctured_plane() {
    AnnulusDomain d;
    d.puncture_at_zero = true;
    return d;
}

AnnulusDomain punctured_capillary_disk(double rb = 1.0) {
    AnnulusDomain d;
    d.r_outer = rb;
    d.puncture_at_zero = true;
    d.boundary_circle = rb;
    return d;
}

WeierstrassData catenoid(double c = 1.0) {
    AnnulusDomain dom = punctured_capillary_disk();
    return WeierstrassData(RationalFunction::monomial(1),
                           RationalFunction::monomial(-1, Complex(c)), dom, Complex(1.0));
}

WeierstrassData enneper_pair(double R) {
    const double q = R * R + 1.0 / (R * R);
    RationalFunction g(ComplexPoly{Complex(0.0), Complex(-R * R), Complex(0.0), Complex(1.0)},
                       ComplexPoly{Complex(-1.0), Complex(0.0), Complex(R * R)});
    RationalFunction h(ComplexPoly{Complex(-1.0), Complex(0.0), Complex(q), Complex(0.0),
                                   Complex(-1.0)},
                       ComplexPoly{Complex(0.0), Complex(0.0), Complex(0.0), Complex(q)});
    return WeierstrassData(std::move(g), std::move(h), punctured_capillary_disk(), Complex(1.0));
}

HopfDifferential synthetic(RationalFunction Phi, AnnulusDomain dom = punctured_plane()) {
    return HopfDifferential{std::move(Phi), dom};
}

} // namespace

TEST_SUITE("half integers") {
    TEST_CASE("arithmetic and printing") {
        CHECK(Half(2).value() == 2.0);
        CHECK(Half::halves(-3).value() == -1.5);
        CHECK((Half(1) + Half::halves(1)).twice == 3);
        CHECK(Half(2).str() == "2");
        CHECK(Half::halves(5).str() == "5/2");
        CHECK(Half::halves(-1).str() == "-1/2");
        CHECK(Half::halves(4) == Half(2));
    }
}

TEST_SUITE("hopf differential") {
    TEST_CASE("catalog data reduce to the expected rational forms") {
        const HopfDifferential cat = hopf_differential(catenoid(2.5));
        CHECK(cat.Phi.num().degree() == 0);
        CHECK(cat.Phi.num().coeff(0) == Complex(2.5));
        CHECK(cat.Phi.den().degree() == 2);
        CHECK(cat.Phi.order_at(Complex(0.0)) == -2);

        WeierstrassData enn(RationalFunction::monomial(1), RationalFunction::monomial(1),
                            AnnulusDomain{}, Complex(0.0));
        const HopfDifferential e = hopf_differential(enn);
        CHECK(e.Phi.is_constant());
        CHECK(e.Phi(Complex(0.3, 0.4)) == Complex(1.0));

        // g = z + z^2, h = g/z^2 gives (1 + 2z)/z^2
        WeierstrassData pert(
            RationalFunction(ComplexPoly{Complex(0.0), Complex(1.0), Complex(1.0)}),
            RationalFunction(ComplexPoly{Complex(0.0), Complex(1.0), Complex(1.0)},
                             ComplexPoly{Complex(0.0), Complex(0.0), Complex(1.0)}),
            punctured_plane(), Complex(1.0));
        const HopfDifferential p = hopf_differential(pert);
        CHECK(p.Phi.num().coeff(0) == Complex(1.0));
        CHECK(p.Phi.num().coeff(1) == Complex(2.0));
        CHECK(p.Phi.den().degree() == 2);
    }

    TEST_CASE("matches the second fundamental form at random points") {
        std::mt19937 rng(23);
        std::uniform_real_distribution<double> rad(0.35, 0.9), ang(0.0, 2.0 * kPi);
        const WeierstrassData surfaces[] = {catenoid(0.8), enneper_pair(2.0)};
        for (const auto& wd : surfaces) {
            const HopfDifferential hd = hopf_differential(wd);
            for (int i = 0; i < 20; ++i) {
                const Complex z = std::polar(rad(rng), ang(rng));
                const SurfaceJet j = jet(wd, z);
                const Complex from_jet((j.Nc - j.L) / 2.0, j.M);
                CHECK(std::abs(from_jet - hd.Phi(z)) < 1e-8 * (1.0 + std::abs(hd.Phi(z))));
            }
        }
    }
}

TEST_SUITE("f function") {
    TEST_CASE("catenoid: exactly constant") {
        const HopfFFunction f = f_function(hopf_differential(catenoid(1.0)));
        CHECK(f.f.is_constant());
        for (double th : {0.1, 1.7, 4.4}) {
            const Complex z = std::polar(0.77, th);
            CHECK(f.alpha(z) == 1.0);
            CHECK(f.beta(z) == 0.0);
        }
    }

    TEST_CASE("pole order drops by two against the differential") {
        // Enneper-type end: Phi has a pole of order 4, f = z^2 Phi order 2
        const HopfDifferential hd = hopf_differential(enneper_pair(2.0));
        CHECK(hd.Phi.order_at(Complex(0.0)) == -4);
        const HopfFFunction f = f_function(hd);
        CHECK(f.f.order_at(Complex(0.0)) == -2);
    }

    TEST_CASE("alpha and beta satisfy the mean value property") {
        const HopfFFunction f = f_function(hopf_differential(enneper_pair(2.0)));
        const Complex z0(0.52, -0.31);
        const double r = 0.08;
        const int n = 512;
        double ma = 0.0, mb = 0.0;
        for (int k = 0; k < n; ++k) {
            const Complex z = z0 + std::polar(r, 2.0 * kPi * k / n);
            ma += f.alpha(z);
            mb += f.beta(z);
        }
        ma /= n;
        mb /= n;
        CHECK(std::abs(ma - f.alpha(z0)) < 1e-6 * (1.0 + std::abs(f.alpha(z0))));
        CHECK(std::abs(mb - f.beta(z0)) < 1e-6 * (1.0 + std::abs(f.beta(z0))));
    }
}

TEST_SUITE("umbilics") {
    TEST_CASE("catenoid has none") {
        const auto u = find_umbilics(hopf_differential(catenoid(1.0)), punctured_capillary_disk());
        CHECK(u.empty());
    }

    TEST_CASE("a root on the region rim is excluded") {
        // (1 + 2z)/z^2 vanishes only at -1/2
        const RationalFunction phi(ComplexPoly{Complex(1.0), Complex(2.0)},
                                   ComplexPoly{Complex(0.0), Complex(0.0), Complex(1.0)});
        AnnulusDomain half_disk;
        half_disk.r_outer = 0.5;
        half_disk.puncture_at_zero = true;
        CHECK(find_umbilics(synthetic(phi), half_disk).empty());

        AnnulusDomain bigger;
        bigger.r_outer = 0.6;
        bigger.puncture_at_zero = true;
        const auto u = find_umbilics(synthetic(phi), bigger);
        REQUIRE(u.size() == 1);
        CHECK(std::abs(u[0].location - Complex(-0.5)) < 1e-12);
        CHECK(u[0].order == 1);
        CHECK(u[0].rotation_index == Half::halves(-1));
    }

    TEST_CASE("multiplicities cluster") {
        const auto u = find_umbilics(synthetic(RationalFunction::monomial(3)), AnnulusDomain{});
        REQUIRE(u.size() == 1);
        CHECK(u[0].location == Complex(0.0));
        CHECK(u[0].order == 3);
        CHECK(u[0].rotation_index == Half::halves(-3));
    }

    TEST_CASE("identically zero differential is a distinguished signal") {
        CHECK_THROWS_AS(find_umbilics(synthetic(RationalFunction()), AnnulusDomain{}),
                        TotallyUmbilic);
        CHECK_THROWS_AS(rotation_index_exact(synthetic(RationalFunction()), Complex(0.0)),
                        TotallyUmbilic);
    }
}

TEST_SUITE("rotation indices") {
    TEST_CASE("exact values at zeros, poles, and regular points") {
        CHECK(rotation_index_exact(synthetic(RationalFunction::monomial(1)), Complex(0.0)) ==
              Half::halves(-1));
        CHECK(rotation_index_exact(hopf_differential(catenoid(1.0)), Complex(0.0)) == Half(1));
        CHECK(rotation_index_exact(synthetic(RationalFunction::monomial(-4)), Complex(0.0)) ==
              Half(2));
        CHECK(rotation_index_exact(synthetic(RationalFunction::monomial(1)), Complex(0.7)) ==
              Half(0));
    }

    TEST_CASE("winding agrees with the exact index for monomials") {
        for (int m = -4; m <= 3; ++m) {
            const HopfDifferential hd = synthetic(RationalFunction::monomial(m));
            const Half w = rotation_index_winding(hd, PathSpec::circle(1.0));
            CHECK(w == Half::halves(-m));
            CHECK(w == rotation_index_exact(hd, Complex(0.0)));
        }
    }

    TEST_CASE("constant differential winds zero") {
        const Half w = rotation_index_winding(synthetic(RationalFunction::constant(Complex(2.0, 1.0))),
                                              PathSpec::circle(1.0));
        CHECK(w == Half(0));
    }

    TEST_CASE("catenoid puncture index from the half-radius loop") {
        const Half w =
            rotation_index_winding(hopf_differential(catenoid(1.0)), PathSpec::circle(0.5));
        CHECK(w == Half(1));
    }

    TEST_CASE("aliased sampling is detected") {
        // z^2048 advances the phase by exactly pi per sample at 4096 points
        CHECK_THROWS_AS(
            rotation_index_winding(synthetic(RationalFunction::monomial(2048)), PathSpec::circle(1.0)),
            UndersamplingError);
    }

    TEST_CASE("loops through zeros or poles are rejected") {
        // vertex exactly on the zero
        const PathSpec through_zero = PathSpec::polyline(
            {Complex(0.0), Complex(1.0), Complex(0.0, 1.0)}, true);
        CHECK_THROWS_AS(
            rotation_index_winding(synthetic(RationalFunction::monomial(1)), through_zero, 9),
            InvalidInput);
        // passing arbitrarily close to the zero shows up as a near-pi jump
        CHECK_THROWS_AS(
            rotation_index_winding(synthetic(RationalFunction::monomial(1)),
                                   PathSpec::circle(1.0, Complex(1.0))),
            Error);
        CHECK_THROWS_AS(
            rotation_index_winding(synthetic(RationalFunction::monomial(1)),
                                   PathSpec::segment(Complex(0.0), Complex(1.0))),
            InvalidInput);
    }
}

TEST_SUITE("chart inversion") {
    TEST_CASE("enneper family: pole order k + 3 at the far end") {
        for (int k = 1; k <= 3; ++k) {
            WeierstrassData enn(RationalFunction::monomial(k), RationalFunction::monomial(k),
                                AnnulusDomain{}, Complex(0.0));
            const HopfDifferential hd = hopf_differential(enn);
            CHECK(hd.Phi.order_at(Complex(0.0)) == k - 1);
            const HopfDifferential inv = invert_chart(hd);
            CHECK(inv.Phi.order_at(Complex(0.0)) == -(k + 3));
            const Half idx = rotation_index_exact(inv, Complex(0.0));
            CHECK(idx == Half::halves(k + 3));
        }
    }

    TEST_CASE("weight-four monomial flips to a constant") {
        const HopfDifferential inv = invert_chart(synthetic(RationalFunction::monomial(-4)));
        CHECK(inv.Phi.is_constant());
        CHECK(inv.Phi(Complex(0.3)) == Complex(1.0));
    }

    TEST_CASE("involution holds exactly") {
        const RationalFunction cases[] = {
            RationalFunction(ComplexPoly{Complex(1.0), Complex(2.0)},
                             ComplexPoly{Complex(0.0), Complex(0.0), Complex(1.0)}),
            hopf_differential(enneper_pair(2.0)).Phi,
            RationalFunction::monomial(3, Complex(0.0, 2.0)),
        };
        for (const RationalFunction& phi : cases) {
            const RationalFunction back = invert_chart(invert_chart(synthetic(phi))).Phi;
            CHECK(back.num().equals(phi.num()));
            CHECK(back.den().equals(phi.den()));
        }
    }

    TEST_CASE("domain swaps inside and outside") {
        AnnulusDomain ann{0.5, 2.0, false, 2.0};
        const HopfDifferential inv =
            invert_chart(synthetic(RationalFunction::monomial(1), ann));
        CHECK(inv.domain.r_inner == 0.5);
        CHECK(inv.domain.r_outer == 2.0);
        CHECK(inv.domain.boundary_circle.value() == 0.5);
    }
}

TEST_SUITE("index audits") {
    TEST_CASE("catenoid on the punctured capillary disk") {
        const IndexAudit a =
            index_audit(hopf_differential(catenoid(1.0)), AuditTopology::punctured_capillary_disk());
        REQUIRE(a.entries.size() == 1);
        CHECK(a.entries[0].at == IndexEntry::At::Puncture);
        CHECK(a.entries[0].order == -2);
        CHECK(a.entries[0].index == Half(1));
        CHECK(a.index_sum == Half(1));
        CHECK(a.expected == Half(1));
        CHECK(a.pass);
        CHECK(a.curvature_line_boundary);
        CHECK(!a.indeterminate);
    }

    TEST_CASE("enneper pair: puncture index 2, two umbilics at -1/2 each") {
        const IndexAudit a = index_audit(hopf_differential(enneper_pair(2.0)),
                                         AuditTopology::punctured_capillary_disk());
        REQUIRE(a.entries.size() == 3);
        CHECK(a.entries[0].at == IndexEntry::At::Puncture);
        CHECK(a.entries[0].index == Half(2));
        CHECK(a.entries[1].index == Half::halves(-1));
        CHECK(a.entries[2].index == Half::halves(-1));
        // the interior umbilics sit on the imaginary axis, mirror images
        CHECK(std::abs(a.entries[1].location.real()) < 1e-10);
        CHECK(std::abs(a.entries[1].location + a.entries[2].location) < 1e-10);
        CHECK(a.index_sum == Half(1));
        CHECK(a.pass);
        CHECK(a.curvature_line_boundary);
    }

    TEST_CASE("single interior zero fails the disk count") {
        AnnulusDomain disk{0.0, 1.0, false, 1.0};
        const IndexAudit a = index_audit(synthetic(RationalFunction::monomial(1), disk),
                                         AuditTopology::capillary_disk());
        REQUIRE(a.entries.size() == 1);
        CHECK(a.index_sum == Half::halves(-1));
        CHECK(a.expected == Half(1));
        CHECK(!a.pass);
        CHECK(!a.curvature_line_boundary); // Im(z^3) does not vanish on the rim
        CHECK(!a.indeterminate);
    }

    TEST_CASE("boundary umbilic makes the audit indeterminate") {
        AnnulusDomain disk{0.0, 1.0, false, 1.0};
        const RationalFunction phi(ComplexPoly{Complex(-1.0), Complex(1.0)}); // z - 1
        const IndexAudit a =
            index_audit(synthetic(phi, disk), AuditTopology::capillary_disk());
        CHECK(a.indeterminate);
        CHECK(!a.pass);
        REQUIRE(a.boundary_zeros.size() == 1);
        CHECK(std::abs(a.boundary_zeros[0] - Complex(1.0)) < 1e-8);
    }

    TEST_CASE("sphere accounting is exact for random rational differentials") {
        std::mt19937 rng(101);
        std::uniform_int_distribution<int> degn(0, 6), degd(0, 5);
        std::uniform_int_distribution<int> dyadic(-32, 32);
        const auto rand_poly = [&](int deg) {
            std::vector<Complex> c(deg + 1);
            for (auto& x : c)
                x = Complex(dyadic(rng) / 16.0, dyadic(rng) / 16.0);
            if (std::abs(c.back()) == 0.0) c.back() = Complex(1.0);
            return ComplexPoly(c);
        };
        for (int trial = 0; trial < 20; ++trial) {
            RationalFunction phi(rand_poly(degn(rng)), rand_poly(degd(rng)));
            if (phi.is_zero()) phi = RationalFunction::constant(Complex(1.0));
            const IndexAudit a = index_audit(synthetic(phi), AuditTopology::closed(0));
            CHECK(a.index_sum == Half(2));
            CHECK(a.pass);
        }
    }

    TEST_CASE("closed audit with explicit entries") {
        // (1 + 2z)/z^2: zero at -1/2, double pole at 0, pole of order 3 at
        // infinity; indices -1/2 + 1 + 3/2 = 2
        const RationalFunction phi(ComplexPoly{Complex(1.0), Complex(2.0)},
                                   ComplexPoly{Complex(0.0), Complex(0.0), Complex(1.0)});
        const IndexAudit a = index_audit(synthetic(phi), AuditTopology::closed(0));
        CHECK(a.index_sum == Half(2));
        CHECK(a.pass);
        REQUIRE(a.entries.size() == 3);
        CHECK(a.entries.back().at == IndexEntry::At::Infinity);
        CHECK(a.entries.back().order == -3);
    }

    TEST_CASE("genus target shifts the expectation") {
        const IndexAudit a = index_audit(synthetic(RationalFunction::constant(Complex(1.0))),
                                         AuditTopology::closed(1));
        CHECK(a.index_sum == Half(2));
        CHECK(a.expected == Half(0));
        CHECK(!a.pass);
    }

    TEST_CASE("missing boundary circle is rejected") {
        CHECK_THROWS_AS(index_audit(synthetic(RationalFunction::monomial(1)),
                                    AuditTopology::capillary_disk()),
                        InvalidInput);
    }
}
