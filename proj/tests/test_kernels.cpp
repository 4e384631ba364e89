#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minsurf/kernels.hpp"

#include <cmath>
#include <random>

using namespace minsurf;

namespace {

std::mt19937 rng(0xc0de);

std::vector<double> rand_vec(size_t n, double lo = -1.5, double hi = 1.5) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = d(rng);
    return v;
}

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("active table is valid and reports its lane") {
    const auto& t = kernels::active();
    CHECK(t.poly_eval != nullptr);
    CHECK(t.spherical_density != nullptr);
    // On hosts with AVX2 the dispatcher must pick the SIMD lane unless
    // overridden through the environment.
#if defined(__GNUC__)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma") &&
        std::getenv("MINSURF_KERNELS") == nullptr) {
        CHECK(std::string(t.name) == "avx2");
    }
#endif
}

TEST_CASE("poly_eval lanes agree") {
    const auto* simd = kernels::avx2_table();
    if (!simd) return; // nothing to compare on this host
    for (size_t n : {1u, 3u, 4u, 7u, 64u, 1001u}) {
        for (size_t nc : {1u, 2u, 5u, 9u}) {
            auto cr = rand_vec(nc), ci = rand_vec(nc);
            auto zr = rand_vec(n), zi = rand_vec(n);
            std::vector<double> ar(n), ai(n), br(n), bi(n);
            kernels::scalar_table().poly_eval(cr.data(), ci.data(), nc, zr.data(), zi.data(),
                                              ar.data(), ai.data(), n);
            simd->poly_eval(cr.data(), ci.data(), nc, zr.data(), zi.data(),
                            br.data(), bi.data(), n);
            // FMA rounding differs from the scalar reference by a few ulp of
            // the accumulated magnitude.
            double cond = 0.0;
            for (size_t k = 0; k < nc; ++k) cond += std::hypot(cr[k], ci[k]) * std::pow(1.5, double(k));
            for (size_t k = 0; k < n; ++k) {
                CHECK(std::abs(ar[k] - br[k]) <= 1e-13 * cond);
                CHECK(std::abs(ai[k] - bi[k]) <= 1e-13 * cond);
            }
        }
    }
}

TEST_CASE("spherical_density lanes agree") {
    const auto* simd = kernels::avx2_table();
    if (!simd) return;
    for (size_t n : {2u, 4u, 5u, 130u}) {
        auto nr = rand_vec(n), ni = rand_vec(n), dr = rand_vec(n, 0.5, 2.0), di = rand_vec(n);
        auto pr = rand_vec(n), pi = rand_vec(n), qr = rand_vec(n), qi = rand_vec(n);
        std::vector<double> a(n), b(n);
        kernels::scalar_table().spherical_density(nr.data(), ni.data(), dr.data(), di.data(),
                                                  pr.data(), pi.data(), qr.data(), qi.data(),
                                                  a.data(), n);
        simd->spherical_density(nr.data(), ni.data(), dr.data(), di.data(),
                                pr.data(), pi.data(), qr.data(), qi.data(), b.data(), n);
        for (size_t k = 0; k < n; ++k)
            CHECK(std::abs(a[k] - b[k]) <= 1e-12 * (1.0 + std::abs(a[k])));
    }
}

TEST_CASE("poly_eval matches ComplexPoly horner") {
    ComplexPoly p({Complex(1.0, -2.0), Complex(0.5, 0.0), Complex(0.0, 3.0)});
    auto zr = rand_vec(37), zi = rand_vec(37);
    std::vector<double> outr, outi;
    kernels::eval_poly_many(p, zr, zi, outr, outi);
    for (size_t k = 0; k < zr.size(); ++k) {
        Complex want = p(Complex(zr[k], zi[k]));
        CHECK(std::abs(Complex(outr[k], outi[k]) - want) < 1e-12 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("density formula matches the jet-level curvature on samples") {
    // g = z: K*Lambda^2 = -4/(1+|z|^2)^2
    ComplexPoly gn = ComplexPoly::monomial(1), gd = ComplexPoly::constant(1.0);
    auto zr = rand_vec(16), zi = rand_vec(16);
    std::vector<double> nr, ni, dr, di, pr, pi, qr, qi;
    kernels::eval_poly_many(gn, zr, zi, nr, ni);
    kernels::eval_poly_many(gd, zr, zi, dr, di);
    kernels::eval_poly_many(gn.derivative(), zr, zi, pr, pi);
    kernels::eval_poly_many(gd.derivative(), zr, zi, qr, qi);
    std::vector<double> out(zr.size());
    kernels::active().spherical_density(nr.data(), ni.data(), dr.data(), di.data(),
                                        pr.data(), pi.data(), qr.data(), qi.data(),
                                        out.data(), out.size());
    for (size_t k = 0; k < out.size(); ++k) {
        double r2 = zr[k] * zr[k] + zi[k] * zi[k];
        CHECK(out[k] == doctest::Approx(-4.0 / ((1.0 + r2) * (1.0 + r2))).epsilon(1e-12));
    }
}

} // TEST_SUITE kernels
