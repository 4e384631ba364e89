#include "minsurf/kernels.hpp"
#include "minsurf/errors.hpp"

#include <cstdlib>
#include <cstring>

namespace minsurf::kernels {

#if MINSURF_HAVE_AVX2_TU
const KernelTable* avx2_table_impl(); // defined in kernels_avx2.cpp
#endif

const KernelTable* avx2_table() {
#if MINSURF_HAVE_AVX2_TU
#if defined(__GNUC__) || defined(__clang__)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return avx2_table_impl();
#endif
#endif
    return nullptr;
}

const KernelTable& active() {
    static const KernelTable* chosen = [] {
        const char* env = std::getenv("MINSURF_KERNELS");
        if (env && std::strcmp(env, "scalar") == 0) return &scalar_table();
        const KernelTable* simd = avx2_table();
        if (env && std::strcmp(env, "avx2") == 0 && !simd)
            throw InvalidInput("MINSURF_KERNELS=avx2 requested but AVX2 unavailable");
        return simd ? simd : &scalar_table();
    }();
    return *chosen;
}

void eval_poly_many(const ComplexPoly& p,
                    const std::vector<double>& zr, const std::vector<double>& zi,
                    std::vector<double>& outr, std::vector<double>& outi) {
    const std::size_t n = zr.size();
    outr.assign(n, 0.0);
    outi.assign(n, 0.0);
    if (p.is_zero()) return;
    std::vector<double> cr(p.coeffs().size()), ci(p.coeffs().size());
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
        cr[k] = p.coeffs()[k].real();
        ci[k] = p.coeffs()[k].imag();
    }
    active().poly_eval(cr.data(), ci.data(), cr.size(), zr.data(), zi.data(),
                       outr.data(), outi.data(), n);
}

void eval_rational_many(const RationalFunction& f,
                        const std::vector<double>& zr, const std::vector<double>& zi,
                        std::vector<Complex>& out) {
    std::vector<double> nrr, nri, der, dei;
    eval_poly_many(f.num(), zr, zi, nrr, nri);
    eval_poly_many(f.den(), zr, zi, der, dei);
    const std::size_t n = zr.size();
    out.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = Complex(nrr[k], nri[k]) / Complex(der[k], dei[k]);
}

} // namespace minsurf::kernels
