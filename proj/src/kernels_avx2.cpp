#include "minsurf/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace minsurf::kernels {

namespace {

void poly_eval_avx2(const double* cr, const double* ci, std::size_t nc,
                    const double* zr, const double* zi,
                    double* outr, double* outi, std::size_t n) {
    std::size_t p = 0;
    for (; p + 4 <= n; p += 4) {
        const __m256d xr = _mm256_loadu_pd(zr + p);
        const __m256d xi = _mm256_loadu_pd(zi + p);
        __m256d yr = _mm256_setzero_pd();
        __m256d yi = _mm256_setzero_pd();
        for (std::size_t k = nc; k-- > 0;) {
            const __m256d ar = _mm256_set1_pd(cr[k]);
            const __m256d ai = _mm256_set1_pd(ci[k]);
            // (yr + i yi)(xr + i xi) + (ar + i ai)
            const __m256d tr = _mm256_fmadd_pd(yr, xr, _mm256_fnmadd_pd(yi, xi, ar));
            const __m256d ti = _mm256_fmadd_pd(yr, xi, _mm256_fmadd_pd(yi, xr, ai));
            yr = tr;
            yi = ti;
        }
        _mm256_storeu_pd(outr + p, yr);
        _mm256_storeu_pd(outi + p, yi);
    }
    if (p < n) scalar_table().poly_eval(cr, ci, nc, zr + p, zi + p, outr + p, outi + p, n - p);
}

void spherical_density_avx2(const double* nr, const double* ni,
                            const double* dr, const double* di,
                            const double* pr, const double* pi,
                            const double* qr, const double* qi,
                            double* out, std::size_t n) {
    const __m256d minus4 = _mm256_set1_pd(-4.0);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d vnr = _mm256_loadu_pd(nr + k), vni = _mm256_loadu_pd(ni + k);
        const __m256d vdr = _mm256_loadu_pd(dr + k), vdi = _mm256_loadu_pd(di + k);
        const __m256d vpr = _mm256_loadu_pd(pr + k), vpi = _mm256_loadu_pd(pi + k);
        const __m256d vqr = _mm256_loadu_pd(qr + k), vqi = _mm256_loadu_pd(qi + k);
        const __m256d er = _mm256_sub_pd(
            _mm256_fmsub_pd(vpr, vdr, _mm256_mul_pd(vpi, vdi)),
            _mm256_fmsub_pd(vnr, vqr, _mm256_mul_pd(vni, vqi)));
        const __m256d ei = _mm256_sub_pd(
            _mm256_fmadd_pd(vpr, vdi, _mm256_mul_pd(vpi, vdr)),
            _mm256_fmadd_pd(vnr, vqi, _mm256_mul_pd(vni, vqr)));
        __m256d s = _mm256_fmadd_pd(vnr, vnr, _mm256_mul_pd(vni, vni));
        s = _mm256_fmadd_pd(vdr, vdr, s);
        s = _mm256_fmadd_pd(vdi, vdi, s);
        const __m256d e2 = _mm256_fmadd_pd(er, er, _mm256_mul_pd(ei, ei));
        const __m256d val = _mm256_div_pd(_mm256_mul_pd(minus4, e2), _mm256_mul_pd(s, s));
        _mm256_storeu_pd(out + k, val);
    }
    if (k < n)
        scalar_table().spherical_density(nr + k, ni + k, dr + k, di + k, pr + k, pi + k,
                                         qr + k, qi + k, out + k, n - k);
}

} // namespace

const KernelTable* avx2_table_impl() {
    static const KernelTable t{"avx2", &poly_eval_avx2, &spherical_density_avx2};
    return &t;
}

} // namespace minsurf::kernels

#endif // __AVX2__ && __FMA__
