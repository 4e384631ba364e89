#include "minsurf/kernels.hpp"

namespace minsurf::kernels {

namespace {

void poly_eval_scalar(const double* cr, const double* ci, std::size_t nc,
                      const double* zr, const double* zi,
                      double* outr, double* outi, std::size_t n) {
    for (std::size_t p = 0; p < n; ++p) {
        double yr = 0.0, yi = 0.0;
        const double xr = zr[p], xi = zi[p];
        for (std::size_t k = nc; k-- > 0;) {
            const double tr = yr * xr - yi * xi + cr[k];
            const double ti = yr * xi + yi * xr + ci[k];
            yr = tr;
            yi = ti;
        }
        outr[p] = yr;
        outi[p] = yi;
    }
}

void spherical_density_scalar(const double* nr, const double* ni,
                              const double* dr, const double* di,
                              const double* pr, const double* pi,
                              const double* qr, const double* qi,
                              double* out, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        // e = nu' * de - nu * de'
        const double er = (pr[k] * dr[k] - pi[k] * di[k]) - (nr[k] * qr[k] - ni[k] * qi[k]);
        const double ei = (pr[k] * di[k] + pi[k] * dr[k]) - (nr[k] * qi[k] + ni[k] * qr[k]);
        const double s = nr[k] * nr[k] + ni[k] * ni[k] + dr[k] * dr[k] + di[k] * di[k];
        out[k] = -4.0 * (er * er + ei * ei) / (s * s);
    }
}

} // namespace

const KernelTable& scalar_table() {
    static const KernelTable t{"scalar", &poly_eval_scalar, &spherical_density_scalar};
    return t;
}

} // namespace minsurf::kernels
