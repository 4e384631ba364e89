#pragma once

#include "minsurf/complex_poly.hpp"
#include "minsurf/rational.hpp"

#include <cstddef>
#include <vector>

namespace minsurf::kernels {

// Batched inner loops used by the sampling-heavy layers (curvature grids,
// contour sampling, meshing).  Data is SoA: separate real/imaginary arrays.
// Each entry point has a scalar reference implementation and an AVX2
// variant; the active table is chosen once at runtime from cpuid, with the
// MINSURF_KERNELS environment variable ("scalar", "avx2") as an override.
// Variants are equivalence-tested against each other.
struct KernelTable {
    const char* name;

    // Horner evaluation of one complex polynomial (coefficients cr/ci,
    // count nc, index = power) at n points.
    void (*poly_eval)(const double* cr, const double* ci, std::size_t nc,
                      const double* zr, const double* zi,
                      double* outr, double* outi, std::size_t n);

    // Pullback curvature density of the Gauss map g = nu/de:
    //   out = -4 |nu' de - nu de'|^2 / (|nu|^2 + |de|^2)^2,
    // given pointwise values nu (nr,ni), de (dr,di), nu' (pr,pi),
    // de' (qr,qi).  Pole-free by construction.
    void (*spherical_density)(const double* nr, const double* ni,
                              const double* dr, const double* di,
                              const double* pr, const double* pi,
                              const double* qr, const double* qi,
                              double* out, std::size_t n);
};

const KernelTable& scalar_table();
const KernelTable* avx2_table(); // nullptr when unsupported by build or CPU
const KernelTable& active();

// Convenience wrappers over the active table.
void eval_poly_many(const ComplexPoly& p,
                    const std::vector<double>& zr, const std::vector<double>& zi,
                    std::vector<double>& outr, std::vector<double>& outi);

// Pointwise rational values num(z)/den(z); caller guarantees no poles among
// the sample points.
void eval_rational_many(const RationalFunction& f,
                        const std::vector<double>& zr, const std::vector<double>& zi,
                        std::vector<Complex>& out);

} // namespace minsurf::kernels
