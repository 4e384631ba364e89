#pragma once

#include "minsurf/path.hpp"

#include <functional>

namespace minsurf {

/**
 * Adaptive Gauss-Legendre quadrature (15-point panels, bisection on
 * disagreement) for complex-valued integrands over a real parameter.
 * Absolute tolerance; throws IntegrationError when the recursion depth
 * limit is hit before convergence.
 */
Complex integrate_adaptive(const std::function<Complex(double)>& f,
                           double a, double b, double abs_tol = 1e-11);

// Contour integral of a holomorphic-away-from-poles integrand along a
// piecewise-smooth path: sum over pieces of integral f(z(s)) z'(s) ds.
Complex integrate_path(const std::function<Complex(Complex)>& f,
                       const PathSpec& path, double abs_tol = 1e-11);

} // namespace minsurf
