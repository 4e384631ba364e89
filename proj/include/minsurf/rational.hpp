#pragma once

#include "minsurf/complex_poly.hpp"

#include <optional>

namespace minsurf {

/**
 * Quotient of two complex polynomials, kept reduced.
 *
 * Canonical form: num and den share no common factor (up to the gcd
 * tolerance) and den is monic.  Arithmetic reduces eagerly so that pole and
 * zero orders read off the stored polynomials are meaningful.
 */
class RationalFunction {
public:
    RationalFunction(); // zero
    RationalFunction(ComplexPoly num, ComplexPoly den);
    explicit RationalFunction(ComplexPoly num);

    static RationalFunction constant(Complex a);
    // z^k for any integer k (negative gives 1/z^{-k}).
    static RationalFunction monomial(int power, Complex a = Complex(1.0));

    const ComplexPoly& num() const { return num_; }
    const ComplexPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    // Pole-aware evaluation: nullopt signals a pole of positive order at z.
    std::optional<Complex> eval(Complex z) const;
    // Throwing evaluation for contexts where a pole is a logic error.
    Complex operator()(Complex z) const;

    RationalFunction derivative() const;

    // Order of vanishing at z0: multiplicity of zero (> 0), of pole (< 0),
    // 0 otherwise.  Exact at z0 = 0; elsewhere exact shift when coefficients
    // and z0 are exactly representable, root clustering (radius 1e-8) as the
    // fallback.  f must not be the zero function.
    int order_at(Complex z0) const;

    // Coefficient of (z - z0)^{-1} in the Laurent expansion at z0.
    Complex residue_at(Complex z0) const;

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, Complex s);
    friend RationalFunction operator*(Complex s, const RationalFunction& a) { return a * s; }

    // max(deg num, deg den); degree of the induced map on the sphere when
    // num and den are coprime.  Zero function has degree 0.
    int map_degree() const;

private:
    void reduce();
    ComplexPoly num_, den_;
};

} // namespace minsurf
