#pragma once

#include <complex>
#include <vector>

namespace minsurf {

using Complex = std::complex<double>;

/**
 * Dense univariate polynomial over complex doubles.
 *
 * Canonical form: the coefficient of the highest power is nonzero, the zero
 * polynomial has an empty coefficient vector.  Construction trims leading
 * coefficients that are negligible relative to the largest one (1e-12
 * relative), which removes float noise left by cancellation while keeping
 * exact data exact: ring operations on dyadic-rational coefficients never
 * turn a structural zero into a nonzero.
 */
class ComplexPoly {
public:
    ComplexPoly() = default;
    explicit ComplexPoly(std::vector<Complex> coeffs);
    ComplexPoly(std::initializer_list<Complex> coeffs);

    static ComplexPoly constant(Complex a);
    static ComplexPoly monomial(int power, Complex a = Complex(1.0));

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 when zero
    const std::vector<Complex>& coeffs() const { return c_; }
    Complex coeff(int k) const;
    Complex leading() const;

    Complex operator()(Complex z) const; // Horner
    ComplexPoly derivative() const;

    // Multiplicity of the root at 0: number of leading zero coefficients.
    // Exact for exact data; tiny coefficients below the relative trim
    // threshold count as zero.
    int order_at_zero() const;

    ComplexPoly shifted(Complex z0) const;  // p(z + z0)
    ComplexPoly reversed() const;           // z^deg * p(1/z)
    ComplexPoly monic() const;

    ComplexPoly operator-() const;
    ComplexPoly& operator+=(const ComplexPoly& o);
    ComplexPoly& operator-=(const ComplexPoly& o);
    ComplexPoly& operator*=(Complex s);

    friend ComplexPoly operator+(ComplexPoly a, const ComplexPoly& b) { return a += b; }
    friend ComplexPoly operator-(ComplexPoly a, const ComplexPoly& b) { return a -= b; }
    friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b);
    friend ComplexPoly operator*(ComplexPoly a, Complex s) { return a *= s; }
    friend ComplexPoly operator*(Complex s, ComplexPoly a) { return a *= s; }

    bool equals(const ComplexPoly& o, double tol = 0.0) const;

    // Euclidean division a = q*b + r, deg r < deg b.  b must be nonzero.
    static void divmod(const ComplexPoly& a, const ComplexPoly& b,
                       ComplexPoly& q, ComplexPoly& r);

    // All roots with multiplicity (root at 0 taken exactly, the rest from
    // the companion matrix of the deflated polynomial).  Degree >= 1.
    std::vector<Complex> roots() const;

    double max_abs_coeff() const;

private:
    void normalize();
    std::vector<Complex> c_;
};

// Greatest common divisor, monic.  Uses exact arithmetic over Q(i) when all
// coefficients are small dyadic rationals, otherwise a Sylvester-SVD rank
// decision (relative threshold 1e-10) followed by a targeted Euclid run.
ComplexPoly poly_gcd(const ComplexPoly& a, const ComplexPoly& b);

// True when every coefficient is a small dyadic rational, i.e. stored
// exactly and eligible for the exact gcd path.
bool exactly_representable(const ComplexPoly& p);

} // namespace minsurf
