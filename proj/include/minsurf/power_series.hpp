#pragma once

#include "minsurf/complex_poly.hpp"

namespace minsurf {

/**
 * Truncated power series: coefficients c[0..order] of sum c_k z^k, with the
 * truncation order carried explicitly.  Arithmetic truncates to the smaller
 * order of the operands.  Coefficient arithmetic is plain double, so integer
 * data stays exact.
 */
class PowerSeries {
public:
    PowerSeries() : order_(0), c_{Complex(0.0)} {}
    PowerSeries(std::vector<Complex> coeffs, int order);
    static PowerSeries identity(int order);    // z
    static PowerSeries constant(Complex a, int order);

    int order() const { return order_; }
    Complex coeff(int k) const;
    const std::vector<Complex>& coeffs() const { return c_; }

    PowerSeries truncated(int order) const;
    PowerSeries derivative() const;

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
    PowerSeries operator*(Complex s) const;

    // 1/this; requires c[0] != 0.
    PowerSeries reciprocal() const;

    // this(inner); requires inner(0) = 0.
    PowerSeries compose(const PowerSeries& inner) const;

    // Compositional inverse t with this(t(w)) = w; requires c[0] = 0 and
    // c[1] != 0.
    PowerSeries inverse() const;

private:
    int order_;
    std::vector<Complex> c_; // size order_+1
};

} // namespace minsurf
