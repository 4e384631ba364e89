#include "minsurf/rational.hpp"
#include "minsurf/errors.hpp"
#include "minsurf/power_series.hpp"

#include <cmath>

namespace minsurf {

RationalFunction::RationalFunction() : num_(), den_(ComplexPoly::constant(1.0)) {}

RationalFunction::RationalFunction(ComplexPoly num, ComplexPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw InvalidInput("rational function with zero denominator");
    reduce();
}

RationalFunction::RationalFunction(ComplexPoly num)
    : num_(std::move(num)), den_(ComplexPoly::constant(1.0)) {}

RationalFunction RationalFunction::constant(Complex a) {
    return RationalFunction(ComplexPoly::constant(a));
}

RationalFunction RationalFunction::monomial(int power, Complex a) {
    if (power >= 0) return RationalFunction(ComplexPoly::monomial(power, a));
    return RationalFunction(ComplexPoly::constant(a), ComplexPoly::monomial(-power));
}

void RationalFunction::reduce() {
    if (num_.is_zero()) {
        den_ = ComplexPoly::constant(1.0);
        return;
    }
    if (num_.degree() > 0 && den_.degree() > 0) {
        ComplexPoly g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            ComplexPoly q, r;
            ComplexPoly::divmod(num_, g, q, r);
            num_ = q;
            ComplexPoly::divmod(den_, g, q, r);
            den_ = q;
        }
    }
    Complex lc = den_.leading();
    ComplexPoly q, r;
    if (lc != Complex(1.0)) {
        den_ = den_.monic();
        num_ *= Complex(1.0) / lc;
    }
}

std::optional<Complex> RationalFunction::eval(Complex z) const {
    // Reduced form: den(z) = 0 is a genuine pole, removable points were
    // cancelled at construction.
    Complex d = den_(z);
    if (d == Complex(0.0)) return std::nullopt;
    return num_(z) / d;
}

Complex RationalFunction::operator()(Complex z) const {
    auto v = eval(z);
    if (!v) throw SingularPoint("evaluation at a pole");
    return *v;
}

RationalFunction RationalFunction::derivative() const {
    // (n/d)' = (n'd - nd')/d^2
    ComplexPoly n = num_.derivative() * den_ - num_ * den_.derivative();
    return RationalFunction(std::move(n), den_ * den_);
}

int RationalFunction::order_at(Complex z0) const {
    if (is_zero()) throw InvalidInput("order of the zero function");
    auto order_poly = [&](const ComplexPoly& p) -> int {
        if (p.degree() == 0) return 0;
        if (z0 == Complex(0.0)) return p.order_at_zero();
        ComplexPoly s = p.shifted(z0);
        if (exactly_representable(p) && exactly_representable(ComplexPoly({z0})))
            return s.order_at_zero();
        // numeric z0: count roots clustered within 1e-8 of z0
        int count = 0;
        for (const Complex& r : p.roots())
            if (std::abs(r - z0) < 1e-8) ++count;
        return count;
    };
    return order_poly(num_) - order_poly(den_);
}

Complex RationalFunction::residue_at(Complex z0) const {
    if (is_zero()) return Complex(0.0);
    ComplexPoly n = (z0 == Complex(0.0)) ? num_ : num_.shifted(z0);
    ComplexPoly d = (z0 == Complex(0.0)) ? den_ : den_.shifted(z0);
    const int p = d.order_at_zero() - n.order_at_zero();
    if (p <= 0) return Complex(0.0);
    // f = z^{-p} * (n~ / d~) with n~(0), d~(0) != 0; the residue is the
    // coefficient of z^{p-1} in the Taylor series of n~/d~.
    std::vector<Complex> nt(n.coeffs().begin() + n.order_at_zero(), n.coeffs().end());
    std::vector<Complex> dt(d.coeffs().begin() + d.order_at_zero(), d.coeffs().end());
    PowerSeries sn(std::move(nt), p - 1), sd(std::move(dt), p - 1);
    PowerSeries q = sn * sd.reciprocal();
    return q.coeff(p - 1);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction out = *this;
    out.num_ = -out.num_;
    return out;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw InvalidInput("division by the zero function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction operator*(const RationalFunction& a, Complex s) {
    RationalFunction out = a;
    out.num_ *= s;
    if (out.num_.is_zero()) out.den_ = ComplexPoly::constant(1.0);
    return out;
}

int RationalFunction::map_degree() const {
    if (is_zero()) return 0;
    return std::max(num_.degree(), den_.degree());
}

} // namespace minsurf
