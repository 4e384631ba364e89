#include "minsurf/power_series.hpp"
#include "minsurf/errors.hpp"

#include <algorithm>

namespace minsurf {

PowerSeries::PowerSeries(std::vector<Complex> coeffs, int order)
    : order_(order), c_(std::move(coeffs)) {
    if (order_ < 0) throw InvalidInput("negative truncation order");
    c_.resize(static_cast<size_t>(order_) + 1, Complex(0.0));
}

PowerSeries PowerSeries::identity(int order) {
    std::vector<Complex> c(static_cast<size_t>(order) + 1, Complex(0.0));
    if (order >= 1) c[1] = Complex(1.0);
    return PowerSeries(std::move(c), order);
}

PowerSeries PowerSeries::constant(Complex a, int order) {
    std::vector<Complex> c{a};
    return PowerSeries(std::move(c), order);
}

Complex PowerSeries::coeff(int k) const {
    if (k < 0 || k > order_) return Complex(0.0);
    return c_[static_cast<size_t>(k)];
}

PowerSeries PowerSeries::truncated(int order) const {
    std::vector<Complex> c(c_.begin(), c_.begin() + std::min<size_t>(c_.size(), order + 1));
    return PowerSeries(std::move(c), order);
}

PowerSeries PowerSeries::derivative() const {
    if (order_ == 0) return PowerSeries({}, 0);
    std::vector<Complex> d(static_cast<size_t>(order_));
    for (int k = 1; k <= order_; ++k) d[static_cast<size_t>(k - 1)] = double(k) * c_[static_cast<size_t>(k)];
    return PowerSeries(std::move(d), order_ - 1);
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    int n = std::min(a.order_, b.order_);
    std::vector<Complex> c(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[static_cast<size_t>(k)] = a.coeff(k) + b.coeff(k);
    return PowerSeries(std::move(c), n);
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    int n = std::min(a.order_, b.order_);
    std::vector<Complex> c(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c[static_cast<size_t>(k)] = a.coeff(k) - b.coeff(k);
    return PowerSeries(std::move(c), n);
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    int n = std::min(a.order_, b.order_);
    std::vector<Complex> c(static_cast<size_t>(n) + 1, Complex(0.0));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j)
            c[static_cast<size_t>(i + j)] += a.coeff(i) * b.coeff(j);
    return PowerSeries(std::move(c), n);
}

PowerSeries PowerSeries::operator*(Complex s) const {
    PowerSeries out = *this;
    for (Complex& a : out.c_) a *= s;
    return out;
}

PowerSeries PowerSeries::reciprocal() const {
    if (c_[0] == Complex(0.0)) throw NotInvertible("series reciprocal needs a nonzero constant term");
    std::vector<Complex> r(static_cast<size_t>(order_) + 1, Complex(0.0));
    r[0] = Complex(1.0) / c_[0];
    for (int k = 1; k <= order_; ++k) {
        Complex s(0.0);
        for (int j = 1; j <= k; ++j) s += coeff(j) * r[static_cast<size_t>(k - j)];
        r[static_cast<size_t>(k)] = -s / c_[0];
    }
    return PowerSeries(std::move(r), order_);
}

PowerSeries PowerSeries::compose(const PowerSeries& inner) const {
    if (inner.coeff(0) != Complex(0.0))
        throw InvalidInput("series composition needs inner(0) = 0");
    int n = std::min(order_, inner.order_);
    // Horner in the series ring.
    PowerSeries acc = PowerSeries::constant(coeff(order_), n);
    for (int k = order_ - 1; k >= 0; --k) {
        acc = acc * inner.truncated(n);
        acc = acc + PowerSeries::constant(coeff(k), n);
    }
    return acc.truncated(n);
}

PowerSeries PowerSeries::inverse() const {
    if (coeff(0) != Complex(0.0)) throw NotInvertible("compositional inverse needs s(0) = 0");
    if (coeff(1) == Complex(0.0)) throw NotInvertible("compositional inverse needs s'(0) != 0");
    const int n = order_;
    // Coefficient matching: with t = sum t_m w^m, the w^k coefficient of
    // s(t(w)) must vanish for k >= 2; it equals c1*t_k plus terms in lower
    // t's, solved triangularly.
    std::vector<Complex> t(static_cast<size_t>(n) + 1, Complex(0.0));
    if (n >= 1) t[1] = Complex(1.0) / coeff(1);
    PowerSeries tk(std::vector<Complex>(t.begin(), t.end()), n);
    for (int k = 2; k <= n; ++k) {
        Complex mismatch = compose(tk).coeff(k);
        t[static_cast<size_t>(k)] = -mismatch / coeff(1);
        tk = PowerSeries(std::vector<Complex>(t.begin(), t.end()), n);
    }
    return tk;
}

} // namespace minsurf
