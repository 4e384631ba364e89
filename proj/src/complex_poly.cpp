#include "minsurf/complex_poly.hpp"
#include "minsurf/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>

namespace minsurf {

namespace {
constexpr double kTrimRel = 1e-12;

bool small_dyadic(double v) {
    if (v == 0.0) return true;
    if (!std::isfinite(v)) return false;
    int e = 0;
    double f = std::frexp(v, &e); // |f| in [0.5, 1)
    if (e > 41 || e < -64) return false;
    double t = std::ldexp(f, 41);
    return t == std::nearbyint(t);
}
} // namespace

ComplexPoly::ComplexPoly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {
    normalize();
}

ComplexPoly::ComplexPoly(std::initializer_list<Complex> coeffs) : c_(coeffs) {
    normalize();
}

ComplexPoly ComplexPoly::constant(Complex a) {
    return ComplexPoly(std::vector<Complex>{a});
}

ComplexPoly ComplexPoly::monomial(int power, Complex a) {
    if (power < 0) throw InvalidInput("monomial power must be >= 0");
    std::vector<Complex> c(static_cast<size_t>(power) + 1, Complex(0.0));
    c.back() = a;
    return ComplexPoly(std::move(c));
}

void ComplexPoly::normalize() {
    double scale = 0.0;
    for (const Complex& a : c_) scale = std::max(scale, std::abs(a));
    if (scale == 0.0) {
        c_.clear();
        return;
    }
    const double eps = kTrimRel * scale;
    while (!c_.empty() && std::abs(c_.back()) <= eps) c_.pop_back();
    // Also flush sub-threshold interior noise to exact zero so that
    // order_at_zero and Laurent expansions see clean data.
    for (Complex& a : c_)
        if (std::abs(a) <= eps) a = Complex(0.0);
}

Complex ComplexPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Complex(0.0);
    return c_[static_cast<size_t>(k)];
}

Complex ComplexPoly::leading() const {
    if (is_zero()) throw InvalidInput("leading coefficient of zero polynomial");
    return c_.back();
}

Complex ComplexPoly::operator()(Complex z) const {
    Complex y(0.0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) y = y * z + *it;
    return y;
}

ComplexPoly ComplexPoly::derivative() const {
    if (c_.size() <= 1) return ComplexPoly();
    std::vector<Complex> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = double(k) * c_[k];
    return ComplexPoly(std::move(d));
}

int ComplexPoly::order_at_zero() const {
    if (is_zero()) throw InvalidInput("order of zero polynomial");
    int k = 0;
    while (c_[static_cast<size_t>(k)] == Complex(0.0)) ++k;
    return k;
}

ComplexPoly ComplexPoly::shifted(Complex z0) const {
    // Repeated synthetic division by (z - z0), in place.  Exact for integer
    // data and dyadic z0.
    if (is_zero()) return ComplexPoly();
    std::vector<Complex> work = c_;
    const int n = degree();
    for (int i = 0; i < n; ++i)
        for (int k = n - 1; k >= i; --k)
            work[static_cast<size_t>(k)] += z0 * work[static_cast<size_t>(k) + 1];
    return ComplexPoly(std::move(work));
}

ComplexPoly ComplexPoly::reversed() const {
    std::vector<Complex> r(c_.rbegin(), c_.rend());
    return ComplexPoly(std::move(r));
}

ComplexPoly ComplexPoly::monic() const {
    if (is_zero()) throw InvalidInput("monic of zero polynomial");
    ComplexPoly out = *this;
    Complex lc = c_.back();
    for (Complex& a : out.c_) a /= lc;
    out.c_.back() = Complex(1.0); // exact by construction
    return out;
}

ComplexPoly ComplexPoly::operator-() const {
    ComplexPoly out = *this;
    for (Complex& a : out.c_) a = -a;
    return out;
}

ComplexPoly& ComplexPoly::operator+=(const ComplexPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Complex(0.0));
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    normalize();
    return *this;
}

ComplexPoly& ComplexPoly::operator-=(const ComplexPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Complex(0.0));
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    normalize();
    return *this;
}

ComplexPoly& ComplexPoly::operator*=(Complex s) {
    if (s == Complex(0.0)) {
        c_.clear();
        return *this;
    }
    for (Complex& a : c_) a *= s;
    normalize();
    return *this;
}

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
    if (a.is_zero() || b.is_zero()) return ComplexPoly();
    std::vector<Complex> out(a.c_.size() + b.c_.size() - 1, Complex(0.0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return ComplexPoly(std::move(out));
}

bool ComplexPoly::equals(const ComplexPoly& o, double tol) const {
    size_t n = std::max(c_.size(), o.c_.size());
    for (size_t k = 0; k < n; ++k)
        if (std::abs(coeff(int(k)) - o.coeff(int(k))) > tol) return false;
    return true;
}

double ComplexPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const Complex& a : c_) m = std::max(m, std::abs(a));
    return m;
}

void ComplexPoly::divmod(const ComplexPoly& a, const ComplexPoly& b,
                         ComplexPoly& q, ComplexPoly& r) {
    if (b.is_zero()) throw InvalidInput("polynomial division by zero");
    if (a.degree() < b.degree()) {
        q = ComplexPoly();
        r = a;
        return;
    }
    std::vector<Complex> rem = a.c_;
    std::vector<Complex> quot(static_cast<size_t>(a.degree() - b.degree()) + 1, Complex(0.0));
    const Complex lead = b.c_.back();
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        Complex f = rem[static_cast<size_t>(k + b.degree())] / lead;
        quot[static_cast<size_t>(k)] = f;
        for (int j = 0; j <= b.degree(); ++j)
            rem[static_cast<size_t>(k + j)] -= f * b.c_[static_cast<size_t>(j)];
    }
    // Degrees at or above deg b hold exact cancellation garbage; drop them.
    rem.resize(static_cast<size_t>(std::max(b.degree(), 0)));
    q = ComplexPoly(std::move(quot));
    r = ComplexPoly(std::move(rem));
}

std::vector<Complex> ComplexPoly::roots() const {
    if (degree() < 1) throw InvalidInput("roots of a constant polynomial");
    int m = order_at_zero();
    std::vector<Complex> out(static_cast<size_t>(m), Complex(0.0));
    std::vector<Complex> c(c_.begin() + m, c_.end());
    int n = static_cast<int>(c.size()) - 1;
    if (n == 1) {
        out.push_back(-c[0] / c[1]);
        return out;
    }
    if (n >= 2) {
        Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
        for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
        const Complex lc = c.back();
        for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[static_cast<size_t>(i)] / lc;
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
        for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
    }
    return out;
}

bool exactly_representable(const ComplexPoly& p) {
    for (const Complex& a : p.coeffs())
        if (!small_dyadic(a.real()) || !small_dyadic(a.imag())) return false;
    return true;
}

// ---------------------------------------------------------------------------
// gcd

namespace {

using BigRat = boost::multiprecision::cpp_rational;

struct GaussRat {
    BigRat re, im;
    bool is_zero() const { return re == 0 && im == 0; }
};

GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re - b.re, a.im - b.im}; }
GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
GaussRat operator/(const GaussRat& a, const GaussRat& b) {
    BigRat n2 = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n2, (a.im * b.re - a.re * b.im) / n2};
}

using ExactPoly = std::vector<GaussRat>; // index = power, trimmed

ExactPoly to_exact(const ComplexPoly& p) {
    ExactPoly out;
    out.reserve(p.coeffs().size());
    for (const Complex& a : p.coeffs()) out.push_back({BigRat(a.real()), BigRat(a.imag())});
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

ComplexPoly from_exact(const ExactPoly& p) {
    std::vector<Complex> c;
    c.reserve(p.size());
    for (const GaussRat& a : p)
        c.emplace_back(a.re.convert_to<double>(), a.im.convert_to<double>());
    return ComplexPoly(std::move(c));
}

ExactPoly exact_rem(ExactPoly a, const ExactPoly& b) {
    while (a.size() >= b.size()) {
        GaussRat f = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t j = 0; j < b.size(); ++j) a[off + j] = a[off + j] - f * b[j];
        a.pop_back();
        while (!a.empty() && a.back().is_zero()) a.pop_back();
    }
    return a;
}

ComplexPoly gcd_exact(const ComplexPoly& pa, const ComplexPoly& pb) {
    ExactPoly a = to_exact(pa), b = to_exact(pb);
    while (!b.empty()) {
        ExactPoly r = exact_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    // monic normalization, still exact
    GaussRat lc = a.back();
    for (GaussRat& x : a) x = x / lc;
    return from_exact(a);
}

int gcd_degree_svd(const ComplexPoly& a, const ComplexPoly& b) {
    const int m = a.degree(), n = b.degree();
    const int dim = m + n;
    if (dim == 0) return 0;
    Eigen::MatrixXcd syl = Eigen::MatrixXcd::Zero(dim, dim);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) syl(r, r + k) = a.coeff(m - k);
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) syl(n + r, r + k) = b.coeff(n - k);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(syl);
    const auto& sv = svd.singularValues();
    const double thresh = 1e-10 * sv(0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > thresh) ++rank;
    return dim - rank; // degree of the gcd
}

ComplexPoly gcd_threshold(const ComplexPoly& a, const ComplexPoly& b) {
    const int dg = gcd_degree_svd(a, b);
    if (dg == 0) return ComplexPoly::constant(1.0);
    ComplexPoly x = a.monic(), y = b.monic();
    if (x.degree() < y.degree()) std::swap(x, y);
    const double scale = std::max(a.max_abs_coeff(), b.max_abs_coeff());
    while (y.degree() > dg) {
        ComplexPoly q, r;
        ComplexPoly::divmod(x, y, q, r);
        if (r.is_zero() || r.max_abs_coeff() < 1e-10 * scale) break;
        x = std::move(y);
        y = r.monic();
    }
    return y.monic();
}

} // namespace

ComplexPoly poly_gcd(const ComplexPoly& a, const ComplexPoly& b) {
    if (a.is_zero() && b.is_zero()) throw InvalidInput("gcd(0, 0) undefined");
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.degree() == 0 || b.degree() == 0) return ComplexPoly::constant(1.0);
    if (exactly_representable(a) && exactly_representable(b)) return gcd_exact(a, b);
    return gcd_threshold(a, b);
}

} // namespace minsurf
