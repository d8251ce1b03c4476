#include "bohr/realroots.hpp"

#include "bohr/error.hpp"

#include <algorithm>
#include <cmath>

namespace bohr {

RealPolynomial::RealPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs))
{
    trim();
}

RealPolynomial RealPolynomial::from_terms(std::initializer_list<Term> terms)
{
    return from_terms(std::span<const Term>(terms.begin(), terms.size()));
}

RealPolynomial RealPolynomial::from_terms(std::span<const Term> terms)
{
    int top = -1;
    for (const auto& t : terms) {
        top = std::max(top, t.power);
    }
    std::vector<double> c(static_cast<std::size_t>(top + 1), 0.0);
    for (const auto& t : terms) {
        c[static_cast<std::size_t>(t.power)] += t.coeff;
    }
    return RealPolynomial(std::move(c));
}

void RealPolynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0.0) {
        coeffs_.pop_back();
    }
}

double RealPolynomial::max_abs_coeff() const noexcept
{
    double m = 0.0;
    for (double c : coeffs_) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

double RealPolynomial::operator()(double x) const noexcept
{
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

RealPolynomial RealPolynomial::derivative() const
{
    if (coeffs_.size() <= 1) {
        return {};
    }
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        d[i - 1] = static_cast<double>(i) * coeffs_[i];
    }
    return RealPolynomial(std::move(d));
}

RealPolynomial RealPolynomial::monic() const
{
    if (is_zero()) {
        return {};
    }
    return (1.0 / leading()) * *this;
}

RealPolynomial RealPolynomial::normalized() const
{
    const double m = max_abs_coeff();
    if (m == 0.0) {
        return {};
    }
    return (1.0 / m) * *this;
}

RealPolynomial RealPolynomial::chopped(double threshold) const
{
    std::vector<double> c = coeffs_;
    for (double& x : c) {
        if (std::abs(x) <= threshold) {
            x = 0.0;
        }
    }
    return RealPolynomial(std::move(c));
}

RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b)
{
    std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = a[i] + b[i];
    }
    return RealPolynomial(std::move(c));
}

RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b)
{
    return a + (-1.0) * b;
}

RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b)
{
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return RealPolynomial(std::move(c));
}

RealPolynomial operator*(double s, const RealPolynomial& p)
{
    std::vector<double> c = p.coeffs_;
    for (double& x : c) {
        x *= s;
    }
    return RealPolynomial(std::move(c));
}

PolynomialDivision divide(const RealPolynomial& num, const RealPolynomial& den, double rel_tol)
{
    if (den.is_zero()) {
        throw Error(ErrorCode::EmptyPolynomial, "division by the zero polynomial");
    }
    if (num.degree() < den.degree()) {
        return {{}, num};
    }
    std::vector<double> rem(num.coeffs().begin(), num.coeffs().end());
    const auto dn = static_cast<std::size_t>(den.degree());
    std::vector<double> quo(rem.size() - dn, 0.0);
    for (std::size_t k = quo.size(); k-- > 0;) {
        const double q = rem[k + dn] / den.leading();
        quo[k] = q;
        for (std::size_t j = 0; j <= dn; ++j) {
            rem[k + j] -= q * den[j];
        }
        rem[k + dn] = 0.0;
    }
    const double scale = num.max_abs_coeff();
    return {RealPolynomial(std::move(quo)), RealPolynomial(std::move(rem)).chopped(rel_tol * scale)};
}

RealPolynomial polynomial_gcd(const RealPolynomial& a, const RealPolynomial& b, double rel_tol)
{
    RealPolynomial x = a.normalized();
    RealPolynomial y = b.normalized();
    if (x.degree() < y.degree()) {
        std::swap(x, y);
    }
    while (!y.is_zero()) {
        RealPolynomial r = divide(x, y, rel_tol).remainder;
        x = std::move(y);
        y = r.normalized();
    }
    return x.monic();
}

std::vector<SquareFreeFactor> square_free_decomposition(const RealPolynomial& p)
{
    if (p.is_zero()) {
        throw Error(ErrorCode::EmptyPolynomial, "square-free decomposition of the zero polynomial");
    }
    constexpr double tol = 1e-10;
    std::vector<SquareFreeFactor> out;
    const RealPolynomial f = p.monic();
    if (f.degree() == 0) {
        return out;
    }
    const RealPolynomial df = f.derivative();
    const RealPolynomial g = polynomial_gcd(f, df, tol);
    RealPolynomial b = divide(f, g, tol).quotient.monic();
    RealPolynomial c = divide(df, g, tol).quotient;
    RealPolynomial bd = b.derivative();
    RealPolynomial d = (c - bd).chopped(tol * std::max(c.max_abs_coeff(), bd.max_abs_coeff()));
    for (int i = 1; b.degree() > 0; ++i) {
        if (i > f.degree()) {
            // Rounding kept the gcd chain from splitting off the rest.
            out.push_back({b, i - 1});
            break;
        }
        const RealPolynomial a = polynomial_gcd(b, d, tol);
        if (a.degree() > 0) {
            out.push_back({a, i});
        }
        b = divide(b, a, tol).quotient.monic();
        c = divide(d, a, tol).quotient;
        bd = b.derivative();
        d = (c - bd).chopped(tol * std::max(c.max_abs_coeff(), bd.max_abs_coeff()));
    }
    return out;
}

RealPolynomial square_free_factor(const RealPolynomial& p)
{
    if (p.is_zero()) {
        throw Error(ErrorCode::EmptyPolynomial, "square-free part of the zero polynomial");
    }
    const RealPolynomial f = p.monic();
    if (f.degree() <= 0) {
        return f;
    }
    const RealPolynomial g = polynomial_gcd(f, f.derivative());
    return divide(f, g).quotient.monic();
}

namespace {

// Relative sizes below which a value counts as zero, measured against the
// rounding scale sum |q_i| x^i of its evaluation. Tangency needs to sit close
// to the Horner noise floor; derivative tests at a root absorb its location error.
constexpr double kTangencyTolerance = 1e-13;
constexpr double kVanishTolerance = 1e-10;

int sign(double v)
{
    return (v > 0.0) - (v < 0.0);
}

double condition_sum(const RealPolynomial& q, double x)
{
    double acc = 0.0;
    const auto c = q.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * std::abs(x) + std::abs(*it);
    }
    return acc;
}

bool vanishes(const RealPolynomial& q, double x, double rel)
{
    return std::abs(q(x)) <= rel * condition_sum(q, x);
}

double bisect(const RealPolynomial& q, double lo, double hi, double tol)
{
    int slo = sign(q(lo));
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const int sm = sign(q(mid));
        if (sm == 0) {
            return mid;
        }
        if (sm == slo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Distinct roots of q strictly inside (lo, hi). The roots of q' split the
// interval into monotone pieces; each piece holds at most one sign-change
// root, and a root of q' where q vanishes is a tangential root of q.
std::vector<double> isolate(const RealPolynomial& q, double lo, double hi, double tol)
{
    std::vector<double> roots;
    if (q.degree() <= 0) {
        return roots;
    }
    if (q.degree() == 1) {
        const double x = -q[0] / q[1];
        if (x > lo && x < hi) {
            roots.push_back(x);
        }
        return roots;
    }
    std::vector<double> pts{lo};
    for (double c : isolate(q.derivative(), lo, hi, std::max(tol * 1e-2, 1e-15))) {
        pts.push_back(c);
    }
    pts.push_back(hi);
    std::vector<int> signs(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const bool zero = vanishes(q, pts[i], kTangencyTolerance);
        signs[i] = zero ? 0 : sign(q(pts[i]));
        if (zero && i > 0 && i + 1 < pts.size()) {
            roots.push_back(pts[i]);
        }
    }
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (signs[i] * signs[i + 1] < 0) {
            roots.push_back(bisect(q, pts[i], pts[i + 1], tol));
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

int multiplicity_at(const RealPolynomial& p, double x)
{
    int mult = 1;
    RealPolynomial d = p.derivative();
    while (d.degree() > 0 && vanishes(d, x, kVanishTolerance)) {
        ++mult;
        d = d.derivative();
    }
    return mult;
}

} // namespace

RootSet roots_in_unit_interval(const RealPolynomial& p, double tol)
{
    if (p.is_zero()) {
        throw Error(ErrorCode::EmptyPolynomial, "root isolation of the zero polynomial");
    }
    const RealPolynomial q = p.normalized();
    RootSet rs;
    for (double v : isolate(q, 0.0, 1.0, tol)) {
        // Bisection and tangency detection can report one root twice.
        if (!rs.roots.empty() && v - rs.roots.back().value <= 10.0 * tol) {
            continue;
        }
        rs.roots.push_back({v, multiplicity_at(q, v)});
    }
    return rs;
}

double maximal_root(const RootSet& rs)
{
    if (rs.empty()) {
        throw Error(ErrorCode::NoRootInInterval, "no root in (0, 1)");
    }
    return rs.roots.back().value;
}

} // namespace bohr
