#include "bohr/series.hpp"

#include "bohr/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace bohr {

namespace {

using Poly = std::vector<Complex>; // ascending degree

Poly poly_mul(const Poly& a, const Poly& b)
{
    Poly c(a.size() + b.size() - 1, Complex{});
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            c[i + j] += a[i] * b[j];
        }
    }
    return c;
}

Poly poly_axpy(Complex alpha, const Poly& x, Complex beta, const Poly& y)
{
    Poly c(std::max(x.size(), y.size()), Complex{});
    for (std::size_t i = 0; i < x.size(); ++i) {
        c[i] += alpha * x[i];
    }
    for (std::size_t i = 0; i < y.size(); ++i) {
        c[i] += beta * y[i];
    }
    return c;
}

// p(z) -> z^m p(z^k)
Poly poly_lacunary(const Poly& p, int m, int k)
{
    Poly c(static_cast<std::size_t>(m) + (p.size() - 1) * static_cast<std::size_t>(k) + 1, Complex{});
    for (std::size_t i = 0; i < p.size(); ++i) {
        c[static_cast<std::size_t>(m) + i * static_cast<std::size_t>(k)] = p[i];
    }
    return c;
}

Complex poly_eval(const Poly& p, Complex z)
{
    Complex acc{};
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

struct Rational {
    Poly num;
    Poly den;
};

void check_a(double a)
{
    if (!(a >= 0.0 && a < 1.0)) {
        throw Error(ErrorCode::ParamRange, "requires 0<=a<1, got " + std::to_string(a));
    }
}

Rational to_rational(const SchurSpec& s)
{
    Rational r = std::visit(
        [](const auto& d) -> Rational {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, SchurSpec::Blaschke>) {
                Poly num{1.0};
                Poly den{1.0};
                for (Complex alpha : d.zeros) {
                    num = poly_mul(num, Poly{-alpha, 1.0});
                    den = poly_mul(den, Poly{1.0, -std::conj(alpha)});
                }
                return {num, den};
            } else if constexpr (std::is_same_v<T, SchurSpec::MobiusTarget>) {
                const Rational g = to_rational(*d.inner);
                // (a - P/Q) / (1 - a P/Q) = (aQ - P) / (Q - aP)
                return {poly_axpy(d.a, g.den, -1.0, g.num), poly_axpy(1.0, g.den, -d.a, g.num)};
            } else if constexpr (std::is_same_v<T, SchurSpec::LacunaryWrap>) {
                const Rational g = to_rational(*d.inner);
                return {poly_lacunary(g.num, d.m, d.k), poly_lacunary(g.den, 0, d.k)};
            } else if constexpr (std::is_same_v<T, SchurSpec::ExtremalA>) {
                return {poly_lacunary(Poly{d.a, -1.0}, d.m, d.k), poly_lacunary(Poly{1.0, -d.a}, 0, d.k)};
            } else {
                return {Poly{0.0, d.a, -1.0}, Poly{1.0, -d.a}};
            }
        },
        s.definition());
    for (Complex& c : r.num) {
        c *= s.rotation();
    }
    return r;
}

} // namespace

TruncatedSeries TruncatedSeries::polynomial(std::vector<Complex> coeffs)
{
    if (coeffs.empty()) {
        coeffs.push_back(0.0);
    }
    TruncatedSeries t;
    t.trunc_order = static_cast<int>(coeffs.size()) - 1;
    t.coeffs = std::move(coeffs);
    t.coeff_bound = 0.0;
    return t;
}

SchurSpec::SchurSpec(Variant def, Complex rotation) : def_(std::move(def)), rotation_(rotation)
{
}

SchurSpec SchurSpec::blaschke(std::vector<Complex> zeros, Complex rotation)
{
    for (Complex z : zeros) {
        if (!(std::abs(z) < 1.0)) {
            throw Error(ErrorCode::NotInDisk, "Blaschke zero outside the open disk");
        }
    }
    return SchurSpec(Blaschke{std::move(zeros)}, rotation);
}

SchurSpec SchurSpec::mobius_target(double a, SchurSpec inner, Complex rotation)
{
    check_a(a);
    return SchurSpec(MobiusTarget{a, std::make_shared<const SchurSpec>(std::move(inner))}, rotation);
}

SchurSpec SchurSpec::lacunary_wrap(int m, int k, SchurSpec inner)
{
    if (k < 1 || m < 0 || m > k) {
        throw Error(ErrorCode::ParamRange, "lacunary wrap requires 0<=m<=k, k>=1");
    }
    return SchurSpec(LacunaryWrap{m, k, std::make_shared<const SchurSpec>(std::move(inner))}, 1.0);
}

SchurSpec SchurSpec::extremal_a(double a, int m, int k, Complex rotation)
{
    check_a(a);
    if (k < 1 || m < 0) {
        throw Error(ErrorCode::ParamRange, "extremal family requires m>=0, k>=1");
    }
    return SchurSpec(ExtremalA{a, m, k}, rotation);
}

SchurSpec SchurSpec::extremal_omega(double a, Complex rotation)
{
    check_a(a);
    return SchurSpec(ExtremalOmega{a}, rotation);
}

Complex SchurSpec::operator()(Complex z) const
{
    const Rational r = to_rational(*this);
    return poly_eval(r.num, z) / poly_eval(r.den, z);
}

TruncatedSeries taylor_coeffs(const SchurSpec& s, int M)
{
    if (M < 1) {
        throw Error(ErrorCode::ParamRange, "truncation order must be >= 1");
    }
    const Rational r = to_rational(s);
    // Sparse denominator: lacunary wraps leave most entries zero.
    std::vector<std::pair<std::size_t, Complex>> den_terms;
    for (std::size_t j = 1; j < r.den.size(); ++j) {
        if (r.den[j] != Complex{}) {
            den_terms.emplace_back(j, r.den[j]);
        }
    }
    const Complex d0 = r.den[0];
    const auto size = static_cast<std::size_t>(M) + 1;
    std::vector<Complex> c(size, Complex{});
    for (std::size_t n = 0; n < size; ++n) {
        Complex acc = n < r.num.size() ? r.num[n] : Complex{};
        for (const auto& [j, dj] : den_terms) {
            if (j > n) {
                break;
            }
            acc -= dj * c[n - j];
        }
        c[n] = acc / d0;
    }
    TruncatedSeries t;
    t.coeffs = std::move(c);
    t.trunc_order = M;
    t.coeff_bound = 1.0;
    return t;
}

TruncatedSeries lacunary_lift(const TruncatedSeries& g, int m, int k)
{
    if (k < 1 || m < 0 || m > k) {
        throw Error(ErrorCode::ParamRange, "lacunary lift requires 0<=m<=k, k>=1");
    }
    TruncatedSeries t;
    t.trunc_order = g.trunc_order * k + m;
    t.coeffs.assign(static_cast<std::size_t>(t.trunc_order) + 1, Complex{});
    for (std::size_t s = 0; s < g.coeffs.size(); ++s) {
        t.coeffs[s * static_cast<std::size_t>(k) + static_cast<std::size_t>(m)] = g.coeffs[s];
    }
    t.coeff_bound = g.coeff_bound;
    return t;
}

namespace {

void check_radius(double r)
{
    if (!(r >= 0.0 && r < 1.0)) {
        throw Error(ErrorCode::RadiusRange, "requires 0<=r<1, got " + std::to_string(r));
    }
}

} // namespace

double tail_bound_linear(const TruncatedSeries& t, double r)
{
    check_radius(r);
    if (t.coeff_bound == 0.0) {
        return 0.0;
    }
    return t.coeff_bound * std::pow(r, t.trunc_order + 1) / (1.0 - r);
}

double tail_bound_quadratic(const TruncatedSeries& t, double r)
{
    check_radius(r);
    if (t.coeff_bound == 0.0) {
        return 0.0;
    }
    return t.coeff_bound * t.coeff_bound * std::pow(r, 2 * (t.trunc_order + 1)) / (1.0 - r * r);
}

int choose_truncation(double r_max, int base, double target)
{
    check_radius(r_max);
    int M = std::max(base, 1);
    for (;;) {
        const double lin = std::pow(r_max, M + 1) / (1.0 - r_max);
        const double quad = std::pow(r_max, 2 * (M + 1)) / (1.0 - r_max * r_max);
        if (lin + quad < target || M >= kMaxTruncation) {
            return std::min(M, kMaxTruncation);
        }
        M *= 2;
    }
}

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

double SampleRng::uniform()
{
    // 53 high bits; the standard distributions are not bit-reproducible across libraries.
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t SampleRng::below(std::uint64_t n)
{
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
}

SchurDraw draw_schur(SampleRng& rng, const SchurSampleOptions& opts)
{
    SchurDraw d;
    const auto degree = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(opts.max_degree)));
    d.zeros.reserve(static_cast<std::size_t>(degree));
    for (int j = 0; j < degree; ++j) {
        const double rho = opts.zero_radius * std::sqrt(rng.uniform());
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        d.zeros.push_back(std::polar(rho, theta));
    }
    d.rotation = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    d.compose = rng.uniform() < opts.compose_probability;
    d.a = opts.max_a * rng.uniform();
    return d;
}

SchurSpec random_schur(std::uint64_t seed, std::uint64_t sample_id, const SchurSampleOptions& opts)
{
    SampleRng rng(seed, sample_id);
    SchurDraw d = draw_schur(rng, opts);
    SchurSpec b = SchurSpec::blaschke(std::move(d.zeros), d.rotation);
    if (d.compose) {
        return SchurSpec::mobius_target(d.a, std::move(b));
    }
    return b;
}

} // namespace bohr
