#include "bohr/functionals.hpp"

#include "bohr/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace bohr {

namespace {

constexpr double kSupportTol = 1e-12;

constexpr std::array<std::pair<FunctionalKind, std::string_view>, 9> kNames{{
    {FunctionalKind::Lemma12, "lemma12"},
    {FunctionalKind::AFunc, "a"},
    {FunctionalKind::BFunc, "b"},
    {FunctionalKind::CFunc, "c"},
    {FunctionalKind::IFunc, "i"},
    {FunctionalKind::RefinedN1, "n1"},
    {FunctionalKind::Harmonic, "harmonic"},
    {FunctionalKind::BaselineSym, "baseline-sym"},
    {FunctionalKind::BaselineNorm, "baseline-norm"},
}};

void check_radius(double r)
{
    if (!(r >= 0.0 && r < 1.0)) {
        throw Error(ErrorCode::RadiusRange, "requires 0<=r<1, got " + std::to_string(r));
    }
}

void check_profile(int m, int k)
{
    if (k < 1 || m < 0 || m > k) {
        throw Error(ErrorCode::FamilyConstraint, "requires 0<=m<=k");
    }
}

// r^0 .. r^n
std::vector<double> powers(double r, std::size_t n)
{
    std::vector<double> p(n + 1);
    p[0] = 1.0;
    for (std::size_t i = 1; i <= n; ++i) {
        p[i] = p[i - 1] * r;
    }
    return p;
}

std::size_t size_of(const TruncatedSeries& f)
{
    return f.coeffs.size();
}

// Sum over n > M of coeff_bound^2 r^{2n + shift}, shift >= -(2M+2).
double shifted_quadratic_tail(const TruncatedSeries& f, double r, int shift)
{
    if (f.coeff_bound == 0.0) {
        return 0.0;
    }
    return f.coeff_bound * f.coeff_bound * std::pow(r, 2 * (f.trunc_order + 1) + shift) / (1.0 - r * r);
}

void check_lacunary_support(const TruncatedSeries& f, int m, int k)
{
    for (std::size_t n = 0; n < size_of(f); ++n) {
        const int i = static_cast<int>(n);
        const bool on_profile = i >= m && (i - m) % k == 0;
        if (!on_profile && std::abs(f.coeffs[n]) > kSupportTol) {
            throw Error(ErrorCode::SupportMismatch,
                        "coefficient at index " + std::to_string(i) + " is off the profile (m=" + std::to_string(m) +
                            ", k=" + std::to_string(k) + ")");
        }
    }
}

void check_norm_support(const TruncatedSeries& f, int N, int m)
{
    if (N < m + 1) {
        throw Error(ErrorCode::FamilyConstraint, "requires N>=m+1");
    }
    for (int i = 0; i < N && i < static_cast<int>(size_of(f)); ++i) {
        if (i != m && f.magnitude(i) > kSupportTol) {
            throw Error(ErrorCode::SupportMismatch,
                        "coefficient at index " + std::to_string(i) + " lies outside {m} and {N, N+1, ...}");
        }
    }
}

// Shared core of the C and I functionals; also used by the harmonic sum.
FunctionalValue lacunary_core(const TruncatedSeries& f, int m, int k, double r, int start)
{
    check_radius(r);
    check_profile(m, k);
    check_lacunary_support(f, m, k);
    const std::size_t M = size_of(f) - 1;
    const auto pw = powers(r, 2 * M + static_cast<std::size_t>(k));
    const double c0 = f.magnitude(m);
    const double rk = pw[static_cast<std::size_t>(k)];
    const double w1 = 1.0 / (1.0 + c0);
    const double w2 = 1.0 / (1.0 - rk);

    double lhs = c0 * pw[static_cast<std::size_t>(m)];
    for (std::size_t n = static_cast<std::size_t>(m + k), s = 1; n <= M; n += static_cast<std::size_t>(k), ++s) {
        const double c = f.magnitude(static_cast<int>(n));
        if (c == 0.0) {
            continue;
        }
        lhs += c * pw[n];
        if (static_cast<int>(s) >= start) {
            const std::size_t e = 2 * n - static_cast<std::size_t>(m);
            lhs += c * c * (pw[e] * w1 + pw[e + static_cast<std::size_t>(k)] * w2);
        }
    }
    const double tail = tail_bound_linear(f, r) + w1 * shifted_quadratic_tail(f, r, -m) +
                        w2 * shifted_quadratic_tail(f, r, k - m);
    return make_value(lhs, 1.0, tail + rounding_allowance(2 * M, lhs, 1.0));
}

FunctionalValue norm_core(const TruncatedSeries& f, int N, int m, double r)
{
    check_radius(r);
    check_norm_support(f, N, m);
    const std::size_t M = size_of(f) - 1;
    const auto pw = powers(r, 2 * M + static_cast<std::size_t>(N + m));
    const double bm = f.magnitude(m);
    const int t = (N - 1) / 2;
    const double pref = 1.0 / (1.0 + bm) + r / (1.0 - r);

    double lhs = bm * pw[static_cast<std::size_t>(m)];
    for (std::size_t s = static_cast<std::size_t>(N); s <= M; ++s) {
        lhs += f.magnitude(static_cast<int>(s)) * pw[s];
    }
    if (t >= 1) {
        double sq = 0.0;
        for (int s = 1; s <= t; ++s) {
            if (s != m) {
                sq += f.magnitude(s) * f.magnitude(s);
            }
        }
        lhs += sq * pw[static_cast<std::size_t>(N)] / (1.0 - r);
    }
    double sq = 0.0;
    for (std::size_t s = static_cast<std::size_t>(t + 1); s <= M; ++s) {
        if (static_cast<int>(s) != m) {
            const double b = f.magnitude(static_cast<int>(s));
            sq += b * b * pw[2 * s];
        }
    }
    lhs += pref * sq;
    const double tail = tail_bound_linear(f, r) + pref * tail_bound_quadratic(f, r);
    return make_value(lhs, 1.0, tail + rounding_allowance(2 * M, lhs, 1.0));
}

} // namespace

std::string_view functional_name(FunctionalKind k)
{
    for (const auto& [kind, name] : kNames) {
        if (kind == k) {
            return name;
        }
    }
    return "unknown";
}

std::optional<FunctionalKind> parse_functional(std::string_view name)
{
    for (const auto& [kind, n] : kNames) {
        if (n == name) {
            return kind;
        }
    }
    return std::nullopt;
}

int FunctionalSpec::start() const noexcept
{
    if (refinement_start) {
        return *refinement_start;
    }
    return kind == FunctionalKind::RefinedN1 ? 2 : 1;
}

FunctionalValue make_value(double lhs, double threshold, double tail)
{
    return {lhs, threshold, tail, threshold - lhs - tail};
}

double rounding_allowance(std::size_t terms, double lhs, double threshold)
{
    constexpr double u = std::numeric_limits<double>::epsilon() / 2.0;
    return 4.0 * static_cast<double>(terms + 8) * u * (std::abs(lhs) + std::abs(threshold));
}

FunctionalValue lemma12_sides(const TruncatedSeries& f, int N, double r)
{
    check_radius(r);
    if (N < 1) {
        throw Error(ErrorCode::ParamRange, "requires N>=1");
    }
    const std::size_t M = size_of(f) - 1;
    const auto pw = powers(r, 2 * M + static_cast<std::size_t>(N));
    const double a0 = f.magnitude(0);
    const int t = (N - 1) / 2;
    const double rN = pw[static_cast<std::size_t>(N)];
    const double pref = 1.0 / (1.0 + a0) + r / (1.0 - r);

    double lhs = 0.0;
    for (std::size_t n = static_cast<std::size_t>(N); n <= M; ++n) {
        lhs += f.magnitude(static_cast<int>(n)) * pw[n];
    }
    double head = 0.0;
    for (int n = 1; n <= t; ++n) {
        head += f.magnitude(n) * f.magnitude(n);
    }
    lhs += head * rN / (1.0 - r);
    double sq = 0.0;
    for (std::size_t n = static_cast<std::size_t>(t + 1); n <= M; ++n) {
        const double a = f.magnitude(static_cast<int>(n));
        sq += a * a * pw[2 * n];
    }
    lhs += pref * sq;
    const double threshold = (1.0 - a0 * a0) * rN / (1.0 - r);
    const double tail = tail_bound_linear(f, r) + pref * tail_bound_quadratic(f, r);
    return make_value(lhs, threshold, tail + rounding_allowance(2 * M, lhs, threshold));
}

FunctionalValue refined_C(const TruncatedSeries& f, int m, int k, double r, int refinement_start)
{
    return lacunary_core(f, m, k, r, refinement_start);
}

FunctionalValue refined_I(const TruncatedSeries& f, int m, int k, double r, int refinement_start)
{
    return lacunary_core(f, m, k, r, refinement_start);
}

FunctionalValue refined_A(const TruncatedSeries& f, int N, int m, double r)
{
    return norm_core(f, N, m, r);
}

FunctionalValue refined_B(const TruncatedSeries& f, int N, int m, double r)
{
    return norm_core(f, N, m, r);
}

FunctionalValue refined_N1(const TruncatedSeries& f, double r, int refinement_start)
{
    check_radius(r);
    if (f.magnitude(0) > kSupportTol) {
        throw Error(ErrorCode::RequiresVanishingOrigin, "N1 functional requires f(0)=0");
    }
    if (r == 0.0) {
        return make_value(0.0, 1.0, 0.0);
    }
    const std::size_t M = size_of(f) - 1;
    const auto pw = powers(r, 2 * M);
    const double w1 = 1.0 / (1.0 + f.magnitude(1));
    const double w2 = 1.0 / (1.0 - r);
    double lhs = 0.0;
    for (std::size_t s = 1; s <= M; ++s) {
        const double b = f.magnitude(static_cast<int>(s));
        lhs += b * pw[s];
        if (static_cast<int>(s) >= refinement_start) {
            lhs += b * b * (pw[2 * s - 1] * w1 + pw[2 * s] * w2);
        }
    }
    const double tail =
        tail_bound_linear(f, r) + w1 * shifted_quadratic_tail(f, r, -1) + w2 * shifted_quadratic_tail(f, r, 0);
    return make_value(lhs, 1.0, tail + rounding_allowance(2 * M, lhs, 1.0));
}

FunctionalValue harmonic_pair(const TruncatedSeries& h, const TruncatedSeries& g, int m, int k, double r,
                              int refinement_start)
{
    const FunctionalValue a = lacunary_core(h, m, k, r, refinement_start);
    const FunctionalValue b = lacunary_core(g, m, k, r, refinement_start);
    return make_value(a.lhs + b.lhs, 2.0, a.tail + b.tail);
}

double mf_bound(double a_norm, int N, int m, double r)
{
    return a_norm * std::pow(r, m) + (1.0 - a_norm * a_norm) * std::pow(r, N) / (1.0 - r);
}

double mf_bound_max(int N, int m, double r)
{
    if (r == 0.0) {
        return mf_bound(1.0, N, m, r);
    }
    const double t0 = std::clamp((1.0 - r) / (2.0 * std::pow(r, N - m)), 0.0, 1.0);
    return mf_bound(t0, N, m, r);
}

double j_bound(double t, double r)
{
    return -1.0 + r + t * r * (1.0 - r) + (1.0 - t * t) * r * r;
}

double j_bound_vertex(double r)
{
    return j_bound((1.0 - r) / (2.0 * r), r);
}

FunctionalValue baseline_value(const TruncatedSeries& f, const FunctionalSpec& spec, double r)
{
    check_radius(r);
    const std::size_t M = size_of(f) - 1;
    const auto pw = powers(r, M + static_cast<std::size_t>(spec.m));
    double lhs = 0.0;
    switch (spec.kind) {
    case FunctionalKind::BaselineSym:
        check_profile(spec.m, spec.k);
        check_lacunary_support(f, spec.m, spec.k);
        for (std::size_t n = static_cast<std::size_t>(spec.m); n <= M; n += static_cast<std::size_t>(spec.k)) {
            lhs += f.magnitude(static_cast<int>(n)) * pw[n];
        }
        break;
    case FunctionalKind::BaselineNorm:
        check_norm_support(f, spec.N, spec.m);
        lhs = f.magnitude(spec.m) * pw[static_cast<std::size_t>(spec.m)];
        for (std::size_t s = static_cast<std::size_t>(spec.N); s <= M; ++s) {
            lhs += f.magnitude(static_cast<int>(s)) * pw[s];
        }
        break;
    default:
        throw Error(ErrorCode::ParamRange, "not a baseline functional: " + std::string(functional_name(spec.kind)));
    }
    return make_value(lhs, 1.0, tail_bound_linear(f, r) + rounding_allowance(M, lhs, 1.0));
}

FunctionalValue baseline_harmonic(const TruncatedSeries& h, const TruncatedSeries& g, int m, int k, double r)
{
    const FunctionalSpec spec = FunctionalSpec::baseline_sym(k, m);
    const FunctionalValue a = baseline_value(h, spec, r);
    const FunctionalValue b = baseline_value(g, spec, r);
    return make_value(a.lhs + b.lhs, 2.0, a.tail + b.tail);
}

FunctionalValue evaluate_functional(const FunctionalSpec& spec, const TruncatedSeries& f, double r)
{
    switch (spec.kind) {
    case FunctionalKind::Lemma12:
        return lemma12_sides(f, spec.N, r);
    case FunctionalKind::AFunc:
        return refined_A(f, spec.N, spec.m, r);
    case FunctionalKind::BFunc:
        return refined_B(f, spec.N, spec.m, r);
    case FunctionalKind::CFunc:
        return refined_C(f, spec.m, spec.k, r, spec.start());
    case FunctionalKind::IFunc:
        return refined_I(f, spec.m, spec.k, r, spec.start());
    case FunctionalKind::RefinedN1:
        return refined_N1(f, r, spec.start());
    case FunctionalKind::BaselineSym:
    case FunctionalKind::BaselineNorm:
        return baseline_value(f, spec, r);
    case FunctionalKind::Harmonic:
        break;
    }
    throw Error(ErrorCode::ParamRange, "harmonic functional takes a pair of series");
}

} // namespace bohr
