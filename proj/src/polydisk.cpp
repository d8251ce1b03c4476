#include "bohr/polydisk.hpp"

#include "bohr/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bohr {

namespace {

constexpr double kZeroTol = 1e-12;

int total_degree(const MultiIndex& alpha)
{
    int d = 0;
    for (int a : alpha) {
        d += a;
    }
    return d;
}

double max_modulus(const Point& z)
{
    double m = 0.0;
    for (Complex c : z) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

Point normalized_direction(const PolydiskMap& F, const Point& direction)
{
    if (direction.empty()) {
        return Point(static_cast<std::size_t>(F.dim()), Complex{1.0, 0.0});
    }
    if (static_cast<int>(direction.size()) != F.dim()) {
        throw Error(ErrorCode::ParamRange, "direction has " + std::to_string(direction.size()) +
                                               " coordinates, map has " + std::to_string(F.dim()));
    }
    const double n = max_modulus(direction);
    if (n == 0.0) {
        throw Error(ErrorCode::ZeroDirection, "direction is the zero vector");
    }
    Point out = direction;
    for (Complex& c : out) {
        c /= n;
    }
    return out;
}

Complex monomial(const MultiIndex& alpha, const Point& z)
{
    Complex v{1.0, 0.0};
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        for (int p = 0; p < alpha[i]; ++p) {
            v *= z[i];
        }
    }
    return v;
}

// parts[l][s] = degree-s homogeneous part of component l evaluated at z.
std::vector<std::vector<Complex>> component_parts(const PolydiskMap& F, const Point& z, int M)
{
    const auto size = static_cast<std::size_t>(M) + 1;
    std::vector<std::vector<Complex>> parts;
    for (const auto& comp : F.components()) {
        std::vector<Complex> row(size, Complex{});
        if (const auto* u = std::get_if<PolydiskMap::Univariate>(&comp)) {
            const TruncatedSeries t = taylor_coeffs(u->spec, M);
            const Complex zj = z[static_cast<std::size_t>(u->coord)];
            Complex p{1.0, 0.0};
            for (std::size_t s = 0; s < size; ++s) {
                row[s] = t.coeffs[s] * p;
                p *= zj;
            }
        } else {
            for (const auto& [alpha, c] : std::get<PolydiskMap::MonomialPoly>(comp).terms) {
                const int d = total_degree(alpha);
                if (d <= M) {
                    row[static_cast<std::size_t>(d)] += c * monomial(alpha, z);
                }
            }
        }
        parts.push_back(std::move(row));
    }
    return parts;
}

// Largest coefficient magnitude per total degree, over all components.
std::vector<double> degree_content(const PolydiskMap& F, int M)
{
    std::vector<double> content(static_cast<std::size_t>(M) + 1, 0.0);
    for (const auto& comp : F.components()) {
        if (const auto* u = std::get_if<PolydiskMap::Univariate>(&comp)) {
            const TruncatedSeries t = taylor_coeffs(u->spec, M);
            for (std::size_t s = 0; s < content.size(); ++s) {
                content[s] = std::max(content[s], std::abs(t.coeffs[s]));
            }
        } else {
            for (const auto& [alpha, c] : std::get<PolydiskMap::MonomialPoly>(comp).terms) {
                const int d = total_degree(alpha);
                if (d <= M) {
                    content[static_cast<std::size_t>(d)] =
                        std::max(content[static_cast<std::size_t>(d)], std::abs(c));
                }
            }
        }
    }
    return content;
}

void require_support(const std::vector<double>& content, auto allowed, const std::string& what)
{
    for (std::size_t s = 0; s < content.size(); ++s) {
        if (!allowed(static_cast<int>(s)) && content[s] > kZeroTol) {
            throw Error(ErrorCode::SupportMismatch, "degree " + std::to_string(s) + " is not allowed: " + what);
        }
    }
}

void require_equal_moduli(const std::vector<std::vector<Complex>>& parts, int m)
{
    const auto sm = static_cast<std::size_t>(m);
    double lo = std::abs(parts.front()[sm]);
    double hi = lo;
    for (const auto& row : parts) {
        lo = std::min(lo, std::abs(row[sm]));
        hi = std::max(hi, std::abs(row[sm]));
    }
    if (hi - lo > kZeroTol * std::max(1.0, hi)) {
        throw Error(ErrorCode::HypothesisUnmet,
                    "degree-" + std::to_string(m) + " parts do not share one modulus at this direction");
    }
}

// Degree-m part of component l must be a_l z_l^m, with all |a_l| equal.
void require_diagonal_leading(const PolydiskMap& F, int m)
{
    std::vector<double> moduli;
    for (std::size_t l = 0; l < F.components().size(); ++l) {
        const auto& comp = F.components()[l];
        double a = 0.0;
        if (const auto* u = std::get_if<PolydiskMap::Univariate>(&comp)) {
            a = std::abs(taylor_coeffs(u->spec, std::max(m, 1)).coeffs[static_cast<std::size_t>(m)]);
            if (m > 0 && a > kZeroTol && u->coord != static_cast<int>(l)) {
                throw Error(ErrorCode::HypothesisUnmet,
                            "component " + std::to_string(l) + " has its degree-m part in another coordinate");
            }
        } else {
            for (const auto& [alpha, c] : std::get<PolydiskMap::MonomialPoly>(comp).terms) {
                if (total_degree(alpha) != m || std::abs(c) <= kZeroTol) {
                    continue;
                }
                if (m > 0 && alpha[l] != m) {
                    throw Error(ErrorCode::HypothesisUnmet,
                                "component " + std::to_string(l) + " has a mixed degree-m monomial");
                }
                a += std::abs(c);
            }
        }
        moduli.push_back(a);
    }
    const auto [lo, hi] = std::minmax_element(moduli.begin(), moduli.end());
    if (*hi - *lo > kZeroTol * std::max(1.0, *hi)) {
        throw Error(ErrorCode::HypothesisUnmet, "leading coefficients do not share one modulus");
    }
}

} // namespace

PolydiskMap::PolydiskMap(int dim, std::vector<Component> components) : dim_(dim), components_(std::move(components))
{
    if (dim < 1 || dim > kMaxDimension) {
        throw Error(ErrorCode::ParamRange, "dimension must lie in [1, 8]");
    }
    if (static_cast<int>(components_.size()) != dim) {
        throw Error(ErrorCode::ParamRange, "expected one component per coordinate");
    }
    for (const auto& comp : components_) {
        if (const auto* u = std::get_if<Univariate>(&comp)) {
            if (u->coord < 0 || u->coord >= dim) {
                throw Error(ErrorCode::ParamRange, "coordinate index out of range");
            }
        } else {
            for (const auto& [alpha, c] : std::get<MonomialPoly>(comp).terms) {
                if (static_cast<int>(alpha.size()) != dim ||
                    std::any_of(alpha.begin(), alpha.end(), [](int a) { return a < 0; })) {
                    throw Error(ErrorCode::ParamRange, "malformed multi-index");
                }
            }
        }
    }
}

bool PolydiskMap::all_univariate() const noexcept
{
    return std::all_of(components_.begin(), components_.end(),
                       [](const Component& c) { return std::holds_alternative<Univariate>(c); });
}

PolydiskMap componentwise_extremal(int dim, double a, int m, int k)
{
    std::vector<PolydiskMap::Component> comps;
    for (int l = 0; l < dim; ++l) {
        comps.emplace_back(PolydiskMap::Univariate{l, SchurSpec::extremal_a(a, m, k)});
    }
    return PolydiskMap(dim, std::move(comps));
}

PolydiskMap liu_liu_map()
{
    const double a1 = 1.0 / std::sqrt(2.0);
    const double a2 = 2.0 / std::sqrt(5.0);
    std::vector<PolydiskMap::Component> comps;
    comps.emplace_back(PolydiskMap::Univariate{0, SchurSpec::extremal_omega(a1, -1.0)});
    comps.emplace_back(PolydiskMap::Univariate{1, SchurSpec::extremal_omega(a2, -1.0)});
    return PolydiskMap(2, std::move(comps));
}

HomogeneousNormProfile homogeneous_norms(const PolydiskMap& F, const Point& z, int M)
{
    if (static_cast<int>(z.size()) != F.dim()) {
        throw Error(ErrorCode::ParamRange, "point dimension does not match the map");
    }
    if (!(max_modulus(z) < 1.0)) {
        throw Error(ErrorCode::OutsidePolydisk, "point must satisfy max |z_j| < 1");
    }
    HomogeneousNormProfile prof;
    prof.point = z;
    prof.trunc_order = M;
    prof.coeff_bound = std::any_of(F.components().begin(), F.components().end(),
                                   [](const auto& c) { return std::holds_alternative<PolydiskMap::Univariate>(c); })
                           ? 1.0
                           : 0.0;
    prof.norms.assign(static_cast<std::size_t>(M) + 1, 0.0);
    for (const auto& row : component_parts(F, z, M)) {
        for (std::size_t s = 0; s < row.size(); ++s) {
            prof.norms[s] = std::max(prof.norms[s], std::abs(row[s]));
        }
    }
    return prof;
}

TruncatedSeries slice_series(const PolydiskMap& F, const Point& direction, int component, int M)
{
    if (component < 0 || component >= F.dim()) {
        throw Error(ErrorCode::ParamRange, "component index out of range");
    }
    const Point z0 = normalized_direction(F, direction);
    const auto& comp = F.components()[static_cast<std::size_t>(component)];
    if (const auto* u = std::get_if<PolydiskMap::Univariate>(&comp)) {
        TruncatedSeries t = taylor_coeffs(u->spec, M);
        const Complex w = z0[static_cast<std::size_t>(u->coord)];
        Complex p{1.0, 0.0};
        for (Complex& c : t.coeffs) {
            c *= p;
            p *= w;
        }
        return t;
    }
    std::vector<Complex> coeffs(static_cast<std::size_t>(M) + 1, Complex{});
    for (const auto& [alpha, c] : std::get<PolydiskMap::MonomialPoly>(comp).terms) {
        const int d = total_degree(alpha);
        if (d <= M) {
            coeffs[static_cast<std::size_t>(d)] += c * monomial(alpha, z0);
        }
    }
    TruncatedSeries t = TruncatedSeries::polynomial(std::move(coeffs));
    t.trunc_order = M;
    return t;
}

TruncatedSeries slice_envelope(const PolydiskMap& F, const Point& direction, int M)
{
    TruncatedSeries env;
    env.trunc_order = M;
    env.coeffs.assign(static_cast<std::size_t>(M) + 1, Complex{});
    for (int l = 0; l < F.dim(); ++l) {
        const TruncatedSeries t = slice_series(F, direction, l, M);
        for (std::size_t s = 0; s < env.coeffs.size(); ++s) {
            env.coeffs[s] = std::max(env.coeffs[s].real(), std::abs(t.coeffs[s]));
        }
        env.coeff_bound = std::max(env.coeff_bound, t.coeff_bound);
    }
    return env;
}

FunctionalValue norm_functional(const PolydiskMap& F, const FunctionalSpec& spec, double r, int M,
                                const Point& direction, bool check_hypothesis)
{
    if (!(r >= 0.0 && r < 1.0)) {
        throw Error(ErrorCode::OutsidePolydisk, "requires 0<=r<1, got " + std::to_string(r));
    }
    const Point z0 = normalized_direction(F, direction);
    Point z = z0;
    for (Complex& c : z) {
        c *= r;
    }
    const int N = spec.N;
    const int m = spec.m;
    const int k = spec.k;
    const auto content = degree_content(F, M);

    switch (spec.kind) {
    case FunctionalKind::CFunc:
    case FunctionalKind::IFunc:
    case FunctionalKind::BaselineSym:
        if (k < 1 || m < 0 || m > k) {
            throw Error(ErrorCode::FamilyConstraint, "requires 0<=m<=k");
        }
        require_support(content, [&](int s) { return s >= m && (s - m) % k == 0; }, "lacunary profile");
        break;
    case FunctionalKind::AFunc:
    case FunctionalKind::BFunc:
    case FunctionalKind::BaselineNorm:
        if (N < m + 1) {
            throw Error(ErrorCode::FamilyConstraint, "requires N>=m+1");
        }
        require_support(content, [&](int s) { return s == m || s >= N; }, "support must lie in {m} and {N, ...}");
        break;
    case FunctionalKind::RefinedN1:
        if (content[0] > kZeroTol) {
            throw Error(ErrorCode::RequiresVanishingOrigin, "N1 functional requires f(0)=0");
        }
        break;
    case FunctionalKind::Lemma12:
        break;
    case FunctionalKind::Harmonic:
        throw Error(ErrorCode::ParamRange, "harmonic functional is not defined for polydisk maps");
    }

    if (check_hypothesis) {
        switch (spec.kind) {
        case FunctionalKind::AFunc:
            require_diagonal_leading(F, m);
            break;
        case FunctionalKind::BFunc:
        case FunctionalKind::CFunc:
        case FunctionalKind::IFunc:
            require_equal_moduli(component_parts(F, z0, std::max(m, 1)), m);
            break;
        default:
            break;
        }
    }

    const HomogeneousNormProfile prof = homogeneous_norms(F, z, M);
    const auto& nu = prof.norms;
    const auto at = [&](int s) { return s >= 0 && s <= M ? nu[static_cast<std::size_t>(s)] : 0.0; };
    const double B = prof.coeff_bound;
    const double t_lin = B * std::pow(r, M + 1) / (1.0 - r);
    const double t_quad = B * B * std::pow(r, 2 * (M + 1)) / (1.0 - r * r);
    const int start = spec.start();

    double lhs = 0.0;
    double threshold = 1.0;
    double tail = t_lin;
    switch (spec.kind) {
    case FunctionalKind::CFunc:
    case FunctionalKind::IFunc: {
        lhs = at(m);
        if (r == 0.0) {
            tail = 0.0;
            break;
        }
        const double w = 1.0 / (std::pow(r, m) + at(m)) + std::pow(r, k - m) / (1.0 - std::pow(r, k));
        double sq = 0.0;
        for (int s = 1; s * k + m <= M; ++s) {
            const double v = at(s * k + m);
            lhs += v;
            if (s >= start) {
                sq += v * v;
            }
        }
        lhs += w * sq;
        tail += w * t_quad;
        break;
    }
    case FunctionalKind::AFunc:
    case FunctionalKind::BFunc: {
        lhs = at(m);
        if (r == 0.0) {
            tail = 0.0;
            break;
        }
        for (int s = N; s <= M; ++s) {
            lhs += at(s);
        }
        const int t = spec.t();
        for (int s = 1; s <= t; ++s) {
            if (s != m) {
                lhs += at(s) * at(s) * std::pow(r, N - 2 * s) / (1.0 - r);
            }
        }
        const double rm = std::pow(r, m);
        const double pref = rm / (rm + at(m)) + r / (1.0 - r);
        double sq = 0.0;
        for (int s = t + 1; s <= M; ++s) {
            if (s != m) {
                sq += at(s) * at(s);
            }
        }
        lhs += pref * sq;
        tail += pref * t_quad;
        break;
    }
    case FunctionalKind::RefinedN1: {
        if (r == 0.0) {
            tail = 0.0;
            break;
        }
        const double w = 1.0 / (r + at(1)) + 1.0 / (1.0 - r);
        double sq = 0.0;
        for (int s = 1; s <= M; ++s) {
            lhs += at(s);
            if (s >= start) {
                sq += at(s) * at(s);
            }
        }
        lhs += w * sq;
        tail += w * t_quad;
        break;
    }
    case FunctionalKind::Lemma12: {
        const int t = spec.t();
        const double a0 = at(0);
        for (int n = N; n <= M; ++n) {
            lhs += at(n);
        }
        for (int n = 1; n <= t; ++n) {
            lhs += at(n) * at(n) * std::pow(r, N - 2 * n) / (1.0 - r);
        }
        const double pref = 1.0 / (1.0 + a0) + r / (1.0 - r);
        double sq = 0.0;
        for (int n = t + 1; n <= M; ++n) {
            sq += at(n) * at(n);
        }
        lhs += pref * sq;
        tail += pref * t_quad;
        threshold = (1.0 - a0 * a0) * std::pow(r, N) / (1.0 - r);
        break;
    }
    case FunctionalKind::BaselineSym:
        for (int s = m; s <= M; s += k) {
            lhs += at(s);
        }
        break;
    case FunctionalKind::BaselineNorm:
        lhs = at(m);
        for (int s = N; s <= M; ++s) {
            lhs += at(s);
        }
        break;
    case FunctionalKind::Harmonic:
        break;
    }
    return make_value(lhs, threshold, tail + rounding_allowance(2 * static_cast<std::size_t>(M), lhs, threshold));
}

} // namespace bohr
