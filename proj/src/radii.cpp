#include "bohr/radii.hpp"

#include "bohr/error.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

namespace bohr {

namespace {

constexpr std::array<std::pair<RadiusFamily, std::string_view>, 6> kFamilyNames{{
    {RadiusFamily::Phi1, "phi1"},
    {RadiusFamily::Phi2, "phi2"},
    {RadiusFamily::Phi3, "phi3"},
    {RadiusFamily::AutoPhi, "auto-phi"},
    {RadiusFamily::LacunarySym, "lacunary-sym"},
    {RadiusFamily::RefinedRoot, "refined-root"},
}};

void require(bool ok, ErrorCode code, const std::string& what)
{
    if (!ok) {
        throw Error(code, what);
    }
}

void check_lacunary_profile(int k, int m)
{
    require(k >= 1, ErrorCode::FamilyConstraint, "requires k>=1");
    require(m >= 0 && m <= k, ErrorCode::FamilyConstraint, "requires 0<=m<=k");
}

} // namespace

std::string_view family_name(RadiusFamily f)
{
    for (const auto& [fam, name] : kFamilyNames) {
        if (fam == f) {
            return name;
        }
    }
    return "unknown";
}

std::optional<RadiusFamily> parse_family(std::string_view name)
{
    for (const auto& [fam, n] : kFamilyNames) {
        if (n == name) {
            return fam;
        }
    }
    return std::nullopt;
}

RadiusFamily resolve_auto_phi(int N, int m)
{
    require(N >= 1, ErrorCode::FamilyConstraint, "requires N>=1");
    require(m >= 0, ErrorCode::FamilyConstraint, "requires m>=0");
    if (m == 0) {
        return RadiusFamily::Phi1;
    }
    if (N > 2 * m) {
        return RadiusFamily::Phi2;
    }
    if (N >= m + 1) {
        return RadiusFamily::Phi3;
    }
    throw Error(ErrorCode::FamilyConstraint, "requires N>=m+1");
}

RealPolynomial phi_poly(const RadiusQuery& q)
{
    const int N = q.N;
    const int m = q.m;
    require(N >= 1, ErrorCode::FamilyConstraint, "requires N>=1");
    require(m >= 0, ErrorCode::FamilyConstraint, "requires m>=0");
    switch (q.family) {
    case RadiusFamily::Phi1:
        return RealPolynomial::from_terms({{2.0, N}, {1.0, 1}, {-1.0, 0}});
    case RadiusFamily::Phi2:
        require(N > 2 * m, ErrorCode::FamilyConstraint, "requires N>2m");
        return RealPolynomial::from_terms({
            {4.0, 2 * (N - m)},
            {4.0, N + 1 - 2 * m},
            {-4.0, N - 2 * m},
            {1.0, 2},
            {-2.0, 1},
            {1.0, 0},
        });
    case RadiusFamily::Phi3:
        require(m + 1 <= N && N <= 2 * m, ErrorCode::FamilyConstraint, "requires m+1<=N<=2m");
        return RealPolynomial::from_terms({
            {4.0, N},
            {1.0, 2 + 2 * m - N},
            {-2.0, 1 + 2 * m - N},
            {1.0, 2 * m - N},
            {4.0, 1},
            {-4.0, 0},
        });
    case RadiusFamily::AutoPhi:
        return phi_poly({resolve_auto_phi(N, m), N, m, q.k, q.a});
    default:
        throw Error(ErrorCode::FamilyConstraint, "not a phi family: " + std::string(family_name(q.family)));
    }
}

RealPolynomial lacunary_poly(int k, int m)
{
    check_lacunary_profile(k, m);
    return RealPolynomial::from_terms({
        {1.0, 2 * (k - m)},
        {-6.0, k - m},
        {8.0, 2 * k},
        {1.0, 0},
    });
}

RealPolynomial refined_root_poly(int k, int m, double a)
{
    check_lacunary_profile(k, m);
    require(a >= 0.0 && a < 1.0, ErrorCode::ParamRange, "requires 0<=a<1");
    return RealPolynomial::from_terms({
        {1.0 - a - a * a, m + k},
        {1.0, k},
        {a, m},
        {-1.0, 0},
    });
}

RealPolynomial radius_poly(const RadiusQuery& q)
{
    switch (q.family) {
    case RadiusFamily::Phi1:
    case RadiusFamily::Phi2:
    case RadiusFamily::Phi3:
    case RadiusFamily::AutoPhi:
        return phi_poly(q);
    case RadiusFamily::LacunarySym:
        return lacunary_poly(q.k, q.m);
    case RadiusFamily::RefinedRoot:
        return refined_root_poly(q.k, q.m, q.a);
    }
    throw Error(ErrorCode::FamilyConstraint, "unknown radius family");
}

double sharp_radius(const RadiusQuery& q, double tol)
{
    return maximal_root(roots_in_unit_interval(radius_poly(q), tol));
}

double normalized_residual(const RealPolynomial& p, double r)
{
    return std::abs(p.normalized()(r));
}

} // namespace bohr
