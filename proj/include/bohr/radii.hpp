#pragma once

#include "bohr/realroots.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace bohr {

enum class RadiusFamily {
    Phi1,         // 2r^N + r - 1
    Phi2,         // N > 2m
    Phi3,         // m + 1 <= N <= 2m
    AutoPhi,      // case split on (N, m)
    LacunarySym,  // r^{2(k-m)} - 6r^{k-m} + 8r^{2k} + 1
    RefinedRoot,  // (1 - a - a^2) r^{m+k} + r^k + a r^m - 1
};

std::string_view family_name(RadiusFamily f);
std::optional<RadiusFamily> parse_family(std::string_view name);

/// One radius equation and its parameters. Unused fields are ignored by the
/// family; `k` doubles as the period p of the refined-root equation.
struct RadiusQuery {
    RadiusFamily family = RadiusFamily::AutoPhi;
    int N = 1;
    int m = 0;
    int k = 1;
    double a = 0.0;

    static RadiusQuery phi(RadiusFamily family, int N, int m) { return {family, N, m, 1, 0.0}; }
    static RadiusQuery auto_phi(int N, int m) { return {RadiusFamily::AutoPhi, N, m, 1, 0.0}; }
    static RadiusQuery lacunary_sym(int k, int m) { return {RadiusFamily::LacunarySym, 1, m, k, 0.0}; }
    static RadiusQuery refined_root(int k, int m, double a) { return {RadiusFamily::RefinedRoot, 1, m, k, a}; }
};

/// Resolves AutoPhi to the concrete Phi family for (N, m); throws FamilyConstraint when N <= m.
RadiusFamily resolve_auto_phi(int N, int m);

/// Phi1 / Phi2 / Phi3 (or AutoPhi) polynomial with exact integer coefficients.
RealPolynomial phi_poly(const RadiusQuery& q);

RealPolynomial lacunary_poly(int k, int m);

RealPolynomial refined_root_poly(int k, int m, double a);

/// The polynomial whose maximal root in (0, 1) is the radius for `q`.
RealPolynomial radius_poly(const RadiusQuery& q);

/// Maximal root in (0, 1) of radius_poly(q); propagates NoRootInInterval.
double sharp_radius(const RadiusQuery& q, double tol = kDefaultRootTolerance);

/// |p(r)| for p normalized by its largest coefficient magnitude.
double normalized_residual(const RealPolynomial& p, double r);

} // namespace bohr
