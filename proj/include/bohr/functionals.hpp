#pragma once

#include "bohr/series.hpp"

#include <optional>
#include <string_view>

namespace bohr {

enum class FunctionalKind {
    Lemma12,
    AFunc,
    BFunc,
    CFunc,
    IFunc,
    RefinedN1,
    Harmonic,
    BaselineSym,
    BaselineNorm,
};

std::string_view functional_name(FunctionalKind k);
std::optional<FunctionalKind> parse_functional(std::string_view name);

struct FunctionalSpec {
    FunctionalKind kind = FunctionalKind::CFunc;
    int N = 1;
    int m = 0;
    int k = 1;
    /// First index of the squared-coefficient sum; unset means the default
    /// for the kind (1 for C/I/harmonic, 2 for the N1 functional).
    std::optional<int> refinement_start;

    int t() const noexcept { return (N - 1) / 2; }
    int start() const noexcept;

    static FunctionalSpec lemma12(int N) { return {FunctionalKind::Lemma12, N, 0, 1, {}}; }
    static FunctionalSpec a_func(int N, int m) { return {FunctionalKind::AFunc, N, m, 1, {}}; }
    static FunctionalSpec b_func(int N, int m) { return {FunctionalKind::BFunc, N, m, 1, {}}; }
    static FunctionalSpec c_func(int k, int m) { return {FunctionalKind::CFunc, 1, m, k, {}}; }
    static FunctionalSpec i_func(int k, int m) { return {FunctionalKind::IFunc, 1, m, k, {}}; }
    static FunctionalSpec refined_n1() { return {FunctionalKind::RefinedN1, 1, 0, 1, {}}; }
    static FunctionalSpec harmonic(int k, int m) { return {FunctionalKind::Harmonic, 1, m, k, {}}; }
    static FunctionalSpec baseline_sym(int k, int m) { return {FunctionalKind::BaselineSym, 1, m, k, {}}; }
    static FunctionalSpec baseline_norm(int N, int m) { return {FunctionalKind::BaselineNorm, N, m, 1, {}}; }
};

struct FunctionalValue {
    double lhs = 0.0;
    double threshold = 0.0;
    double tail = 0.0;   // truncated part of lhs plus floating-point rounding, both overestimated
    double margin = 0.0; // threshold - lhs - tail
};

FunctionalValue make_value(double lhs, double threshold, double tail);

/// Bound on the accumulated rounding error of a sum of `terms` nonnegative
/// products, relative to |lhs| + |threshold|.
double rounding_allowance(std::size_t terms, double lhs, double threshold);

FunctionalValue lemma12_sides(const TruncatedSeries& f, int N, double r);

/// Slice form of the lacunary functional for f = sum_s c_s z^{sk+m}.
FunctionalValue refined_C(const TruncatedSeries& f, int m, int k, double r, int refinement_start = 1);
FunctionalValue refined_I(const TruncatedSeries& f, int m, int k, double r, int refinement_start = 1);

/// Support must lie in {m} and {N, N+1, ...}; the squared sums skip index m.
FunctionalValue refined_A(const TruncatedSeries& f, int N, int m, double r);
FunctionalValue refined_B(const TruncatedSeries& f, int N, int m, double r);

FunctionalValue refined_N1(const TruncatedSeries& f, double r, int refinement_start = 2);

/// A_h + A_g against threshold 2.
FunctionalValue harmonic_pair(const TruncatedSeries& h, const TruncatedSeries& g, int m, int k, double r,
                              int refinement_start = 1);

double mf_bound(double a_norm, int N, int m, double r);
/// max over t in [0, 1] of mf_bound(t, N, m, r) via its vertex.
double mf_bound_max(int N, int m, double r);

double j_bound(double t, double r);
/// J at its critical point t0 = (1 - r) / (2r); equals (5r - 3)(r + 1) / 4.
double j_bound_vertex(double r);

/// Unrefined sums only. BaselineSym: sum_s |c_s| r^{sk+m}. BaselineNorm:
/// |b_m| r^m + sum_{s>=N} |b_s| r^s.
FunctionalValue baseline_value(const TruncatedSeries& f, const FunctionalSpec& spec, double r);
FunctionalValue baseline_harmonic(const TruncatedSeries& h, const TruncatedSeries& g, int m, int k, double r);

/// Dispatch for every single-series kind (Harmonic throws ParamRange).
FunctionalValue evaluate_functional(const FunctionalSpec& spec, const TruncatedSeries& f, double r);

} // namespace bohr
