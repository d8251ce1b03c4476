#pragma once

#include "bohr/functionals.hpp"
#include "bohr/polydisk.hpp"
#include "bohr/radii.hpp"
#include "bohr/series.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace bohr {

enum class Verdict { Holds, Violates, Inconclusive };

std::string_view verdict_name(Verdict v);

/// HOLDS iff margin >= 0; VIOLATES iff lhs - tail > threshold.
Verdict classify(const FunctionalValue& v);

struct SweepConfig {
    FunctionalSpec functional;
    /// Fixed radius for every sample. Unset: the functional's own radius,
    /// which for C/I/harmonic depends on each sample's leading coefficient.
    std::optional<RadiusQuery> radius_query;
    int samples = 200;
    std::uint64_t seed = 0;
    std::vector<double> r_grid;
    int trunc = kDefaultTruncation;
    double tolerance = 1e-3;
    /// Keep only r <= radius - tolerance for each sample.
    bool clip_to_radius = true;
    /// Also evaluate each sample at radius - tolerance.
    bool edge_probe = false;
    /// Extremal-family parameters appended after the random samples.
    std::vector<double> extremal_a;
    int threads = 1;
    SchurSampleOptions sampling;
};

struct SweepRow {
    std::uint64_t sample_id = 0;
    double r = 0.0;
    FunctionalValue value;
    Verdict verdict = Verdict::Holds;
};

struct SweepReport {
    std::vector<SweepRow> rows; // ordered by (sample_id, r)
    std::size_t holds = 0;
    std::size_t violates = 0;
    std::size_t inconclusive = 0;
    double radius_used = 1.0; // smallest per-sample radius
};

/// Test function for one sample id: the seeded random construction matching
/// the functional's structure, or an extremal member for ids past `samples`.
struct SweepSample {
    TruncatedSeries f;
    std::optional<TruncatedSeries> g; // second series of a harmonic pair
    double radius = 1.0;
};

SweepSample make_sweep_sample(const SweepConfig& cfg, std::uint64_t sample_id, int M);

SweepReport run_sweep(const SweepConfig& cfg);

struct CrossoverResult {
    double a = 0.0;
    int k = 1;
    int m = 0;
    double r_cross = 0.0;
    double r_theory = 0.0;
    double gap = 0.0;
};

inline constexpr int kCrossoverTruncation = 4096;

/// Where the C functional of z^m (a - z^k)/(1 - a z^k) crosses 1.
CrossoverResult crossover(int k, int m, double a, double tol);

/// Where A_h + A_g with h = g = z^m (a - z^k)/(1 - a z^k) crosses 2.
CrossoverResult harmonic_crossover(int k, int m, double a, double tol);

struct ExceedPoint {
    double a = 0.0;
    std::optional<double> r_exceed; // least grid r with lhs - tail > 1
};

/// A functional of the sharpness family, (a - z)/(1 - az) for (N, m) = (1, 0)
/// and z (a - z)/(1 - az) for (2, 1), scanned on r = step, 2 step, ... < 1.
std::vector<ExceedPoint> sharpness_scan_A(int N, int m, const std::vector<double>& a_grid, double step = 1e-4);

/// max over the grid of |norm_functional - 1-D functional of the slice envelope|.
double oracle_compare(const PolydiskMap& F, const FunctionalSpec& spec, const std::vector<double>& r_grid, int M,
                      const Point& direction = {});

} // namespace bohr
