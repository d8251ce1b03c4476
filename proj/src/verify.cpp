#include "bohr/verify.hpp"

#include "bohr/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <thread>

namespace bohr {

namespace {

constexpr std::uint64_t kPairStream = 0x9e3779b97f4a7c15ULL;

int lifted_order(int M, int m, int k)
{
    return std::max(1, (M - m + k - 1) / k);
}

TruncatedSeries lifted(const SchurSpec& g, int M, int m, int k)
{
    return lacunary_lift(taylor_coeffs(g, lifted_order(M, m, k)), m, k);
}

// z^m * phi_a(z^{N-m} B(z)) for a Blaschke product B.
SchurSpec norm_shaped(SampleRng& rng, const SchurSampleOptions& opts, int N, int m)
{
    SchurDraw d = draw_schur(rng, opts);
    for (int j = 0; j < N - m; ++j) {
        d.zeros.emplace_back(0.0, 0.0);
    }
    SchurSpec s = SchurSpec::mobius_target(d.a, SchurSpec::blaschke(std::move(d.zeros), d.rotation));
    for (int j = 0; j < m; ++j) {
        s = SchurSpec::lacunary_wrap(1, 1, std::move(s));
    }
    return s;
}

double fixed_radius(const SweepConfig& cfg)
{
    const FunctionalSpec& fs = cfg.functional;
    if (cfg.radius_query) {
        return sharp_radius(*cfg.radius_query);
    }
    switch (fs.kind) {
    case FunctionalKind::Lemma12:
        return 1.0;
    case FunctionalKind::AFunc:
    case FunctionalKind::BFunc:
    case FunctionalKind::BaselineNorm:
        return sharp_radius(RadiusQuery::auto_phi(fs.N, fs.m));
    case FunctionalKind::RefinedN1:
        return sharp_radius(RadiusQuery::auto_phi(2, 1));
    case FunctionalKind::BaselineSym:
        return sharp_radius(RadiusQuery::lacunary_sym(fs.k, fs.m));
    default:
        return -1.0; // depends on the sample
    }
}

double lacunary_radius(const FunctionalSpec& fs, const TruncatedSeries& f)
{
    return sharp_radius(RadiusQuery::refined_root(fs.k, fs.m, std::min(f.magnitude(fs.m), 1.0 - 1e-15)));
}

FunctionalValue evaluate(const SweepConfig& cfg, const SweepSample& s, double r)
{
    if (cfg.functional.kind == FunctionalKind::Harmonic) {
        return harmonic_pair(s.f, *s.g, cfg.functional.m, cfg.functional.k, r, cfg.functional.start());
    }
    return evaluate_functional(cfg.functional, s.f, r);
}

std::vector<double> grid_for(const SweepConfig& cfg, double radius)
{
    std::vector<double> grid;
    const double limit = radius - cfg.tolerance;
    for (double r : cfg.r_grid) {
        if (!cfg.clip_to_radius || r <= limit) {
            grid.push_back(r);
        }
    }
    if (cfg.edge_probe && radius < 1.0 && limit > 0.0 &&
        std::find(grid.begin(), grid.end(), limit) == grid.end()) {
        grid.push_back(limit);
    }
    std::sort(grid.begin(), grid.end());
    return grid;
}

std::vector<SweepRow> sweep_one(const SweepConfig& cfg, std::uint64_t id, int M_base, double& radius)
{
    // Radius first (it fixes the grid), then truncation for the grid's top.
    SweepSample s = make_sweep_sample(cfg, id, M_base);
    radius = s.radius;
    const auto grid = grid_for(cfg, s.radius);
    std::vector<SweepRow> rows;
    if (grid.empty()) {
        return rows;
    }
    const int M = std::max(M_base, choose_truncation(grid.back(), M_base));
    if (M != M_base) {
        s = make_sweep_sample(cfg, id, M);
    }
    std::optional<SweepSample> raised;
    for (double r : grid) {
        FunctionalValue v = evaluate(cfg, s, r);
        Verdict verdict = classify(v);
        if (verdict == Verdict::Inconclusive && M < kMaxTruncation) {
            if (!raised) {
                raised = make_sweep_sample(cfg, id, std::min(2 * M, kMaxTruncation));
            }
            v = evaluate(cfg, *raised, r);
            verdict = classify(v);
        }
        rows.push_back({id, r, v, verdict});
    }
    return rows;
}

double find_crossing(const std::function<double(double)>& excess, double tol)
{
    constexpr double step = 1e-3;
    constexpr double r_stop = 0.99;
    double lo = 0.0;
    double hi = -1.0;
    for (double r = step; r <= r_stop + 1e-12; r += step) {
        if (excess(r) > 0.0) {
            hi = r;
            break;
        }
        lo = r;
    }
    if (hi < 0.0) {
        throw Error(ErrorCode::NoCrossover, "no crossing in (0, 0.99)");
    }
    const double width = tol * 1e-3;
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        (excess(mid) > 0.0 ? hi : lo) = mid;
    }
    const double r_cross = 0.5 * (lo + hi);
    if (!(excess(r_cross - 10.0 * tol) < 0.0 && excess(r_cross + 10.0 * tol) > 0.0)) {
        throw Error(ErrorCode::NoCrossover, "crossing at " + std::to_string(r_cross) + " is not bracketed");
    }
    return r_cross;
}

CrossoverResult finish(int k, int m, double a, double r_cross)
{
    const double r_theory = sharp_radius(RadiusQuery::refined_root(k, m, a));
    return {a, k, m, r_cross, r_theory, std::abs(r_cross - r_theory)};
}

} // namespace

std::string_view verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Holds:
        return "HOLDS";
    case Verdict::Violates:
        return "VIOLATES";
    case Verdict::Inconclusive:
        return "INCONCLUSIVE";
    }
    return "UNKNOWN";
}

Verdict classify(const FunctionalValue& v)
{
    if (v.margin >= 0.0) {
        return Verdict::Holds;
    }
    if (v.lhs - v.tail > v.threshold) {
        return Verdict::Violates;
    }
    return Verdict::Inconclusive;
}

SweepSample make_sweep_sample(const SweepConfig& cfg, std::uint64_t sample_id, int M)
{
    const FunctionalSpec& fs = cfg.functional;
    const auto n_random = static_cast<std::uint64_t>(std::max(cfg.samples, 0));
    const bool extremal = sample_id >= n_random;
    double a = 0.0;
    if (extremal) {
        const std::uint64_t j = sample_id - n_random;
        if (j >= cfg.extremal_a.size()) {
            throw Error(ErrorCode::ParamRange, "sample id " + std::to_string(sample_id) + " out of range");
        }
        a = cfg.extremal_a[j];
    }

    SweepSample s;
    switch (fs.kind) {
    case FunctionalKind::Lemma12:
        s.f = taylor_coeffs(extremal ? SchurSpec::extremal_a(a, 0, 1) : random_schur(cfg.seed, sample_id, cfg.sampling),
                            M);
        break;
    case FunctionalKind::CFunc:
    case FunctionalKind::IFunc:
    case FunctionalKind::BaselineSym:
        s.f = extremal ? taylor_coeffs(SchurSpec::extremal_a(a, fs.m, fs.k), M)
                       : lifted(random_schur(cfg.seed, sample_id, cfg.sampling), M, fs.m, fs.k);
        break;
    case FunctionalKind::Harmonic:
        if (extremal) {
            s.f = taylor_coeffs(SchurSpec::extremal_a(a, fs.m, fs.k), M);
            s.g = s.f;
        } else {
            s.f = lifted(random_schur(cfg.seed, sample_id, cfg.sampling), M, fs.m, fs.k);
            s.g = lifted(random_schur(cfg.seed, sample_id ^ kPairStream, cfg.sampling), M, fs.m, fs.k);
        }
        break;
    case FunctionalKind::AFunc:
    case FunctionalKind::BFunc:
    case FunctionalKind::BaselineNorm:
        if (fs.N < fs.m + 1) {
            throw Error(ErrorCode::FamilyConstraint, "requires N>=m+1");
        }
        if (extremal) {
            s.f = taylor_coeffs(SchurSpec::extremal_a(a, fs.m, fs.N - fs.m), M);
        } else {
            SampleRng rng(cfg.seed, sample_id);
            s.f = taylor_coeffs(norm_shaped(rng, cfg.sampling, fs.N, fs.m), M);
        }
        break;
    case FunctionalKind::RefinedN1:
        s.f = taylor_coeffs(extremal ? SchurSpec::extremal_omega(a)
                                     : SchurSpec::lacunary_wrap(1, 1, random_schur(cfg.seed, sample_id, cfg.sampling)),
                            M);
        break;
    }

    const double fixed = fixed_radius(cfg);
    if (fixed >= 0.0) {
        s.radius = fixed;
    } else if (fs.kind == FunctionalKind::Harmonic) {
        s.radius = std::min(lacunary_radius(fs, s.f), lacunary_radius(fs, *s.g));
    } else {
        s.radius = lacunary_radius(fs, s.f);
    }
    return s;
}

SweepReport run_sweep(const SweepConfig& cfg)
{
    if (cfg.samples < 1) {
        throw Error(ErrorCode::ParamRange, "samples must be >= 1");
    }
    for (std::size_t i = 0; i < cfg.r_grid.size(); ++i) {
        if (!(cfg.r_grid[i] > 0.0 && cfg.r_grid[i] < 1.0) || (i > 0 && cfg.r_grid[i] <= cfg.r_grid[i - 1])) {
            throw Error(ErrorCode::RadiusRange, "r grid must be strictly increasing inside (0, 1)");
        }
    }
    const std::size_t total = static_cast<std::size_t>(cfg.samples) + cfg.extremal_a.size();
    const int M_base = std::clamp(cfg.trunc, 1, kMaxTruncation);

    SweepReport report;
    if (cfg.r_grid.empty() && !cfg.edge_probe) {
        report.radius_used = 0.0;
        if (total > 0) {
            double radius = 1.0;
            for (std::size_t id = 0; id < total; ++id) {
                radius = std::min(radius, make_sweep_sample(cfg, id, M_base).radius);
            }
            report.radius_used = radius;
        }
        return report;
    }

    std::vector<std::vector<SweepRow>> per_sample(total);
    std::vector<double> radii(total, 1.0);
    const auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t id = first; id < total; id += stride) {
            per_sample[id] = sweep_one(cfg, id, M_base, radii[id]);
        }
    };
    const auto threads = static_cast<std::size_t>(std::max(cfg.threads, 1));
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    work(t, threads);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
        for (const auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    report.radius_used = *std::min_element(radii.begin(), radii.end());
    for (auto& rows : per_sample) {
        for (auto& row : rows) {
            switch (row.verdict) {
            case Verdict::Holds:
                ++report.holds;
                break;
            case Verdict::Violates:
                ++report.violates;
                break;
            case Verdict::Inconclusive:
                ++report.inconclusive;
                break;
            }
            report.rows.push_back(row);
        }
    }
    return report;
}

CrossoverResult crossover(int k, int m, double a, double tol)
{
    const TruncatedSeries f = taylor_coeffs(SchurSpec::extremal_a(a, m, k), kCrossoverTruncation);
    const double r_cross = find_crossing([&](double r) { return refined_C(f, m, k, r).lhs - 1.0; }, tol);
    return finish(k, m, a, r_cross);
}

CrossoverResult harmonic_crossover(int k, int m, double a, double tol)
{
    const TruncatedSeries f = taylor_coeffs(SchurSpec::extremal_a(a, m, k), kCrossoverTruncation);
    const double r_cross = find_crossing([&](double r) { return harmonic_pair(f, f, m, k, r).lhs - 2.0; }, tol);
    return finish(k, m, a, r_cross);
}

std::vector<ExceedPoint> sharpness_scan_A(int N, int m, const std::vector<double>& a_grid, double step)
{
    if (!((N == 1 && m == 0) || (N == 2 && m == 1))) {
        throw Error(ErrorCode::FamilyConstraint, "sharpness scan supports (N,m) in {(1,0),(2,1)}");
    }
    std::vector<ExceedPoint> out;
    for (double a : a_grid) {
        const SchurSpec family = m == 0 ? SchurSpec::extremal_a(a, 0, 1) : SchurSpec::extremal_omega(a);
        const TruncatedSeries f = taylor_coeffs(family, kMaxTruncation);
        ExceedPoint p{a, std::nullopt};
        for (int i = 1;; ++i) {
            const double r = i * step;
            if (r >= 1.0) {
                break;
            }
            const FunctionalValue v = refined_A(f, N, m, r);
            if (v.lhs - v.tail > v.threshold) {
                p.r_exceed = r;
                break;
            }
        }
        out.push_back(p);
    }
    return out;
}

double oracle_compare(const PolydiskMap& F, const FunctionalSpec& spec, const std::vector<double>& r_grid, int M,
                      const Point& direction)
{
    if (!F.all_univariate()) {
        throw Error(ErrorCode::ParamRange, "slice comparison requires univariate components");
    }
    const TruncatedSeries env = slice_envelope(F, direction, M);
    double gap = 0.0;
    for (double r : r_grid) {
        const double multi = norm_functional(F, spec, r, M, direction, false).lhs;
        const double slice = evaluate_functional(spec, env, r).lhs;
        gap = std::max(gap, std::abs(multi - slice));
    }
    return gap;
}

} // namespace bohr
