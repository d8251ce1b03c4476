#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <random>
#include <variant>
#include <vector>

namespace bohr {

using Complex = std::complex<double>;

/// Power-series coefficients c_0..c_M of a holomorphic function on the disk,
/// with a certified bound on every |c_n| past the truncation order.
struct TruncatedSeries {
    std::vector<Complex> coeffs; // coeffs[n] multiplies z^n; size trunc_order + 1
    int trunc_order = 0;
    double coeff_bound = 0.0;    // sup_{n > trunc_order} |c_n|

    double magnitude(int n) const
    {
        return n >= 0 && n < static_cast<int>(coeffs.size()) ? std::abs(coeffs[static_cast<std::size_t>(n)]) : 0.0;
    }

    /// Finite series (no tail): coeff_bound = 0.
    static TruncatedSeries polynomial(std::vector<Complex> coeffs);
};

class SchurSpec;
using SchurSpecPtr = std::shared_ptr<const SchurSpec>;

/// Constructive self-maps of the unit disk. Every kind is a rational function
/// num/den with den(0) != 0, which is how coefficients are extracted.
class SchurSpec {
public:
    enum class Kind { Blaschke, MobiusTarget, LacunaryWrap, ExtremalA, ExtremalOmega };

    /// rotation * prod_j (z - zeros_j) / (1 - conj(zeros_j) z)
    struct Blaschke {
        std::vector<Complex> zeros;
    };
    /// (a - g) / (1 - a g) for the inner map g
    struct MobiusTarget {
        double a;
        SchurSpecPtr inner;
    };
    /// z^m g(z^k)
    struct LacunaryWrap {
        int m;
        int k;
        SchurSpecPtr inner;
    };
    /// z^m (a - z^k) / (1 - a z^k)
    struct ExtremalA {
        double a;
        int m;
        int k;
    };
    /// z (a - z) / (1 - a z)
    struct ExtremalOmega {
        double a;
    };

    using Variant = std::variant<Blaschke, MobiusTarget, LacunaryWrap, ExtremalA, ExtremalOmega>;

    static SchurSpec blaschke(std::vector<Complex> zeros, Complex rotation = 1.0);
    static SchurSpec mobius_target(double a, SchurSpec inner, Complex rotation = 1.0);
    static SchurSpec lacunary_wrap(int m, int k, SchurSpec inner);
    static SchurSpec extremal_a(double a, int m, int k, Complex rotation = 1.0);
    static SchurSpec extremal_omega(double a, Complex rotation = 1.0);

    Kind kind() const noexcept { return static_cast<Kind>(def_.index()); }
    const Variant& definition() const noexcept { return def_; }
    Complex rotation() const noexcept { return rotation_; }

    /// Direct evaluation at |z| < 1 (no series involved).
    Complex operator()(Complex z) const;

private:
    SchurSpec(Variant def, Complex rotation);

    Variant def_;
    Complex rotation_;
};

/// Coefficients up to degree M by polynomial arithmetic and series division by
/// the denominator. coeff_bound is 1 (Schur class).
TruncatedSeries taylor_coeffs(const SchurSpec& s, int M);

/// z^m g(z^k): g_s moves to index s*k + m.
TruncatedSeries lacunary_lift(const TruncatedSeries& g, int m, int k);

/// Upper bound on sum_{n > M} |c_n| r^n.
double tail_bound_linear(const TruncatedSeries& t, double r);

/// Upper bound on sum_{n > M} |c_n|^2 r^{2n}.
double tail_bound_quadratic(const TruncatedSeries& t, double r);

inline constexpr int kDefaultTruncation = 256;
inline constexpr int kMaxTruncation = 8192;
inline constexpr double kTailTarget = 1e-9;

/// Smallest M >= base (doubling) with both unit-bound tails below `target` at
/// r_max; stops at kMaxTruncation.
int choose_truncation(double r_max, int base = kDefaultTruncation, double target = kTailTarget);

struct SchurSampleOptions {
    int max_degree = 8;
    double zero_radius = 0.9;
    double compose_probability = 0.5;
    double max_a = 0.9;
};

/// Deterministic random Schur map for (seed, sample_id): a Blaschke product of
/// degree 1..max_degree, zeros uniform in the disk of radius zero_radius,
/// uniform rotation, optionally composed with (a - w)/(1 - a w).
SchurSpec random_schur(std::uint64_t seed, std::uint64_t sample_id, const SchurSampleOptions& opts = {});

/// Per-sample engine used by random_schur; exposed for other seeded generators.
class SampleRng {
public:
    SampleRng(std::uint64_t seed, std::uint64_t stream);
    double uniform();                     // [0, 1)
    std::uint64_t below(std::uint64_t n); // [0, n)

private:
    std::mt19937_64 engine_;
};

/// The raw draws behind random_schur.
struct SchurDraw {
    std::vector<Complex> zeros;
    Complex rotation;
    bool compose = false;
    double a = 0.0;
};

SchurDraw draw_schur(SampleRng& rng, const SchurSampleOptions& opts = {});

} // namespace bohr
