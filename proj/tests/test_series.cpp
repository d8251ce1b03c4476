#include "bohr/series.hpp"

#include "error_check.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace bohr;

namespace {

Complex partial_sum(const TruncatedSeries& t, Complex z)
{
    Complex acc{};
    for (auto it = t.coeffs.rbegin(); it != t.coeffs.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

} // namespace

TEST_CASE("extremal family coefficients for m=0, k=1")
{
    for (double a : {0.0, 0.3, 0.9}) {
        const TruncatedSeries t = taylor_coeffs(SchurSpec::extremal_a(a, 0, 1), 16);
        REQUIRE(t.coeffs.size() == 17);
        CHECK(t.trunc_order == 16);
        CHECK(t.coeff_bound == 1.0);
        CHECK(std::abs(t.coeffs[0] - a) <= 1e-15);
        for (int s = 1; s <= 16; ++s) {
            CHECK(std::abs(t.coeffs[static_cast<std::size_t>(s)] + (1 - a * a) * std::pow(a, s - 1)) <= 1e-14);
        }
    }
}

TEST_CASE("omega with a=0 is -z^2")
{
    const TruncatedSeries t = taylor_coeffs(SchurSpec::extremal_omega(0.0), 8);
    for (int n = 0; n <= 8; ++n) {
        CHECK(std::abs(t.coeffs[static_cast<std::size_t>(n)] - (n == 2 ? Complex(-1.0) : Complex{})) == 0.0);
    }
}

TEST_CASE("single-zero Blaschke factor")
{
    const TruncatedSeries t = taylor_coeffs(SchurSpec::blaschke({0.5}), 10);
    CHECK(std::abs(t.coeffs[0] - Complex(-0.5)) <= 1e-15);
    CHECK(std::abs(t.coeffs[1] - Complex(0.75)) <= 1e-15);
    CHECK(std::abs(t.coeffs[2] - Complex(0.375)) <= 1e-15);
    CHECK(std::abs(t.coeffs[3] - Complex(0.1875)) <= 1e-15);
}

TEST_CASE("extremal family closed form for general (m, k)")
{
    const double a = 0.7;
    for (int k = 1; k <= 4; ++k) {
        for (int m = 0; m <= k; ++m) {
            const int M = 64;
            const TruncatedSeries t = taylor_coeffs(SchurSpec::extremal_a(a, m, k), M);
            for (int n = 0; n <= M; ++n) {
                Complex expected{};
                if (n == m) {
                    expected = a;
                } else if (n > m && (n - m) % k == 0) {
                    expected = -(1 - a * a) * std::pow(a, (n - m) / k - 1);
                }
                CHECK(std::abs(t.coeffs[static_cast<std::size_t>(n)] - expected) <= 1e-14);
            }
        }
    }
}

TEST_CASE("coefficients agree with a Cauchy-integral oracle")
{
    const SchurSpec nested = SchurSpec::mobius_target(
        0.4, SchurSpec::lacunary_wrap(1, 2, SchurSpec::blaschke({Complex(0.3, 0.2), Complex(-0.5, 0.1)}, Complex(0, 1))),
        std::polar(1.0, 0.7));
    const std::vector<SchurSpec> specs{
        SchurSpec::blaschke({Complex(0.2, -0.6), Complex(0.5, 0.5), Complex(-0.8, 0.0)}, std::polar(1.0, 1.3)),
        SchurSpec::extremal_a(0.6, 2, 3, std::polar(1.0, -0.4)),
        SchurSpec::extremal_omega(0.8),
        nested,
        random_schur(11, 3),
        random_schur(11, 4),
    };
    for (const SchurSpec& s : specs) {
        const TruncatedSeries t = taylor_coeffs(s, 40);
        const auto ref = oracle::cauchy_coeffs([&](Complex z) { return s(z); }, 0.8, 512, 30);
        for (std::size_t n = 0; n < ref.size(); ++n) {
            CHECK(std::abs(t.coeffs[n] - ref[n]) <= 1e-9);
        }
    }
}

TEST_CASE("random Schur partial sums stay in the closed disk")
{
    for (std::uint64_t id = 0; id < 20; ++id) {
        const SchurSpec s = random_schur(2024, id);
        const TruncatedSeries t = taylor_coeffs(s, 4096);
        const double r = 0.99;
        for (int j = 0; j < 64; ++j) {
            const Complex z = std::polar(r, 2.0 * std::numbers::pi * j / 64.0);
            CHECK(std::abs(partial_sum(t, z)) <= 1.0 + tail_bound_linear(t, r) + 1e-9);
        }
        for (const Complex& c : t.coeffs) {
            CHECK(std::abs(c) <= t.coeff_bound + 1e-12);
        }
    }
}

TEST_CASE("direct evaluation matches the series inside the disk")
{
    const SchurSpec s = random_schur(5, 17);
    const TruncatedSeries t = taylor_coeffs(s, 512);
    for (Complex z : {Complex(0.1, 0.2), Complex(-0.5, 0.3), Complex(0.0, -0.7)}) {
        CHECK(std::abs(partial_sum(t, z) - s(z)) <= 1e-12);
    }
}

TEST_CASE("invalid constructions")
{
    CHECK_ERROR_CODE(SchurSpec::blaschke({Complex(1.0, 0.0)}), ErrorCode::NotInDisk);
    CHECK_ERROR_CODE(SchurSpec::blaschke({Complex(0.9, 0.9)}), ErrorCode::NotInDisk);
    CHECK_ERROR_CODE(SchurSpec::extremal_a(1.0, 0, 1), ErrorCode::ParamRange);
    CHECK_ERROR_CODE(SchurSpec::extremal_omega(-0.1), ErrorCode::ParamRange);
    CHECK_ERROR_CODE(SchurSpec::lacunary_wrap(3, 2, SchurSpec::blaschke({})), ErrorCode::ParamRange);
    CHECK_ERROR_CODE(taylor_coeffs(SchurSpec::blaschke({0.1}), 0), ErrorCode::ParamRange);
}

TEST_CASE("lacunary lift")
{
    const Complex c0(0.3, 0.1);
    const Complex c1(-0.2, 0.4);
    TruncatedSeries g = TruncatedSeries::polynomial({c0, c1});
    const TruncatedSeries l = lacunary_lift(g, 1, 2);
    REQUIRE(l.coeffs.size() == 4);
    CHECK(l.coeffs[0] == Complex{});
    CHECK(l.coeffs[1] == c0);
    CHECK(l.coeffs[2] == Complex{});
    CHECK(l.coeffs[3] == c1);
    CHECK(l.trunc_order == 3);

    const TruncatedSeries id = lacunary_lift(TruncatedSeries::polynomial({1.0}), 0, 1);
    REQUIRE(id.coeffs.size() == 1);
    CHECK(id.coeffs[0] == Complex(1.0));

    const double a = 0.4;
    const TruncatedSeries e = lacunary_lift(TruncatedSeries::polynomial({a, -(1 - a * a)}), 2, 3);
    CHECK(e.coeffs[2] == Complex(a));
    CHECK(e.coeffs[5] == Complex(-(1 - a * a)));

    CHECK_ERROR_CODE(lacunary_lift(g, 3, 2), ErrorCode::ParamRange);
}

TEST_CASE("lacunary lift round trip")
{
    const TruncatedSeries g = taylor_coeffs(random_schur(9, 1), 50);
    for (int k = 1; k <= 5; ++k) {
        for (int m = 0; m <= k; ++m) {
            const TruncatedSeries l = lacunary_lift(g, m, k);
            CHECK(l.trunc_order == 50 * k + m);
            CHECK(l.coeff_bound == g.coeff_bound);
            for (int n = 0; n <= l.trunc_order; ++n) {
                const Complex c = l.coeffs[static_cast<std::size_t>(n)];
                if (n >= m && (n - m) % k == 0) {
                    CHECK(c == g.coeffs[static_cast<std::size_t>((n - m) / k)]);
                } else {
                    CHECK(c == Complex{});
                }
            }
        }
    }
}

TEST_CASE("lacunary wrap agrees with lifting the inner coefficients")
{
    const SchurSpec inner = random_schur(3, 8);
    const TruncatedSeries wrapped = taylor_coeffs(SchurSpec::lacunary_wrap(2, 3, inner), 3 * 40 + 2);
    const TruncatedSeries lifted = lacunary_lift(taylor_coeffs(inner, 40), 2, 3);
    REQUIRE(wrapped.coeffs.size() == lifted.coeffs.size());
    for (std::size_t n = 0; n < wrapped.coeffs.size(); ++n) {
        CHECK(std::abs(wrapped.coeffs[n] - lifted.coeffs[n]) <= 1e-14);
    }
}

TEST_CASE("tail bounds")
{
    TruncatedSeries t;
    t.coeff_bound = 1.0;
    t.trunc_order = 127;
    CHECK(tail_bound_linear(t, 0.5) == doctest::Approx(std::pow(2.0, -127)).epsilon(1e-12));
    CHECK(tail_bound_quadratic(t, 0.5) <= 4.0 * std::pow(4.0, -128) / 3.0 * (1 + 1e-12));
    t.trunc_order = 63;
    CHECK(tail_bound_linear(t, 0.9) == doctest::Approx(std::pow(0.9, 64) / 0.1).epsilon(1e-12));
    CHECK(tail_bound_linear(t, 0.9) == doctest::Approx(1.18e-2).epsilon(1e-2));
    t.trunc_order = 255;
    CHECK(tail_bound_quadratic(t, 0.95) == doctest::Approx(std::pow(0.95, 512) / (1 - 0.9025)).epsilon(1e-12));
    CHECK(tail_bound_quadratic(t, 0.95) < 1e-9);

    const TruncatedSeries poly = TruncatedSeries::polynomial({1.0, 2.0});
    CHECK(tail_bound_linear(poly, 0.9) == 0.0);
    CHECK(tail_bound_quadratic(poly, 0.9) == 0.0);

    CHECK_ERROR_CODE(tail_bound_linear(t, 1.0), ErrorCode::RadiusRange);
    CHECK_ERROR_CODE(tail_bound_quadratic(t, 1.5), ErrorCode::RadiusRange);
}

TEST_CASE("tail bound dominates the true tail of the extremal family")
{
    const double a = 0.5;
    const int M = 20;
    const TruncatedSeries t = taylor_coeffs(SchurSpec::extremal_a(a, 0, 1), M);
    const double r = 0.8;
    double tail = 0.0;
    for (int n = M + 1; n < 2000; ++n) {
        tail += (1 - a * a) * std::pow(a, n - 1) * std::pow(r, n);
    }
    CHECK(tail <= tail_bound_linear(t, r));
}

TEST_CASE("choose_truncation")
{
    CHECK(choose_truncation(0.5) == 256);
    CHECK(choose_truncation(0.95) == 512);
    const int M = choose_truncation(0.99);
    CHECK(std::pow(0.99, M + 1) / 0.01 < 1e-9);
    CHECK(choose_truncation(0.99999) == kMaxTruncation);
    CHECK_ERROR_CODE(choose_truncation(1.0), ErrorCode::RadiusRange);
}

TEST_CASE("random sampling is a pure function of (seed, id)")
{
    const TruncatedSeries a = taylor_coeffs(random_schur(42, 7), 32);
    const TruncatedSeries b = taylor_coeffs(random_schur(42, 7), 32);
    const TruncatedSeries c = taylor_coeffs(random_schur(42, 8), 32);
    CHECK(a.coeffs == b.coeffs);
    CHECK(a.coeffs != c.coeffs);

    SampleRng rng(1, 2);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(rng.below(8) < 8u);
    }
    SchurSampleOptions opts;
    opts.max_degree = 3;
    opts.zero_radius = 0.5;
    opts.max_a = 0.2;
    SampleRng draws(3, 4);
    for (int i = 0; i < 200; ++i) {
        const SchurDraw d = draw_schur(draws, opts);
        CHECK(d.zeros.size() >= 1u);
        CHECK(d.zeros.size() <= 3u);
        for (Complex z : d.zeros) {
            CHECK(std::abs(z) < 0.5);
        }
        CHECK(std::abs(std::abs(d.rotation) - 1.0) <= 1e-15);
        CHECK(d.a < 0.2);
    }
}
