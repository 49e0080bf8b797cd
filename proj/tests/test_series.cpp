#include <doctest.h>

#include <cmath>
#include <random>

#include "dfig/series.hpp"
#include "taylor_oracle.hpp"

using dfig::dt::PowerSeries;
using dfig::dt::SeriesPair;

namespace {

PowerSeries make(std::vector<double> c, double t0 = 0.0) {
    return PowerSeries(std::move(c), t0);
}

PowerSeries from_vec(const std::vector<double>& c, double t0 = 0.0) {
    return PowerSeries(c, t0);
}

void check_close(const PowerSeries& got, const std::vector<double>& want, double tol = 1e-12) {
    REQUIRE(got.order() + 1 == static_cast<int>(want.size()));
    for (int k = 0; k <= got.order(); ++k) {
        CAPTURE(k);
        CHECK(std::abs(got[k] - want[static_cast<std::size_t>(k)]) <= tol);
    }
}

std::vector<double> taylor_exp(int order, double sign = 1.0) {
    std::vector<double> c(static_cast<std::size_t>(order) + 1);
    double f = 1.0;
    for (int k = 0; k <= order; ++k) {
        c[static_cast<std::size_t>(k)] = f;
        f *= sign / (k + 1);
    }
    return c;
}

} // namespace

TEST_SUITE("series rules") {

TEST_CASE("linear combination") {
    check_close(linear(1.0, make({1, 2}), 1.0, make({3, 4})), {4, 6});
    check_close(linear(0.0, make({5, -7, 2}), 0.0, make({1, 1, 1})), {0, 0, 0});
    check_close(linear(2.0, make({1, 0, 0}), -1.0, make({0, 1, 0})), {2, -1, 0});
}

TEST_CASE("cauchy product") {
    check_close(mul(make({1, 1, 0}), make({1, 1, 0})), {1, 2, 1});
    const PowerSeries x = make({0.3, -1.2, 0.7, 2.0});
    check_close(mul(x, dfig::dt::kronecker(0, 3)), {0.3, -1.2, 0.7, 2.0});
    check_close(mul(from_vec(taylor_exp(4)), from_vec(taylor_exp(4, -1.0))), {1, 0, 0, 0, 0},
                1e-15);
}

TEST_CASE("triple product") {
    check_close(mul3(make({0, 1, 0, 0, 0}), make({0, 1, 0, 0, 0}), make({0, 1, 0, 0, 0})),
                {0, 0, 0, 1, 0});
    const PowerSeries x = make({2, -1, 0.5});
    const PowerSeries d = dfig::dt::kronecker(0, 2);
    check_close(mul3(x, d, d), {2, -1, 0.5});
    check_close(mul3(make({1, 1}), make({1, 1}), make({1, 1})), {1, 3});
}

TEST_CASE("quotient") {
    check_close(div(make({1, 0, 0}), make({1, 1, 0})), {1, -1, 1});
    const PowerSeries z = make({1.7, 0.3, -0.2, 0.9});
    check_close(div(z, z), {1, 0, 0, 0}, 1e-15);
    check_close(div(make({0, 1, 0, 0}), make({1, 0, -1, 0})), {0, 1, 0, 1});
}

TEST_CASE("sin/cos pair") {
    const SeriesPair p = sincos(make({0, 1, 0, 0, 0}));
    check_close(p.sin, {0, 1, 0, -1.0 / 6.0, 0});
    check_close(p.cos, {1, 0, -0.5, 0, 1.0 / 24.0});

    const SeriesPair c = sincos(make({0.7, 0, 0, 0}));
    check_close(c.sin, {std::sin(0.7), 0, 0, 0});
    check_close(c.cos, {std::cos(0.7), 0, 0, 0});

    // theta = pi/6 + 2t against the analytic derivatives of sin/cos
    const SeriesPair a = sincos(make({std::numbers::pi / 6.0, 2.0, 0, 0}));
    check_close(a.sin, {0.5, 1.7320508075688773, -1.0, -1.1547005383792515}, 1e-12);
    check_close(a.cos, {0.86602540378443865, -1.0, -1.7320508075688773, 0.66666666666666667},
                1e-12);
}

TEST_CASE("exponential") {
    check_close(dfig::dt::exp(make({0, 1, 0, 0})), {1, 1, 0.5, 1.0 / 6.0});
    check_close(dfig::dt::exp(make({-1.3, 0, 0})), {std::exp(-1.3), 0, 0});
    check_close(dfig::dt::exp(make({0, 0, 1, 0, 0})), {1, 0, 1, 0, 0.5});
}

TEST_CASE("square root") {
    check_close(dfig::dt::sqrt(make({1, 2, 1, 0})), {1, 1, 0, 0});
    check_close(dfig::dt::sqrt(make({4, 0, 0})), {2, 0, 0});
    check_close(dfig::dt::sqrt(make({1, 1, 0, 0})), {1, 0.5, -1.0 / 8.0, 1.0 / 16.0});
}

TEST_CASE("evaluation") {
    CHECK(eval(make({1, 1, 0.5}, 2.0), 2.0) == 1.0);
    CHECK(eval(make({0, 1}, 1.0), 1.3) == doctest::Approx(0.3).epsilon(1e-15));
    const PowerSeries e = from_vec(taylor_exp(8), 0.5);
    CHECK(std::abs(eval(e, 0.6) - std::exp(0.1)) <= 1e-10);
}

TEST_CASE("kronecker") {
    check_close(dfig::dt::kronecker(0, 3), {1, 0, 0, 0});
    check_close(dfig::dt::kronecker(2, 4), {0, 0, 1, 0, 0});
    check_close(mul(dfig::dt::kronecker(1, 4), dfig::dt::kronecker(2, 4)),
                {0, 0, 0, 1, 0});
}

TEST_CASE("error paths") {
    CHECK_THROWS_AS((void)linear(1, make({1, 2}), 1, make({1, 2, 3})), dfig::DimensionError);
    CHECK_THROWS_AS((void)mul(make({1, 2}, 0.0), make({1, 2}, 1.0)), dfig::DimensionError);
    CHECK_THROWS_AS((void)div(make({1, 0}), make({0, 1}), "v_dc"), dfig::SingularError);
    try {
        (void)div(make({1, 0}), make({1e-11, 1}), "omega_t");
        FAIL("expected SingularError");
    } catch (const dfig::SingularError& e) {
        CHECK(std::string(e.what()).find("omega_t") != std::string::npos);
    }
    CHECK_THROWS_AS((void)dfig::dt::sqrt(make({-1, 0})), dfig::SingularError);
    CHECK_THROWS_AS((void)dfig::dt::sqrt(make({0, 1})), dfig::SingularError);
    CHECK_THROWS_AS((void)dfig::dt::kronecker(5, 4), dfig::DimensionError);
    CHECK_THROWS_AS((void)dfig::dt::kronecker(-1, 4), dfig::DimensionError);
    CHECK_THROWS_AS((void)dfig::dt::exp(make({1000.0, 0})), dfig::RangeError);
}

TEST_CASE("oracle equivalence of every rule") {
    // Coefficients must match the circle-sampling oracle on >= 20 random
    // smooth inputs per rule, up to order 8.
    std::mt19937 rng(20240915);
    constexpr int order = 8;
    constexpr double rel_tol = 1e-8;

    auto compare = [&](const PowerSeries& got, const std::vector<double>& want) {
        for (int k = 0; k <= order; ++k) {
            const double scale = std::max(1.0, std::abs(want[static_cast<std::size_t>(k)]));
            CAPTURE(k);
            CHECK(std::abs(got[k] - want[static_cast<std::size_t>(k)]) <= rel_tol * scale);
        }
    };

    for (int trial = 0; trial < 24; ++trial) {
        const auto cx = oracle::random_poly(rng, order, -1.0, 1.0, 0.8);
        const auto cz = oracle::random_poly(rng, order, 1.0, 2.0, 0.3);
        const auto cw = oracle::random_poly(rng, order, -0.5, 0.5, 0.5);
        const PowerSeries x = from_vec(cx);
        const PowerSeries z = from_vec(cz);
        const PowerSeries w = from_vec(cw);

        compare(linear(1.7, x, -0.4, z), oracle::taylor_coeffs([&](oracle::cplx s) {
                    return 1.7 * oracle::poly_eval(cx, s) - 0.4 * oracle::poly_eval(cz, s);
                }, order));
        compare(mul(x, z), oracle::taylor_coeffs([&](oracle::cplx s) {
                    return oracle::poly_eval(cx, s) * oracle::poly_eval(cz, s);
                }, order));
        compare(mul3(x, z, w), oracle::taylor_coeffs([&](oracle::cplx s) {
                    return oracle::poly_eval(cx, s) * oracle::poly_eval(cz, s) *
                           oracle::poly_eval(cw, s);
                }, order));
        compare(div(x, z), oracle::taylor_coeffs([&](oracle::cplx s) {
                    return oracle::poly_eval(cx, s) / oracle::poly_eval(cz, s);
                }, order));
        compare(dfig::dt::exp(x), oracle::taylor_coeffs([&](oracle::cplx s) {
                    return std::exp(oracle::poly_eval(cx, s));
                }, order));
        compare(dfig::dt::sqrt(z), oracle::taylor_coeffs([&](oracle::cplx s) {
                    return std::sqrt(oracle::poly_eval(cz, s));
                }, order));
        const SeriesPair sc = sincos(x);
        compare(sc.sin, oracle::taylor_coeffs([&](oracle::cplx s) {
                    return std::sin(oracle::poly_eval(cx, s));
                }, order));
        compare(sc.cos, oracle::taylor_coeffs([&](oracle::cplx s) {
                    return std::cos(oracle::poly_eval(cx, s));
                }, order));
    }
}

TEST_CASE("round-trip quotient property") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const auto cp = oracle::random_poly(rng, 4, -1.0, 1.0, 1.0);
        const auto cq = oracle::random_poly(rng, 4, 0.5, 2.0, 0.7);
        PowerSeries pfull = from_vec(cp).truncated(10);
        PowerSeries qfull = from_vec(cq).truncated(10);
        const PowerSeries back = div(mul(pfull, qfull), qfull);
        for (int k = 0; k <= 10; ++k) {
            CHECK(std::abs(back[k] - pfull[k]) <= 1e-12);
        }
    }
}

TEST_CASE("pythagorean property") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const auto ct = oracle::random_poly(rng, 8, -3.0, 3.0, 1.5);
        const SeriesPair p = sincos(from_vec(ct));
        const PowerSeries unit = linear(1.0, mul(p.sin, p.sin), 1.0, mul(p.cos, p.cos));
        CHECK(std::abs(unit[0] - 1.0) <= 1e-12);
        for (int k = 1; k <= 8; ++k) CHECK(std::abs(unit[k]) <= 1e-12);
    }
}

TEST_CASE("truncation consistency is exact") {
    std::mt19937 rng(3);
    const auto cx = oracle::random_poly(rng, 10, -1.0, 1.0, 1.0);
    const auto cz = oracle::random_poly(rng, 10, 1.0, 2.0, 0.4);
    const PowerSeries x = from_vec(cx);
    const PowerSeries z = from_vec(cz);

    const PowerSeries x5 = x.truncated(5);
    const PowerSeries z5 = z.truncated(5);

    CHECK(mul(x, z).truncated(5) == mul(x5, z5));
    CHECK(div(x, z).truncated(5) == div(x5, z5));
    CHECK(dfig::dt::exp(x).truncated(5) == dfig::dt::exp(x5));
    CHECK(dfig::dt::sqrt(z).truncated(5) == dfig::dt::sqrt(z5));
    const SeriesPair full = sincos(x);
    const SeriesPair part = sincos(x5);
    CHECK(full.sin.truncated(5) == part.sin);
    CHECK(full.cos.truncated(5) == part.cos);
}

} // TEST_SUITE
