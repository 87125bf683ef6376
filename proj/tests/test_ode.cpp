#include <doctest.h>

#include "calckit/errors.hpp"
#include "calckit/ode_series.hpp"
#include "calckit/quadrature.hpp"
#include "calckit/special_functions.hpp"
#include "calckit/taylor_ivp.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace calckit;

namespace {

constexpr std::uint64_t seed = 0x5eed2024;
constexpr double pi = std::numbers::pi;

PowerSeries real_series(std::vector<double> c, std::size_t N) {
    c.resize(N + 1, 0.0);
    return PowerSeries::from_real(c);
}

double max_abs(const PowerSeries& s, std::size_t upto) {
    double m = 0.0;
    for (std::size_t n = 0; n <= std::min(upto, s.order()); ++n) m = std::max(m, std::abs(s[n]));
    return m;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

} // namespace

TEST_CASE("analytic ODE examples") {
    const std::size_t N = 16;
    OdeCoefficients harmonic(real_series({0}, N), real_series({1}, N));
    const auto c = solve_analytic_ode(harmonic, 1.0, 0.0, N);
    for (std::size_t n = 0; n <= N; ++n) {
        const double want = n % 2 ? 0.0 : (n % 4 ? -1.0 : 1.0) / factorial(int(n));
        CHECK(std::abs(c[n] - want) < 1e-15);
    }
    OdeCoefficients zero(real_series({0}, N), real_series({0}, N));
    const auto l = solve_analytic_ode(zero, 2.5, -1.5, N);
    CHECK(l[0] == cplx(2.5));
    CHECK(l[1] == cplx(-1.5));
    for (std::size_t n = 2; n <= N; ++n) CHECK(l[n] == cplx(0.0));

    OdeCoefficients airy(real_series({0}, 30), real_series({0, -1}, 30));
    const auto a = solve_analytic_ode(airy, 1.0, 0.0, 30);
    const auto pair = airy_pair(30);
    for (std::size_t n = 0; n <= 30; ++n) CHECK(std::abs(a[n] - pair.first[n]) < 1e-16);
}

TEST_CASE("analytic ODE residual vanishes") {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t N = 20;
        std::vector<double> av(N + 1), bv(N + 1);
        for (auto& x : av) x = u(rng);
        for (auto& x : bv) x = u(rng);
        OdeCoefficients c(PowerSeries::from_real(av), PowerSeries::from_real(bv), 1.0);
        const auto y = solve_analytic_ode(c, u(rng), u(rng), N);
        const auto r = analytic_ode_residual(c, y);
        const double scale = std::max(1.0, max_abs(y, N)) * 2.0;
        CHECK(max_abs(r, r.order()) < 1e-10 * scale);
    }
}

TEST_CASE("solution radius is at least the coefficient radius") {
    std::mt19937_64 rng(seed + 1);
    std::uniform_real_distribution<double> radius(0.5, 3.0), u(-1.0, 1.0);
    int decided = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const double r = radius(rng);
        const std::size_t N = 80;
        const auto g = PowerSeries::geometric(r, N);
        OdeCoefficients c(series_scale(g, u(rng)), series_scale(g, u(rng)));
        const auto y = solve_analytic_ode(c, 1.0, u(rng), N);
        const auto est = ratio_radius(y);
        if (!est.decided()) continue;
        ++decided;
        CHECK(*est.as_optional() >= 0.9 * r);
    }
    CHECK(decided >= 15);
}

TEST_CASE("Frobenius integer gap example") {
    const std::size_t N = 12;
    OdeCoefficients c(real_series({-3}, N), real_series({0, 0, 1}, N));
    const auto s = solve_frobenius(c, N);
    CHECK(s.kind == FrobeniusCase::integer_gap);
    CHECK(std::abs(s.indicial_roots.first - 4.0) < 1e-12);
    CHECK(std::abs(s.indicial_roots.second - 0.0) < 1e-12);
    CHECK(s.gap == 4);
    REQUIRE(s.gap_limit);
    CHECK(std::abs((*s.gap_limit)[4] - (-1.0 / 16.0)) < 1e-12);
    CHECK(std::abs((*s.gap_limit)[6] - 1.0 / 192.0) < 1e-12);
    // The gap limit is the log weight times x^gap times the primary series.
    for (std::size_t n = 4; n <= N; ++n)
        CHECK(std::abs((*s.gap_limit)[n] - s.secondary_log_weight * s.primary[n - 4]) < 1e-14);
    for (cplx r : {s.indicial_roots.first, s.indicial_roots.second}) CHECK(std::abs(indicial_polynomial(c, r)) < 1e-10);
    CHECK(max_abs(frobenius_residual(c, s.indicial_roots.first, s.primary), N) < 1e-10);
    CHECK(max_abs(frobenius_secondary_residual(c, s), N) < 1e-10);
}

TEST_CASE("Frobenius Euler equation has no logarithm") {
    const std::size_t N = 8;
    OdeCoefficients c(real_series({1}, N), real_series({-1}, N));
    const auto s = solve_frobenius(c, N);
    CHECK(std::abs(s.indicial_roots.first - 1.0) < 1e-12);
    CHECK(std::abs(s.indicial_roots.second + 1.0) < 1e-12);
    CHECK(std::abs(s.secondary_log_weight) < 1e-12);
    CHECK(std::abs(s.primary[0] - 1.0) < 1e-15);
    CHECK(std::abs(s.secondary_series[0] - 1.0) < 1e-15);
    for (std::size_t n = 1; n <= N; ++n) {
        CHECK(std::abs(s.primary[n]) < 1e-14);
        CHECK(std::abs(s.secondary_series[n]) < 1e-14);
    }
}

TEST_CASE("Frobenius double root: Bessel of order zero") {
    const std::size_t N = 10;
    OdeCoefficients c(real_series({1}, N), real_series({0, 0, 1}, N));
    const auto s = solve_frobenius(c, N);
    CHECK(s.kind == FrobeniusCase::double_root);
    CHECK(std::abs(s.indicial_roots.first) < 1e-12);
    CHECK(std::abs(s.primary[0] - 1.0) < 1e-15);
    CHECK(std::abs(s.primary[2] + 0.25) < 1e-15);
    CHECK(std::abs(s.primary[4] - 1.0 / 64.0) < 1e-15);
    CHECK(std::abs(s.secondary_log_weight - 1.0) < 1e-12);
    CHECK(max_abs(frobenius_secondary_residual(c, s), N) < 1e-10);
}

TEST_CASE("Frobenius generic case is label invariant") {
    std::mt19937_64 rng(seed + 2);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t N = 10;
        std::vector<double> av(N + 1), bv(N + 1);
        for (auto& x : av) x = u(rng);
        for (auto& x : bv) x = u(rng);
        av[0] = 0.5 + u(rng);
        bv[0] = -0.3 + u(rng);
        OdeCoefficients c(PowerSeries::from_real(av), PowerSeries::from_real(bv));
        const auto s = solve_frobenius(c, N);
        if (s.kind != FrobeniusCase::generic) continue;
        CHECK(s.indicial_roots.first.real() >= s.indicial_roots.second.real());
        const auto p1 = frobenius_series_at(c, s.indicial_roots.first, N);
        const auto p2 = frobenius_series_at(c, s.indicial_roots.second, N);
        for (std::size_t n = 0; n <= N; ++n) {
            CHECK(std::abs(p1[n] - s.primary[n]) < 1e-12 * std::max(1.0, std::abs(p1[n])));
            CHECK(std::abs(p2[n] - s.secondary_series[n]) < 1e-12 * std::max(1.0, std::abs(p2[n])));
        }
        CHECK(max_abs(frobenius_residual(c, s.indicial_roots.second, s.secondary_series), N) < 1e-10);
    }
}

TEST_CASE("reduction of order examples") {
    const std::size_t N = 12;
    OdeCoefficients h(real_series({0}, N), real_series({1}, N));
    const auto cosx = solve_analytic_ode(h, 1.0, 0.0, N);
    const auto y2 = second_solution_by_reduction(cosx, real_series({0}, N), N);
    for (std::size_t n = 0; n <= N; ++n) {
        const double want = n % 2 ? ((n / 2) % 2 ? -1.0 : 1.0) / factorial(int(n)) : 0.0;
        CHECK(std::abs(y2[n] - want) < 1e-14);
    }
    const auto x = second_solution_by_reduction(real_series({1}, N), real_series({0}, N), N);
    CHECK(std::abs(x[1] - 1.0) < 1e-15);
    for (std::size_t n = 2; n <= N; ++n) CHECK(std::abs(x[n]) < 1e-15);
    const auto e = second_solution_by_reduction(real_series({1}, N), real_series({-1}, N), N);
    CHECK(std::abs(e[0]) < 1e-15);
    for (std::size_t n = 1; n <= N; ++n) CHECK(std::abs(e[n] - 1.0 / factorial(int(n))) < 1e-14);
    CHECK_THROWS_AS(second_solution_by_reduction(real_series({0, 1}, N), real_series({0}, N), N), DomainError);
}

TEST_CASE("reduction of order Wronskian is exp(-int a)") {
    const std::size_t N = 14;
    const auto a = real_series({0.3, -0.2, 0.1}, N);
    OdeCoefficients c(a, real_series({1.0, 0.5}, N));
    const auto y1 = solve_analytic_ode(c, 1.0, 0.2, N);
    const auto y2 = second_solution_by_reduction(y1, a, N);
    const auto W = wronskian(y1, y2);
    const auto target = series_exp(series_scale(series_antiderivative(a), -1.0));
    for (std::size_t n = 0; n + 1 <= W.order(); ++n) CHECK(std::abs(W[n] - target[n]) < 1e-10);
}

TEST_CASE("variation of parameters examples") {
    const std::size_t N = 12;
    OdeCoefficients h(real_series({0}, N), real_series({1}, N));
    const auto cosx = solve_analytic_ode(h, 1.0, 0.0, N);
    const auto sinx = solve_analytic_ode(h, 0.0, 1.0, N);
    const auto yp = particular_solution(cosx, sinx, real_series({1}, N), N);
    // y'' + y - 1 vanishes to the guaranteed order
    const auto r = series_derivative(series_derivative(yp)) + yp.truncated(N - 2) - real_series({1}, N - 2);
    CHECK(max_abs(r, N - 3) < 1e-12);
    const auto z = particular_solution(cosx, sinx, real_series({0}, N), N);
    CHECK(max_abs(z, N) == 0.0);
    const auto cubic = particular_solution(real_series({1}, N), real_series({0, 1}, N), real_series({0, 1}, N), N);
    CHECK(std::abs(cubic[3] - 1.0 / 6.0) < 1e-15);
    for (std::size_t n = 0; n <= N; ++n)
        if (n != 3) CHECK(std::abs(cubic[n]) < 1e-15);
    CHECK_THROWS_AS(particular_solution(cosx, cosx, real_series({1}, N), N), DomainError);
}

TEST_CASE("Taylor IVP examples") {
    TaylorIvp lin{1, {{{1.0, {0, 1}}}}, 0.0, {1.0}};
    const auto e = taylor_ivp_series(lin, 12)[0];
    for (std::size_t n = 0; n <= 12; ++n) CHECK(std::abs(e[n] - 1.0 / factorial(int(n))) < 1e-15);
    TaylorIvp sq{1, {{{1.0, {0, 2}}}}, 0.0, {1.0}};
    const auto g = taylor_ivp_series(sq, 12)[0];
    for (std::size_t n = 0; n <= 12; ++n) CHECK(std::abs(g[n] - 1.0) < 1e-13);
}

namespace {

// Head model x1' = x2, x2' = -(k/J) x1 - (c/J) x2 + (kT/J) i with
// i = e^{-x1^2} sin x2 truncated to x2 - x1^2 x2 - x2^3/6.
TaylorIvp head_model(double x1, double x2) {
    const double J = 0.01, c = 0.004, k = 0.0, kT = 0.05;
    TaylorIvp ivp;
    ivp.dimension = 2;
    ivp.rhs = {{{1.0, {0, 0, 1}}},
               {{-k / J, {0, 1, 0}}, {-c / J + kT / J, {0, 0, 1}}, {-kT / J, {0, 2, 1}}, {-kT / J / 6.0, {0, 0, 3}}}};
    ivp.initial_state = {x1, x2};
    return ivp;
}

} // namespace

TEST_CASE("head model series against a step integrator") {
    for (auto init : {std::pair{0.0, 0.0}, std::pair{0.0, 0.1}, std::pair{0.2, -0.05}}) {
        const auto ivp = head_model(init.first, init.second);
        const auto s = taylor_ivp_series(ivp, 30);
        std::vector<double> y = ivp.initial_state;
        using namespace boost::numeric::odeint;
        integrate_adaptive(make_controlled<runge_kutta_dopri5<std::vector<double>>>(1e-14, 1e-14),
                           [&](const std::vector<double>& x, std::vector<double>& dx, double t) { dx = ivp.eval(t, x); },
                           y, 0.0, 0.05, 1e-4);
        CHECK(std::abs(s[0](0.05) - y[0]) < 1e-8);
        CHECK(std::abs(s[1](0.05) - y[1]) < 1e-8);
    }
    const auto z = taylor_ivp_series(head_model(0.0, 0.0), 4);
    for (std::size_t n = 0; n <= 4; ++n) {
        CHECK(z[0][n] == cplx(0.0));
        CHECK(z[1][n] == cplx(0.0));
    }
}

TEST_CASE("Taylor IVP validation") {
    TaylorIvp bad{2, {{{1.0, {0, 1}}}}, 0.0, {1.0, 0.0}};
    CHECK_THROWS_AS(taylor_ivp_series(bad, 4), DomainError);
}

TEST_CASE("Legendre polynomials") {
    const auto p0 = legendre(0), p1 = legendre(1);
    CHECK(p0[0] == cplx(1));
    CHECK(p1[0] == cplx(0));
    CHECK(p1[1] == cplx(1));
    const auto p2 = legendre_exact(2);
    REQUIRE(p2.size() == 3);
    CHECK(p2[0] == Rational(-1, 2));
    CHECK(p2[1] == Rational(0));
    CHECK(p2[2] == Rational(3, 2));
}

TEST_CASE("Legendre orthogonality") {
    for (unsigned l = 0; l <= 6; ++l)
        for (unsigned k = 0; k <= 6; ++k) {
            const auto a = legendre(l), b = legendre(k);
            const double v = integrate_real([&](double x) { return (a(x) * b(x)).real(); }, -1.0, 1.0, {});
            CHECK(std::abs(v - (l == k ? 2.0 / (2.0 * l + 1.0) : 0.0)) < 1e-10);
        }
}

TEST_CASE("associated Legendre and spherical harmonics") {
    // p_1^1 = -(1 - x^2)^{1/2} with the Condon-Shortley sign
    const auto p11 = associated_legendre({1, 1});
    CHECK(p11(0.6) == doctest::Approx(-0.8).epsilon(1e-14));
    const auto p1m1 = associated_legendre({1, -1});
    CHECK(p1m1(0.6) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK_THROWS_AS(associated_legendre({2, 3}), DomainError);

    QuadratureRule rule;
    rule.abs_tol = 1e-12;
    const double norm = integrate_real(
        [&](double th) {
            return integrate_real([&](double ph) { return std::norm(spherical_harmonic({2, 1}, th, ph)); }, 0.0, 2.0 * pi, rule) *
                   std::sin(th);
        },
        0.0, pi, rule);
    CHECK(std::abs(norm - 1.0) < 1e-8);
    const double cross = integrate_real(
        [&](double th) {
            return integrate_real(
                       [&](double ph) {
                           return (spherical_harmonic({2, 1}, th, ph) * std::conj(spherical_harmonic({3, 1}, th, ph))).real();
                       },
                       0.0, 2.0 * pi, rule) *
                   std::sin(th);
        },
        0.0, pi, rule);
    CHECK(std::abs(cross) < 1e-8);
}

TEST_CASE("Airy series") {
    const auto [w1, w2] = airy_pair(40);
    CHECK(std::abs(w1[3] - 1.0 / 6.0) < 1e-16);
    CHECK(std::abs(w2[4] - 1.0 / 12.0) < 1e-16);
    CHECK(std::abs(w1[6] - 1.0 / 180.0) < 1e-16);
    // w'' - z w vanishes to order N - 2
    for (const auto& w : {w1, w2}) {
        const auto r = series_derivative(series_derivative(w)) - series_shift(w, 1).truncated(38);
        CHECK(max_abs(r, 38) < 1e-15);
    }
}
