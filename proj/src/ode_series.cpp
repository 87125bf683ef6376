#include "calckit/ode_series.hpp"

#include "calckit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace calckit {

OdeCoefficients::OdeCoefficients(PowerSeries a_, PowerSeries b_, std::optional<double> r)
    : a(std::move(a_)), b(std::move(b_)) {
    if (a.center() != b.center()) throw DomainError("ODE coefficient series have different centers");
    if (r) {
        if (!(*r > 0.0)) throw DomainError("ODE coefficient radius must be positive");
        radius = *r;
        return;
    }
    radius = std::numeric_limits<double>::infinity();
    for (const auto* s : {&a, &b}) {
        auto est = ratio_radius(*s);
        if (!est.decided()) continue;
        if (s->radius()) radius = std::min(radius, *s->radius());
        radius = std::min(radius, *est.as_optional());
    }
}

PowerSeries solve_analytic_ode(const OdeCoefficients& c, cplx y0, cplx y0_prime, std::size_t N) {
    if (N >= 2 && (c.a.order() + 2 < N || c.b.order() + 2 < N))
        throw DomainError("solve_analytic_ode: coefficient series too short for the requested order");
    std::vector<cplx> y(N + 1, 0.0);
    y[0] = y0;
    if (N >= 1) y[1] = y0_prime;
    for (std::size_t n = 0; n + 2 <= N; ++n) {
        cplx s = 0.0;
        for (std::size_t k = 0; k <= n; ++k)
            s += double(k + 1) * c.a[n - k] * y[k + 1] + c.b[n - k] * y[k];
        y[n + 2] = -s / (double(n + 1) * double(n + 2));
    }
    PowerSeries out(std::move(y), c.a.center());
    auto est = ratio_radius(out);
    std::optional<double> r;
    if (est.decided())
        r = std::max(*est.as_optional(), c.radius);
    else if (std::isfinite(c.radius))
        r = c.radius;
    return out.with_radius(r);
}

PowerSeries analytic_ode_residual(const OdeCoefficients& c, const PowerSeries& y) {
    if (y.order() < 2) throw DomainError("residual needs a series of order >= 2");
    const auto d1 = series_derivative(y);
    const auto d2 = series_derivative(d1);
    return d2 + c.a * d1 + c.b * y;
}

std::string to_string(FrobeniusCase c) {
    switch (c) {
    case FrobeniusCase::generic: return "generic";
    case FrobeniusCase::double_root: return "double-root";
    default: return "integer-gap";
    }
}

cplx indicial_polynomial(const OdeCoefficients& c, cplx r) {
    return r * (r - 1.0) + c.a[0] * r + c.b[0];
}

PowerSeries frobenius_series_at(const OdeCoefficients& c, cplx r, std::size_t N) {
    if (c.a.order() < N || c.b.order() < N)
        throw DomainError("Frobenius: coefficient series shorter than the requested order");
    std::vector<cplx> y(N + 1, 0.0);
    y[0] = 1.0;
    double scale = 1.0;
    for (std::size_t n = 1; n <= N; ++n) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += y[k] * ((r + double(k)) * c.a[n - k] + c.b[n - k]);
        const cplx F = indicial_polynomial(c, r + double(n));
        scale = std::max(scale, std::abs(r + double(n)) * std::abs(r + double(n)));
        if (std::abs(F) < 1e-12 * scale)
            throw Error("Frobenius recurrence denominator vanishes at n = " + std::to_string(n) +
                        " (misclassified indicial case)");
        y[n] = -s / F;
    }
    return PowerSeries(std::move(y), c.a.center());
}

PowerSeries frobenius_residual(const OdeCoefficients& c, cplx r, const PowerSeries& y) {
    const std::size_t N = std::min({y.order(), c.a.order(), c.b.order()});
    std::vector<cplx> res(N + 1, 0.0);
    for (std::size_t n = 0; n <= N; ++n) {
        cplx s = indicial_polynomial(c, r + double(n)) * y[n];
        for (std::size_t k = 0; k < n; ++k) s += y[k] * ((r + double(k)) * c.a[n - k] + c.b[n - k]);
        res[n] = s;
    }
    return PowerSeries(std::move(res), c.a.center());
}

PowerSeries frobenius_secondary_residual(const OdeCoefficients& c, const FrobeniusSolution& s) {
    const cplx r2 = s.indicial_roots.second;
    auto res = frobenius_residual(c, r2, s.secondary_series);
    if (s.secondary_log_weight == cplx(0.0)) return res;
    // u = log_weight * x^{r1} primary, written against x^{r2}.
    const std::size_t N = res.order();
    std::vector<cplx> u(N + 1, 0.0);
    for (std::size_t n = s.gap; n <= N; ++n) u[n] = s.secondary_log_weight * s.primary[n - s.gap];
    auto out = res.coeffs();
    for (std::size_t n = 0; n <= N; ++n) {
        cplx extra = (2.0 * (r2 + double(n)) - 1.0) * u[n];
        for (std::size_t k = 0; k <= n; ++k) extra += c.a[n - k] * u[k];
        out[n] += extra;
    }
    return PowerSeries(std::move(out), c.a.center());
}

namespace {

// Jets: truncated Taylor series in s = r - r_ref, stored as short PowerSeries.
PowerSeries jet(std::initializer_list<cplx> c, std::size_t J) {
    std::vector<cplx> v(c);
    v.resize(J + 1, 0.0);
    return PowerSeries(std::move(v));
}

std::pair<cplx, cplx> ordered_roots(const OdeCoefficients& c) {
    // r^2 + (a0 - 1) r + b0 = 0, cancellation-free form.
    const cplx B = c.a[0] - 1.0, C = c.b[0];
    const cplx sq = std::sqrt(B * B - 4.0 * C);
    const cplx q = -0.5 * (std::real(std::conj(B) * sq) >= 0.0 ? B + sq : B - sq);
    cplx r1, r2;
    if (q == cplx(0.0)) {
        r1 = r2 = 0.0;
    } else {
        r1 = q;
        r2 = C / q;
    }
    if (r2.real() > r1.real() || (r2.real() == r1.real() && r2.imag() > r1.imag())) std::swap(r1, r2);
    return {r1, r2};
}

} // namespace

FrobeniusSolution solve_frobenius(const OdeCoefficients& c, std::size_t N) {
    if (c.a.order() < N || c.b.order() < N)
        throw DomainError("Frobenius: coefficient series shorter than the requested order");
    auto [r1, r2] = ordered_roots(c);
    FrobeniusSolution sol;

    const cplx d = r1 - r2;
    const double nearest = std::round(d.real());
    const bool integral = std::abs(d - cplx(nearest, 0.0)) < 1e-9;
    if (integral && nearest == 0.0) {
        sol.kind = FrobeniusCase::double_root;
        r1 = r2 = 0.5 * (r1 + r2);
    } else if (integral) {
        sol.kind = FrobeniusCase::integer_gap;
        sol.gap = int(nearest);
        const cplx mid = 0.5 * (r1 + r2);
        r1 = mid + 0.5 * nearest;
        r2 = mid - 0.5 * nearest;
    }
    sol.indicial_roots = {r1, r2};
    for (cplx r : {r1, r2})
        if (std::abs(indicial_polynomial(c, r)) > 1e-10 * std::max(1.0, std::norm(r)))
            throw Error("indicial root residual too large");

    sol.primary = frobenius_series_at(c, r1, N);
    const auto a = c.a, b = c.b;

    switch (sol.kind) {
    case FrobeniusCase::generic:
        sol.secondary_series = frobenius_series_at(c, r2, N);
        break;

    case FrobeniusCase::double_root: {
        // y_n(r) as jets at r1; the secondary coefficients are dy_n/dr.
        std::vector<PowerSeries> y{jet({1.0}, 1)};
        std::vector<cplx> sec(N + 1, 0.0);
        for (std::size_t n = 1; n <= N; ++n) {
            PowerSeries num = jet({0.0}, 1);
            for (std::size_t k = 0; k < n; ++k)
                num = num - y[k] * jet({(r1 + double(k)) * a[n - k] + b[n - k], a[n - k]}, 1);
            const PowerSeries F = jet({double(n) * double(n), 2.0 * double(n)}, 1);
            y.push_back(num * series_inverse(F));
            sec[n] = y[n][1];
        }
        sol.secondary_series = PowerSeries(std::move(sec), c.a.center());
        sol.secondary_log_weight = 1.0;
        break;
    }

    case FrobeniusCase::integer_gap: {
        // Y_n(s) = (r - r2) y_n(r) as degree-2 jets at r2. At n = gap the
        // indicial factor carries an exact s, which cancels against the
        // common s in the numerator.
        const int g = sol.gap;
        std::vector<PowerSeries> Y{jet({0.0, 1.0}, 2)};
        std::vector<cplx> lim(N + 1, 0.0), sec(N + 1, 0.0);
        sec[0] = 1.0;
        for (std::size_t n = 1; n <= N; ++n) {
            PowerSeries num = jet({0.0}, 2);
            for (std::size_t k = 0; k < n; ++k)
                num = num - Y[k] * jet({(r2 + double(k)) * a[n - k] + b[n - k], a[n - k]}, 2);
            const double nn = double(n), ng = double(n) - g;
            if (int(n) == g) {
                const double scale = std::max(1.0, std::abs(num[1]));
                if (std::abs(num[0]) > 1e-9 * scale)
                    throw Error("Frobenius integer-gap numerator does not vanish at r2");
                const PowerSeries reduced = jet({num[1], num[2]}, 2);
                Y.push_back(reduced * series_inverse(jet({nn, 1.0}, 2)));
            } else {
                Y.push_back(num * series_inverse(jet({ng * nn, ng + nn, 1.0}, 2)));
            }
            lim[n] = int(n) >= g ? Y[n][0] : cplx(0.0);
            sec[n] = Y[n][1];
        }
        sol.secondary_log_weight = lim[g];
        sol.secondary_series = PowerSeries(std::move(sec), c.a.center());
        sol.gap_limit = PowerSeries(std::move(lim), c.a.center());
        break;
    }
    }
    return sol;
}

PowerSeries wronskian(const PowerSeries& y1, const PowerSeries& y2) {
    return y1 * series_derivative(y2) - series_derivative(y1) * y2;
}

PowerSeries second_solution_by_reduction(const PowerSeries& y1, const PowerSeries& a, std::size_t N) {
    if (y1[0] == cplx(0.0)) throw DomainError("reduction of order: y1 has zero constant term");
    if (y1.order() < N || a.order() < N) throw DomainError("reduction of order: inputs too short");
    const auto y = y1.truncated(N);
    const auto E = series_exp(series_scale(series_antiderivative(a.truncated(N)), -1.0).truncated(N));
    const auto Q = E * series_inverse(y * y);
    return (y * series_antiderivative(Q)).truncated(N);
}

PowerSeries particular_solution(const PowerSeries& y1, const PowerSeries& y2, const PowerSeries& f,
                                std::size_t N) {
    if (y1.order() < N || y2.order() < N || f.order() + 1 < N)
        throw DomainError("particular_solution: inputs too short");
    const auto W = wronskian(y1.truncated(N), y2.truncated(N));
    if (std::abs(W[0]) < 1e-14 * std::max(1.0, W.max_abs_coeff()))
        throw DomainError("particular_solution: Wronskian vanishes at the center (dependent solutions)");
    const auto Winv = series_inverse(W);
    const auto ff = f.truncated(std::min(f.order(), N - 1));
    const auto C1 = series_antiderivative(series_scale(ff * y2 * Winv, -1.0));
    const auto C2 = series_antiderivative(ff * y1 * Winv);
    return (C1 * y1.truncated(N) + C2 * y2.truncated(N)).truncated(std::min(C1.order(), N));
}

} // namespace calckit
