#include "calckit/double_series.hpp"

#include "calckit/errors.hpp"
#include "calckit/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace calckit {

std::string to_string(SeriesVerdict v) {
    switch (v) {
    case SeriesVerdict::converges: return "converges";
    case SeriesVerdict::diverges: return "diverges";
    default: return "undecided";
    }
}

namespace {

double rect_integral(const std::function<double(double, double)>& f, double x0, double x1,
                     double y0, double y1) {
    QuadratureRule rule;
    rule.abs_tol = 1e-13;
    rule.rel_tol = 1e-10;
    auto inner = [&](double x) {
        return integrate_real([&](double y) { return f(x, y); }, y0, y1, rule);
    };
    return integrate_real(inner, x0, x1, rule);
}

void check_monotone(const DoubleSeriesProbe& p, int limit) {
    const int step = std::max(1, limit / 32);
    for (int n = 0; n < limit; n += step)
        for (int m = 0; m < limit; m += step) {
            const double t = p.term(n, m);
            if (t < 0.0) throw PreconditionError("double series term is negative");
            const double slack = 1e-12 * t;
            if (p.term(n + 1, m) > t + slack || p.term(n, m + 1) > t + slack)
                throw PreconditionError("double series term is not monotone non-increasing");
            const double x = n, y = m;
            const double fx = p.integrand(x + 0.5, y + 0.5);
            if (fx < 0.0) throw PreconditionError("integrand is negative");
            if (p.integrand(x + 1.5, y + 0.5) > fx * (1 + 1e-12) ||
                p.integrand(x + 0.5, y + 1.5) > fx * (1 + 1e-12))
                throw PreconditionError("integrand is not monotone non-increasing");
        }
}

} // namespace

DoubleSeriesReport double_series_integral_test(const DoubleSeriesProbe& probe) {
    if (!probe.term || !probe.integrand) throw DomainError("probe needs term and integrand");
    const int N = probe.truncation;
    if (N < 32) throw DomainError("double series probe truncation must be at least 32");
    check_monotone(probe, N);

    // Table of terms over [0, N]^2.
    std::vector<double> a((N + 1) * (N + 1));
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= N; ++m) a[n * (N + 1) + m] = probe.term(n, m);
    auto box_sum = [&](int lo, int hi) {
        double s = 0.0;
        for (int n = hi; n >= lo; --n)
            for (int m = hi; m >= lo; --m) s += a[n * (N + 1) + m];
        return s;
    };

    DoubleSeriesReport rep;
    for (int K = N / 8; K <= N; K *= 2) rep.levels.push_back(K);

    double integral = 0.0;
    int prev = 0;
    for (int K : rep.levels) {
        // Add the L-shaped shell [0,K]^2 minus [0,prev]^2.
        integral += rect_integral(probe.integrand, prev, K, 0.0, K) +
                    rect_integral(probe.integrand, 0.0, prev, prev, K);
        prev = K;
        const double upper = box_sum(0, K - 1);
        const double lower = box_sum(1, K);
        rep.upper_sums.push_back(upper);
        rep.lower_sums.push_back(lower);
        rep.integrals.push_back(integral);
        const double slack = 1e-8 * std::max(1.0, integral);
        if (lower > integral + slack || integral > upper + slack)
            throw PreconditionError("term and integrand are inconsistent: sandwich bound fails");
    }

    const auto& I = rep.integrals;
    const std::size_t L = I.size();
    const double d0 = I[L - 3 + 1] - I[L - 3];
    const double d1 = I[L - 1] - I[L - 2];
    if (d0 <= 0.0) {
        rep.verdict = d1 <= 0.0 ? SeriesVerdict::converges : SeriesVerdict::undecided;
        return rep;
    }
    const double q = d1 / d0;
    rep.increment_ratio = q;
    if (q <= 0.75)
        rep.verdict = SeriesVerdict::converges;
    else if (q >= 1.0)
        rep.verdict = SeriesVerdict::diverges;
    else
        rep.verdict = SeriesVerdict::undecided;
    return rep;
}

} // namespace calckit
