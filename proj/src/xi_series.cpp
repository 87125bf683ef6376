#include "calckit/complex_kit.hpp"
#include "calckit/errors.hpp"
#include "calckit/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace calckit {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();

// log of 8 (p^4 pi^2 e^{2u} - 3/2 p^2 pi) e^{5u/2} e^{-p^2 pi e^{2u}} u^{2n}/(2n)!
// (the x = e^{2u} form of the a_{2n} integrand, one p at a time)
double log_term(int n, int p, double u) {
    const double e2u = std::exp(2.0 * u);
    const double p2 = double(p) * double(p);
    const double poly = p2 * p2 * pi * pi * e2u - 1.5 * p2 * pi;
    double l = std::log(8.0 * poly) + 2.5 * u - p2 * pi * e2u;
    if (n > 0) {
        if (u <= 0.0) return -std::numeric_limits<double>::infinity();
        l += 2.0 * n * std::log(u) - std::lgamma(2.0 * n + 1.0);
    }
    return l;
}

double integrand(int n, int P, double u) {
    double s = 0.0;
    for (int p = P; p >= 1; --p) s += std::exp(log_term(n, p, u));
    return s;
}

// Relative size of the p-th term against p = 1; largest at u = 0.
double p_ratio(int p) {
    const double p2 = double(p) * double(p);
    return (p2 * p2 * pi - 1.5) / (pi - 1.5) * p2 * std::exp(-(p2 - 1.0) * pi);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

} // namespace

cplx XiSeries::operator()(cplx s) const {
    const cplx w = (s - 0.5) * (s - 0.5);
    cplx acc = 0.0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * w + *it;
    return acc;
}

bool XiSeries::all_positive() const {
    return std::all_of(a.begin(), a.end(), [](double v) { return v > 0.0; });
}

XiSeries xi_coefficients(int n_max, const XiQuadParams& quad) {
    if (n_max < 0) throw DomainError("n_max must be nonnegative");
    if (quad.p_max < 1) throw DomainError("p_max must be positive");
    quad.rule.validate();
    XiSeries out;
    out.quad = quad;

    int P = 1;
    while (p_ratio(P + 1) > 0.1 * quad.tail_tol) {
        ++P;
        if (P > quad.p_max)
            throw DomainError("p_max = " + std::to_string(quad.p_max) + " leaves a p-tail above tolerance");
    }
    out.p_used = P;
    const double p_tail = 2.0 * p_ratio(P + 1);

    for (int n = 0; n <= n_max; ++n) {
        // Peak of the p = 1 term, then walk right until it has fallen by e^{-45}.
        double peak_u = 0.0, peak = log_term(n, 1, 0.0);
        for (double u = 0.005; u < 4.0; u += 0.005) {
            const double l = log_term(n, 1, u);
            if (l > peak) {
                peak = l;
                peak_u = u;
            }
        }
        double U;
        if (quad.x_max) {
            if (!(*quad.x_max > 1.0)) throw DomainError("x_max must exceed 1");
            U = 0.5 * std::log(*quad.x_max);
        } else {
            U = peak_u;
            while (log_term(n, 1, U) > peak - 45.0) U += 0.01;
        }
        const double h = 1e-6;
        const double slope = (log_term(n, 1, U + h) - log_term(n, 1, U - h)) / (2.0 * h);
        const double fU = integrand(n, P, U);
        const double u_tail = slope < 0.0 ? fU / -slope : std::numeric_limits<double>::infinity();

        std::vector<double> breaks;
        if (peak_u > 0.0 && peak_u < U) breaks.push_back(peak_u);
        QuadResult r = integrate([&](double u) -> cplx { return integrand(n, P, u); }, 0.0, U, quad.rule, breaks);
        const double a = r.value.real();
        if (u_tail > quad.tail_tol * a)
            throw DomainError("x_max = " + fmt(std::exp(2.0 * U)) + " leaves an x-tail of " + fmt(u_tail) +
                              " for a_" + std::to_string(2 * n));
        out.a.push_back(a);
        out.tail_bounds.push_back(u_tail + p_tail * a + r.error);
        out.x_max_used.push_back(std::exp(2.0 * U));
    }
    return out;
}

double bhat_value(const XiSeries& xi, int m, double b, double* tail_bound, int* used) {
    if (m < 0 || std::size_t(m) > xi.n_max()) throw DomainError("m exceeds the stored coefficients");
    const int N = int(xi.n_max());
    if (b == 0.0) {
        if (tail_bound) *tail_bound = xi.tail_bounds[std::size_t(m)];
        if (used) *used = 1;
        return xi.a[std::size_t(m)];
    }
    const double lb = 2.0 * std::log(std::abs(b));
    double s = 0.0, abs_sum = 0.0, quad_err = 0.0, last = 0.0, prev = 0.0;
    for (int n = N; n >= m; --n) {
        const double lc = std::lgamma(2.0 * n + 1.0) - std::lgamma(2.0 * m + 1.0) - std::lgamma(2.0 * (n - m) + 1.0);
        const double w = std::exp(lc + (n - m) * lb);
        const double t = xi.a[std::size_t(n)] * w;
        s += ((n - m) % 2) ? -t : t;
        abs_sum += std::abs(t);
        quad_err += xi.tail_bounds[std::size_t(n)] * w;
        if (n == N) last = std::abs(t);
        if (n == N - 1) prev = std::abs(t);
    }
    double trunc = 0.0;
    if (N > m) {
        auto insufficient = [&] {
            // a_{2n+2}/a_{2n} behaves like K/n^2; ask for q <= 1/4 at the end.
            const double K = xi.a[std::size_t(N)] / xi.a[std::size_t(N - 1)] * double(N) * double(N);
            const double need = std::abs(b) * std::sqrt(K * 16.0) + double(m) + 5.0;
            return DomainError("n_max = " + std::to_string(N) + " is insufficient for b = " + fmt(b) + "; about n_max = " +
                               std::to_string(int(std::ceil(need))) + " is required");
        };
        const double q = last / prev;
        if (!(q < 0.5) && last > 1e-17 * abs_sum) throw insufficient();
        trunc = last * q / (1.0 - q);
        // A truncation bound larger than the value leaves even the sign open.
        if (trunc > std::abs(s)) throw insufficient();
    }
    if (tail_bound) *tail_bound = trunc + quad_err + 4.0 * eps * double(N - m + 1) * abs_sum;
    if (used) *used = N - m + 1;
    return s;
}

BhatTable bhat_table(const XiSeries& xi, const std::vector<double>& b_grid, int m_max) {
    if (m_max < 1) throw DomainError("m_max must be at least 1");
    if (std::size_t(m_max) > xi.n_max() + 1) throw DomainError("m_max exceeds the stored coefficients");
    BhatTable t;
    t.b_grid = b_grid;
    t.m_max = m_max;
    t.values.assign(std::size_t(m_max), std::vector<double>(b_grid.size()));
    t.truncation_error_bound = t.values;
    t.terms_used.assign(std::size_t(m_max), std::vector<int>(b_grid.size()));
    for (int m = 0; m < m_max; ++m)
        for (std::size_t j = 0; j < b_grid.size(); ++j)
            t.values[std::size_t(m)][j] = bhat_value(xi, m, b_grid[j], &t.truncation_error_bound[std::size_t(m)][j],
                                                     &t.terms_used[std::size_t(m)][j]);
    return t;
}

ScanReport positivity_scan(const BhatTable& table) {
    ScanReport rep;
    for (int m = 0; m < table.m_max; ++m) {
        ScanRow row;
        row.m = m;
        std::vector<char> flags;
        for (std::size_t j = 0; j < table.b_grid.size(); ++j) {
            const double v = table.values[std::size_t(m)][j], e = table.truncation_error_bound[std::size_t(m)][j];
            const char f = v - e > 0.0 ? '+' : (v + e < 0.0 ? '-' : '?');
            flags.push_back(f);
            if (f != '+' && !row.first_sign_loss) row.first_sign_loss = table.b_grid[j];
        }
        rep.rows.push_back(row);
        rep.flags.push_back(std::move(flags));
    }
    return rep;
}

ZeroScan critical_line_zero_scan(double t_min, double t_max, double step) {
    if (!(step > 0.0) || !(t_max >= t_min)) throw DomainError("zero scan needs step > 0 and t_max >= t_min");
    ZeroScan out;
    out.coarse_step = step > 0.5;
    auto f = [](double t) { return xi(cplx(0.5, t)).real(); };
    const long n = long(std::floor((t_max - t_min) / step + 1e-9));
    double t0 = t_min, f0 = f(t0);
    for (long k = 1; k <= n + 1; ++k) {
        const double t1 = std::min(t_min + double(k) * step, t_max);
        if (t1 <= t0) break;
        const double f1 = f(t1);
        if (f0 == 0.0 || (f0 < 0.0) != (f1 < 0.0)) {
            double lo = t0, hi = t1, flo = f0;
            while (hi - lo > 1e-6) {
                const double mid = 0.5 * (lo + hi), fm = f(mid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            ZeroBracket z{lo, hi, -1};
            const double c = 0.5 * (lo + hi);
            try {
                z.contour_count = count_zeros([](cplx s) { return xi(s); },
                                              ContourPath::rectangle(cplx(0.3, c - 0.25), cplx(0.7, c + 0.25)));
            } catch (const Error&) {
                z.contour_count = -1;
            }
            out.zeros.push_back(z);
        }
        t0 = t1;
        f0 = f1;
    }
    return out;
}

} // namespace calckit
