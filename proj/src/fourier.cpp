#include "calckit/fourier.hpp"

#include "calckit/errors.hpp"
#include "calckit/rational.hpp"

#include <algorithm>
#include <cmath>

namespace calckit {

namespace {

constexpr double pi = std::numbers::pi;

double wrap_2pi(double t) {
    t = std::fmod(t, 2.0 * pi);
    return t < 0.0 ? t + 2.0 * pi : t;
}

// Maps x to the representative in [-pi, pi).
double wrap_pm_pi(double t) {
    t = wrap_2pi(t + pi);
    return t - pi;
}

std::vector<double> jump_angles(const SampledFunction& f) {
    std::vector<double> out;
    for (const auto& j : f.jumps) out.push_back(2.0 * pi * j.location / f.period);
    return out;
}

// f pulled back to period 2 pi.
double pulled(const SampledFunction& f, double theta) { return f(theta * f.period / (2.0 * pi)); }

// Breakpoints t in (0, pi) at which x + t or x - t meets a discontinuity or the seam.
std::vector<double> folded_breaks(const std::vector<double>& marks, double x) {
    std::vector<double> out;
    for (double p : marks) {
        for (double t : {wrap_2pi(p - x), wrap_2pi(x - p)})
            if (t > 1e-14 && t < pi - 1e-14) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> marks_with_seam(const SampledFunction& f) {
    auto m = jump_angles(f);
    m.push_back(pi);
    return m;
}

void check_order(const FourierCoeffs& c, std::size_t N) {
    if (N > c.order())
        throw DomainError("requested order " + std::to_string(N) + " exceeds stored order " +
                          std::to_string(c.order()));
}

// a0/2 + sum_{n=1}^{N} w(n) (a_n cos n t + b_n sin n t)
template <class W>
double weighted_sum(const FourierCoeffs& c, std::size_t N, double x, W weight) {
    const double t = 2.0 * pi * x / c.period;
    const cplx step = std::polar(1.0, t);
    cplx z = 1.0;
    double s = 0.5 * c.a0;
    for (std::size_t n = 1; n <= N; ++n) {
        // Re-anchor periodically so the running product does not drift.
        z = (n % 64 == 0) ? std::polar(1.0, double(n) * t) : z * step;
        s += weight(n) * (c.a[n - 1] * z.real() + c.b[n - 1] * z.imag());
    }
    return s;
}

} // namespace

cplx FourierCoeffs::c(int n) const {
    const std::size_t k = std::size_t(std::abs(n));
    if (k > order()) return 0.0;
    if (k == 0) return 0.5 * a0;
    return n > 0 ? cplx(0.5 * a[k - 1], -0.5 * b[k - 1]) : cplx(0.5 * a[k - 1], 0.5 * b[k - 1]);
}

std::vector<cplx> FourierCoeffs::complex_view() const {
    const int N = int(order());
    std::vector<cplx> out;
    for (int n = -N; n <= N; ++n) out.push_back(c(n));
    return out;
}

FourierCoeffs FourierCoeffs::from_complex(const std::vector<cplx>& c, double period,
                                          std::size_t order_override) {
    if (c.size() % 2 == 0) throw DomainError("complex coefficient list must have odd length");
    const std::size_t N = c.size() / 2;
    FourierCoeffs f;
    f.period = period;
    const std::size_t M = std::max(N, order_override);
    f.a.assign(M, 0.0);
    f.b.assign(M, 0.0);
    f.a0 = 2.0 * c[N].real();
    for (std::size_t n = 1; n <= N; ++n) {
        const cplx cp = c[N + n], cm = c[N - n];
        f.a[n - 1] = (cp + cm).real();
        f.b[n - 1] = (cm - cp).imag();
    }
    f.validate();
    return f;
}

void FourierCoeffs::validate() const {
    if (!(period > 0.0) || !std::isfinite(period)) throw DomainError("Fourier period must be positive");
    if (a.size() != b.size()) throw DomainError("cosine and sine coefficient lists differ in length");
}

void SampledFunction::validate() const {
    if (!evaluator) throw DomainError("SampledFunction has no evaluator");
    if (!(period > 0.0) || !std::isfinite(period)) throw DomainError("SampledFunction period must be positive");
    for (std::size_t i = 0; i < jumps.size(); ++i) {
        const double a = jumps[i].location;
        if (a < -0.5 * period || a >= 0.5 * period)
            throw DomainError("jump point outside [-T/2, T/2)");
        if (i > 0 && !(jumps[i - 1].location < a)) throw DomainError("jump points must be sorted");
    }
}

double SampledFunction::operator()(double x) const {
    const double h = 0.5 * period;
    if (x < -h || x > h) {
        x = std::fmod(x + h, period);
        if (x < 0.0) x += period;
        x -= h;
    }
    return evaluator(x);
}

double TrigKernel::operator()(double x) const {
    const double s = std::sin(0.5 * x);
    const double n = double(order);
    if (kind == KernelKind::dirichlet) {
        if (std::abs(s) < 1e-12) return 2.0 * n + 1.0;
        return std::sin((n + 0.5) * x) / s;
    }
    if (std::abs(s) < 1e-12) return n + 1.0;
    const double r = std::sin(0.5 * (n + 1.0) * x) / s;
    return r * r / (n + 1.0);
}

std::vector<cplx> complex_fourier_coefficients(const std::function<cplx(double)>& f, std::size_t N,
                                               const QuadratureRule& rule,
                                               const std::vector<double>& breakpoints) {
    std::vector<cplx> out(2 * N + 1);
    for (int n = -int(N); n <= int(N); ++n) {
        auto g = [&](double t) { return f(t) * std::polar(1.0, -double(n) * t); };
        out[std::size_t(n + int(N))] = integrate(g, -pi, pi, rule, breakpoints).value / (2.0 * pi);
    }
    return out;
}

FourierCoeffs fourier_coefficients(const SampledFunction& f, std::size_t N, const QuadratureRule& rule) {
    f.validate();
    rule.validate();
    const auto breaks = jump_angles(f);
    FourierCoeffs c;
    c.period = f.period;
    c.a.resize(N);
    c.b.resize(N);
    for (std::size_t n = 0; n <= N; ++n) {
        auto g = [&](double t) -> cplx { return pulled(f, t) * std::polar(1.0, double(n) * t); };
        const cplx v = integrate(g, -pi, pi, rule, breaks).value / pi;
        if (n == 0)
            c.a0 = v.real();
        else {
            c.a[n - 1] = v.real();
            c.b[n - 1] = v.imag();
        }
    }
    return c;
}

double partial_sum(const FourierCoeffs& c, std::size_t N, double x) {
    check_order(c, N);
    return weighted_sum(c, N, x, [](std::size_t) { return 1.0; });
}

double dirichlet_form(const SampledFunction& f, std::size_t N, double x, const QuadratureRule& rule) {
    f.validate();
    const double th = wrap_pm_pi(2.0 * pi * x / f.period);
    const TrigKernel D{unsigned(N), KernelKind::dirichlet};
    auto g = [&](double t) -> cplx { return D(t) * (pulled(f, th + t) + pulled(f, th - t)); };
    return integrate(g, 0.0, pi, rule, folded_breaks(marks_with_seam(f), th)).value.real() / (2.0 * pi);
}

double cesaro_sum(const FourierCoeffs& c, std::size_t N, double x) {
    if (N == 0) throw DomainError("Cesaro sum needs N >= 1");
    check_order(c, N);
    const double dN = double(N);
    return weighted_sum(c, N - 1, x, [dN](std::size_t n) { return (dN - double(n)) / dN; });
}

double fejer_form(const SampledFunction& f, std::size_t N, double x, const QuadratureRule& rule) {
    if (N == 0) throw DomainError("Fejer form needs N >= 1");
    f.validate();
    const double th = wrap_pm_pi(2.0 * pi * x / f.period);
    const TrigKernel K{unsigned(N - 1), KernelKind::fejer};
    auto g = [&](double t) -> cplx { return K(t) * (pulled(f, th + t) + pulled(f, th - t)); };
    return integrate(g, 0.0, pi, rule, folded_breaks(marks_with_seam(f), th)).value.real() / (2.0 * pi);
}

double l2_error(const SampledFunction& f, const FourierCoeffs& c, std::size_t N, const QuadratureRule& rule) {
    f.validate();
    check_order(c, N);
    const double h = 0.5 * f.period;
    std::vector<double> breaks;
    for (const auto& j : f.jumps) breaks.push_back(j.location);
    auto g = [&](double x) -> cplx {
        const double d = f(x) - partial_sum(c, N, x);
        return d * d;
    };
    return integrate(g, -h, h, rule, breaks).value.real();
}

double bessel_gap(const SampledFunction& f, const FourierCoeffs& c, const QuadratureRule& rule) {
    f.validate();
    const double h = 0.5 * f.period;
    std::vector<double> breaks;
    for (const auto& j : f.jumps) breaks.push_back(j.location);
    auto g = [&](double x) -> cplx {
        const double v = f(x);
        return v * v;
    };
    const double mean_sq = integrate(g, -h, h, rule, breaks).value.real() / f.period;
    double s = 0.25 * c.a0 * c.a0;
    for (std::size_t n = 0; n < c.order(); ++n) s += 0.5 * (c.a[n] * c.a[n] + c.b[n] * c.b[n]);
    return mean_sq - s;
}

cplx jump_relation_rhs(const SampledFunction& E, int n, const QuadratureRule& rule) {
    E.validate();
    if (std::abs(E.period - 2.0 * pi) > 1e-12) throw DomainError("jump relation is stated for period 2 pi");
    // Work on [0, 2 pi); jumps at 0 are carried by the boundary term.
    std::vector<double> inner;
    std::vector<std::pair<double, double>> jumps;
    for (const auto& j : E.jumps) {
        const double a = wrap_2pi(j.location);
        if (a > 0.0) {
            inner.push_back(a);
            jumps.emplace_back(a, j.magnitude);
        }
    }
    std::sort(inner.begin(), inner.end());
    auto g = [&](double t) -> cplx { return E(t) * std::polar(1.0, -double(n) * t); };
    const cplx Cn = integrate(g, 0.0, 2.0 * pi, rule, inner).value / (2.0 * pi);

    // One-sided limits at the seam, approached from inside (0, 2 pi).
    const double eps = 1e-11;
    cplx s = (E(2.0 * pi - eps) - E(eps)) / (2.0 * pi);
    for (const auto& [a, m] : jumps) s -= m * std::polar(1.0, -double(n) * a) / (2.0 * pi);
    return s + cplx(0.0, double(n)) * Cn;
}

std::vector<double> fejer_recover(const FourierCoeffs& c, const std::vector<double>& grid) {
    std::vector<double> out;
    out.reserve(grid.size());
    for (double x : grid) out.push_back(c.order() == 0 ? 0.5 * c.a0 : cesaro_sum(c, c.order(), x));
    return out;
}

std::vector<double> chebyshev_monomial(unsigned n) {
    // T_n(x) = sum_{l even} C(n, l) x^{n-l} (x^2 - 1)^{l/2}
    std::vector<BigInt> coef(n + 1, BigInt(0));
    for (unsigned l = 0; l <= n; l += 2) {
        const unsigned k = l / 2;
        const BigInt c = binomial(n, l);
        for (unsigned j = 0; j <= k; ++j) {
            const BigInt t = c * binomial(k, j);
            const unsigned deg = n - l + 2 * j;
            if ((k - j) % 2)
                coef[deg] -= t;
            else
                coef[deg] += t;
        }
    }
    std::vector<double> out;
    for (const auto& c : coef) out.push_back(c.convert_to<double>());
    return out;
}

double ChebyshevApprox::operator()(double x) const {
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = cheb.size(); k-- > 1;) {
        const double b0 = 2.0 * x * b1 - b2 + cheb[k];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + 0.5 * cheb[0];
}

double ChebyshevApprox::eval_monomial(double x) const {
    double s = 0.0;
    for (auto it = monomial.rbegin(); it != monomial.rend(); ++it) s = s * x + *it;
    return s;
}

ChebyshevApprox chebyshev_approx(const std::function<double(double)>& f, std::size_t N,
                                 const QuadratureRule& rule) {
    if (!f) throw DomainError("chebyshev_approx needs a function");
    ChebyshevApprox out;
    out.cheb.resize(N + 1);
    out.monomial.assign(N + 1, 0.0);
    for (std::size_t n = 0; n <= N; ++n) {
        auto g = [&](double th) -> cplx { return f(std::cos(th)) * std::cos(double(n) * th); };
        out.cheb[n] = 2.0 / pi * integrate(g, 0.0, pi, rule, {0.5 * pi}).value.real();
        const auto T = chebyshev_monomial(unsigned(n));
        const double w = n == 0 ? 0.5 * out.cheb[0] : out.cheb[n];
        for (std::size_t k = 0; k < T.size(); ++k) out.monomial[k] += w * T[k];
    }
    return out;
}

} // namespace calckit
