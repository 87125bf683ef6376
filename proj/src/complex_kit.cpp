#include "calckit/complex_kit.hpp"

#include "calckit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace calckit {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

// (1/2 pi) int_{-pi}^{pi} f(z0 + r e^{it}) (r e^{it})^{-n} dt
cplx circle_coefficient(const ComplexFn& f, cplx z0, double r, int n, const QuadratureRule& rule) {
    auto g = [&](double t) {
        const cplx u = std::polar(r, t);
        return f(z0 + u) * std::pow(u, -n);
    };
    return integrate(g, -pi, pi, rule).value / (2.0 * pi);
}

double max_on_circle(const ComplexFn& f, cplx z0, double r, int points) {
    double m = 0.0;
    for (int k = 0; k < points; ++k) m = std::max(m, std::abs(f(z0 + std::polar(r, 2.0 * pi * k / points))));
    return m;
}

} // namespace

cplx LaurentExpansion::coefficient(int n) const {
    if (n >= 0) return std::size_t(n) < nonnegative.size() ? nonnegative[std::size_t(n)] : 0.0;
    const std::size_t k = std::size_t(-n - 1);
    return k < negative.size() ? negative[k] : 0.0;
}

cplx LaurentExpansion::operator()(cplx z) const {
    const cplx u = z - center;
    cplx s = 0.0;
    for (auto it = nonnegative.rbegin(); it != nonnegative.rend(); ++it) s = s * u + *it;
    if (!negative.empty()) {
        const cplx v = 1.0 / u;
        cplx t = 0.0;
        for (auto it = negative.rbegin(); it != negative.rend(); ++it) t = t * v + *it;
        s += t * v;
    }
    return s;
}

LaurentExpansion laurent_coefficients(const ComplexFn& f, cplx center, double r, int M, int N,
                                      const QuadratureRule& rule,
                                      std::optional<std::pair<double, double>> annulus) {
    if (!(r > 0.0)) throw DomainError("Laurent circle radius must be positive");
    if (M < 0 || N < 0) throw DomainError("Laurent orders must be nonnegative");
    LaurentExpansion e;
    e.center = center;
    if (annulus) {
        if (!(annulus->first < annulus->second) || r <= annulus->first || r >= annulus->second)
            throw DomainError("Laurent annulus must satisfy R1 < r < R2");
        e.annulus = *annulus;
    } else {
        e.annulus = {r, r};
    }
    for (int n = 1; n <= M; ++n) e.negative.push_back(circle_coefficient(f, center, r, -n, rule));
    for (int n = 0; n <= N; ++n) e.nonnegative.push_back(circle_coefficient(f, center, r, n, rule));
    return e;
}

cplx residue_at_pole(const ComplexFn& f, cplx z0, int m, std::optional<double> radius,
                     const QuadratureRule& rule) {
    if (m < 1) throw DomainError("pole order must be at least 1");
    const double rho = radius ? *radius : std::max(0.1, 0.1 * std::abs(z0));
    if (!(rho > 0.0)) throw DomainError("residue circle radius must be positive");
    const cplx r1 = circle_coefficient(f, z0, rho, -1, rule);
    const cplx r2 = circle_coefficient(f, z0, 0.5 * rho, -1, rule);
    if (std::abs(r1 - r2) > 1e-8 * std::max(1.0, std::abs(r1))) {
        std::ostringstream os;
        os << "residue differs between radii " << rho << " and " << 0.5 * rho
           << "; another singularity lies inside the circle or the pole order is misdeclared";
        throw InconclusiveError(os.str());
    }
    // A pole of order <= m has A_{-k} = 0 for k > m.
    const double scale = max_on_circle(f, z0, 0.5 * rho, 32);
    for (int k = m + 1; k <= m + 8; ++k) {
        const cplx extra = circle_coefficient(f, z0, 0.5 * rho, -k, rule);
        if (std::abs(extra) * std::pow(0.5 * rho, -k) > 1e-6 * scale)
            throw InconclusiveError("pole order exceeds the declared m = " + std::to_string(m));
    }
    return r2;
}

cplx cauchy_derivative(const ComplexFn& f, cplx z, double radius, int k, int points) {
    if (k < 0 || points < k + 2 || !(radius > 0.0)) throw DomainError("invalid Cauchy derivative request");
    cplx s = 0.0;
    for (int j = 0; j < points; ++j) {
        const cplx w = std::polar(1.0, 2.0 * pi * j / points);
        s += f(z + radius * w) * std::pow(w, -k);
    }
    return s * std::tgamma(k + 1.0) / (double(points) * std::pow(radius, k));
}

void RationalFunction::validate() const {
    const int l = poly_degree(numerator), s = poly_degree(denominator);
    if (s < 0) throw DomainError("rational function denominator is zero");
    if (l >= 0 && s < l + 2) throw DomainError("denominator degree must exceed numerator degree by at least 2");
    for (const auto& p : poles()) {
        const double n = std::round(p.value.real());
        if (std::abs(p.value - cplx(n, 0.0)) < 1e-9)
            throw DomainError("pole on the integer lattice at n = " + std::to_string(long(n)));
    }
}

cplx RationalFunction::operator()(cplx z) const {
    std::vector<cplx> P(numerator.begin(), numerator.end()), Q(denominator.begin(), denominator.end());
    return poly_eval(P, z) / poly_eval(Q, z);
}

std::vector<Root> RationalFunction::poles() const { return poly_roots_clustered(denominator); }

double lorentzian_printed_closed_form(double w, double x) {
    return -pi / w * (std::exp(-x * w) / (1.0 - std::exp(-2.0 * pi * w)) + std::exp(x * w) / std::expm1(2.0 * pi * w));
}

ResidueSumReport rational_exp_sum(const RationalFunction& R, double x, long direct_terms,
                                  const QuadratureRule& rule) {
    R.validate();
    if (x < 0.0 || x > 2.0 * pi) throw DomainError("x must lie in [0, 2 pi]");
    if (direct_terms < 1) throw DomainError("direct sum needs at least one term");

    auto kernel = [&](cplx z) {
        const cplx e = std::exp(I * z * x);
        // 1/(e^{2 pi i z} - 1), written to avoid overflow in the lower half plane.
        cplx q;
        if (z.imag() >= 0.0)
            q = 1.0 / (std::exp(2.0 * pi * I * z) - 1.0);
        else {
            const cplx t = std::exp(-2.0 * pi * I * z);
            q = t / (1.0 - t);
        }
        return R(z) * 2.0 * pi * I * e * q;
    };

    const auto poles = R.poles();
    ResidueSumReport rep;
    cplx res = 0.0;
    for (std::size_t i = 0; i < poles.size(); ++i) {
        const cplx p = poles[i].value;
        double d = std::abs(p - std::round(p.real()));
        for (std::size_t j = 0; j < poles.size(); ++j)
            if (j != i) d = std::min(d, std::abs(p - poles[j].value));
        res += residue_at_pole(kernel, p, poles[i].multiplicity, 0.5 * d, rule);
    }
    rep.residue_form = -res;

    auto Rr = [&](double t) { return poly_eval(R.numerator, t) / poly_eval(R.denominator, t); };
    cplx s = 0.0;
    for (long n = direct_terms; n >= 1; --n) {
        const double dn = double(n);
        s += Rr(dn) * std::polar(1.0, dn * x) + Rr(-dn) * std::polar(1.0, -dn * x);
    }
    s += Rr(0.0);
    rep.direct_terms = direct_terms;

    const double start = double(direct_terms) + 0.5;
    const bool lattice_zero = std::abs(std::sin(0.5 * x)) < 1e-15;
    if (lattice_zero) {
        // Midpoint rule: sum_{n > N} g(n) = int_{N+1/2}^inf g + O(g'').
        rep.tail = integrate_to_infinity([&](double t) -> cplx { return Rr(t) + Rr(-t); }, start, rule).value.real();
        s += rep.tail;
        rep.tail_added = true;
    } else {
        rep.tail = integrate_to_infinity([&](double t) -> cplx { return std::abs(Rr(t)) + std::abs(Rr(-t)); },
                                         start - 0.5, rule)
                       .value.real();
    }
    rep.direct_sum = s;
    rep.discrepancy = std::abs(rep.residue_form - rep.direct_sum);
    return rep;
}

cplx abel_plana_like_sum(const ComplexFn& G, double x, const QuadratureRule& rule) {
    const cplx first = integrate_to_infinity(
                           [&](double s) { return G(s) * std::polar(1.0, 2.0 * pi * s * x); }, 0.0, rule)
                           .value;
    auto h = [&](double y) -> cplx {
        if (y == 0.0) return 0.0;
        const double den = std::expm1(2.0 * pi * y);
        if (!std::isfinite(den)) return 0.0;
        return (G(cplx(0.0, y)) * std::exp(-2.0 * pi * x * y) - G(cplx(0.0, -y)) * std::exp(2.0 * pi * x * y)) / den;
    };
    const cplx second = integrate_to_infinity(h, 0.0, rule).value;
    return 0.5 * G(0.0) + first + I * second;
}

cplx direct_lattice_sum(const ComplexFn& G, double x, long N) {
    cplx s = 0.0;
    for (long n = N; n >= 0; --n) s += G(double(n)) * std::polar(1.0, 2.0 * pi * double(n) * x);
    return s;
}

PowerSeries inverse_function_series(const PowerSeries& f, std::size_t N) {
    if (N < 1) throw DomainError("inverse series needs order >= 1");
    if (f.order() < N) throw DomainError("input series order is below the requested order");
    if (std::abs(f[1]) == 0.0) throw DomainError("f'(z0) = 0: the series is not invertible");
    // q(t) = (f(z0 + t) - f(z0)) / t, phi = 1/q; b_n = [t^{n-1}] phi^n / n.
    std::vector<cplx> qc(f.coeffs().begin() + 1, f.coeffs().begin() + long(N) + 1);
    const PowerSeries phi = series_inverse(PowerSeries(qc));
    std::vector<cplx> g(N + 1, 0.0);
    g[0] = f.center();
    PowerSeries pw = PowerSeries::constant(1.0, N - 1);
    for (std::size_t n = 1; n <= N; ++n) {
        pw = pw * phi;
        g[n] = pw[n - 1] / double(n);
    }
    return PowerSeries(std::move(g), f[0]);
}

std::vector<cplx> burmann_lagrange(const PowerSeries& f, const PowerSeries& w, std::size_t N) {
    if (f.center() != w.center()) throw DomainError("f and w must share a center");
    if (f.order() < N || w.order() < N) throw DomainError("input series order is below the requested order");
    if (std::abs(w[0]) > 1e-14) throw DomainError("w must vanish at the center");
    if (N >= 1 && std::abs(w[1]) == 0.0) throw DomainError("w'(z0) = 0: Burmann expansion undefined");
    std::vector<cplx> d(N + 1, 0.0);
    d[0] = f[0];
    if (N == 0) return d;
    // d_n = [t^{n-1}] f'(t) phi(t)^n / n with phi = t / w(t).
    std::vector<cplx> wc(w.coeffs().begin() + 1, w.coeffs().begin() + long(N) + 1);
    const PowerSeries phi = series_inverse(PowerSeries(wc));
    const PowerSeries df = series_derivative(f).truncated(N - 1);
    PowerSeries pw = PowerSeries::constant(1.0, N - 1);
    for (std::size_t n = 1; n <= N; ++n) {
        pw = pw * phi;
        d[n] = (df * pw)[n - 1] / double(n);
    }
    return d;
}

PowerSeries burmann_reconstruct(const std::vector<cplx>& d, const PowerSeries& w) {
    const std::size_t N = w.order();
    PowerSeries acc = PowerSeries::constant(0.0, N, w.center());
    PowerSeries pw = PowerSeries::constant(1.0, N, w.center());
    for (std::size_t n = 0; n < d.size(); ++n) {
        acc = acc + d[n] * pw;
        pw = pw * w;
    }
    return acc;
}

long count_zeros(const ComplexFn& f, const ContourPath& path, const QuadratureRule& rule, const ComplexFn& df) {
    const auto pts = path.sample(128);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    double xmin = pts[0].real(), xmax = xmin, ymin = pts[0].imag(), ymax = ymin;
    for (const auto& z : pts) {
        const double a = std::abs(f(z));
        lo = std::min(lo, a);
        hi = std::max(hi, a);
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
    }
    if (!(hi > 0.0) || lo < 1e-12 * hi)
        throw InconclusiveError("f nearly vanishes on the contour; zero count is unreliable");
    const double rho = 1e-3 * std::max({xmax - xmin, ymax - ymin, 1e-6});
    auto dlog = [&](cplx z) {
        const cplx d = df ? df(z) : cauchy_derivative(f, z, rho);
        return d / f(z);
    };
    cplx v;
    try {
        v = integrate_contour(dlog, path, rule).value;
    } catch (const ToleranceError& e) {
        v = e.best_estimate;
    }
    v /= 2.0 * pi * I;
    if (path.orientation() == Orientation::negative) v = -v;
    const double n = std::round(v.real());
    if (std::abs(v - cplx(n, 0.0)) > 0.1) {
        std::ostringstream os;
        os << "logarithmic integral " << v.real() << " + " << v.imag() << "i is not near an integer";
        throw InconclusiveError(os.str());
    }
    return long(n);
}

} // namespace calckit
