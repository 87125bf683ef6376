// Acceptance driver: one PASS/FAIL line per criterion, with wall time against its budget.

#include "calckit/complex_kit.hpp"
#include "calckit/conformal.hpp"
#include "calckit/errors.hpp"
#include "calckit/fourier.hpp"
#include "calckit/ode_series.hpp"
#include "calckit/polynomial.hpp"
#include "calckit/special_functions.hpp"
#include "calckit/zeta.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace calckit;

namespace {

constexpr std::uint64_t seed = 0x5eed2024;
constexpr double pi = std::numbers::pi;

// Collects failed checks with a short description.
struct Checker {
    std::vector<std::string> failures;
    void operator()(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    template <class T>
    void below(T value, T limit, const std::string& what) {
        if (!(value < limit)) {
            std::ostringstream os;
            os << what << " = " << value << " (limit " << limit << ")";
            failures.push_back(os.str());
        }
    }
};

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<void(Checker&)> body;
};

PowerSeries real_series(std::vector<double> c, std::size_t N) {
    c.resize(N + 1, 0.0);
    return PowerSeries::from_real(c);
}

double max_abs(const PowerSeries& s) {
    double m = 0.0;
    for (std::size_t n = 0; n <= s.order(); ++n) m = std::max(m, std::abs(s[n]));
    return m;
}

SampledFunction smooth(std::function<double(double)> f) {
    SampledFunction s;
    s.evaluator = std::move(f);
    return s;
}

std::vector<double> from_roots(const std::vector<cplx>& roots) {
    std::vector<cplx> p{1.0};
    for (const auto& r : roots) {
        std::vector<cplx> q(p.size() + 1, 0.0);
        for (std::size_t k = 0; k < p.size(); ++k) {
            q[k + 1] += p[k];
            q[k] -= r * p[k];
        }
        p = q;
    }
    std::vector<double> out;
    for (const auto& z : p) out.push_back(z.real());
    return out;
}

cplx functional_rhs(cplx z) {
    return std::pow(2.0, z) * std::pow(pi, z - 1.0) * std::sin(pi * z / 2.0) * calckit::gamma(1.0 - z) * zeta(1.0 - z);
}

std::vector<cplx> zeta_sample() {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-2.0, 3.0), im(-10.0, 10.0);
    std::vector<cplx> out;
    while (out.size() < 50) {
        const cplx z(re(rng), im(rng));
        if (std::abs(z - 1.0) < 0.1 || std::abs(z) < 0.1) continue;
        out.push_back(z);
    }
    return out;
}

void frobenius_golden(Checker& check) {
    const std::size_t N = 12;
    const OdeCoefficients c(real_series({-3}, N), real_series({0, 0, 1}, N));
    const auto s = solve_frobenius(c, N);
    check(s.kind == FrobeniusCase::integer_gap, "integer-gap case");
    check.below(std::abs(s.indicial_roots.first - 4.0), 1e-12, "|r1 - 4|");
    check.below(std::abs(s.indicial_roots.second), 1e-12, "|r2 - 0|");
    if (!s.gap_limit) return check(false, "gap limit missing");
    check.below(std::abs((*s.gap_limit)[4] + 1.0 / 16.0), 1e-12, "|y1[x^4] + 1/16|");
    check.below(std::abs((*s.gap_limit)[6] - 1.0 / 192.0), 1e-12, "|y1[x^6] - 1/192|");
}

void poisson_fourier(Checker& check) {
    const double a = 0.5;
    const auto c = fourier_coefficients(
        smooth([a](double t) { return a * std::sin(t) / (1.0 - 2.0 * a * std::cos(t) + a * a); }), 12);
    for (std::size_t n = 1; n <= 12; ++n) {
        check.below(std::abs(c.bn(n) - std::pow(a, double(n))), 1e-10, "|b_" + std::to_string(n) + " - a^n|");
        check.below(std::abs(c.an(n)), 1e-10, "|a_" + std::to_string(n) + "|");
    }
}

void residue_summation(Checker& check) {
    const RationalFunction lor{{1.0}, {1.0, 0.0, 1.0}};
    const auto r0 = rational_exp_sum(lor, 0.0, 1000000);
    check.below(std::abs(r0.residue_form - r0.direct_sum), 1e-8, "x = 0 residue vs direct");
    check.below(std::abs(r0.residue_form.real() - pi / std::tanh(pi)), 1e-8, "x = 0 vs pi coth pi");
    const auto r7 = rational_exp_sum(lor, 0.7, 1000000);
    check.below(std::abs(r7.residue_form - r7.direct_sum), 1e-5, "x = 0.7 residue vs direct");
    for (const auto& [x, r] : {std::pair{0.0, r0}, std::pair{0.7, r7}}) {
        const double printed = lorentzian_printed_closed_form(1.0, x);
        check(std::abs(printed + r.residue_form.real()) < 1e-10 && std::abs(printed - r.residue_form.real()) > 1e-3,
              "printed closed form sign discrepancy detected");
    }
}

void fejer_parseval(Checker& check) {
    for (unsigned n : {0u, 1u, 5u, 16u, 100u}) {
        const TrigKernel K{n, KernelKind::fejer};
        for (int k = 0; k <= 2000; ++k) check(K(-pi + 2.0 * pi * k / 2000.0) >= 0.0, "K_n >= 0");
        QuadratureRule rule;
        rule.abs_tol = 1e-14;
        const double I = integrate_real([&](double x) { return K(x); }, -pi, pi, rule, {0.0}) / (2.0 * pi);
        check.below(std::abs(I - 1.0), 1e-10, "|normalized int K_" + std::to_string(n) + " - 1|");
    }
    SampledFunction absx;
    absx.evaluator = [](double t) { return std::abs(t); };
    absx.jumps = {{0.0, 0.0}};
    absx.smoothness = Smoothness::continuous_only;
    const auto ca = fourier_coefficients(absx, 256);
    const double e16 = std::abs(cesaro_sum(ca, 16, 0.0)), e256 = std::abs(cesaro_sum(ca, 256, 0.0));
    check.below(e256, 0.05, "|x| Fejer error at 0, N = 256");
    check(e256 < e16, "|x| Fejer error decreases from N = 16 to 256");

    SampledFunction sq;
    sq.evaluator = [](double t) { return t < 0.0 ? -1.0 : 1.0; };
    sq.jumps = {{-pi, -2.0}, {0.0, 2.0}};
    sq.smoothness = Smoothness::piecewise_C1;
    const auto cs = fourier_coefficients(sq, 256);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t N = 4; N <= 256; N *= 2) {
        const double e = l2_error(sq, cs, N);
        check(e < prev, "square wave L2 error decreases at N = " + std::to_string(N));
        prev = e;
    }
}

void weierstrass(Checker& check) {
    const WeierstrassParams w{9, 0.9};
    const auto x = ExactRational::parse_decimal("0.3");
    for (int m = 1; m <= 6; ++m) {
        const auto p = weierstrass_quotient_probe(w, x, m);
        check(p.quotient > p.bound, "quotient exceeds bound at m = " + std::to_string(m));
    }
}

void conformal_suite(Checker& check) {
    const std::vector<cplx> square{{1, -1}, {1, 1}, {-1, 1}, {-1, -1}};
    const auto P = PolygonSpec::from_vertices(square, {0.0, pi / 2, pi, 1.5 * pi});
    check.below(std::abs(P.gauss_sum() + 2.0), 1e-12, "|Gauss sum + 2|");
    const auto s = solve_prevertices(square, P.prevertices, 0, std::numeric_limits<double>::infinity());
    const auto W = cisotti_vertex_images(s.map);
    double ratio = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        const double l = std::abs(W[(k + 1) % 4] - W[k]), l0 = std::abs(W[1] - W[0]);
        ratio = std::max(ratio, std::abs(l / l0 - 1.0));
    }
    check.below(ratio, 1e-5, "square side-ratio error");
    const double diag = std::abs(W[2] - W[0]) / (std::abs(W[1] - W[0]) * std::sqrt(2.0));
    check.below(std::abs(diag - 1.0), 1e-5, "square diagonal ratio error");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double h = 1e-5;
    double worst = 0.0;
    for (int j = 0; j < 20; ++j) {
        const double r = 0.9 * std::sqrt(u(rng)), t = 2.0 * pi * u(rng);
        const cplx z = std::polar(r, t);
        const cplx fd = (cisotti_eval(s.map, z + h) - cisotti_eval(s.map, z - h)) / (2.0 * h);
        worst = std::max(worst, std::abs(cisotti_derivative(s.map, r, t) - fd));
    }
    check.below(worst, 1e-6, "closed-form vs numerical derivative");

    const cplx centroid = P.vertex_centroid();
    const long wind = count_zeros([&](cplx z) { return cisotti_eval(s.map, z) - centroid; },
                                  ContourPath::circle(0.0, 1.0 - 1e-3), {},
                                  [&](cplx z) { return s.map.scale * s.map.unit_derivative(z); });
    check(wind == 1, "winding number about the centroid is " + std::to_string(wind));

    const auto rect = solve_prevertices({{0, 0}, {2, 0}, {2, 1}, {0, 1}});
    check.below(rect.ratio_residual, 1e-6, "2:1 rectangle side-ratio residual");
}

void lavrentiev(Checker& check) {
    const double eps = 0.01;
    const BoundaryPerturbation p{eps, {0.5, 0.0, 0.5}};
    double dev = 0.0;
    for (int j = 0; j < 4000; ++j) {
        const cplx w = lavrentiev_map(p, std::polar(1.0, 2.0 * pi * j / 4000));
        dev = std::max(dev, std::abs(std::abs(w) - (1.0 + eps * std::cos(std::arg(w)))));
    }
    check.below(dev, 5e-4, "boundary radial deviation");
}

void zeta_core(Checker& check) {
    check.below(std::abs(zeta(2.0) - pi * pi / 6.0), 1e-10, "|zeta(2) - pi^2/6|");
    double fe = 0.0, sym = 0.0;
    for (const auto& z : zeta_sample()) {
        const cplx lhs = zeta(z);
        fe = std::max(fe, std::abs(lhs - functional_rhs(z)) / std::max(1.0, std::abs(lhs)));
        sym = std::max(sym, std::abs(xi(z) - xi(1.0 - z)) / std::max(1.0, std::abs(xi(z))));
    }
    check.below(fe, 1e-8, "functional equation residual");
    check.below(sym, 1e-9, "xi symmetry residual");
}

void xi_coefficient_experiment(Checker& check) {
    const auto s = xi_coefficients(60);
    for (int n = 0; n <= 20; ++n) check(s.a[std::size_t(n)] > 0.0, "a_" + std::to_string(2 * n) + " > 0");
    check.below(std::abs(s.a[0] - xi(0.5).real()), 1e-8, "|a_0 - xi(1/2)|");
    for (int m = 0; m < 5; ++m) check(bhat_value(s, m, 0.0) == s.a[std::size_t(m)], "Bhat_" + std::to_string(2 * m) + "(0) = a");
    double worst = 0.0;
    for (int k = 0; k <= 100; ++k) {
        const double b = 0.1 * k;
        worst = std::max(worst, std::abs(bhat_value(s, 0, b) - xi(cplx(0.5, b)).real()));
    }
    check.below(worst, 1e-7, "Bhat_0 vs Re xi for b <= 10");
    const auto z = critical_line_zero_scan(10.0, 20.0, 0.1);
    check(!z.zeros.empty() && z.zeros[0].lo >= 14.12 && z.zeros[0].hi <= 14.15, "first zero bracket in [14.12, 14.15]");
}

void property_suites(Checker& check) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0), v(0.0, 1.0);

    for (int trial = 0; trial < 100; ++trial) {
        std::vector<cplx> c(17);
        for (auto& z : c) z = cplx(u(rng), u(rng));
        if (std::abs(c[0]) < 0.1) c[0] += 0.1 * c[0] / std::abs(c[0]);
        const PowerSeries p(c);
        const auto inv = series_inverse(p);
        const auto prod = p * inv;
        const double scale = std::max(1.0, max_abs(inv) * max_abs(p));
        double err = std::abs(prod[0] - 1.0);
        for (std::size_t n = 1; n <= 16; ++n) err = std::max(err, std::abs(prod[n]) / scale);
        check.below(err, 1e-12, "series inverse round trip");
    }

    for (int trial = 0; trial < 20; ++trial) {
        std::vector<cplx> poles, res;
        for (int k = 0; k < 4; ++k) {
            poles.push_back(std::polar(k % 2 ? 1.4 + v(rng) : 0.2 + 0.5 * v(rng), 2.0 * pi * v(rng)));
            res.push_back(cplx(u(rng), u(rng)));
        }
        auto f = [&](cplx z) {
            cplx s = 0.3;
            for (std::size_t k = 0; k < 4; ++k) s += res[k] / (z - poles[k]);
            return s;
        };
        const auto L = laurent_coefficients(f, 0.0, 1.0, 120, 120);
        for (int j = 0; j < 16; ++j) {
            const cplx z = std::polar(1.0, 2.0 * pi * v(rng));
            check.below(std::abs(L(z) - f(z)), 1e-8, "Laurent reconstruction");
        }
    }

    for (int trial = 0; trial < 20; ++trial) {
        std::vector<cplx> roots;
        while (roots.size() < 4) {
            const cplx p(2.0 * u(rng) + 0.5, 2.0 * std::abs(u(rng)) + 0.3);
            bool ok = true;
            for (const auto& q : roots) ok = ok && std::abs(p - q) > 0.4 && std::abs(p - std::conj(q)) > 0.4;
            if (!ok) continue;
            roots.push_back(p);
            roots.push_back(std::conj(p));
        }
        const RationalFunction R{{u(rng), u(rng)}, from_roots(roots)};
        cplx total = 0.0;
        for (const auto& p : R.poles()) {
            double d = std::numeric_limits<double>::infinity();
            for (const auto& q : R.poles())
                if (std::abs(q.value - p.value) > 0.0) d = std::min(d, std::abs(q.value - p.value));
            total += residue_at_pole([&](cplx z) { return R(z); }, p.value, p.multiplicity, 0.5 * d);
        }
        check.below(std::abs(total), 1e-10, "sum of residues");
    }

    int counted = 0;
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<double> p(5 + trial % 3);
        for (auto& c : p) c = 1.5 * u(rng);
        const cplx center(0.45 * u(rng), 0.45 * u(rng));
        const double r = 0.5 + 1.5 * v(rng);
        long inside = 0;
        bool near = false;
        for (const auto& z : poly_roots(p)) {
            const double d = std::abs(z - center);
            near = near || std::abs(d - r) < 0.05;
            inside += d < r;
        }
        if (near) continue;
        ++counted;
        const std::vector<cplx> pc(p.begin(), p.end());
        check(count_zeros([&](cplx z) { return poly_eval(pc, z); }, ContourPath::circle(center, r)) == inside,
              "argument principle vs root finder");
    }
    check(counted >= 25, "enough argument-principle cases");

    for (unsigned l = 0; l <= 6; ++l)
        for (unsigned k = 0; k <= 6; ++k) {
            const auto a = legendre(l), b = legendre(k);
            const double val = integrate_real([&](double x) { return (a(x) * b(x)).real(); }, -1.0, 1.0, {});
            check.below(std::abs(val - (l == k ? 2.0 / (2.0 * l + 1.0) : 0.0)), 1e-10, "Legendre orthogonality");
        }

    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t N = 20;
        std::vector<double> av(N + 1), bv(N + 1);
        for (auto& x : av) x = u(rng);
        for (auto& x : bv) x = u(rng);
        const OdeCoefficients c(PowerSeries::from_real(av), PowerSeries::from_real(bv), 1.0);
        const auto y = solve_analytic_ode(c, u(rng), u(rng), N);
        const auto r = analytic_ode_residual(c, y);
        check.below(max_abs(r), 2e-10 * std::max(1.0, max_abs(y)), "analytic ODE residual");
    }

    for (const auto& z : zeta_sample()) {
        const cplx a = zeta(std::conj(z)), b = std::conj(zeta(z));
        check.below(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(b)), "zeta reflection");
    }
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "Frobenius golden coefficients", 1.0, frobenius_golden},
        {2, "Poisson kernel Fourier coefficients", 1.0, poisson_fourier},
        {3, "residue summation", 10.0, residue_summation},
        {4, "Fejer and Parseval suite", 5.0, fejer_parseval},
        {5, "Weierstrass difference quotients", 1.0, weierstrass},
        {6, "conformal suite", 30.0, conformal_suite},
        {7, "Lavrentiev boundary deviation", 2.0, lavrentiev},
        {8, "zeta core", 5.0, zeta_core},
        {9, "xi coefficient experiment", 60.0, xi_coefficient_experiment},
        {10, "property suites", 300.0, property_suites},
    };
    int failed = 0;
    const auto t_all = std::chrono::steady_clock::now();
    for (const auto& c : criteria) {
        Checker check;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(check);
        } catch (const std::exception& e) {
            check(false, std::string("exception: ") + e.what());
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (dt >= c.budget_s) check(false, "runtime over budget");
        const bool ok = check.failures.empty();
        failed += !ok;
        std::printf("%s  %2d  %-38s %8.3f s (budget %g s)\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(), dt, c.budget_s);
        for (std::size_t k = 0; k < check.failures.size() && k < 5; ++k)
            std::printf("        %s\n", check.failures[k].c_str());
        if (check.failures.size() > 5) std::printf("        ... %zu more\n", check.failures.size() - 5);
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_all).count();
    std::printf("%d of %zu criteria passed in %.3f s\n", int(criteria.size()) - failed, criteria.size(), total);
    return failed == 0 ? 0 : 1;
}
