#include "calckit/quadrature.hpp"

#include "calckit/errors.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace calckit {

void QuadratureRule::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw DomainError("QuadratureRule tolerances must be positive");
    if (max_refinements < 1) throw DomainError("QuadratureRule max_refinements must be >= 1");
}

QuadratureRule QuadratureRule::with_tol(double abs, double rel) const {
    QuadratureRule r = *this;
    r.abs_tol = abs;
    r.rel_tol = rel;
    return r;
}

namespace {

struct GaussNodes {
    std::vector<double> x, w;
    GaussNodes() {
        using G = boost::math::quadrature::gauss<double, 10>;
        const auto& ab = G::abscissa();
        const auto& wt = G::weights();
        for (std::size_t i = 0; i < ab.size(); ++i) {
            x.push_back(ab[i]);
            w.push_back(wt[i]);
            if (ab[i] != 0.0) {
                x.push_back(-ab[i]);
                w.push_back(wt[i]);
            }
        }
    }
};

const GaussNodes& nodes() {
    static const GaussNodes g;
    return g;
}

cplx gauss_panel(const ComplexFn1& f, double a, double b, long& evals, double* l1 = nullptr) {
    const auto& g = nodes();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx s = 0.0;
    double m = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        const cplx v = g.w[i] * f(c + h * g.x[i]);
        s += v;
        m += std::abs(v);
    }
    if (l1) *l1 = std::abs(h) * m;
    evals += long(g.x.size());
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
        throw DomainError("integrand is not finite on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
    return h * s;
}

struct Panel {
    double a, b;
    cplx value;  // sum of the two half-panel rules
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

// Differences at the rounding level of the panel's absolute integral count as zero error.
Panel make_panel(const ComplexFn1& f, double a, double b, cplx whole, long& evals) {
    const double m = 0.5 * (a + b);
    double l1 = 0.0, l2 = 0.0;
    const cplx v = gauss_panel(f, a, m, evals, &l1) + gauss_panel(f, m, b, evals, &l2);
    double err = std::abs(v - whole);
    if (err <= 64.0 * std::numeric_limits<double>::epsilon() * (l1 + l2)) err = 0.0;
    return {a, b, v, err};
}

std::vector<double> cut_points(double a, double b, const std::vector<double>& breaks) {
    std::vector<double> pts{a};
    std::vector<double> inner;
    for (double x : breaks)
        if (x > a && x < b) inner.push_back(x);
    std::sort(inner.begin(), inner.end());
    for (double x : inner)
        if (x - pts.back() > 1e-15 * (1.0 + std::abs(x))) pts.push_back(x);
    pts.push_back(b);
    return pts;
}

QuadResult fixed_rule(const ComplexFn1& f, double a, double b, const QuadratureRule& rule,
                      const std::vector<double>& breaks) {
    QuadResult out;
    const auto pts = cut_points(a, b, breaks);
    cplx coarse = 0.0, fine = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const int n = rule.max_refinements;
        const double h = (pts[k + 1] - pts[k]) / n;
        for (int j = 0; j < n; ++j) {
            const double lo = pts[k] + j * h, hi = lo + h;
            coarse += gauss_panel(f, lo, hi, out.evaluations);
            fine += gauss_panel(f, lo, 0.5 * (lo + hi), out.evaluations) +
                    gauss_panel(f, 0.5 * (lo + hi), hi, out.evaluations);
        }
    }
    out.value = fine;
    out.error = std::abs(fine - coarse);
    return out;
}

} // namespace

QuadResult integrate(const ComplexFn1& f, double a, double b, const QuadratureRule& rule,
                     const std::vector<double>& breakpoints) {
    rule.validate();
    if (a == b) return {};
    if (b < a) {
        auto r = integrate(f, b, a, rule, breakpoints);
        r.value = -r.value;
        return r;
    }
    if (rule.kind == QuadKind::fixed_node_count) return fixed_rule(f, a, b, rule, breakpoints);

    QuadResult out;
    std::priority_queue<Panel> heap;
    const auto pts = cut_points(a, b, breakpoints);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const cplx whole = gauss_panel(f, pts[k], pts[k + 1], out.evaluations);
        heap.push(make_panel(f, pts[k], pts[k + 1], whole, out.evaluations));
    }

    auto totals = [&heap]() {
        auto copy = heap;
        cplx v = 0.0;
        double e = 0.0;
        while (!copy.empty()) {
            v += copy.top().value;
            e += copy.top().err;
            copy.pop();
        }
        return std::pair{v, e};
    };

    // Running sums are refreshed from the heap periodically to keep rounding drift out.
    auto [value, error] = totals();
    int splits = 0;
    const double min_width = 64 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
    while (error > std::max(rule.abs_tol, rule.rel_tol * std::abs(value))) {
        if (splits >= rule.max_refinements) {
            std::ostringstream os;
            os << "quadrature budget exhausted on [" << a << ", " << b << "], error estimate "
               << error;
            throw ToleranceError(os.str(), value, error);
        }
        Panel p = heap.top();
        if (p.b - p.a <= min_width) break;
        heap.pop();
        const double m = 0.5 * (p.a + p.b);
        const cplx wl = gauss_panel(f, p.a, m, out.evaluations);
        const cplx wr = gauss_panel(f, m, p.b, out.evaluations);
        Panel l = make_panel(f, p.a, m, wl, out.evaluations);
        Panel r = make_panel(f, m, p.b, wr, out.evaluations);
        value += l.value + r.value - p.value;
        error += l.err + r.err - p.err;
        heap.push(l);
        heap.push(r);
        if (++splits % 64 == 0) std::tie(value, error) = totals();
    }
    std::tie(value, error) = totals();
    out.value = value;
    out.error = error;
    return out;
}

double integrate_real(const RealFn1& f, double a, double b, const QuadratureRule& rule,
                      const std::vector<double>& breakpoints) {
    return integrate([&f](double x) { return cplx(f(x), 0.0); }, a, b, rule, breakpoints)
        .value.real();
}

QuadResult integrate_endpoint_singular(const EndpointFn& f, double a, double b,
                                       const QuadratureRule& rule) {
    rule.validate();
    if (!(b > a)) throw DomainError("integrate_endpoint_singular needs a < b");
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    QuadResult out;
    auto g = [&](double u, double uc) -> cplx {
        ++out.evaluations;
        double da, db;
        if (u < 0) {
            da = -h * uc;
            db = h * (1.0 - u);
        } else {
            da = h * (1.0 + u);
            db = h * uc;
        }
        return f(c + h * u, da, db);
    };
    boost::math::quadrature::tanh_sinh<double> ts(15);
    double err = 0.0, L1 = 0.0;
    const cplx v = ts.integrate(g, rule.rel_tol, &err, &L1);
    out.value = h * v;
    out.error = h * err * std::max(1.0, L1);
    if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
        throw DomainError("endpoint-singular integrand produced a non-finite value");
    const double target = std::max(rule.abs_tol, rule.rel_tol * h * L1);
    if (out.error > 1e3 * target)
        throw ToleranceError("double-exponential rule did not reach tolerance", out.value,
                             out.error);
    return out;
}

QuadResult integrate_endpoint_singular(const ComplexFn1& f, double a, double b,
                                       const QuadratureRule& rule) {
    return integrate_endpoint_singular([&f](double x, double, double) { return f(x); }, a, b,
                                       rule);
}

QuadResult integrate_to_infinity(const ComplexFn1& f, double a, const QuadratureRule& rule) {
    rule.validate();
    boost::math::quadrature::exp_sinh<double> es(9);
    QuadResult out;
    double err = 0.0, L1 = 0.0;
    auto g = [&](double x) {
        ++out.evaluations;
        return f(x);
    };
    out.value = es.integrate(g, a, std::numeric_limits<double>::infinity(), rule.rel_tol, &err, &L1);
    out.error = err * std::max(1.0, L1);
    const double target = std::max(rule.abs_tol, rule.rel_tol * L1);
    if (!std::isfinite(std::abs(out.value)) || out.error > 1e3 * target)
        throw ToleranceError("semi-infinite quadrature did not reach tolerance", out.value,
                             out.error);
    return out;
}

} // namespace calckit
