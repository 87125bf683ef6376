#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace calckit {

using cplx = std::complex<double>;

enum class QuadKind { adaptive_segment, fixed_node_count };

struct QuadratureRule {
    QuadKind kind = QuadKind::adaptive_segment;
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
    // Bisection budget for adaptive rules; panel count for fixed rules.
    int max_refinements = 4000;

    void validate() const;
    QuadratureRule with_tol(double abs, double rel) const;
};

struct QuadResult {
    cplx value;
    double error = 0.0;
    long evaluations = 0;
};

using ComplexFn1 = std::function<cplx(double)>;
using RealFn1 = std::function<double(double)>;

// Composite 10-point Gauss-Legendre panels on [a, b]. Panels never straddle a
// breakpoint; the error estimate is the panel-halving difference. Throws
// ToleranceError carrying the best estimate when the budget runs out.
QuadResult integrate(const ComplexFn1& f, double a, double b, const QuadratureRule& rule,
                     const std::vector<double>& breakpoints = {});
double integrate_real(const RealFn1& f, double a, double b, const QuadratureRule& rule,
                      const std::vector<double>& breakpoints = {});

// Integrand seen as f(x, x - a, b - x), with both distances accurate near
// the endpoints so singular factors can be evaluated without cancellation.
using EndpointFn = std::function<cplx(double, double, double)>;

// Double-exponential rule for integrable endpoint singularities.
QuadResult integrate_endpoint_singular(const EndpointFn& f, double a, double b,
                                       const QuadratureRule& rule);
QuadResult integrate_endpoint_singular(const ComplexFn1& f, double a, double b,
                                       const QuadratureRule& rule);

// Integral over [a, inf) of a decaying integrand.
QuadResult integrate_to_infinity(const ComplexFn1& f, double a, const QuadratureRule& rule);

} // namespace calckit
