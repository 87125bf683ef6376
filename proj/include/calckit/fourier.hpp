#pragma once

#include "calckit/quadrature.hpp"

#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace calckit {

// f ~ a0/2 + sum_{n>=1} a_n cos(n w x) + b_n sin(n w x), w = 2 pi / T.
struct FourierCoeffs {
    double period = 2.0 * std::numbers::pi;
    double a0 = 0.0;
    std::vector<double> a;  // a[n-1] holds a_n
    std::vector<double> b;

    std::size_t order() const { return a.size(); }
    double an(std::size_t n) const { return n == 0 ? a0 : a.at(n - 1); }
    double bn(std::size_t n) const { return n == 0 ? 0.0 : b.at(n - 1); }
    // c_n for |n| <= N: c_n = (a_n - i b_n)/2, c_{-n} = (a_n + i b_n)/2, c_0 = a0/2.
    cplx c(int n) const;
    // c_{-N}, ..., c_N
    std::vector<cplx> complex_view() const;
    // Inverse of complex_view for a real function; c holds c_{-N}..c_N.
    // order_override pads with zero harmonics.
    static FourierCoeffs from_complex(const std::vector<cplx>& c, double period = 2.0 * std::numbers::pi,
                                      std::size_t order_override = 0);
    void validate() const;
};

enum class Smoothness { C1, piecewise_C1, continuous_only };

struct JumpPoint {
    double location;   // inside [-T/2, T/2)
    double magnitude;  // f(a+) - f(a-)
};

struct SampledFunction {
    std::function<double(double)> evaluator;  // on [-T/2, T/2]
    std::vector<JumpPoint> jumps;
    Smoothness smoothness = Smoothness::C1;
    double period = 2.0 * std::numbers::pi;

    void validate() const;
    // Periodic extension.
    double operator()(double x) const;
};

enum class KernelKind { dirichlet, fejer };

struct TrigKernel {
    unsigned order = 0;
    KernelKind kind = KernelKind::fejer;
    double operator()(double x) const;
};

FourierCoeffs fourier_coefficients(const SampledFunction& f, std::size_t N,
                                   const QuadratureRule& rule = {});

// c_{-N}..c_N of a complex-valued periodic function (period 2 pi).
std::vector<cplx> complex_fourier_coefficients(const std::function<cplx(double)>& f, std::size_t N,
                                               const QuadratureRule& rule = {},
                                               const std::vector<double>& breakpoints = {});

double partial_sum(const FourierCoeffs& c, std::size_t N, double x);
double dirichlet_form(const SampledFunction& f, std::size_t N, double x,
                      const QuadratureRule& rule = {});

// Weights (N - n)/N on harmonics 1..N-1, a0 unweighted.
double cesaro_sum(const FourierCoeffs& c, std::size_t N, double x);
double fejer_form(const SampledFunction& f, std::size_t N, double x,
                  const QuadratureRule& rule = {});

// Integral over one period of (f - S_N)^2.
double l2_error(const SampledFunction& f, const FourierCoeffs& c, std::size_t N,
                const QuadratureRule& rule = {});
// (1/T) int |f|^2 - sum |c_n|^2; nonnegative up to quadrature error.
double bessel_gap(const SampledFunction& f, const FourierCoeffs& c, const QuadratureRule& rule = {});

// Right-hand side of the jump relation for the classical derivative of a
// piecewise-C1 function: C_n[E'] from the coefficients of E and its jumps.
cplx jump_relation_rhs(const SampledFunction& E, int n, const QuadratureRule& rule = {});

std::vector<double> fejer_recover(const FourierCoeffs& c, const std::vector<double>& grid);

struct ChebyshevApprox {
    std::vector<double> cheb;      // f ~ cheb[0]/2 + sum cheb[n] T_n
    std::vector<double> monomial;  // B_0..B_N
    double operator()(double x) const;  // Clenshaw on the Chebyshev form
    double eval_monomial(double x) const;
};

ChebyshevApprox chebyshev_approx(const std::function<double(double)>& f, std::size_t N,
                                 const QuadratureRule& rule = {});
// Monomial coefficients of T_n from the even-l binomial expansion.
std::vector<double> chebyshev_monomial(unsigned n);

// ---- Weierstrass function  sum b^n cos(a^n pi x) ----

struct WeierstrassParams {
    long a = 9;
    double b = 0.9;
    void validate() const;
    // Smallest M with b^M < 1e-14.
    int default_terms() const;
};

// x = num / den exactly.
struct ExactRational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    static ExactRational from_double(double x);
    static ExactRational parse_decimal(const std::string& s);
    double value() const { return double(num) / double(den); }
};

double weierstrass_eval(const WeierstrassParams& p, ExactRational x, int terms);
double weierstrass_eval(const WeierstrassParams& p, double x, int terms);

struct WeierstrassProbe {
    int m = 0;
    std::int64_t alpha = 0;  // nearest integer to a^m x, half-open convention
    double xi = 0.0;         // a^m x - alpha in [-1/2, 1/2)
    double h = 0.0;
    double quotient = 0.0;   // |f(x+h) - f(x)| / h
    double bound = 0.0;      // (2/3 - pi/(ab - 1)) (ab)^m
};

WeierstrassProbe weierstrass_quotient_probe(const WeierstrassParams& p, ExactRational x, int m);

// ---- RLC circuit R I + L I' + (1/C) int_0^t I = E ----

struct CircuitParams {
    double R = 1.0;
    double L = 0.0;
    double C = 1.0;  // +inf removes the capacitor
    FourierCoeffs source;
    void validate() const;
};

struct RlcSolution {
    FourierCoeffs current;
    double max_residual = 0.0;               // harmonic balance, relative to the source
    double mean_compatibility_residual = 0.0;  // E0/2 - (1/C) sum b_n / n
};

RlcSolution rlc_solve(const CircuitParams& p, std::size_t N);

// ---- Wiener-algebra kernel equation  sum_m g_nm f_m = h_n ----

struct KernelSystem {
    int N = 0;                          // indices -N..N
    std::vector<std::vector<cplx>> g;   // g[n+N][m+N]
    std::vector<cplx> h;                // h[n+N]
    void validate() const;
    // sup_m sum_n |delta_nm - g_nm|
    double contraction_norm() const;
};

struct KernelSolution {
    std::vector<cplx> f;
    int iterations = 0;
    double last_step = 0.0;
    double reconstruction_residual = 0.0;  // sup_n |sum_m g_nm f_m - h_n|
};

KernelSolution kernel_equation_solve(const KernelSystem& sys, int max_iter, double tol);

} // namespace calckit
