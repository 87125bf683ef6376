#pragma once

#include "calckit/power_series.hpp"

#include <optional>
#include <string>
#include <utility>

namespace calckit {

// Coefficients of y'' + a y' + b y = 0 (ordinary point) or of
// x^2 y'' + x a y' + b y = 0 (regular singular point), depending on the solver.
struct OdeCoefficients {
    OdeCoefficients(PowerSeries a, PowerSeries b, std::optional<double> radius = std::nullopt);

    PowerSeries a;
    PowerSeries b;
    // Common radius; defaults to the smaller decided ratio estimate, else +inf.
    double radius;
};

PowerSeries solve_analytic_ode(const OdeCoefficients& c, cplx y0, cplx y0_prime, std::size_t order);

// y'' + a y' + b y as a series (order drops by two).
PowerSeries analytic_ode_residual(const OdeCoefficients& c, const PowerSeries& y);

enum class FrobeniusCase { generic, double_root, integer_gap };
std::string to_string(FrobeniusCase c);

// Solutions are x^{r1} * primary(x) and
// secondary_log_weight * ln(x) * x^{r1} * primary(x) + x^{r2} * secondary_series(x).
struct FrobeniusSolution {
    std::pair<cplx, cplx> indicial_roots;
    FrobeniusCase kind = FrobeniusCase::generic;
    PowerSeries primary;
    PowerSeries secondary_series;
    cplx secondary_log_weight = 0.0;
    int gap = 0;
    // Integer gap only: lim_{r->r2} (r - r2) y(x, r), as coefficients of x^{r2 + n}.
    // Equals secondary_log_weight * x^{gap} * primary.
    std::optional<PowerSeries> gap_limit;
};

FrobeniusSolution solve_frobenius(const OdeCoefficients& c, std::size_t order);

// Indicial polynomial r(r-1) + a0 r + b0.
cplx indicial_polynomial(const OdeCoefficients& c, cplx r);

// Coefficients y_n(r) of x^r sum y_n x^n with y_0 = 1 at a fixed exponent r.
PowerSeries frobenius_series_at(const OdeCoefficients& c, cplx r, std::size_t order);

// Coefficients of x^{-r} (x^2 y'' + x a y' + b y) for y = x^r sum y_n x^n.
PowerSeries frobenius_residual(const OdeCoefficients& c, cplx r, const PowerSeries& y);

// Same for the logarithmic second solution of a FrobeniusSolution, as
// coefficients of x^{-r2}.
PowerSeries frobenius_secondary_residual(const OdeCoefficients& c, const FrobeniusSolution& s);

PowerSeries second_solution_by_reduction(const PowerSeries& y1, const PowerSeries& a,
                                         std::size_t order);

PowerSeries particular_solution(const PowerSeries& y1, const PowerSeries& y2,
                                const PowerSeries& f, std::size_t order);

// y1 y2' - y1' y2
PowerSeries wronskian(const PowerSeries& y1, const PowerSeries& y2);

} // namespace calckit
