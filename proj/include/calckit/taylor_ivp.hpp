#pragma once

#include "calckit/power_series.hpp"

#include <vector>

namespace calckit {

// coef * x^powers[0] * y_1^powers[1] * ... * y_N^powers[N]
struct Monomial {
    double coef = 0.0;
    std::vector<unsigned> powers;
};

using MultiPolynomial = std::vector<Monomial>;

// y_i' = F_i(x, y_1, ..., y_N), y(x0) = initial_state. Polynomial right-hand
// sides only; transcendental drives must be truncated by the caller.
struct TaylorIvp {
    int dimension = 0;
    std::vector<MultiPolynomial> rhs;
    double initial_point = 0.0;
    std::vector<double> initial_state;

    void validate() const;
    // Evaluates the right-hand side at a point (for step integrators).
    std::vector<double> eval(double x, const std::vector<double>& y) const;
};

// Series in (x - x0), one per component.
std::vector<PowerSeries> taylor_ivp_series(const TaylorIvp& ivp, std::size_t order);

} // namespace calckit
