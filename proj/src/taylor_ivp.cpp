#include "calckit/taylor_ivp.hpp"

#include "calckit/errors.hpp"

#include <cmath>

namespace calckit {

void TaylorIvp::validate() const {
    if (dimension < 1) throw DomainError("TaylorIvp dimension must be positive");
    if (int(rhs.size()) != dimension || int(initial_state.size()) != dimension)
        throw DomainError("TaylorIvp rhs and initial state must match the dimension");
    for (const auto& F : rhs)
        for (const auto& m : F)
            if (int(m.powers.size()) > dimension + 1)
                throw DomainError("TaylorIvp monomial has more exponents than variables");
}

std::vector<double> TaylorIvp::eval(double x, const std::vector<double>& y) const {
    std::vector<double> out(dimension, 0.0);
    for (int i = 0; i < dimension; ++i)
        for (const auto& m : rhs[i]) {
            double t = m.coef;
            for (std::size_t v = 0; v < m.powers.size(); ++v)
                t *= std::pow(v == 0 ? x : y[v - 1], double(m.powers[v]));
            out[i] += t;
        }
    return out;
}

std::vector<PowerSeries> taylor_ivp_series(const TaylorIvp& ivp, std::size_t N) {
    ivp.validate();
    const int d = ivp.dimension;
    std::vector<std::vector<cplx>> y(d, std::vector<cplx>(N + 1, 0.0));
    for (int i = 0; i < d; ++i) y[i][0] = ivp.initial_state[i];

    // x = x0 + t
    std::vector<cplx> xs(N + 1, 0.0);
    xs[0] = ivp.initial_point;
    if (N >= 1) xs[1] = 1.0;

    for (std::size_t k = 0; k < N; ++k) {
        // Only coefficients 0..k of each y are known; F_i is exact through order k.
        std::vector<PowerSeries> vars;
        vars.emplace_back(std::vector<cplx>(xs.begin(), xs.begin() + k + 1));
        for (int i = 0; i < d; ++i)
            vars.emplace_back(std::vector<cplx>(y[i].begin(), y[i].begin() + k + 1));
        for (int i = 0; i < d; ++i) {
            PowerSeries F = PowerSeries::constant(0.0, k);
            for (const auto& m : ivp.rhs[i]) {
                PowerSeries term = PowerSeries::constant(m.coef, k);
                for (std::size_t v = 0; v < m.powers.size(); ++v)
                    if (m.powers[v]) term = term * series_pow(vars[v], m.powers[v]);
                F = F + term;
            }
            y[i][k + 1] = F[k] / double(k + 1);
        }
    }
    std::vector<PowerSeries> out;
    for (int i = 0; i < d; ++i) out.emplace_back(y[i], ivp.initial_point);
    return out;
}

} // namespace calckit
