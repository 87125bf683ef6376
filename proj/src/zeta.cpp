#include "calckit/errors.hpp"
#include "calckit/zeta.hpp"

#include <boost/math/special_functions/bernoulli.hpp>

#include <cmath>
#include <numbers>

namespace calckit {

namespace {

constexpr double pi = std::numbers::pi;

// Taylor coefficients in t = s - s0 of the alternating series sum (-1)^{m-1} m^{-s},
// first `terms` terms summed directly, the rest by an Euler transform of depth D.
std::vector<cplx> eta_jet(cplx s0, std::size_t order, int terms, int depth) {
    std::vector<cplx> out(order + 1, 0.0);
    auto u = [&](int m, std::vector<cplx>& c) {
        const double lm = std::log(double(m));
        cplx t = std::exp(-s0 * lm);
        for (std::size_t k = 0; k <= order; ++k) {
            c[k] = t;
            t *= -lm / double(k + 1);
        }
    };
    std::vector<cplx> c(order + 1);
    for (int m = terms; m >= 1; --m) {
        u(m, c);
        const double sg = (m % 2) ? 1.0 : -1.0;
        for (std::size_t k = 0; k <= order; ++k) out[k] += sg * c[k];
    }
    // Tail (-1)^terms sum_j (-1)^j v_j with v_j = u_{terms+1+j}.
    std::vector<std::vector<cplx>> d(std::size_t(depth), std::vector<cplx>(order + 1));
    for (int j = 0; j < depth; ++j) u(terms + 1 + j, d[std::size_t(j)]);
    const double sg = (terms % 2) ? -1.0 : 1.0;
    double w = 0.5;
    for (int k = 0; k < depth; ++k) {
        const double sk = (k % 2) ? -w : w;
        for (std::size_t q = 0; q <= order; ++q) out[q] += sg * sk * d[0][q];
        for (int i = 0; i + 1 < depth - k; ++i)
            for (std::size_t q = 0; q <= order; ++q) d[std::size_t(i)][q] = d[std::size_t(i + 1)][q] - d[std::size_t(i)][q];
        w *= 0.5;
    }
    return out;
}

// Euler-Maclaurin pieces: S = sum_{n<N} n^{-s}, R = N^{-s}/2 + corrections, P = N^{1-s}.
struct EmParts {
    cplx S, R, P;
};

EmParts em_parts(cplx s, int N, int K) {
    EmParts e{0.0, 0.0, 0.0};
    for (int n = N - 1; n >= 1; --n) e.S += std::exp(-s * std::log(double(n)));
    const double lN = std::log(double(N));
    const cplx Ns = std::exp(-s * lN);
    e.P = Ns * double(N);
    e.R = 0.5 * Ns;
    cplx poch = s;       // s (s+1) ... (s+2k-2)
    cplx Npow = Ns / double(N);  // N^{-s-2k+1}
    double fact = 2.0;   // (2k)!
    for (int k = 1; k <= K; ++k) {
        e.R += boost::math::bernoulli_b2n<double>(k) / fact * poch * Npow;
        poch *= (s + double(2 * k - 1)) * (s + double(2 * k));
        Npow /= double(N) * double(N);
        fact *= double(2 * k + 1) * double(2 * k + 2);
    }
    return e;
}

const ZetaEvaluator& default_evaluator() {
    static const ZetaEvaluator z;
    return z;
}

} // namespace

void ZetaEvaluator::validate() const {
    if (eta_terms < 1 || acceleration_depth < 0 || derivative_orders < 0)
        throw DomainError("zeta evaluator settings must be positive");
}

cplx zeta_euler_maclaurin(cplx s, int N, int K) {
    if (s == 1.0) throw DomainError("zeta has a pole at s = 1");
    const auto e = em_parts(s, N, K);
    return e.S + e.P / (s - 1.0) + e.R;
}

cplx ZetaEvaluator::eta(cplx s) const {
    if (s.real() <= 0.0) throw DomainError("the alternating series needs Re s > 0");
    return eta_jet(s, 0, eta_terms, acceleration_depth)[0];
}

cplx ZetaEvaluator::zeta(cplx s, ZetaRoute route) const {
    validate();
    if (s == 1.0) throw DomainError("zeta has a pole at s = 1");
    if (route == ZetaRoute::euler_maclaurin) return zeta_euler_maclaurin(s);
    if (s.real() >= 0.5) {
        const cplx den = 1.0 - std::exp((1.0 - s) * std::log(2.0));
        if (std::abs(den) < 0.1) return zeta_euler_maclaurin(s);
        return eta(s) / den;
    }
    if (std::abs(s) < 0.1) return zeta_euler_maclaurin(s);
    // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s) zeta(1 - s)
    const cplx f = std::exp(s * std::log(2.0) + (s - 1.0) * std::log(pi) + log_gamma(1.0 - s));
    return f * std::sin(0.5 * pi * s) * zeta(1.0 - s, route);
}

cplx ZetaEvaluator::zeta_sm1(cplx s) const {
    if (std::abs(s - 1.0) < 0.1) {
        const auto e = em_parts(s, 24, 12);
        return (s - 1.0) * (e.S + e.R) + e.P;
    }
    return (s - 1.0) * zeta(s);
}

PowerSeries ZetaEvaluator::taylor(double x0, std::size_t order) const {
    validate();
    if (!(x0 > 0.0) || x0 == 1.0) throw DomainError("Taylor centre must be real, positive and different from 1");
    if (order > std::size_t(derivative_orders))
        throw DomainError("derivative order above the supported maximum " + std::to_string(derivative_orders));
    const PowerSeries eta_s(eta_jet(x0, order, eta_terms, acceleration_depth), x0);
    // 1 - 2^{1-s} = 1 - 2^{1-x0} e^{-t ln 2}
    std::vector<cplx> den(order + 1);
    const double l2 = std::log(2.0);
    double t = std::pow(2.0, 1.0 - x0);
    for (std::size_t k = 0; k <= order; ++k) {
        den[k] = -t;
        t *= -l2 / double(k + 1);
    }
    den[0] += 1.0;
    return eta_s * series_inverse(PowerSeries(den, x0));
}

cplx zeta(cplx s, ZetaRoute route) { return default_evaluator().zeta(s, route); }

cplx xi(cplx s, ZetaRoute route) {
    if (route == ZetaRoute::automatic && s.real() < 0.5) return xi(1.0 - s, route);
    const cplx pref = std::exp(log_gamma(0.5 * s + 1.0) - 0.5 * s * std::log(pi));
    if (route == ZetaRoute::euler_maclaurin && std::abs(s - 1.0) >= 0.1)
        return pref * (s - 1.0) * zeta_euler_maclaurin(s);
    return pref * default_evaluator().zeta_sm1(s);
}

HorizontalTaylor horizontal_taylor(double x0, double b, int k_max) {
    if (k_max < 1) throw DomainError("horizontal Taylor needs k_max >= 1");
    const std::size_t order = std::size_t(2 * k_max + 1);
    const PowerSeries c = default_evaluator().taylor(x0, order);
    HorizontalTaylor out;
    const auto est = ratio_radius(c);
    out.radius = est.kind == RadiusKind::finite ? est.value : std::abs(1.0 - x0);
    const double ab = std::abs(b);
    if (ab >= out.radius)
        throw DomainError("radius exceeded: |b| = " + std::to_string(ab) + " >= estimated radius " +
                          std::to_string(out.radius));
    double bp = 1.0;
    double last = 0.0, prev = 0.0;
    for (std::size_t j = 0; j <= order; ++j) {
        const double term = c[j].real() * bp;
        const double sg = ((j / 2) % 2) ? -1.0 : 1.0;
        if (j % 2 == 0)
            out.real_sum += sg * term;
        else
            out.imag_sum += sg * term;
        prev = last;
        last = std::abs(term);
        bp *= b;
    }
    const double q = ab / out.radius;
    if (ab > 0.0 && last > prev && last > 1e-14 * (std::abs(out.real_sum) + std::abs(out.imag_sum)))
        throw DomainError("radius exceeded: Taylor terms are still growing at order " + std::to_string(order));
    out.remainder = (last + prev) * q / (1.0 - q);
    return out;
}

} // namespace calckit
