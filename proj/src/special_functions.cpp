#include "calckit/special_functions.hpp"

#include "calckit/errors.hpp"

#include <cmath>
#include <numbers>

namespace calckit {

RationalPoly poly_derivative(const RationalPoly& p, unsigned times) {
    RationalPoly d = p;
    for (unsigned t = 0; t < times; ++t) {
        if (d.size() <= 1) return {Rational(0)};
        RationalPoly nd(d.size() - 1);
        for (std::size_t k = 1; k < d.size(); ++k) nd[k - 1] = d[k] * int(k);
        d = std::move(nd);
    }
    return d;
}

RationalPoly poly_mul(const RationalPoly& p, const RationalPoly& q) {
    RationalPoly r(p.size() + q.size() - 1, Rational(0));
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    BigInt r = 1;
    for (unsigned j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned j = 2; j <= n; ++j) r *= j;
    return r;
}

std::vector<double> to_double(const RationalPoly& p) {
    std::vector<double> out;
    out.reserve(p.size());
    for (const auto& c : p) out.push_back(c.convert_to<double>());
    return out;
}

void SphericalHarmonicIndex::validate() const {
    if (ell < 0) throw DomainError("spherical harmonic degree must be nonnegative");
    if (m < -ell || m > ell) throw DomainError("spherical harmonic order must satisfy |m| <= ell");
}

RationalPoly legendre_exact(unsigned ell) {
    // (x^2 - 1)^l
    RationalPoly p(2 * ell + 1, Rational(0));
    for (unsigned k = 0; k <= ell; ++k) {
        Rational c(binomial(ell, k));
        p[2 * k] = ((ell - k) % 2 ? -c : c);
    }
    auto d = poly_derivative(p, ell);
    const Rational norm(BigInt(1) << ell);
    const Rational denom = norm * Rational(factorial(ell));
    for (auto& c : d) c /= denom;
    return d;
}

PowerSeries legendre(unsigned ell) { return PowerSeries::from_real(to_double(legendre_exact(ell))); }

AssociatedLegendre::AssociatedLegendre(SphericalHarmonicIndex idx) : idx_(idx) {
    idx_.validate();
    const unsigned am = unsigned(std::abs(idx.m));
    deriv_ = to_double(poly_derivative(legendre_exact(unsigned(idx.ell)), am));
    factor_ = am % 2 ? -1.0 : 1.0;
    if (idx.m < 0) {
        const Rational ratio(factorial(unsigned(idx.ell) - am), factorial(unsigned(idx.ell) + am));
        factor_ = ratio.convert_to<double>();  // (-1)^m twice cancels
    }
}

double AssociatedLegendre::operator()(double x) const {
    if (x < -1.0 || x > 1.0) throw DomainError("associated Legendre argument outside [-1, 1]");
    double s = 0.0;
    for (auto it = deriv_.rbegin(); it != deriv_.rend(); ++it) s = s * x + *it;
    const int am = std::abs(idx_.m);
    const double w = am == 0 ? 1.0 : std::pow(1.0 - x * x, 0.5 * am);
    return factor_ * w * s;
}

AssociatedLegendre associated_legendre(SphericalHarmonicIndex idx) { return AssociatedLegendre(idx); }

cplx spherical_harmonic(SphericalHarmonicIndex idx, double theta, double phi) {
    idx.validate();
    const unsigned l = unsigned(idx.ell);
    const Rational ratio(factorial(unsigned(idx.ell - idx.m)), factorial(unsigned(idx.ell + idx.m)));
    const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * std::numbers::pi) * ratio.convert_to<double>());
    return norm * AssociatedLegendre(idx)(std::cos(theta)) * std::polar(1.0, idx.m * phi);
}

std::pair<PowerSeries, PowerSeries> airy_pair(std::size_t N) {
    std::vector<cplx> w1(N + 1, 0.0), w2(N + 1, 0.0);
    // 1*4*...*(3n-2)/(3n)! and 2*5*...*(3n-1)/(3n+1)!, built term by term.
    double t1 = 1.0, t2 = 1.0;
    for (std::size_t n = 0;; ++n) {
        if (n > 0) {
            const double k = 3.0 * double(n);
            t1 *= (k - 2.0) / ((k - 2.0) * (k - 1.0) * k);
            t2 *= (k - 1.0) / ((k - 1.0) * k * (k + 1.0));
        }
        if (3 * n > N) break;
        w1[3 * n] = t1;
        if (3 * n + 1 <= N) w2[3 * n + 1] = t2;
    }
    return {PowerSeries(std::move(w1)), PowerSeries(std::move(w2))};
}

} // namespace calckit
