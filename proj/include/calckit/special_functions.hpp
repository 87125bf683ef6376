#pragma once

#include "calckit/power_series.hpp"
#include "calckit/rational.hpp"

#include <utility>

namespace calckit {

struct SphericalHarmonicIndex {
    int ell = 0;
    int m = 0;
    void validate() const;
};

// Rodrigues formula expanded in exact arithmetic.
RationalPoly legendre_exact(unsigned ell);
PowerSeries legendre(unsigned ell);

// p_l^m(x) = (-1)^m (1 - x^2)^{m/2} d^m p_l / dx^m for m >= 0;
// negative m through p_l^{-m} = (-1)^m (l-m)!/(l+m)! p_l^m.
class AssociatedLegendre {
public:
    explicit AssociatedLegendre(SphericalHarmonicIndex idx);
    double operator()(double x) const;
    const SphericalHarmonicIndex& index() const { return idx_; }

private:
    SphericalHarmonicIndex idx_;
    std::vector<double> deriv_;  // d^|m| p_l / dx^|m| in the monomial basis
    double factor_ = 1.0;
};

AssociatedLegendre associated_legendre(SphericalHarmonicIndex idx);

// Orthonormal on the sphere, Condon-Shortley phase carried by p_l^m.
cplx spherical_harmonic(SphericalHarmonicIndex idx, double theta, double phi);

// The two power-series solutions of w'' = z w with (w, w') = (1, 0) and (0, 1).
std::pair<PowerSeries, PowerSeries> airy_pair(std::size_t order);

} // namespace calckit
