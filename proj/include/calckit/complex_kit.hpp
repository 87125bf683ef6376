#pragma once

#include "calckit/contour.hpp"
#include "calckit/polynomial.hpp"
#include "calckit/power_series.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace calckit {

// sum_{n=-M}^{N} A_n (z - z0)^n on R1 < |z - z0| < R2.
struct LaurentExpansion {
    cplx center = 0.0;
    std::vector<cplx> negative;     // A_{-1}, ..., A_{-M}
    std::vector<cplx> nonnegative;  // A_0, ..., A_N
    std::pair<double, double> annulus{0.0, 0.0};

    cplx coefficient(int n) const;
    cplx operator()(cplx z) const;
};

// Coefficients from contour integrals on |z - z0| = r. The annulus defaults to
// the circle itself; when given it must contain r.
LaurentExpansion laurent_coefficients(const ComplexFn& f, cplx center, double r, int M, int N,
                                      const QuadratureRule& rule = {},
                                      std::optional<std::pair<double, double>> annulus = std::nullopt);

// Residue at a pole of order <= m, read off a small-circle Laurent expansion.
// radius defaults to a tenth of |z0| or 0.1, whichever is larger; pass the
// half-distance to the nearest other singularity when it is known.
cplx residue_at_pole(const ComplexFn& f, cplx z0, int m, std::optional<double> radius = std::nullopt,
                     const QuadratureRule& rule = {});

// d^k f / dz^k at z from the Cauchy formula on a circle, trapezoid with `points` nodes.
cplx cauchy_derivative(const ComplexFn& f, cplx z, double radius, int k = 1, int points = 16);

struct RationalFunction {
    std::vector<double> numerator;    // ascending powers
    std::vector<double> denominator;  // ascending powers

    void validate() const;
    cplx operator()(cplx z) const;
    std::vector<Root> poles() const;
};

struct ResidueSumReport {
    cplx residue_form;
    cplx direct_sum;         // partial sum over |n| <= N plus tail correction when available
    double discrepancy = 0.0;
    long direct_terms = 0;   // N
    double tail = 0.0;       // added tail (x = 0 mod 2 pi) or bound on the neglected tail
    bool tail_added = false;
};

// Sum over all integers n of R(n) e^{i n x}, x in [0, 2 pi], by residues of
// R(z) 2 pi i e^{izx} / (e^{2 pi i z} - 1) at the poles of R.
ResidueSumReport rational_exp_sum(const RationalFunction& R, double x, long direct_terms = 1000000,
                                  const QuadratureRule& rule = {});

// The two-exponential closed form for R = 1/(n^2 + w^2) exactly as it is
// usually printed, (-pi/w)[e^{-xw}/(1 - e^{-2 pi w}) + e^{xw}/(e^{2 pi w} - 1)].
// Its sign is opposite to the lattice sum; kept for reporting.
double lorentzian_printed_closed_form(double w, double x);

// G(0)/2 + int_0^inf G(s) e^{2 pi i s x} ds
//   + i int_0^inf [G(iy) e^{-2 pi x y} - G(-iy) e^{2 pi x y}] / (e^{2 pi y} - 1) dy
cplx abel_plana_like_sum(const ComplexFn& G, double x, const QuadratureRule& rule = {});
// sum_{n=0}^{N} G(n) e^{2 pi i n x}
cplx direct_lattice_sum(const ComplexFn& G, double x, long N);

// g with g(f(z)) = z + O((z - z0)^{N+1}), centered at f(z0).
PowerSeries inverse_function_series(const PowerSeries& f, std::size_t N);

// d_0..d_N with f = sum d_n w^n + O((z - z0)^{N+1}).
std::vector<cplx> burmann_lagrange(const PowerSeries& f, const PowerSeries& w, std::size_t N);
PowerSeries burmann_reconstruct(const std::vector<cplx>& d, const PowerSeries& w);

// Zeros minus poles inside the path, via the logarithmic integral.
long count_zeros(const ComplexFn& f, const ContourPath& path, const QuadratureRule& rule = {},
                 const ComplexFn& df = nullptr);

} // namespace calckit
