#pragma once

#include "calckit/power_series.hpp"
#include "calckit/quadrature.hpp"

#include <optional>
#include <string>
#include <vector>

namespace calckit {

// Lanczos (g = 7, 9 terms) with reflection for Re z < 1/2.
cplx log_gamma(cplx z);
cplx gamma(cplx z);

enum class ZetaRoute {
    automatic,        // alternating series for Re s >= 1/2, functional equation below
    euler_maclaurin,  // Euler-Maclaurin everywhere; independent of the functional equation
};

struct ZetaEvaluator {
    int eta_terms = 64;
    int acceleration_depth = 24;
    int derivative_orders = 160;  // highest Taylor order served by taylor()

    void validate() const;
    cplx zeta(cplx s, ZetaRoute route = ZetaRoute::automatic) const;
    // (s - 1) zeta(s), finite at s = 1.
    cplx zeta_sm1(cplx s) const;
    // Dirichlet eta by the accelerated alternating series (Re s > 0).
    cplx eta(cplx s) const;
    // zeta^{(k)}(x0)/k! for k = 0..order, real x0 in (0, 1) or (1, inf).
    PowerSeries taylor(double x0, std::size_t order) const;
    // Accuracy at default settings degrades above |Im s| = 30.
    static bool accuracy_warning(cplx s) { return std::abs(s.imag()) > 30.0; }
};

cplx zeta(cplx s, ZetaRoute route = ZetaRoute::automatic);
cplx zeta_euler_maclaurin(cplx s, int N = 24, int K = 12);
// Gamma(s/2 + 1) (s - 1) pi^{-s/2} zeta(s)
cplx xi(cplx s, ZetaRoute route = ZetaRoute::automatic);

struct XiQuadParams {
    int p_max = 40;
    std::optional<double> x_max;  // upper limit of the x-integral; chosen automatically when empty
    QuadratureRule rule = QuadratureRule{QuadKind::adaptive_segment, 1e-300, 1e-14, 4000};
    double tail_tol = 1e-15;      // relative bound on both truncations
};

struct XiSeries {
    std::vector<double> a;            // a[n] = a_{2n}
    std::vector<double> tail_bounds;  // absolute bound on both truncations, per coefficient
    std::vector<double> x_max_used;
    int p_used = 0;
    XiQuadParams quad;

    std::size_t n_max() const { return a.empty() ? 0 : a.size() - 1; }
    // sum a_{2n} (s - 1/2)^{2n}
    cplx operator()(cplx s) const;
    bool all_positive() const;
};

XiSeries xi_coefficients(int n_max, const XiQuadParams& quad = {});

struct BhatTable {
    std::vector<double> b_grid;
    int m_max = 0;
    std::vector<std::vector<double>> values;  // values[m][j] = Bhat_{2m}(b_grid[j])
    std::vector<std::vector<double>> truncation_error_bound;
    std::vector<std::vector<int>> terms_used;
};

// Bhat_{2m}(b) = sum_{n>=m} a_{2n} (-1)^{n-m} b^{2(n-m)} C(2n, 2m), for m = 0..m_max-1.
BhatTable bhat_table(const XiSeries& xi, const std::vector<double>& b_grid, int m_max);
double bhat_value(const XiSeries& xi, int m, double b, double* tail_bound = nullptr, int* used = nullptr);

struct ScanRow {
    int m = 0;
    std::optional<double> first_sign_loss;  // smallest b whose flag is not '+'
};

struct ScanReport {
    std::vector<ScanRow> rows;
    std::vector<std::vector<char>> flags;  // '+', '-' or '?' per table entry
};

ScanReport positivity_scan(const BhatTable& table);

struct HorizontalTaylor {
    double real_sum = 0.0;  // sum (-1)^n zeta^{(2n)}(x0)/(2n)! b^{2n}
    double imag_sum = 0.0;  // sum (-1)^n zeta^{(2n+1)}(x0)/(2n+1)! b^{2n+1}
    double remainder = 0.0;
    double radius = 0.0;    // estimated radius of the Taylor series at x0
};

HorizontalTaylor horizontal_taylor(double x0, double b, int k_max);

struct ZeroBracket {
    double lo = 0.0, hi = 0.0;
    long contour_count = -1;  // zeros of xi in a small rectangle around the bracket
};

struct ZeroScan {
    std::vector<ZeroBracket> zeros;
    bool coarse_step = false;  // step above 0.5
};

ZeroScan critical_line_zero_scan(double t_min, double t_max, double step);

} // namespace calckit
