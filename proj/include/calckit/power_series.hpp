#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace calckit {

using cplx = std::complex<double>;

// Truncated power series sum_{n<=N} a_n (z - center)^n.
class PowerSeries {
public:
    PowerSeries() : coeffs_(1, cplx(0.0)) {}
    explicit PowerSeries(std::vector<cplx> coeffs, cplx center = 0.0,
                         std::optional<double> radius = std::nullopt);

    static PowerSeries from_real(const std::vector<double>& coeffs, cplx center = 0.0);
    static PowerSeries constant(cplx c, std::size_t order, cplx center = 0.0);
    // z - center, i.e. the coefficient list (0, 1, 0, ...).
    static PowerSeries identity(std::size_t order, cplx center = 0.0);
    // 1 / (1 - (z - center)/c) truncated at order.
    static PowerSeries geometric(cplx c, std::size_t order, cplx center = 0.0);

    std::size_t order() const { return coeffs_.size() - 1; }
    cplx center() const { return center_; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    cplx operator[](std::size_t n) const { return coeffs_.at(n); }
    std::optional<double> radius() const { return radius_; }

    PowerSeries with_radius(std::optional<double> r) const;
    PowerSeries truncated(std::size_t order) const;
    // Appends zero coefficients. Only meaningful when the series is an exact polynomial.
    PowerSeries zero_extended(std::size_t order) const;

    cplx operator()(cplx z) const;
    double max_abs_coeff() const;

private:
    std::vector<cplx> coeffs_;
    cplx center_{0.0};
    std::optional<double> radius_;
};

PowerSeries series_add(const PowerSeries& p, const PowerSeries& q);
PowerSeries series_sub(const PowerSeries& p, const PowerSeries& q);
PowerSeries series_mul(const PowerSeries& p, const PowerSeries& q);
PowerSeries series_scale(const PowerSeries& p, cplx s);
PowerSeries series_inverse(const PowerSeries& p);
PowerSeries series_derivative(const PowerSeries& p);
// Antiderivative with constant term c0; exact, so the order grows by one.
PowerSeries series_antiderivative(const PowerSeries& p, cplx c0 = 0.0);
// outer(inner(z)); inner must satisfy inner[0] == outer.center().
PowerSeries series_compose(const PowerSeries& outer, const PowerSeries& inner);
PowerSeries series_exp(const PowerSeries& p);
PowerSeries series_log(const PowerSeries& p);
PowerSeries series_pow(const PowerSeries& p, unsigned k);
// Multiplies by (z - center)^k, keeping the order (top k coefficients dropped).
PowerSeries series_shift(const PowerSeries& p, std::size_t k);

PowerSeries operator+(const PowerSeries& p, const PowerSeries& q);
PowerSeries operator-(const PowerSeries& p, const PowerSeries& q);
PowerSeries operator*(const PowerSeries& p, const PowerSeries& q);
PowerSeries operator*(cplx s, const PowerSeries& p);

enum class RadiusKind { finite, infinite, undecided };

struct RadiusEstimate {
    RadiusKind kind = RadiusKind::undecided;
    double value = 0.0;  // meaningful only when kind == finite
    bool decided() const { return kind != RadiusKind::undecided; }
    // +inf for infinite; empty when undecided.
    std::optional<double> as_optional() const;
};

RadiusEstimate ratio_radius(const PowerSeries& p);

} // namespace calckit
