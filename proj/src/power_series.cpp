#include "calckit/power_series.hpp"

#include "calckit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace calckit {

PowerSeries::PowerSeries(std::vector<cplx> coeffs, cplx center, std::optional<double> radius)
    : coeffs_(std::move(coeffs)), center_(center), radius_(radius) {
    if (coeffs_.empty()) throw DomainError("PowerSeries needs at least one coefficient");
    if (radius_ && !(*radius_ > 0.0)) throw DomainError("PowerSeries radius must be positive");
}

PowerSeries PowerSeries::from_real(const std::vector<double>& coeffs, cplx center) {
    return PowerSeries(std::vector<cplx>(coeffs.begin(), coeffs.end()), center);
}

PowerSeries PowerSeries::constant(cplx c, std::size_t order, cplx center) {
    std::vector<cplx> a(order + 1, 0.0);
    a[0] = c;
    return PowerSeries(std::move(a), center);
}

PowerSeries PowerSeries::identity(std::size_t order, cplx center) {
    std::vector<cplx> a(order + 1, 0.0);
    if (order >= 1) a[1] = 1.0;
    return PowerSeries(std::move(a), center);
}

PowerSeries PowerSeries::geometric(cplx c, std::size_t order, cplx center) {
    std::vector<cplx> a(order + 1);
    cplx t = 1.0;
    for (std::size_t n = 0; n <= order; ++n, t /= c) a[n] = t;
    return PowerSeries(std::move(a), center, std::abs(c));
}

PowerSeries PowerSeries::with_radius(std::optional<double> r) const {
    return PowerSeries(coeffs_, center_, r);
}

PowerSeries PowerSeries::truncated(std::size_t order) const {
    if (order > this->order()) throw DomainError("truncation order exceeds series order");
    return PowerSeries(std::vector<cplx>(coeffs_.begin(), coeffs_.begin() + order + 1), center_,
                       radius_);
}

PowerSeries PowerSeries::zero_extended(std::size_t order) const {
    auto a = coeffs_;
    if (order + 1 > a.size()) a.resize(order + 1, 0.0);
    return PowerSeries(std::move(a), center_, radius_);
}

cplx PowerSeries::operator()(cplx z) const {
    const cplx h = z - center_;
    cplx s = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) s = s * h + *it;
    return s;
}

double PowerSeries::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

namespace {

void require_same_center(const PowerSeries& p, const PowerSeries& q) {
    if (p.center() != q.center()) throw DomainError("series have different centers");
}

} // namespace

PowerSeries series_add(const PowerSeries& p, const PowerSeries& q) {
    require_same_center(p, q);
    const std::size_t n = std::min(p.order(), q.order());
    std::vector<cplx> a(n + 1);
    for (std::size_t k = 0; k <= n; ++k) a[k] = p[k] + q[k];
    return PowerSeries(std::move(a), p.center());
}

PowerSeries series_sub(const PowerSeries& p, const PowerSeries& q) {
    return series_add(p, series_scale(q, -1.0));
}

PowerSeries series_mul(const PowerSeries& p, const PowerSeries& q) {
    require_same_center(p, q);
    const std::size_t n = std::min(p.order(), q.order());
    std::vector<cplx> a(n + 1, 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
        cplx s = 0.0;
        for (std::size_t j = 0; j <= k; ++j) s += p[j] * q[k - j];
        a[k] = s;
    }
    return PowerSeries(std::move(a), p.center());
}

PowerSeries series_scale(const PowerSeries& p, cplx s) {
    auto a = p.coeffs();
    for (auto& c : a) c *= s;
    return PowerSeries(std::move(a), p.center(), p.radius());
}

PowerSeries series_inverse(const PowerSeries& p) {
    if (p[0] == cplx(0.0)) throw DomainError("series_inverse: constant term is zero");
    const std::size_t n = p.order();
    std::vector<cplx> b(n + 1, 0.0);
    b[0] = 1.0 / p[0];
    for (std::size_t k = 1; k <= n; ++k) {
        cplx s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) s += p[j] * b[k - j];
        b[k] = -s * b[0];
    }
    return PowerSeries(std::move(b), p.center());
}

PowerSeries series_derivative(const PowerSeries& p) {
    const std::size_t n = p.order();
    if (n == 0) return PowerSeries::constant(0.0, 0, p.center());
    std::vector<cplx> a(n);
    for (std::size_t k = 1; k <= n; ++k) a[k - 1] = double(k) * p[k];
    return PowerSeries(std::move(a), p.center(), p.radius());
}

PowerSeries series_antiderivative(const PowerSeries& p, cplx c0) {
    const std::size_t n = p.order() + 1;
    std::vector<cplx> a(n + 1);
    a[0] = c0;
    for (std::size_t k = 1; k <= n; ++k) a[k] = p[k - 1] / double(k);
    return PowerSeries(std::move(a), p.center(), p.radius());
}

PowerSeries series_compose(const PowerSeries& outer, const PowerSeries& inner) {
    if (std::abs(inner[0] - outer.center()) > 1e-14 * (1.0 + std::abs(outer.center())))
        throw DomainError("series_compose: inner(center) must equal the outer center");
    const std::size_t n = std::min(outer.order(), inner.order());
    auto h = inner.truncated(n).coeffs();
    h[0] = 0.0;
    const PowerSeries hs(h, inner.center());
    PowerSeries acc = PowerSeries::constant(outer[n], n, inner.center());
    for (std::size_t k = n; k-- > 0;) {
        acc = series_mul(acc, hs);
        auto a = acc.coeffs();
        a[0] += outer[k];
        acc = PowerSeries(std::move(a), inner.center());
    }
    return acc;
}

PowerSeries series_exp(const PowerSeries& p) {
    const std::size_t n = p.order();
    std::vector<cplx> e(n + 1, 0.0);
    e[0] = std::exp(p[0]);
    for (std::size_t k = 1; k <= n; ++k) {
        cplx s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) s += double(j) * p[j] * e[k - j];
        e[k] = s / double(k);
    }
    return PowerSeries(std::move(e), p.center());
}

PowerSeries series_log(const PowerSeries& p) {
    if (p[0] == cplx(0.0)) throw DomainError("series_log: constant term is zero");
    if (p.order() == 0) return PowerSeries::constant(std::log(p[0]), 0, p.center());
    return series_antiderivative(series_mul(series_derivative(p), series_inverse(p)), std::log(p[0]));
}

PowerSeries series_pow(const PowerSeries& p, unsigned k) {
    PowerSeries result = PowerSeries::constant(1.0, p.order(), p.center());
    PowerSeries base = p;
    while (k) {
        if (k & 1u) result = series_mul(result, base);
        k >>= 1u;
        if (k) base = series_mul(base, base);
    }
    return result;
}

PowerSeries series_shift(const PowerSeries& p, std::size_t k) {
    const std::size_t n = p.order();
    std::vector<cplx> a(n + 1, 0.0);
    for (std::size_t j = k; j <= n; ++j) a[j] = p[j - k];
    return PowerSeries(std::move(a), p.center());
}

PowerSeries operator+(const PowerSeries& p, const PowerSeries& q) { return series_add(p, q); }
PowerSeries operator-(const PowerSeries& p, const PowerSeries& q) { return series_sub(p, q); }
PowerSeries operator*(const PowerSeries& p, const PowerSeries& q) { return series_mul(p, q); }
PowerSeries operator*(cplx s, const PowerSeries& p) { return series_scale(p, s); }

std::optional<double> RadiusEstimate::as_optional() const {
    switch (kind) {
    case RadiusKind::finite: return value;
    case RadiusKind::infinite: return std::numeric_limits<double>::infinity();
    default: return std::nullopt;
    }
}

// Fits rho_n = L + c/(n+1) to the trailing ratios by least squares; 1/L is the radius.
// The 1/(n+1) model is exact for both geometric and factorial coefficient decay.
RadiusEstimate ratio_radius(const PowerSeries& p) {
    const std::size_t N = p.order();
    if (N < 3) return {};
    const std::size_t w = std::max<std::size_t>(3, (N + 3) / 4);
    if (w > N) return {};
    const std::size_t first = N - w;

    for (std::size_t n = first; n <= N; ++n) {
        const double an = std::abs(p[n]);
        if (an == 0.0 || !std::isfinite(an)) return {};
        // A drop of twelve orders between neighbours is treated as a structural zero.
        if (n > first && an < 1e-12 * std::abs(p[n - 1])) return {};
        if (n > first && std::abs(p[n - 1]) < 1e-12 * an) return {};
    }

    std::vector<double> xs, ys;
    for (std::size_t n = first; n < N; ++n) {
        xs.push_back(1.0 / double(n + 1));
        ys.push_back(std::abs(p[n + 1] / p[n]));
    }
    const double m = double(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double det = m * sxx - sx * sx;
    const double slope = (m * sxy - sx * sy) / det;
    const double L = (sy - slope * sx) / m;
    const double mean = sy / m;

    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (L + slope * xs[i]);
        rss += r * r;
    }
    if (std::sqrt(rss / m) > 0.05 * mean) return {};

    if (L <= 1e-3 * mean) return {RadiusKind::infinite, 0.0};
    return {RadiusKind::finite, 1.0 / L};
}

} // namespace calckit
