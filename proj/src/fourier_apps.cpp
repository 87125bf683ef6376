#include "calckit/errors.hpp"
#include "calckit/fourier.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>

namespace calckit {

namespace {

constexpr double pi = std::numbers::pi;
using i128 = __int128;

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i128 pos_mod(i128 a, i128 m) {
    i128 r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t narrow(i128 v, const char* what) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw DomainError(std::string(what) + " does not fit in 64 bits");
    return std::int64_t(v);
}

ExactRational reduced(i128 num, i128 den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 a = num < 0 ? -num : num, b = den;
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    return {narrow(num, "rational numerator"), narrow(den, "rational denominator")};
}

} // namespace

ExactRational ExactRational::from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("Weierstrass argument must be finite");
    if (x == 0.0) return {0, 1};
    int e = 0;
    const double f = std::frexp(x, &e);
    auto m = static_cast<std::int64_t>(std::ldexp(f, 53));
    e -= 53;
    while (m % 2 == 0 && e < 0) {
        m /= 2;
        ++e;
    }
    if (e >= 0) {
        if (e > 62 - 53) throw DomainError("Weierstrass argument too large for exact reduction");
        return {m << e, 1};
    }
    if (-e > 61) throw DomainError("Weierstrass argument has no short dyadic form; pass a decimal");
    return {m, std::int64_t(1) << (-e)};
}

ExactRational ExactRational::parse_decimal(const std::string& s) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
    i128 num = 0, den = 1;
    bool dot = false, digits = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '.' && !dot) {
            dot = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) throw DomainError("not a decimal number: " + s);
        digits = true;
        num = num * 10 + (c - '0');
        if (dot) den *= 10;
        if (num > (i128(1) << 62) || den > (i128(1) << 62)) throw DomainError("decimal too long: " + s);
    }
    if (!digits) throw DomainError("not a decimal number: " + s);
    return reduced(neg ? -num : num, den);
}

void WeierstrassParams::validate() const {
    if (a <= 0 || a % 2 == 0) throw DomainError("Weierstrass a must be an odd positive integer");
    if (!(b > 0.0 && b < 1.0)) throw DomainError("Weierstrass b must lie in (0, 1)");
    if (!(double(a) * b > 1.0 + 1.5 * pi)) throw DomainError("Weierstrass parameters need a b > 1 + 3 pi / 2");
}

int WeierstrassParams::default_terms() const {
    int M = int(std::ceil(std::log(1e-14) / std::log(b)));
    while (std::pow(b, M) >= 1e-14) ++M;
    return M;
}

// Sum over n = 0..terms; the tail is bounded by b^{terms+1}/(1-b).
double weierstrass_eval(const WeierstrassParams& p, ExactRational x, int terms) {
    p.validate();
    if (terms < 0) throw DomainError("term count must be nonnegative");
    if (x.den <= 0 || x.den > (std::int64_t(1) << 61)) throw DomainError("denominator out of range");
    // cos(a^n pi x) depends on a^n x mod 2, tracked exactly as r / q.
    const i128 q = x.den, twoq = 2 * q;
    i128 r = pos_mod(x.num, twoq);
    double s = 0.0, bn = 1.0;
    for (int n = 0; n <= terms; ++n) {
        const i128 rr = r > q ? r - twoq : r;
        s += bn * std::cos(pi * (double(rr) / double(q)));
        bn *= p.b;
        r = pos_mod(r * p.a, twoq);
    }
    return s;
}

double weierstrass_eval(const WeierstrassParams& p, double x, int terms) {
    return weierstrass_eval(p, ExactRational::from_double(x), terms);
}

WeierstrassProbe weierstrass_quotient_probe(const WeierstrassParams& p, ExactRational x, int m) {
    p.validate();
    if (m < 0) throw DomainError("probe index must be nonnegative");
    i128 A = 1;
    for (int k = 0; k < m; ++k) {
        A *= p.a;
        if (A > (i128(1) << 61)) throw DomainError("a^m too large for exact probing");
    }
    const i128 P = A * i128(x.num), q = x.den;
    WeierstrassProbe out;
    out.m = m;
    const i128 alpha = floor_div(2 * P + q, 2 * q);
    out.alpha = narrow(alpha, "alpha_m");
    const i128 xi_num = P - alpha * q;  // xi = xi_num / q
    out.xi = double(xi_num) / double(q);
    out.h = double(q - xi_num) / (double(q) * double(A));
    // x + h = (alpha + 1) / a^m exactly.
    const ExactRational xh = reduced(alpha + 1, A);
    const int M = p.default_terms();
    out.quotient = std::abs(weierstrass_eval(p, xh, M) - weierstrass_eval(p, x, M)) / out.h;
    const double ab = double(p.a) * p.b;
    out.bound = (2.0 / 3.0 - pi / (ab - 1.0)) * std::pow(ab, m);
    return out;
}

void CircuitParams::validate() const {
    if (!(R >= 0.0) || !std::isfinite(R)) throw DomainError("resistance must be a nonnegative real");
    if (!(L >= 0.0) || !std::isfinite(L)) throw DomainError("inductance must be a nonnegative real");
    if (!(C > 0.0)) throw DomainError("capacitance must be positive or +infinity");
    source.validate();
}

RlcSolution rlc_solve(const CircuitParams& p, std::size_t N) {
    p.validate();
    const FourierCoeffs& E = p.source;
    if (N > E.order()) throw DomainError("source coefficients do not reach order " + std::to_string(N));
    const double w = 2.0 * pi / E.period;
    const double invC = std::isinf(p.C) ? 0.0 : 1.0 / p.C;

    RlcSolution out;
    FourierCoeffs& I = out.current;
    I.period = E.period;
    I.a0 = 0.0;
    I.a.assign(N, 0.0);
    I.b.assign(N, 0.0);
    double scale = 0.0;
    for (std::size_t n = 1; n <= N; ++n) scale = std::max({scale, std::abs(E.an(n)), std::abs(E.bn(n))});
    if (scale == 0.0) scale = 1.0;

    double compat = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
        const double nw = double(n) * w;
        const double X = nw * p.L - invC / nw;
        const double D = p.R * p.R + X * X;
        if (D == 0.0) throw DomainError("singular harmonic n = " + std::to_string(n) + " (exact resonance with R = 0)");
        const double aE = E.an(n), bE = E.bn(n);
        const double a = (p.R * aE - X * bE) / D;
        const double b = (X * aE + p.R * bE) / D;
        I.a[n - 1] = a;
        I.b[n - 1] = b;
        const double rc = p.R * a + X * b - aE;
        const double rs = p.R * b - X * a - bE;
        out.max_residual = std::max({out.max_residual, std::abs(rc) / scale, std::abs(rs) / scale});
        compat += b / nw;
    }
    out.mean_compatibility_residual = 0.5 * E.a0 - invC * compat;
    return out;
}

void KernelSystem::validate() const {
    if (N < 0) throw DomainError("kernel truncation must be nonnegative");
    const std::size_t n = std::size_t(2 * N + 1);
    if (g.size() != n || h.size() != n) throw DomainError("kernel table size does not match N");
    for (const auto& row : g)
        if (row.size() != n) throw DomainError("kernel table must be square");
}

double KernelSystem::contraction_norm() const {
    validate();
    const std::size_t n = h.size();
    double best = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += std::abs((k == m ? 1.0 : 0.0) - g[k][m]);
        best = std::max(best, s);
    }
    return best;
}

KernelSolution kernel_equation_solve(const KernelSystem& sys, int max_iter, double tol) {
    const double rho = sys.contraction_norm();
    if (!(rho < 1.0))
        throw PreconditionError("contraction norm " + std::to_string(rho) + " >= 1; the iteration need not converge");
    if (max_iter < 1 || !(tol > 0.0)) throw DomainError("kernel solve needs max_iter >= 1 and tol > 0");
    const std::size_t n = sys.h.size();
    auto apply_g = [&](const std::vector<cplx>& f) {
        std::vector<cplx> out(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out[i] += sys.g[i][j] * f[j];
        return out;
    };
    auto residual = [&](const std::vector<cplx>& f) {
        const auto gf = apply_g(f);
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::abs(gf[i] - sys.h[i]));
        return r;
    };

    KernelSolution out;
    std::vector<cplx> f = sys.h;
    for (int it = 1; it <= max_iter; ++it) {
        const auto gf = apply_g(f);
        double step = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx next = sys.h[i] + f[i] - gf[i];
            step = std::max(step, std::abs(next - f[i]));
            f[i] = next;
        }
        out.iterations = it;
        out.last_step = step;
        if (step < tol) {
            out.f = f;
            out.reconstruction_residual = residual(f);
            return out;
        }
    }
    std::vector<double> flat;
    for (const auto& v : f) {
        flat.push_back(v.real());
        flat.push_back(v.imag());
    }
    throw ConvergenceError("kernel iteration did not reach tolerance in " + std::to_string(max_iter) + " steps",
                           residual(f), flat);
}

} // namespace calckit
