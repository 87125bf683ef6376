#include "calckit/errors.hpp"
#include "calckit/zeta.hpp"

#include <cmath>
#include <numbers>

namespace calckit {

namespace {

constexpr double lanczos_g = 7.0;
constexpr double lanczos_p[] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

} // namespace

cplx log_gamma(cplx z) {
    constexpr double pi = std::numbers::pi;
    if (z.real() < 0.5) {
        const cplx s = std::sin(pi * z);
        if (s == 0.0) throw DomainError("Gamma has a pole at a nonpositive integer");
        return std::log(pi) - std::log(s) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    cplx x = lanczos_p[0];
    for (int i = 1; i < 9; ++i) x += lanczos_p[i] / (z + double(i));
    const cplx t = z + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

} // namespace calckit
