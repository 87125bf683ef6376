#include "calckit/polynomial.hpp"

#include "calckit/errors.hpp"

#include <Eigen/Core>
#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>

namespace calckit {

cplx poly_eval(const std::vector<cplx>& p, cplx z) {
    cplx s = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * z + *it;
    return s;
}

double poly_eval(const std::vector<double>& p, double x) {
    double s = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * x + *it;
    return s;
}

int poly_degree(const std::vector<double>& p) {
    for (int k = int(p.size()) - 1; k >= 0; --k)
        if (p[std::size_t(k)] != 0.0) return k;
    return -1;
}

std::vector<cplx> poly_roots(const std::vector<double>& p) {
    const int d = poly_degree(p);
    if (d < 0) throw DomainError("the zero polynomial has no isolated roots");
    if (d == 0) return {};
    if (d == 1) return {cplx(-p[0] / p[1])};
    Eigen::VectorXd c(d + 1);
    for (int k = 0; k <= d; ++k) c(k) = p[std::size_t(k)];
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(c);
    std::vector<cplx> out;
    for (Eigen::Index k = 0; k < solver.roots().size(); ++k) {
        // One Newton polish step against the original coefficients.
        cplx z = solver.roots()(k);
        cplx f = 0.0, df = 0.0;
        for (int j = d; j >= 0; --j) {
            df = df * z + f;
            f = f * z + p[std::size_t(j)];
        }
        if (std::abs(df) > 1e-12 * std::max(1.0, std::abs(f))) {
            const cplx zn = z - f / df;
            if (std::abs(zn - z) < 1e-6 * std::max(1.0, std::abs(z))) z = zn;
        }
        out.push_back(z);
    }
    return out;
}

std::vector<Root> poly_roots_clustered(const std::vector<double>& p, double cluster_tol) {
    auto raw = poly_roots(p);
    std::vector<Root> out;
    std::vector<bool> used(raw.size(), false);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (used[i]) continue;
        cplx sum = raw[i];
        int m = 1;
        used[i] = true;
        for (std::size_t j = i + 1; j < raw.size(); ++j) {
            if (!used[j] && std::abs(raw[j] - raw[i]) < cluster_tol * std::max(1.0, std::abs(raw[i]))) {
                used[j] = true;
                sum += raw[j];
                ++m;
            }
        }
        out.push_back({sum / double(m), m});
    }
    return out;
}

} // namespace calckit
