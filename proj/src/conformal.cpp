#include "calckit/conformal.hpp"

#include "calckit/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace calckit {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

// One constant piece of the boundary step function between two marked points.
struct Piece {
    double a, b, c;
    int ia, ib;
};

// Marked boundary points are the prevertices plus z = 1 (index n) when 1 is not one of them.
struct Geometry {
    std::vector<double> ang;
    std::vector<Piece> pieces;
    int one = 0;

    explicit Geometry(const PolygonSpec& P) {
        const int n = int(P.size());
        ang = P.prevertices;
        const auto& psi = P.exterior_increments;
        for (int k = 0; k + 1 < n; ++k) pieces.push_back({ang[k], ang[k + 1], psi[k], k, k + 1});
        if (ang[0] == 0.0) {
            one = 0;
            pieces.push_back({ang[n - 1], 2.0 * pi, psi[n - 1], n - 1, 0});
        } else {
            one = n;
            ang.push_back(0.0);
            pieces.push_back({ang[n - 1], 2.0 * pi, psi[n - 1], n - 1, n});
            pieces.push_back({0.0, ang[0], psi[n - 1] - 2.0 * pi, n, 0});
        }
    }

    // e^{i b} - e^{i a} without cancellation.
    static cplx chord(double a, double b) { return 2.0 * I * std::sin(0.5 * (b - a)) * std::polar(1.0, 0.5 * (a + b)); }

    // e^{i ang[id]} - z where z = e^{i ang[anchor]} + delta (anchor >= 0) or z itself.
    cplx diff(int id, int anchor, cplx delta, cplx z) const {
        if (anchor < 0) return std::polar(1.0, ang[std::size_t(id)]) - z;
        if (id == anchor) return -delta;
        return chord(ang[std::size_t(anchor)], ang[std::size_t(id)]) - delta;
    }

    // i g(z) split as (g, log F').
    void eval(int anchor, cplx delta, cplx z, cplx* g_out, cplx* logd_out) const {
        double re = 0.0, im = 0.0;  // g = re - i im
        for (const auto& p : pieces) {
            const cplx nb = diff(p.ib, anchor, delta, z), da = diff(p.ia, anchor, delta, z);
            double d = std::arg(nb / da);
            if (d < 0.0) d += 2.0 * pi;
            re += p.c * (d / pi - (p.b - p.a) / (2.0 * pi));
            im += p.c / pi * (std::log(std::abs(nb)) - std::log(std::abs(da)));
        }
        const cplx g(re, -im);
        if (g_out) *g_out = g;
        if (logd_out) *logd_out = cplx(0.0, 0.5 * pi) + I * g - 2.0 * std::log(diff(one, anchor, delta, z));
    }
};

CisottiMap unit_map(const PolygonSpec& P) {
    CisottiMap m;
    m.polygon = P;
    return m;
}

cplx segment_integral(const CisottiMap& map, const Geometry& G, cplx a, cplx b) {
    if (a == b) return 0.0;
    auto f = [&](double t) -> cplx {
        cplx ld;
        const cplx z = a + t * (b - a);
        G.eval(-1, 0.0, z, nullptr, &ld);
        return std::exp(ld) * (b - a);
    };
    return integrate(f, 0.0, 1.0, map.rule).value;
}

void check_interior(cplx z) {
    if (std::abs(z) > 1.0 - 1e-6) throw DomainError("point within 1e-6 of the unit circle; use the closed-form derivative");
}

} // namespace

PolygonSpec PolygonSpec::from_vertices(const std::vector<cplx>& V, const std::vector<double>& pre) {
    const std::size_t n = V.size();
    if (n < 3) throw DomainError("a polygon needs at least 3 vertices");
    PolygonSpec P;
    P.vertices = V;
    P.prevertices = pre;
    P.interior_angles.resize(n);
    P.exterior_increments.resize(n);
    auto side = [&](std::size_t k) { return V[(k + 1) % n] - V[k]; };
    for (std::size_t k = 0; k < n; ++k)
        if (std::abs(side(k)) == 0.0) throw DomainError("polygon has a zero-length side");
    double total = 0.0;
    P.exterior_increments[0] = std::arg(side(0));
    for (std::size_t k = 0; k < n; ++k) {
        const double turn = std::arg(side(k) / side((k + n - 1) % n));
        if (std::abs(std::abs(turn) - pi) < 1e-12) throw DomainError("polygon folds back on itself");
        P.interior_angles[k] = pi - turn;
        total += turn;
        if (k > 0) P.exterior_increments[k] = P.exterior_increments[k - 1] + turn;
    }
    if (std::abs(total - 2.0 * pi) > 1e-9) throw DomainError("vertices must be counterclockwise and simple");
    P.validate();
    return P;
}

void PolygonSpec::validate() const {
    const std::size_t n = vertices.size();
    if (n < 3) throw DomainError("a polygon needs at least 3 vertices");
    if (interior_angles.size() != n || exterior_increments.size() != n || prevertices.size() != n)
        throw DomainError("vertex, angle and prevertex counts differ");
    for (std::size_t k = 0; k < n; ++k) {
        const double a = interior_angles[k];
        if (!(a > 0.0 && a < 2.0 * pi)) throw DomainError("interior angles must lie in (0, 2 pi)");
        if (k > 0 && std::abs(pi - (exterior_increments[k] - exterior_increments[k - 1]) - a) > 1e-12)
            throw DomainError("side directions disagree with interior angles");
        if (prevertices[k] < 0.0 || prevertices[k] >= 2.0 * pi) throw DomainError("prevertices must lie in [0, 2 pi)");
        if (k > 0 && !(prevertices[k - 1] < prevertices[k])) throw DomainError("prevertices must increase strictly");
    }
    if (std::abs(gauss_sum() + 2.0) > 1e-12) throw DomainError("angle sum violates sum(alpha/pi - 1) = -2");
}

double PolygonSpec::gauss_sum() const {
    double s = 0.0;
    for (double a : interior_angles) s += a / pi - 1.0;
    return s;
}

std::vector<double> PolygonSpec::side_lengths() const {
    std::vector<double> out;
    for (std::size_t k = 0; k < size(); ++k) out.push_back(std::abs(vertices[(k + 1) % size()] - vertices[k]));
    return out;
}

cplx PolygonSpec::vertex_centroid() const {
    cplx s = 0.0;
    for (const auto& v : vertices) s += v;
    return s / double(size());
}

namespace {

cplx area_centroid_of(const std::vector<cplx>& V) {
    double A = 0.0;
    cplx c = 0.0;
    for (std::size_t k = 0; k < V.size(); ++k) {
        const cplx a = V[k], b = V[(k + 1) % V.size()];
        const double cr = a.real() * b.imag() - b.real() * a.imag();
        A += cr;
        c += cr * (a + b);
    }
    return c / (3.0 * A);
}

} // namespace

cplx PolygonSpec::area_centroid() const { return area_centroid_of(vertices); }

std::function<double(double)> step_angle_function(const PolygonSpec& P) {
    P.validate();
    return [P](double t) {
        t = std::fmod(t, 2.0 * pi);
        if (t < 0.0) t += 2.0 * pi;
        const auto& th = P.prevertices;
        if (t < th[0]) return P.exterior_increments.back() - 2.0 * pi;
        const auto it = std::upper_bound(th.begin(), th.end(), t);
        return P.exterior_increments[std::size_t(it - th.begin()) - 1];
    };
}

cplx schwarz_integral(const std::function<double(double)>& v, cplx z, const QuadratureRule& rule,
                      const std::vector<double>& breakpoints) {
    check_interior(z);
    auto f = [&](double t) -> cplx {
        const cplx e = std::polar(1.0, t);
        return v(t) * (e + z) / (e - z);
    };
    return integrate(f, 0.0, 2.0 * pi, rule, breakpoints).value / (2.0 * pi);
}

cplx CisottiMap::g(cplx z) const {
    if (std::abs(z) >= 1.0) throw DomainError("g is evaluated inside the unit disk");
    cplx out;
    Geometry(polygon).eval(-1, 0.0, z, &out, nullptr);
    return out;
}

cplx CisottiMap::unit_derivative(cplx z) const {
    if (std::abs(z) > 1.0) throw DomainError("derivative requested outside the closed disk");
    cplx ld;
    Geometry(polygon).eval(-1, 0.0, z, nullptr, &ld);
    if (!std::isfinite(ld.real())) throw DomainError("derivative is singular at a prevertex");
    return std::exp(ld);
}

cplx CisottiMap::unit_derivative_near(std::size_t k, cplx delta) const {
    if (k >= polygon.size()) throw DomainError("prevertex index out of range");
    if (delta == 0.0) throw DomainError("derivative is singular at a prevertex");
    cplx ld;
    const Geometry G(polygon);
    G.eval(int(k), delta, std::polar(1.0, polygon.prevertices[k]) + delta, nullptr, &ld);
    return std::exp(ld);
}

cplx cisotti_derivative(const CisottiMap& map, double r, double theta) {
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("radius must lie in [0, 1]");
    return map.scale * map.unit_derivative(std::polar(r, theta));
}

cplx cisotti_eval(const CisottiMap& map, cplx z) {
    check_interior(z);
    check_interior(map.base_point);
    return map.base_value + map.scale * segment_integral(map, Geometry(map.polygon), map.base_point, z);
}

cplx cisotti_eval_via(const CisottiMap& map, cplx z, cplx via) {
    check_interior(z);
    check_interior(via);
    const Geometry G(map.polygon);
    return map.base_value + map.scale * (segment_integral(map, G, map.base_point, via) + segment_integral(map, G, via, z));
}

std::vector<cplx> cisotti_vertex_images(const CisottiMap& map) {
    const Geometry G(map.polygon);
    const cplx origin = map.base_value - map.scale * segment_integral(map, G, 0.0, map.base_point);
    std::vector<cplx> out;
    for (std::size_t k = 0; k < map.polygon.size(); ++k) {
        const cplx w = std::polar(1.0, map.polygon.prevertices[k]);
        auto f = [&](double t, double, double rest) -> cplx {
            cplx ld;
            G.eval(int(k), -rest * w, t * w, nullptr, &ld);
            return std::exp(ld) * w;
        };
        out.push_back(origin + map.scale * integrate_endpoint_singular(f, 0.0, 1.0, map.rule).value);
    }
    return out;
}

std::vector<double> cisotti_side_lengths(const CisottiMap& map) {
    const Geometry G(map.polygon);
    const auto& th = map.polygon.prevertices;
    const std::size_t n = th.size();
    std::vector<double> out;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t k1 = (k + 1) % n;
        const double a = th[k], b = k1 == 0 ? th[0] + 2.0 * pi : th[k1];
        const cplx wa = std::polar(1.0, th[k]), wb = std::polar(1.0, th[k1]);
        auto f = [&](double t, double sa, double sb) -> cplx {
            cplx ld;
            const cplx z = std::polar(1.0, t);
            if (sa <= sb)
                G.eval(int(k), wa * 2.0 * I * std::sin(0.5 * sa) * std::polar(1.0, 0.5 * sa), z, nullptr, &ld);
            else
                G.eval(int(k1), -wb * 2.0 * I * std::sin(0.5 * sb) * std::polar(1.0, -0.5 * sb), z, nullptr, &ld);
            return std::exp(ld.real());
        };
        out.push_back(std::abs(map.scale) * integrate_endpoint_singular(f, a, b, map.rule).value.real());
    }
    return out;
}

PrevertexSolution solve_prevertices(const std::vector<cplx>& V, const std::optional<std::vector<double>>& guess,
                                    int max_iter, double tol) {
    const std::size_t n = V.size();
    std::vector<double> equal(n);
    for (std::size_t k = 0; k < n; ++k) equal[k] = 2.0 * pi * double(k) / double(n);
    const PolygonSpec target = PolygonSpec::from_vertices(V, equal);
    const auto L = target.side_lengths();

    auto prevertices_of = [&](const Eigen::VectorXd& u) {
        std::vector<double> w(n);
        w[0] = 1.0;
        double s = 1.0;
        for (std::size_t k = 1; k < n; ++k) s += (w[k] = std::exp(u(Eigen::Index(k - 1))));
        std::vector<double> th(n, 0.0);
        for (std::size_t k = 1; k < n; ++k) th[k] = th[k - 1] + 2.0 * pi * w[k - 1] / s;
        return th;
    };
    auto images = [&](const Eigen::VectorXd& u) {
        PolygonSpec P = target;
        P.prevertices = prevertices_of(u);
        return cisotti_vertex_images(unit_map(P));
    };
    auto lengths = [&](const std::vector<cplx>& W) {
        std::vector<double> l;
        for (std::size_t k = 0; k < n; ++k) l.push_back(std::abs(W[(k + 1) % n] - W[k]));
        return l;
    };
    const Eigen::Index m = Eigen::Index(n - 1);
    auto residual = [&](const Eigen::VectorXd& u) {
        const auto W = images(u);
        const auto l = lengths(W);
        double per = 0.0;
        for (std::size_t k = 0; k < n; ++k) per += l[k];
        const cplx c = area_centroid_of(W) / per;
        Eigen::VectorXd r(m);
        for (std::size_t k = 1; k + 2 < n; ++k) r(Eigen::Index(k - 1)) = l[k] / l[0] - L[k] / L[0];
        r(m - 2) = c.real();
        r(m - 1) = c.imag();
        return r;
    };

    Eigen::VectorXd u = Eigen::VectorXd::Zero(m);
    if (guess) {
        if (guess->size() != n) throw DomainError("initial prevertex guess has the wrong length");
        std::vector<double> gaps(n);
        for (std::size_t k = 0; k < n; ++k)
            gaps[k] = (k + 1 < n ? (*guess)[k + 1] : (*guess)[0] + 2.0 * pi) - (*guess)[k];
        for (std::size_t k = 1; k < n; ++k) {
            if (!(gaps[k] > 0.0) || !(gaps[0] > 0.0)) throw DomainError("initial prevertices must increase strictly");
            u(Eigen::Index(k - 1)) = std::log(gaps[k] / gaps[0]);
        }
    }

    Eigen::VectorXd r = residual(u);
    int it = 0;
    for (; it < max_iter && r.lpNorm<Eigen::Infinity>() >= tol; ++it) {
        Eigen::MatrixXd J(m, m);
        const double h = 1e-7;
        for (Eigen::Index j = 0; j < m; ++j) {
            Eigen::VectorXd up = u;
            up(j) += h;
            J.col(j) = (residual(up) - r) / h;
        }
        const Eigen::VectorXd step = J.colPivHouseholderQr().solve(-r);
        double lam = 1.0;
        bool moved = false;
        for (int k = 0; k < 30; ++k, lam *= 0.5) {
            const Eigen::VectorXd un = u + lam * step;
            Eigen::VectorXd rn;
            try {
                rn = residual(un);
            } catch (const ToleranceError&) {
                continue;
            }
            if (rn.allFinite() && rn.norm() < r.norm()) {
                u = un;
                r = rn;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    if (!(r.lpNorm<Eigen::Infinity>() < tol)) {
        std::vector<double> last(u.data(), u.data() + u.size());
        throw ConvergenceError("prevertex iteration stalled", r.lpNorm<Eigen::Infinity>(), last);
    }

    PrevertexSolution out;
    out.iterations = it;
    out.polygon = target;
    out.polygon.prevertices = prevertices_of(u);
    out.polygon.validate();
    const auto W = cisotti_vertex_images(unit_map(out.polygon));
    const auto l = lengths(W);
    const double lam = L[0] / l[0];
    const cplx c = area_centroid_of(W);
    for (std::size_t k = 0; k < n; ++k) out.ratio_residual = std::max(out.ratio_residual, std::abs(l[k] / l[0] - L[k] / L[0]));
    out.map = unit_map(out.polygon);
    out.map.scale = lam;
    out.map.base_value = target.area_centroid();
    out.centroid_residual = lam * std::abs(c);
    return out;
}

void BoundaryPerturbation::validate() const {
    if (sigma_coeffs.empty() || sigma_coeffs.size() % 2 == 0)
        throw DomainError("sigma coefficients must be listed for n = -N..N");
    if (!std::isfinite(epsilon)) throw DomainError("epsilon must be finite");
}

double BoundaryPerturbation::sigma(double t) const {
    const int N = order();
    cplx s = 0.0;
    for (int n = -N; n <= N; ++n) s += sigma_coeffs[std::size_t(n + N)] * std::polar(1.0, n * t);
    return s.real();
}

bool BoundaryPerturbation::strong() const {
    validate();
    double m = 0.0;
    for (int k = 0; k < 256; ++k) m = std::max(m, std::abs(sigma(2.0 * pi * k / 256)));
    return std::abs(epsilon) * m > 0.1;
}

cplx lavrentiev_map(const BoundaryPerturbation& p, cplx z) {
    p.validate();
    if (std::abs(z) > 1.0 + 1e-12) throw DomainError("Lavrentiev map is defined on the closed unit disk");
    const int N = p.order();
    cplx s = 0.0;
    for (int n = N; n >= 1; --n) s = (s + 2.0 * p.sigma_coeffs[std::size_t(N + n)]) * z;
    s += p.sigma_coeffs[std::size_t(N)];
    return z * (1.0 + p.epsilon * s);
}

} // namespace calckit
