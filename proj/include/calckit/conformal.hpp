#pragma once

#include "calckit/quadrature.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace calckit {

// Polygon with counterclockwise vertices. Side k runs V_k -> V_{k+1}; psi_k is
// its direction, unwrapped so that psi_k - psi_{k-1} = pi - alpha_k.
struct PolygonSpec {
    std::vector<cplx> vertices;
    std::vector<double> interior_angles;
    std::vector<double> exterior_increments;  // psi_k
    std::vector<double> prevertices;          // strictly increasing in [0, 2 pi)

    static PolygonSpec from_vertices(const std::vector<cplx>& vertices, const std::vector<double>& prevertices);
    void validate() const;
    std::size_t size() const { return vertices.size(); }
    // sum (alpha_k / pi - 1), which is -2 for a simple polygon
    double gauss_sum() const;
    std::vector<double> side_lengths() const;
    cplx vertex_centroid() const;
    // Centroid of the enclosed area.
    cplx area_centroid() const;
};

// Boundary direction of the image as a function of the boundary angle:
// psi_k on [theta_k, theta_{k+1}), and psi_n - 2 pi before theta_1.
std::function<double(double)> step_angle_function(const PolygonSpec& polygon);

// (1/2 pi) int_0^{2 pi} v(t) (e^{it} + z)/(e^{it} - z) dt; throws DomainError for |z| > 1 - 1e-6.
cplx schwarz_integral(const std::function<double(double)>& boundary, cplx z, const QuadratureRule& rule = {},
                      const std::vector<double>& breakpoints = {});

struct CisottiMap {
    PolygonSpec polygon;
    cplx base_point = 0.0;
    cplx base_value = 0.0;
    cplx scale = 1.0;
    QuadratureRule rule{};

    // Unscaled derivative F'(z) = i exp(i g(z)) / (1 - z)^2 with g in closed form.
    cplx unit_derivative(cplx z) const;
    // Same, at z = e^{i theta_k} + delta; accurate for small |delta|.
    cplx unit_derivative_near(std::size_t k, cplx delta) const;
    // Schwarz integral of the step function, closed form.
    cplx g(cplx z) const;
};

// scale * F'(r e^{i theta})
cplx cisotti_derivative(const CisottiMap& map, double r, double theta);
// base_value + scale * int_{base_point}^{z} F'
cplx cisotti_eval(const CisottiMap& map, cplx z);
// Same integral along base_point -> via -> z.
cplx cisotti_eval_via(const CisottiMap& map, cplx z, cplx via);
// Images of the prevertices, by radial integration into each corner.
std::vector<cplx> cisotti_vertex_images(const CisottiMap& map);
// Boundary arc lengths of the image, by integrating |f'| over each prevertex arc.
std::vector<double> cisotti_side_lengths(const CisottiMap& map);

struct PrevertexSolution {
    PolygonSpec polygon;
    CisottiMap map;            // f(0) = area centroid, scale fitted to side 1
    double ratio_residual = 0;  // max |l_k/l_1 - L_k/L_1| over all sides
    double centroid_residual = 0;
    int iterations = 0;
};

// Damped Newton on log-spacing variables with theta_1 = 0.
PrevertexSolution solve_prevertices(const std::vector<cplx>& vertices,
                                    const std::optional<std::vector<double>>& initial_guess = std::nullopt,
                                    int max_iter = 60, double tol = 1e-10);

// sigma(t) = sum_{|n|<=N} A_n e^{int}, coefficients listed from -N to N.
struct BoundaryPerturbation {
    double epsilon = 0.0;
    std::vector<cplx> sigma_coeffs;

    void validate() const;
    int order() const { return int(sigma_coeffs.size() / 2); }
    double sigma(double t) const;
    // epsilon * max |sigma| above 0.1 puts the first-order formula out of its range.
    bool strong() const;
};

// z (1 + epsilon (A_0 + 2 sum_{n>=1} A_n z^n)), the first-order map.
cplx lavrentiev_map(const BoundaryPerturbation& p, cplx z);

} // namespace calckit
