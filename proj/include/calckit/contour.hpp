#pragma once

#include "calckit/quadrature.hpp"

#include <functional>
#include <vector>

namespace calckit {

using ComplexFn = std::function<cplx(cplx)>;

// One smooth piece t in [0, 1] -> z(t), with derivative dz/dt.
struct ContourSegment {
    std::function<cplx(double)> z;
    std::function<cplx(double)> dz;
    // Interior parameter values where the integrand is expected to kink.
    std::vector<double> breakpoints;
};

enum class Orientation { positive, negative };

class ContourPath {
public:
    // Throws DomainError unless the segments join up into a closed curve.
    ContourPath(std::vector<ContourSegment> segments, Orientation orientation = Orientation::positive);

    static ContourPath circle(cplx center, double radius,
                              Orientation orientation = Orientation::positive);
    static ContourPath polygon(const std::vector<cplx>& vertices,
                               Orientation orientation = Orientation::positive);
    static ContourPath rectangle(cplx lower_left, cplx upper_right,
                                 Orientation orientation = Orientation::positive);

    const std::vector<ContourSegment>& segments() const { return segments_; }
    Orientation orientation() const { return orientation_; }
    // Samples per segment, in traversal order (ignores orientation).
    std::vector<cplx> sample(int per_segment) const;

private:
    std::vector<ContourSegment> segments_;
    Orientation orientation_;
};

struct ContourIntegral {
    cplx value;
    double error = 0.0;
};

ContourIntegral integrate_contour(const ComplexFn& f, const ContourPath& path,
                                  const QuadratureRule& rule = {});

// Straight-line integral from a to b.
ContourIntegral integrate_segment(const ComplexFn& f, cplx a, cplx b,
                                  const QuadratureRule& rule = {});

} // namespace calckit
