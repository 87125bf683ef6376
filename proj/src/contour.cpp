#include "calckit/contour.hpp"

#include "calckit/errors.hpp"

#include <cmath>
#include <numbers>

namespace calckit {

ContourPath::ContourPath(std::vector<ContourSegment> segments, Orientation orientation)
    : segments_(std::move(segments)), orientation_(orientation) {
    if (segments_.empty()) throw DomainError("contour needs at least one segment");
    for (std::size_t k = 0; k < segments_.size(); ++k) {
        const cplx end = segments_[k].z(1.0);
        const cplx next = segments_[(k + 1) % segments_.size()].z(0.0);
        if (std::abs(end - next) > 1e-12 * (1.0 + std::abs(end)))
            throw DomainError("contour segments do not close up");
    }
}

ContourPath ContourPath::circle(cplx center, double radius, Orientation orientation) {
    if (!(radius > 0.0)) throw DomainError("circle radius must be positive");
    constexpr double tau = 2.0 * std::numbers::pi;
    ContourSegment s;
    s.z = [=](double t) { return center + radius * std::polar(1.0, tau * t); };
    s.dz = [=](double t) { return cplx(0.0, tau * radius) * std::polar(1.0, tau * t); };
    s.breakpoints = {0.25, 0.5, 0.75};
    return ContourPath({s}, orientation);
}

ContourPath ContourPath::polygon(const std::vector<cplx>& v, Orientation orientation) {
    if (v.size() < 3) throw DomainError("polygon contour needs at least 3 vertices");
    std::vector<ContourSegment> segs;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const cplx a = v[k], b = v[(k + 1) % v.size()];
        segs.push_back({[=](double t) { return a + t * (b - a); }, [=](double) { return b - a; }, {}});
    }
    return ContourPath(std::move(segs), orientation);
}

ContourPath ContourPath::rectangle(cplx lo, cplx hi, Orientation orientation) {
    if (!(hi.real() > lo.real() && hi.imag() > lo.imag()))
        throw DomainError("rectangle corners must be lower-left and upper-right");
    return polygon({lo, {hi.real(), lo.imag()}, hi, {lo.real(), hi.imag()}}, orientation);
}

std::vector<cplx> ContourPath::sample(int per_segment) const {
    std::vector<cplx> pts;
    for (const auto& s : segments_)
        for (int j = 0; j < per_segment; ++j) pts.push_back(s.z(double(j) / per_segment));
    return pts;
}

ContourIntegral integrate_contour(const ComplexFn& f, const ContourPath& path,
                                  const QuadratureRule& rule) {
    ContourIntegral out{0.0, 0.0};
    for (const auto& s : path.segments()) {
        auto r = integrate([&](double t) { return f(s.z(t)) * s.dz(t); }, 0.0, 1.0, rule,
                           s.breakpoints);
        out.value += r.value;
        out.error += r.error;
    }
    if (path.orientation() == Orientation::negative) out.value = -out.value;
    return out;
}

ContourIntegral integrate_segment(const ComplexFn& f, cplx a, cplx b, const QuadratureRule& rule) {
    auto r = integrate([&](double t) { return f(a + t * (b - a)) * (b - a); }, 0.0, 1.0, rule);
    return {r.value, r.error};
}

} // namespace calckit
