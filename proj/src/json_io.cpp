#include "calckit/json_io.hpp"

#include "calckit/errors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace calckit {

std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_array() || j.size() != 2) throw ConfigError("complex number must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const PowerSeries& p) {
    json c = json::array();
    for (const auto& z : p.coeffs()) c.push_back(to_json(z));
    json out;
    out["center"] = to_json(p.center());
    out["coeffs"] = c;
    out["radius"] = p.radius() ? json(*p.radius()) : json(nullptr);
    return out;
}

PowerSeries power_series_from_json(const json& j) {
    if (!j.is_object() || !j.contains("coeffs")) throw ConfigError("power series needs a coeffs array");
    std::vector<cplx> c;
    for (const auto& e : j.at("coeffs")) c.push_back(complex_from_json(e));
    if (c.empty()) throw ConfigError("power series needs at least one coefficient");
    const cplx center = j.contains("center") ? complex_from_json(j.at("center")) : cplx(0.0);
    std::optional<double> r;
    if (j.contains("radius") && !j.at("radius").is_null()) r = j.at("radius").get<double>();
    return PowerSeries(std::move(c), center, r);
}

json to_json(const FourierCoeffs& c) {
    json out;
    out["period"] = c.period;
    out["a0"] = c.a0;
    out["a"] = c.a;
    out["b"] = c.b;
    return out;
}

FourierCoeffs fourier_coeffs_from_json(const json& j) {
    FourierCoeffs c;
    try {
        c.period = j.value("period", c.period);
        c.a0 = j.value("a0", 0.0);
        c.a = j.at("a").get<std::vector<double>>();
        c.b = j.at("b").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad Fourier coefficients: ") + e.what());
    }
    c.validate();
    return c;
}

} // namespace calckit
