#pragma once

#include "calckit/fourier.hpp"
#include "calckit/power_series.hpp"

#include <json.hpp>

#include <string>

namespace calckit {

using json = nlohmann::ordered_json;

// 17 significant digits, round-trip safe.
std::string fmt17(double v);

json to_json(cplx z);
cplx complex_from_json(const json& j);

// {"center": [re, im], "coeffs": [[re, im], ...], "radius": r | null}
json to_json(const PowerSeries& p);
PowerSeries power_series_from_json(const json& j);

// {"period": T, "a0": a0, "a": [...], "b": [...]}
json to_json(const FourierCoeffs& c);
FourierCoeffs fourier_coeffs_from_json(const json& j);

} // namespace calckit
