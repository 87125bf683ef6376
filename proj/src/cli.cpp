#include "calckit/cli.hpp"

#include "calckit/complex_kit.hpp"
#include "calckit/conformal.hpp"
#include "calckit/errors.hpp"
#include "calckit/fourier.hpp"
#include "calckit/ode_series.hpp"
#include "calckit/special_functions.hpp"
#include "calckit/zeta.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

namespace calckit {

namespace {

constexpr double pi = std::numbers::pi;

enum class Kind { number, integer, text, list, boolean, text_or_object };

struct Param {
    std::string name;
    Kind kind;
    json def;
    std::string help;
};

struct Result {
    json summary = json::object();
    Table table;
};

struct Experiment {
    std::string name;
    std::string help;
    OutputFormat format;
    std::vector<Param> params;
    std::function<Result(const json&)> run;
};

// ---- parameter access ----

double num(const json& p, const std::string& k) {
    const json& v = p.at(k);
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
        if (s == "-inf" || s == "-infinity") return -std::numeric_limits<double>::infinity();
        throw ConfigError("key '" + k + "': expected a number");
    }
    return v.get<double>();
}

long integer(const json& p, const std::string& k) { return p.at(k).get<long>(); }
std::string text(const json& p, const std::string& k) { return p.at(k).get<std::string>(); }

std::vector<cplx> clist(const json& p, const std::string& k) {
    std::vector<cplx> out;
    for (const auto& e : p.at(k)) out.push_back(complex_from_json(e));
    return out;
}

std::vector<double> rlist(const json& p, const std::string& k) {
    std::vector<double> out;
    for (const auto& e : p.at(k)) {
        if (!e.is_number()) throw ConfigError("key '" + k + "': expected real numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

bool is_inf_string(const json& v) {
    if (!v.is_string()) return false;
    const auto s = v.get<std::string>();
    return s == "inf" || s == "infinity" || s == "-inf" || s == "-infinity";
}

void check_kind(const Param& p, const json& v) {
    bool ok = false;
    switch (p.kind) {
    case Kind::number: ok = v.is_number() || is_inf_string(v); break;
    case Kind::integer: ok = v.is_number_integer(); break;
    case Kind::text: ok = v.is_string(); break;
    case Kind::boolean: ok = v.is_boolean(); break;
    case Kind::text_or_object: ok = v.is_string() || v.is_object(); break;
    case Kind::list:
        ok = v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) {
                 return e.is_number() || (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number());
             });
        break;
    }
    if (!ok) throw ConfigError("key 'params." + p.name + "': value " + v.dump() + " has the wrong type");
}

json parse_flag(const Param& p, const std::string& s) {
    auto fail = [&]() -> json { throw ConfigError("--" + p.name + ": cannot parse '" + s + "'"); };
    try {
        std::size_t pos = 0;
        switch (p.kind) {
        case Kind::number: {
            json tmp = s;
            if (is_inf_string(tmp)) return tmp;
            const double d = std::stod(s, &pos);
            return pos == s.size() ? json(d) : fail();
        }
        case Kind::integer: {
            const long v = std::stol(s, &pos);
            return pos == s.size() ? json(v) : fail();
        }
        case Kind::boolean:
            if (s == "true" || s == "1") return true;
            if (s == "false" || s == "0") return false;
            return fail();
        case Kind::list: {
            json arr = json::array();
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, ',')) {
                const double d = std::stod(item, &pos);
                if (pos != item.size()) return fail();
                arr.push_back(d);
            }
            return arr;
        }
        case Kind::text: return s;
        case Kind::text_or_object:
            if (s.empty() || s.front() != '{') return s;
            try {
                return json::parse(s);
            } catch (const json::parse_error& e) {
                throw ConfigError("--" + p.name + ": " + e.what());
            }
        }
    } catch (const std::logic_error&) {
        return fail();
    }
    return fail();
}

json cjson(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json coeff_json(cplx z) { return z.imag() == 0.0 ? json(z.real()) : json::array({z.real(), z.imag()}); }

json terms_json(const PowerSeries& s, cplx exponent, double drop = 0.0) {
    json t = json::array();
    for (std::size_t n = 0; n <= s.order(); ++n) {
        if (std::abs(s[n]) <= drop) continue;
        t.push_back({{"power", coeff_json(exponent + double(n))}, {"coeff", coeff_json(s[n])}});
    }
    return t;
}

double max_abs(const PowerSeries& s) { return s.max_abs_coeff(); }

// ---- experiments ----

Result run_frobenius(const json& p) {
    const auto order = std::size_t(integer(p, "order"));
    auto poly = [&](const char* k) {
        const auto v = clist(p, k);
        if (v.empty()) throw ConfigError(std::string("key 'params.") + k + "': needs at least one coefficient");
        if (v.size() > order + 1) throw ConfigError(std::string("key 'params.") + k + "': longer than order + 1");
        return PowerSeries(v).zero_extended(order);
    };
    OdeCoefficients c(poly("a"), poly("b"));
    const auto s = solve_frobenius(c, order);
    Result r;
    r.summary["indicial_roots"] = {coeff_json(s.indicial_roots.first), coeff_json(s.indicial_roots.second)};
    r.summary["case"] = to_string(s.kind);
    r.summary["gap"] = s.gap;
    // In the integer-gap case y1 is normalized as the limit of (r - r2) y(x, r).
    if (s.gap_limit) {
        r.summary["y1"] = {{"normalization", "limit of (r - r2) y(x, r) as r -> r2"},
                           {"terms", terms_json(*s.gap_limit, s.indicial_roots.second, 0.0)}};
    } else {
        r.summary["y1"] = {{"normalization", "y_0 = 1"}, {"terms", terms_json(s.primary, s.indicial_roots.first)}};
    }
    r.summary["y2"] = {{"log_weight", coeff_json(s.secondary_log_weight)},
                       {"log_multiplies", "x^r1 * primary"},
                       {"primary", terms_json(s.primary, s.indicial_roots.first)},
                       {"terms", terms_json(s.secondary_series, s.indicial_roots.second)}};
    r.summary["y1_residual"] = max_abs(frobenius_residual(c, s.indicial_roots.first, s.primary));
    r.summary["y2_residual"] = max_abs(frobenius_secondary_residual(c, s));
    return r;
}

SampledFunction named_function(const std::string& name, double a) {
    SampledFunction f;
    if (name == "poisson-sine") {
        if (!(std::abs(a) < 1.0)) throw ConfigError("key 'params.a': poisson-sine needs |a| < 1");
        f.evaluator = [a](double t) { return a * std::sin(t) / (1.0 - 2.0 * a * std::cos(t) + a * a); };
    } else if (name == "square") {
        f.evaluator = [](double t) { return t < 0.0 ? -1.0 : 1.0; };
        f.jumps = {{-pi, -2.0}, {0.0, 2.0}};
        f.smoothness = Smoothness::piecewise_C1;
    } else if (name == "sawtooth") {
        f.evaluator = [](double t) { return t; };
        f.jumps = {{-pi, -2.0 * pi}};
        f.smoothness = Smoothness::piecewise_C1;
    } else if (name == "abs") {
        f.evaluator = [](double t) { return std::abs(t); };
        f.jumps = {{0.0, 0.0}};
        f.smoothness = Smoothness::continuous_only;
    } else if (name == "exp-sin") {
        f.evaluator = [](double t) { return std::exp(std::sin(t)); };
    } else if (name == "cos") {
        f.evaluator = [](double t) { return std::cos(t); };
    } else {
        throw ConfigError("key 'params.function': unknown function '" + name +
                          "' (poisson-sine, square, sawtooth, abs, exp-sin, cos)");
    }
    return f;
}

// Periodic piecewise-linear interpolant of "t,value" rows on [-T/2, T/2).
SampledFunction sampled_function(const std::string& path, double T) {
    std::ifstream in(path);
    if (!in) throw ConfigError("key 'params.samples': cannot open '" + path + "'");
    std::vector<std::pair<double, double>> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        try {
            if (comma == std::string::npos) throw std::invalid_argument("");
            pts.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
        } catch (const std::logic_error&) {
            if (pts.empty() && lineno == 1) continue;  // header row
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 't,value'");
        }
    }
    if (pts.size() < 2) throw ConfigError(path + ": need at least two samples");
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].first < -0.5 * T || pts[i].first >= 0.5 * T)
            throw ConfigError(path + ": sample t = " + fmt17(pts[i].first) + " outside [-T/2, T/2)");
        if (i > 0 && pts[i].first == pts[i - 1].first) throw ConfigError(path + ": repeated sample abscissa");
    }
    SampledFunction f;
    f.period = T;
    f.smoothness = Smoothness::continuous_only;
    auto shared = std::make_shared<std::vector<std::pair<double, double>>>(pts);
    f.evaluator = [shared, T](double t) {
        const auto& q = *shared;
        auto it = std::upper_bound(q.begin(), q.end(), std::make_pair(t, std::numeric_limits<double>::infinity()));
        std::pair<double, double> lo, hi;
        if (it == q.begin()) {
            lo = {q.back().first - T, q.back().second};
            hi = q.front();
        } else if (it == q.end()) {
            lo = q.back();
            hi = {q.front().first + T, q.front().second};
        } else {
            lo = *(it - 1);
            hi = *it;
        }
        const double w = (t - lo.first) / (hi.first - lo.first);
        return lo.second + w * (hi.second - lo.second);
    };
    // Kinks at the samples serve as breakpoints.
    for (const auto& s : pts) f.jumps.push_back({s.first, 0.0});
    return f;
}

Result run_fourier(const json& p) {
    const auto N = std::size_t(integer(p, "N"));
    if (N < 1 || N > 4096) throw ConfigError("key 'params.N': must lie in 1..4096");
    const std::string samples = text(p, "samples");
    const SampledFunction f =
        samples.empty() ? named_function(text(p, "function"), num(p, "a")) : sampled_function(samples, num(p, "period"));
    const FourierCoeffs c = fourier_coefficients(f, N);
    Result r;
    r.table.columns = {"n", "a_n", "b_n", "l2_error_S_n"};
    r.table.rows.push_back({0, c.a0, 0.0, l2_error(f, c, 0)});
    for (std::size_t n = 1; n <= N; ++n) r.table.rows.push_back({n, c.an(n), c.bn(n), l2_error(f, c, n)});

    const auto grid_n = integer(p, "grid");
    if (grid_n < 1) throw ConfigError("key 'params.grid': must be positive");
    std::vector<double> grid;
    for (long k = 0; k < grid_n; ++k) grid.push_back(-0.5 * f.period + f.period * (double(k) + 0.5) / double(grid_n));
    const auto sigma = fejer_recover(c, grid);
    double sup_sigma = 0.0, sup_partial = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        sup_sigma = std::max(sup_sigma, std::abs(sigma[k] - f(grid[k])));
        sup_partial = std::max(sup_partial, std::abs(partial_sum(c, N, grid[k]) - f(grid[k])));
    }
    r.summary["source"] = samples.empty() ? text(p, "function") : "samples";
    r.summary["period"] = f.period;
    r.summary["bessel_gap"] = bessel_gap(f, c);
    r.summary["grid_sup_error_partial_sum"] = sup_partial;
    r.summary["grid_sup_error_fejer"] = sup_sigma;
    return r;
}

Result run_residue_sum(const json& p) {
    RationalFunction R{rlist(p, "num-coeffs"), rlist(p, "den-coeffs")};
    const double x = num(p, "x");
    const auto rep = rational_exp_sum(R, x, integer(p, "direct-terms"));
    Result r;
    r.summary["residue_form"] = cjson(rep.residue_form);
    r.summary["direct_sum"] = cjson(rep.direct_sum);
    r.summary["discrepancy"] = rep.discrepancy;
    r.summary["direct_terms"] = rep.direct_terms;
    r.summary[rep.tail_added ? "tail_added" : "tail_bound"] = rep.tail;
    // 1/(n^2 + w^2): compare with the two-exponential form as usually printed.
    const auto& nu = R.numerator;
    const auto& de = R.denominator;
    if (nu.size() == 1 && nu[0] == 1.0 && de.size() == 3 && de[1] == 0.0 && de[2] == 1.0 && de[0] > 0.0) {
        const double w = std::sqrt(de[0]);
        const double printed = lorentzian_printed_closed_form(w, x);
        const bool flipped = std::abs(printed + rep.residue_form.real()) < 1e-8 * std::abs(printed);
        r.summary["printed_closed_form"] = printed;
        r.summary["printed_closed_form_sign_flag"] =
            flipped ? "printed closed form has the opposite sign of the lattice sum" : "no sign discrepancy";
    }
    return r;
}

json load_json_file(const std::string& path, const std::string& what) {
    std::ifstream in(path);
    if (!in) throw ConfigError(what + ": cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

Result run_conformal(const json& p) {
    json poly = p.at("polygon");
    if (poly.is_string()) {
        if (poly.get<std::string>().empty()) throw ConfigError("key 'params.polygon': a polygon file is required");
        poly = load_json_file(poly.get<std::string>(), "key 'params.polygon'");
    }
    if (!poly.is_object() || !poly.contains("vertices")) throw ConfigError("polygon: expected {vertices: [[x, y], ...]}");
    for (const auto& [k, v] : poly.items())
        if (k != "vertices" && k != "prevertices") throw ConfigError("polygon: unknown key '" + k + "'");
    std::vector<cplx> V;
    for (const auto& v : poly.at("vertices")) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw ConfigError("polygon: each vertex must be [x, y]");
        V.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    std::optional<std::vector<double>> guess;
    if (poly.contains("prevertices")) {
        guess.emplace();
        for (const auto& t : poly.at("prevertices")) {
            if (!t.is_number()) throw ConfigError("polygon: prevertices must be numbers");
            guess->push_back(t.get<double>());
        }
    }
    const bool fixed = p.at("fixed-prevertices").get<bool>();
    if (fixed && !guess) throw ConfigError("key 'params.fixed-prevertices': the polygon file lists no prevertices");
    const auto sol = fixed ? solve_prevertices(V, guess, 0, std::numeric_limits<double>::infinity())
                           : solve_prevertices(V, guess, int(integer(p, "max-iter")), num(p, "tol"));

    Result r;
    r.summary["prevertices"] = sol.polygon.prevertices;
    json images = json::array();
    for (const auto& w : cisotti_vertex_images(sol.map)) images.push_back({w.real(), w.imag()});
    r.summary["vertex_images"] = images;
    r.summary["side_ratio_residual"] = sol.ratio_residual;
    r.summary["centroid_residual"] = sol.centroid_residual;
    r.summary["iterations"] = sol.iterations;
    r.summary["gauss_sum"] = sol.polygon.gauss_sum();

    const long n = integer(p, "trace-points");
    const double rad = num(p, "trace-radius");
    if (n < 1) throw ConfigError("key 'params.trace-points': must be positive");
    if (!(rad > 0.0 && rad <= 1.0 - 1e-6)) throw ConfigError("key 'params.trace-radius': must lie in (0, 1 - 1e-6]");
    r.table.columns = {"theta", "re_f", "im_f"};
    for (long k = 0; k < n; ++k) {
        const double th = 2.0 * pi * double(k) / double(n);
        const cplx w = cisotti_eval(sol.map, std::polar(rad, th));
        r.table.rows.push_back({th, w.real(), w.imag()});
    }
    return r;
}

std::vector<double> b_grid(const json& p) {
    const double lo = num(p, "b-min"), hi = num(p, "b-max"), st = num(p, "b-step");
    if (!(st > 0.0) || !(hi >= lo) || !std::isfinite(hi) || !std::isfinite(lo))
        throw ConfigError("b grid needs b-step > 0 and b-max >= b-min");
    const long count = std::lround(std::floor((hi - lo) / st + 1e-9)) + 1;
    if (count > 1000000) throw ConfigError("b grid has more than 10^6 points");
    std::vector<double> g;
    for (long k = 0; k < count; ++k) g.push_back(lo + double(k) * st);
    return g;
}

Result run_zeta_scan(const json& p) {
    const auto xs = xi_coefficients(int(integer(p, "n-max")));
    const auto grid = b_grid(p);
    const auto table = bhat_table(xs, grid, int(integer(p, "m-max")));
    const auto scan = positivity_scan(table);
    Result r;
    r.table.columns = {"m", "b", "b_hat", "tail_bound", "sign_flag"};
    json losses = json::array();
    for (int m = 0; m < table.m_max; ++m) {
        const auto um = std::size_t(m);
        for (std::size_t j = 0; j < grid.size(); ++j)
            r.table.rows.push_back({m, grid[j], table.values[um][j], table.truncation_error_bound[um][j],
                                    std::string(1, scan.flags[um][j])});
        const auto& row = scan.rows[um];
        losses.push_back({{"m", m},
                          {"first_sign_loss", row.first_sign_loss ? json(*row.first_sign_loss) : json("positive on grid")}});
    }
    r.summary["coefficients_positive"] = xs.all_positive();
    r.summary["p_terms"] = xs.p_used;
    r.summary["sign_loss"] = losses;
    return r;
}

Result run_zeta_zeros(const json& p) {
    const auto z = critical_line_zero_scan(num(p, "t-min"), num(p, "t-max"), num(p, "step"));
    Result r;
    json zs = json::array();
    for (const auto& b : z.zeros)
        zs.push_back({{"lo", b.lo}, {"hi", b.hi}, {"t", 0.5 * (b.lo + b.hi)}, {"contour_count", b.contour_count}});
    r.summary["zeros"] = zs;
    r.summary["coarse_step"] = z.coarse_step;
    r.summary["accuracy_warning"] = num(p, "t-max") > 30.0;
    return r;
}

Result run_airy(const json& p) {
    const long order = integer(p, "order");
    if (order < 2 || order > 400) throw ConfigError("key 'params.order': must lie in 2..400");
    const auto [w1, w2] = airy_pair(std::size_t(order));
    // Ai(0) and -Ai'(0)
    const double c1 = 0.35502805388781723926, c2 = 0.25881940379280679840;
    Result r;
    r.table.columns = {"x", "w1", "w2", "Ai", "Bi"};
    for (double x : rlist(p, "x")) {
        const double a = w1(x).real(), b = w2(x).real();
        r.table.rows.push_back({x, a, b, c1 * a - c2 * b, std::sqrt(3.0) * (c1 * a + c2 * b)});
    }
    r.summary["w1"] = terms_json(w1, 0.0, 0.0);
    r.summary["w2"] = terms_json(w2, 0.0, 0.0);
    return r;
}

Result run_weierstrass(const json& p) {
    WeierstrassParams w{integer(p, "a"), num(p, "b")};
    w.validate();
    const auto x = ExactRational::parse_decimal(text(p, "x"));
    const long m_min = integer(p, "m-min"), m_max = integer(p, "m-max");
    if (m_min < 0 || m_max < m_min) throw ConfigError("need 0 <= m-min <= m-max");
    long terms = integer(p, "terms");
    if (terms == 0) terms = w.default_terms();
    Result r;
    r.table.columns = {"m", "alpha", "xi", "h", "quotient", "bound", "exceeds"};
    bool all = true;
    for (long m = m_min; m <= m_max; ++m) {
        const auto q = weierstrass_quotient_probe(w, x, int(m));
        all = all && q.quotient > q.bound;
        r.table.rows.push_back({m, q.alpha, q.xi, q.h, q.quotient, q.bound, q.quotient > q.bound});
    }
    r.summary["f_x"] = weierstrass_eval(w, x, int(terms));
    r.summary["terms"] = terms;
    r.summary["all_exceed_bound"] = all;
    return r;
}

Result run_rlc(const json& p) {
    const double T = num(p, "period");
    const auto N = std::size_t(integer(p, "N"));
    SampledFunction E = named_function(text(p, "source"), 0.5);
    const double s = T / (2.0 * pi);
    for (auto& j : E.jumps) j.location *= s;
    E.evaluator = [g = E.evaluator, s](double t) { return g(t / s); };
    E.period = T;
    CircuitParams c{num(p, "R"), num(p, "L"), num(p, "C"), fourier_coefficients(E, N)};
    const auto sol = rlc_solve(c, N);
    Result r;
    r.table.columns = {"n", "source_a_n", "source_b_n", "current_a_n", "current_b_n"};
    for (std::size_t n = 0; n <= N; ++n)
        r.table.rows.push_back({n, c.source.an(n), c.source.bn(n), sol.current.an(n), sol.current.bn(n)});
    r.summary["max_residual"] = sol.max_residual;
    r.summary["mean_compatibility_residual"] = sol.mean_compatibility_residual;
    return r;
}

Result run_integral_eq(const json& p) {
    const int N = int(integer(p, "N"));
    if (N < 0 || N > 512) throw ConfigError("key 'params.N': must lie in 0..512");
    const double k = num(p, "coupling"), q = num(p, "decay");
    KernelSystem sys;
    sys.N = N;
    sys.g.assign(std::size_t(2 * N + 1), std::vector<cplx>(std::size_t(2 * N + 1)));
    sys.h.resize(std::size_t(2 * N + 1));
    for (int n = -N; n <= N; ++n) {
        sys.h[std::size_t(n + N)] = std::pow(q, std::abs(n));
        for (int m = -N; m <= N; ++m)
            sys.g[std::size_t(n + N)][std::size_t(m + N)] = (n == m ? 1.0 : 0.0) - k * std::pow(q, std::abs(n - m));
    }
    const auto sol = kernel_equation_solve(sys, int(integer(p, "max-iter")), num(p, "tol"));
    Result r;
    r.table.columns = {"n", "re_f_n", "im_f_n"};
    for (int n = -N; n <= N; ++n) {
        const cplx f = sol.f[std::size_t(n + N)];
        r.table.rows.push_back({n, f.real(), f.imag()});
    }
    r.summary["contraction_norm"] = sys.contraction_norm();
    r.summary["iterations"] = sol.iterations;
    r.summary["last_step"] = sol.last_step;
    r.summary["reconstruction_residual"] = sol.reconstruction_residual;
    const std::vector<double> grid{-pi, -0.5 * pi, 0.0, 0.5 * pi};
    const auto rec = fejer_recover(FourierCoeffs::from_complex(sol.f), grid);
    json fr = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) fr.push_back({{"t", grid[i]}, {"fejer_sum", rec[i]}});
    r.summary["fejer_recovery"] = fr;
    return r;
}

const std::vector<Experiment>& registry() {
    static const std::vector<Experiment> ex = {
        {"frobenius", "Frobenius solutions of x^2 y'' + x a(x) y' + b(x) y = 0", OutputFormat::json,
         {{"a", Kind::list, json::array({-3.0}), "coefficients of a(x), ascending"},
          {"b", Kind::list, json::array({0.0, 0.0, 1.0}), "coefficients of b(x), ascending"},
          {"order", Kind::integer, 12, "series order"}},
         run_frobenius},
        {"fourier", "Fourier coefficients and partial-sum errors", OutputFormat::csv,
         {{"function", Kind::text, "poisson-sine", "poisson-sine, square, sawtooth, abs, exp-sin or cos"},
          {"a", Kind::number, 0.5, "parameter of poisson-sine"},
          {"samples", Kind::text, "", "CSV file of t,value rows on [-T/2, T/2); overrides function"},
          {"period", Kind::number, 2.0 * pi, "period of the sample file"},
          {"N", Kind::integer, 12, "number of harmonics"},
          {"grid", Kind::integer, 64, "points of the recovery-error grid"}},
         run_fourier},
        {"residue-sum", "sum over n of R(n) e^{inx} by residues and directly", OutputFormat::json,
         {{"num-coeffs", Kind::list, json::array({1.0}), "numerator, ascending powers"},
          {"den-coeffs", Kind::list, json::array({1.0, 0.0, 1.0}), "denominator, ascending powers"},
          {"x", Kind::number, 0.0, "phase in [0, 2 pi]"},
          {"direct-terms", Kind::integer, 1000000, "direct sum over |n| <= this"}},
         run_residue_sum},
        {"conformal", "disk-to-polygon map with solved prevertices", OutputFormat::json,
         {{"polygon", Kind::text_or_object, "", "polygon JSON file, or inline {vertices, prevertices?}"},
          {"fixed-prevertices", Kind::boolean, false, "use the listed prevertices without solving"},
          {"max-iter", Kind::integer, 60, "Newton iterations"},
          {"tol", Kind::number, 1e-10, "residual tolerance"},
          {"trace-points", Kind::integer, 256, "points of the boundary trace"},
          {"trace-radius", Kind::number, 0.999, "radius of the traced circle"}},
         run_conformal},
        {"zeta-scan", "Bhat_{2m}(b) table and positivity flags", OutputFormat::csv,
         {{"n-max", Kind::integer, 60, "highest xi coefficient index n (a_{2n})"},
          {"m-max", Kind::integer, 5, "rows m = 0..m-max-1"},
          {"b-min", Kind::number, 0.0, "first b"},
          {"b-max", Kind::number, 15.0, "last b"},
          {"b-step", Kind::number, 0.1, "b spacing"}},
         run_zeta_scan},
        {"zeta-zeros", "sign changes of xi on the critical line", OutputFormat::json,
         {{"t-min", Kind::number, 0.0, "start of the t range"},
          {"t-max", Kind::number, 30.0, "end of the t range"},
          {"step", Kind::number, 0.1, "scan step"}},
         run_zeta_zeros},
        {"airy", "power-series solutions of w'' = z w", OutputFormat::csv,
         {{"order", Kind::integer, 60, "series order"},
          {"x", Kind::list, json::array({-2.0, -1.0, 0.0, 1.0, 2.0}), "evaluation points"}},
         run_airy},
        {"weierstrass", "difference quotients of sum b^n cos(a^n pi x)", OutputFormat::json,
         {{"a", Kind::integer, 9, "odd integer a"},
          {"b", Kind::number, 0.9, "0 < b < 1"},
          {"x", Kind::text, "0.3", "decimal point, read exactly"},
          {"m-min", Kind::integer, 1, "first scale"},
          {"m-max", Kind::integer, 6, "last scale"},
          {"terms", Kind::integer, 0, "series terms; 0 picks b^M < 1e-14"}},
         run_weierstrass},
        {"rlc", "periodic current of a series RLC circuit", OutputFormat::csv,
         {{"R", Kind::number, 1.0, "resistance"},
          {"L", Kind::number, 0.5, "inductance"},
          {"C", Kind::number, 1.0, "capacitance; \"inf\" removes the capacitor"},
          {"source", Kind::text, "square", "source waveform (named function)"},
          {"period", Kind::number, 2.0 * pi, "period"},
          {"N", Kind::integer, 16, "harmonics"}},
         run_rlc},
        {"integral-eq", "kernel equation sum_m g_nm f_m = h_n by iteration", OutputFormat::csv,
         {{"N", Kind::integer, 8, "indices -N..N"},
          {"coupling", Kind::number, 0.2, "g_nm = delta_nm - coupling * decay^|n-m|"},
          {"decay", Kind::number, 0.5, "also h_n = decay^|n|"},
          {"max-iter", Kind::integer, 500, "iteration budget"},
          {"tol", Kind::number, 1e-14, "step tolerance"}},
         run_integral_eq},
    };
    return ex;
}

const Experiment& find(const std::string& name) {
    for (const auto& e : registry())
        if (e.name == name) return e;
    std::string all;
    for (const auto& e : registry()) all += (all.empty() ? "" : ", ") + e.name;
    throw ConfigError("unknown experiment '" + name + "' (" + all + ")");
}

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw ConfigError("key 'format': expected csv or json, got '" + s + "'");
}

// JSON with every double written by fmt17.
void write_json(std::ostream& os, const json& j, int indent) {
    const std::string pad(std::size_t(indent) * 2, ' '), in(std::size_t(indent + 1) * 2, ' ');
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            os << (first ? "" : ",\n") << in << json(k).dump() << ": ";
            write_json(os, v, indent + 1);
            first = false;
        }
        os << "\n" << pad << "}";
        return;
    }
    case json::value_t::array: {
        const bool flat = std::none_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); });
        if (j.empty() || flat) {
            os << "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                os << (i ? ", " : "");
                write_json(os, j[i], indent + 1);
            }
            os << "]";
            return;
        }
        os << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            os << (i ? ",\n" : "") << in;
            write_json(os, j[i], indent + 1);
        }
        os << "\n" << pad << "]";
        return;
    }
    case json::value_t::number_float: {
        const double d = j.get<double>();
        os << (std::isfinite(d) ? fmt17(d) : "null");
        return;
    }
    default: os << j.dump();
    }
}

std::string csv_cell(const json& v) {
    if (v.is_number_float()) return fmt17(v.get<double>());
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return v.dump();
}

std::string compact(const json& j) {
    std::ostringstream os;
    write_json(os, j, 0);
    std::string s = os.str(), out;
    // Single line for comment headers.
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '"' && (i == 0 || s[i - 1] != '\\')) in_str = !in_str;
        if (!in_str && c == '\n') {
            while (i + 1 < s.size() && s[i + 1] == ' ') ++i;
            if (!out.empty() && out.back() == ',') out += ' ';
            continue;
        }
        out += c;
    }
    return out;
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    ExperimentConfig c;
    for (const auto& [k, v] : j.items()) {
        if (k == "experiment") {
            if (!v.is_string()) throw ConfigError("key 'experiment': expected a string");
            c.experiment = v.get<std::string>();
        } else if (k == "params") {
            if (!v.is_object()) throw ConfigError("key 'params': expected an object");
            c.params = v;
        } else if (k == "output_path") {
            if (!v.is_string()) throw ConfigError("key 'output_path': expected a string");
            c.output_path = v.get<std::string>();
        } else if (k == "format") {
            if (!v.is_string()) throw ConfigError("key 'format': expected a string");
            c.format = parse_format(v.get<std::string>());
        } else if (k != "toolkit") {
            throw ConfigError("unknown key '" + k + "'");
        }
    }
    if (c.experiment.empty()) throw ConfigError("key 'experiment' is missing");
    const auto& e = find(c.experiment);
    for (const auto& [k, v] : c.params.items()) {
        auto it = std::find_if(e.params.begin(), e.params.end(), [&](const Param& p) { return p.name == k; });
        if (it == e.params.end()) throw ConfigError("unknown key 'params." + k + "' for experiment " + e.name);
        check_kind(*it, v);
    }
    return c;
}

json ExperimentConfig::to_json() const {
    json j;
    j["experiment"] = experiment;
    j["params"] = params;
    j["output_path"] = output_path;
    if (format) j["format"] = *format == OutputFormat::csv ? "csv" : "json";
    return j;
}

std::vector<std::string> experiment_names() {
    std::vector<std::string> n;
    for (const auto& e : registry()) n.push_back(e.name);
    return n;
}

Artifact run_experiment(const ExperimentConfig& cfg0) {
    const ExperimentConfig cfg = ExperimentConfig::from_json(cfg0.to_json());
    const auto& e = find(cfg.experiment);
    json params = json::object();
    for (const auto& p : e.params) params[p.name] = cfg.params.contains(p.name) ? cfg.params.at(p.name) : p.def;
    Artifact a;
    a.default_format = e.format;
    a.resolved = {{"experiment", e.name},
                  {"params", params},
                  {"output_path", cfg.output_path},
                  {"format", (cfg.format.value_or(e.format) == OutputFormat::csv) ? "csv" : "json"}};
    try {
        auto r = e.run(params);
        a.summary = std::move(r.summary);
        a.table = std::move(r.table);
    } catch (const json::exception& ex) {
        throw ConfigError(std::string("parameter error: ") + ex.what());
    }
    return a;
}

std::string render(const Artifact& a, OutputFormat fmt) {
    std::ostringstream os;
    if (fmt == OutputFormat::json) {
        json out;
        out["toolkit"] = toolkit_version;
        out["config"] = a.resolved;
        out["result"] = a.summary;
        if (!a.table.columns.empty()) {
            json rows = json::array();
            for (const auto& row : a.table.rows) rows.push_back(json(row));
            out["table"] = {{"columns", a.table.columns}, {"rows", rows}};
        }
        write_json(os, out, 0);
        os << "\n";
        return os.str();
    }
    os << "# " << toolkit_version << "\n";
    os << "# config: " << compact(a.resolved) << "\n";
    if (!a.summary.empty()) os << "# result: " << compact(a.summary) << "\n";
    if (a.table.columns.empty()) {
        os << "key,value\n";
        for (const auto& [k, v] : a.summary.items())
            os << csv_cell(json(k)) << "," << (v.is_structured() ? csv_cell(json(compact(v))) : csv_cell(v)) << "\n";
        return os.str();
    }
    for (std::size_t i = 0; i < a.table.columns.size(); ++i) os << (i ? "," : "") << a.table.columns[i];
    os << "\n";
    for (const auto& row : a.table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
        os << "\n";
    }
    return os.str();
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"calckit experiment runner"};
    app.set_version_flag("--version", toolkit_version);
    std::string config_path, out_path, format;
    app.add_option("--config", config_path, "JSON config {experiment, params, output_path, format}");
    app.add_option("--out", out_path, "output file (default: standard output)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.require_subcommand(0, 1);
    app.fallthrough();

    std::map<std::string, std::map<std::string, std::string>> flag_values;
    std::map<std::string, CLI::App*> subs;
    for (const auto& e : registry()) {
        auto* sub = app.add_subcommand(e.name, e.help);
        subs[e.name] = sub;
        for (const auto& p : e.params) {
            std::string help = p.help + " [default " + (p.def.is_string() ? p.def.get<std::string>() : p.def.dump()) + "]";
            sub->add_option("--" + p.name, flag_values[e.name][p.name], help)->allow_extra_args(false);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return 0;
        }
        err << "config error: " << e.what() << "\n";
        return 3;
    }

    try {
        ExperimentConfig cfg;
        if (!config_path.empty()) cfg = ExperimentConfig::from_json(load_json_file(config_path, "--config"));
        std::string chosen;
        for (const auto& [name, sub] : subs)
            if (sub->parsed()) chosen = name;
        if (!chosen.empty()) {
            if (!cfg.experiment.empty() && cfg.experiment != chosen)
                throw ConfigError("--config names experiment '" + cfg.experiment + "' but '" + chosen + "' was requested");
            cfg.experiment = chosen;
            const auto& e = find(chosen);
            for (const auto& p : e.params)
                if (subs[chosen]->count("--" + p.name) > 0) cfg.params[p.name] = parse_flag(p, flag_values[chosen][p.name]);
        }
        if (cfg.experiment.empty()) throw ConfigError("no experiment given; use a subcommand or --config");
        if (!out_path.empty()) cfg.output_path = out_path;
        if (!format.empty()) cfg.format = parse_format(format);

        const Artifact a = run_experiment(cfg);
        const std::string text = render(a, cfg.format.value_or(a.default_format));
        if (cfg.output_path.empty()) {
            out << text;
        } else {
            std::ofstream f(cfg.output_path, std::ios::binary);
            if (!f) throw ConfigError("cannot write '" + cfg.output_path + "'");
            f << text;
        }
        return 0;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << "\n";
        return 3;
    } catch (const ToleranceError& e) {
        err << "tolerance not met: " << e.what() << " (best estimate " << fmt17(e.best_estimate.real())
            << ", error estimate " << fmt17(e.error_estimate) << ")\n";
        return 2;
    } catch (const ConvergenceError& e) {
        err << "tolerance not met: " << e.what() << " (residual " << fmt17(e.best_residual) << ")\n";
        return 2;
    } catch (const Error& e) {
        err << "tolerance not met: " << e.what() << "\n";
        return 2;
    }
}

} // namespace calckit
