#include <doctest.h>

#include "calckit/cli.hpp"
#include "calckit/errors.hpp"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace calckit;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

std::string binary() {
    const char* b = std::getenv("CALCKIT_BIN");
    return b ? b : "calckit";
}

std::string preset(const std::string& name) {
    const char* d = std::getenv("CALCKIT_CONFIGS");
    return (fs::path(d ? d : "configs") / name).string();
}

// Runs the binary; stderr is folded into the captured text.
RunResult run(const std::string& args) {
    const std::string cmd = "'" + binary() + "' " + args + " 2>&1";
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

// In-process run through run_cli.
RunResult run_in_process(std::vector<std::string> args) {
    args.insert(args.begin(), "calckit");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    RunResult r;
    r.code = run_cli(int(argv.size()), argv.data(), out, err);
    r.out = out.str() + err.str();
    return r;
}

fs::path scratch() {
    static const fs::path d = [] {
        auto p = fs::temp_directory_path() / ("calckit_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return d;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

json config_of(const std::string& csv) {
    for (const auto& l : lines(csv))
        if (l.rfind("# config: ", 0) == 0) return json::parse(l.substr(10));
    return nullptr;
}

} // namespace

TEST_CASE("every experiment runs with its defaults") {
    const auto names = experiment_names();
    CHECK(names.size() == 10);
    for (const auto& name : names) {
        if (name == "conformal") continue;  // needs a polygon
        ExperimentConfig cfg;
        cfg.experiment = name;
        const Artifact a = run_experiment(cfg);
        CHECK(a.resolved["experiment"] == name);
        CHECK(a.resolved["params"].is_object());
        for (auto fmt : {OutputFormat::csv, OutputFormat::json}) {
            const std::string text = render(a, fmt);
            CHECK(text.find(toolkit_version) != std::string::npos);
        }
    }
}

TEST_CASE("config parsing is strict") {
    CHECK_THROWS_AS(ExperimentConfig::from_json(json{{"experiment", "nope"}}), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json(json{{"experiment", "airy"}, {"colour", 1}}), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json(json{{"experiment", "airy"}, {"format", "xml"}}), ConfigError);
    ExperimentConfig bad;
    bad.experiment = "airy";
    bad.params = {{"ordr", 10}};
    CHECK_THROWS_AS(run_experiment(bad), ConfigError);
    bad.params = {{"order", "ten"}};
    CHECK_THROWS_AS(run_experiment(bad), ConfigError);
    const auto cfg = ExperimentConfig::from_json(json{{"experiment", "airy"}, {"params", {{"order", 20}}}, {"format", "json"}});
    CHECK(ExperimentConfig::from_json(cfg.to_json()).to_json() == cfg.to_json());
}

TEST_CASE("zeta-scan table shape") {
    const auto r = run("zeta-scan --m-max 5 --b-max 15 --b-step 0.1");
    REQUIRE(r.code == 0);
    const auto L = lines(r.out);
    std::size_t header = 0;
    while (header < L.size() && L[header].rfind("#", 0) == 0) ++header;
    REQUIRE(header < L.size());
    CHECK(L[header] == "m,b,b_hat,tail_bound,sign_flag");
    CHECK(L.size() - header - 1 == 5 * 151);
    CHECK(L[header + 1].rfind("0,0,", 0) == 0);
}

TEST_CASE("conformal on the square polygon file") {
    const auto r = run("conformal --polygon '" + preset("square.json") + "' --format json");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    const auto& pre = j["result"]["prevertices"];
    REQUIRE(pre.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(pre[k].get<double>() - k * std::numbers::pi / 2) < 1e-6);
    CHECK(j["result"]["gauss_sum"].get<double>() == -2.0);
    const auto preset_run = run("--config '" + preset("conformal_square.json") + "' --format json");
    REQUIRE(preset_run.code == 0);
    CHECK(json::parse(preset_run.out)["result"]["prevertices"] == pre);
    const auto inline_run = run(R"(conformal --polygon '{"vertices": [[1, -1], [1, 1], [-1, 1], [-1, -1]]}' --format json)");
    REQUIRE(inline_run.code == 0);
    CHECK(json::parse(inline_run.out)["result"]["prevertices"] == pre);
    CHECK(run(R"(conformal --polygon '{"vertices": ')").code == 3);
}

TEST_CASE("frobenius preset") {
    const auto r = run("--config '" + preset("frobenius_integer_gap.json") + "'");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    bool found4 = false, found6 = false;
    for (const auto& t : j["result"]["y1"]["terms"]) {
        if (t["power"] == 4) found4 = t["coeff"].get<double>() == -0.0625;
        if (t["power"] == 6) found6 = std::abs(t["coeff"].get<double>() - 1.0 / 192.0) < 1e-15;
    }
    CHECK(found4);
    CHECK(found6);
    CHECK(r.out.find("-0.0625") != std::string::npos);
}

TEST_CASE("every preset runs") {
    for (const auto& e : fs::directory_iterator(fs::path(preset("")))) {
        if (e.path().filename() == "square.json") continue;  // polygon file, not a config
        const auto r = run("--config '" + e.path().string() + "'");
        CHECK_MESSAGE(r.code == 0, e.path().string() << ": " << r.out);
    }
}

TEST_CASE("outputs are byte-identical across runs and echo the config") {
    for (const std::string args : {"weierstrass", "fourier --N 8", "residue-sum --x 0.7 --direct-terms 1000",
                                   "airy --x 0,1,2", "zeta-zeros --t-max 22"}) {
        const auto a = run(args), b = run(args);
        REQUIRE(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out.find(toolkit_version) != std::string::npos);
    }
    const auto csv = run("fourier --N 8 --a 0.25");
    const json c = config_of(csv.out);
    REQUIRE(c.is_object());
    CHECK(c["params"]["N"] == 8);
    CHECK(c["params"]["a"] == 0.25);
    CHECK(c["params"]["function"] == "poisson-sine");
    const json j = json::parse(run("fourier --N 8 --format json").out);
    CHECK(j["toolkit"] == toolkit_version);
    CHECK(j["config"]["params"]["grid"] == 64);
}

TEST_CASE("resolved config reproduces the run") {
    const auto first = run("weierstrass --m-max 3 --format json");
    REQUIRE(first.code == 0);
    const json j = json::parse(first.out);
    const auto path = scratch() / "echo.json";
    std::ofstream(path) << j["config"].dump(2);
    const auto again = run("--config '" + path.string() + "'");
    CHECK(again.code == 0);
    CHECK(again.out == first.out);
}

TEST_CASE("flags override config values and --out writes a file") {
    const auto out = scratch() / "override.csv";
    const auto r = run("--config '" + preset("fourier_poisson_sine.json") + "' fourier --N 5 --format csv --out '" +
                       out.string() + "'");
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(out);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(config_of(text)["params"]["N"] == 5);
    CHECK(lines(text).back().rfind("5,", 0) == 0);
}

TEST_CASE("exit codes") {
    CHECK(run("--version").out.find(toolkit_version) != std::string::npos);
    CHECK(run("--version").code == 0);
    CHECK(run("airy --bogus 1").code == 3);
    CHECK(run("airy --order abc").code == 3);
    CHECK(run("").code == 3);

    const auto unknown = scratch() / "unknown.json";
    std::ofstream(unknown) << R"({"experiment": "airy", "params": {"order": 10}, "extra": true})";
    const auto u = run("--config '" + unknown.string() + "'");
    CHECK(u.code == 3);
    CHECK(u.out.find("extra") != std::string::npos);

    const auto badkey = scratch() / "badkey.json";
    std::ofstream(badkey) << R"({"experiment": "airy", "params": {"ordr": 10}})";
    const auto b = run("--config '" + badkey.string() + "'");
    CHECK(b.code == 3);
    CHECK(b.out.find("ordr") != std::string::npos);

    const auto syntax = scratch() / "syntax.json";
    std::ofstream(syntax) << "{\n  \"experiment\": \"airy\",\n  \"params\": {\"order\": 10,}\n}\n";
    const auto s = run("--config '" + syntax.string() + "'");
    CHECK(s.code == 3);
    CHECK(s.out.find("line 3") != std::string::npos);

    const auto t = run("integral-eq --max-iter 1");
    CHECK(t.code == 2);
    CHECK(t.out.find("tolerance not met") != std::string::npos);
    CHECK(run("conformal --polygon '" + preset("square.json") + "' --max-iter 0 --tol 1e-300").code == 2);
}

TEST_CASE("in-process runner matches the binary") {
    const auto a = run_in_process({"weierstrass", "--m-max", "2"});
    const auto b = run("weierstrass --m-max 2");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(run_in_process({"rlc", "--R", "-1"}).code == 3);
}
