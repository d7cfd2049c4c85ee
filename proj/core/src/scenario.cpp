#include "abelprop/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "abelprop/errors.hpp"

namespace abelprop {

namespace {

const std::set<std::string> kKeys = {
    "d1", "d2", "d3", "b1", "b2", "k1", "k2", "N", "x1_0", "x2_0", "x3_0",
    "t0", "horizon", "step", "order", "C", "branch", "tol_hard", "tol_diag", "out_dir"};

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ConfigError("key `" + key + "` has a non-numeric value `" + value + "`", key);
    return v;
}

}  // namespace

ScenarioConfig parse_scenario(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + " is not `key = value`");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!kKeys.count(key)) throw ConfigError("unknown key `" + key + "`", key);
        if (kv.count(key)) throw ConfigError("duplicate key `" + key + "`", key);
        if (value.empty()) throw ConfigError("key `" + key + "` has an empty value", key);
        kv[key] = value;
    }
    for (const std::string& key : kKeys)
        if (!kv.count(key)) throw ConfigError("missing required key `" + key + "`", key);

    ScenarioConfig cfg;
    cfg.params.d1 = parse_double("d1", kv["d1"]);
    cfg.params.d2 = parse_double("d2", kv["d2"]);
    cfg.params.d3 = parse_double("d3", kv["d3"]);
    cfg.params.b1 = parse_double("b1", kv["b1"]);
    cfg.params.b2 = parse_double("b2", kv["b2"]);
    cfg.params.k1 = parse_double("k1", kv["k1"]);
    cfg.params.k2 = parse_double("k2", kv["k2"]);
    cfg.params.N = parse_double("N", kv["N"]);
    cfg.s0.x1 = parse_double("x1_0", kv["x1_0"]);
    cfg.s0.x2 = parse_double("x2_0", kv["x2_0"]);
    cfg.s0.x3 = parse_double("x3_0", kv["x3_0"]);
    cfg.t0 = parse_double("t0", kv["t0"]);
    cfg.horizon = parse_double("horizon", kv["horizon"]);
    cfg.step = parse_double("step", kv["step"]);
    cfg.C = parse_double("C", kv["C"]);
    cfg.tol_hard = parse_double("tol_hard", kv["tol_hard"]);
    cfg.tol_diag = parse_double("tol_diag", kv["tol_diag"]);
    cfg.out_dir = kv["out_dir"];

    const double order_raw = parse_double("order", kv["order"]);
    if (order_raw != std::floor(order_raw) || order_raw < 2.0 || order_raw > 64.0)
        throw ConfigError("key `order` must be an integer in [2, 64]", "order");
    cfg.order = static_cast<int>(order_raw);

    if (kv["branch"] != "+" && kv["branch"] != "-")
        throw ConfigError("key `branch` must be `+` or `-`, got `" + kv["branch"] + "`",
                          "branch");
    cfg.branch = kv["branch"][0];

    // Model invariants surface as config errors so the CLI exits with 1.
    const std::pair<const char*, double> rates[] = {
        {"d1", cfg.params.d1}, {"d2", cfg.params.d2}, {"d3", cfg.params.d3},
        {"b1", cfg.params.b1}, {"b2", cfg.params.b2}, {"k1", cfg.params.k1},
        {"k2", cfg.params.k2}, {"N", cfg.params.N}};
    for (const auto& [name, value] : rates)
        if (!std::isfinite(value) || value <= 0.0)
            throw ConfigError("key `" + std::string(name) + "` must be finite and > 0", name);
    if (!cfg.s0.finite()) throw ConfigError("initial state must be finite");
    if (!(cfg.horizon > 0.0)) throw ConfigError("key `horizon` must be > 0", "horizon");
    if (!(cfg.step > 0.0)) throw ConfigError("key `step` must be > 0", "step");
    if (cfg.C == 0.0) throw ConfigError("key `C` must be nonzero", "C");
    if (std::isnan(cfg.tol_hard) || cfg.tol_hard < 0.0)
        throw ConfigError("key `tol_hard` must be >= 0", "tol_hard");
    if (std::isnan(cfg.tol_diag) || cfg.tol_diag < 0.0)
        throw ConfigError("key `tol_diag` must be >= 0", "tol_diag");
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file `" + path + "`");
    return parse_scenario(in);
}

}  // namespace abelprop
