#pragma once

#include <iosfwd>
#include <string>

#include "abelprop/model.hpp"

namespace abelprop {

// Flat key = value scenario file. `#` starts a comment, keys are exactly
//   d1 d2 d3 b1 b2 k1 k2 N x1_0 x2_0 x3_0 t0 horizon step order C branch
//   tol_hard tol_diag out_dir
// and all of them are required. Unknown or duplicate keys are rejected with
// the offending key name.
struct ScenarioConfig {
    ModelParams params{};
    State s0{};
    double t0 = 0.0;
    double horizon = 1.0;
    double step = 1e-3;
    int order = 24;
    double C = 1.0;
    char branch = '+';
    double tol_hard = 1e-9;
    double tol_diag = 1e-3;
    std::string out_dir = ".";
};

ScenarioConfig parse_scenario(std::istream& in);
ScenarioConfig load_scenario(const std::string& path);

}  // namespace abelprop
