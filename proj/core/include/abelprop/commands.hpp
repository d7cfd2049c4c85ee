#pragma once

#include <array>
#include <optional>

#include "abelprop/scenario.hpp"

namespace abelprop {

struct CommandOptions {
    // Enables the cosine root path for delta1 < 0 (beyond the radical
    // formula; three real roots).
    bool trig_fallback = false;
    // Routes the sigma -> rho reversion through exact rational arithmetic.
    // Also switched on by ABELPROP_RATIONAL=1.
    bool exact_reversion = false;
    // roots subcommand only: analyze this (D, E, F, G) directly instead of
    // deriving the cubic from the scenario.
    std::optional<std::array<double, 4>> synthetic_cubic;
};

// Exit codes shared by all commands:
//   0  success
//   1  config error (reported by the caller that loads the scenario)
//   2  pipeline/domain error, or a hard identity out of tolerance
//   3  only diagnostic residual families out of tolerance
int cmd_solve(const ScenarioConfig& cfg, const CommandOptions& opt = {});
int cmd_reference(const ScenarioConfig& cfg, const CommandOptions& opt = {});
int cmd_roots(const ScenarioConfig& cfg, const CommandOptions& opt = {});
int cmd_validate(const ScenarioConfig& cfg, const CommandOptions& opt = {});
int cmd_compare(const ScenarioConfig& cfg, const CommandOptions& opt = {});

}  // namespace abelprop
