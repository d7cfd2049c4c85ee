#pragma once

#include <string>

#include "abelprop/model.hpp"

namespace abelprop {

// Shortest representation with 17 significant digits, locale independent.
// Round-trips every double exactly.
std::string fmt_g17(double v);

// Creates parent directories as needed. Throws DomainError on I/O failure.
void write_file(const std::string& path, const std::string& content);

// Header `t,x1,x2,x3` (plus `,drift` when requested), one row per sample,
// `\n` line endings.
std::string trajectory_csv(const Trajectory& traj, const ModelParams& p, bool with_drift);

}  // namespace abelprop
