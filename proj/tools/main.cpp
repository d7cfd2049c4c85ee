#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abelprop/commands.hpp"
#include "abelprop/errors.hpp"
#include "abelprop/scenario.hpp"

namespace {

struct CliArgs {
    std::string config;
    std::string order;
    std::string branch;
    std::string out;
    bool trig_fallback = false;
    std::vector<double> cubic;
};

void add_common(CLI::App* cmd, CliArgs& args, bool with_cubic) {
    cmd->add_option("--config", args.config, "scenario file (key = value lines)")->required();
    cmd->add_option("--order", args.order, "override the series truncation order");
    cmd->add_option("--branch", args.branch, "override the sign branch (+ or -)");
    cmd->add_option("--out", args.out, "override the output directory");
    cmd->add_flag("--trig-fallback", args.trig_fallback,
                  "allow the trigonometric root path when delta1 < 0");
    if (with_cubic)
        cmd->add_option("--cubic", args.cubic,
                        "analyze this cubic D E F G directly instead of the scenario's")
            ->expected(4);
}

int apply_overrides(abelprop::ScenarioConfig& cfg, const CliArgs& args) {
    if (!args.order.empty()) {
        char* end = nullptr;
        const long v = std::strtol(args.order.c_str(), &end, 10);
        if (end == args.order.c_str() || *end != '\0' || v < 2 || v > 64) {
            std::cerr << "error: --order must be an integer in [2, 64]\n";
            return 1;
        }
        cfg.order = static_cast<int>(v);
    }
    if (!args.branch.empty()) {
        if (args.branch != "+" && args.branch != "-") {
            std::cerr << "error: --branch must be + or -\n";
            return 1;
        }
        cfg.branch = args.branch[0];
    }
    if (!args.out.empty()) cfg.out_dir = args.out;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"series solutions and residual diagnostics for the three-compartment "
                 "virus propagation model"};
    app.require_subcommand(1);

    CliArgs args;
    CLI::App* solve = app.add_subcommand("solve", "series coefficients and sampled trajectory");
    CLI::App* reference = app.add_subcommand("reference", "fixed-step RK4 trajectory with drift");
    CLI::App* roots = app.add_subcommand("roots", "cubic data, discriminants, roots and shifts");
    CLI::App* validate = app.add_subcommand("validate", "full residual report");
    CLI::App* compare = app.add_subcommand("compare", "series vs reference deviation table");
    add_common(solve, args, false);
    add_common(reference, args, false);
    add_common(roots, args, true);
    add_common(validate, args, false);
    add_common(compare, args, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    abelprop::ScenarioConfig cfg;
    try {
        cfg = abelprop::load_scenario(args.config);
    } catch (const abelprop::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    if (const int rc = apply_overrides(cfg, args); rc != 0) return rc;

    abelprop::CommandOptions opt;
    opt.trig_fallback = args.trig_fallback;
    if (const char* env = std::getenv("ABELPROP_RATIONAL"); env && std::string(env) == "1")
        opt.exact_reversion = true;
    if (!args.cubic.empty())
        opt.synthetic_cubic = std::array<double, 4>{args.cubic[0], args.cubic[1], args.cubic[2],
                                                    args.cubic[3]};

    if (*solve) return abelprop::cmd_solve(cfg, opt);
    if (*reference) return abelprop::cmd_reference(cfg, opt);
    if (*roots) return abelprop::cmd_roots(cfg, opt);
    if (*validate) return abelprop::cmd_validate(cfg, opt);
    if (*compare) return abelprop::cmd_compare(cfg, opt);
    return 1;
}
