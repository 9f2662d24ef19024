// Command-line front end: solve / diagnose a single run, drive a refinement
// study, or run the verification suite. See README.md for the config format.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "degen/config.hpp"
#include "degen/errors.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::string levels;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool no_strict = false;
};

void attach(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "config file (key = value sections)");
    cmd->add_option("--out", flags.out_dir, "output directory");
    cmd->add_option("--seed", flags.seed, "seed for the random sweeps")
        ->each([&flags](const std::string&) { flags.seed_set = true; });
    cmd->add_flag("--no-strict", flags.no_strict, "run even when the stability check fails");
    cmd->add_option("--levels", flags.levels, "refinement levels J0xN0,J1xN1,...");
}

int load_and_run(const CommonFlags& flags, int (*command)(const degen::RunConfig&)) {
    degen::RunConfig cfg;
    try {
        if (!flags.config_path.empty()) cfg = degen::parse_config_file(flags.config_path);
        if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
        if (!flags.levels.empty()) cfg.levels = degen::parse_levels(flags.levels);
        if (flags.seed_set) cfg.seed = flags.seed;
        if (flags.no_strict) cfg.strict = false;
    } catch (const degen::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    }
    return command(cfg);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-difference solver for degenerate parabolic problems on [0,1]"};
    app.require_subcommand(1);

    CommonFlags solve_flags, diagnose_flags, converge_flags, verify_flags;
    CLI::App* solve_cmd = app.add_subcommand("solve", "run one problem and emit CSV + report");
    attach(solve_cmd, solve_flags);
    CLI::App* diagnose_cmd =
        app.add_subcommand("diagnose", "run one problem and emit only the diagnostics");
    attach(diagnose_cmd, diagnose_flags);
    CLI::App* converge_cmd =
        app.add_subcommand("converge", "refinement study over the given levels");
    attach(converge_cmd, converge_flags);
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run the inequality suites and write verify.txt");
    attach(verify_cmd, verify_flags);

    CLI11_PARSE(app, argc, argv);

    if (solve_cmd->parsed()) return load_and_run(solve_flags, degen::cmd_solve);
    if (diagnose_cmd->parsed()) return load_and_run(diagnose_flags, degen::cmd_diagnose);
    if (converge_cmd->parsed()) return load_and_run(converge_flags, degen::cmd_converge);
    if (verify_cmd->parsed()) return load_and_run(verify_flags, degen::cmd_verify);
    return 3;
}
