#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "degen/coefficients.hpp"

namespace degen {

/// Parsed run configuration: a preset (or inline separable polynomial
/// fields), grid parameters, boundary data, and output options. The file
/// format is flat `key = value` lines under [section] headers.
struct RunConfig {
    std::string preset = "asian"; // or "custom"
    AsianParams asian;
    // custom separable fields, coefficients in ascending powers
    std::vector<double> a_x, a_t{1.0};
    std::vector<double> b_x, b_t{1.0};
    std::vector<double> c_x, c_t{1.0};
    std::vector<double> src_x, src_t{1.0};
    std::optional<BoundaryCase> forced_case;
    std::string f_spec = "default"; // default | tanh | sinpi | zero | one | poly:...
    std::optional<std::vector<double>> g0_poly, g1_poly; // Dirichlet data, poly in t

    int grid_j = 100, grid_n = 100;
    double horizon = 1.0, lambda = 0.25;

    bool strict = true;
    std::uint64_t seed = 20260810ULL;
    std::string out_dir = ".";
    std::vector<double> snapshots;                 // empty = every level
    std::vector<std::pair<int, int>> levels;       // for converge
};

/// Parses the file; throws ConfigError naming the offending key.
RunConfig parse_config_file(const std::string& path);

/// Parses "J0xN0,J1xN1,..." into level pairs.
std::vector<std::pair<int, int>> parse_levels(const std::string& spec);

/// Materializes the configured problem; classification of custom problems
/// uses time samples over [0, horizon].
Problem build_problem(const RunConfig& cfg);

/// Formats a double with 17 significant digits (period decimal separator).
std::string format_number(double v);

/// Command drivers shared by the CLI. Exit codes: 0 success, 1 solver error
/// or failed verification, 2 strict-mode stability refusal, 3 bad config.
int cmd_solve(const RunConfig& cfg);
int cmd_diagnose(const RunConfig& cfg);
int cmd_converge(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);

} // namespace degen
