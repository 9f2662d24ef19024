#include "degen/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "degen/diagnostics.hpp"
#include "degen/errors.hpp"
#include "degen/grid.hpp"
#include "degen/rng.hpp"
#include "degen/scheme.hpp"
#include "degen/weakform.hpp"

namespace degen {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<double> parse_number_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "': cannot parse number '" + item + "'");
        }
    }
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    const auto nums = parse_number_list(key, value);
    if (nums.size() != 1) throw ConfigError("key '" + key + "' expects a single number");
    return nums[0];
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw ConfigError("key '" + key + "' expects an integer");
    return i;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("key '" + key + "' expects true/false");
}

} // namespace

std::vector<std::pair<int, int>> parse_levels(const std::string& spec) {
    std::vector<std::pair<int, int>> levels;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto cut = item.find('x');
        if (cut == std::string::npos)
            throw ConfigError("level '" + item + "' is not of the form JxN");
        try {
            levels.emplace_back(std::stoi(item.substr(0, cut)),
                                std::stoi(item.substr(cut + 1)));
        } catch (const std::exception&) {
            throw ConfigError("level '" + item + "' is not of the form JxN");
        }
    }
    return levels;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    RunConfig cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("malformed section header at line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (section != "problem" && section != "grid" && section != "run" &&
                section != "output")
                throw ConfigError("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value' at line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string scoped = section.empty() ? key : section + "." + key;

        if (scoped == "problem.preset") {
            cfg.preset = value;
        } else if (scoped == "problem.sigma") {
            cfg.asian.sigma = parse_double(key, value);
        } else if (scoped == "problem.r") {
            cfg.asian.r = parse_double(key, value);
        } else if (scoped == "problem.d0") {
            cfg.asian.d0 = parse_double(key, value);
        } else if (scoped == "problem.f") {
            cfg.f_spec = value;
        } else if (scoped == "problem.A_x") {
            cfg.a_x = parse_number_list(key, value);
        } else if (scoped == "problem.A_t") {
            cfg.a_t = parse_number_list(key, value);
        } else if (scoped == "problem.B_x") {
            cfg.b_x = parse_number_list(key, value);
        } else if (scoped == "problem.B_t") {
            cfg.b_t = parse_number_list(key, value);
        } else if (scoped == "problem.C_x") {
            cfg.c_x = parse_number_list(key, value);
        } else if (scoped == "problem.C_t") {
            cfg.c_t = parse_number_list(key, value);
        } else if (scoped == "problem.F_x") {
            cfg.src_x = parse_number_list(key, value);
        } else if (scoped == "problem.F_t") {
            cfg.src_t = parse_number_list(key, value);
        } else if (scoped == "problem.case") {
            cfg.forced_case = boundary_case_from_string(value);
        } else if (scoped == "problem.g0") {
            cfg.g0_poly = parse_number_list(key, value);
        } else if (scoped == "problem.g1") {
            cfg.g1_poly = parse_number_list(key, value);
        } else if (scoped == "grid.J") {
            cfg.grid_j = parse_int(key, value);
        } else if (scoped == "grid.N") {
            cfg.grid_n = parse_int(key, value);
        } else if (scoped == "grid.T") {
            cfg.horizon = parse_double(key, value);
        } else if (scoped == "grid.lambda") {
            cfg.lambda = parse_double(key, value);
        } else if (scoped == "run.strict") {
            cfg.strict = parse_bool(key, value);
        } else if (scoped == "run.seed") {
            try {
                cfg.seed = std::stoull(value);
            } catch (const std::exception&) {
                throw ConfigError("key 'seed' expects an unsigned integer");
            }
        } else if (scoped == "run.levels") {
            cfg.levels = parse_levels(value);
        } else if (scoped == "output.dir") {
            cfg.out_dir = value;
        } else if (scoped == "output.snapshots") {
            cfg.snapshots = parse_number_list(key, value);
        } else {
            throw ConfigError("unknown config key '" + scoped + "' at line " +
                              std::to_string(lineno));
        }
    }
    return cfg;
}

namespace {

std::function<double(double)> initial_profile(const std::string& spec) {
    if (spec == "default") return {};
    if (spec == "tanh") return [](double x) { return std::tanh(x); };
    if (spec == "sinpi")
        return [](double x) { return std::sin(3.141592653589793238462643383280 * x); };
    if (spec == "zero") return [](double) { return 0.0; };
    if (spec == "one") return [](double) { return 1.0; };
    if (spec.rfind("poly:", 0) == 0) {
        auto coeffs = parse_number_list("f", spec.substr(5));
        return [coeffs](double x) {
            double r = 0.0;
            for (std::size_t i = coeffs.size(); i-- > 0;) r = r * x + coeffs[i];
            return r;
        };
    }
    throw ConfigError("unknown initial profile '" + spec + "'");
}

std::function<double(double)> time_poly(const std::vector<double>& coeffs) {
    return [coeffs](double t) {
        double r = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 0;) r = r * t + coeffs[i];
        return r;
    };
}

Problem build_custom_problem(const RunConfig& cfg) {
    Problem p;
    p.name = "custom";
    p.A = CoefficientField::separable(cfg.a_x, cfg.a_t);
    p.a = p.A.dx();
    p.B = CoefficientField::separable(cfg.b_x, cfg.b_t);
    p.C = CoefficientField::separable(cfg.c_x, cfg.c_t);
    p.F = CoefficientField::separable(cfg.src_x, cfg.src_t);
    auto f = initial_profile(cfg.f_spec);
    if (!f) throw ConfigError("custom problems must specify the initial profile f");
    p.f = std::move(f);
    const auto ts = time_samples(cfg.horizon);
    p.boundary_case = cfg.forced_case ? *cfg.forced_case : classify_boundary(p.B, ts);
    if (needs_dirichlet_left(p.boundary_case)) {
        if (!cfg.g0_poly) throw ConfigError("case " + to_string(p.boundary_case) +
                                            " requires key 'g0'");
        p.dirichlet_left = time_poly(*cfg.g0_poly);
    }
    if (needs_dirichlet_right(p.boundary_case)) {
        if (!cfg.g1_poly) throw ConfigError("case " + to_string(p.boundary_case) +
                                            " requires key 'g1'");
        p.dirichlet_right = time_poly(*cfg.g1_poly);
    }
    return p;
}

} // namespace

Problem build_problem(const RunConfig& cfg) {
    if (cfg.preset == "custom") return build_custom_problem(cfg);
    return make_preset(cfg.preset, cfg.asian, initial_profile(cfg.f_spec));
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write_file(const std::string& dir, const std::string& name, const std::string& body) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::ofstream out(fs::path(dir) / name, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + name + " under " + dir);
    out << body;
}

std::string solution_csv(const Solution& s, const std::vector<double>& snapshots) {
    const Grid& g = s.grid();
    std::string body = "t";
    for (int j = 0; j <= g.J(); ++j) body += "," + format_number(g.x(j));
    body += "\n";
    std::vector<int> rows;
    if (snapshots.empty()) {
        for (int n = 0; n <= g.N(); ++n) rows.push_back(n);
    } else {
        for (double t : snapshots)
            rows.push_back(std::min(g.N(), std::max(0, static_cast<int>(std::lround(t / g.dt())))));
    }
    for (int n : rows) {
        body += format_number(g.t(n));
        for (int j = 0; j <= g.J(); ++j) body += "," + format_number(s.at(n, j));
        body += "\n";
    }
    return body;
}

std::string series_csv(const Solution& s, const DiagnosticsReport& diag) {
    std::string body = "n,t,norm_u,norm_dplus\n";
    const Grid& g = s.grid();
    for (int n = 0; n <= g.N(); ++n) {
        body += std::to_string(n) + "," + format_number(g.t(n)) + "," +
                format_number(diag.norm_u[static_cast<std::size_t>(n)]) + "," +
                format_number(diag.norm_dplus[static_cast<std::size_t>(n)]) + "\n";
    }
    return body;
}

std::string report_txt(const RunConfig& cfg, const Solution& s,
                       const DiagnosticsReport& diag, const HolderModuli& hm) {
    const StabilityReport& st = s.stability();
    std::string body;
    const auto put = [&body](const std::string& k, const std::string& v) {
        body += k + " = " + v + "\n";
    };
    put("preset", cfg.preset);
    put("case", to_string(s.problem().boundary_case));
    put("J", std::to_string(s.grid().J()));
    put("N", std::to_string(s.grid().N()));
    put("T", format_number(s.grid().T()));
    put("lambda", format_number(s.grid().lambda()));
    put("cond_left", st.cond_left ? "pass" : "fail");
    put("cond_right", st.cond_right ? "pass" : "fail");
    put("c2", format_number(st.c2));
    put("c3", format_number(st.c3));
    put("c4", format_number(st.c4));
    put("c5_estimate", format_number(st.c5_estimate));
    put("dt_max", format_number(st.dt_max));
    put("dt", format_number(s.grid().dt()));
    put("dt_ok", st.dt_ok ? "pass" : "fail");
    put("c1", format_number(diag.c1));
    put("c6", format_number(diag.c6));
    put("c11", format_number(diag.c11));
    put("c4p", format_number(diag.c4p));
    put("c5p", format_number(diag.c5p));
    put("c6p", format_number(diag.c6p));
    put("cx", format_number(hm.cx));
    put("ct", format_number(hm.ct));
    put("ratio_violations", std::to_string(diag.ratio_violations.size()));
    for (const Endpoint e : {Endpoint::left, Endpoint::right}) {
        try {
            const double dev = boundary_ode_check(s, e);
            put(e == Endpoint::left ? "boundary_dev_left" : "boundary_dev_right",
                format_number(dev));
        } catch (const PreconditionError&) {
            // endpoint not fully degenerate; no exact reference there
        }
    }
    return body;
}

struct SolveArtifacts {
    Solution solution;
    DiagnosticsReport diag;
    HolderModuli holder;
};

SolveArtifacts run_solve(const RunConfig& cfg) {
    const Problem p = build_problem(cfg);
    const Grid g(cfg.grid_j, cfg.grid_n, cfg.horizon, cfg.lambda);
    Solution s = solve(p, g, {cfg.strict});
    DiagnosticsReport diag = energy_series(s);
    HolderModuli hm = holder_moduli(s);
    return {std::move(s), std::move(diag), hm};
}

int guarded(const RunConfig& cfg, const std::function<int(const RunConfig&)>& body) {
    try {
        return body(cfg);
    } catch (const StabilityRefusal& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const ClassificationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int cmd_solve(const RunConfig& cfg) {
    return guarded(cfg, [](const RunConfig& c) {
        const SolveArtifacts art = run_solve(c);
        write_file(c.out_dir, "solution.csv", solution_csv(art.solution, c.snapshots));
        write_file(c.out_dir, "series.csv", series_csv(art.solution, art.diag));
        write_file(c.out_dir, "report.txt", report_txt(c, art.solution, art.diag, art.holder));
        return 0;
    });
}

int cmd_diagnose(const RunConfig& cfg) {
    return guarded(cfg, [](const RunConfig& c) {
        const SolveArtifacts art = run_solve(c);
        write_file(c.out_dir, "series.csv", series_csv(art.solution, art.diag));
        write_file(c.out_dir, "report.txt", report_txt(c, art.solution, art.diag, art.holder));
        return 0;
    });
}

int cmd_converge(const RunConfig& cfg) {
    return guarded(cfg, [](const RunConfig& c) {
        if (c.levels.empty())
            throw ConfigError("converge needs levels (config key 'levels' or --levels)");
        const Problem p = build_problem(c);
        const ConvergenceReport rep =
            refinement_study(p, c.levels, c.horizon, c.lambda, c.strict);
        std::string body = "J,N,l2_error,order,residual_phi1,residual_phi2,residual_phi3,cx,ct\n";
        for (const auto& lvl : rep.levels) {
            body += std::to_string(lvl.J) + "," + std::to_string(lvl.N) + ",";
            body += std::isfinite(lvl.l2_error) ? format_number(lvl.l2_error) : "";
            body += ",";
            body += std::isfinite(lvl.order) ? format_number(lvl.order) : "";
            for (double r : lvl.weak_residuals) body += "," + format_number(r);
            body += "," + format_number(lvl.cx) + "," + format_number(lvl.ct) + "\n";
        }
        write_file(c.out_dir, "convergence.csv", body);
        return 0;
    });
}

namespace {

bool sup_bound_sweep(std::uint64_t seed) {
    Lcg64 rng(seed);
    for (const int J : {8, 64, 256}) {
        for (int trial = 0; trial < 10000; ++trial) {
            std::vector<double> v(static_cast<std::size_t>(J + 1));
            for (double& x : v) x = rng.next_normal();
            if (!sup_bound_check(GridFunction(std::move(v), 1.0 / J)).holds) return false;
        }
    }
    return true;
}

std::pair<bool, bool> quadratic_form_sweep(std::uint64_t seed) {
    Lcg64 rng(seed);
    bool order_ok = true, identity_ok = true;
    for (int trial = 0; trial < 100000; ++trial) {
        QuadraticFormProbe probe;
        probe.theta = rng.next_unit();
        for (double& y : probe.y) y = rng.next_symmetric();
        const auto [q1, q2] = quadratic_form_gap(probe);
        if (!(q1 <= q2 + 1e-12)) order_ok = false;
        const double d = probe.y[0] - 2.0 * probe.y[1] + probe.y[2];
        if (std::fabs((q2 - q1) - 0.5 * probe.theta * d * d) > 1e-12) identity_ok = false;
    }
    return {order_ok, identity_ok};
}

} // namespace

int cmd_verify(const RunConfig& cfg) {
    return guarded(cfg, [](const RunConfig& c) {
        std::vector<std::pair<std::string, bool>> lines;
        bool classification_ok = true;

        Problem p = build_problem(c);
        if (c.forced_case) {
            const auto computed = classify_boundary(p.B, time_samples(c.horizon));
            classification_ok = (computed == *c.forced_case);
        }
        lines.emplace_back("classification", classification_ok);

        lines.emplace_back("sup_bound_sweep", sup_bound_sweep(c.seed));
        const auto [qf_order, qf_identity] = quadratic_form_sweep(c.seed);
        lines.emplace_back("quadratic_form_order", qf_order);
        lines.emplace_back("quadratic_form_identity", qf_identity);

        {
            const Problem gp1 = gronwall_demo_problem([](double x) { return std::tanh(x); });
            const Problem gp2 = gronwall_demo_problem([](double x) {
                return std::tanh(x) + 0.1 * std::sin(3.141592653589793238462643383280 * x);
            });
            const Grid g(100, 100, 1.0, 0.25);
            const Solution s1 = solve(gp1, g);
            const Solution s2 = solve(gp2, g);
            lines.emplace_back("gronwall_estimate", gronwall_check(gp1, s1, s2).holds);
        }

        if (classification_ok) {
            const Grid g(c.grid_j, c.grid_n, c.horizon, c.lambda);
            const Solution s = solve(p, g, {c.strict});
            const DiagnosticsReport diag = energy_series(s);
            lines.emplace_back("gradient_ratio_monitor", diag.ratio_violations.empty());
            bool rows_ok = true;
            for (int n = 0; n <= g.N(); ++n)
                if (!sup_bound_check(s.row(n)).holds) rows_ok = false;
            lines.emplace_back("sup_bound_rows", rows_ok);

            const Grid fine(2 * c.grid_j, 2 * c.grid_n, c.horizon, c.lambda);
            const Solution sf = solve(p, fine, {c.strict});
            const WeakIdentityReport lem = weak_identity_checks(s, sf, test_catalog(c.horizon));
            lines.emplace_back("interpolant_gap", lem.gaps_within_bound);
            const auto decays = [](const std::vector<double>& coarse,
                                   const std::vector<double>& fine_vals) {
                for (std::size_t i = 0; i < coarse.size(); ++i)
                    if (!(fine_vals[i] <= coarse[i])) return false;
                return true;
            };
            lines.emplace_back("weak_dx_decay", decays(lem.weak_dx_coarse, lem.weak_dx_fine));
            lines.emplace_back("weak_dt_decay", decays(lem.weak_dt_coarse, lem.weak_dt_fine));
            lines.emplace_back("qgap_decay", decays(lem.qgap_coarse, lem.qgap_fine));
        }

        std::string body;
        bool all_ok = true;
        for (const auto& [name, ok] : lines) {
            body += name + " = " + (ok ? "PASS" : "FAIL") + "\n";
            all_ok = all_ok && ok;
        }
        write_file(c.out_dir, "verify.txt", body);
        return all_ok ? 0 : 1;
    });
}

} // namespace degen
