#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scenario.hpp"
#include "squeezelab/types.hpp"

namespace {

using namespace squeezelab;
using cli::ScenarioConfig;

constexpr const char* kColumnDocs = R"(Output schemas (also in docs/output_schemas.md):
  solve-w      CSV: t,w1,w2,w3,w4 -- noise-coefficient trajectory samples
  simulate     CSV: t,hbar,mq,mp,sqq,sqp,spp -- Gaussian state per requested time
               (mq,mp first moments; sqq,sqp,spp covariance entries)
  entropy-scan CSV: t,s_w,purity -- deconvolution-picture Wehrl entropy and purity;
               JSON summary on stdout: window, half_width, delta_t_formula, d2nu_dt2
  secure-demo  CSV: filter_time,purity,s_w,theta_err,phi_err,fidelity_to_target
  cnot-demo    CSV: q1,q2,re_psi,im_psi -- two-mode wavefunction grid;
               JSON outcome table on stdout (control_prob, conditional, joint)
  validate     JSON: per-check {name, delta, tolerance, pass} list plus all_pass
Every CSV starts with '# squeezelab v<version> config_hash=<fnv1a64 of the config file>'.
Exit codes: 0 success, 1 failed validation checks, 2 config error,
            3 physicality violation, 4 numerical failure.)";

std::vector<double> parse_times(const std::string& csv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        const auto comma = csv.find(',', pos);
        const std::string tok = csv.substr(pos, comma == std::string::npos ? csv.npos : comma - pos);
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw cli::ConfigError("config error: bad time value '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("squeezelab ") + kVersion +
                 " -- Gaussian noise filtering for quadratic dissipative master equations"};
    app.footer(kColumnDocs);
    app.require_subcommand(1);

    std::string config_path, out_path, times_csv, picture = "schrodinger", beta_str = "0,0";
    std::optional<double> t_end, eps;
    double nu = 0.0;
    int grid_n = 512;

    auto* solve = app.add_subcommand("solve-w", "Integrate the noise-coefficient ODE system");
    solve->add_option("--config", config_path, "scenario JSON")->required();
    solve->add_option("--out", out_path, "output CSV (t,w1,w2,w3,w4)")->required();
    double t_end_val = 0.0;
    auto* t_end_opt = solve->add_option("--t-end", t_end_val, "integration end (default: horizon)");

    auto* sim = app.add_subcommand("simulate", "Propagate the configured state to given times");
    sim->add_option("--config", config_path, "scenario JSON")->required();
    sim->add_option("--times", times_csv, "comma-separated times")->required();
    sim->add_option("--picture", picture, "schrodinger | dp")->capture_default_str();
    sim->add_option("--out", out_path, "output CSV (t,hbar,mq,mp,sqq,sqp,spp)")->required();

    auto* scan = app.add_subcommand("entropy-scan", "Wehrl-entropy window around t*");
    scan->add_option("--config", config_path, "scenario JSON")->required();
    double eps_val = 0.0;
    auto* eps_opt = scan->add_option("--eps", eps_val, "entropy tolerance (default: config epsilon)");
    scan->add_option("--out", out_path, "output CSV (t,s_w,purity)")->required();

    auto* notd = app.add_subcommand("not-demo", "Run the NOT circuit and report fidelity");
    notd->add_option("--config", config_path, "scenario JSON")->required();

    auto* cnot = app.add_subcommand("cnot-demo", "Controlled gate on a position grid");
    cnot->add_option("--beta", beta_str, "target amplitude re,im")->required();
    cnot->add_option("--nu", nu, "squeezing |nu| of the mode")->capture_default_str();
    cnot->add_option("--grid-n", grid_n, "grid points per axis")->capture_default_str();
    cnot->add_option("--out", out_path, "output CSV (q1,q2,re_psi,im_psi)")->required();

    auto* secure = app.add_subcommand("secure-demo", "Privileged-time transfer transcript");
    secure->add_option("--config", config_path, "scenario JSON")->required();
    secure->add_option("--out", out_path, "transcript CSV")->required();

    auto* val = app.add_subcommand("validate", "Gaussian-vs-Fock comparison suite (JSON report)");
    val->add_option("--config", config_path, "scenario JSON")->required();
    val->add_option("--out", out_path, "report JSON (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*t_end_opt) t_end = t_end_val;
        if (*eps_opt) eps = eps_val;

        if (solve->parsed())
            return cli::run_solve_w(ScenarioConfig::load(config_path), out_path, t_end);
        if (sim->parsed())
            return cli::run_simulate(ScenarioConfig::load(config_path), parse_times(times_csv),
                                     picture, out_path);
        if (scan->parsed())
            return cli::run_entropy_scan(ScenarioConfig::load(config_path), eps, out_path);
        if (notd->parsed()) return cli::run_not_demo(ScenarioConfig::load(config_path));
        if (cnot->parsed())
            return cli::run_cnot_demo(cli::parse_complex_pair(beta_str), nu, grid_n, out_path,
                                      cli::fnv1a64(beta_str));
        if (secure->parsed())
            return cli::run_secure_demo(ScenarioConfig::load(config_path), out_path);
        if (val->parsed()) return cli::run_validate(ScenarioConfig::load(config_path), out_path);
    } catch (const cli::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return cli::kConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return cli::kConfigError;
    } catch (const std::out_of_range& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return cli::kConfigError;
    } catch (const PhysicalityError& e) {
        std::cerr << "physicality violation: " << e.what() << "\n";
        return cli::kPhysicalityViolation;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return cli::kNumericalFailure;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return cli::kNumericalFailure;
    }
    return cli::kOk;
}
