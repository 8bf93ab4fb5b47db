#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "squeezelab/algebra.hpp"
#include "squeezelab/model.hpp"

namespace squeezelab::cli {

/// Exit codes of the tool, stable contract.
enum ExitCode : int {
    kOk = 0,
    kCheckFailure = 1,   // a validation check failed
    kConfigError = 2,
    kPhysicalityViolation = 3,
    kNumericalFailure = 4,
};

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Parsed scenario file. Only `model` is mandatory at load time; each
/// subcommand pulls the keys it needs and fails naming the missing one.
struct ScenarioConfig {
    nlohmann::json raw;
    std::uint64_t hash = 0;

    std::string model_name;
    model::QdeCoefficients coeffs;

    static ScenarioConfig load(const std::string& path);

    double t_star() const;
    std::complex<double> beta() const;
    algebra::SplitStrategy split() const;      // default q_filter
    double rel_tol() const;                    // default 1e-10
    double horizon() const;                    // default 2 t_star (or 2.0)
    double epsilon() const;
    std::vector<double> eavesdrop_times() const;
    double theta() const;                      // secure-demo payload, default 0.7
    double phi() const;                        // default 1.1
    int fock_n() const;                        // default 40
    double fock_dt() const;                    // default 1e-3
    int grid_n() const;                        // default 512

    /// Throws ConfigError unless t lies in [t_min, horizon].
    void require_time_in_range(double t, const char* what) const;
};

std::complex<double> parse_complex_pair(const std::string& text);
std::string format_complex_pair(std::complex<double> z);
std::uint64_t fnv1a64(const std::string& bytes);

/// "# squeezelab v<version> config_hash=<hex>" header line.
std::string output_header(const ScenarioConfig& cfg);

int run_solve_w(const ScenarioConfig& cfg, const std::string& out_path,
                std::optional<double> t_end);
int run_simulate(const ScenarioConfig& cfg, const std::vector<double>& times,
                 const std::string& picture, const std::string& out_path);
int run_entropy_scan(const ScenarioConfig& cfg, std::optional<double> eps_override,
                     const std::string& out_path);
int run_not_demo(const ScenarioConfig& cfg);
int run_cnot_demo(std::complex<double> beta, double nu, int grid_n, const std::string& out_path,
                  std::uint64_t hash);
int run_secure_demo(const ScenarioConfig& cfg, const std::string& out_path);
int run_validate(const ScenarioConfig& cfg, const std::string& out_path);

}  // namespace squeezelab::cli
