#include "scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "squeezelab/channels.hpp"
#include "squeezelab/entropy.hpp"
#include "squeezelab/fockoracle.hpp"
#include "squeezelab/gaussian.hpp"
#include "squeezelab/qubit.hpp"
#include "squeezelab/types.hpp"
#include "squeezelab/wsolve.hpp"

namespace squeezelab::cli {

using nlohmann::json;
using Complex = std::complex<double>;

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Complex parse_complex_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw ConfigError("config error: complex value '" + text + "' must be 're,im'");
    try {
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw ConfigError("config error: cannot parse complex value '" + text + "'");
    }
}

std::string format_complex_pair(Complex z) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g", z.real(), z.imag());
    return buf;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const json& require_key(const json& obj, const std::string& key, const char* where) {
    if (!obj.contains(key))
        throw ConfigError(std::string("config error: missing key '") + key + "' in " + where);
    return obj.at(key);
}

double require_number(const json& obj, const std::string& key, const char* where) {
    const json& v = require_key(obj, key, where);
    if (!v.is_number()) throw ConfigError("config error: key '" + key + "' must be a number");
    return v.get<double>();
}

model::CoefficientTable parse_table(const json& arr, const std::string& key) {
    model::CoefficientTable tab;
    if (!arr.is_array())
        throw ConfigError("config error: table key '" + key + "' must be [[t, value], ...]");
    for (const auto& row : arr) {
        if (!row.is_array() || row.size() != 2)
            throw ConfigError("config error: table key '" + key + "' must be [[t, value], ...]");
        tab.t.push_back(row[0].get<double>());
        tab.value.push_back(row[1].get<double>());
    }
    return tab;
}

}  // namespace

ScenarioConfig ScenarioConfig::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config error: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    ScenarioConfig cfg;
    cfg.hash = fnv1a64(text);
    try {
        cfg.raw = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config error: invalid JSON: ") + e.what());
    }

    const json& model_obj = require_key(cfg.raw, "model", "config root");
    cfg.model_name = require_key(model_obj, "name", "model section").get<std::string>();
    try {
        if (cfg.model_name == "reference") {
            cfg.coeffs = model::make_reference_model(require_number(model_obj, "omega", "model"),
                                                     require_number(model_obj, "g", "model"),
                                                     require_number(model_obj, "c", "model"));
        } else if (cfg.model_name == "squeezing") {
            cfg.coeffs = model::make_squeezing_model(require_number(model_obj, "omega", "model"),
                                                     require_number(model_obj, "s0", "model"),
                                                     require_number(model_obj, "t_star", "model"),
                                                     require_number(model_obj, "g", "model"),
                                                     require_number(model_obj, "c", "model"));
        } else if (cfg.model_name == "optical") {
            cfg.coeffs = model::make_optical_model(require_number(model_obj, "gamma", "model"),
                                                   require_number(model_obj, "nbar", "model"));
        } else if (cfg.model_name == "table") {
            if (model_obj.contains("path")) {
                cfg.coeffs = model::make_table_model_csv(model_obj.at("path").get<std::string>());
            } else {
                model::TableData data;
                const std::pair<const char*, model::CoefficientTable*> slots[] = {
                    {"b11", &data.b11}, {"b12", &data.b12},     {"b22", &data.b22},
                    {"k1", &data.k1},   {"k2", &data.k2},       {"k3_re", &data.k3_re},
                    {"k3_im", &data.k3_im}};
                for (const auto& [key, tab] : slots)
                    if (model_obj.contains(key)) *tab = parse_table(model_obj.at(key), key);
                cfg.coeffs = model::make_table_model(data);
            }
        } else {
            throw ConfigError("config error: unknown model name '" + cfg.model_name + "'");
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config error: ") + e.what());
    }
    if (model_obj.contains("t_min")) cfg.coeffs.t_min = model_obj.at("t_min").get<double>();
    return cfg;
}

double ScenarioConfig::t_star() const {
    const double ts = require_number(raw, "t_star", "config root");
    if (ts <= coeffs.t_min)
        throw ConfigError("config error: t_star must exceed the model's t_min");
    return ts;
}

Complex ScenarioConfig::beta() const {
    const json& v = require_key(raw, "beta", "config root");
    if (!v.is_string()) throw ConfigError("config error: beta must be a 're,im' string");
    return parse_complex_pair(v.get<std::string>());
}

algebra::SplitStrategy ScenarioConfig::split() const {
    const std::string name = raw.value("split", "q_filter");
    if (name == "q_filter") return algebra::SplitStrategy::q_filter;
    if (name == "p_filter") return algebra::SplitStrategy::p_filter;
    if (name == "example_symmetric") return algebra::SplitStrategy::example_symmetric;
    throw ConfigError("config error: unknown split strategy '" + name + "'");
}

double ScenarioConfig::rel_tol() const {
    const double tol = raw.value("rel_tol", 1e-10);
    if (!(tol >= 1e-12 && tol <= 1e-4))
        throw ConfigError("config error: rel_tol must lie in [1e-12, 1e-4]");
    return tol;
}

double ScenarioConfig::horizon() const {
    if (raw.contains("horizon")) return raw.at("horizon").get<double>();
    if (raw.contains("t_star")) return 2.0 * raw.at("t_star").get<double>();
    return 2.0;
}

double ScenarioConfig::epsilon() const {
    const double eps = require_number(raw, "epsilon", "config root");
    if (!(eps > 0.0)) throw ConfigError("config error: epsilon must be positive");
    return eps;
}

std::vector<double> ScenarioConfig::eavesdrop_times() const {
    const json& arr = require_key(raw, "eavesdrop_times", "config root");
    if (!arr.is_array() || arr.empty())
        throw ConfigError("config error: eavesdrop_times must be a non-empty array");
    std::vector<double> out;
    for (const auto& v : arr) out.push_back(v.get<double>());
    return out;
}

double ScenarioConfig::theta() const { return raw.value("theta", 0.7); }
double ScenarioConfig::phi() const { return raw.value("phi", 1.1); }
int ScenarioConfig::fock_n() const {
    return raw.contains("fock") ? raw["fock"].value("n", 40) : 40;
}
double ScenarioConfig::fock_dt() const {
    return raw.contains("fock") ? raw["fock"].value("dt", 1e-3) : 1e-3;
}
int ScenarioConfig::grid_n() const { return raw.value("grid_n", 512); }

void ScenarioConfig::require_time_in_range(double t, const char* what) const {
    if (t < coeffs.t_min || t > horizon())
        throw ConfigError(std::string("config error: ") + what + "=" + fmt(t) +
                          " outside [t_min, horizon] = [" + fmt(coeffs.t_min) + ", " +
                          fmt(horizon()) + "]");
}

std::string output_header(const ScenarioConfig& cfg) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "# squeezelab v%s config_hash=%016llx", kVersion,
                  static_cast<unsigned long long>(cfg.hash));
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    return out;
}

/// The prepared sender state |beta>_{C(t*)} and its frame data.
struct Prepared {
    algebra::GeneralizedLoweringOp b_star;
    algebra::GeneralizedLoweringOp c_star;
    gaussian::GaussianState at_time_zero;
    double w4_star = 0.0;
};

Prepared prepare(const ScenarioConfig& cfg, Complex beta) {
    Prepared p;
    const double ts = cfg.t_star();
    cfg.require_time_in_range(ts, "t_star");
    p.b_star = channels::lowering_b_at(cfg.coeffs, ts, cfg.split(), cfg.rel_tol());
    p.c_star = channels::lowering_c_at(cfg.coeffs, ts, cfg.split(), cfg.rel_tol());
    p.at_time_zero = gaussian::eigenstate_of(p.c_star, beta);
    p.w4_star = wsolve::solve_w(cfg.coeffs, ts, cfg.rel_tol()).at(ts).w4;
    return p;
}

}  // namespace

int run_solve_w(const ScenarioConfig& cfg, const std::string& out_path,
                std::optional<double> t_end) {
    const double end = t_end.value_or(cfg.horizon());
    const auto traj = wsolve::solve_w(cfg.coeffs, end, cfg.rel_tol());

    auto out = open_out(out_path);
    out << output_header(cfg) << "\n";
    out << "t,w1,w2,w3,w4\n";
    for (const auto& s : traj.samples())
        out << fmt(s.t) << ',' << fmt(s.w.w1) << ',' << fmt(s.w.w2) << ',' << fmt(s.w.w3) << ','
            << fmt(s.w.w4) << "\n";

    const auto report = model::check_physicality(traj, cfg.coeffs.hbar);
    if (!report.all_ok()) {
        std::cerr << "physicality violation first seen at t=" << fmt(*report.first_violation_time)
                  << "\n";
        return kPhysicalityViolation;
    }
    return kOk;
}

int run_simulate(const ScenarioConfig& cfg, const std::vector<double>& times,
                 const std::string& picture, const std::string& out_path) {
    if (times.empty()) throw ConfigError("config error: simulate needs at least one time");
    if (picture != "schrodinger" && picture != "dp")
        throw ConfigError("config error: picture must be 'schrodinger' or 'dp'");
    for (double t : times) cfg.require_time_in_range(t, "time");

    const auto p = prepare(cfg, cfg.beta());
    auto out = open_out(out_path);
    out << output_header(cfg) << "\n";
    out << "t,hbar,mq,mp,sqq,sqp,spp\n";
    for (double t : times) {
        const auto s = picture == "dp"
                           ? channels::dp_propagate(cfg.coeffs, p.at_time_zero, t, cfg.split(),
                                                    cfg.rel_tol())
                           : channels::schrodinger_propagate(cfg.coeffs, p.at_time_zero, t,
                                                             cfg.split(), cfg.rel_tol());
        out << fmt(t) << ',' << gaussian::to_csv_row(s) << "\n";
    }
    return kOk;
}

int run_entropy_scan(const ScenarioConfig& cfg, std::optional<double> eps_override,
                     const std::string& out_path) {
    const double eps = eps_override.value_or(cfg.epsilon());
    if (!(eps > 0.0)) throw ConfigError("config error: epsilon must be positive");
    const double ts = cfg.t_star();
    const auto p = prepare(cfg, cfg.beta());
    const double horizon = cfg.horizon();
    const auto traj = wsolve::solve_w(cfg.coeffs, horizon, cfg.rel_tol());

    auto out = open_out(out_path);
    out << output_header(cfg) << "\n";
    out << "t,s_w,purity\n";
    const int n_grid = 201;
    for (int i = 0; i < n_grid; ++i) {
        const double t = cfg.coeffs.t_min + (horizon - cfg.coeffs.t_min) * i / (n_grid - 1);
        const auto s =
            channels::dp_propagate(cfg.coeffs, p.at_time_zero, t, cfg.split(), cfg.rel_tol());
        out << fmt(t) << ',' << fmt(entropy::wehrl_gaussian(s)) << ',' << fmt(gaussian::purity(s))
            << "\n";
    }

    const auto window =
        entropy::scan_window(cfg.coeffs, ts, cfg.beta(), eps, cfg.split(), horizon, cfg.rel_tol());
    const double d2nu = entropy::nu_second_derivative(cfg.coeffs, ts, cfg.split());
    const double formula = entropy::delta_t_formula(eps, traj.at(ts).w4, d2nu);
    const double half = 0.5 * (window.t_hi - window.t_lo);

    char hash_buf[24];
    std::snprintf(hash_buf, sizeof(hash_buf), "%016llx", static_cast<unsigned long long>(cfg.hash));
    json summary;
    summary["version"] = kVersion;
    summary["config_hash"] = hash_buf;
    summary["epsilon"] = eps;
    summary["t_star"] = ts;
    summary["window"] = {{"t_lo", window.t_lo},
                         {"t_hi", window.t_hi},
                         {"lo_at_horizon", window.lo_at_horizon},
                         {"hi_at_horizon", window.hi_at_horizon}};
    summary["half_width"] = half;
    summary["delta_t_formula"] = formula;
    summary["formula_over_scan"] = half > 0 ? formula / half : 0.0;
    summary["d2nu_dt2"] = d2nu;
    summary["w4_star"] = traj.at(ts).w4;
    std::cout << summary.dump(2) << "\n";
    return kOk;
}

int run_not_demo(const ScenarioConfig& cfg) {
    const Complex beta = cfg.beta();
    const double ts = cfg.t_star();
    const auto p = prepare(cfg, beta);
    const auto out = qubit::not_circuit(cfg.coeffs, beta, ts, cfg.split(), cfg.rel_tol());

    const Complex target_amp = -beta * std::exp(-p.w4_star / 2.0);
    const auto target = gaussian::eigenstate_of(p.b_star, target_amp);
    const Complex measured_amp = p.b_star.u * out.mean(0) + p.b_star.v * out.mean(1);

    json rep;
    rep["version"] = kVersion;
    rep["beta_in"] = format_complex_pair(beta);
    rep["amplitude_out"] = format_complex_pair(measured_amp);
    rep["amplitude_target"] = format_complex_pair(target_amp);
    rep["w4_t_star"] = p.w4_star;
    rep["purity"] = gaussian::purity(out);
    rep["fidelity_to_target"] = gaussian::fidelity(out, target);
    std::cout << rep.dump(2) << "\n";
    return kOk;
}

int run_cnot_demo(Complex beta, double nu, int grid_n, const std::string& out_path,
                  std::uint64_t hash) {
    const auto op = algebra::from_bogoliubov(std::sqrt(1.0 + nu * nu), nu, 1.0);
    qubit::GridSpec2D spec;
    spec.n = grid_n;
    const auto res = qubit::cnot_apply(beta, op, spec);

    auto out = open_out(out_path);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "# squeezelab v%s config_hash=%016llx", kVersion,
                  static_cast<unsigned long long>(hash));
    out << buf << "\n";
    out << "q1,q2,re_psi,im_psi\n";
    for (int i = 0; i < res.grid.n1; ++i)
        for (int j = 0; j < res.grid.n2; ++j) {
            const Complex v = res.grid.at(i, j);
            out << fmt(res.grid.q1(i)) << ',' << fmt(res.grid.q2(j)) << ',' << fmt(v.real())
                << ',' << fmt(v.imag()) << "\n";
        }

    json rep;
    rep["version"] = kVersion;
    rep["beta"] = format_complex_pair(beta);
    rep["nu"] = nu;
    rep["grid_norm"] = res.grid.norm;
    rep["control_prob"] = res.outcome.control_prob;
    rep["conditional"] = res.outcome.conditional;
    rep["joint"] = res.outcome.joint;
    std::cout << rep.dump(2) << "\n";
    return kOk;
}

int run_secure_demo(const ScenarioConfig& cfg, const std::string& out_path) {
    if (cfg.model_name != "squeezing")
        throw ConfigError("config error: secure-demo requires the squeezing model");
    const double ts = cfg.t_star();
    const auto eavesdrop = cfg.eavesdrop_times();
    for (double t : eavesdrop) {
        cfg.require_time_in_range(t, "eavesdrop time");
        if (std::abs(t - ts) < 1e-12)
            throw ConfigError("config error: eavesdrop times must differ from t_star");
    }

    // The sender encodes (theta, phi) in the B(t*) frame.
    const auto b_star = channels::lowering_b_at(cfg.coeffs, ts, cfg.split(), cfg.rel_tol());
    const auto frame = gaussian::eigenstate_of(b_star, Complex(0, 0));
    const double dq = std::sqrt(frame.cov(0, 0));
    const double dp = std::sqrt(frame.cov(1, 1));
    const auto sender = qubit::qubit_encode(cfg.theta(), cfg.phi(), dq, dp, frame.cov(0, 1));
    const Complex beta = b_star.u * sender.mean(0) + b_star.v * sender.mean(1);
    const auto p = prepare(cfg, beta);
    const auto traj = wsolve::solve_w(cfg.coeffs, cfg.horizon(), cfg.rel_tol());

    std::vector<double> rows = {ts};
    rows.insert(rows.end(), eavesdrop.begin(), eavesdrop.end());

    auto out = open_out(out_path);
    out << output_header(cfg) << "\n";
    out << "filter_time,purity,s_w,theta_err,phi_err,fidelity_to_target\n";
    for (double t : rows) {
        // deconvolving the noisy state at time t = deconvolution picture at t
        auto s = channels::dp_propagate(cfg.coeffs, p.at_time_zero, t, cfg.split(), cfg.rel_tol());
        const double purity = gaussian::purity(s);
        const double sw = entropy::wehrl_gaussian(s);
        // amplitude rescale: the receiver knows w4 at their chosen filter time
        s.mean *= std::exp(traj.at(t).w4 / 2.0);
        const double theta_rec = s.mean(0) / std::sqrt(2.0 * s.cov(0, 0));
        double phi_rec = std::fmod(s.mean(1) / std::sqrt(s.cov(1, 1)), 2.0 * std::numbers::pi);
        if (phi_rec < 0) phi_rec += 2.0 * std::numbers::pi;
        double phi_err = std::abs(phi_rec - cfg.phi());
        phi_err = std::min(phi_err, 2.0 * std::numbers::pi - phi_err);
        out << fmt(t) << ',' << fmt(purity) << ',' << fmt(sw) << ','
            << fmt(std::abs(theta_rec - cfg.theta())) << ',' << fmt(phi_err) << ','
            << fmt(gaussian::fidelity(s, sender)) << "\n";
    }
    return kOk;
}

int run_validate(const ScenarioConfig& cfg, const std::string& out_path) {
    json checks = json::array();
    auto add = [&checks](const std::string& name, double delta, double tol) {
        checks.push_back(
            {{"name", name}, {"delta", delta}, {"tolerance", tol}, {"pass", delta <= tol}});
    };

    const char* seed_env = std::getenv("SQUEEZELAB_SEED");
    const unsigned seed =
        seed_env ? static_cast<unsigned>(std::strtoul(seed_env, nullptr, 10)) : 20170528u;
    std::mt19937 rng(seed);
    auto uni = [&rng](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };

    const int n = cfg.fock_n();
    const double dt = cfg.fock_dt();

    // 1. optical mapping == rotating-wave generator, elementwise
    {
        const double gamma = 0.8, nbar = 0.4;
        const auto opt = model::make_optical_model(gamma, nbar);
        fockoracle::FockGenerator gen(opt, 16);
        const auto ops = fockoracle::FockOps::make(16, 1.0);
        std::normal_distribution<double> dist;
        Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(16, 16);
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j) r(i, j) = Complex(dist(rng), dist(rng));
        const Eigen::MatrixXcd rho = r + r.adjoint();
        auto bracket = [](const Eigen::MatrixXcd& adag, const Eigen::MatrixXcd& c,
                          const Eigen::MatrixXcd& x) -> Eigen::MatrixXcd {
            return c * adag * x + x * c * adag - 2.0 * adag * x * c;
        };
        const Eigen::MatrixXcd direct =
            -(gamma / 2.0) *
            ((nbar + 1.0) * bracket(ops.a, ops.ad, rho) + nbar * bracket(ops.ad, ops.a, rho));
        add("optical_generator_map",
            (direct - gen.apply(0.0, rho)).cwiseAbs().maxCoeff() / rho.cwiseAbs().maxCoeff(),
            1e-10);
    }

    // 2. factorized propagator vs master equation on the configured model
    const double ts = cfg.raw.contains("t_star") ? cfg.t_star() : 1.0;
    const Complex beta = cfg.raw.contains("beta") ? cfg.beta() : Complex(1.0, 0.5);
    {
        const auto c_star = channels::lowering_c_at(cfg.coeffs, ts, cfg.split(), cfg.rel_tol());
        const auto s0 = gaussian::eigenstate_of(c_star, beta);
        const auto gauss =
            channels::schrodinger_propagate(cfg.coeffs, s0, ts, cfg.split(), cfg.rel_tol());
        const auto rho = fockoracle::integrate_master(fockoracle::gaussian_to_fock(s0, n),
                                                      cfg.coeffs, ts, dt, n);
        const auto [mean, cov] = fockoracle::moments(rho);
        add("factorization_vs_oracle_mean", (mean - gauss.mean).norm(), 1e-6);
        add("factorization_vs_oracle_cov", (cov - gauss.cov).cwiseAbs().maxCoeff(), 1e-5);
        add("oracle_trace_defect", rho.trace_defect(), 1e-8);
    }

    // 3. privileged-time purity and amplitude decay
    {
        const auto c_star = channels::lowering_c_at(cfg.coeffs, ts, cfg.split(), cfg.rel_tol());
        const auto b_star = channels::lowering_b_at(cfg.coeffs, ts, cfg.split(), cfg.rel_tol());
        const auto s0 = gaussian::eigenstate_of(c_star, beta);
        const auto dp = channels::dp_propagate(cfg.coeffs, s0, ts, cfg.split(), cfg.rel_tol());
        add("privileged_time_purity", std::abs(gaussian::purity(dp) - 1.0), 1e-9);
        const double w4 = wsolve::solve_w(cfg.coeffs, ts, cfg.rel_tol()).at(ts).w4;
        const Complex amp = b_star.u * dp.mean(0) + b_star.v * dp.mean(1);
        add("privileged_time_amplitude", std::abs(amp - beta * std::exp(-w4 / 2.0)), 1e-9);
    }

    // 4. decay channel vs the single-dissipator master equation
    {
        const double w4 = 0.9;
        gaussian::GaussianState th;
        th.cov = 1.2 * Eigen::Matrix2d::Identity();
        th.mean << 0.4, -0.1;
        const auto gauss = channels::b_decay(th, algebra::standard_lowering(1.0), w4 / 2.0);
        const auto opt = model::make_optical_model(w4, 0.0);
        const auto rho =
            fockoracle::integrate_master(fockoracle::gaussian_to_fock(th, n), opt, 1.0, dt, n);
        const auto [mean, cov] = fockoracle::moments(rho);
        add("b_decay_vs_oracle",
            (cov - gauss.cov).cwiseAbs().maxCoeff() + (mean - gauss.mean).norm(), 1e-5);
    }

    // 5. random-state purity and round-trip moments, Gaussian vs Fock.
    // Honors SQUEEZELAB_SEED.
    {
        double worst_purity = 0.0, worst_moments = 0.0;
        for (int i = 0; i < 4; ++i) {
            gaussian::GaussianState s;
            const double r = uni(-0.5, 0.5), th = uni(0.0, 3.14);
            Eigen::Matrix2d rot;
            rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
            Eigen::Matrix2d d = Eigen::Matrix2d::Zero();
            d(0, 0) = std::exp(r);
            d(1, 1) = std::exp(-r);
            const Eigen::Matrix2d sp = rot * d * rot.transpose();
            s.cov = uni(1.05, 2.0) * 0.5 * sp * sp.transpose();
            s.mean << uni(-1, 1), uni(-1, 1);
            const auto rho = fockoracle::gaussian_to_fock(s, 70);
            worst_purity = std::max(worst_purity,
                                    std::abs(fockoracle::purity_fock(rho) - gaussian::purity(s)));
            const auto [mean, cov] = fockoracle::moments(rho);
            worst_moments = std::max(worst_moments, (mean - s.mean).norm());
            worst_moments = std::max(worst_moments, (cov - s.cov).cwiseAbs().maxCoeff());
        }
        add("purity_gaussian_vs_fock", worst_purity, 1e-6);
        add("gaussian_to_fock_roundtrip", worst_moments, 1e-6);
    }

    // 6. ket propagator at the privileged time
    {
        const auto c_star = channels::lowering_c_at(cfg.coeffs, ts, cfg.split(), cfg.rel_tol());
        const auto b_star = channels::lowering_b_at(cfg.coeffs, ts, cfg.split(), cfg.rel_tol());
        const auto ket0 = fockoracle::lowering_eigen_ket(algebra::bogoliubov(c_star), beta, n);
        const auto out_ket =
            fockoracle::wdp_fock(ket0, cfg.coeffs, ts, n, cfg.split(), cfg.rel_tol(), 1e-4);
        const double w4 = wsolve::solve_w(cfg.coeffs, ts, cfg.rel_tol()).at(ts).w4;
        const auto target = fockoracle::gaussian_to_fock(
            gaussian::eigenstate_of(b_star, beta * std::exp(-w4 / 2.0)), n);
        const double fid = (out_ket.adjoint() * target.rho * out_ket)(0, 0).real();
        add("wdp_privileged_time_infidelity", std::abs(1.0 - fid), 1e-6);
    }

    json rep;
    rep["version"] = kVersion;
    rep["seed"] = seed;
    char hash_buf[24];
    std::snprintf(hash_buf, sizeof(hash_buf), "%016llx", static_cast<unsigned long long>(cfg.hash));
    rep["config_hash"] = hash_buf;
    rep["checks"] = checks;
    bool all = true;
    for (const auto& c : checks) all = all && c.at("pass").get<bool>();
    rep["all_pass"] = all;

    if (out_path.empty()) {
        std::cout << rep.dump(2) << "\n";
    } else {
        auto out = open_out(out_path);
        out << rep.dump(2) << "\n";
    }
    return all ? kOk : kCheckFailure;
}

}  // namespace squeezelab::cli
