// Acceptance suite: every numbered criterion prints one [PASS]/[FAIL] line
// with the measured values; the process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "squeezelab/algebra.hpp"
#include "squeezelab/channels.hpp"
#include "squeezelab/entropy.hpp"
#include "squeezelab/fockoracle.hpp"
#include "squeezelab/gaussian.hpp"
#include "squeezelab/model.hpp"
#include "squeezelab/qubit.hpp"
#include "squeezelab/wsolve.hpp"

using namespace squeezelab;
using algebra::SplitStrategy;
using std::numbers::pi;
using Complex = std::complex<double>;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::mt19937 rng(20170528u);
double uni(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), f, args...);
    return buf;
}

gaussian::GaussianState random_state() {
    const double r = uni(-1.0, 1.0), th = uni(0.0, pi);
    Eigen::Matrix2d rot;
    rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    Eigen::Matrix2d d = Eigen::Matrix2d::Zero();
    d(0, 0) = std::exp(r);
    d(1, 1) = std::exp(-r);
    const Eigen::Matrix2d s = rot * d * rot.transpose();
    gaussian::GaussianState st;
    st.cov = uni(1.0, 2.5) * 0.5 * s * s.transpose();
    st.mean << uni(-2, 2), uni(-2, 2);
    return st;
}

// 1. Commutator suite over random physical w-points of both built-in models.
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const bool squeezing = i % 2;
        const auto m =
            squeezing ? model::make_squeezing_model(uni(0.5, 2.0), uni(0.0, 1.0), uni(0.5, 1.5),
                                                    uni(0.5, 2.0), uni(1.2, 3.0))
                      : model::make_reference_model(uni(0.5, 2.0), uni(0.5, 2.0), uni(1.2, 3.0));
        const double t = uni(10.0 * m.t_min, 2.0);
        const auto w = wsolve::solve_w(m, t, 1e-10).at(t);
        const auto strat = i % 4 < 2 ? SplitStrategy::q_filter : SplitStrategy::p_filter;
        const auto b = algebra::lowering_b(w, algebra::split_r(w, m.hbar, strat), m.hbar);
        worst = std::max(worst, std::abs(b.commutator() - 1.0));
        const auto c =
            algebra::conjugate_by_flow(b, channels::symplectic_flow(m, 0.0, t, 1e-12));
        worst = std::max(worst, std::abs(c.commutator() - 1.0));
    }
    const double dt = seconds_since(t0);
    report(1, worst <= 1e-10 && dt < 10.0,
           fmt("commutator over 200 w-points incl. flow conjugation: max |2h Im(u*v) - 1| = "
               "%.3e (<= 1e-10), %.1fs (< 10s)",
               worst, dt));
}

// 2. Factorized propagator vs the truncated-Fock master equation.
void criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto m = model::make_reference_model(1.0, 1.0, 2.0);
    const double ts = 1.0;
    const Complex beta(1.0, 0.5);
    const auto strat = SplitStrategy::q_filter;

    const auto c_star = channels::lowering_c_at(m, ts, strat, 1e-12);
    const auto s0 = gaussian::eigenstate_of(c_star, beta);
    const auto gauss = channels::schrodinger_propagate(m, s0, ts, strat, 1e-12);

    const int n = 40;
    const auto rho =
        fockoracle::integrate_master(fockoracle::gaussian_to_fock(s0, n), m, ts, 1e-3, n);
    const auto [mean, cov] = fockoracle::moments(rho);
    const double dmean = (mean - gauss.mean).norm();
    const double dcov = (cov - gauss.cov).cwiseAbs().maxCoeff();
    const double dtrace = rho.trace_defect();
    const double dt = seconds_since(t0);
    report(2, dmean <= 1e-6 && dcov <= 1e-5 && dtrace <= 1e-8 && dt < 120.0,
           fmt("factorization vs oracle (N=40, dt=1e-3): |d mean| = %.3e (<= 1e-6), |d cov| = "
               "%.3e (<= 1e-5), |Tr - 1| = %.3e (<= 1e-8), %.1fs (< 2min)",
               dmean, dcov, dtrace, dt));
}

// 3. Purity restored at the privileged time with amplitude beta e^{-w4/2}.
void criterion_3() {
    const auto m = model::make_reference_model(1.0, 1.0, 2.0);
    const double ts = 1.0;
    const Complex beta(1.0, 0.5);
    const auto strat = SplitStrategy::q_filter;
    const auto c_star = channels::lowering_c_at(m, ts, strat, 1e-12);
    const auto b_star = channels::lowering_b_at(m, ts, strat, 1e-12);
    const auto out =
        channels::dp_propagate(m, gaussian::eigenstate_of(c_star, beta), ts, strat, 1e-12);
    const double dpurity = std::abs(gaussian::purity(out) - 1.0);
    const Complex amp = b_star.u * out.mean(0) + b_star.v * out.mean(1);
    const double w4 = wsolve::solve_w(m, ts, 1e-12).at(ts).w4;
    const double damp = std::abs(amp - beta * std::exp(-w4 / 2.0));
    const double dratio = std::abs(std::abs(amp) / std::abs(beta) - std::exp(-0.5));
    report(3, dpurity <= 1e-9 && damp <= 1e-9 && dratio <= 1e-9,
           fmt("privileged-time output: |purity - 1| = %.3e, |amp - beta e^{-w4/2}| = %.3e, "
               "||amp|/|beta| - e^{-1/2}| = %.3e (all <= 1e-9)",
               dpurity, damp, dratio));
}

// 4. Worked-example coherent output with the pi/4 mean rotation.
void criterion_4() {
    const auto m = model::make_reference_model(1.0, 1.0, 2.0);
    const double ts = 1.0;
    const Complex beta(0.8, -0.3);
    const auto strat = SplitStrategy::example_symmetric;
    const auto c_star = channels::lowering_c_at(m, ts, strat, 1e-12);
    const auto out =
        channels::dp_propagate(m, gaussian::eigenstate_of(c_star, beta), ts, strat, 1e-12);
    const Complex alpha_out = Complex(out.mean(0), out.mean(1)) / std::sqrt(2.0);
    const double w4 = wsolve::solve_w(m, ts, 1e-12).at(ts).w4;
    const Complex target = beta * std::exp(Complex(-w4 / 2.0, pi / 4.0));
    const double damp = std::abs(alpha_out - target);
    const double dphase = std::abs(std::arg(alpha_out / beta) - pi / 4.0);
    report(4, damp <= 1e-9 && dphase <= 1e-9,
           fmt("coherent output beta e^{-(w4 - i pi/2)/2}: |d amp| = %.3e, |mean rotation - "
               "pi/4| = %.3e (<= 1e-9)",
               damp, dphase));
}

// 5. Entropy anchors: coherent equality, squeezed value, closed form vs
//    quadrature over a (|nu|, w4) grid.
void criterion_5() {
    gaussian::GaussianState coh;
    coh.mean << std::sqrt(2.0) * 0.5, -std::sqrt(2.0) * 0.2;
    coh.cov = 0.5 * Eigen::Matrix2d::Identity();
    const double d_coh = std::abs(entropy::wehrl_numeric(coh) - 1.0);

    // w4 = 0, |nu| = 1 by quadrature on the actual squeezed state
    const auto op1 = algebra::from_bogoliubov(std::sqrt(2.0), 1.0, 1.0);
    const auto sq = gaussian::eigenstate_of(op1, Complex(0.3, 0.1));
    const double d_sqz =
        std::abs(entropy::wehrl_numeric(sq) - (1.0 + std::log(std::sqrt(2.0))));

    double d_grid = 0.0;
    const auto a = algebra::standard_lowering(1.0);
    for (double nu : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        for (double w4 : {0.0, 0.5, 1.0, 1.5, 2.0}) {
            const auto op = algebra::from_bogoliubov(std::sqrt(1.0 + nu * nu), nu, 1.0);
            const auto dp =
                channels::b_decay(gaussian::eigenstate_of(op, Complex(0.4, -0.6)), a, w4 / 2.0);
            const double closed = entropy::wehrl_dp_closed_form(nu, w4);
            d_grid = std::max(d_grid, std::abs(entropy::wehrl_numeric(dp) - closed));
        }
    }
    report(5, d_coh <= 1e-6 && d_sqz <= 1e-6 && d_grid <= 1e-6,
           fmt("entropy anchors: |S_W(coh) - 1| = %.3e, |S_W(nu=1, w4=0) - (1 + ln sqrt 2)| = "
               "%.3e, 5x5 grid closed-vs-quadrature max = %.3e (all <= 1e-6)",
               d_coh, d_sqz, d_grid));
}

// 6. Lieb and Wehrl bounds on random states, margins reported.
void criterion_6() {
    double lieb_margin = 1e300, wehrl_margin = 1e300;
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
        const auto s = random_state();
        const double sw = entropy::wehrl_gaussian(s);
        const double svn = entropy::von_neumann_gaussian(s);
        ok = ok && sw >= 1.0 - 1e-10 && sw > svn;
        lieb_margin = std::min(lieb_margin, sw - 1.0);
        wehrl_margin = std::min(wehrl_margin, sw - svn);
    }
    report(6, ok,
           fmt("bounds on 100 random states: min(S_w - 1) = %.3e (>= 0), min(S_w - S) = %.3e "
               "(> 0)",
               lieb_margin, wehrl_margin));
}

// 7. Quartic window law and the Delta-t estimate vs the measured window.
void criterion_7() {
    const auto m = model::make_squeezing_model(1.0, 0.5, 1.0, 1.0, 2.0);
    const double ts = 1.0;
    const auto strat = SplitStrategy::example_symmetric;
    const Complex beta(1.0, 0.0);
    const auto c_star = channels::lowering_c_at(m, ts, strat, 1e-12);
    const auto s0 = gaussian::eigenstate_of(c_star, beta);

    const double d2nu = entropy::nu_second_derivative(m, ts, strat);
    const double w4s = wsolve::solve_w(m, ts, 1e-12).at(ts).w4;
    const double e = std::exp(-w4s);
    const double c4_theory = 0.125 * e * (2.0 - e) * d2nu * d2nu;

    // least-squares quartic coefficient over a symmetric sample set
    double num = 0.0, den = 0.0;
    for (double d : {-0.1, -0.08, -0.06, -0.04, -0.02, 0.02, 0.04, 0.06, 0.08, 0.1}) {
        const double y =
            entropy::wehrl_gaussian(channels::dp_propagate(m, s0, ts + d, strat, 1e-12)) - 1.0;
        num += std::pow(d, 4) * y;
        den += std::pow(d, 8);
    }
    const double c4_fit = num / den;
    const double dev_c4 = std::abs(c4_fit / c4_theory - 1.0);

    double worst_ratio_dev = 0.0;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        const auto win = entropy::scan_window(m, ts, beta, eps, strat, 3.0 * ts, 1e-10);
        const double half = 0.5 * (win.t_hi - win.t_lo);
        const double formula = entropy::delta_t_formula(eps, w4s, d2nu);
        worst_ratio_dev = std::max(worst_ratio_dev, std::abs(formula - half) / half);
    }
    report(7, dev_c4 <= 0.10 && worst_ratio_dev <= 0.25,
           fmt("quartic law: fitted/theory - 1 = %.3f (<= 0.10); Delta-t formula vs scan "
               "half-width worst dev = %.3f (<= 0.25) for eps in {1e-2, 1e-3, 1e-4}",
               dev_c4, worst_ratio_dev));
}

// 8. Filter existence threshold and the non-CP witness.
void criterion_8() {
    // B-vacuum with zero qp correlation; existence must flip at
    // delta = 1/(8 <p^2>).
    const double sqq = 0.35;
    gaussian::GaussianState s;
    s.cov << sqq, 0.0, 0.0, 0.25 / sqq;
    const double threshold = 1.0 / (8.0 * s.cov(1, 1));
    const double w4 = 0.6;
    auto exists_at = [&](double delta) {
        algebra::RSplit split;
        split.r1 = 0.0;
        split.r2 = delta * std::exp(w4);
        return channels::impurity_filter(s, split, w4, 1.0, channels::FilterDirection::deconvolve)
            .exists;
    };
    double lo = 0.0, hi = 2.0 * threshold;
    for (int i = 0; i < 64; ++i) {
        const double mid = 0.5 * (lo + hi);
        (exists_at(mid) ? lo : hi) = mid;
    }
    const double dflip = std::abs(0.5 * (lo + hi) - threshold);

    // non-CP witness: physical in, unphysical out
    gaussian::GaussianState witness;
    witness.cov << 0.6, 0.0, 0.0, 0.5;
    witness.validate();
    algebra::RSplit split;
    split.r1 = 0.0;
    split.r2 = 0.1 * std::exp(0.5);
    const auto filtered =
        channels::impurity_filter(witness, split, 0.5, 1.0, channels::FilterDirection::deconvolve);
    const bool witness_ok = filtered.exists && !filtered.physical;
    report(8, dflip <= 1e-9 && witness_ok,
           fmt("existence flips at delta = 1/(8<p^2>): |d| = %.3e (<= 1e-9); non-CP witness "
               "Sigma = diag(0.6, 0.5), delta = 0.1: exists = %d, physical = %d (archived)",
               dflip, filtered.exists ? 1 : 0, filtered.physical ? 1 : 0));
}

// 9. Qubit layer: round trip, gate identities, NOT fidelity, eavesdropper.
void criterion_9() {
    double d_round = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double theta = uni(-3, 3), phi = uni(0.0, 2 * pi - 1e-9);
        const double dq = uni(0.4, 1.5), sqp = uni(-0.2, 0.2);
        const double dp = std::sqrt(0.25 + sqp * sqp) / dq;
        const auto c = qubit::qubit_decode(qubit::qubit_encode(theta, phi, dq, dp, sqp));
        d_round = std::max(d_round, std::abs(c.theta - theta));
        d_round = std::max(d_round, std::abs(c.phi - phi));
    }

    const auto st = qubit::qubit_encode(0.7, 1.1, 0.9, std::sqrt(0.25 + 0.01) / 0.9, 0.1);
    const auto xx = qubit::qubit_decode(qubit::gate(qubit::gate(st, qubit::Gate::X), qubit::Gate::X));
    const auto base = qubit::qubit_decode(st);
    const bool xx_id = xx.theta == base.theta && xx.phi == base.phi;
    const auto zx =
        qubit::qubit_decode(qubit::gate(qubit::gate(st, qubit::Gate::X), qubit::Gate::Z));
    const auto y = qubit::qubit_decode(qubit::gate(st, qubit::Gate::Y));
    const bool zx_eq_y = zx.theta == y.theta && zx.phi == y.phi;

    const auto ref = model::make_reference_model(1.0, 1.0, 2.0);
    const Complex beta(1.0, 0.5);
    const auto out = qubit::not_circuit(ref, beta, 1.0, SplitStrategy::q_filter, 1e-12);
    const auto b_star = channels::lowering_b_at(ref, 1.0, SplitStrategy::q_filter, 1e-12);
    const auto target = gaussian::eigenstate_of(b_star, -beta * std::exp(-0.5));
    const double not_fid = gaussian::fidelity(out, target);

    // eavesdropper on the acceptance squeezing scenario (s0 = 2)
    const auto sqz = model::make_squeezing_model(1.0, 2.0, 1.0, 1.0, 2.0);
    const auto strat = SplitStrategy::example_symmetric;
    const auto c_star = channels::lowering_c_at(sqz, 1.0, strat, 1e-12);
    const auto s0 = gaussian::eigenstate_of(c_star, beta);
    double worst_purity = 0.0, worst_excess = 1e300;
    for (double t : {0.7, 1.3}) {
        const auto eav = channels::dp_propagate(sqz, s0, t, strat, 1e-12);
        worst_purity = std::max(worst_purity, gaussian::purity(eav));
        worst_excess = std::min(worst_excess, entropy::wehrl_gaussian(eav) - 1.0);
    }
    report(9,
           d_round <= 1e-12 && xx_id && zx_eq_y && not_fid >= 1.0 - 1e-9 &&
               worst_purity < 0.999 && worst_excess > 1e-4,
           fmt("qubit layer: round-trip max err = %.3e (<= 1e-12), X^2 = 1: %d, decode(ZX) = "
               "decode(Y): %d, NOT fidelity = %.12f (>= 1 - 1e-9); eavesdrop at t* +/- 0.3: "
               "max purity = %.6f (< 0.999), min S_W - 1 = %.3e (> 1e-4) [archived]",
               d_round, xx_id ? 1 : 0, zx_eq_y ? 1 : 0, not_fid, worst_purity, worst_excess));
}

// 10. Controlled gate on the grid: norm, row sums, symmetric control odds.
void criterion_10() {
    const auto t0 = std::chrono::steady_clock::now();
    const double nu = 0.3;
    const auto op = algebra::from_bogoliubov(std::sqrt(1.0 + nu * nu), nu, 1.0);
    qubit::GridSpec2D spec;  // 512 x 512
    const auto res = qubit::cnot_apply(Complex(1.0, 0.5), op, spec);
    const double dnorm = std::abs(res.grid.norm - 1.0);
    double drows = 0.0;
    for (int c = 0; c < 2; ++c)
        drows = std::max(drows, std::abs(res.outcome.conditional[c][0] +
                                         res.outcome.conditional[c][1] - 1.0));
    const auto sym = qubit::cnot_apply(Complex(0.0, 0.0), algebra::standard_lowering(1.0), spec);
    const double dctrl = std::abs(sym.outcome.control_prob[1] - 0.5);
    const double dt = seconds_since(t0);
    report(10, dnorm <= 1e-6 && drows <= 1e-6 && dctrl <= 1e-6 && dt < 30.0,
           fmt("controlled gate at 512^2: |norm - 1| = %.3e, worst |row sum - 1| = %.3e, "
               "|control p1 - 1/2| = %.3e (all <= 1e-6), %.1fs (< 30s)",
               dnorm, drows, dctrl, dt));
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d/10 criteria passed (%.1fs total)\n", 10 - g_failures, seconds_since(t0));
    return g_failures == 0 ? 0 : 1;
}
