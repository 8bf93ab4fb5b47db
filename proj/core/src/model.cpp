#include "squeezelab/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "squeezelab/wsolve.hpp"

namespace squeezelab::model {

QdeCoefficients make_reference_model(double omega, double g, double c) {
    if (g <= 0.0) throw std::invalid_argument("reference model: g must be positive");
    if (c <= 1.0) throw std::invalid_argument("reference model: c must exceed 1");
    QdeCoefficients m;
    m.b11 = [omega](double) { return omega / 2.0; };
    m.b12 = [](double) { return 0.0; };
    m.b22 = [omega](double) { return omega / 2.0; };
    m.k1 = [c, g](double) { return c * g / 4.0; };
    m.k2 = [c, g](double) { return c * g / 4.0; };
    m.k3 = [g](double) { return std::complex<double>(0.0, -g / 4.0); };
    m.hbar = 1.0;
    m.t_min = 1e-3;
    return m;
}

QdeCoefficients make_squeezing_model(double omega, double s0, double t_star, double g, double c) {
    if (t_star <= 0.0) throw std::invalid_argument("squeezing model: t_star must be positive");
    if (g <= 0.0) throw std::invalid_argument("squeezing model: g must be positive");
    if (c <= 1.0) throw std::invalid_argument("squeezing model: c must exceed 1");
    QdeCoefficients m;
    m.b11 = [omega, s0, t_star](double t) { return (omega + s0 * (t - t_star)) / 2.0; };
    m.b12 = [](double) { return 0.0; };
    m.b22 = [omega, s0, t_star](double t) { return (omega - s0 * (t - t_star)) / 2.0; };
    m.k1 = [c, g](double) { return c * g / 4.0; };
    m.k2 = [c, g](double) { return c * g / 4.0; };
    // Re k3 cancels the Hamiltonian drive in dw3/dt, keeping w3 = 0 and the
    // reference-model closed forms w1 = w2 = (c/4)(e^{gt}-1), w4 = g t.
    m.k3 = [s0, t_star, g, c](double t) {
        const double w1 = (c / 4.0) * std::expm1(g * t);
        const double re = 2.0 * std::exp(-g * t) * w1 * s0 * (t - t_star);
        return std::complex<double>(re, -g / 4.0);
    };
    m.hbar = 1.0;
    m.t_min = 1e-3 * t_star;
    return m;
}

QdeCoefficients make_optical_model(double gamma, double nbar) {
    if (gamma <= 0.0) throw std::invalid_argument("optical model: gamma must be positive");
    if (nbar < 0.0) throw std::invalid_argument("optical model: nbar must be non-negative");
    QdeCoefficients m;
    m.b11 = [](double) { return 0.0; };
    m.b12 = [](double) { return 0.0; };
    m.b22 = [](double) { return 0.0; };
    // Expansion of the rotating-wave dissipators over the quadrature
    // brackets with a = (q + ip)/sqrt(2 hbar), hbar = 1.
    m.k1 = [gamma, nbar](double) { return gamma * (2.0 * nbar + 1.0) / 4.0; };
    m.k2 = [gamma, nbar](double) { return gamma * (2.0 * nbar + 1.0) / 4.0; };
    m.k3 = [gamma](double) { return std::complex<double>(0.0, -gamma / 4.0); };
    m.hbar = 1.0;
    m.t_min = 1e-3;
    return m;
}

namespace {

double interp_table(const CoefficientTable& tab, double t, const char* name) {
    if (tab.t.empty()) return 0.0;
    if (tab.t.size() != tab.value.size())
        throw std::invalid_argument(std::string("table model: ragged series for ") + name);
    if (t < tab.t.front() - 1e-12 || t > tab.t.back() + 1e-12)
        throw std::out_of_range(std::string("table model: coefficient ") + name +
                                " undefined at t=" + std::to_string(t));
    t = std::clamp(t, tab.t.front(), tab.t.back());
    auto it = std::upper_bound(tab.t.begin(), tab.t.end(), t);
    if (it == tab.t.begin()) return tab.value.front();
    if (it == tab.t.end()) return tab.value.back();
    const auto k = static_cast<std::size_t>(it - tab.t.begin());
    const double t0 = tab.t[k - 1], t1 = tab.t[k];
    const double s = (t1 == t0) ? 0.0 : (t - t0) / (t1 - t0);
    return (1.0 - s) * tab.value[k - 1] + s * tab.value[k];
}

void require_strictly_increasing(const CoefficientTable& tab, const char* name) {
    for (std::size_t i = 1; i < tab.t.size(); ++i)
        if (!(tab.t[i] > tab.t[i - 1]))
            throw std::invalid_argument(std::string("table model: abscissae of ") + name +
                                        " must be strictly increasing");
}

}  // namespace

QdeCoefficients make_table_model(const TableData& data) {
    require_strictly_increasing(data.b11, "b11");
    require_strictly_increasing(data.b12, "b12");
    require_strictly_increasing(data.b22, "b22");
    require_strictly_increasing(data.k1, "k1");
    require_strictly_increasing(data.k2, "k2");
    require_strictly_increasing(data.k3_re, "k3_re");
    require_strictly_increasing(data.k3_im, "k3_im");
    QdeCoefficients m;
    m.b11 = [tab = data.b11](double t) { return interp_table(tab, t, "b11"); };
    m.b12 = [tab = data.b12](double t) { return interp_table(tab, t, "b12"); };
    m.b22 = [tab = data.b22](double t) { return interp_table(tab, t, "b22"); };
    m.k1 = [tab = data.k1](double t) { return interp_table(tab, t, "k1"); };
    m.k2 = [tab = data.k2](double t) { return interp_table(tab, t, "k2"); };
    m.k3 = [re = data.k3_re, im = data.k3_im](double t) {
        return std::complex<double>(interp_table(re, t, "k3_re"), interp_table(im, t, "k3_im"));
    };
    m.hbar = data.hbar;
    m.t_min = data.t_min;
    return m;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

QdeCoefficients make_table_model_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("table model: cannot open " + path);

    std::string header;
    if (!std::getline(in, header)) throw std::invalid_argument("table model: empty CSV " + path);
    const auto names = split_csv_line(header);

    std::map<std::string, CoefficientTable*> known;
    TableData data;
    known["b11"] = &data.b11;
    known["b12"] = &data.b12;
    known["b22"] = &data.b22;
    known["k1"] = &data.k1;
    known["k2"] = &data.k2;
    known["k3_re"] = &data.k3_re;
    known["k3_im"] = &data.k3_im;

    // Header must pair columns as <name>_t,<name>.
    std::vector<CoefficientTable*> column_target(names.size(), nullptr);
    std::vector<bool> is_abscissa(names.size(), false);
    for (std::size_t i = 0; i < names.size(); ++i) {
        const std::string name = trim(names[i]);
        if (name.size() > 2 && name.substr(name.size() - 2) == "_t" &&
            known.count(name.substr(0, name.size() - 2))) {
            if (i + 1 >= names.size() || trim(names[i + 1]) != name.substr(0, name.size() - 2))
                throw std::invalid_argument("table model: column " + name +
                                            " must be followed by its value column");
            column_target[i] = known[name.substr(0, name.size() - 2)];
            is_abscissa[i] = true;
            column_target[i + 1] = column_target[i];
            ++i;
        } else if (!known.count(name)) {
            throw std::invalid_argument("table model: unknown column " + name);
        }
    }

    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        for (std::size_t i = 0; i + 1 < names.size() + 1 && i < cells.size(); ++i) {
            if (!is_abscissa[i] || column_target[i] == nullptr) continue;
            const std::string tc = trim(cells[i]);
            const std::string vc = i + 1 < cells.size() ? trim(cells[i + 1]) : std::string();
            if (tc.empty() && vc.empty()) continue;
            if (tc.empty() || vc.empty())
                throw std::invalid_argument("table model: half-empty pair in row '" + line + "'");
            std::size_t pos = 0;
            const double tv = std::stod(tc, &pos);
            if (pos != tc.size())
                throw std::invalid_argument("table model: bad number '" + tc + "'");
            const double vv = std::stod(vc, &pos);
            if (pos != vc.size())
                throw std::invalid_argument("table model: bad number '" + vc + "'");
            column_target[i]->t.push_back(tv);
            column_target[i]->value.push_back(vv);
        }
    }
    return make_table_model(data);
}

PhysicalityReport::Sample check_physicality_point(double t, const WPoint& w, double hbar) {
    PhysicalityReport::Sample s;
    s.t = t;
    s.w1_pos = w.w1 > 0.0;
    s.w2_pos = w.w2 > 0.0;
    const double em1 = std::expm1(w.w4);
    s.discriminant_ok = w.w1 * w.w2 - w.w3 * w.w3 - em1 * em1 / (16.0 * hbar * hbar) >= 0.0;
    s.w4_pos = w.w4 > 0.0;
    return s;
}

PhysicalityReport check_physicality(const wsolve::WTrajectory& w, double hbar) {
    PhysicalityReport report;
    report.samples.reserve(w.samples().size());
    for (const auto& sample : w.samples()) {
        auto s = check_physicality_point(sample.t, sample.w, hbar);
        if (!s.ok() && !report.first_violation_time) report.first_violation_time = sample.t;
        report.samples.push_back(s);
    }
    return report;
}

}  // namespace squeezelab::model
