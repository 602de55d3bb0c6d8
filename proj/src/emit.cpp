#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "dqdtherm/sweep.hpp"
#include "dqdtherm/version.hpp"

namespace dqdtherm {

namespace {

std::string g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string g12_list(const std::vector<double>& values) {
    std::string out;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += g12(values[i]);
    }
    return out;
}

std::string opt_field(const std::optional<double>& v) {
    return v ? g12(*v) : std::string();
}

// key/value pairs echoed into both formats, in a fixed order
std::vector<std::pair<std::string, std::string>> metadata_pairs(const SweepConfig& cfg) {
    return {
        {"version", kVersion},
        {"units", "energies meV; voltages mV; inverse temperatures 1/meV; "
                  "currents in units of Gamma; kB = hbar = e = 1"},
        {"eps", g12_list(cfg.eps_values)},
        {"delta", g12(cfg.delta)},
        {"tunnel", g12(cfg.tunnel)},
        {"coulomb", g12(cfg.coulomb)},
        {"beta_h", g12(cfg.beta_hot)},
        {"beta_c", g12(cfg.beta_cold)},
        {"mu_h", g12(cfg.mu_hot)},
        {"gamma_h", g12(cfg.gamma_hot)},
        {"gamma_c", g12(cfg.gamma_cold)},
        {"v_min", g12(cfg.v_min)},
        {"v_max", g12(cfg.v_max)},
        {"v_points", std::to_string(cfg.v_points)},
        {"eps_min", g12(cfg.eps_min)},
        {"eps_max", g12(cfg.eps_max)},
        {"eps_points", std::to_string(cfg.eps_points)},
        {"threads", std::to_string(cfg.threads)},
        {"format", cfg.format},
        {"refine_tol", g12(cfg.refine_tol_mv)},
    };
}

void spot_check(const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
    for (const auto& row : rows) {
        if (!(row.sigma >= -1e-12)) {
            std::ostringstream msg;
            msg << "emit: row at eps=" << row.eps << ", V=" << row.voltage
                << " has negative entropy production " << row.sigma;
            throw Error(msg.str());
        }
    }
    // conservation re-check on a deterministic 1% sample
    std::mt19937 rng(0x5eedu ^ static_cast<unsigned>(rows.size()));
    const size_t samples = std::max<size_t>(1, rows.size() / 100);
    std::uniform_int_distribution<size_t> pick(0, rows.size() - 1);
    for (size_t s = 0; s < samples; ++s) {
        const SweepRow& row = rows[pick(rng)];
        const PointResult res = evaluate_point(cfg, row.eps, row.voltage);
        const double energy_gap = std::abs(res.cur.hot.energy + res.cur.cold.energy);
        const double matter_gap = std::abs(res.cur.hot.matter + res.cur.cold.matter);
        if (energy_gap > 1e-11 || matter_gap > 1e-11) {
            std::ostringstream msg;
            msg << "emit: conservation violated at eps=" << row.eps << ", V="
                << row.voltage << " (energy " << energy_gap << ", matter "
                << matter_gap << ")";
            throw Error(msg.str());
        }
    }
}

}  // namespace

void write_csv(std::ostream& os, const SweepConfig& cfg,
               const std::vector<SweepRow>& rows) {
    for (const auto& [key, value] : metadata_pairs(cfg))
        os << "# " << key << " = " << value << "\n";
    os << "V,eps,I_E_H,I_M_H,J_H,J_C,sigma,eta_norm,phi_norm,zeta,regime\n";
    for (const auto& r : rows) {
        os << g12(r.voltage) << ',' << g12(r.eps) << ',' << g12(r.i_energy_hot)
           << ',' << g12(r.i_matter_hot) << ',' << g12(r.j_hot) << ','
           << g12(r.j_cold) << ',' << g12(r.sigma) << ',' << opt_field(r.eta_norm)
           << ',' << opt_field(r.phi_norm) << ',' << opt_field(r.zeta) << ','
           << regime_name(r.regime) << "\n";
    }
}

void write_json(std::ostream& os, const SweepConfig& cfg,
                const std::vector<SweepRow>& rows) {
    nlohmann::ordered_json doc;
    auto& meta = doc["metadata"];
    for (const auto& [key, value] : metadata_pairs(cfg)) meta[key] = value;
    auto& out_rows = doc["rows"];
    out_rows = nlohmann::ordered_json::array();
    auto opt = [](const std::optional<double>& v) {
        return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
    };
    for (const auto& r : rows) {
        out_rows.push_back({{"V", r.voltage},
                            {"eps", r.eps},
                            {"I_E_H", r.i_energy_hot},
                            {"I_M_H", r.i_matter_hot},
                            {"J_H", r.j_hot},
                            {"J_C", r.j_cold},
                            {"sigma", r.sigma},
                            {"eta_norm", opt(r.eta_norm)},
                            {"phi_norm", opt(r.phi_norm)},
                            {"zeta", opt(r.zeta)},
                            {"regime", regime_name(r.regime)}});
    }
    os << doc.dump(2) << "\n";
}

void emit(const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
    if (!rows.empty()) spot_check(cfg, rows);

    std::ostringstream buffer;
    if (cfg.format == "json")
        write_json(buffer, cfg, rows);
    else
        write_csv(buffer, cfg, rows);

    if (cfg.out_path.empty()) {
        std::cout << buffer.str();
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw Error("emit: cannot open '" + cfg.out_path + "' for writing");
    out << buffer.str();
    if (!out) throw Error("emit: write failed for '" + cfg.out_path + "'");
}

}  // namespace dqdtherm
