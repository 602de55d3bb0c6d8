// dqdtherm command-line front end: voltage sweeps, (eps, V) maps, critical
// points, and single-point evaluation for the double-dot thermoelectric
// model.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "dqdtherm/sweep.hpp"
#include "dqdtherm/version.hpp"

namespace {

using dqdtherm::SweepConfig;

struct CliOverrides {
    std::string config_path;
    std::vector<double> eps;
    std::optional<double> delta, tunnel, coulomb;
    std::optional<double> beta_h, beta_c, mu_h, gamma_h, gamma_c;
    std::optional<double> v_min, v_max;
    std::optional<int> v_points;
    std::optional<double> eps_min, eps_max;
    std::optional<int> eps_points;
    std::optional<int> threads;
    std::optional<std::string> format, out;
    std::optional<double> refine_tol;
    double point_voltage = 0.0;
};

void add_common_options(CLI::App* cmd, CliOverrides& o) {
    cmd->add_option("--config", o.config_path, "flat key = value config file");
    cmd->add_option("--eps", o.eps, "dot level(s), meV")->delimiter(',');
    cmd->add_option("--delta", o.delta, "level detuning, meV");
    cmd->add_option("--tunnel", o.tunnel, "inter-dot tunneling, meV");
    cmd->add_option("--coulomb", o.coulomb, "inter-dot Coulomb energy, meV");
    cmd->add_option("--beta-h", o.beta_h, "hot inverse temperature, 1/meV");
    cmd->add_option("--beta-c", o.beta_c, "cold inverse temperature, 1/meV");
    cmd->add_option("--mu-h", o.mu_h, "hot chemical potential, meV");
    cmd->add_option("--gamma-h", o.gamma_h, "hot coupling rate, units of Gamma");
    cmd->add_option("--gamma-c", o.gamma_c, "cold coupling rate, units of Gamma");
    cmd->add_option("--v-min", o.v_min, "voltage grid start, mV");
    cmd->add_option("--v-max", o.v_max, "voltage grid end, mV");
    cmd->add_option("--v-points", o.v_points, "voltage grid size");
    cmd->add_option("--eps-min", o.eps_min, "level grid start (map), meV");
    cmd->add_option("--eps-max", o.eps_max, "level grid end (map), meV");
    cmd->add_option("--eps-points", o.eps_points, "level grid size (map)");
    cmd->add_option("--threads", o.threads, "worker threads");
    cmd->add_option("--format", o.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "output path (default stdout)");
    cmd->add_option("--refine-tol", o.refine_tol, "critical-point tolerance, mV");
}

SweepConfig resolve_config(const CliOverrides& o) {
    SweepConfig cfg;
    if (!o.config_path.empty()) cfg = dqdtherm::load_config_file(o.config_path);
    if (!o.eps.empty()) cfg.eps_values = o.eps;
    if (o.delta) cfg.delta = *o.delta;
    if (o.tunnel) cfg.tunnel = *o.tunnel;
    if (o.coulomb) cfg.coulomb = *o.coulomb;
    if (o.beta_h) cfg.beta_hot = *o.beta_h;
    if (o.beta_c) cfg.beta_cold = *o.beta_c;
    if (o.mu_h) cfg.mu_hot = *o.mu_h;
    if (o.gamma_h) cfg.gamma_hot = *o.gamma_h;
    if (o.gamma_c) cfg.gamma_cold = *o.gamma_c;
    if (o.v_min) cfg.v_min = *o.v_min;
    if (o.v_max) cfg.v_max = *o.v_max;
    if (o.v_points) cfg.v_points = *o.v_points;
    if (o.eps_min) cfg.eps_min = *o.eps_min;
    if (o.eps_max) cfg.eps_max = *o.eps_max;
    if (o.eps_points) cfg.eps_points = *o.eps_points;
    if (o.threads) cfg.threads = *o.threads;
    if (o.format) cfg.format = *o.format;
    if (o.out) cfg.out_path = *o.out;
    if (o.refine_tol) cfg.refine_tol_mv = *o.refine_tol;
    cfg.validate();
    return cfg;
}

void write_report(const SweepConfig& cfg,
                  const std::vector<std::pair<std::string, std::string>>& fields) {
    std::ostringstream buf;
    if (cfg.format == "json") {
        nlohmann::ordered_json doc;
        for (const auto& [k, v] : fields) {
            if (v.empty())
                doc[k] = nullptr;
            else if (v.find_first_not_of("+-.0123456789eE") == std::string::npos)
                doc[k] = std::stod(v);
            else
                doc[k] = v;
        }
        buf << doc.dump(2) << "\n";
    } else {
        for (const auto& [k, v] : fields) buf << k << " = " << v << "\n";
    }
    if (cfg.out_path.empty()) {
        std::cout << buf.str();
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out)
        throw dqdtherm::Error("cannot open '" + cfg.out_path + "' for writing");
    out << buf.str();
}

std::string fmt(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.12g", v);
    return b;
}

std::string fmt_opt(const std::optional<double>& v) {
    return v ? fmt(*v) : std::string();
}

int run_sweep(const SweepConfig& cfg) {
    std::vector<dqdtherm::SweepRow> rows;
    for (double eps : cfg.eps_values) {
        auto part = dqdtherm::sweep_voltage(cfg, eps);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    dqdtherm::emit(cfg, rows);
    return 0;
}

int run_map(const SweepConfig& cfg) {
    dqdtherm::emit(cfg, dqdtherm::sweep_grid(cfg));
    return 0;
}

int run_critical(const SweepConfig& cfg) {
    const double eps = cfg.eps_values.front();
    const auto rows = dqdtherm::sweep_voltage(cfg, eps);
    const auto crit =
        dqdtherm::find_critical_points(cfg, eps, rows, cfg.refine_tol_mv);
    write_report(cfg, {
        {"eps", fmt(eps)},
        {"v_eta0", fmt_opt(crit.v_eta0)},
        {"v_phi0", fmt_opt(crit.v_phi0)},
        {"v_eta_max", fmt_opt(crit.v_eta_max)},
        {"eta_max_norm", fmt_opt(crit.eta_max_norm)},
        {"v_phi_max", fmt_opt(crit.v_phi_max)},
        {"phi_max_norm", fmt_opt(crit.phi_max_norm)},
    });
    return 0;
}

int run_point(const SweepConfig& cfg, double voltage) {
    const double eps = cfg.eps_values.front();
    const auto res = dqdtherm::evaluate_point(cfg, eps, voltage);
    std::vector<std::pair<std::string, std::string>> fields = {
        {"eps", fmt(eps)},
        {"V", fmt(voltage)},
        {"regime", dqdtherm::regime_name(res.perf.regime)},
        {"I_E_H", fmt(res.cur.hot.energy)},
        {"I_M_H", fmt(res.cur.hot.matter)},
        {"J_H", fmt(res.cur.hot.heat)},
        {"J_C", fmt(res.cur.cold.heat)},
        {"sigma", fmt(res.perf.sigma)},
        {"eta", fmt_opt(res.perf.eta)},
        {"phi", fmt_opt(res.perf.phi)},
        {"theta", fmt_opt(res.perf.theta)},
        {"zeta", fmt_opt(res.perf.zeta)},
        {"carnot_eta", fmt(res.perf.carnot_eta)},
        {"carnot_phi", fmt(res.perf.carnot_phi)},
    };
    for (int i = 0; i < dqdtherm::kNumStates; ++i)
        fields.emplace_back(
            "p_" + std::string(dqdtherm::state_name(static_cast<dqdtherm::State>(i))),
            fmt(res.pops.p(i)));
    for (const auto& term : res.perf.sigma_by_transition) {
        std::string key = "sigma_";
        key += dqdtherm::state_name(static_cast<dqdtherm::State>(term.from));
        key += "_to_";
        key += dqdtherm::state_name(static_cast<dqdtherm::State>(term.to));
        key += "_";
        key += dqdtherm::lead_name(term.lead);
        fields.emplace_back(key, fmt(term.value));
    }
    write_report(cfg, fields);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady-state thermodynamics of a double-quantum-dot machine"};
    app.set_version_flag("--version", dqdtherm::kVersion);
    app.require_subcommand(1);

    CliOverrides o;
    CLI::App* sweep = app.add_subcommand("sweep", "1-D voltage sweep");
    CLI::App* map = app.add_subcommand("map", "2-D (eps, V) map");
    CLI::App* critical =
        app.add_subcommand("critical", "sweep plus refined critical points");
    CLI::App* point = app.add_subcommand("point", "evaluate one operating point");
    for (CLI::App* cmd : {sweep, map, critical, point}) add_common_options(cmd, o);
    point->add_option("--v", o.point_voltage, "bias voltage, mV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 2;
    }

    try {
        const SweepConfig cfg = resolve_config(o);
        if (sweep->parsed()) return run_sweep(cfg);
        if (map->parsed()) return run_map(cfg);
        if (critical->parsed()) return run_critical(cfg);
        return run_point(cfg, o.point_voltage);
    } catch (const dqdtherm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const dqdtherm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
