#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "dqdtherm/model.hpp"
#include "dqdtherm/sweep.hpp"

namespace dqdtherm {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail_at(const std::string& path, int line, const std::string& msg) {
    std::ostringstream os;
    os << path << ":" << line << ": " << msg;
    throw ConfigError(os.str());
}

double parse_double(const std::string& path, int line, const std::string& key,
                    const std::string& value) {
    try {
        size_t consumed = 0;
        const double v = std::stod(value, &consumed);
        if (consumed != value.size())
            fail_at(path, line, "field '" + key + "': trailing junk in '" + value + "'");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail_at(path, line, "field '" + key + "': not a number: '" + value + "'");
    }
}

int parse_int(const std::string& path, int line, const std::string& key,
              const std::string& value) {
    const double v = parse_double(path, line, key, value);
    if (v != std::floor(v))
        fail_at(path, line, "field '" + key + "': expected an integer, got '" + value + "'");
    return static_cast<int>(v);
}

std::vector<double> parse_double_list(const std::string& path, int line,
                                      const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) fail_at(path, line, "field '" + key + "': empty list item");
        out.push_back(parse_double(path, line, key, item));
    }
    if (out.empty()) fail_at(path, line, "field '" + key + "': empty list");
    return out;
}

[[noreturn]] void bad_field(const std::string& field, const std::string& msg) {
    throw ConfigError("field '" + field + "': " + msg);
}

}  // namespace

void SweepConfig::validate() const {
    if (eps_values.empty()) bad_field("eps", "at least one level is required");
    if (!(tunnel >= 0.0)) bad_field("tunnel", "must be nonnegative");
    if (!(coulomb >= 0.0)) bad_field("coulomb", "must be nonnegative");
    if (std::hypot(delta, tunnel) < kDegeneracyGuard)
        bad_field("tunnel", "delta and tunnel cannot both be zero (degenerate doublet)");
    if (!(beta_hot > 0.0)) bad_field("beta_h", "must be positive");
    if (!(beta_cold > 0.0)) bad_field("beta_c", "must be positive");
    if (!(gamma_hot >= 0.0)) bad_field("gamma_h", "must be nonnegative");
    if (!(gamma_cold >= 0.0)) bad_field("gamma_c", "must be nonnegative");
    if (gamma_hot + gamma_cold <= 0.0)
        bad_field("gamma_h", "at least one reservoir must couple (gamma_h + gamma_c > 0)");
    if (v_points < 2) bad_field("v_points", "grids need at least 2 points");
    if (!(v_min < v_max)) bad_field("v_min", "v_min must be below v_max");
    if (eps_points < 2) bad_field("eps_points", "grids need at least 2 points");
    if (!(eps_min < eps_max)) bad_field("eps_min", "eps_min must be below eps_max");
    if (threads < 1) bad_field("threads", "must be at least 1");
    if (format != "csv" && format != "json")
        bad_field("format", "must be 'csv' or 'json' (got '" + format + "')");
    if (!(refine_tol_mv > 0.0)) bad_field("refine_tol", "must be positive");
}

SweepConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");

    SweepConfig cfg;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string stripped = trim(raw.substr(0, raw.find('#')));
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            fail_at(path, line, "expected 'key = value', got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) fail_at(path, line, "missing key before '='");
        if (value.empty()) fail_at(path, line, "field '" + key + "': missing value");

        if (key == "eps") cfg.eps_values = parse_double_list(path, line, key, value);
        else if (key == "delta") cfg.delta = parse_double(path, line, key, value);
        else if (key == "tunnel") cfg.tunnel = parse_double(path, line, key, value);
        else if (key == "coulomb") cfg.coulomb = parse_double(path, line, key, value);
        else if (key == "beta_h") cfg.beta_hot = parse_double(path, line, key, value);
        else if (key == "beta_c") cfg.beta_cold = parse_double(path, line, key, value);
        else if (key == "mu_h") cfg.mu_hot = parse_double(path, line, key, value);
        else if (key == "gamma_h") cfg.gamma_hot = parse_double(path, line, key, value);
        else if (key == "gamma_c") cfg.gamma_cold = parse_double(path, line, key, value);
        else if (key == "v_min") cfg.v_min = parse_double(path, line, key, value);
        else if (key == "v_max") cfg.v_max = parse_double(path, line, key, value);
        else if (key == "v_points") cfg.v_points = parse_int(path, line, key, value);
        else if (key == "eps_min") cfg.eps_min = parse_double(path, line, key, value);
        else if (key == "eps_max") cfg.eps_max = parse_double(path, line, key, value);
        else if (key == "eps_points") cfg.eps_points = parse_int(path, line, key, value);
        else if (key == "threads") cfg.threads = parse_int(path, line, key, value);
        else if (key == "format") cfg.format = value;
        else if (key == "out") cfg.out_path = value;
        else if (key == "refine_tol") cfg.refine_tol_mv = parse_double(path, line, key, value);
        else fail_at(path, line, "unknown key '" + key + "'");
    }

    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return cfg;
}

}  // namespace dqdtherm
