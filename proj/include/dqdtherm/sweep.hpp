#ifndef DQDTHERM_SWEEP_HPP
#define DQDTHERM_SWEEP_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dqdtherm/thermo.hpp"

namespace dqdtherm {

/// Everything a sweep needs: model, baths, grids, execution and output.
struct SweepConfig {
    // model (meV)
    std::vector<double> eps_values{6.0, 8.0, 10.0};  ///< 1-D sweep levels
    double delta = 0.0;
    double tunnel = 0.1;
    double coulomb = 0.1;

    // baths
    double beta_hot = 0.5;  ///< 1/meV
    double beta_cold = 1.0;
    double mu_hot = 1.0;  ///< meV; mu_cold = mu_hot + V along the sweep
    double gamma_hot = 1.0;
    double gamma_cold = 1.0;

    // voltage grid (mV)
    double v_min = 0.0;
    double v_max = 5.0;
    int v_points = 501;

    // epsilon grid for 2-D maps (meV)
    double eps_min = 2.0;
    double eps_max = 12.0;
    int eps_points = 201;

    // execution / output
    int threads = 1;
    std::string format = "csv";  // csv | json
    std::string out_path;        // empty = stdout
    double refine_tol_mv = 1e-6;

    void validate() const;  ///< throws ConfigError naming the bad field
};

/// Parse a flat key = value file ('#' comments). Unknown keys and malformed
/// values raise ConfigError with the offending line number.
SweepConfig load_config_file(const std::string& path);

/// One evaluated grid point, the unit of all emitted data.
struct SweepRow {
    double voltage;  // mV
    double eps;      // meV
    double i_energy_hot;
    double i_matter_hot;
    double j_hot;
    double j_cold;
    double sigma;
    std::optional<double> eta_norm;  ///< eta / eta_Carnot, Engine rows only
    std::optional<double> phi_norm;  ///< phi / phi_Carnot, Refrigerator rows only
    std::optional<double> zeta;
    Regime regime;
};

/// Full pipeline state of one operating point, for callers that need more
/// than the emitted row.
struct PointResult {
    EigenSystem eig;
    RateGenerator gen;
    Populations pops;
    CurrentSet cur;
    Performance perf;
    SweepRow row;
};

/// Run one operating point at the given level and bias.
PointResult evaluate_point(const SweepConfig& cfg, double eps, double voltage);

/// 1-D bias sweep at a fixed level; rows ordered by V. Requires a single
/// entry in cfg.eps_values (or use the explicit-eps overload). Grid points
/// are independent work items; cfg.threads workers fill a preallocated row
/// vector, so the output never depends on scheduling.
std::vector<SweepRow> sweep_voltage(const SweepConfig& cfg);
std::vector<SweepRow> sweep_voltage(const SweepConfig& cfg, double eps);

/// Row-major (eps outer, V inner) grid over both sweep axes.
std::vector<SweepRow> sweep_grid(const SweepConfig& cfg);

/// Refined regime boundaries and performance extrema of a 1-D sweep.
struct CriticalPoints {
    std::optional<double> v_eta0;      ///< engine edge: I_M^H sign change
    std::optional<double> v_phi0;      ///< refrigerator edge: J^C sign change
    std::optional<double> v_eta_max;   ///< argmax of eta/eta_C
    std::optional<double> eta_max_norm;
    std::optional<double> v_phi_max;   ///< argmax of phi/phi_C
    std::optional<double> phi_max_norm;
    /// Level-direction boundaries of an eps cut; not populated by the
    /// voltage refinement.
    std::optional<double> eps_eta0;
    std::optional<double> eps_phi0;
};

/// Bisect the regime boundaries and golden-section the extrema found in a
/// voltage sweep, re-evaluating the pipeline at cfg's fixed level. All
/// refined to tol_mv. Throws NoTransition when the rows contain no engine
/// exit and no refrigerator entry to refine.
CriticalPoints find_critical_points(const SweepConfig& cfg, double eps,
                                    const std::vector<SweepRow>& rows,
                                    double tol_mv = 1e-6);

/// Write rows with a metadata block. CSV: '#'-prefixed metadata, one header
/// row, 12 significant digits, empty fields for absent values. JSON: one
/// object {"metadata": ..., "rows": [...]} with nulls for absent values.
/// Identical inputs produce byte-identical output.
void write_csv(std::ostream& os, const SweepConfig& cfg,
               const std::vector<SweepRow>& rows);
void write_json(std::ostream& os, const SweepConfig& cfg,
                const std::vector<SweepRow>& rows);

/// Emit per cfg.format to cfg.out_path (stdout when empty). Re-checks
/// sigma >= -1e-12 on every row and the conservation identities on a 1%
/// deterministic sample before writing.
void emit(const SweepConfig& cfg, const std::vector<SweepRow>& rows);

}  // namespace dqdtherm

#endif
