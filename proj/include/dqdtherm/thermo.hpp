#ifndef DQDTHERM_THERMO_HPP
#define DQDTHERM_THERMO_HPP

#include <optional>
#include <vector>

#include "dqdtherm/kinetics.hpp"

namespace dqdtherm {

/// Steady-state flows of one reservoir, positive into the system.
struct LeadCurrents {
    double energy;  ///< I_E, meV * Gamma
    double matter;  ///< I_M, Gamma
    double heat;    ///< J = I_E - mu * I_M, meV * Gamma

    /// One-way (gross) flux magnitudes; they set the roundoff scale of the
    /// net currents, which cancel to machine noise at equilibrium.
    double gross_energy;
    double gross_matter;
};

struct CurrentSet {
    LeadCurrents hot;
    LeadCurrents cold;

    const LeadCurrents& at(Lead l) const { return l == Lead::Hot ? hot : cold; }
};

/// Residual gate on the stationarity precondition of currents().
inline constexpr double kStationaryTol = 1e-10;

/// Per-channel bookkeeping of the energy and matter currents:
/// I_M = sum of net up-fluxes, I_E the same weighted by the Bohr energies.
/// Throws NotStationary unless ||L p||_inf passes the residual gate.
CurrentSet currents(const RateGenerator& gen, const Populations& p,
                    const BathSetup& baths);

/// Entropy production rate (k_B = 1, units of Gamma):
///   sigma = -beta_H J^H - beta_C J^C
///         = (beta_C - beta_H) I_E^H + (beta_H mu_H - beta_C mu_C) I_M^H.
/// Both forms are computed; they agree iff the currents are conserved, so a
/// mismatch beyond tolerance throws FormMismatch. The tolerance carries a
/// roundoff guard proportional to the gross fluxes, keeping the check
/// meaningful at equilibrium where everything cancels.
double entropy_production(const CurrentSet& cur, const BathSetup& baths);

/// One term of the per-transition entropy decomposition.
struct TransitionEntropy {
    int from;
    int to;
    Lead lead;
    double value;  ///< (W_ab p_b - W_ba p_a) ln(W_ab p_b / W_ba p_a) >= 0
};

/// Schnakenberg decomposition per channel and reservoir. Terms are
/// individually nonnegative and sum to entropy_production at stationarity;
/// channels with zero weight contribute exactly zero.
std::vector<TransitionEntropy> entropy_by_transition(const RateGenerator& gen,
                                                     const Populations& p);

double entropy_sum(const std::vector<TransitionEntropy>& terms);

/// Both-lead total for one channel.
double channel_entropy(const std::vector<TransitionEntropy>& terms, int from, int to);

/// Criterion energy Theta = (beta_C mu_C - beta_H mu_H) / (beta_C - beta_H),
/// the reservoir-determined transition energy at which the thermal and
/// chemical driving forces cancel. Throws EqualTemperatures when undefined.
double theta(const BathSetup& baths);

enum class Regime { Engine, Refrigerator, Dud };

const char* regime_name(Regime r);

/// |x| below this is treated as zero when classifying the regime, so the
/// labels do not flap at stall points.
inline constexpr double kRegimeDeadBand = 1e-13;

/// |I_E^H| below this makes zeta meaningless (one-sided infinities).
inline constexpr double kZetaCurrentFloor = 1e-14;

Regime classify_regime(const CurrentSet& cur);

struct Performance {
    double sigma;
    std::vector<TransitionEntropy> sigma_by_transition;
    std::optional<double> eta;    ///< engine efficiency, set in Engine regime
    std::optional<double> phi;    ///< COP, set in Refrigerator regime
    std::optional<double> theta;  ///< absent when beta_C = beta_H
    std::optional<double> zeta;   ///< Theta I_M^H / I_E^H, absent near I_E^H = 0
    Regime regime;
    double carnot_eta;  ///< 1 - beta_H / beta_C
    double carnot_phi;  ///< beta_H / (beta_C - beta_H)
};

/// Assemble the performance figures of one operating point.
///
/// Engine: eta = (J^H + J^C) / J^H, cross-checked against the current-ratio
/// form (mu_C - mu_H) / (I_E^H/I_M^H - mu_H). Refrigerator: phi = heat
/// removed from C per unit input work, J^C / -(J^H + J^C), cross-checked
/// against (I_E^H/I_M^H - mu_C) / (mu_C - mu_H). A cross-check failure
/// throws FormMismatch. Dud points carry neither eta nor phi.
Performance performance(const CurrentSet& cur, const BathSetup& baths,
                        std::vector<TransitionEntropy> sigma_map);

}  // namespace dqdtherm

#endif
