#ifndef DQDTHERM_RESERVOIR_HPP
#define DQDTHERM_RESERVOIR_HPP

#include "dqdtherm/errors.hpp"

namespace dqdtherm {

enum class Lead : int { Hot = 0, Cold = 1 };

const char* lead_name(Lead lead);

/// A fermionic reservoir in the wide-band limit. beta in 1/meV, mu in meV,
/// gamma in units of the bare rate Gamma.
struct ReservoirParams {
    double beta;
    double mu;
    double gamma;
    Lead label;

    void validate() const;  ///< throws Error unless beta > 0 and gamma >= 0
};

/// Hot and cold reservoirs of one operating point.
struct BathSetup {
    ReservoirParams hot;
    ReservoirParams cold;

    /// Bias mu_C - mu_H in mV (numerically meV with e = 1).
    double voltage() const { return cold.mu - hot.mu; }

    /// Sweep-mode constructor: enforces mu_C = mu_H + V.
    static BathSetup biased(const ReservoirParams& hot, double beta_cold,
                            double gamma_cold, double voltage_mv);

    void validate() const;
};

/// |x| above which the Fermi function saturates to exactly 0 or 1.
inline constexpr double kFermiSaturation = 700.0;

/// Fermi-Dirac occupation 1 / (1 + exp(beta (energy - mu))), overflow-safe.
double fermi(double beta, double mu, double energy);

/// Golden-rule rates of one channel against one reservoir, units of Gamma.
struct RatePair {
    double up;    ///< absorb an electron, climb the transition
    double down;  ///< emit an electron
};

/// up = gamma * weight * f(bohr_energy), down the complement; the pair sums
/// to gamma * weight exactly.
RatePair rate_pair(const ReservoirParams& res, double weight, double bohr_energy);

}  // namespace dqdtherm

#endif
