#include "dqdtherm/reservoir.hpp"

#include <cmath>
#include <sstream>

namespace dqdtherm {

const char* lead_name(Lead lead) {
    return lead == Lead::Hot ? "H" : "C";
}

void ReservoirParams::validate() const {
    if (!(beta > 0.0)) {
        std::ostringstream msg;
        msg << "reservoir " << lead_name(label) << ": beta must be positive (got "
            << beta << ")";
        throw Error(msg.str());
    }
    if (!(gamma >= 0.0)) {
        std::ostringstream msg;
        msg << "reservoir " << lead_name(label) << ": gamma must be nonnegative (got "
            << gamma << ")";
        throw Error(msg.str());
    }
}

BathSetup BathSetup::biased(const ReservoirParams& hot, double beta_cold,
                            double gamma_cold, double voltage_mv) {
    BathSetup setup{hot, {beta_cold, hot.mu + voltage_mv, gamma_cold, Lead::Cold}};
    setup.hot.label = Lead::Hot;
    setup.validate();
    return setup;
}

void BathSetup::validate() const {
    hot.validate();
    cold.validate();
    if (hot.label == cold.label) throw Error("bath setup: lead labels must differ");
}

double fermi(double beta, double mu, double energy) {
    const double x = beta * (energy - mu);
    if (x > kFermiSaturation) return 0.0;
    if (x < -kFermiSaturation) return 1.0;
    return 1.0 / (1.0 + std::exp(x));
}

RatePair rate_pair(const ReservoirParams& res, double weight, double bohr_energy) {
    const double scale = res.gamma * weight;
    const double up = scale * fermi(res.beta, res.mu, bohr_energy);
    // down as the complement keeps up + down == gamma * weight exactly
    return {up, scale - up};
}

}  // namespace dqdtherm
