#include "dqdtherm/thermo.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace dqdtherm {

namespace {

int dead_band_sign(double x) {
    if (std::abs(x) < kRegimeDeadBand) return 0;
    return x > 0.0 ? 1 : -1;
}

void check_forms_close(const char* what, double a, double b, double scale) {
    const double tol = 1e-10 * std::max({std::abs(a), std::abs(b), 1e-3}) +
                       64.0 * std::numeric_limits<double>::epsilon() * scale;
    if (std::abs(a - b) > tol) {
        std::ostringstream msg;
        msg << what << ": forms disagree, " << a << " vs " << b;
        throw FormMismatch(msg.str());
    }
}

}  // namespace

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Engine: return "engine";
        case Regime::Refrigerator: return "refrigerator";
        case Regime::Dud: return "dud";
    }
    return "?";
}

CurrentSet currents(const RateGenerator& gen, const Populations& p,
                    const BathSetup& baths) {
    const Eigen::MatrixXd& L = gen.total;
    const double rate_scale = std::max(1.0, L.cwiseAbs().maxCoeff());
    const double residual = (L * p.p).lpNorm<Eigen::Infinity>();
    if (residual > kStationaryTol * rate_scale) {
        std::ostringstream msg;
        msg << "currents: populations are not stationary (residual " << residual
            << ")";
        throw NotStationary(msg.str());
    }

    CurrentSet cur{{0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}};
    for (const auto& ch : gen.channels) {
        for (int k = 0; k < 2; ++k) {
            LeadCurrents& lc = k == 0 ? cur.hot : cur.cold;
            const double up_flux = ch.lead[k].up * p.p(ch.from);
            const double down_flux = ch.lead[k].down * p.p(ch.to);
            const double net = up_flux - down_flux;
            lc.matter += net;
            lc.energy += ch.bohr_energy * net;
            lc.gross_matter += up_flux + down_flux;
            lc.gross_energy += std::abs(ch.bohr_energy) * (up_flux + down_flux);
        }
    }
    cur.hot.heat = cur.hot.energy - baths.hot.mu * cur.hot.matter;
    cur.cold.heat = cur.cold.energy - baths.cold.mu * cur.cold.matter;
    return cur;
}

double entropy_production(const CurrentSet& cur, const BathSetup& baths) {
    const double s1 = -baths.hot.beta * cur.hot.heat - baths.cold.beta * cur.cold.heat;
    const double s2 =
        (baths.cold.beta - baths.hot.beta) * cur.hot.energy +
        (baths.hot.beta * baths.hot.mu - baths.cold.beta * baths.cold.mu) *
            cur.hot.matter;

    const double gamma_scale = baths.hot.gamma + baths.cold.gamma;
    const double roundoff_scale =
        baths.hot.beta *
            (cur.hot.gross_energy + std::abs(baths.hot.mu) * cur.hot.gross_matter) +
        baths.cold.beta *
            (cur.cold.gross_energy + std::abs(baths.cold.mu) * cur.cold.gross_matter);
    const double tol = 1e-10 * std::max(std::abs(s1), 1e-6 * gamma_scale) +
                       64.0 * std::numeric_limits<double>::epsilon() * roundoff_scale;
    if (std::abs(s1 - s2) > tol) {
        std::ostringstream msg;
        msg << "entropy_production: heat-current and force-flux forms disagree ("
            << s1 << " vs " << s2 << "); currents are not conserved";
        throw FormMismatch(msg.str());
    }
    return s1;
}

std::vector<TransitionEntropy> entropy_by_transition(const RateGenerator& gen,
                                                     const Populations& p) {
    std::vector<TransitionEntropy> terms;
    terms.reserve(gen.channels.size() * 2);
    for (const auto& ch : gen.channels) {
        for (int k = 0; k < 2; ++k) {
            const double a = ch.lead[k].up * p.p(ch.from);
            const double b = ch.lead[k].down * p.p(ch.to);
            double value;
            if (a > 0.0 && b > 0.0) {
                value = (a - b) * std::log(a / b);
            } else if (a == b) {
                value = 0.0;  // dead channel: 0 ln(0/0) := 0
            } else {
                // one-way edge (saturated occupation): formally infinite
                value = std::numeric_limits<double>::infinity();
            }
            terms.push_back({ch.from, ch.to, static_cast<Lead>(k), value});
        }
    }
    return terms;
}

double entropy_sum(const std::vector<TransitionEntropy>& terms) {
    double sum = 0.0;
    for (const auto& t : terms) sum += t.value;
    return sum;
}

double channel_entropy(const std::vector<TransitionEntropy>& terms, int from, int to) {
    double sum = 0.0;
    for (const auto& t : terms)
        if (t.from == from && t.to == to) sum += t.value;
    return sum;
}

double theta(const BathSetup& baths) {
    const double diff = baths.cold.beta - baths.hot.beta;
    if (std::abs(diff) < 1e-12 * std::max(baths.cold.beta, baths.hot.beta))
        throw EqualTemperatures("theta: undefined for equal inverse temperatures");
    return (baths.cold.beta * baths.cold.mu - baths.hot.beta * baths.hot.mu) / diff;
}

Regime classify_regime(const CurrentSet& cur) {
    const int matter = dead_band_sign(cur.hot.matter);
    const int heat_hot = dead_band_sign(cur.hot.heat);
    const int heat_cold = dead_band_sign(cur.cold.heat);
    const int power = dead_band_sign(cur.hot.heat + cur.cold.heat);
    if (matter > 0 && heat_hot > 0 && power > 0) return Regime::Engine;
    if (matter < 0 && heat_cold > 0 && power < 0) return Regime::Refrigerator;
    return Regime::Dud;
}

Performance performance(const CurrentSet& cur, const BathSetup& baths,
                        std::vector<TransitionEntropy> sigma_map) {
    Performance out;
    out.sigma = entropy_production(cur, baths);
    out.sigma_by_transition = std::move(sigma_map);
    out.regime = classify_regime(cur);
    out.carnot_eta = 1.0 - baths.hot.beta / baths.cold.beta;
    out.carnot_phi = baths.hot.beta / (baths.cold.beta - baths.hot.beta);

    try {
        out.theta = theta(baths);
    } catch (const EqualTemperatures&) {
        // zeta reported absent as well
    }
    if (out.theta && std::abs(cur.hot.energy) >= kZetaCurrentFloor)
        out.zeta = *out.theta * cur.hot.matter / cur.hot.energy;

    const double power = cur.hot.heat + cur.cold.heat;
    const double bias = baths.cold.mu - baths.hot.mu;
    const double form_scale = cur.hot.gross_energy +
                              std::abs(baths.cold.mu) * cur.hot.gross_matter;
    if (out.regime == Regime::Engine) {
        const double eta = power / cur.hot.heat;
        const double ratio = cur.hot.energy / cur.hot.matter;
        const double eta_currents = bias / (ratio - baths.hot.mu);
        check_forms_close("performance: eta", eta, eta_currents,
                          form_scale / std::max(std::abs(cur.hot.heat), 1e-300));
        out.eta = eta;
    } else if (out.regime == Regime::Refrigerator) {
        const double phi = cur.cold.heat / -power;
        const double ratio = cur.hot.energy / cur.hot.matter;
        const double phi_currents = (ratio - baths.cold.mu) / bias;
        check_forms_close("performance: phi", phi, phi_currents,
                          form_scale / std::max(std::abs(power), 1e-300));
        out.phi = phi;
    }
    return out;
}

}  // namespace dqdtherm
