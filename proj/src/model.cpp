#include "dqdtherm/model.hpp"

#include <cmath>
#include <sstream>

namespace dqdtherm {

const char* state_name(State s) {
    switch (s) {
        case State::Empty: return "0";
        case State::Minus: return "-";
        case State::Plus: return "+";
        case State::Double: return "2";
    }
    return "?";
}

DqdParams DqdParams::centered(double level_mean, double detuning, double tunnel,
                              double coulomb) {
    return {level_mean - detuning, level_mean + detuning, tunnel, coulomb};
}

EigenSystem diagonalize(const DqdParams& params) {
    if (params.tunnel < 0.0 || params.coulomb < 0.0) {
        std::ostringstream msg;
        msg << "diagonalize: tunnel and coulomb must be nonnegative (got T="
            << params.tunnel << ", U=" << params.coulomb << ")";
        throw Error(msg.str());
    }
    const double d = params.detuning();
    const double t = params.tunnel;
    const double mean = params.level_mean();
    const double r = std::hypot(d, t);
    if (r < kDegeneracyGuard) {
        throw DegenerateSpectrum(
            "diagonalize: one-electron doublet is degenerate (T = delta = 0)");
    }

    EigenSystem eig;
    eig.energy = {0.0, mean - r, mean + r, 2.0 * mean + params.coulomb};
    eig.particle_number = {0, 1, 1, 2};
    eig.splitting = r;

    if (t == 0.0) {
        // Localized limit; the generic vectors below collapse to [0, 0] on
        // one branch, so assign the limits directly.
        if (d > 0.0) {
            eig.minus = {-1.0, 0.0};
            eig.plus = {0.0, 1.0};
        } else {
            eig.minus = {0.0, 1.0};
            eig.plus = {1.0, 0.0};
        }
        return eig;
    }

    // Unnormalized doublet vectors [-(d + r), t] and [-(d - r), t]. One of
    // d +- r cancels when |d| >> t; rewrite it via (d+r)(r-d) = t^2.
    double sum_plus;   // d + r
    double sum_minus;  // d - r
    if (d >= 0.0) {
        sum_plus = d + r;
        sum_minus = -t * t / sum_plus;
    } else {
        sum_minus = d - r;
        sum_plus = -t * t / sum_minus;
    }

    const double norm_minus = std::hypot(sum_plus, t);
    eig.minus = {-sum_plus / norm_minus, t / norm_minus};
    const double norm_plus = std::hypot(sum_minus, t);
    eig.plus = {-sum_minus / norm_plus, t / norm_plus};
    return eig;
}

TransitionTable transition_table(const EigenSystem& eig) {
    const double am2 = eig.minus.left * eig.minus.left;
    const double bm2 = eig.minus.right * eig.minus.right;
    const double ap2 = eig.plus.left * eig.plus.left;
    const double bp2 = eig.plus.right * eig.plus.right;
    const auto& e = eig.energy;

    TransitionTable table;
    table.entries = {{
        {State::Empty, State::Minus, e[1] - e[0], 1, am2, bm2},
        {State::Empty, State::Plus, e[2] - e[0], 1, ap2, bp2},
        {State::Minus, State::Double, e[3] - e[1], 1, bm2, am2},
        {State::Plus, State::Double, e[3] - e[2], 1, bp2, ap2},
    }};
    return table;
}

}  // namespace dqdtherm
