#ifndef DQDTHERM_MODEL_HPP
#define DQDTHERM_MODEL_HPP

#include <array>

#include "dqdtherm/errors.hpp"

namespace dqdtherm {

/// Eigenstates of the two-dot Hamiltonian in increasing energy order:
/// |v0> empty, |v-> / |v+> the one-electron doublet, |v2> doubly occupied.
enum class State : int { Empty = 0, Minus = 1, Plus = 2, Double = 3 };

inline constexpr int kNumStates = 4;
inline constexpr int kNumChannels = 4;

/// Splittings below this (meV) are treated as degenerate.
inline constexpr double kDegeneracyGuard = 1e-12;

const char* state_name(State s);

/// Bare parameters of two tunnel-coupled single-level dots.
/// All energies in meV.
struct DqdParams {
    double eps_left;   ///< left-dot level
    double eps_right;  ///< right-dot level
    double tunnel;     ///< inter-dot tunneling amplitude, >= 0
    double coulomb;    ///< inter-dot Coulomb repulsion, >= 0

    /// Half the level difference, (eps_right - eps_left) / 2.
    double detuning() const { return 0.5 * (eps_right - eps_left); }
    /// Mean level, (eps_right + eps_left) / 2.
    double level_mean() const { return 0.5 * (eps_right + eps_left); }

    /// Build from mean level and detuning instead of bare levels.
    static DqdParams centered(double level_mean, double detuning, double tunnel,
                              double coulomb);
};

/// Real components of a one-electron eigenvector on the localized basis
/// {|10>, |01>} (electron on the left / right dot).
struct StateAmplitudes {
    double left;
    double right;
};

/// Closed-form spectrum of the double dot.
struct EigenSystem {
    /// E0, E-, E+, E2, indexed by State.
    std::array<double, kNumStates> energy;
    /// Amplitudes (a-, b-) of |v->.
    StateAmplitudes minus;
    /// Amplitudes (a+, b+) of |v+>.
    StateAmplitudes plus;
    /// Electron number of each eigenstate: 0, 1, 1, 2.
    std::array<int, kNumStates> particle_number;
    /// Half the doublet splitting, sqrt(detuning^2 + tunnel^2).
    double splitting;
};

/// Diagonalize the double-dot Hamiltonian.
///
/// Energies are E0 = 0, E∓ = mean ∓ sqrt(d² + T²), E2 = 2·mean + U. The
/// doublet amplitudes come from the unnormalized vectors [-(d ± r), T]
/// (r the splitting), evaluated cancellation-free so they stay smooth
/// through d = 0.
///
/// Throws DegenerateSpectrum when the splitting is below kDegeneracyGuard.
EigenSystem diagonalize(const DqdParams& params);

/// One lead-induced jump between eigenstates differing by one electron.
struct Transition {
    State from;
    State to;                ///< always the higher particle number
    double bohr_energy;      ///< E_to - E_from, meV
    int particle_change;     ///< always +1
    double weight_hot;       ///< |<to| d_L^dag |from>|², hot lead couples left
    double weight_cold;      ///< |<to| d_R^dag |from>|², cold lead couples right
};

/// The four allowed channels: 0->-, 0->+, -->2, +->2. Jumps changing the
/// electron number by two (0<->2) or keeping it (-<->+) are absent.
struct TransitionTable {
    std::array<Transition, kNumChannels> entries;
};

/// Matrix elements of the lead operators between eigenstates, squared.
TransitionTable transition_table(const EigenSystem& eig);

}  // namespace dqdtherm

#endif
