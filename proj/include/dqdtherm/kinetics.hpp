#ifndef DQDTHERM_KINETICS_HPP
#define DQDTHERM_KINETICS_HPP

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "dqdtherm/model.hpp"
#include "dqdtherm/reservoir.hpp"

namespace dqdtherm {

/// One jump channel with its per-lead golden-rule rates attached.
struct ChannelRates {
    int from;
    int to;
    double bohr_energy;
    std::array<RatePair, 2> lead;  ///< indexed by Lead

    const RatePair& rates(Lead l) const { return lead[static_cast<int>(l)]; }
};

/// Channel description consumed by assemble_generator. The weights are the
/// squared lead matrix elements; arbitrary chains are allowed so property
/// tests can run on random graphs.
struct ChannelSpec {
    int from;
    int to;
    double bohr_energy;
    double weight_hot;
    double weight_cold;
};

/// Markov generators over the eigenstate populations. Columns index the
/// departure state; every column sums to zero.
struct RateGenerator {
    Eigen::MatrixXd hot;
    Eigen::MatrixXd cold;
    Eigen::MatrixXd total;
    std::vector<ChannelRates> channels;
    BathSetup baths;

    int num_states() const { return static_cast<int>(total.rows()); }
    const Eigen::MatrixXd& lead_matrix(Lead l) const {
        return l == Lead::Hot ? hot : cold;
    }
};

/// Probability vector over the eigenstates.
struct Populations {
    Eigen::VectorXd p;

    static Populations uniform(int n) {
        return {Eigen::VectorXd::Constant(n, 1.0 / n)};
    }
    void validate() const;  ///< simplex membership to 1e-12
};

/// Assemble per-lead generators for an arbitrary set of channels on
/// num_states states. Off-diagonals get the up/down rates, diagonals the
/// negative column sums.
RateGenerator assemble_generator(int num_states,
                                 const std::vector<ChannelSpec>& channels,
                                 const BathSetup& baths);

/// The double-dot generator: one ChannelSpec per TransitionTable entry.
RateGenerator build_generator(const TransitionTable& table, const BathSetup& baths);

enum class SteadyMethod {
    Auto,         ///< linear solve, kernel fallback
    LinearSolve,  ///< row replacement + LU only
    Kernel        ///< SVD null-space vector only
};

/// Singular-value ratio below which the generator is rank deficient.
inline constexpr double kRankRatio = 1e-10;

/// Stationary distribution of the total generator.
///
/// The primary path replaces one row of L with all-ones and solves the
/// linear system; if that leaves a residual or negative entries it falls
/// back to the SVD kernel vector. The result satisfies L p = 0 with
/// infinity-norm residual below 1e-12 (scaled by ||L|| for rates far from
/// unit Gamma) and sums to one.
///
/// Throws ReducibleChain when the kernel is more than one-dimensional; the
/// exception lists the closed communicating classes.
Populations steady_state(const RateGenerator& gen,
                         SteadyMethod method = SteadyMethod::Auto);

/// Transient integrator tolerances (Dormand-Prince 4/5 adaptive stepping).
inline constexpr double kEvolveRelTol = 1e-10;
inline constexpr double kEvolveAbsTol = 1e-12;
/// Simplex drift beyond this aborts with StepFailure.
inline constexpr double kEvolveDriftFlag = 1e-8;

/// Integrate dp/dt = L p over a time span in units of 1/Gamma. Serves as an
/// oracle for steady_state: the two must agree at long times.
Populations evolve(const RateGenerator& gen, const Populations& p0, double t);

}  // namespace dqdtherm

#endif
