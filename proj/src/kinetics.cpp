#include "dqdtherm/kinetics.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <sstream>

namespace dqdtherm {

namespace {

// Closed communicating classes of the directed rate graph: strongly
// connected components with no outgoing edge, found via transitive closure
// (the state counts here are tiny).
std::vector<std::vector<int>> closed_classes(const Eigen::MatrixXd& total) {
    const int n = static_cast<int>(total.rows());
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
        reach[i][i] = true;
        for (int j = 0; j < n; ++j)
            if (i != j && total(j, i) > 0.0) reach[i][j] = true;  // i -> j
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (reach[i][k])
                for (int j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = true;

    std::vector<std::vector<int>> classes;
    std::vector<bool> assigned(n, false);
    for (int i = 0; i < n; ++i) {
        if (assigned[i]) continue;
        std::vector<int> scc;
        for (int j = 0; j < n; ++j)
            if (reach[i][j] && reach[j][i]) scc.push_back(j);
        bool closed = true;
        for (int a : scc)
            for (int j = 0; j < n; ++j)
                if (!(reach[j][a] && reach[a][j]) && total(j, a) > 0.0) closed = false;
        for (int a : scc) assigned[a] = true;
        if (closed) classes.push_back(std::move(scc));
    }
    return classes;
}

std::string format_classes(const std::vector<std::vector<int>>& classes) {
    std::ostringstream os;
    for (size_t c = 0; c < classes.size(); ++c) {
        os << (c ? ", {" : "{");
        for (size_t i = 0; i < classes[c].size(); ++i)
            os << (i ? " " : "") << classes[c][i];
        os << "}";
    }
    return os.str();
}

Populations clamp_and_normalize(Eigen::VectorXd p) {
    for (int i = 0; i < p.size(); ++i)
        if (p(i) < 0.0) p(i) = 0.0;
    const double sum = p.sum();
    if (!(sum > 0.0)) throw Error("steady_state: solution has nonpositive mass");
    return {p / sum};
}

}  // namespace

void Populations::validate() const {
    if (p.size() == 0) throw Error("populations: empty vector");
    for (int i = 0; i < p.size(); ++i)
        if (!(p(i) >= 0.0)) throw Error("populations: negative entry");
    if (std::abs(p.sum() - 1.0) > 1e-12)
        throw Error("populations: probabilities do not sum to one");
}

RateGenerator assemble_generator(int num_states,
                                 const std::vector<ChannelSpec>& channels,
                                 const BathSetup& baths) {
    baths.validate();
    RateGenerator gen{Eigen::MatrixXd::Zero(num_states, num_states),
                      Eigen::MatrixXd::Zero(num_states, num_states),
                      Eigen::MatrixXd::Zero(num_states, num_states),
                      {},
                      baths};
    gen.channels.reserve(channels.size());
    for (const auto& ch : channels) {
        if (ch.from < 0 || ch.from >= num_states || ch.to < 0 || ch.to >= num_states ||
            ch.from == ch.to)
            throw Error("assemble_generator: channel endpoints out of range");
        ChannelRates cr{ch.from, ch.to, ch.bohr_energy, {}};
        cr.lead[0] = rate_pair(baths.hot, ch.weight_hot, ch.bohr_energy);
        cr.lead[1] = rate_pair(baths.cold, ch.weight_cold, ch.bohr_energy);
        for (int k = 0; k < 2; ++k) {
            Eigen::MatrixXd& L = k == 0 ? gen.hot : gen.cold;
            L(ch.to, ch.from) += cr.lead[k].up;
            L(ch.from, ch.to) += cr.lead[k].down;
        }
        gen.channels.push_back(cr);
    }
    for (Eigen::MatrixXd* L : {&gen.hot, &gen.cold}) {
        for (int j = 0; j < num_states; ++j) {
            double out = 0.0;
            for (int i = 0; i < num_states; ++i)
                if (i != j) out += (*L)(i, j);
            (*L)(j, j) = -out;
        }
    }
    gen.total = gen.hot + gen.cold;
    return gen;
}

RateGenerator build_generator(const TransitionTable& table, const BathSetup& baths) {
    std::vector<ChannelSpec> specs;
    specs.reserve(table.entries.size());
    for (const auto& t : table.entries)
        specs.push_back({static_cast<int>(t.from), static_cast<int>(t.to),
                         t.bohr_energy, t.weight_hot, t.weight_cold});
    return assemble_generator(kNumStates, specs, baths);
}

Populations steady_state(const RateGenerator& gen, SteadyMethod method) {
    const int n = gen.num_states();
    const Eigen::MatrixXd& L = gen.total;
    const double rate_scale = std::max(1.0, L.cwiseAbs().maxCoeff());
    const double residual_tol = 1e-12 * rate_scale;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(L, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int kernel_dim = 0;
    for (int i = 0; i < n; ++i)
        if (sv(i) <= sv(0) * kRankRatio) ++kernel_dim;
    if (sv(0) == 0.0) kernel_dim = n;
    if (kernel_dim > 1) {
        auto classes = closed_classes(L);
        throw ReducibleChain(
            "steady_state: stationary distribution is not unique; closed classes " +
                format_classes(classes),
            std::move(classes));
    }

    auto kernel_solution = [&]() {
        Eigen::VectorXd v = svd.matrixV().col(n - 1);
        double sum = v.sum();
        if (sum < 0.0) {
            v = -v;
            sum = -sum;
        }
        if (!(sum > 1e-8)) throw Error("steady_state: kernel vector has zero mass");
        return clamp_and_normalize(v / sum);
    };

    if (method == SteadyMethod::Kernel) return kernel_solution();

    Eigen::MatrixXd m = L;
    m.row(n - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(n - 1) = 1.0;
    Eigen::VectorXd p = m.colPivHouseholderQr().solve(rhs);

    const bool bad = !p.allFinite() || p.minCoeff() < -1e-10 ||
                     (L * p).lpNorm<Eigen::Infinity>() > residual_tol ||
                     std::abs(p.sum() - 1.0) > 1e-10;
    if (bad) {
        if (method == SteadyMethod::LinearSolve)
            throw Error("steady_state: linear solve failed the residual gate");
        Populations fallback = kernel_solution();
        if ((L * fallback.p).lpNorm<Eigen::Infinity>() > residual_tol)
            throw Error("steady_state: kernel fallback failed the residual gate");
        return fallback;
    }
    return clamp_and_normalize(p);
}

Populations evolve(const RateGenerator& gen, const Populations& p0, double t) {
    namespace ode = boost::numeric::odeint;
    using StateVec = std::vector<double>;

    if (!(t >= 0.0)) throw Error("evolve: time span must be nonnegative");
    p0.validate();
    const int n = gen.num_states();
    if (p0.p.size() != n) throw Error("evolve: population size mismatch");
    if (t == 0.0) return p0;

    const Eigen::MatrixXd& L = gen.total;
    auto rhs = [&](const StateVec& x, StateVec& dxdt, double) {
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += L(i, j) * x[j];
            dxdt[i] = acc;
        }
    };

    StateVec x(p0.p.data(), p0.p.data() + n);
    auto stepper = ode::make_controlled(kEvolveAbsTol, kEvolveRelTol,
                                        ode::runge_kutta_dopri5<StateVec>());
    const double rate_scale = std::max(1.0, L.cwiseAbs().maxCoeff());
    double time = 0.0;
    double dt = std::min(t, 0.1 / rate_scale);
    const std::size_t max_attempts = 50'000'000;
    std::size_t attempts = 0;
    while (time < t) {
        dt = std::min(dt, t - time);
        if (++attempts > max_attempts)
            throw StepFailure("evolve: step budget exhausted before reaching t");
        if (dt < 1e-15 * std::max(1.0, t))
            throw StepFailure("evolve: step size underflow");
        stepper.try_step(rhs, x, time, dt);
    }

    Eigen::VectorXd p = Eigen::Map<Eigen::VectorXd>(x.data(), n);
    const double drift = std::max(std::abs(p.sum() - 1.0),
                                  std::max(0.0, -p.minCoeff()));
    if (drift > kEvolveDriftFlag) {
        std::ostringstream msg;
        msg << "evolve: simplex drift " << drift << " exceeds " << kEvolveDriftFlag;
        throw StepFailure(msg.str());
    }
    return clamp_and_normalize(p);
}

}  // namespace dqdtherm
