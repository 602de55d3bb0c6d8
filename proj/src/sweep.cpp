#include "dqdtherm/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace dqdtherm {

namespace {

double grid_value(double lo, double hi, int points, int i) {
    if (points == 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / (points - 1);
}

// Index-addressed parallel map; results land in preallocated slots, so the
// output is identical for any worker count.
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

[[noreturn]] void annotate_grid_error(const Error& e, double eps, double voltage) {
    std::ostringstream msg;
    msg << "at grid point eps=" << eps << " meV, V=" << voltage << " mV: "
        << e.what();
    throw Error(msg.str());
}

struct Interval {
    double lo, hi;
};

double bisect(const std::function<double(double)>& f, Interval iv, double f_lo,
              double tol) {
    while (iv.hi - iv.lo > tol) {
        const double mid = 0.5 * (iv.lo + iv.hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (f_lo > 0.0)) {
            iv.lo = mid;
            f_lo = fm;
        } else {
            iv.hi = mid;
        }
    }
    return 0.5 * (iv.lo + iv.hi);
}

struct GoldenResult {
    double x;
    double value;
};

// Golden-section maximizer; tolerates -inf plateaus outside the target
// regime as long as the initial bracket contains a finite point.
GoldenResult golden_max(const std::function<double(double)>& f, Interval iv,
                        double tol) {
    constexpr double kInvPhi = 0.6180339887498949;
    GoldenResult best{0.5 * (iv.lo + iv.hi),
                      -std::numeric_limits<double>::infinity()};
    auto probe = [&](double x) {
        const double v = f(x);
        if (v > best.value) best = {x, v};
        return v;
    };
    double a = iv.lo, b = iv.hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = probe(x1);
    double f2 = probe(x2);
    while (b - a > tol) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = probe(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = probe(x2);
        }
    }
    probe(0.5 * (a + b));
    return best;
}

}  // namespace

PointResult evaluate_point(const SweepConfig& cfg, double eps, double voltage) {
    const DqdParams params =
        DqdParams::centered(eps, cfg.delta, cfg.tunnel, cfg.coulomb);
    PointResult res;
    res.eig = diagonalize(params);
    const TransitionTable table = transition_table(res.eig);
    const ReservoirParams hot{cfg.beta_hot, cfg.mu_hot, cfg.gamma_hot, Lead::Hot};
    const BathSetup baths =
        BathSetup::biased(hot, cfg.beta_cold, cfg.gamma_cold, voltage);
    res.gen = build_generator(table, baths);
    res.pops = steady_state(res.gen);
    res.cur = currents(res.gen, res.pops, baths);
    res.perf = performance(res.cur, baths, entropy_by_transition(res.gen, res.pops));

    SweepRow row{voltage,
                 eps,
                 res.cur.hot.energy,
                 res.cur.hot.matter,
                 res.cur.hot.heat,
                 res.cur.cold.heat,
                 res.perf.sigma,
                 std::nullopt,
                 std::nullopt,
                 res.perf.zeta,
                 res.perf.regime};
    if (res.perf.eta) row.eta_norm = *res.perf.eta / res.perf.carnot_eta;
    if (res.perf.phi) row.phi_norm = *res.perf.phi / res.perf.carnot_phi;
    res.row = row;
    return res;
}

std::vector<SweepRow> sweep_voltage(const SweepConfig& cfg, double eps) {
    cfg.validate();
    std::vector<SweepRow> rows(cfg.v_points);
    parallel_for(cfg.v_points, cfg.threads, [&](int i) {
        const double v = grid_value(cfg.v_min, cfg.v_max, cfg.v_points, i);
        try {
            rows[i] = evaluate_point(cfg, eps, v).row;
        } catch (const Error& e) {
            annotate_grid_error(e, eps, v);
        }
    });
    return rows;
}

std::vector<SweepRow> sweep_voltage(const SweepConfig& cfg) {
    if (cfg.eps_values.size() != 1)
        throw ConfigError("sweep_voltage: a single eps is required (got " +
                          std::to_string(cfg.eps_values.size()) + " values)");
    return sweep_voltage(cfg, cfg.eps_values.front());
}

std::vector<SweepRow> sweep_grid(const SweepConfig& cfg) {
    cfg.validate();
    const int n = cfg.eps_points * cfg.v_points;
    std::vector<SweepRow> rows(n);
    parallel_for(n, cfg.threads, [&](int idx) {
        const int ie = idx / cfg.v_points;
        const int iv = idx % cfg.v_points;
        const double eps = grid_value(cfg.eps_min, cfg.eps_max, cfg.eps_points, ie);
        const double v = grid_value(cfg.v_min, cfg.v_max, cfg.v_points, iv);
        try {
            rows[idx] = evaluate_point(cfg, eps, v).row;
        } catch (const Error& e) {
            annotate_grid_error(e, eps, v);
        }
    });
    return rows;
}

CriticalPoints find_critical_points(const SweepConfig& cfg, double eps,
                                    const std::vector<SweepRow>& rows,
                                    double tol_mv) {
    if (rows.size() < 2)
        throw NoTransition("find_critical_points: need at least two rows");
    const bool uniform = std::all_of(rows.begin(), rows.end(), [&](const SweepRow& r) {
        return r.regime == rows.front().regime;
    });
    if (uniform)
        throw NoTransition("find_critical_points: the sweep never changes regime");

    auto matter_at = [&](double v) { return evaluate_point(cfg, eps, v).cur.hot.matter; };
    auto cold_heat_at = [&](double v) { return evaluate_point(cfg, eps, v).cur.cold.heat; };

    CriticalPoints out;

    // engine exit: last engine row followed by a non-engine row, I_M^H
    // changing sign across the cell
    int last_engine = -1;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
        if (rows[i].regime == Regime::Engine) last_engine = i;
    if (last_engine >= 0 && last_engine + 1 < static_cast<int>(rows.size())) {
        const double lo = rows[last_engine].voltage;
        const double hi = rows[last_engine + 1].voltage;
        const double f_lo = rows[last_engine].i_matter_hot;
        if (f_lo > 0.0 && rows[last_engine + 1].i_matter_hot < 0.0)
            out.v_eta0 = bisect(matter_at, {lo, hi}, f_lo, tol_mv);
    }

    // refrigerator entry: J^C changing sign into the first refrigerator row
    int first_fridge = -1;
    for (int i = static_cast<int>(rows.size()) - 1; i >= 0; --i)
        if (rows[i].regime == Regime::Refrigerator) first_fridge = i;
    if (first_fridge > 0) {
        const double lo = rows[first_fridge - 1].voltage;
        const double hi = rows[first_fridge].voltage;
        const double f_lo = rows[first_fridge - 1].j_cold;
        if (f_lo < 0.0 && rows[first_fridge].j_cold > 0.0)
            out.v_phi0 = bisect(cold_heat_at, {lo, hi}, f_lo, tol_mv);
    }

    auto bracket_around = [&](int k) {
        const int n = static_cast<int>(rows.size());
        const double lo = rows[std::max(0, k - 1)].voltage;
        const double hi = rows[std::min(n - 1, k + 1)].voltage;
        return Interval{lo, hi};
    };

    int k_eta = -1, k_phi = -1;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        if (rows[i].eta_norm &&
            (k_eta < 0 || *rows[i].eta_norm > *rows[k_eta].eta_norm))
            k_eta = i;
        if (rows[i].phi_norm &&
            (k_phi < 0 || *rows[i].phi_norm > *rows[k_phi].phi_norm))
            k_phi = i;
    }
    auto eta_objective = [&](double v) {
        const SweepRow r = evaluate_point(cfg, eps, v).row;
        return r.eta_norm ? *r.eta_norm : -std::numeric_limits<double>::infinity();
    };
    auto phi_objective = [&](double v) {
        const SweepRow r = evaluate_point(cfg, eps, v).row;
        return r.phi_norm ? *r.phi_norm : -std::numeric_limits<double>::infinity();
    };
    if (k_eta >= 0) {
        const GoldenResult g = golden_max(eta_objective, bracket_around(k_eta), tol_mv);
        out.v_eta_max = g.x;
        out.eta_max_norm = g.value;
    }
    if (k_phi >= 0) {
        const GoldenResult g = golden_max(phi_objective, bracket_around(k_phi), tol_mv);
        out.v_phi_max = g.x;
        out.phi_max_norm = g.value;
    }
    return out;
}

}  // namespace dqdtherm
