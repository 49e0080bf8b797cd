#include "dfig/solver.hpp"

#include <chrono>
#include <cmath>
#include <optional>
#include <string>

#include "dfig/dt_window.hpp"

namespace dfig {

namespace {

constexpr double kTimeTol = 1e-9;
constexpr double kConsistencyTol = 1e-8;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

long sample_count(const SolverConfig& cfg) {
    return static_cast<long>(std::floor(cfg.t_end / cfg.output_dt + kTimeTol)) + 1;
}

struct Recorder {
    explicit Recorder(const SolverConfig& cfg)
        : output_dt(cfg.output_dt), n(sample_count(cfg)) {
        result.times.reserve(static_cast<std::size_t>(n));
        result.states.resize(n, st::count);
        result.algs.resize(n, al::count);
    }

    void record(double t, const StateVec& x, const AlgVec& a, double residual) {
        const long j = static_cast<long>(result.times.size());
        result.times.push_back(t);
        for (int i = 0; i < st::count; ++i) result.states(j, i) = x[i];
        for (int i = 0; i < al::count; ++i) result.algs(j, i) = a[i];
        result.stats.max_alg_residual = std::max(result.stats.max_alg_residual, residual);
    }

    /// Next pending sample time, or nullopt when all collected.
    [[nodiscard]] std::optional<double> next_time() const {
        const long j = static_cast<long>(result.times.size());
        if (j >= n) return std::nullopt;
        return static_cast<double>(j) * output_dt;
    }

    double output_dt;
    long n;
    SimResult result;
};

void check_initial_consistency(const DfigParams& p, const StateVec& x0, const AlgVec& a0,
                               const InputVec& u) {
    const AlgVec g = alg_residual(p, x0, a0, u);
    const double rn = max_abs(g);
    if (rn > kConsistencyTol) {
        throw SolverError("initial point is not algebraically consistent, residual " +
                          std::to_string(rn));
    }
}

/// Events are applied when the cursor lands on their time; the cursor never
/// steps across one.
class EventCursor {
public:
    explicit EventCursor(const Scenario& sc) : sc_(sc) {}

    [[nodiscard]] std::optional<double> next_event_time() const {
        if (idx_ >= sc_.events.size()) return std::nullopt;
        return sc_.events[idx_].time;
    }

    /// Applies every event scheduled at time t (within tolerance) to u.
    /// Returns true if anything changed.
    bool apply_at(double t, InputVec& u) {
        bool changed = false;
        while (idx_ < sc_.events.size() && sc_.events[idx_].time <= t + kTimeTol) {
            const auto& e = sc_.events[idx_];
            switch (e.field) {
                case InputField::v_w: u.v_w = e.value; break;
                case InputField::x_e: u.x_e = e.value; break;
                case InputField::v_qinf: u.v_qinf = e.value; break;
            }
            ++idx_;
            changed = true;
        }
        return changed;
    }

private:
    const Scenario& sc_;
    std::size_t idx_ = 0;
};

} // namespace

void SolverConfig::validate() const {
    if (nl < 2 || nl > dt::kMaxOrder) {
        throw ConfigError("solver: NL must be in [2, " + std::to_string(dt::kMaxOrder) + "]");
    }
    if (!(h > 0.0) || !(h <= t_end)) {
        throw ConfigError("solver: need 0 < h <= t_end");
    }
    if (!(output_dt > 0.0)) {
        throw ConfigError("solver: output_dt must be positive");
    }
    if (!(cond_max > 1.0)) {
        throw ConfigError("solver: cond_max must exceed 1");
    }
    if (!(newton_tol > 0.0) || newton_max_iter < 1) {
        throw ConfigError("solver: invalid newton controls");
    }
}

const char* to_string(Method m) { return m == Method::dtm ? "dtm" : "rk4"; }

Method method_from_string(const std::string& s) {
    if (s == "dtm") return Method::dtm;
    if (s == "rk4") return Method::rk4;
    throw ConfigError("unknown method '" + s + "' (expected dtm or rk4)");
}

SimResult msdtm_run(const DfigParams& p, const Scenario& sc, const StateVec& x0,
                    const AlgVec& a0, const SolverConfig& cfg) {
    cfg.validate();
    sc.validate();
    p.validate();

    InputVec u = sc.initial;
    check_initial_consistency(p, x0, a0, u);

    const auto wall0 = Clock::now();
    Recorder rec(cfg);
    rec.record(0.0, x0, a0, max_abs(alg_residual(p, x0, a0, u)));

    EventCursor events(sc);
    StateVec x = x0;
    AlgVec a = a0;
    double t = 0.0;

    while (t < cfg.t_end - kTimeTol) {
        double t_next = std::min(t + cfg.h, cfg.t_end);
        if (const auto ev = events.next_event_time(); ev && *ev < t_next - kTimeTol) {
            t_next = *ev;
        }

        const SystemSeries w = build_window(p, u, t, cfg.nl, x, a, cfg.cond_max);

        while (const auto ts = rec.next_time()) {
            if (*ts <= t + kTimeTol || *ts > t_next + kTimeTol) break;
            const StateVec xs = w.eval_states(*ts);
            const AlgVec as = w.eval_algs(*ts);
            rec.record(*ts, xs, as, max_abs(alg_residual(p, xs, as, u)));
        }

        x = w.eval_states(t_next);
        a = w.eval_algs(t_next);
        ++rec.result.stats.windows_taken;

        if (events.apply_at(t_next, u)) {
            a = solve_consistent_alg(p, x, a, u, cfg.newton_tol, cfg.newton_max_iter);
        }
        t = t_next;
    }

    rec.result.stats.wall_time = seconds_since(wall0);
    return std::move(rec.result);
}

SimResult rk4_run(const DfigParams& p, const Scenario& sc, const StateVec& x0, const AlgVec& a0,
                  const SolverConfig& cfg) {
    cfg.validate();
    sc.validate();
    p.validate();

    InputVec u = sc.initial;
    check_initial_consistency(p, x0, a0, u);

    const auto wall0 = Clock::now();
    Recorder rec(cfg);
    rec.record(0.0, x0, a0, max_abs(alg_residual(p, x0, a0, u)));

    EventCursor events(sc);
    StateVec x = x0;
    AlgVec a = a0;
    double t = 0.0;

    // modified Newton: one factorization per step, refreshed mid-solve only
    // when convergence is slow
    std::optional<LuFactor> jac;
    auto stage_alg = [&](const StateVec& xs, const AlgVec& warm, double t_at) {
        AlgVec as = warm;
        AlgVec g = alg_residual(p, xs, as, u);
        double gn = max_abs(g);
        int refreshes = 0;
        for (int iter = 0; iter < cfg.newton_max_iter; ++iter) {
            if (gn <= cfg.newton_tol) return as;
            Eigen::VectorXd rhs(al::count);
            for (int i = 0; i < al::count; ++i) rhs(i) = -g[i];
            const Eigen::VectorXd da = jac->solve(rhs);
            for (int i = 0; i < al::count; ++i) as[i] += da(i);
            g = alg_residual(p, xs, as, u);
            const double gn_new = max_abs(g);
            if (gn_new > 0.5 * gn && gn_new > cfg.newton_tol) {
                if (refreshes++ > 3) {
                    throw SolverError("reference solver: algebraic Newton divergence at t=" +
                                      std::to_string(t_at) + " after " + std::to_string(iter + 1) +
                                      " iterations");
                }
                jac.emplace(alg_jacobian(p, xs, as, u));
            }
            gn = gn_new;
        }
        if (gn <= cfg.newton_tol) return as;
        throw SolverError("reference solver: algebraic Newton stalled at t=" +
                          std::to_string(t_at) + ", residual " + std::to_string(gn));
    };

    auto add_scaled = [](const StateVec& base, double c, const StateVec& d) {
        StateVec out;
        for (int i = 0; i < st::count; ++i) out[i] = base[i] + c * d[i];
        return out;
    };

    while (t < cfg.t_end - kTimeTol) {
        double t_next = std::min(t + cfg.h, cfg.t_end);
        if (const auto ev = events.next_event_time(); ev && *ev < t_next - kTimeTol) {
            t_next = *ev;
        }
        // cut at pending output samples so every sample lies on a step end
        if (const auto ts = rec.next_time(); ts && *ts > t + kTimeTol && *ts < t_next - kTimeTol) {
            t_next = *ts;
        }
        const double h = t_next - t;

        jac.emplace(alg_jacobian(p, x, a, u));

        const StateVec k1 = state_rhs(p, x, a, u);
        const AlgVec a2 = stage_alg(add_scaled(x, 0.5 * h, k1), a, t + 0.5 * h);
        const StateVec k2 = state_rhs(p, add_scaled(x, 0.5 * h, k1), a2, u);
        const AlgVec a3 = stage_alg(add_scaled(x, 0.5 * h, k2), a2, t + 0.5 * h);
        const StateVec k3 = state_rhs(p, add_scaled(x, 0.5 * h, k2), a3, u);
        const AlgVec a4 = stage_alg(add_scaled(x, h, k3), a3, t_next);
        const StateVec k4 = state_rhs(p, add_scaled(x, h, k3), a4, u);

        StateVec x_new;
        for (int i = 0; i < st::count; ++i) {
            x_new[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        x = x_new;
        a = stage_alg(x, a4, t_next);
        ++rec.result.stats.windows_taken;

        // samples carry the pre-event (left-limit) algebraic values,
        // matching the series integrator's convention
        if (const auto ts = rec.next_time(); ts && std::abs(*ts - t_next) <= kTimeTol) {
            rec.record(*ts, x, a, max_abs(alg_residual(p, x, a, u)));
        }

        if (events.apply_at(t_next, u)) {
            a = solve_consistent_alg(p, x, a, u, cfg.newton_tol, cfg.newton_max_iter);
        }
        t = t_next;
    }

    rec.result.stats.wall_time = seconds_since(wall0);
    return std::move(rec.result);
}

SimResult run_simulation(const DfigParams& p, const Scenario& sc, const StateVec& x0,
                         const AlgVec& a0, const SolverConfig& cfg, Method m) {
    return m == Method::dtm ? msdtm_run(p, sc, x0, a0, cfg) : rk4_run(p, sc, x0, a0, cfg);
}

StableStep max_stable_in_grid(std::span<const double> grid,
                              const std::function<bool(double)>& stable_at) {
    if (grid.empty()) {
        throw ConfigError("stable-step search needs a non-empty grid");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw ConfigError("stable-step grid must be strictly ascending");
        }
    }
    StableStep out{grid.front(), false};
    for (double h : grid) {
        if (!stable_at(h)) break;
        out.h = h;
        out.any_stable = true;
    }
    return out;
}

StableStep max_stable_step(const DfigParams& p, const Scenario& sc, const StateVec& x0,
                           const AlgVec& a0, const SolverConfig& cfg,
                           std::span<const double> grid, Method m) {
    double x0_norm = 0.0;
    for (double v : x0) x0_norm = std::max(x0_norm, std::abs(v));
    const double blowup_bound = 10.0 * x0_norm;

    auto stable_at = [&](double h) {
        SolverConfig c = cfg;
        c.h = h;
        try {
            const SimResult r = run_simulation(p, sc, x0, a0, c, m);
            if (!r.states.allFinite() || !r.algs.allFinite()) return false;
            return r.states.cwiseAbs().maxCoeff() <= blowup_bound;
        } catch (const Error&) {
            return false;
        }
    };
    return max_stable_in_grid(grid, stable_at);
}

} // namespace dfig
