#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dfig/model.hpp"
#include "dfig/scenario.hpp"

namespace dfig {

struct SolverConfig {
    int nl = 8;               // truncation order of each window
    double h = 0.01;          // window / step length (s)
    double t_end = 10.0;      // horizon (s); usually taken from the scenario
    double output_dt = 0.01;  // sampling interval (s)
    double cond_max = 1e12;   // condition ceiling for the window matrix
    double newton_tol = 1e-10;
    int newton_max_iter = 30;

    void validate() const;
};

struct SolverStats {
    long windows_taken = 0;  // windows (dtm) or steps (rk4)
    double wall_time = 0.0;  // seconds spent integrating
    double max_alg_residual = 0.0;  // max |algebraic residual| over output points
};

/// Time-stamped trajectories, sampled every output_dt. Row j of each matrix
/// is the sample at times[j].
struct SimResult {
    std::vector<double> times;
    Eigen::MatrixXd states;  // n_out x st::count
    Eigen::MatrixXd algs;    // n_out x al::count
    SolverStats stats;
};

enum class Method { dtm, rk4 };

[[nodiscard]] const char* to_string(Method m);
[[nodiscard]] Method method_from_string(const std::string& s);

/// Multi-step series integration: one window per step, seeded from the
/// previous window's endpoint, algebraic coefficients found by one linear
/// solve per order. Windows never cross scenario events; at an event the
/// states carry over and the algebraic vector is re-solved.
[[nodiscard]] SimResult msdtm_run(const DfigParams& p, const Scenario& sc, const StateVec& x0,
                                  const AlgVec& a0, const SolverConfig& cfg);

/// Classical 4-stage Runge-Kutta on the differential states with a Newton
/// solve of the algebraic system at every stage (warm-started).
[[nodiscard]] SimResult rk4_run(const DfigParams& p, const Scenario& sc, const StateVec& x0,
                                const AlgVec& a0, const SolverConfig& cfg);

[[nodiscard]] SimResult run_simulation(const DfigParams& p, const Scenario& sc,
                                       const StateVec& x0, const AlgVec& a0,
                                       const SolverConfig& cfg, Method m);

struct StableStep {
    double h = 0.0;
    bool any_stable = false;
};

/// Walks an ascending step grid until the predicate reports instability and
/// returns the last stable entry. If the first entry is already unstable the
/// result carries that smallest grid value with any_stable == false.
[[nodiscard]] StableStep max_stable_in_grid(std::span<const double> grid,
                                            const std::function<bool(double)>& stable_at);

/// Largest step in the grid for which the run completes with finite samples
/// and max state magnitude below 10x the initial infinity norm.
[[nodiscard]] StableStep max_stable_step(const DfigParams& p, const Scenario& sc,
                                         const StateVec& x0, const AlgVec& a0,
                                         const SolverConfig& cfg,
                                         std::span<const double> grid, Method m);

} // namespace dfig
