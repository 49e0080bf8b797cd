#pragma once

#include <optional>
#include <string>

#include "dfig/params.hpp"
#include "dfig/scenario.hpp"
#include "dfig/solver.hpp"

namespace dfig {

/// Everything a run needs. `rk4_h` is the reference-integrator step used
/// when no explicit --step override is given; the series method uses
/// `solver.h`.
struct ConfigBundle {
    DfigParams params;
    SolverConfig solver;
    double rk4_h = 0.002;
    std::optional<Scenario> scenario;  // from an in-file [scenario] section
};

/// Parses a sectioned key = value file ([machine], [drivetrain],
/// [converter], [controllers], [network], [solver], optional [scenario]).
/// Unknown sections or keys, malformed lines and invariant violations all
/// throw ConfigError with the line number or field name.
[[nodiscard]] ConfigBundle load_config(const std::string& path);

/// A scenario by preset name ("case1", "case2", "case3", "constant") or
/// from a file containing a [scenario] section. `base` supplies the initial
/// inputs a file may leave unset (presets carry their own).
[[nodiscard]] Scenario load_scenario(const std::string& name_or_path,
                                     const InputVec& base = InputVec{});

/// Serializes the full parameter set in load_config's format.
[[nodiscard]] std::string config_text(const ConfigBundle& cfg);

} // namespace dfig
