#pragma once

#include <string>

#include "dfig/smallsignal.hpp"
#include "dfig/solver.hpp"

namespace dfig {

/// 17-significant-digit decimal form; round-trips any finite double exactly.
[[nodiscard]] std::string format_g17(double v);

/// Header row `t,<14 state names>,<28 algebraic names>`, one row per sample.
void write_trajectory_csv(const std::string& path, const SimResult& r);

/// Parses a file produced by write_trajectory_csv (stats are not stored in
/// the file and come back zeroed). Throws ConfigError on malformed content.
[[nodiscard]] SimResult read_trajectory_csv(const std::string& path);

/// Per-speed modal rows: wind speed, status, mode index, eigenvalue,
/// damping, frequency and the mode's participation column.
void write_modal_csv(const std::string& path, const SweepResult& sweep);

} // namespace dfig
