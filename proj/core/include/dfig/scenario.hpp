#pragma once

#include <string>
#include <vector>

#include "dfig/errors.hpp"
#include "dfig/vectors.hpp"

namespace dfig {

/// Which input a scenario event changes.
enum class InputField { v_w, x_e, v_qinf };

[[nodiscard]] const char* to_string(InputField f);
[[nodiscard]] InputField input_field_from_string(const std::string& s);

struct ScenarioEvent {
    double time = 0.0;  // seconds
    InputField field = InputField::v_w;
    double value = 0.0;
};

/// Piecewise-constant event schedule for wind speed, grid reactance and
/// infinite-bus voltage.
struct Scenario {
    std::string name = "constant";
    InputVec initial{};
    double t_end = 10.0;
    std::vector<ScenarioEvent> events;

    /// Throws ConfigError on non-increasing event times, events at or past
    /// t_end, or non-positive values.
    void validate() const;

    /// Input vector with all events at time <= t applied.
    [[nodiscard]] InputVec input_at(double t) const;

    /// Built-in schedules: "case1" (wind steps), "case2" (line outage),
    /// "case3" (voltage dip), "constant".
    [[nodiscard]] static Scenario preset(const std::string& name);
    [[nodiscard]] static bool is_preset(const std::string& name);
};

} // namespace dfig
