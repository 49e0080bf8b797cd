#include "dfig/scenario.hpp"

#include <string>

namespace dfig {

const char* to_string(InputField f) {
    switch (f) {
        case InputField::v_w: return "v_w";
        case InputField::x_e: return "x_e";
        case InputField::v_qinf: return "v_qinf";
    }
    return "?";
}

InputField input_field_from_string(const std::string& s) {
    if (s == "v_w") return InputField::v_w;
    if (s == "x_e") return InputField::x_e;
    if (s == "v_qinf") return InputField::v_qinf;
    throw ConfigError("unknown input field '" + s + "' (expected v_w, x_e or v_qinf)");
}

void Scenario::validate() const {
    if (!(t_end > 0.0)) {
        throw ConfigError("scenario " + name + ": t_end must be positive");
    }
    if (!(initial.v_w > 0.0) || !(initial.x_e > 0.0) || !(initial.v_qinf > 0.0)) {
        throw ConfigError("scenario " + name + ": initial inputs must be positive");
    }
    double prev = 0.0;
    for (const auto& e : events) {
        if (!(e.time > prev)) {
            throw ConfigError("scenario " + name + ": event times must be strictly increasing");
        }
        if (!(e.time < t_end)) {
            throw ConfigError("scenario " + name + ": event at " + std::to_string(e.time) +
                              " not before t_end");
        }
        if (!(e.value > 0.0)) {
            throw ConfigError("scenario " + name + ": event value for " +
                              std::string(to_string(e.field)) + " must be positive");
        }
        prev = e.time;
    }
}

InputVec Scenario::input_at(double t) const {
    InputVec u = initial;
    for (const auto& e : events) {
        if (e.time > t) break;
        switch (e.field) {
            case InputField::v_w: u.v_w = e.value; break;
            case InputField::x_e: u.x_e = e.value; break;
            case InputField::v_qinf: u.v_qinf = e.value; break;
        }
    }
    return u;
}

bool Scenario::is_preset(const std::string& name) {
    return name == "case1" || name == "case2" || name == "case3" || name == "constant";
}

Scenario Scenario::preset(const std::string& name) {
    Scenario s;
    s.name = name;
    s.initial = InputVec{10.0, 0.02, 1.0};
    if (name == "case1") {
        // wind 10 m/s on [0,2), 11 on [2,100), back to 10 on [100,200]
        s.t_end = 200.0;
        s.events = {{2.0, InputField::v_w, 11.0}, {100.0, InputField::v_w, 10.0}};
    } else if (name == "case2") {
        // line outage doubles the grid reactance on [2,50)
        s.t_end = 100.0;
        s.events = {{2.0, InputField::x_e, 0.04}, {50.0, InputField::x_e, 0.02}};
    } else if (name == "case3") {
        // infinite-bus dip to 0.92 p.u. for 0.1 s starting at 1.0 s
        s.t_end = 5.0;
        s.events = {{1.0, InputField::v_qinf, 0.92}, {1.1, InputField::v_qinf, 1.0}};
    } else if (name == "constant") {
        s.t_end = 10.0;
    } else {
        throw ConfigError("unknown scenario preset '" + name + "'");
    }
    s.validate();
    return s;
}

} // namespace dfig
