#include "dfig/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace dfig {

namespace {

struct Line {
    std::string section;
    std::string key;
    std::string value;
    int number = 0;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<Line> parse_lines(std::istream& in, const std::string& origin) {
    std::vector<Line> out;
    std::string section;
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(origin + ":" + std::to_string(number) +
                                  ": unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(number) +
                              ": expected 'key = value'");
        }
        Line l;
        l.section = section;
        l.key = trim(line.substr(0, eq));
        l.value = trim(line.substr(eq + 1));
        l.number = number;
        if (l.section.empty()) {
            throw ConfigError(origin + ":" + std::to_string(number) +
                              ": key outside any [section]");
        }
        if (l.key.empty() || l.value.empty()) {
            throw ConfigError(origin + ":" + std::to_string(number) + ": empty key or value");
        }
        out.push_back(std::move(l));
    }
    return out;
}

double parse_double(const Line& l, const std::string& origin) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(l.value, &pos);
        if (pos != l.value.size() || !std::isfinite(v)) throw std::invalid_argument(l.value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(origin + ":" + std::to_string(l.number) + ": '" + l.value +
                          "' is not a number for key " + l.key);
    }
}

int parse_int(const Line& l, const std::string& origin) {
    const double v = parse_double(l, origin);
    if (v != std::floor(v)) {
        throw ConfigError(origin + ":" + std::to_string(l.number) + ": key " + l.key +
                          " needs an integer");
    }
    return static_cast<int>(v);
}

Scenario parse_scenario_section(const std::vector<Line>& lines, const std::string& origin,
                                const InputVec& base) {
    Scenario sc;
    sc.name = "custom";
    sc.initial = base;
    bool any = false;
    for (const auto& l : lines) {
        if (l.section != "scenario") continue;
        any = true;
        if (l.key == "name") {
            sc.name = l.value;
        } else if (l.key == "v_w") {
            sc.initial.v_w = parse_double(l, origin);
        } else if (l.key == "x_e") {
            sc.initial.x_e = parse_double(l, origin);
        } else if (l.key == "v_qinf") {
            sc.initial.v_qinf = parse_double(l, origin);
        } else if (l.key == "t_end") {
            sc.t_end = parse_double(l, origin);
        } else if (l.key == "event") {
            std::istringstream es(l.value);
            double time = 0.0;
            double value = 0.0;
            std::string field;
            if (!(es >> time >> field >> value)) {
                throw ConfigError(origin + ":" + std::to_string(l.number) +
                                  ": event needs '<time> <field> <value>'");
            }
            sc.events.push_back({time, input_field_from_string(field), value});
        } else {
            throw ConfigError(origin + ":" + std::to_string(l.number) +
                              ": unknown scenario key " + l.key);
        }
    }
    if (!any) {
        throw ConfigError(origin + ": no [scenario] section found");
    }
    sc.validate();
    return sc;
}

} // namespace

ConfigBundle load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    const std::vector<Line> lines = parse_lines(in, path);

    ConfigBundle cfg;
    DfigParams& p = cfg.params;

    using Setter = std::function<void(const Line&)>;
    std::map<std::string, Setter> keys;
    auto bind = [&](const std::string& section, const std::string& key, double* field) {
        keys[section + "/" + key] = [&, field](const Line& l) { *field = parse_double(l, path); };
    };

    bind("machine", "R_s", &p.R_s);
    bind("machine", "R_r", &p.R_r);
    bind("machine", "L_ss", &p.L_ss);
    bind("machine", "L_rr", &p.L_rr);
    bind("machine", "L_m", &p.L_m);
    bind("machine", "omega_el", &p.omega_el);
    bind("machine", "omega_s", &p.omega_s);

    bind("drivetrain", "H_g", &p.H_g);
    bind("drivetrain", "H_t", &p.H_t);
    bind("drivetrain", "K_sh", &p.K_sh);
    bind("drivetrain", "C_sh", &p.C_sh);
    bind("drivetrain", "k_opt", &p.k_opt);
    bind("drivetrain", "v_wB", &p.v_wB);

    bind("converter", "C_dc", &p.C_dc);
    bind("converter", "x_tg", &p.x_tg);

    for (int i = 0; i < 6; ++i) {
        bind("controllers", "K_P" + std::to_string(i + 1), &p.K_P[static_cast<std::size_t>(i)]);
        bind("controllers", "K_I" + std::to_string(i + 1), &p.K_I[static_cast<std::size_t>(i)]);
    }
    bind("controllers", "delta_igref", &p.delta_igref);
    bind("controllers", "V_sref", &p.V_sref);
    bind("controllers", "E_igref", &p.E_igref);
    bind("controllers", "V_dcref", &p.V_dcref);
    bind("controllers", "Q_gref", &p.Q_gref);

    bind("network", "x_e", &p.x_e_default);
    bind("network", "v_qinf", &p.v_qinf_default);

    bind("solver", "h", &cfg.solver.h);
    bind("solver", "rk4_h", &cfg.rk4_h);
    bind("solver", "output_dt", &cfg.solver.output_dt);
    bind("solver", "cond_max", &cfg.solver.cond_max);
    bind("solver", "newton_tol", &cfg.solver.newton_tol);
    keys["solver/NL"] = [&](const Line& l) { cfg.solver.nl = parse_int(l, path); };
    keys["solver/newton_max_iter"] = [&](const Line& l) {
        cfg.solver.newton_max_iter = parse_int(l, path);
    };

    bool has_scenario = false;
    for (const auto& l : lines) {
        if (l.section == "scenario") {
            has_scenario = true;
            continue;
        }
        const auto it = keys.find(l.section + "/" + l.key);
        if (it == keys.end()) {
            throw ConfigError(path + ":" + std::to_string(l.number) + ": unknown key " + l.key +
                              " in section [" + l.section + "]");
        }
        it->second(l);
    }
    if (has_scenario) {
        cfg.scenario = parse_scenario_section(
            lines, path, InputVec{10.0, p.x_e_default, p.v_qinf_default});
    }

    p.validate();
    if (!(cfg.rk4_h > 0.0)) {
        throw ConfigError(path + ": rk4_h must be positive");
    }
    return cfg;
}

Scenario load_scenario(const std::string& name_or_path, const InputVec& base) {
    if (Scenario::is_preset(name_or_path)) {
        return Scenario::preset(name_or_path);
    }
    std::ifstream in(name_or_path);
    if (!in) {
        throw ConfigError("'" + name_or_path +
                          "' is neither a preset (case1/case2/case3/constant) nor a readable file");
    }
    const std::vector<Line> lines = parse_lines(in, name_or_path);
    return parse_scenario_section(lines, name_or_path, base);
}

std::string config_text(const ConfigBundle& cfg) {
    const DfigParams& p = cfg.params;
    std::ostringstream os;
    os.precision(17);
    os << "[machine]\n"
       << "R_s = " << p.R_s << "\n"
       << "R_r = " << p.R_r << "\n"
       << "L_ss = " << p.L_ss << "\n"
       << "L_rr = " << p.L_rr << "\n"
       << "L_m = " << p.L_m << "\n"
       << "omega_el = " << p.omega_el << "\n"
       << "omega_s = " << p.omega_s << "\n\n";
    os << "[drivetrain]\n"
       << "H_g = " << p.H_g << "\n"
       << "H_t = " << p.H_t << "\n"
       << "K_sh = " << p.K_sh << "\n"
       << "C_sh = " << p.C_sh << "\n"
       << "k_opt = " << p.k_opt << "\n"
       << "v_wB = " << p.v_wB << "\n\n";
    os << "[converter]\n"
       << "C_dc = " << p.C_dc << "\n"
       << "x_tg = " << p.x_tg << "\n\n";
    os << "[controllers]\n";
    for (int i = 0; i < 6; ++i) {
        os << "K_P" << (i + 1) << " = " << p.K_P[static_cast<std::size_t>(i)] << "\n";
        os << "K_I" << (i + 1) << " = " << p.K_I[static_cast<std::size_t>(i)] << "\n";
    }
    os << "delta_igref = " << p.delta_igref << "\n"
       << "V_sref = " << p.V_sref << "\n"
       << "E_igref = " << p.E_igref << "\n"
       << "V_dcref = " << p.V_dcref << "\n"
       << "Q_gref = " << p.Q_gref << "\n\n";
    os << "[network]\n"
       << "x_e = " << p.x_e_default << "\n"
       << "v_qinf = " << p.v_qinf_default << "\n\n";
    os << "[solver]\n"
       << "NL = " << cfg.solver.nl << "\n"
       << "h = " << cfg.solver.h << "\n"
       << "rk4_h = " << cfg.rk4_h << "\n"
       << "output_dt = " << cfg.solver.output_dt << "\n"
       << "cond_max = " << cfg.solver.cond_max << "\n"
       << "newton_tol = " << cfg.solver.newton_tol << "\n"
       << "newton_max_iter = " << cfg.solver.newton_max_iter << "\n";
    return os.str();
}

} // namespace dfig
