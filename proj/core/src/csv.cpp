#include "dfig/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace dfig {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

double parse_field(const std::string& s, const std::string& path, long line_no) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw ConfigError(path + ":" + std::to_string(line_no) + ": bad numeric field '" + s +
                          "'");
    }
    return v;
}

} // namespace

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trajectory_csv(const std::string& path, const SimResult& r) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot open '" + path + "' for writing");
    }
    out << "t";
    for (auto n : state_names()) out << ',' << n;
    for (auto n : alg_names()) out << ',' << n;
    out << '\n';
    for (std::size_t j = 0; j < r.times.size(); ++j) {
        out << format_g17(r.times[j]);
        for (int i = 0; i < st::count; ++i) {
            out << ',' << format_g17(r.states(static_cast<Eigen::Index>(j), i));
        }
        for (int i = 0; i < al::count; ++i) {
            out << ',' << format_g17(r.algs(static_cast<Eigen::Index>(j), i));
        }
        out << '\n';
    }
    if (!out) {
        throw ConfigError("write to '" + path + "' failed");
    }
}

SimResult read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ConfigError(path + ": empty file");
    }
    {
        std::string expected = "t";
        for (auto n : state_names()) expected += std::string(",") + n;
        for (auto n : alg_names()) expected += std::string(",") + n;
        if (line != expected) {
            throw ConfigError(path + ": unexpected header row");
        }
    }

    std::vector<std::vector<double>> rows;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 1 + st::count + al::count) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected " +
                              std::to_string(1 + st::count + al::count) + " fields, got " +
                              std::to_string(fields.size()));
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_field(f, path, line_no));
        rows.push_back(std::move(row));
    }

    SimResult r;
    const auto n = static_cast<Eigen::Index>(rows.size());
    r.states.resize(n, st::count);
    r.algs.resize(n, al::count);
    r.times.reserve(rows.size());
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto& row = rows[static_cast<std::size_t>(j)];
        r.times.push_back(row[0]);
        for (int i = 0; i < st::count; ++i) r.states(j, i) = row[static_cast<std::size_t>(1 + i)];
        for (int i = 0; i < al::count; ++i) {
            r.algs(j, i) = row[static_cast<std::size_t>(1 + st::count + i)];
        }
    }
    return r;
}

void write_modal_csv(const std::string& path, const SweepResult& sweep) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot open '" + path + "' for writing");
    }
    out << "v_w,status,mode,re,im,damping,frequency_hz";
    for (auto n : state_names()) out << ",p_" << n;
    out << '\n';
    for (const auto& pt : sweep.points) {
        if (!pt.ok) {
            out << format_g17(pt.v_w) << ",failed";
            for (int i = 0; i < 5 + st::count; ++i) out << ',';
            out << '\n';
            continue;
        }
        const auto& m = pt.modal;
        for (Eigen::Index i = 0; i < m.eigenvalues.size(); ++i) {
            out << format_g17(pt.v_w) << ",ok," << i << ',' << format_g17(m.eigenvalues(i).real())
                << ',' << format_g17(m.eigenvalues(i).imag()) << ',' << format_g17(m.damping(i))
                << ',' << format_g17(m.frequency_hz(i));
            for (int k = 0; k < st::count; ++k) out << ',' << format_g17(m.participation(k, i));
            out << '\n';
        }
    }
    if (!out) {
        throw ConfigError("write to '" + path + "' failed");
    }
}

} // namespace dfig
