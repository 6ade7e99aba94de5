#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "continuation.hpp"
#include "path.hpp"

namespace oscsheet {

/// 9-significant-digit formatting used for all machine-readable output.
inline std::string fmt_g9(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

inline std::string fmt_complex(cplx z) {
    if (std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z.real()))) return fmt_g9(z.real());
    std::string out = fmt_g9(z.real());
    if (z.imag() >= 0.0) out += '+';
    out += fmt_g9(z.imag());
    out += 'i';
    return out;
}

// Path files: {"base": [re, im], "vertices": [[re, im], ...], "closed": bool}.
// These field names are the wire format; do not rename.

inline nlohmann::json path_to_json(const PathSpec& path) {
    nlohmann::json j;
    j["base"] = {path.base.real(), path.base.imag()};
    auto verts = nlohmann::json::array();
    for (cplx v : path.vertices) verts.push_back({v.real(), v.imag()});
    j["vertices"] = std::move(verts);
    j["closed"] = path.closed;
    return j;
}

inline PathSpec path_from_json(const nlohmann::json& j) {
    const auto read_point = [](const nlohmann::json& p) -> cplx {
        if (!p.is_array() || p.size() != 2)
            throw path_error("path file: points must be [re, im] pairs");
        return {p[0].get<double>(), p[1].get<double>()};
    };
    if (!j.contains("base") || !j.contains("vertices") || !j.contains("closed"))
        throw path_error("path file: required fields are base, vertices, closed");
    std::vector<cplx> verts;
    for (const auto& v : j["vertices"]) verts.push_back(read_point(v));
    return PathSpec{read_point(j["base"]), std::move(verts), j["closed"].get<bool>()};
}

inline constexpr const char* trace_csv_header =
    "s,g_re,g_im,E1_re,E1_im,E2_re,E2_im,E3_re,E3_im,E4_re,E4_im";

inline void write_trace_csv(std::ostream& os, const RootTrack& track) {
    os << trace_csv_header << '\n';
    for (const auto& sample : track.samples) {
        os << fmt_g9(sample.s) << ',' << fmt_g9(sample.g.real()) << ',' << fmt_g9(sample.g.imag());
        for (const cplx& root : sample.roots)
            os << ',' << fmt_g9(root.real()) << ',' << fmt_g9(root.imag());
        os << '\n';
    }
}

inline RootTrack read_trace_csv(std::istream& is) {
    RootTrack track;
    std::string line;
    if (!std::getline(is, line) || line != trace_csv_header)
        throw path_error("trace csv: missing or unexpected header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::vector<double> vals;
        while (std::getline(row, field, ',')) vals.push_back(std::stod(field));
        if (vals.size() != 11) throw path_error("trace csv: expected 11 columns per row");
        RootTrackSample sample;
        sample.s = vals[0];
        sample.g = {vals[1], vals[2]};
        for (int i = 0; i < 4; ++i) sample.roots[i] = {vals[3 + 2 * i], vals[4 + 2 * i]};
        track.samples.push_back(sample);
    }
    if (track.samples.empty()) throw path_error("trace csv: no samples");
    return track;
}

} // namespace oscsheet
