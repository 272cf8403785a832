#pragma once

// Persistence and parsing: plot-ready CSV emission, JSON reports and run
// manifests, and parsing of gate specifications from command-line strings.
// CSV floats use 17 significant digits so values round-trip exactly.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gatepower/betafit.hpp"
#include "gatepower/ensemble.hpp"
#include "gatepower/power.hpp"

namespace gatepower {

inline constexpr const char* tool_version = "0.1.0";

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_sig4(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

namespace detail {

inline std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::string cleaned = text;
    for (auto& c : cleaned)
        if (c == ',' || c == ';') c = ' ';
    std::istringstream in(cleaned);
    std::string tok;
    while (in >> tok) {
        double v = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            throw ParseError("not a number: '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

} // namespace detail

// --- gate specifications ------------------------------------------------

// A gate given as a named token, an explicit matrix of 16 re,im pairs
// (row-major), or Cartan parameters: 3 kernel angles, optionally followed by
// 2 or 4 SU(2) locals of 3 angles each. With two locals, they act as the
// left pair.
struct GateSpec {
    static Unitary4 from_matrix_text(const std::string& text) {
        const auto nums = detail::parse_number_list(text);
        if (nums.size() != 32)
            throw ParseError("matrix needs 32 numbers (16 re,im pairs), got " +
                             std::to_string(nums.size()));
        Mat4 m;
        for (int i = 0; i < 16; ++i) m.a[i] = cplx(nums[2 * i], nums[2 * i + 1]);
        if (unitarity_defect(m) > 1e-8) throw NonUnitaryInput("parsed matrix is not unitary");
        return Unitary4{m};
    }

    static Unitary4 from_cartan_text(const std::string& text) {
        const auto v = detail::parse_number_list(text);
        const CartanParams alpha = v.size() >= 3 ? CartanParams{v[0], v[1], v[2]} : CartanParams{};
        auto local = [&](size_t base) { return SU2Params{v[base], v[base + 1], v[base + 2]}; };
        if (v.size() == 3)
            return compose_cartan({}, {}, {}, {}, alpha);
        if (v.size() == 9) // kernel + left locals only
            return compose_cartan(local(3), local(6), {}, {}, alpha);
        if (v.size() == 15) // kernel + (VA, VB, UA, UB)
            return compose_cartan(local(9), local(12), local(3), local(6), alpha);
        throw ParseError("cartan spec needs 3, 9 or 15 numbers, got " + std::to_string(v.size()));
    }

    static Unitary4 from_named_token(const std::string& token) {
        return named_gate(named_gate_from_token(token));
    }
};

// --- JSON reports ---------------------------------------------------------

inline nlohmann::json to_json(const ResourceReport& r) {
    return {
        {"e_g", r.e_g},
        {"e_g_closed_form", r.e_g_closed},
        {"c_g_bits", r.c_g},
        {"c_g_norm", r.c_g_norm},
        {"c_g_prime_bits", r.c_g_prime},
        {"c_g_prime_norm", r.c_g_prime / 2.0},
        {"e_g_vidal", r.e_g_vidal},
        {"c_g_l1", r.c_g_l1},
        {"kak_alpha", {r.kak_alpha.ax, r.kak_alpha.ay, r.kak_alpha.az}},
        {"ent_argmax", {r.ent_argmax.abar, r.ent_argmax.bbar, r.ent_argmax.gbar, r.ent_argmax.dbar}},
        {"coh_argmax",
         {{"input_index", r.coh_argmax_input},
          {"theta", r.coh_argmax_basis.theta},
          {"phi", r.coh_argmax_basis.phi}}},
        {"optimizer", {{"evaluations", r.evaluations}, {"converged", r.converged}}},
    };
}

inline nlohmann::json to_json(const BetaFitResult& f) {
    return {
        {"alpha_b", f.alpha_b},
        {"beta_b", f.beta_b},
        {"d", f.d},
        {"x0", f.x0},
        {"h", f.h},
        {"chi2_sum_sq", f.chi2},
        {"ci95", {f.ci95[0], f.ci95[1], f.ci95[2], f.ci95[3], f.ci95[4]}},
        {"converged", f.converged},
        {"iterations", f.iterations},
    };
}

// --- run manifests ---------------------------------------------------------

struct RunManifest {
    std::string command;
    nlohmann::json config;
    std::uint64_t seed = 0;
    double duration_seconds = 0.0;
    nlohmann::json counters;
    std::vector<std::string> outputs;

    nlohmann::json to_json() const {
        return {{"command", command}, {"version", tool_version},   {"seed", seed},
                {"config", config},   {"duration_seconds", duration_seconds},
                {"counters", counters}, {"outputs", outputs}};
    }

    void write(const std::string& path) const {
        detail::write_file(path, to_json().dump(2) + "\n");
    }
};

inline std::string manifest_path_for(const std::string& out_base) {
    return out_base + ".manifest.json";
}

// --- CSV emission ----------------------------------------------------------

inline void write_histogram_csv(const std::string& path, const HistogramGrid& g,
                                const std::string& manifest_ref) {
    std::ostringstream out;
    out << "# manifest: " << manifest_ref << "\n";
    out << "x_bin,y_bin,x_center,y_center,count,rel_freq\n";
    for (int x = 0; x < g.nbins; ++x)
        for (int y = 0; y < g.nbins; ++y) {
            const double nu = static_cast<double>(g.at(x, y)) / static_cast<double>(g.total);
            out << x << ',' << y << ',' << fmt17(g.center(x)) << ',' << fmt17(g.center(y)) << ','
                << g.at(x, y) << ',' << fmt17(nu) << '\n';
        }
    detail::write_file(path, out.str());
}

inline HistogramGrid read_histogram_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    std::string line;
    std::vector<std::array<double, 6>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("x_bin", 0) == 0) continue;
        std::array<double, 6> row{};
        std::istringstream ls(line);
        std::string cell;
        for (int c = 0; c < 6; ++c) {
            if (!std::getline(ls, cell, ',')) throw ParseError("bad histogram row: " + line);
            row[c] = std::stod(cell);
        }
        rows.push_back(row);
    }
    if (rows.empty()) throw ParseError("empty histogram: " + path);
    const int nbins = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rows.size()))));
    if (static_cast<size_t>(nbins) * nbins != rows.size())
        throw ParseError("histogram is not square: " + path);
    const double w = 2.0 * rows[0][2]; // first x center = w/2
    HistogramGrid g = HistogramGrid::empty(w, nbins);
    for (const auto& row : rows) {
        g.at(static_cast<int>(row[0]), static_cast<int>(row[1])) = static_cast<long>(row[4]);
        g.total += static_cast<long>(row[4]);
    }
    return g;
}

inline void write_samples_csv(const std::string& path, const CampaignResult& c,
                              const std::string& manifest_ref) {
    std::ostringstream out;
    out << "# manifest: " << manifest_ref << "\n";
    out << "index,ent_raw,coh_raw,ent_converged,coh_converged\n";
    for (const auto& s : c.samples)
        out << s.index << ',' << fmt17(s.ent_raw) << ',' << fmt17(s.coh_raw) << ','
            << (s.ent_converged ? 1 : 0) << ',' << (s.coh_converged ? 1 : 0) << '\n';
    detail::write_file(path, out.str());
}

inline std::vector<SampleRecord> read_samples_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    std::string line;
    std::vector<SampleRecord> out;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("index", 0) == 0) continue;
        std::istringstream ls(line);
        std::string cell;
        SampleRecord s;
        std::getline(ls, cell, ',');
        s.index = std::stol(cell);
        std::getline(ls, cell, ',');
        s.ent_raw = std::stod(cell);
        std::getline(ls, cell, ',');
        s.coh_raw = std::stod(cell);
        std::getline(ls, cell, ',');
        s.ent_converged = cell == "1";
        std::getline(ls, cell, ',');
        s.coh_converged = cell == "1";
        out.push_back(s);
    }
    return out;
}

inline void write_section_csv(const std::string& path, const CrossSection& s,
                              const std::string& manifest_ref) {
    std::ostringstream out;
    out << "# manifest: " << manifest_ref << "\n";
    out << "x_center,rel_freq\n";
    for (size_t i = 0; i < s.x.size(); ++i)
        out << fmt17(s.x[i]) << ',' << fmt17(s.nu[i]) << '\n';
    detail::write_file(path, out.str());
}

inline void write_scatter_csv(const std::string& path,
                              const std::vector<std::pair<double, double>>& pts,
                              const std::string& xname, const std::string& yname,
                              const std::string& manifest_ref) {
    std::ostringstream out;
    out << "# manifest: " << manifest_ref << "\n";
    out << xname << ',' << yname << '\n';
    for (const auto& [x, y] : pts) out << fmt17(x) << ',' << fmt17(y) << '\n';
    detail::write_file(path, out.str());
}

inline void write_curve_csv(const std::string& path, const std::vector<double>& xs,
                            const std::vector<double>& ys, const std::string& manifest_ref) {
    std::ostringstream out;
    out << "# manifest: " << manifest_ref << "\n";
    out << "x,f\n";
    for (size_t i = 0; i < xs.size(); ++i) out << fmt17(xs[i]) << ',' << fmt17(ys[i]) << '\n';
    detail::write_file(path, out.str());
}

} // namespace gatepower
