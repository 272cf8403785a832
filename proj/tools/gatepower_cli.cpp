// Command-line front end: per-gate resource reports, parameter scans,
// Haar campaigns, beta fitting of histogram cross-sections, and scatter
// exports. Exit codes: 0 success, 1 usage/parse error, 2 data/convergence
// error.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gatepower/io.hpp"

namespace gp = gatepower;

namespace {

struct GateFlags {
    std::string named;
    std::string matrix;
    std::string cartan;
};

gp::Unitary4 resolve_gate(const GateFlags& g) {
    const int given = (!g.named.empty()) + (!g.matrix.empty()) + (!g.cartan.empty());
    if (given != 1) throw gp::ParseError("specify exactly one of --gate, --matrix, --cartan");
    if (!g.named.empty()) return gp::GateSpec::from_named_token(g.named);
    if (!g.matrix.empty()) return gp::GateSpec::from_matrix_text(g.matrix);
    return gp::GateSpec::from_cartan_text(g.cartan);
}

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

int cmd_gate_report(const GateFlags& gate, const std::string& out, bool skip_arbitrary,
                    std::uint64_t seed) {
    const gp::Unitary4 u = resolve_gate(gate);
    gp::ReportOptions opts;
    opts.include_arbitrary = !skip_arbitrary;
    opts.coherence.rng_seed = opts.arbitrary.rng_seed = opts.input.rng_seed = seed;
    const double t0 = now_seconds();
    const gp::ResourceReport r = gp::compute_resource_report(u, opts);
    const double dt = now_seconds() - t0;

    std::printf("gate          E_g     C~_g    C~'_g   E-bar_g C-bar_g\n");
    std::printf("%-12s  %-7s %-7s %-7s %-7s %-7s\n",
                gate.named.empty() ? "(custom)" : gate.named.c_str(), gp::fmt_sig4(r.e_g).c_str(),
                gp::fmt_sig4(r.c_g_norm).c_str(),
                skip_arbitrary ? "-" : gp::fmt_sig4(r.c_g_prime / 2.0).c_str(),
                gp::fmt_sig4(r.e_g_vidal).c_str(), gp::fmt_sig4(r.c_g_l1).c_str());

    if (!out.empty()) {
        gp::RunManifest man;
        man.command = "gate-report";
        man.seed = seed;
        man.config = {{"gate", gate.named},
                      {"matrix", gate.matrix},
                      {"cartan", gate.cartan},
                      {"skip_arbitrary", skip_arbitrary}};
        man.duration_seconds = dt;
        man.counters = {{"optimizer_evaluations", r.evaluations}};
        man.outputs = {out};
        man.write(gp::manifest_path_for(out));

        nlohmann::json j = gp::to_json(r);
        j["manifest"] = gp::manifest_path_for(out);
        gp::detail::write_file(out, j.dump(2) + "\n");
    }
    return 0;
}

int cmd_scan(const std::string& kind, const GateFlags& gate, int resolution, std::uint64_t seed,
             const std::string& out) {
    if (out.empty()) throw gp::ParseError("scan requires --out");
    gp::RunManifest man;
    man.command = "scan";
    man.seed = seed;
    man.config = {{"kind", kind}, {"resolution", resolution}};
    man.outputs = {out};
    const double t0 = now_seconds();

    std::ostringstream csv;
    csv << "# manifest: " << gp::manifest_path_for(out) << "\n";
    if (kind == "stilde_surface") {
        const gp::Unitary4 u = resolve_gate(gate);
        csv << "theta,phi,s1,s2,s3,s4\n";
        for (int i = 0; i <= resolution; ++i)
            for (int j = 0; j <= resolution; ++j) {
                const double th = gp::pi * i / resolution;
                const double ph = 2.0 * gp::pi * j / resolution;
                gp::ProductBasisParams b{th, ph};
                csv << gp::fmt17(th) << ',' << gp::fmt17(ph);
                for (int k = 1; k <= 4; ++k) csv << ',' << gp::fmt17(gp::stilde(u, k, b));
                csv << '\n';
            }
    } else if (kind == "alpha_region") {
        // kernel grid with random left locals; marks where the normalized
        // coherence power reaches one
        csv << "ax,ay,az,c_tilde,maximal\n";
        gp::RngState rng = gp::RngState::from_seed(seed);
        const auto cfg = gp::default_optimizer_config(2);
        for (int i = 0; i < resolution; ++i)
            for (int j = 0; j < resolution; ++j)
                for (int k = 0; k < resolution; ++k) {
                    const double ax = resolution == 1 ? 0.0 : gp::pi * i / (resolution - 1);
                    const double ay = resolution == 1 ? 0.0 : gp::pi * j / (resolution - 1);
                    const double az = resolution == 1 ? 0.0 : gp::pi * k / (resolution - 1);
                    const gp::SU2Params ua{rng.next_uniform() * gp::pi,
                                           rng.next_uniform() * 2.0 * gp::pi,
                                           rng.next_uniform() * 4.0 * gp::pi};
                    const gp::SU2Params ub{rng.next_uniform() * gp::pi,
                                           rng.next_uniform() * 2.0 * gp::pi,
                                           rng.next_uniform() * 4.0 * gp::pi};
                    const gp::Unitary4 u =
                        gp::compose_cartan(ua, ub, {}, {}, {ax, ay, az});
                    const auto r = gp::coherence_power_product(u, cfg);
                    const double ct = r.value / 2.0;
                    csv << gp::fmt17(ax) << ',' << gp::fmt17(ay) << ',' << gp::fmt17(az) << ','
                        << gp::fmt17(ct) << ',' << (ct >= 1.0 - 5e-3 ? 1 : 0) << '\n';
                }
    } else {
        throw gp::ParseError("unknown scan kind: " + kind);
    }
    gp::detail::write_file(out, csv.str());
    man.duration_seconds = now_seconds() - t0;
    man.counters = {};
    man.write(gp::manifest_path_for(out));
    return 0;
}

gp::CoherenceMode coherence_mode_from(const std::string& s) {
    if (s == "product") return gp::CoherenceMode::product_basis;
    if (s == "arbitrary") return gp::CoherenceMode::arbitrary_basis;
    if (s == "l1") return gp::CoherenceMode::l1_norm;
    throw gp::ParseError("unknown coherence mode: " + s);
}

gp::EntanglementMode ent_mode_from(const std::string& s) {
    if (s == "closed") return gp::EntanglementMode::closed_form;
    if (s == "numeric") return gp::EntanglementMode::numeric;
    if (s == "vidal") return gp::EntanglementMode::vidal;
    throw gp::ParseError("unknown entanglement mode: " + s);
}

int cmd_campaign(long samples, std::uint64_t seed, const std::string& coh_mode,
                 const std::string& ent_mode, double bin_width, int workers,
                 const std::string& out) {
    if (out.empty()) throw gp::ParseError("campaign requires --out");
    gp::CampaignConfig cfg;
    cfg.n_samples = samples;
    cfg.seed = seed;
    cfg.coherence_mode = coherence_mode_from(coh_mode);
    cfg.entanglement_mode = ent_mode_from(ent_mode);
    cfg.bin_width = bin_width;
    cfg.worker_count = workers;

    const double t0 = now_seconds();
    const gp::CampaignResult result = gp::run_campaign(cfg);
    const double dt = now_seconds() - t0;

    const std::string manifest = gp::manifest_path_for(out);
    gp::RunManifest man;
    man.command = "campaign";
    man.seed = seed;
    man.config = {{"samples", samples},
                  {"coherence_mode", coh_mode},
                  {"ent_mode", ent_mode},
                  {"bin_width", bin_width},
                  {"workers", workers}};
    man.duration_seconds = dt;
    man.counters = {{"samples", result.grid.total},
                    {"optimizer_evaluations", result.optimizer_evaluations},
                    {"non_converged", result.non_converged},
                    {"degenerate_redraws", result.degenerate_redraws}};
    man.outputs = {out, out + ".samples.csv"};
    man.write(manifest);

    gp::write_histogram_csv(out, result.grid, manifest);
    gp::write_samples_csv(out + ".samples.csv", result, manifest);
    std::printf("campaign: %ld samples, %ld non-converged, wrote %s\n", result.grid.total,
                result.non_converged, out.c_str());
    return 0;
}

int cmd_fit(const std::string& in, const std::string& axis, const std::string& bin_spec,
            const std::string& out) {
    const gp::HistogramGrid grid = gp::read_histogram_csv(in);
    const gp::SectionAxis ax = axis == "coh" ? gp::SectionAxis::coh : gp::SectionAxis::ent;
    const int bin = bin_spec == "top" ? grid.nbins - 1 : std::stoi(bin_spec);
    const gp::CrossSection sec = gp::cross_section(grid, ax, bin);

    gp::BetaFitResult fit;
    nlohmann::json j;
    int code = 0;
    try {
        fit = gp::fit_beta(sec.x, sec.nu);
        j = gp::to_json(fit);
    } catch (const gp::Error& e) {
        j = {{"error", e.what()}};
        code = 2;
    }
    j["axis"] = axis;
    j["bin"] = bin;
    j["source"] = in;
    if (!out.empty()) {
        const std::string manifest = gp::manifest_path_for(out);
        gp::RunManifest man;
        man.command = "fit";
        man.config = {{"in", in}, {"axis", axis}, {"bin", bin_spec}};
        man.duration_seconds = 0.0;
        man.counters = {{"fit_iterations", fit.iterations}};
        man.outputs = {out, out + ".curve.csv"};
        man.write(manifest);
        j["manifest"] = manifest;
        gp::detail::write_file(out, j.dump(2) + "\n");
        if (code == 0) {
            std::vector<double> ys(sec.x.size());
            for (size_t i = 0; i < sec.x.size(); ++i)
                ys[i] = gp::beta_fit_model(sec.x[i], fit.params());
            gp::write_curve_csv(out + ".curve.csv", sec.x, ys, manifest);
        }
    }
    std::printf("%s\n", j.dump(2).c_str());
    return code;
}

int cmd_export(const std::string& in, const std::string& pair, const std::string& coh_mode,
               const std::string& ent_mode, const std::string& out) {
    if (out.empty()) throw gp::ParseError("export requires --out");
    gp::CampaignResult c;
    c.samples = gp::read_samples_csv(in);
    c.config.coherence_mode = coherence_mode_from(coh_mode);
    c.config.entanglement_mode = ent_mode_from(ent_mode);

    gp::MeasurePair mp;
    std::string xn, yn;
    if (pair == "eg-cg") {
        mp = gp::MeasurePair::eg_cg;
        xn = "e_g";
        yn = "c_g_bits";
    } else if (pair == "eg-cgprime") {
        mp = gp::MeasurePair::eg_cg_prime;
        xn = "e_g";
        yn = "c_g_prime_bits";
    } else if (pair == "ebar-cbar") {
        mp = gp::MeasurePair::ebar_cbar;
        xn = "e_bar_g";
        yn = "c_bar_g";
    } else {
        throw gp::ParseError("unknown pair: " + pair);
    }
    const auto pts = gp::scatter_export(c, mp);
    const std::string manifest = gp::manifest_path_for(out);
    gp::RunManifest man;
    man.command = "export";
    man.config = {{"in", in}, {"pair", pair}};
    man.outputs = {out};
    man.write(manifest);
    gp::write_scatter_csv(out, pts, xn, yn, manifest);
    std::printf("export: %zu points -> %s\n", pts.size(), out.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"resource-generating powers of two-qubit gates"};
    app.require_subcommand(1);
    app.set_config("--config");

    GateFlags gate;
    std::string out;
    std::uint64_t seed = 1;
    bool skip_arbitrary = false;

    auto* rep = app.add_subcommand("gate-report", "entanglement and coherence powers of one gate");
    rep->add_option("--gate", gate.named, "named gate: cnot,cz,swap,sqrtswap,yx,hh,hi");
    rep->add_option("--matrix", gate.matrix, "16 re,im pairs, row-major");
    rep->add_option("--cartan", gate.cartan, "3 kernel angles [+ 2 or 4 locals x 3 angles]");
    rep->add_option("--seed", seed, "optimizer seed");
    rep->add_flag("--skip-arbitrary", skip_arbitrary, "skip the 15-parameter basis search");
    rep->add_option("--out", out, "write JSON report here");

    std::string scan_kind = "stilde_surface";
    int resolution = 64;
    auto* scan = app.add_subcommand("scan", "parameter scans (stilde_surface, alpha_region)");
    scan->add_option("--kind", scan_kind, "stilde_surface | alpha_region");
    scan->add_option("--gate", gate.named, "named gate");
    scan->add_option("--matrix", gate.matrix, "explicit matrix");
    scan->add_option("--cartan", gate.cartan, "cartan parameters");
    scan->add_option("--res", resolution, "grid resolution");
    scan->add_option("--seed", seed, "seed for random locals");
    scan->add_option("--out", out, "output CSV");

    long samples = 1000;
    double bin_width = 0.025;
    int workers = 2;
    std::string coh_mode = "product", ent_mode = "closed";
    auto* camp = app.add_subcommand("campaign", "Haar-random resource campaign");
    camp->add_option("--samples", samples, "number of Haar samples");
    camp->add_option("--seed", seed, "campaign seed");
    camp->add_option("--coherence-mode", coh_mode, "product | arbitrary | l1");
    camp->add_option("--ent-mode", ent_mode, "closed | numeric | vidal");
    camp->add_option("--bin-width", bin_width, "histogram bin width (divides 1)");
    camp->add_option("--workers", workers, "worker threads");
    camp->add_option("--out", out, "histogram CSV path");

    std::string fit_in, fit_axis = "ent", fit_bin = "top";
    auto* fit = app.add_subcommand("fit", "beta fit of a histogram cross-section");
    fit->add_option("--in", fit_in, "campaign histogram CSV")->required();
    fit->add_option("--axis", fit_axis, "fixed axis: ent | coh");
    fit->add_option("--bin", fit_bin, "fixed bin index or 'top'");
    fit->add_option("--out", out, "fit JSON path");

    std::string exp_in, exp_pair = "eg-cg";
    auto* exp = app.add_subcommand("export", "scatter export from a raw sample store");
    exp->add_option("--in", exp_in, "samples CSV from a campaign")->required();
    exp->add_option("--pair", exp_pair, "eg-cg | eg-cgprime | ebar-cbar");
    exp->add_option("--coherence-mode", coh_mode, "mode the campaign ran with");
    exp->add_option("--ent-mode", ent_mode, "mode the campaign ran with");
    exp->add_option("--out", out, "scatter CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (rep->parsed()) return cmd_gate_report(gate, out, skip_arbitrary, seed);
        if (scan->parsed()) return cmd_scan(scan_kind, gate, resolution, seed, out);
        if (camp->parsed())
            return cmd_campaign(samples, seed, coh_mode, ent_mode, bin_width, workers, out);
        if (fit->parsed()) return cmd_fit(fit_in, fit_axis, fit_bin, out);
        if (exp->parsed()) return cmd_export(exp_in, exp_pair, coh_mode, ent_mode, out);
    } catch (const gp::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const gp::UnknownGate& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const gp::NonUnitaryInput& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const gp::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
