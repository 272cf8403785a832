#pragma once

// Haar-random campaigns over two-qubit gates: per-sample resource powers,
// 2-D relative-frequency histograms on the unit resource plane, fixed-bin
// cross-sections, and raw sample storage for scatter exports.
//
// Each sample draws its own generator substream from (seed, sample index),
// so the result is identical for any worker count and any work split.

#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gatepower/power.hpp"

namespace gatepower {

enum class CoherenceMode { product_basis, arbitrary_basis, l1_norm };
enum class EntanglementMode { closed_form, numeric, vidal };

inline std::string to_string(CoherenceMode m) {
    switch (m) {
    case CoherenceMode::product_basis: return "product";
    case CoherenceMode::arbitrary_basis: return "arbitrary";
    default: return "l1";
    }
}

inline std::string to_string(EntanglementMode m) {
    switch (m) {
    case EntanglementMode::closed_form: return "closed";
    case EntanglementMode::numeric: return "numeric";
    default: return "vidal";
    }
}

struct CampaignConfig {
    long n_samples = 1000;
    std::uint64_t seed = 1;
    CoherenceMode coherence_mode = CoherenceMode::product_basis;
    EntanglementMode entanglement_mode = EntanglementMode::closed_form;
    double bin_width = 0.025;
    int worker_count = 2;
    bool keep_raw = true;
    OptimizerConfig coherence_opt = default_optimizer_config(2);
    OptimizerConfig arbitrary_opt = default_optimizer_config(15);
    OptimizerConfig input_opt = default_optimizer_config(4);

    int bins() const {
        const double k = std::round(1.0 / bin_width);
        if (k < 1 || std::abs(k * bin_width - 1.0) > 1e-9)
            throw DomainError("bin_width must divide 1 evenly");
        return static_cast<int>(k);
    }
};

// One campaign sample; raw values carry the measure's native units, the
// normalized values live on the unit resource plane.
struct SampleRecord {
    long index = 0;
    double ent_raw = 0.0;
    double coh_raw = 0.0;
    bool ent_converged = true;
    bool coh_converged = true;
};

// normalization onto [0,1] per measure
inline double normalize_ent(EntanglementMode m, double raw) {
    return m == EntanglementMode::vidal ? raw / 0.5 : raw;
}
inline double normalize_coh(CoherenceMode m, double raw) {
    return m == CoherenceMode::l1_norm ? raw / 3.0 : raw / 2.0;
}

struct HistogramGrid {
    double bin_width = 0.025;
    int nbins = 40;
    std::vector<long> counts; // row-major, [x_bin * nbins + y_bin], x = entanglement
    long total = 0;

    long& at(int xb, int yb) { return counts[static_cast<size_t>(xb) * nbins + yb]; }
    long at(int xb, int yb) const { return counts[static_cast<size_t>(xb) * nbins + yb]; }

    // half-open bins [k w, (k+1) w); values of exactly 1 land in the last bin
    int bin_of(double v) const {
        const int b = static_cast<int>(std::floor(v / bin_width));
        return std::min(nbins - 1, std::max(0, b));
    }

    double center(int b) const { return (b + 0.5) * bin_width; }

    void add(double x, double y) {
        ++at(bin_of(x), bin_of(y));
        ++total;
    }

    void merge(const HistogramGrid& other) {
        for (size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
        total += other.total;
    }

    std::pair<int, int> modal_bin() const {
        int bx = 0, by = 0;
        long best = -1;
        for (int x = 0; x < nbins; ++x)
            for (int y = 0; y < nbins; ++y)
                if (at(x, y) > best) {
                    best = at(x, y);
                    bx = x;
                    by = y;
                }
        return {bx, by};
    }

    double relative_frequency_sum() const {
        double s = 0.0;
        for (long c : counts) s += static_cast<double>(c) / static_cast<double>(total);
        return s;
    }

    static HistogramGrid empty(double bin_width, int nbins) {
        HistogramGrid g;
        g.bin_width = bin_width;
        g.nbins = nbins;
        g.counts.assign(static_cast<size_t>(nbins) * nbins, 0);
        return g;
    }
};

struct CampaignResult {
    CampaignConfig config;
    HistogramGrid grid;
    std::vector<SampleRecord> samples; // empty unless keep_raw
    long non_converged = 0;
    long optimizer_evaluations = 0;
    long degenerate_redraws = 0;
};

namespace detail {

inline SampleRecord evaluate_sample(const CampaignConfig& cfg, long index,
                                    HaarSampleStats& stats, long& evals) {
    RngState rng = RngState::substream(cfg.seed, static_cast<std::uint64_t>(index));
    const Unitary4 u = haar_sample(rng, &stats);
    SampleRecord rec;
    rec.index = index;

    switch (cfg.entanglement_mode) {
    case EntanglementMode::closed_form:
        rec.ent_raw = ent_power_closed_form(kak_decompose(u).alpha);
        break;
    case EntanglementMode::numeric: {
        auto r = ent_power_numeric(u, cfg.input_opt);
        rec.ent_raw = r.value;
        rec.ent_converged = r.opt.converged;
        evals += r.opt.evaluations;
        break;
    }
    case EntanglementMode::vidal: {
        auto r = vidal_ent_power(u, cfg.input_opt);
        rec.ent_raw = r.value;
        rec.ent_converged = r.opt.converged;
        evals += r.opt.evaluations;
        break;
    }
    }

    switch (cfg.coherence_mode) {
    case CoherenceMode::product_basis: {
        auto r = coherence_power_product(u, cfg.coherence_opt);
        rec.coh_raw = r.value;
        rec.coh_converged = r.opt.converged;
        evals += r.opt.evaluations;
        break;
    }
    case CoherenceMode::arbitrary_basis: {
        auto r = coherence_power_arbitrary(u, cfg.arbitrary_opt);
        rec.coh_raw = r.value;
        rec.coh_converged = r.opt.converged;
        evals += r.opt.evaluations;
        break;
    }
    case CoherenceMode::l1_norm: {
        auto r = l1_coherence_power(u, cfg.coherence_opt);
        rec.coh_raw = r.value;
        rec.coh_converged = r.opt.converged;
        evals += r.opt.evaluations;
        break;
    }
    }
    return rec;
}

} // namespace detail

inline CampaignResult run_campaign(const CampaignConfig& cfg) {
    const int nbins = cfg.bins();
    const int workers = std::max(1, cfg.worker_count);

    CampaignResult result;
    result.config = cfg;
    result.grid = HistogramGrid::empty(cfg.bin_width, nbins);
    if (cfg.keep_raw) result.samples.resize(static_cast<size_t>(cfg.n_samples));

    struct WorkerOut {
        HistogramGrid grid;
        long non_converged = 0;
        long evals = 0;
        HaarSampleStats stats;
    };
    std::vector<WorkerOut> outs(workers);
    for (auto& o : outs) o.grid = HistogramGrid::empty(cfg.bin_width, nbins);

    auto work = [&](int w) {
        WorkerOut& out = outs[w];
        for (long i = w; i < cfg.n_samples; i += workers) {
            SampleRecord rec = detail::evaluate_sample(cfg, i, out.stats, out.evals);
            out.grid.add(normalize_ent(cfg.entanglement_mode, rec.ent_raw),
                         normalize_coh(cfg.coherence_mode, rec.coh_raw));
            if (!rec.ent_converged || !rec.coh_converged) ++out.non_converged;
            if (cfg.keep_raw) result.samples[static_cast<size_t>(i)] = rec;
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
        for (auto& t : threads) t.join();
    }
    for (const auto& o : outs) {
        result.grid.merge(o.grid);
        result.non_converged += o.non_converged;
        result.optimizer_evaluations += o.evals;
        result.degenerate_redraws += o.stats.degenerate_redraws;
    }
    return result;
}

enum class SectionAxis { ent, coh };

struct CrossSection {
    SectionAxis fixed_axis = SectionAxis::ent;
    int fixed_bin = 0;
    std::vector<double> x;  // centers of the running axis
    std::vector<double> nu; // relative frequencies
};

// Row (fixed entanglement bin) or column (fixed coherence bin) of relative
// frequencies; frequencies stay normalized by the full campaign total.
inline CrossSection cross_section(const HistogramGrid& grid, SectionAxis axis, int bin) {
    if (bin < 0 || bin >= grid.nbins) throw IndexOutOfRange("cross_section: bin out of range");
    CrossSection s;
    s.fixed_axis = axis;
    s.fixed_bin = bin;
    s.x.resize(grid.nbins);
    s.nu.resize(grid.nbins);
    for (int k = 0; k < grid.nbins; ++k) {
        s.x[k] = grid.center(k);
        const long c = (axis == SectionAxis::ent) ? grid.at(bin, k) : grid.at(k, bin);
        s.nu[k] = static_cast<double>(c) / static_cast<double>(grid.total);
    }
    return s;
}

enum class MeasurePair { eg_cg, eg_cg_prime, ebar_cbar };

// (x, y) value pairs from the raw store, in the measures' native units.
inline std::vector<std::pair<double, double>> scatter_export(const CampaignResult& campaign,
                                                             MeasurePair pair) {
    const auto cm = campaign.config.coherence_mode;
    const auto em = campaign.config.entanglement_mode;
    const bool ok =
        (pair == MeasurePair::eg_cg && cm == CoherenceMode::product_basis &&
         em != EntanglementMode::vidal) ||
        (pair == MeasurePair::eg_cg_prime && cm == CoherenceMode::arbitrary_basis &&
         em != EntanglementMode::vidal) ||
        (pair == MeasurePair::ebar_cbar && cm == CoherenceMode::l1_norm &&
         em == EntanglementMode::vidal);
    if (!ok) throw MissingMeasure("scatter_export: campaign did not compute the requested pair");
    std::vector<std::pair<double, double>> out;
    out.reserve(campaign.samples.size());
    for (const auto& s : campaign.samples) out.emplace_back(s.ent_raw, s.coh_raw);
    return out;
}

} // namespace gatepower
