#pragma once

// Two-stage derivative-free maximizer: a dividing-rectangles global search
// over a box, followed by downhill-simplex refinement from the best cells.
// Fully deterministic for a given configuration.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "gatepower/rng.hpp"

namespace gatepower {

struct OptimizerConfig {
    int global_budget = 2000;
    int local_restarts = 8;
    double local_tol = 1e-8;
    std::uint64_t rng_seed = 0;
};

// Budgets scale with problem dimension; 2 and 15 are the two cases that fix
// the scale, the rest interpolate.
inline OptimizerConfig default_optimizer_config(int dim) {
    OptimizerConfig cfg;
    if (dim <= 2) cfg.global_budget = 2000;
    else if (dim <= 4) cfg.global_budget = 4000;
    else cfg.global_budget = 20000;
    return cfg;
}

struct OptResult {
    std::vector<double> x;
    double value = -std::numeric_limits<double>::infinity();
    long evaluations = 0;
    bool converged = false;
    double achieved_tol = std::numeric_limits<double>::infinity();
};

namespace detail {

struct DirectRect {
    std::vector<double> center; // unit-cube coordinates
    std::vector<std::uint8_t> level;
    double f;    // negated objective (minimized)
    double size; // half-diagonal
};

inline double rect_size(const std::vector<std::uint8_t>& level) {
    double s = 0.0;
    for (auto l : level) s += std::pow(9.0, -static_cast<double>(l));
    return 0.5 * std::sqrt(s);
}

// DIRECT on the unit cube, minimizing f_unit. Appends every evaluated point.
template <class F>
inline void direct_search(F&& f_unit, int dim, int budget, std::vector<DirectRect>& rects, long& evals) {
    rects.clear();
    DirectRect first;
    first.center.assign(dim, 0.5);
    first.level.assign(dim, 0);
    first.f = f_unit(first.center);
    ++evals;
    first.size = rect_size(first.level);
    rects.push_back(std::move(first));

    const double hull_eps = 1e-4;
    while (evals < budget) {
        // best rect per size class, classes ascending by size
        struct SizeClass { double size; double f; int idx; };
        std::vector<SizeClass> classes;
        {
            std::vector<int> order(rects.size());
            for (size_t i = 0; i < rects.size(); ++i) order[i] = static_cast<int>(i);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                if (rects[a].size != rects[b].size) return rects[a].size < rects[b].size;
                if (rects[a].f != rects[b].f) return rects[a].f < rects[b].f;
                return a < b;
            });
            for (int idx : order) {
                if (!classes.empty() && std::abs(classes.back().size - rects[idx].size) < 1e-15)
                    continue;
                classes.push_back({rects[idx].size, rects[idx].f, idx});
            }
        }
        double fmin = std::numeric_limits<double>::infinity();
        for (const auto& r : rects) fmin = std::min(fmin, r.f);

        // walk the lower-right convex hull from the best class toward larger
        // sizes, always taking the minimal slope; these are the potentially
        // optimal rects for some Lipschitz constant K >= 0
        int cur = 0;
        for (size_t c = 1; c < classes.size(); ++c)
            if (classes[c].f <= classes[cur].f) cur = static_cast<int>(c);
        std::vector<int> hull{cur};
        while (cur + 1 <= static_cast<int>(classes.size()) - 1) {
            int next = -1;
            double best_slope = std::numeric_limits<double>::infinity();
            for (int c = cur + 1; c < static_cast<int>(classes.size()); ++c) {
                const double slope = (classes[c].f - classes[cur].f) /
                                     (classes[c].size - classes[cur].size);
                if (slope < best_slope) {
                    best_slope = slope;
                    next = c;
                }
            }
            if (next < 0) break;
            cur = next;
            hull.push_back(cur);
        }
        // epsilon test: reachable improvement over the incumbent
        std::vector<int> selected;
        for (size_t h = 0; h < hull.size(); ++h) {
            const auto& cls = classes[hull[h]];
            if (h + 1 == hull.size()) {
                selected.push_back(cls.idx); // largest rect always divides
                break;
            }
            const auto& nxt = classes[hull[h + 1]];
            const double slope = (nxt.f - cls.f) / (nxt.size - cls.size);
            if (cls.f - slope * cls.size <= fmin - hull_eps * std::abs(fmin))
                selected.push_back(cls.idx);
        }
        if (selected.empty()) selected.push_back(classes.back().idx);

        bool divided = false;
        for (int idx : selected) {
            if (evals >= budget) break;
            // copy, since rects reallocation invalidates references
            DirectRect parent = rects[idx];
            const std::uint8_t min_level = *std::min_element(parent.level.begin(), parent.level.end());
            std::vector<int> long_dims;
            for (int d = 0; d < dim; ++d)
                if (parent.level[d] == min_level) long_dims.push_back(d);
            const double delta = std::pow(3.0, -static_cast<double>(min_level + 1));

            struct Probe { int dim; double flo, fhi; std::vector<double> clo, chi; };
            std::vector<Probe> probes;
            for (int d : long_dims) {
                if (evals + 2 > budget) break;
                Probe p;
                p.dim = d;
                p.clo = parent.center; p.clo[d] -= delta;
                p.chi = parent.center; p.chi[d] += delta;
                p.flo = f_unit(p.clo);
                p.fhi = f_unit(p.chi);
                evals += 2;
                probes.push_back(std::move(p));
            }
            if (probes.empty()) break;
            std::sort(probes.begin(), probes.end(), [](const Probe& a, const Probe& b) {
                const double wa = std::min(a.flo, a.fhi), wb = std::min(b.flo, b.fhi);
                if (wa != wb) return wa < wb;
                return a.dim < b.dim;
            });
            // split along the best dimension first; the center cell shrinks each time
            for (const Probe& p : probes) {
                parent.level[p.dim] = static_cast<std::uint8_t>(parent.level[p.dim] + 1);
                DirectRect lo{p.clo, parent.level, p.flo, 0.0};
                DirectRect hi{p.chi, parent.level, p.fhi, 0.0};
                lo.size = rect_size(lo.level);
                hi.size = lo.size;
                rects.push_back(std::move(lo));
                rects.push_back(std::move(hi));
            }
            parent.size = rect_size(parent.level);
            rects[idx] = std::move(parent);
            divided = true;
        }
        if (!divided) break;
    }
}

// Nelder-Mead on the unit cube (evaluation points are clamped into the box).
// Minimizes f_unit starting at x0; returns (x, f, spread).
template <class F>
inline void nelder_mead(F&& f_unit, std::vector<double> x0, double init_step, double ftol,
                        int max_iter, long& evals, std::vector<double>& best_x, double& best_f,
                        double& spread) {
    const int n = static_cast<int>(x0.size());
    std::vector<std::vector<double>> xs(n + 1, x0);
    std::vector<double> fs(n + 1);
    for (int i = 0; i < n; ++i) {
        xs[i + 1][i] += (x0[i] + init_step <= 1.0) ? init_step : -init_step;
    }
    for (int i = 0; i <= n; ++i) {
        fs[i] = f_unit(xs[i]);
        ++evals;
    }
    auto clamp_box = [](std::vector<double>& v) {
        for (auto& c : v) c = std::min(1.0, std::max(0.0, c));
    };
    for (int it = 0; it < max_iter; ++it) {
        // order: best first
        std::vector<int> ord(n + 1);
        for (int i = 0; i <= n; ++i) ord[i] = i;
        std::sort(ord.begin(), ord.end(), [&](int a, int b) {
            if (fs[a] != fs[b]) return fs[a] < fs[b];
            return a < b;
        });
        {
            std::vector<std::vector<double>> xs2(n + 1);
            std::vector<double> fs2(n + 1);
            for (int i = 0; i <= n; ++i) { xs2[i] = xs[ord[i]]; fs2[i] = fs[ord[i]]; }
            xs.swap(xs2);
            fs.swap(fs2);
        }
        spread = fs[n] - fs[0];
        if (spread < ftol) break;

        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int d = 0; d < n; ++d) centroid[d] += xs[i][d] / n;

        auto affine = [&](double coef) {
            std::vector<double> p(n);
            for (int d = 0; d < n; ++d) p[d] = centroid[d] + coef * (xs[n][d] - centroid[d]);
            clamp_box(p);
            return p;
        };
        auto xr = affine(-1.0);
        const double fr = f_unit(xr);
        ++evals;
        if (fr < fs[0]) {
            auto xe = affine(-2.0);
            const double fe = f_unit(xe);
            ++evals;
            if (fe < fr) { xs[n] = xe; fs[n] = fe; }
            else { xs[n] = xr; fs[n] = fr; }
        } else if (fr < fs[n - 1]) {
            xs[n] = xr;
            fs[n] = fr;
        } else {
            auto xc = affine(fr < fs[n] ? -0.5 : 0.5);
            const double fc = f_unit(xc);
            ++evals;
            if (fc < std::min(fr, fs[n])) {
                xs[n] = xc;
                fs[n] = fc;
            } else { // shrink toward the best vertex
                for (int i = 1; i <= n; ++i) {
                    for (int d = 0; d < n; ++d) xs[i][d] = xs[0][d] + 0.5 * (xs[i][d] - xs[0][d]);
                    fs[i] = f_unit(xs[i]);
                    ++evals;
                }
            }
        }
    }
    int ib = 0;
    for (int i = 1; i <= n; ++i)
        if (fs[i] < fs[ib]) ib = i;
    best_x = xs[ib];
    best_f = fs[ib];
}

} // namespace detail

// Maximize f over the box [lo, hi]. Ties between equal-valued maxima are
// broken toward the lexicographically smallest coordinate vector.
template <class F>
inline OptResult maximize(F&& f, std::span<const double> lo, std::span<const double> hi,
                          const OptimizerConfig& cfg) {
    const int dim = static_cast<int>(lo.size());
    auto to_domain = [&](const std::vector<double>& u) {
        std::vector<double> x(dim);
        for (int d = 0; d < dim; ++d)
            x[d] = lo[d] + std::min(1.0, std::max(0.0, u[d])) * (hi[d] - lo[d]);
        return x;
    };
    long evals = 0;
    auto f_unit = [&](const std::vector<double>& u) { return -f(to_domain(u)); };

    std::vector<detail::DirectRect> rects;
    detail::direct_search(f_unit, dim, cfg.global_budget, rects, evals);

    // distinct best cells as local starts
    std::vector<int> order(rects.size());
    for (size_t i = 0; i < rects.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (rects[a].f != rects[b].f) return rects[a].f < rects[b].f;
        return rects[a].center < rects[b].center;
    });

    OptResult result;
    result.x = to_domain(rects[order[0]].center);
    result.value = -rects[order[0]].f;

    RngState jitter = RngState::substream(cfg.rng_seed, 0xD1CEC7ULL);
    const int max_iter = 250 * dim;
    for (int k = 0; k < cfg.local_restarts; ++k) {
        std::vector<double> start;
        double cell = 0.05;
        if (k < static_cast<int>(order.size())) {
            start = rects[order[k]].center;
            cell = std::max(0.02, rects[order[k]].size);
        } else { // more restarts than cells: seeded uniform starts
            start.resize(dim);
            for (int d = 0; d < dim; ++d) start[d] = jitter.next_uniform();
        }
        std::vector<double> bx;
        double bf = 0.0, spread = std::numeric_limits<double>::infinity();
        detail::nelder_mead(f_unit, start, cell, cfg.local_tol, max_iter, evals, bx, bf, spread);
        if (spread < cfg.local_tol) result.converged = true;
        result.achieved_tol = std::min(result.achieved_tol, spread);
        const double v = -bf;
        const auto xd = to_domain(bx);
        if (v > result.value + 1e-14 ||
            (std::abs(v - result.value) <= 1e-14 && xd < result.x)) {
            result.value = v;
            result.x = xd;
        }
    }
    result.evaluations = evals;
    return result;
}

} // namespace gatepower
