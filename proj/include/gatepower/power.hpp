#pragma once

// Resource-generating powers of a two-qubit gate: maximal entanglement over
// pure product inputs (numeric and closed-form routes), maximal coherence
// over product and arbitrary bases, the l1-norm and Vidal variants, the
// kernel-angle folding rule and the maximal-entanglement region test.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "gatepower/kak.hpp"
#include "gatepower/measures.hpp"
#include "gatepower/optimize.hpp"

namespace gatepower {

// Product input |psi(abar,bbar)> (x) |phi(gbar,dbar)>.
struct ProductInputParams {
    double abar = 0.0, bbar = 0.0, gbar = 0.0, dbar = 0.0;
};

inline PureState4 product_input(const ProductInputParams& p) {
    const std::array<cplx, 2> a{std::cos(p.abar / 2.0),
                                std::exp(cplx(0.0, p.bbar)) * std::sin(p.abar / 2.0)};
    const std::array<cplx, 2> b{std::cos(p.gbar / 2.0),
                                std::exp(cplx(0.0, p.dbar)) * std::sin(p.gbar / 2.0)};
    return kron(a, b);
}

namespace detail {

// Coherence landscape of one gate over the product-basis family. Holds the
// gate columns so a (theta,phi) evaluation costs a handful of flops.
struct StildeEvaluator {
    std::array<Vec4, 4> col;

    explicit StildeEvaluator(const Mat4& u) {
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) col[j][i] = u(i, j);
    }

    // weights of U b_i in the basis B(theta,phi)
    std::array<double, 4> weights(int i, double c, double s, cplx e) const {
        Vec4 psi;
        switch (i) {
        case 0: psi = col[0]; break;
        case 1: psi = col[1]; break;
        case 2:
            for (int k = 0; k < 4; ++k) psi[k] = c * col[2][k] + e * s * col[3][k];
            break;
        default:
            for (int k = 0; k < 4; ++k) psi[k] = -std::conj(e) * s * col[2][k] + c * col[3][k];
        }
        return {std::norm(psi[0]), std::norm(psi[1]),
                std::norm(c * psi[2] + std::conj(e) * s * psi[3]),
                std::norm(-e * s * psi[2] + c * psi[3])};
    }

    std::array<double, 4> all(double theta, double phi) const {
        const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
        const cplx e = std::exp(cplx(0.0, phi));
        std::array<double, 4> out;
        for (int i = 0; i < 4; ++i) {
            const auto w = weights(i, c, s, e);
            out[i] = shannon_bits(w);
        }
        return out;
    }

    double max_over_inputs(double theta, double phi) const {
        const auto s = all(theta, phi);
        return std::max(std::max(s[0], s[1]), std::max(s[2], s[3]));
    }

    double l1_max_over_inputs(double theta, double phi) const {
        const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
        const cplx e = std::exp(cplx(0.0, phi));
        double best = 0.0;
        for (int i = 0; i < 4; ++i) {
            const auto w = weights(i, c, s, e);
            double s1 = 0.0, s2 = 0.0;
            for (double x : w) {
                const double m = std::sqrt(std::max(0.0, x));
                s1 += m;
                s2 += x;
            }
            best = std::max(best, s1 * s1 - s2);
        }
        return best;
    }
};

} // namespace detail

// Coherence of U b_i in the basis {|00>,|01>,|1 eta>,|1 eta_perp>}, where b_i
// is the i-th element of that same basis. index is 1-based.
inline double stilde(const Unitary4& u, int index, const ProductBasisParams& b) {
    if (index < 1 || index > 4) throw IndexOutOfRange("stilde: index must be 1..4");
    return detail::StildeEvaluator(u.m).all(b.theta, b.phi)[index - 1];
}

struct CoherencePowerResult {
    double value = 0.0;    // bits
    int input_index = 1;   // 1-based argmax basis element
    ProductBasisParams basis;
    OptResult opt;
};

// Max over the product-basis family and the four basis-element inputs of the
// generated relative entropy of coherence, in [0,2] bits.
inline CoherencePowerResult coherence_power_product(const Unitary4& u, const OptimizerConfig& cfg) {
    const detail::StildeEvaluator ev(u.m);
    const std::array<double, 2> lo{0.0, 0.0}, hi{pi, 2.0 * pi};
    auto obj = [&](const std::vector<double>& x) { return ev.max_over_inputs(x[0], x[1]); };
    OptResult opt = maximize(obj, lo, hi, cfg);

    CoherencePowerResult r;
    r.value = opt.value;
    r.basis = {opt.x[0], opt.x[1]};
    const auto s = ev.all(opt.x[0], opt.x[1]);
    r.input_index = 1;
    for (int i = 0; i < 4; ++i)
        if (s[i] > s[r.input_index - 1] + 1e-12) r.input_index = i + 1;
    r.opt = std::move(opt);
    return r;
}

inline CoherencePowerResult coherence_power_product(const Unitary4& u) {
    return coherence_power_product(u, default_optimizer_config(2));
}

struct ArbitraryBasisPowerResult {
    double value = 0.0;            // bits
    int input_index = 1;           // 1-based argmax basis element
    std::array<double, 15> params; // 3 kernel angles + 4 locals x (theta,phi,psi)
    OptResult opt;
};

namespace detail {

inline Mat4 basis_unitary_from_params(std::span<const double> p) {
    const CartanParams alpha{p[0], p[1], p[2]};
    const SU2Params w1{p[3], p[4], p[5]}, w2{p[6], p[7], p[8]};
    const SU2Params w3{p[9], p[10], p[11]}, w4{p[12], p[13], p[14]};
    return kron(su2(w3), su2(w4)) * cartan_exp(alpha) * kron(su2(w1), su2(w2));
}

// max over the four basis elements of the coherence of U w_i in the basis
// formed by the columns of w
inline double arbitrary_objective(const Mat4& u, std::span<const double> p, int* arg_index = nullptr) {
    const Mat4 w = basis_unitary_from_params(p);
    const Mat4 overlap = adjoint(w) * (u * w);
    double best = 0.0;
    int best_i = 0;
    for (int i = 0; i < 4; ++i) {
        std::array<double, 4> wt;
        for (int j = 0; j < 4; ++j) wt[j] = std::norm(overlap(j, i));
        const double s = shannon_bits(wt);
        if (s > best + 1e-12) {
            best = s;
            best_i = i;
        }
    }
    if (arg_index) *arg_index = best_i + 1;
    return best;
}

} // namespace detail

// Coherence power over arbitrary orthonormal bases, parametrized as the
// columns of a Cartan-form unitary: 3 kernel angles plus four SU(2) locals.
// Basis-element phases are immaterial, so the psi angles only need [0,2pi).
inline ArbitraryBasisPowerResult coherence_power_arbitrary(const Unitary4& u,
                                                           const OptimizerConfig& cfg) {
    std::array<double, 15> lo{}, hi{};
    for (int k = 0; k < 3; ++k) hi[k] = pi; // kernel angles are pi-periodic
    for (int k = 0; k < 4; ++k) {
        hi[3 + 3 * k] = pi;
        hi[4 + 3 * k] = 2.0 * pi;
        hi[5 + 3 * k] = 2.0 * pi;
    }
    auto obj = [&](const std::vector<double>& x) { return detail::arbitrary_objective(u.m, x); };
    OptResult opt = maximize(obj, lo, hi, cfg);

    ArbitraryBasisPowerResult r;
    r.value = opt.value;
    for (int k = 0; k < 15; ++k) r.params[k] = opt.x[k];
    detail::arbitrary_objective(u.m, r.params, &r.input_index);
    r.opt = std::move(opt);
    return r;
}

inline ArbitraryBasisPowerResult coherence_power_arbitrary(const Unitary4& u) {
    return coherence_power_arbitrary(u, default_optimizer_config(15));
}

struct EntPowerResult {
    double value = 0.0; // ebits (or the configured monotone's units)
    ProductInputParams input;
    OptResult opt;
};

namespace detail {

template <class Measure>
inline EntPowerResult input_power(const Mat4& u, const OptimizerConfig& cfg, Measure&& measure) {
    const std::array<double, 4> lo{0.0, 0.0, 0.0, 0.0}, hi{pi, 2.0 * pi, pi, 2.0 * pi};
    auto obj = [&](const std::vector<double>& x) {
        const PureState4 out = u * product_input({x[0], x[1], x[2], x[3]});
        return measure(out);
    };
    OptResult opt = maximize(obj, lo, hi, cfg);
    EntPowerResult r;
    r.value = opt.value;
    r.input = {opt.x[0], opt.x[1], opt.x[2], opt.x[3]};
    r.opt = std::move(opt);
    return r;
}

} // namespace detail

// Max output entanglement entropy over pure product inputs, in ebits.
inline EntPowerResult ent_power_numeric(const Unitary4& u, const OptimizerConfig& cfg) {
    return detail::input_power(u.m, cfg, [](const PureState4& s) { return ent_entropy(s); });
}

inline EntPowerResult ent_power_numeric(const Unitary4& u) {
    return ent_power_numeric(u, default_optimizer_config(4));
}

// Same maximization with the k=2 Vidal monotone, range [0, 1/2].
inline EntPowerResult vidal_ent_power(const Unitary4& u, const OptimizerConfig& cfg) {
    return detail::input_power(u.m, cfg, [](const PureState4& s) { return vidal_e2(s); });
}

inline EntPowerResult vidal_ent_power(const Unitary4& u) {
    return vidal_ent_power(u, default_optimizer_config(4));
}

// Coherence power with the l1-norm measure over product bases, range [0,3].
inline CoherencePowerResult l1_coherence_power(const Unitary4& u, const OptimizerConfig& cfg) {
    const detail::StildeEvaluator ev(u.m);
    const std::array<double, 2> lo{0.0, 0.0}, hi{pi, 2.0 * pi};
    auto obj = [&](const std::vector<double>& x) { return ev.l1_max_over_inputs(x[0], x[1]); };
    OptResult opt = maximize(obj, lo, hi, cfg);

    CoherencePowerResult r;
    r.value = opt.value;
    r.basis = {opt.x[0], opt.x[1]};
    const double c = std::cos(r.basis.theta / 2.0), s = std::sin(r.basis.theta / 2.0);
    const cplx e = std::exp(cplx(0.0, r.basis.phi));
    r.input_index = 1;
    double best = -1.0;
    for (int i = 0; i < 4; ++i) {
        const auto w = ev.weights(i, c, s, e);
        double s1 = 0.0, s2 = 0.0;
        for (double x : w) {
            s1 += std::sqrt(std::max(0.0, x));
            s2 += x;
        }
        const double v = s1 * s1 - s2;
        if (v > best + 1e-12) {
            best = v;
            r.input_index = i + 1;
        }
    }
    r.opt = std::move(opt);
    return r;
}

inline CoherencePowerResult l1_coherence_power(const Unitary4& u) {
    return l1_coherence_power(u, default_optimizer_config(2));
}

// Periodicity/reflection map sending a kernel angle from [0,pi] into the
// canonical cell [0,pi/4] where the maximal-entanglement conditions apply.
inline double fold_angle(double a) {
    if (a < -1e-12 || a > pi + 1e-12) throw DomainError("fold_angle: input outside [0,pi]");
    a = std::min(pi, std::max(0.0, a));
    if (a >= pi / 2.0) a -= pi / 2.0;
    return a <= pi / 4.0 ? a : pi / 2.0 - a;
}

inline CartanParams fold_alpha(const CartanParams& alpha) {
    return {fold_angle(alpha.ax), fold_angle(alpha.ay), fold_angle(alpha.az)};
}

namespace detail {
// fold to [0,pi/4] and sort descending
inline std::array<double, 3> folded_sorted(const CartanParams& alpha) {
    const CartanParams c = canonical_alpha(alpha);
    std::array<double, 3> a{fold_angle(c.ax), fold_angle(c.ay), fold_angle(c.az)};
    std::sort(a.begin(), a.end(), std::greater<double>());
    return a;
}
} // namespace detail

// Whether the kernel admits an input that reaches maximal entanglement:
// after folding and sorting, a_i + a_j >= pi/4 and a_j + a_k <= pi/4.
inline bool max_ent_region_test(const CartanParams& alpha) {
    const auto a = detail::folded_sorted(alpha);
    return a[0] + a[1] >= pi / 4.0 - 1e-12 && a[1] + a[2] <= pi / 4.0 + 1e-12;
}

// whether the folded kernel sits within band of either region boundary
inline bool near_region_boundary(const CartanParams& alpha, double band) {
    const auto a = detail::folded_sorted(alpha);
    return std::abs(a[0] + a[1] - pi / 4.0) <= band || std::abs(a[1] + a[2] - pi / 4.0) <= band;
}

// Closed-form maximal entanglement of a kernel: one inside the maximal
// region, otherwise the binary entropy of the folded kernel's concurrence.
inline double ent_power_closed_form(const CartanParams& alpha) {
    const auto a = detail::folded_sorted(alpha);
    if (a[0] + a[1] >= pi / 4.0 - 1e-12 && a[1] + a[2] <= pi / 4.0 + 1e-12) return 1.0;
    return ent_from_concurrence(concurrence_bar({a[0], a[1], a[2]}));
}

struct ResourceReport {
    double e_g = 0.0;           // ebits, numeric optimizer
    double e_g_closed = 0.0;    // ebits, closed form on the KAK kernel
    double c_g = 0.0;           // bits, product bases
    double c_g_norm = 0.0;      // c_g / 2
    double c_g_prime = 0.0;     // bits, arbitrary bases
    double e_g_vidal = 0.0;     // Vidal monotone power
    double c_g_l1 = 0.0;        // l1-norm coherence power
    CartanParams kak_alpha;     // canonical kernel of the gate
    ProductInputParams ent_argmax;
    ProductBasisParams coh_argmax_basis;
    int coh_argmax_input = 1;
    std::array<double, 15> arb_argmax_params{};
    long evaluations = 0;
    bool converged = true;
};

struct ReportOptions {
    bool include_arbitrary = true;
    OptimizerConfig coherence = default_optimizer_config(2);
    OptimizerConfig arbitrary = default_optimizer_config(15);
    OptimizerConfig input = default_optimizer_config(4);
};

inline ResourceReport compute_resource_report(const Unitary4& u, const ReportOptions& opt = {}) {
    ResourceReport r;
    const auto k = kak_decompose(u);
    r.kak_alpha = k.alpha;
    r.e_g_closed = ent_power_closed_form(k.alpha);

    auto eg = ent_power_numeric(u, opt.input);
    r.e_g = eg.value;
    r.ent_argmax = eg.input;
    r.evaluations += eg.opt.evaluations;
    r.converged = r.converged && eg.opt.converged;

    auto cg = coherence_power_product(u, opt.coherence);
    r.c_g = cg.value;
    r.c_g_norm = cg.value / 2.0;
    r.coh_argmax_basis = cg.basis;
    r.coh_argmax_input = cg.input_index;
    r.evaluations += cg.opt.evaluations;
    r.converged = r.converged && cg.opt.converged;

    if (opt.include_arbitrary) {
        auto cp = coherence_power_arbitrary(u, opt.arbitrary);
        r.c_g_prime = cp.value;
        r.arb_argmax_params = cp.params;
        r.evaluations += cp.opt.evaluations;
    }

    auto ev = vidal_ent_power(u, opt.input);
    r.e_g_vidal = ev.value;
    r.evaluations += ev.opt.evaluations;

    auto cl = l1_coherence_power(u, opt.coherence);
    r.c_g_l1 = cl.value;
    r.evaluations += cl.opt.evaluations;
    return r;
}

} // namespace gatepower
