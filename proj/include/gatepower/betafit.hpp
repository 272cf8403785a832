#pragma once

// Shifted/scaled beta-distribution fitting of relative-frequency profiles by
// damped Gauss-Newton least squares with a finite-difference Jacobian.

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "gatepower/errors.hpp"

namespace gatepower {

// log Gamma by the Lanczos approximation (g = 7, 9 terms), ~1e-13 relative
// accuracy in double precision over the arguments used here.
inline double lgamma_lanczos(double x) {
    static constexpr std::array<double, 9> coef = {
        0.99999999999980993, 676.5203681218851, -1259.1392167224028,
        771.32342877765313, -176.61502916214059, 12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5)
        return std::log(3.141592653589793 / std::sin(3.141592653589793 * x)) -
               lgamma_lanczos(1.0 - x);
    x -= 1.0;
    double a = coef[0];
    const double t = x + 7.5;
    for (int i = 1; i < 9; ++i) a += coef[i] / (x + i);
    return 0.918938533204672742 + (x + 0.5) * std::log(t) - t + std::log(a);
}

// B(x; aB, bB) with support shifted by x0. Evaluations clamp the shifted
// argument into [1e-9, 1 - 1e-9]; bB < 1 makes the density singular at the
// upper support edge.
inline double beta_density(double x, double alpha_b, double beta_b, double x0) {
    double t = x - x0;
    t = std::min(1.0 - 1e-9, std::max(1e-9, t));
    const double lognorm =
        lgamma_lanczos(alpha_b + beta_b) - lgamma_lanczos(alpha_b) - lgamma_lanczos(beta_b);
    return std::exp(lognorm + (alpha_b - 1.0) * std::log(t) + (beta_b - 1.0) * std::log1p(-t));
}

// d * B(x; aB, bB) + h
inline double beta_fit_model(double x, const std::array<double, 5>& p) {
    return p[2] * beta_density(x, p[0], p[1], p[3]) + p[4];
}

struct BetaFitResult {
    double alpha_b = 0.0, beta_b = 0.0, d = 0.0, x0 = 0.0, h = 0.0;
    double chi2 = 0.0;                // raw sum of squared residuals
    std::array<double, 5> ci95{};     // normal-approximation half-widths
    bool converged = false;
    int iterations = 0;

    std::array<double, 5> params() const { return {alpha_b, beta_b, d, x0, h}; }
};

namespace detail {

inline void beta_residuals(const std::vector<double>& xs, const std::vector<double>& ys,
                           const std::array<double, 5>& p, std::vector<double>& r) {
    r.resize(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) r[i] = beta_fit_model(xs[i], p) - ys[i];
}

inline double sum_sq(const std::vector<double>& r) {
    double s = 0.0;
    for (double v : r) s += v * v;
    return s;
}

// solve (A + lam diag(A)) dx = -g for the 5x5 system, Gaussian elimination
inline bool solve5(std::array<std::array<double, 5>, 5> a, std::array<double, 5> b,
                   std::array<double, 5>& out) {
    for (int col = 0; col < 5; ++col) {
        int piv = col;
        for (int r = col + 1; r < 5; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-300) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (int r = 0; r < 5; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < 5; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    for (int i = 0; i < 5; ++i) out[i] = b[i] / a[i][i];
    return true;
}

inline bool invert5(std::array<std::array<double, 5>, 5> a,
                    std::array<std::array<double, 5>, 5>& inv) {
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) inv[i][j] = (i == j) ? 1.0 : 0.0;
    for (int col = 0; col < 5; ++col) {
        int piv = col;
        for (int r = col + 1; r < 5; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-300) return false;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const double d = a[col][col];
        for (int c = 0; c < 5; ++c) {
            a[col][c] /= d;
            inv[col][c] /= d;
        }
        for (int r = 0; r < 5; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            for (int c = 0; c < 5; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return true;
}

} // namespace detail

// Fit f(x) = d B(x; aB, bB) + h to the points (xs, ys). Requires at least 8
// points with nonzero ordinate. Throws FitDiverged on non-finite parameters;
// a fit that merely fails to reach the tolerance is returned non-converged.
inline BetaFitResult fit_beta(const std::vector<double>& xs, const std::vector<double>& ys,
                              std::optional<std::array<double, 5>> init = std::nullopt) {
    if (xs.size() != ys.size()) throw InsufficientData("fit_beta: size mismatch");
    int nonzero = 0;
    for (double y : ys)
        if (y != 0.0) ++nonzero;
    if (nonzero < 8) throw InsufficientData("fit_beta: fewer than 8 nonzero points");

    std::array<double, 5> p;
    if (init) {
        p = *init;
    } else {
        // scale d so the initial curve matches the data peak
        size_t ipk = 0;
        for (size_t i = 1; i < ys.size(); ++i)
            if (ys[i] > ys[ipk]) ipk = i;
        const double b0 = beta_density(xs[ipk], 10.0, 0.5, 0.0);
        p = {10.0, 0.5, b0 > 1e-12 ? ys[ipk] / b0 : ys[ipk] / 10.0, 0.0, 0.0};
    }
    if (p[0] <= 0.0 || p[1] <= 0.0) throw FitDiverged("fit_beta: nonpositive shape initial guess");

    const int n = static_cast<int>(xs.size());
    std::vector<double> r, rn, rp;
    detail::beta_residuals(xs, ys, p, r);
    double chi2 = detail::sum_sq(r);
    if (!std::isfinite(chi2)) throw FitDiverged("fit_beta: non-finite initial residual");

    double lam = 1e-3;
    bool converged = false;
    int iters = 0;
    std::array<std::array<double, 5>, 5> jtj{};
    std::vector<std::array<double, 5>> jac(n);

    for (; iters < 500; ++iters) {
        // finite-difference Jacobian, relative step 1e-7
        for (int j = 0; j < 5; ++j) {
            double step = 1e-7 * std::max(std::abs(p[j]), 1e-7);
            auto pp = p;
            pp[j] += step;
            if ((j < 2) && pp[j] <= 0.0) {
                step = -step;
                pp[j] = p[j] + step;
            }
            detail::beta_residuals(xs, ys, pp, rp);
            for (int i = 0; i < n; ++i) jac[i][j] = (rp[i] - r[i]) / step;
        }
        std::array<double, 5> g{};
        for (auto& row : jtj) row.fill(0.0);
        for (int i = 0; i < n; ++i)
            for (int a = 0; a < 5; ++a) {
                g[a] += jac[i][a] * r[i];
                for (int b = a; b < 5; ++b) jtj[a][b] += jac[i][a] * jac[i][b];
            }
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < a; ++b) jtj[a][b] = jtj[b][a];

        bool accepted = false;
        double rel = 0.0;
        for (int attempt = 0; attempt < 40; ++attempt) {
            auto damped = jtj;
            for (int a = 0; a < 5; ++a)
                damped[a][a] += lam * std::max(jtj[a][a], 1e-12);
            std::array<double, 5> neg_g;
            for (int a = 0; a < 5; ++a) neg_g[a] = -g[a];
            std::array<double, 5> dp;
            if (!detail::solve5(damped, neg_g, dp)) {
                lam *= 10.0;
                continue;
            }
            auto pn = p;
            for (int a = 0; a < 5; ++a) pn[a] += dp[a];
            if (pn[0] <= 0.0 || pn[1] <= 0.0) {
                lam *= 10.0;
                continue;
            }
            detail::beta_residuals(xs, ys, pn, rn);
            const double chi2n = detail::sum_sq(rn);
            if (!std::isfinite(chi2n)) throw FitDiverged("fit_beta: non-finite residual");
            if (chi2n <= chi2) {
                rel = (chi2 - chi2n) / std::max(chi2, 1e-300);
                p = pn;
                r = rn;
                chi2 = chi2n;
                lam = std::max(lam * 0.3, 1e-12);
                accepted = true;
                break;
            }
            lam *= 10.0;
        }
        if (!accepted) {
            converged = true; // residual is at a (possibly flat) minimum
            break;
        }
        if (rel < 1e-12) {
            converged = true;
            break;
        }
    }
    for (double v : p)
        if (!std::isfinite(v)) throw FitDiverged("fit_beta: non-finite parameters");

    BetaFitResult out;
    out.alpha_b = p[0];
    out.beta_b = p[1];
    out.d = p[2];
    out.x0 = p[3];
    out.h = p[4];
    out.chi2 = chi2;
    out.converged = converged;
    out.iterations = iters;

    // 95% intervals from the Gauss-Newton Hessian scaled by residual variance
    const double dof = std::max(1, n - 5);
    const double s2 = chi2 / dof;
    std::array<std::array<double, 5>, 5> cov;
    if (detail::invert5(jtj, cov)) {
        for (int a = 0; a < 5; ++a)
            out.ci95[a] = 1.959963984540054 * std::sqrt(std::max(0.0, cov[a][a] * s2));
    } else {
        out.ci95.fill(std::numeric_limits<double>::quiet_NaN());
    }
    return out;
}

} // namespace gatepower
