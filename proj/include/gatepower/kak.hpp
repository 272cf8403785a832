#pragma once

// Canonical (Cartan) decomposition of an arbitrary two-qubit unitary,
//   U = e^{i gamma} (UA (x) UB) Ud(alpha) (VA (x) VB),
// computed in the magic basis where the local subgroup is real orthogonal
// and the kernel is diagonal. Validated by the reconstruction residual.

#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "gatepower/gates.hpp"
#include "gatepower/linalg.hpp"

namespace gatepower {

struct KAKDecomposition {
    Mat2 ua, ub, va, vb;
    CartanParams alpha;      // each component in [0, pi)
    double global_phase = 0; // radians
    double residual = 0;     // Frobenius distance of the reconstruction
    int attempts = 1;        // diagonalization attempts used
};

namespace detail {

// Cyclic Jacobi eigendecomposition of a 4x4 real symmetric matrix.
// Returns eigenvectors as columns of v.
inline void jacobi_eig4(std::array<double, 16>& a, std::array<double, 16>& v) {
    for (int i = 0; i < 16; ++i) v[i] = 0.0;
    for (int i = 0; i < 4; ++i) v[5 * i] = 1.0;
    auto at = [](std::array<double, 16>& m, int r, int c) -> double& { return m[4 * r + c]; };
    for (int sweep = 0; sweep < 40; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 4; ++q) off += at(a, p, q) * at(a, p, q);
        if (off < 1e-28) break;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 4; ++q) {
                if (std::abs(at(a, p, q)) < 1e-18) continue;
                const double theta = 0.5 * std::atan2(2.0 * at(a, p, q), at(a, q, q) - at(a, p, p));
                const double c = std::cos(theta), s = std::sin(theta);
                for (int k = 0; k < 4; ++k) { // rotate rows/cols p,q of a
                    const double akp = at(a, k, p), akq = at(a, k, q);
                    at(a, k, p) = c * akp - s * akq;
                    at(a, k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < 4; ++k) {
                    const double apk = at(a, p, k), aqk = at(a, q, k);
                    at(a, p, k) = c * apk - s * aqk;
                    at(a, q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < 4; ++k) {
                    const double vkp = at(v, k, p), vkq = at(v, k, q);
                    at(v, k, p) = c * vkp - s * vkq;
                    at(v, k, q) = s * vkp + c * vkq;
                }
            }
    }
}

inline double det3x3_minor(const std::array<double, 16>& m, int skip_row, int skip_col) {
    double sub[3][3];
    int r = 0;
    for (int i = 0; i < 4; ++i) {
        if (i == skip_row) continue;
        int c = 0;
        for (int j = 0; j < 4; ++j) {
            if (j == skip_col) continue;
            sub[r][c++] = m[4 * i + j];
        }
        ++r;
    }
    return sub[0][0] * (sub[1][1] * sub[2][2] - sub[1][2] * sub[2][1]) -
           sub[0][1] * (sub[1][0] * sub[2][2] - sub[1][2] * sub[2][0]) +
           sub[0][2] * (sub[1][0] * sub[2][1] - sub[1][1] * sub[2][0]);
}

inline double det4x4(const std::array<double, 16>& m) {
    double d = 0.0;
    for (int j = 0; j < 4; ++j) d += (j % 2 ? -1.0 : 1.0) * m[j] * det3x3_minor(m, 0, j);
    return d;
}

// Split P = e^{i phase} (A (x) B) with A, B in SU(2). P must be a Kronecker
// product of unitaries up to scalar phase; the caller validates downstream.
inline std::pair<Mat2, Mat2> factor_kron_product(const Mat4& p) {
    // B from the quadrant with the larger determinant magnitude
    Mat2 b;
    b(0, 0) = p(0, 0); b(0, 1) = p(0, 1);
    b(1, 0) = p(1, 0); b(1, 1) = p(1, 1);
    cplx db = det(b);
    if (std::abs(db) < 0.1) {
        b(0, 0) = p(2, 0); b(0, 1) = p(2, 1);
        b(1, 0) = p(3, 0); b(1, 1) = p(3, 1);
        db = det(b);
    }
    const cplx sb = std::sqrt(db);
    for (auto& z : b.a) z /= sb;
    // strip B: p (I (x) B^dag) = A (x) I
    const Mat4 t = p * kron(Mat2::identity(), adjoint(b));
    Mat2 a;
    a(0, 0) = t(0, 0); a(0, 1) = t(0, 2);
    a(1, 0) = t(2, 0); a(1, 1) = t(2, 2);
    const cplx sa = std::sqrt(det(a));
    for (auto& z : a.a) z /= sa;
    return {a, b};
}

} // namespace detail

// Decompose a unitary into local factors, Cartan kernel parameters in
// [0, pi), and a global phase. Throws DecompositionFailed if the
// reconstruction residual stays above 1e-8 after retrying the joint
// diagonalization with perturbed mixing angles.
inline KAKDecomposition kak_decompose(const Unitary4& u) {
    if (unitarity_defect(u.m) > 1e-10) throw NonUnitaryInput("kak_decompose: input not unitary");

    const Mat4& m = magic_basis();
    const Mat4 um = adjoint(m) * u.m * m;
    const Mat4 s = transpose(um) * um;

    std::array<double, 16> x{}, y{};
    for (int i = 0; i < 16; ++i) {
        x[i] = std::real(s.a[i]);
        y[i] = std::imag(s.a[i]);
    }

    // Re(S) and Im(S) commute; a generic mix has distinct eigenvalues and its
    // eigenbasis diagonalizes both. Degenerate mixes are detected by the
    // off-diagonal check and retried with a different angle.
    static constexpr std::array<double, 9> mix_angles = {
        0.6180339887498949, 1.1755705045849463, 2.0344439357957027,
        0.3183098861837907, 2.7182818284590452, 1.4142135623730951,
        0.5772156649015329, 2.2360679774997896, 0.9159655941772190};

    KAKDecomposition best;
    double best_resid = std::numeric_limits<double>::infinity();

    for (int attempt = 0; attempt < static_cast<int>(mix_angles.size()); ++attempt) {
        const double t = mix_angles[attempt];
        std::array<double, 16> k{}, o{};
        for (int i = 0; i < 16; ++i) k[i] = std::cos(t) * x[i] + std::sin(t) * y[i];
        detail::jacobi_eig4(k, o);

        // joint diagonality check
        double offd = 0.0;
        for (int a = 0; a < 4; ++a)
            for (int bcol = 0; bcol < 4; ++bcol) {
                if (a == bcol) continue;
                double sx = 0.0, sy = 0.0;
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) {
                        sx += o[4 * i + a] * x[4 * i + j] * o[4 * j + bcol];
                        sy += o[4 * i + a] * y[4 * i + j] * o[4 * j + bcol];
                    }
                offd = std::max(offd, std::max(std::abs(sx), std::abs(sy)));
            }
        if (offd > 1e-9) continue;

        if (detail::det4x4(o) < 0.0)
            for (int i = 0; i < 4; ++i) o[4 * i + 0] = -o[4 * i + 0];

        Mat4 ocm; // o as complex matrix
        for (int i = 0; i < 16; ++i) ocm.a[i] = o[i];

        // eigenphases of S = O diag(e^{2 i theta_j}) O^T
        std::array<double, 4> theta;
        {
            const Mat4 d = transpose(ocm) * s * ocm;
            for (int j = 0; j < 4; ++j) theta[j] = std::arg(d(j, j)) / 2.0;
        }

        // left factor Q = um O D^{-1} must come out real orthogonal
        Mat4 dinv;
        for (int j = 0; j < 4; ++j) dinv(j, j) = std::exp(cplx(0.0, -theta[j]));
        Mat4 q = um * ocm * dinv;
        double max_imag = 0.0;
        for (const auto& z : q.a) max_imag = std::max(max_imag, std::abs(std::imag(z)));
        if (max_imag > 1e-8) continue;

        std::array<double, 16> qr{};
        for (int i = 0; i < 16; ++i) qr[i] = std::real(q.a[i]);
        if (detail::det4x4(qr) < 0.0) {
            for (int i = 0; i < 4; ++i) qr[4 * i + 0] = -qr[4 * i + 0];
            theta[0] += pi;
        }
        Mat4 qcm;
        for (int i = 0; i < 16; ++i) qcm.a[i] = qr[i];

        const double gamma0 = (theta[0] + theta[1] + theta[2] + theta[3]) / 4.0;
        std::array<double, 4> lam;
        for (int j = 0; j < 4; ++j) lam[j] = gamma0 - theta[j];

        CartanParams alpha = canonical_alpha({(lam[0] + lam[3]) / 2.0,
                                              (lam[1] + lam[3]) / 2.0,
                                              (lam[0] + lam[1]) / 2.0});

        const Mat4 left = m * qcm * adjoint(m);
        const Mat4 right = m * transpose(ocm) * adjoint(m);
        auto [ua, ub] = detail::factor_kron_product(left);
        auto [va, vb] = detail::factor_kron_product(right);

        const Mat4 recon = kron(ua, ub) * cartan_exp(alpha) * kron(va, vb);
        const double gamma = phase_optimal_gamma(u.m, recon);
        const double resid = frobenius_dist(u.m, scale(recon, std::exp(cplx(0.0, gamma))));

        if (resid < best_resid) {
            best = KAKDecomposition{ua, ub, va, vb, alpha, gamma, resid, attempt + 1};
            best_resid = resid;
        }
        if (resid < 1e-11) break; // no retry will do better
    }

    if (best_resid > 1e-8)
        throw DecompositionFailed("kak_decompose: reconstruction residual " +
                                  std::to_string(best_resid));
    return best;
}

inline Mat4 kak_reconstruct(const KAKDecomposition& k) {
    return scale(kron(k.ua, k.ub) * cartan_exp(k.alpha) * kron(k.va, k.vb),
                 std::exp(cplx(0.0, k.global_phase)));
}

} // namespace gatepower
