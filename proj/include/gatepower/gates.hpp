#pragma once

// Construction of two-qubit gates: parametrized SU(2) locals, the Cartan form
// (UA (x) UB) Ud (VA (x) VB), named paradigmatic gates, and Haar-uniform
// sampling via the Ginibre ensemble.

#include <array>
#include <cmath>
#include <string>

#include "gatepower/linalg.hpp"
#include "gatepower/rng.hpp"

namespace gatepower {

// Angles (theta, phi, psi) with theta in [0,pi], phi in [0,2pi), psi in [0,4pi).
// Construction wraps out-of-range angles onto an equivalent in-range triple
// that produces the same matrix.
struct SU2Params {
    double theta = 0.0, phi = 0.0, psi = 0.0;

    static SU2Params wrapped(double theta, double phi, double psi) {
        auto wrap = [](double x, double period) {
            x = std::fmod(x, period);
            return x < 0.0 ? x + period : x;
        };
        double t = wrap(theta, 4.0 * pi);
        if (t >= 2.0 * pi) { // W(t) = W(t - 2pi) with psi advanced by 2pi
            t -= 2.0 * pi;
            psi += 2.0 * pi;
        }
        if (t > pi) { // reflect: W(t, phi, psi) = W(2pi - t, phi + pi, psi + pi)
            t = 2.0 * pi - t;
            phi += pi;
            psi += pi;
        }
        // stripping 2pi from phi flips the sign; each strip adds 2pi to psi
        const double k = std::floor(phi / (2.0 * pi));
        phi -= 2.0 * pi * k;
        psi += 2.0 * pi * k;
        return {t, wrap(phi, 2.0 * pi), wrap(psi, 4.0 * pi)};
    }
};

// W(theta, phi, psi) in SU(2); determinant is exactly one.
inline Mat2 su2(const SU2Params& p) {
    const double c = std::cos(p.theta / 2.0);
    const double s = std::sin(p.theta / 2.0);
    Mat2 w;
    w(0, 0) = c * std::exp(cplx(0.0, 0.5 * (p.psi + p.phi)));
    w(0, 1) = s * std::exp(cplx(0.0, -0.5 * (p.psi - p.phi)));
    w(1, 0) = -s * std::exp(cplx(0.0, 0.5 * (p.psi - p.phi)));
    w(1, 1) = c * std::exp(cplx(0.0, -0.5 * (p.psi + p.phi)));
    return w;
}

// Canonical representative of the kernel parameters under the per-component
// period-pi equivalence (shifting a component by pi only changes a global phase).
inline CartanParams canonical_alpha(const CartanParams& alpha) {
    auto wrap = [](double x) {
        x = std::fmod(x, pi);
        return x < 0.0 ? x + pi : x;
    };
    return {wrap(alpha.ax), wrap(alpha.ay), wrap(alpha.az)};
}

struct Unitary4 {
    Mat4 m;

    static Unitary4 checked(const Mat4& m, double tol = 1e-10) {
        if (unitarity_defect(m) > tol) throw NonUnitaryInput("matrix is not unitary");
        return Unitary4{m};
    }
};

// (UA (x) UB) Ud(alpha) (VA (x) VB)
inline Unitary4 compose_cartan(const SU2Params& ua, const SU2Params& ub,
                               const SU2Params& va, const SU2Params& vb,
                               const CartanParams& alpha) {
    return Unitary4{kron(su2(ua), su2(ub)) * cartan_exp(alpha) * kron(su2(va), su2(vb))};
}

enum class NamedGate { CNOT, CZ, SWAP, SQRT_SWAP, YX, HH, HI };

inline Mat2 pauli_x() { return Mat2{{0, 1, 1, 0}}; }
inline Mat2 pauli_y() { return Mat2{{0, cplx(0, -1), cplx(0, 1), 0}}; }
inline Mat2 pauli_z() { return Mat2{{1, 0, 0, -1}}; }
inline Mat2 hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return Mat2{{s, s, s, -s}};
}

inline Unitary4 named_gate(NamedGate g) {
    Mat4 m;
    switch (g) {
    case NamedGate::CNOT:
        m(0, 0) = 1; m(1, 1) = 1; m(2, 3) = 1; m(3, 2) = 1;
        break;
    case NamedGate::CZ:
        m(0, 0) = 1; m(1, 1) = 1; m(2, 2) = 1; m(3, 3) = -1;
        break;
    case NamedGate::SWAP:
        m(0, 0) = 1; m(1, 2) = 1; m(2, 1) = 1; m(3, 3) = 1;
        break;
    case NamedGate::SQRT_SWAP: {
        const cplx p(0.5, 0.5), q(0.5, -0.5);
        m(0, 0) = 1; m(3, 3) = 1;
        m(1, 1) = p; m(1, 2) = q;
        m(2, 1) = q; m(2, 2) = p;
        break;
    }
    case NamedGate::YX:
        return Unitary4{kron(pauli_y(), pauli_x())};
    case NamedGate::HH:
        return Unitary4{kron(hadamard(), hadamard())};
    case NamedGate::HI:
        return Unitary4{kron(hadamard(), Mat2::identity())};
    default:
        throw UnknownGate("unknown named gate");
    }
    return Unitary4{m};
}

inline NamedGate named_gate_from_token(const std::string& token) {
    if (token == "cnot") return NamedGate::CNOT;
    if (token == "cz") return NamedGate::CZ;
    if (token == "swap") return NamedGate::SWAP;
    if (token == "sqrtswap" || token == "sqswap") return NamedGate::SQRT_SWAP;
    if (token == "yx") return NamedGate::YX;
    if (token == "hh") return NamedGate::HH;
    if (token == "hi") return NamedGate::HI;
    throw UnknownGate("unknown gate token: " + token);
}

struct HaarSampleStats {
    long degenerate_redraws = 0;
};

// Haar-distributed 4x4 unitary: QR of a complex Ginibre matrix with the
// R-diagonal phase correction. Gram-Schmidt produces r_jj = ||residual|| > 0
// directly, so the correction factors diag(r_jj/|r_jj|) are unity here.
// Redraws on a numerically degenerate R diagonal and counts the event.
inline Unitary4 haar_sample(RngState& rng, HaarSampleStats* stats = nullptr) {
    for (;;) {
        Mat4 g;
        for (int i = 0; i < 16; ++i) {
            auto [re, im] = rng.next_gaussian_pair();
            g.a[i] = cplx(re, im);
        }
        // modified Gram-Schmidt with re-orthogonalization over the columns of g
        std::array<Vec4, 4> q;
        bool degenerate = false;
        for (int j = 0; j < 4 && !degenerate; ++j) {
            Vec4 v{g(0, j), g(1, j), g(2, j), g(3, j)};
            for (int pass = 0; pass < 2; ++pass)
                for (int k = 0; k < j; ++k) {
                    const cplx proj = inner(q[k], v);
                    for (int i = 0; i < 4; ++i) v[i] -= proj * q[k][i];
                }
            const double r_jj = norm(v);
            if (r_jj < 1e-14) {
                degenerate = true;
                break;
            }
            for (int i = 0; i < 4; ++i) q[j][i] = v[i] / r_jj;
        }
        if (degenerate) {
            if (stats) ++stats->degenerate_redraws;
            continue;
        }
        Mat4 u;
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) u(i, j) = q[j][i];
        return Unitary4{u};
    }
}

} // namespace gatepower
