#pragma once

// Scalar resource quantifiers on two-qubit pure states: entanglement entropy,
// the k=2 Vidal monotone, relative-entropy and l1-norm coherence with respect
// to a supplied orthonormal basis, and the closed-form kernel concurrence.

#include <array>
#include <cmath>
#include <span>

#include "gatepower/gates.hpp"
#include "gatepower/linalg.hpp"

namespace gatepower {

// 0 log 0 = 0; weights below 1e-15 are treated as exactly zero.
inline double shannon_bits(std::span<const double> w) {
    double s = 0.0;
    for (double p : w) {
        if (p > 1e-15) s -= p * std::log2(p);
    }
    return s;
}

inline double binary_entropy(double p) {
    p = std::min(1.0, std::max(0.0, p));
    const double w[2] = {p, 1.0 - p};
    return shannon_bits(w);
}

// Local von Neumann entropy of a normalized two-qubit pure state, in ebits.
inline double ent_entropy(const PureState4& psi) {
    const auto ev = herm_eigvals2(reduced_state(psi, Subsystem::A));
    const double w[2] = {ev[0], ev[1]};
    return shannon_bits(w);
}

// Sum of all but the largest squared Schmidt coefficient; for two qubits this
// is the smaller reduced eigenvalue, in [0, 1/2].
inline double vidal_e2(const PureState4& psi) {
    return herm_eigvals2(reduced_state(psi, Subsystem::A))[1];
}

// Basis parameters of the product family {|00>, |01>, |1 eta>, |1 eta_perp>}
// with |eta> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct ProductBasisParams {
    double theta = 0.0; // [0, pi]
    double phi = 0.0;   // [0, 2pi)
};

struct Basis4 {
    std::array<PureState4, 4> b;

    // Largest Gram-matrix deviation from the identity.
    double orthonormality_defect() const {
        double d = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                d = std::max(d, std::abs(inner(b[i], b[j]) - (i == j ? 1.0 : 0.0)));
        return d;
    }

    static Basis4 product(const ProductBasisParams& p) {
        const double c = std::cos(p.theta / 2.0), s = std::sin(p.theta / 2.0);
        const cplx e = std::exp(cplx(0.0, p.phi));
        Basis4 r;
        r.b[0] = {1, 0, 0, 0};
        r.b[1] = {0, 1, 0, 0};
        r.b[2] = {0, 0, c, e * s};
        r.b[3] = {0, 0, -std::conj(e) * s, c};
        return r;
    }

    static Basis4 columns_of(const Mat4& w) {
        Basis4 r;
        for (int j = 0; j < 4; ++j)
            for (int i = 0; i < 4; ++i) r.b[j][i] = w(i, j);
        return r;
    }
};

namespace detail {
inline void require_orthonormal(const Basis4& basis) {
    if (basis.orthonormality_defect() > 1e-8)
        throw NonOrthonormalBasis("basis Gram matrix deviates from identity");
}
} // namespace detail

// Relative entropy of coherence: S of the diagonal weights |<b_i|psi>|^2, in bits.
inline double rel_ent_coherence(const PureState4& psi, const Basis4& basis) {
    detail::require_orthonormal(basis);
    std::array<double, 4> w;
    for (int i = 0; i < 4; ++i) w[i] = std::norm(inner(basis.b[i], psi));
    return shannon_bits(w);
}

// Sum of moduli of the off-diagonal density-matrix entries in the basis,
// equal to (sum_i |a_i|)^2 - sum_i |a_i|^2 for a pure state.
inline double l1_coherence(const PureState4& psi, const Basis4& basis) {
    detail::require_orthonormal(basis);
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double m = std::abs(inner(basis.b[i], psi));
        s1 += m;
        s2 += m * m;
    }
    return s1 * s1 - s2;
}

using LambdaVector = std::array<double, 4>;

inline LambdaVector lambda_vector(const CartanParams& alpha) { return kernel_eigenphases(alpha); }

// Max over the six unordered eigenphase pairs of |sin(lambda_k - lambda_l)|.
inline double concurrence_bar(const CartanParams& alpha) {
    const LambdaVector lam = lambda_vector(alpha);
    double m = 0.0;
    for (int k = 0; k < 4; ++k)
        for (int l = k + 1; l < 4; ++l) m = std::max(m, std::abs(std::sin(lam[k] - lam[l])));
    return m;
}

// H((1 + sqrt(1 - cbar^2)) / 2), in ebits.
inline double ent_from_concurrence(double cbar) {
    if (cbar < -1e-12 || cbar > 1.0 + 1e-12)
        throw DomainError("ent_from_concurrence: concurrence outside [0,1]");
    cbar = std::min(1.0, std::max(0.0, cbar));
    return binary_entropy((1.0 + std::sqrt(1.0 - cbar * cbar)) / 2.0);
}

} // namespace gatepower
