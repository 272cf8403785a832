#pragma once

// Dense complex linear algebra for the fixed sizes this library needs:
// 2x2 and 4x4 matrices and 4-vectors, all double precision.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "gatepower/errors.hpp"

namespace gatepower {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

struct Mat2 {
    std::array<cplx, 4> a{};

    cplx& operator()(int r, int c) { return a[2 * r + c]; }
    const cplx& operator()(int r, int c) const { return a[2 * r + c]; }

    static Mat2 identity() { return Mat2{{1.0, 0.0, 0.0, 1.0}}; }
};

struct Mat4 {
    std::array<cplx, 16> a{};

    cplx& operator()(int r, int c) { return a[4 * r + c]; }
    const cplx& operator()(int r, int c) const { return a[4 * r + c]; }

    static Mat4 identity() {
        Mat4 m;
        for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
        return m;
    }
};

// Two-qubit pure state, amplitudes in the computational order |00>,|01>,|10>,|11>.
using Vec4 = std::array<cplx, 4>;
using PureState4 = Vec4;

// 2x2 Hermitian, trace-one reduced density matrix.
using DensityMat2 = Mat2;

struct CartanParams {
    double ax = 0.0, ay = 0.0, az = 0.0;
};

inline Mat2 operator*(const Mat2& x, const Mat2& y) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j);
    return r;
}

inline Mat4 operator*(const Mat4& x, const Mat4& y) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < 4; ++k) s += x(i, k) * y(k, j);
            r(i, j) = s;
        }
    return r;
}

inline Vec4 operator*(const Mat4& m, const Vec4& v) {
    Vec4 r{};
    for (int i = 0; i < 4; ++i) {
        cplx s = 0.0;
        for (int k = 0; k < 4; ++k) s += m(i, k) * v[k];
        r[i] = s;
    }
    return r;
}

inline Mat2 adjoint(const Mat2& m) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = std::conj(m(j, i));
    return r;
}

inline Mat4 adjoint(const Mat4& m) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = std::conj(m(j, i));
    return r;
}

inline Mat4 transpose(const Mat4& m) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = m(j, i);
    return r;
}

inline cplx trace(const Mat4& m) { return m(0, 0) + m(1, 1) + m(2, 2) + m(3, 3); }

inline cplx det(const Mat2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

inline cplx inner(const Vec4& x, const Vec4& y) {
    cplx s = 0.0;
    for (int i = 0; i < 4; ++i) s += std::conj(x[i]) * y[i];
    return s;
}

inline double norm(const Vec4& v) { return std::sqrt(std::real(inner(v, v))); }

inline double frobenius_norm(const Mat4& m) {
    double s = 0.0;
    for (const auto& z : m.a) s += std::norm(z);
    return std::sqrt(s);
}

inline double frobenius_dist(const Mat4& x, const Mat4& y) {
    double s = 0.0;
    for (int i = 0; i < 16; ++i) s += std::norm(x.a[i] - y.a[i]);
    return std::sqrt(s);
}

inline Mat4 scale(const Mat4& m, cplx c) {
    Mat4 r = m;
    for (auto& z : r.a) z *= c;
    return r;
}

// Standard Kronecker product, (a (x) b)(x (x) y) = (a x) (x) (b y).
inline Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return r;
}

inline Vec4 kron(const std::array<cplx, 2>& x, const std::array<cplx, 2>& y) {
    return {x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]};
}

inline double max_abs_deviation_from_identity(const Mat4& m) {
    double d = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            d = std::max(d, std::abs(m(i, j) - (i == j ? 1.0 : 0.0)));
    return d;
}

inline double unitarity_defect(const Mat4& u) { return max_abs_deviation_from_identity(adjoint(u) * u); }

inline double hermiticity_defect(const Mat4& m) {
    double d = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
    return d;
}

enum class Subsystem { A, B };

// Reduced density matrix of the kept qubit. The input must be Hermitian with
// unit trace; Hermiticity violations beyond 1e-8 are rejected.
inline DensityMat2 partial_trace(const Mat4& rho, Subsystem keep) {
    if (hermiticity_defect(rho) > 1e-8)
        throw NonHermitianInput("partial_trace: input is not Hermitian");
    DensityMat2 r;
    if (keep == Subsystem::A) {
        for (int a = 0; a < 2; ++a)
            for (int ap = 0; ap < 2; ++ap)
                r(a, ap) = rho(2 * a + 0, 2 * ap + 0) + rho(2 * a + 1, 2 * ap + 1);
    } else {
        for (int b = 0; b < 2; ++b)
            for (int bp = 0; bp < 2; ++bp)
                r(b, bp) = rho(0 + b, 0 + bp) + rho(2 + b, 2 + bp);
    }
    return r;
}

inline Mat4 projector(const Vec4& psi) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = psi[i] * std::conj(psi[j]);
    return r;
}

// Reduced state of a pure two-qubit state, without building the 4x4 projector.
inline DensityMat2 reduced_state(const PureState4& psi, Subsystem keep) {
    DensityMat2 r;
    if (keep == Subsystem::A) {
        for (int a = 0; a < 2; ++a)
            for (int ap = 0; ap < 2; ++ap)
                r(a, ap) = psi[2 * a] * std::conj(psi[2 * ap]) + psi[2 * a + 1] * std::conj(psi[2 * ap + 1]);
    } else {
        for (int b = 0; b < 2; ++b)
            for (int bp = 0; bp < 2; ++bp)
                r(b, bp) = psi[b] * std::conj(psi[bp]) + psi[2 + b] * std::conj(psi[2 + bp]);
    }
    return r;
}

// Eigenvalues of a 2x2 Hermitian matrix by the closed-form quadratic,
// sorted descending and clamped to [0,1].
inline std::array<double, 2> herm_eigvals2(const DensityMat2& m) {
    const double p = std::real(m(0, 0));
    const double r = std::real(m(1, 1));
    const double q2 = std::norm(m(0, 1));
    const double mean = 0.5 * (p + r);
    const double disc = std::sqrt(std::max(0.0, 0.25 * (p - r) * (p - r) + q2));
    auto clamp01 = [](double x) { return std::min(1.0, std::max(0.0, x)); };
    return {clamp01(mean + disc), clamp01(mean - disc)};
}

// Magic (Bell) basis, column j holding the j-th basis state in computational
// coordinates. Local unitaries become real orthogonal in this basis, and the
// Cartan kernel becomes diagonal with phases exp(-i lambda_j).
inline const Mat4& magic_basis() {
    static const Mat4 m = [] {
        const double s = 1.0 / std::sqrt(2.0);
        const cplx i{0.0, 1.0};
        Mat4 r;
        r(0, 0) = s;  r(0, 1) = -i * s;
        r(1, 2) = s;  r(1, 3) = -i * s;
        r(2, 2) = -s; r(2, 3) = -i * s;
        r(3, 0) = s;  r(3, 1) = i * s;
        return r;
    }();
    return m;
}

// Signed eigenphase combinations of the Cartan kernel; their sum is zero.
inline std::array<double, 4> kernel_eigenphases(const CartanParams& alpha) {
    return {alpha.ax - alpha.ay + alpha.az,
            -alpha.ax + alpha.ay + alpha.az,
            -alpha.ax - alpha.ay - alpha.az,
            alpha.ax + alpha.ay - alpha.az};
}

// exp(-i (ax XX + ay YY + az ZZ)), evaluated in closed form by
// diagonalizing in the magic basis.
inline Mat4 cartan_exp(const CartanParams& alpha) {
    const auto lam = kernel_eigenphases(alpha);
    const Mat4& m = magic_basis();
    std::array<cplx, 4> d;
    for (int j = 0; j < 4; ++j) d[j] = std::exp(cplx(0.0, -lam[j]));
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < 4; ++k) s += m(i, k) * d[k] * std::conj(m(j, k));
            r(i, j) = s;
        }
    return r;
}

// Phase-optimal distance: min over gamma of ||x - e^{i gamma} y||_F, with the
// minimizing gamma given by arg(Tr(y^dag x)).
inline double phase_optimal_gamma(const Mat4& x, const Mat4& y) {
    cplx t = 0.0;
    for (int i = 0; i < 16; ++i) t += std::conj(y.a[i]) * x.a[i];
    return std::arg(t);
}

inline double phase_dist(const Mat4& x, const Mat4& y) {
    const double g = phase_optimal_gamma(x, y);
    return frobenius_dist(x, scale(y, std::exp(cplx(0.0, g))));
}

} // namespace gatepower
