#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "gatepower/kak.hpp"
#include "gatepower/power.hpp"

using namespace gatepower;
using Catch::Approx;

namespace {
std::array<double, 3> fold_sort(const CartanParams& a) {
    const CartanParams f = fold_alpha(canonical_alpha(a));
    std::array<double, 3> v{f.ax, f.ay, f.az};
    std::sort(v.begin(), v.end(), std::greater<double>());
    return v;
}
} // namespace

TEST_CASE("kak of the identity", "[kak]") {
    const auto k = kak_decompose(Unitary4{Mat4::identity()});
    CHECK(k.residual < 1e-12);
    const auto v = fold_sort(k.alpha);
    CHECK(v[0] == Approx(0.0).margin(1e-10));
    CHECK(v[2] == Approx(0.0).margin(1e-10));
}

TEST_CASE("kak of CNOT folds to (pi/4, 0, 0)", "[kak]") {
    const auto k = kak_decompose(named_gate(NamedGate::CNOT));
    CHECK(k.residual < 1e-9);
    const auto v = fold_sort(k.alpha);
    CHECK(std::abs(v[0] - pi / 4.0) < 1e-9);
    CHECK(std::abs(v[1]) < 1e-9);
    CHECK(std::abs(v[2]) < 1e-9);
}

TEST_CASE("kak of SWAP-family kernels (degenerate eigenphases)", "[kak]") {
    for (auto g : {NamedGate::SWAP, NamedGate::SQRT_SWAP, NamedGate::CZ}) {
        const auto k = kak_decompose(named_gate(g));
        CHECK(k.residual < 1e-9);
    }
    const auto k = kak_decompose(named_gate(NamedGate::SQRT_SWAP));
    const auto v = fold_sort(k.alpha);
    for (double c : v) CHECK(c == Approx(pi / 8.0).margin(1e-9));
}

TEST_CASE("kak reconstruction on Haar samples", "[kak]") {
    RngState rng = RngState::from_seed(2024);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto u = haar_sample(rng);
        const auto k = kak_decompose(u);
        worst = std::max(worst, k.residual);
        CHECK(k.alpha.ax >= 0.0);
        CHECK(k.alpha.ax < pi);
        CHECK(k.alpha.ay >= 0.0);
        CHECK(k.alpha.ay < pi);
        CHECK(k.alpha.az >= 0.0);
        CHECK(k.alpha.az < pi);
        if (i < 100) {
            CHECK(frobenius_dist(kak_reconstruct(k), u.m) < 1e-9);
            CHECK(std::abs(det(k.ua) - 1.0) < 1e-9);
            CHECK(std::abs(det(k.vb) - 1.0) < 1e-9);
        }
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("compose then decompose round-trips up to phase", "[kak]") {
    RngState rng = RngState::from_seed(31415);
    for (int i = 0; i < 1000; ++i) {
        auto angles = [&] {
            return SU2Params{rng.next_uniform() * pi, rng.next_uniform() * 2 * pi,
                             rng.next_uniform() * 4 * pi};
        };
        const CartanParams a{rng.next_uniform() * pi, rng.next_uniform() * pi,
                             rng.next_uniform() * pi};
        const auto u = compose_cartan(angles(), angles(), angles(), angles(), a);
        const auto k = kak_decompose(u);
        CHECK(k.residual < 1e-9);
        CHECK(phase_dist(kak_reconstruct(k), u.m) < 1e-9);
        // the kernel class is preserved: folded, sorted angles agree
        const auto va = fold_sort(a);
        const auto vb = fold_sort(k.alpha);
        for (int c = 0; c < 3; ++c) CHECK(std::abs(va[c] - vb[c]) < 1e-8);
    }
}

TEST_CASE("kak rejects non-unitary input", "[kak]") {
    Mat4 bad = Mat4::identity();
    bad(0, 0) = 2.0;
    CHECK_THROWS_AS(kak_decompose(Unitary4{bad}), NonUnitaryInput);
}
