// Draws Haar-random gates, decomposes each into locals + Cartan kernel +
// phase, and prints the kernel angles and reconstruction residual.

#include <cstdio>

#include "gatepower/kak.hpp"

int main() {
    using namespace gatepower;
    RngState rng = RngState::from_seed(7);
    std::printf("%4s %10s %10s %10s %12s\n", "k", "ax", "ay", "az", "residual");
    for (int k = 0; k < 10; ++k) {
        const Unitary4 u = haar_sample(rng);
        const auto d = kak_decompose(u);
        std::printf("%4d %10.6f %10.6f %10.6f %12.3e\n", k, d.alpha.ax, d.alpha.ay, d.alpha.az,
                    d.residual);
    }
    return 0;
}
