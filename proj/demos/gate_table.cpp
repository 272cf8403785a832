// Prints the entanglement and normalized coherence powers of the stock
// two-qubit gates, four significant figures each.

#include <cstdio>

#include "gatepower/power.hpp"

int main() {
    using namespace gatepower;
    const std::pair<NamedGate, const char*> gates[] = {
        {NamedGate::CNOT, "CNOT"},     {NamedGate::CZ, "CZ"},
        {NamedGate::SWAP, "SWAP"},     {NamedGate::SQRT_SWAP, "sqrt(SWAP)"},
        {NamedGate::YX, "Y x X"},      {NamedGate::HH, "H x H"},
        {NamedGate::HI, "H x I"},
    };
    std::printf("%-12s %8s %8s\n", "gate", "E_g", "C~_g");
    for (const auto& [g, name] : gates) {
        const Unitary4 u = named_gate(g);
        const double eg = ent_power_numeric(u).value;
        const double ct = coherence_power_product(u).value / 2.0;
        std::printf("%-12s %8.4g %8.4g\n", name, eg, ct);
    }
    return 0;
}
