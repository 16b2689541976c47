#pragma once

// Shared sweep harness: builds an operation over a small pool, lowers it,
// and checks the resulting permutation against an arithmetic oracle on
// every basis state (operands, dirty wires, and controls all swept).

#include "revarith/arith.hpp"
#include "revarith/circuit.hpp"
#include "revarith/lowering.hpp"
#include "revarith/sim.hpp"

#include <doctest.h>

#include <functional>

namespace revarith::testing {

struct Pool {
    uint32_t width = 0;
    uint32_t next = 0;

    Register reg(uint32_t n) {
        Register r = Register::range(next, n);
        next += n;
        return r;
    }
    Wire wire() { return next++; }
    std::vector<Wire> wires(uint32_t n) {
        std::vector<Wire> out;
        for (uint32_t i = 0; i < n; ++i) out.push_back(next++);
        return out;
    }
};

inline bool controls_on(BasisState s, const std::vector<Wire>& controls) {
    for (Wire c : controls) {
        if (!((s >> c) & 1)) return false;
    }
    return true;
}

/// Lowers `build` over `width` wires and requires the circuit to agree with
/// `oracle` on every in-domain basis state (and to be a bijection overall).
inline void check_op(uint32_t width, const std::function<void(CircuitBuilder&)>& build,
                     const std::function<BasisState(BasisState)>& oracle,
                     const std::function<bool(BasisState)>& domain = nullptr) {
    CircuitBuilder b(width);
    build(b);
    Circuit lowered = lower_mcx_pass(b.take());
    REQUIRE(lowered.is_lowered());
    auto violation = check_contract(
        lowered, oracle, domain ? domain : [](BasisState) { return true; });
    if (violation) FAIL(violation->describe());
}

} // namespace revarith::testing
