#pragma once

// Exhaustive bit-level simulation of lowered circuits: basis-state
// evaluation, full permutation extraction, permutation parity, and the
// contract checker used to verify every construction against an arithmetic
// oracle.

#include "revarith/circuit.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace revarith {

using BasisState = uint64_t;

struct Permutation {
    uint32_t width = 0;
    std::vector<uint64_t> mapping; // 2^width entries

    uint64_t operator()(uint64_t v) const { return mapping[v]; }
};

/// Applies each X/CX/CCX by truth table, in order. Throws on gates with more
/// than two controls.
BasisState run_classical(const Circuit& circuit, BasisState state);

/// Runs every basis state through the circuit and asserts bijectivity.
/// Width is limited to 24 wires.
Permutation extract_permutation(const Circuit& circuit);

/// True for odd permutations (odd number of transpositions).
bool permutation_parity_odd(const Permutation& p);

/// Parity of a single gate's permutation on a pool of `width` wires.
bool gate_parity_odd(const Gate& g, uint32_t width);

/// Value of `reg` within a basis state.
uint64_t read_register(const Register& reg, BasisState state);
/// Basis state with `reg` replaced by `value`.
BasisState write_register(const Register& reg, BasisState state, uint64_t value);

struct ContractViolation {
    BasisState input = 0;
    BasisState expected = 0;
    BasisState actual = 0;
    std::string describe() const;
};

/// Checks that the circuit maps every in-domain basis state the way
/// `oracle` says, sweeping all assignments of non-operand wires (dirty
/// ancillae, controls, idle wires) implicitly: `oracle` receives the full
/// input state and must return the full expected output state, so wires the
/// operation should not disturb are simply returned unchanged. Returns the
/// first counterexample, or nullopt on success.
std::optional<ContractViolation> check_contract(
    const Circuit& circuit,
    const std::function<BasisState(BasisState)>& oracle,
    const std::function<bool(BasisState)>& domain);

/// Verifies that wires listed in `clean` return to 0 whenever they start 0.
std::optional<ContractViolation> check_clean_restored(const Circuit& circuit,
                                                      const std::vector<Wire>& clean);

} // namespace revarith
