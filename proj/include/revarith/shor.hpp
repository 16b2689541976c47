#pragma once

// Period-finding assembly with a single reused phase qubit, a clean work
// register, and a mostly-dirty ancilla register whose damage is undone by a
// measurement-driven fixup multiplication; plus the classical pre/post
// processing (base selection, continued fractions, factor extraction).

#include "revarith/lowering.hpp"
#include "revarith/statevector.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace revarith {

struct ShorParams {
    static constexpr uint32_t kAutoPhaseBits = UINT32_MAX;

    uint64_t modulus = 0;                    // R: odd, not a prime power
    uint64_t base = 0;                       // B: 1 < B < R, coprime to R
    uint32_t phase_bits = kAutoPhaseBits;    // p: defaults to 2n
    uint64_t seed = 1;
};

struct QubitBudget {
    uint32_t clean = 0;
    uint32_t dirty = 0;
    uint32_t total = 0;
};

struct PeriodFindingCircuit {
    SemiProgram program;
    QubitBudget budget;
    uint32_t phase_bits = 0;
    uint32_t n = 0;
    Register work;
    Register ancilla;
    Wire phase_wire = 0;
    // Resource totals over the lowered per-iteration multiplications plus
    // the initial work-register preparation.
    ResourceReport classical_resources;
};

/// Builds the semiclassical period-finding program for base^k mod R with
/// p = phase_bits iterations. The wire pool is exactly 2n+1 wires: the phase
/// qubit, the n-wire work register, and the n-wire ancilla register whose
/// MSB is clean; budget reports (n+2, n-1, 2n+1).
PeriodFindingCircuit build_period_finding(const ShorParams& params);

/// Denominators (< limit) of the continued-fraction convergents of s / 2^p,
/// largest first.
std::vector<uint64_t> continued_fractions(uint64_t s, uint32_t p, uint64_t limit);

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t mod);
/// Multiplicative order of b mod r by brute force (used by tests/oracles).
uint64_t multiplicative_order(uint64_t b, uint64_t r);

bool is_prime_power(uint64_t r, uint64_t* root = nullptr);

struct PeriodResult {
    std::vector<uint64_t> samples;
    std::optional<uint64_t> period;
    uint32_t trials = 0;
};

/// Runs the semiclassical program repeatedly (seeded) and recovers the
/// period of base mod R from the sampled phases via continued fractions.
PeriodResult find_period(const ShorParams& params, uint32_t max_trials);

struct FactorResult {
    bool success = false;
    uint64_t factor_a = 0;
    uint64_t factor_b = 0;
    uint64_t base_used = 0;
    std::optional<uint64_t> period;
    std::vector<uint64_t> samples;
    uint32_t trials = 0;
    QubitBudget budget;
};

/// Full factoring loop: random bases, gcd luck, period finding, and the
/// B^(l/2) +- 1 extraction, up to max_trials attempts.
FactorResult factor(uint64_t modulus, uint32_t max_trials, uint64_t seed,
                    uint32_t phase_bits = ShorParams::kAutoPhaseBits);

} // namespace revarith
