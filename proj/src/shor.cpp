#include "revarith/shor.hpp"

#include "revarith/mod_arith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace revarith {

namespace {

constexpr double kPi = std::numbers::pi;

uint64_t mix_seed(uint64_t seed, uint64_t salt) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t mod) {
    uint64_t result = 1 % mod;
    base %= mod;
    while (exp) {
        if (exp & 1) result = (result * base) % mod;
        base = (base * base) % mod;
        exp >>= 1;
    }
    return result;
}

uint64_t multiplicative_order(uint64_t b, uint64_t r) {
    if (std::gcd(b, r) != 1)
        throw BuildError(BuildError::Kind::InvalidParams, "order undefined: gcd(b, r) != 1");
    uint64_t v = b % r;
    uint64_t l = 1;
    while (v != 1) {
        v = (v * (b % r)) % r;
        ++l;
        if (l > r) throw BuildError(BuildError::Kind::InvalidParams, "order computation ran away");
    }
    return l;
}

bool is_prime_power(uint64_t r, uint64_t* root) {
    if (r < 2) return false;
    for (uint64_t p = 2; p * p <= r; ++p) {
        if (r % p) continue;
        uint64_t v = r;
        while (v % p == 0) v /= p;
        if (v == 1) {
            if (root) *root = p;
            return true;
        }
        return false;
    }
    // r itself is prime.
    if (root) *root = r;
    return true;
}

std::vector<uint64_t> continued_fractions(uint64_t s, uint32_t p, uint64_t limit) {
    uint64_t den = uint64_t{1} << p;
    std::vector<uint64_t> out;
    if (s == 0) return out;
    // Convergent denominators of s/2^p via the Euclidean expansion
    // (k_i = a_i * k_{i-1} + k_{i-2} with k_{-1} = 0, k_{-2} = 1).
    uint64_t a = s, b = den;
    uint64_t k_prev = 1, k_cur = 0;
    while (b != 0) {
        uint64_t q = a / b;
        uint64_t k_next = q * k_cur + k_prev;
        if (k_next >= limit) break;
        if (k_next != 0) out.push_back(k_next);
        k_prev = k_cur;
        k_cur = k_next;
        uint64_t rem = a % b;
        a = b;
        b = rem;
    }
    std::sort(out.rbegin(), out.rend());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PeriodFindingCircuit build_period_finding(const ShorParams& params) {
    uint64_t r = params.modulus;
    uint64_t base = params.base;
    if (r < 3 || r % 2 == 0)
        throw BuildError(BuildError::Kind::InvalidParams, "modulus must be odd and at least 3");
    if (is_prime_power(r))
        throw BuildError(BuildError::Kind::InvalidParams, "modulus must not be a prime power");
    if (base <= 1 || base >= r)
        throw BuildError(BuildError::Kind::InvalidParams, "base must satisfy 1 < B < R");
    uint64_t g = std::gcd(base, r);
    if (g != 1)
        throw BuildError(BuildError::Kind::InvalidParams,
                         "base must be co-prime to the modulus", static_cast<long long>(g));

    uint32_t n = mod_register_size(r);
    uint32_t p = params.phase_bits == ShorParams::kAutoPhaseBits ? 2 * n : params.phase_bits;
    uint32_t width = 2 * n + 1;

    PeriodFindingCircuit out;
    out.n = n;
    out.phase_bits = p;
    out.phase_wire = 0;
    out.work = Register::range(1, n);
    out.ancilla = Register::range(n + 1, n);

    // Account the qubit budget through the broker: the phase qubit, the
    // work register, and the ancilla's MSB are requested clean; the rest of
    // the ancilla register is borrowed dirty.
    {
        std::vector<Wire> clean_wires{out.phase_wire};
        for (Wire w : out.work.wires()) clean_wires.push_back(w);
        clean_wires.push_back(out.ancilla[n - 1]);
        CircuitBuilder accounting(width, clean_wires);
        auto cw = accounting.borrow_clean(n + 2);
        WireMask none(width);
        auto dw = accounting.borrow_dirty(n - 1, none);
        accounting.release_dirty(dw);
        accounting.release_clean(cw);
        Circuit acct = accounting.take();
        out.budget.clean = static_cast<uint32_t>(acct.ledger.clean_highwater);
        out.budget.dirty = static_cast<uint32_t>(acct.ledger.dirty_highwater);
        out.budget.total = width;
    }

    bool simulable = width <= 14;

    SemiProgram& prog = out.program;
    prog.width = width;
    prog.record_size = p + n;

    // Concatenated classical content for resource accounting.
    CircuitBuilder all(width);

    // Work register preparation |0...0> -> |1>.
    {
        CircuitBuilder prep(width);
        prep.emit_x(out.work[0]);
        all.emit_x(out.work[0]);
        if (simulable) {
            prog.permutations.push_back(extract_permutation(lower_mcx_pass(prep.take())));
            prog.instrs.push_back(SemiPermute{0});
        }
    }

    // One iteration per phase bit, largest exponent first; measurement j
    // yields phase bit s_j (LSB of the phase estimate first).
    for (uint32_t j = 0; j < p; ++j) {
        uint32_t k = p - 1 - j;
        uint64_t factor = pow_mod(base, uint64_t{1} << k, r);

        prog.instrs.push_back(SemiHadamard{out.phase_wire});

        CircuitBuilder it(width);
        Wire phase = out.phase_wire;
        mod_bimultiply(it, factor, r, out.work, out.ancilla, {&phase, 1});
        Circuit lowered = lower_mcx_pass(it.take());
        for (const Gate& gte : lowered.gates) {
            if (gte.num_controls == 0)
                all.emit_x(gte.target);
            else if (gte.num_controls == 1)
                all.emit_cx(gte.ctrl[0], gte.target);
            else
                all.emit_ccx(gte.ctrl[0], gte.ctrl[1], gte.target);
        }
        if (simulable) {
            prog.permutations.push_back(extract_permutation(lowered));
            prog.instrs.push_back(
                SemiPermute{static_cast<uint32_t>(prog.permutations.size() - 1)});
        }

        // Accumulated-phase correction from earlier measured bits, then the
        // closing Hadamard, measure, reset.
        SemiConditionalPhase rot{out.phase_wire, {}};
        for (uint32_t i = 0; i < j; ++i)
            rot.terms.emplace_back(i, -kPi / double(uint64_t{1} << (j - i)));
        if (!rot.terms.empty()) prog.instrs.push_back(rot);
        prog.instrs.push_back(SemiHadamard{out.phase_wire});
        prog.instrs.push_back(SemiMeasure{out.phase_wire, j});
        prog.instrs.push_back(SemiReset{out.phase_wire});
    }

    // Measure the work register to learn the fixup factor, then run the
    // restoring bimultiplication (ancilla *= w, work *= w^-1 -> 1).
    prog.instrs.push_back(SemiMeasureRegister{out.work.wires(), p});
    prog.instrs.push_back(
        SemiFixupMultiply{out.ancilla.wires(), out.work.wires(), r, p, n});

    uint64_t modulus = r;
    Register anc = out.ancilla;
    Register wrk = out.work;
    prog.fixup_builder = [modulus, anc, wrk, width](uint64_t factor,
                                                    const SemiFixupMultiply&) {
        CircuitBuilder fb(width);
        mod_bimultiply(fb, factor == 0 ? 1 : factor, modulus, anc, wrk);
        return extract_permutation(lower_mcx_pass(fb.take()));
    };

    out.classical_resources = measure_resources(lower_mcx_pass(all.take()));
    return out;
}

namespace {

std::optional<uint64_t> reduce_to_order(uint64_t base, uint64_t r, uint64_t exponent) {
    if (exponent == 0 || pow_mod(base, exponent, r) != 1) return std::nullopt;
    // Any divisor d of a valid exponent with B^d = 1 is a tighter period.
    uint64_t l = exponent;
    for (uint64_t d = 1; d * d <= exponent; ++d) {
        if (exponent % d) continue;
        for (uint64_t cand : {d, exponent / d})
            if (cand > 0 && cand < l && pow_mod(base, cand, r) == 1) l = cand;
    }
    return l;
}

} // namespace

namespace {

PeriodResult find_period_with(const PeriodFindingCircuit& circ, const ShorParams& params,
                              uint32_t max_trials) {
    if (circ.program.permutations.empty())
        throw BuildError(BuildError::Kind::InvalidParams,
                         "modulus too wide to simulate (need 2n+1 <= 14)");
    uint32_t p = circ.phase_bits;

    PeriodResult result;
    std::vector<uint64_t> candidates;
    for (uint32_t t = 0; t < max_trials; ++t) {
        ++result.trials;
        SemiResult run = run_semiclassical(circ.program, mix_seed(params.seed, t));
        uint64_t s = 0;
        for (uint32_t j = 0; j < p; ++j) s |= uint64_t{uint32_t(run.record[j])} << j;
        result.samples.push_back(s);

        for (uint64_t q : continued_fractions(s, p, params.modulus)) {
            if (auto l = reduce_to_order(params.base, params.modulus, q)) {
                result.period = *l;
                return result;
            }
            for (uint64_t prev : candidates) {
                uint64_t combined = std::lcm(q, prev);
                if (combined < params.modulus) {
                    if (auto l = reduce_to_order(params.base, params.modulus, combined)) {
                        result.period = *l;
                        return result;
                    }
                }
            }
            candidates.push_back(q);
        }
    }
    return result;
}

} // namespace

PeriodResult find_period(const ShorParams& params, uint32_t max_trials) {
    PeriodFindingCircuit circ = build_period_finding(params);
    return find_period_with(circ, params, max_trials);
}

FactorResult factor(uint64_t modulus, uint32_t max_trials, uint64_t seed, uint32_t phase_bits) {
    FactorResult out;
    if (modulus < 3 || modulus % 2 == 0)
        throw BuildError(BuildError::Kind::InvalidParams, "modulus must be odd and composite");
    if (is_prime_power(modulus))
        throw BuildError(BuildError::Kind::InvalidParams,
                         "modulus must not be a prime power (factor it classically)");

    std::mt19937_64 rng(mix_seed(seed, 0xfac702));
    for (uint32_t t = 0; t < max_trials; ++t) {
        ++out.trials;
        std::uniform_int_distribution<uint64_t> pick(2, modulus - 1);
        uint64_t base = pick(rng);
        out.base_used = base;

        uint64_t g = std::gcd(base, modulus);
        if (g > 1) { // lucky base shares a factor
            out.success = true;
            out.factor_a = g;
            out.factor_b = modulus / g;
            return out;
        }

        ShorParams params;
        params.modulus = modulus;
        params.base = base;
        params.phase_bits = phase_bits;
        params.seed = mix_seed(seed, t);
        PeriodFindingCircuit circ = build_period_finding(params);
        out.budget = circ.budget;

        PeriodResult pr = find_period_with(circ, params, 3);
        out.samples.insert(out.samples.end(), pr.samples.begin(), pr.samples.end());
        if (!pr.period) continue;
        out.period = pr.period;

        uint64_t l = *pr.period;
        if (l % 2 != 0) continue;
        uint64_t y = pow_mod(base, l / 2, modulus);
        if (y == modulus - 1) continue; // B^(l/2) = -1: unusable
        for (uint64_t f : {std::gcd(y + 1, modulus), std::gcd(y + modulus - 1, modulus)}) {
            if (f > 1 && f < modulus) {
                out.success = true;
                out.factor_a = f;
                out.factor_b = modulus / f;
                return out;
            }
        }
    }
    return out;
}

} // namespace revarith
