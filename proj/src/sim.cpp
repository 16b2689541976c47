#include "revarith/sim.hpp"

#include <sstream>

namespace revarith {

BasisState run_classical(const Circuit& circuit, BasisState state) {
    for (const Gate& g : circuit.gates) {
        switch (g.num_controls) {
            case 0:
                state ^= uint64_t{1} << g.target;
                break;
            case 1:
                if ((state >> g.ctrl[0]) & 1) state ^= uint64_t{1} << g.target;
                break;
            case 2:
                if (((state >> g.ctrl[0]) & 1) && ((state >> g.ctrl[1]) & 1))
                    state ^= uint64_t{1} << g.target;
                break;
            default:
                throw BuildError(BuildError::Kind::InvalidParams,
                                 "run_classical: gate with more than two controls");
        }
    }
    return state;
}

namespace {

// Bit-sliced evaluation: plane w holds bit w of every basis state's image,
// so an X/CX/CCX costs 2^width / 64 word operations.
std::vector<std::vector<uint64_t>> run_all_states(const Circuit& circuit) {
    uint32_t width = circuit.width;
    uint64_t n = uint64_t{1} << width;
    size_t words = static_cast<size_t>((n + 63) / 64);
    std::vector<std::vector<uint64_t>> planes(width, std::vector<uint64_t>(words, 0));
    // Initialize plane w with bit w of the state index.
    for (uint32_t w = 0; w < width; ++w) {
        auto& pl = planes[w];
        if (w >= 6) {
            // Bit w is constant across each 64-state word.
            uint64_t period = uint64_t{1} << (w - 6);
            for (size_t i = 0; i < words; ++i)
                if ((i / period) & 1) pl[i] = ~uint64_t{0};
        } else {
            uint64_t pattern = 0;
            for (uint64_t v = 0; v < 64; ++v)
                if ((v >> w) & 1) pattern |= uint64_t{1} << v;
            for (size_t i = 0; i < words; ++i) pl[i] = pattern;
        }
    }
    for (const Gate& g : circuit.gates) {
        auto& t = planes[g.target];
        switch (g.num_controls) {
            case 0:
                for (uint64_t& word : t) word = ~word;
                break;
            case 1: {
                const auto& c = planes[g.ctrl[0]];
                for (size_t i = 0; i < t.size(); ++i) t[i] ^= c[i];
                break;
            }
            case 2: {
                const auto& c0 = planes[g.ctrl[0]];
                const auto& c1 = planes[g.ctrl[1]];
                for (size_t i = 0; i < t.size(); ++i) t[i] ^= c0[i] & c1[i];
                break;
            }
            default:
                throw BuildError(BuildError::Kind::InvalidParams,
                                 "run_all_states: gate with more than two controls");
        }
    }
    return planes;
}

} // namespace

Permutation extract_permutation(const Circuit& circuit) {
    if (circuit.width > 24)
        throw BuildError(BuildError::Kind::InvalidParams, "extract_permutation: width > 24");
    uint64_t n = uint64_t{1} << circuit.width;
    auto planes = run_all_states(circuit);
    Permutation p;
    p.width = circuit.width;
    p.mapping.assign(n, 0);
    for (uint32_t w = 0; w < circuit.width; ++w) {
        const auto& pl = planes[w];
        for (uint64_t v = 0; v < n; ++v)
            p.mapping[v] |= ((pl[v >> 6] >> (v & 63)) & 1) << w;
    }
    std::vector<uint8_t> seen(n, 0);
    for (uint64_t v = 0; v < n; ++v) {
        if (seen[p.mapping[v]]++)
            throw BuildError(BuildError::Kind::LedgerViolation,
                             "extract_permutation: collision, circuit is not reversible");
    }
    return p;
}

bool permutation_parity_odd(const Permutation& p) {
    uint64_t n = uint64_t{1} << p.width;
    std::vector<uint8_t> visited(n, 0);
    uint64_t transpositions = 0;
    for (uint64_t v = 0; v < n; ++v) {
        if (visited[v]) continue;
        uint64_t len = 0;
        uint64_t cur = v;
        while (!visited[cur]) {
            visited[cur] = 1;
            cur = p.mapping[cur];
            ++len;
        }
        transpositions += len - 1;
    }
    return (transpositions & 1) != 0;
}

bool gate_parity_odd(const Gate& g, uint32_t width) {
    // A gate with c controls swaps 2^(width - c - 1) pairs of basis states.
    uint32_t fixed = g.num_controls + 1;
    if (fixed > width) throw BuildError(BuildError::Kind::InvalidParams, "gate wider than pool");
    return width - fixed == 0; // odd iff exactly one swapped pair
}

uint64_t read_register(const Register& reg, BasisState state) {
    uint64_t v = 0;
    for (uint32_t i = 0; i < reg.size(); ++i) v |= ((state >> reg[i]) & 1) << i;
    return v;
}

BasisState write_register(const Register& reg, BasisState state, uint64_t value) {
    for (uint32_t i = 0; i < reg.size(); ++i) {
        uint64_t mask = uint64_t{1} << reg[i];
        if ((value >> i) & 1)
            state |= mask;
        else
            state &= ~mask;
    }
    return state;
}

std::string ContractViolation::describe() const {
    std::ostringstream os;
    os << "counterexample: input=" << input << " expected=" << expected << " actual=" << actual;
    return os.str();
}

std::optional<ContractViolation> check_contract(
    const Circuit& circuit,
    const std::function<BasisState(BasisState)>& oracle,
    const std::function<bool(BasisState)>& domain) {
    Permutation p = extract_permutation(circuit); // also asserts bijectivity
    uint64_t n = uint64_t{1} << circuit.width;
    for (uint64_t v = 0; v < n; ++v) {
        if (!domain(v)) continue;
        uint64_t want = oracle(v);
        if (p.mapping[v] != want) return ContractViolation{v, want, p.mapping[v]};
    }
    return std::nullopt;
}

std::optional<ContractViolation> check_clean_restored(const Circuit& circuit,
                                                      const std::vector<Wire>& clean) {
    uint64_t clean_mask = 0;
    for (Wire w : clean) clean_mask |= uint64_t{1} << w;
    uint64_t n = uint64_t{1} << circuit.width;
    for (uint64_t v = 0; v < n; ++v) {
        if (v & clean_mask) continue;
        uint64_t out = run_classical(circuit, v);
        if (out & clean_mask) return ContractViolation{v, out & ~clean_mask, out};
    }
    return std::nullopt;
}

} // namespace revarith
