#include "revarith/statevector.hpp"

#include <cmath>
#include <numbers>

namespace revarith {

namespace {
constexpr double kPi = std::numbers::pi;
}

StateVector::StateVector(uint32_t width) : width_(width) {
    if (width > 24)
        throw BuildError(BuildError::Kind::InvalidParams, "statevector width > 24");
    amps_.assign(uint64_t{1} << width, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

void StateVector::set_basis(uint64_t value) {
    std::fill(amps_.begin(), amps_.end(), Amplitude{0.0, 0.0});
    amps_[value] = 1.0;
}

void StateVector::apply_h(Wire w) {
    uint64_t bit = uint64_t{1} << w;
    double inv = 1.0 / std::sqrt(2.0);
    for (uint64_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) continue;
        Amplitude a = amps_[i];
        Amplitude b = amps_[i | bit];
        amps_[i] = (a + b) * inv;
        amps_[i | bit] = (a - b) * inv;
    }
}

void StateVector::apply_phase(Wire w, double theta) {
    uint64_t bit = uint64_t{1} << w;
    Amplitude ph = std::polar(1.0, theta);
    for (uint64_t i = 0; i < amps_.size(); ++i)
        if (i & bit) amps_[i] *= ph;
}

void StateVector::apply_cphase(Wire c, Wire w, double theta) {
    uint64_t mask = (uint64_t{1} << c) | (uint64_t{1} << w);
    Amplitude ph = std::polar(1.0, theta);
    for (uint64_t i = 0; i < amps_.size(); ++i)
        if ((i & mask) == mask) amps_[i] *= ph;
}

void StateVector::apply_x(Wire w) {
    uint64_t bit = uint64_t{1} << w;
    for (uint64_t i = 0; i < amps_.size(); ++i)
        if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
}

void StateVector::apply_swap(Wire a, Wire b) {
    uint64_t ba = uint64_t{1} << a;
    uint64_t bb = uint64_t{1} << b;
    for (uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & ba) && !(i & bb)) std::swap(amps_[i], amps_[(i & ~ba) | bb]);
    }
}

void StateVector::apply_permutation(const Permutation& p) {
    if (p.width != width_)
        throw BuildError(BuildError::Kind::InvalidParams, "permutation width mismatch");
    std::vector<Amplitude> next(amps_.size());
    for (uint64_t i = 0; i < amps_.size(); ++i) next[p.mapping[i]] = amps_[i];
    amps_ = std::move(next);
}

void StateVector::apply_classical(const Circuit& lowered) {
    for (const Gate& g : lowered.gates) {
        uint64_t tbit = uint64_t{1} << g.target;
        switch (g.num_controls) {
            case 0:
                apply_x(g.target);
                break;
            case 1: {
                uint64_t c = uint64_t{1} << g.ctrl[0];
                for (uint64_t i = 0; i < amps_.size(); ++i)
                    if ((i & c) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
                break;
            }
            case 2: {
                uint64_t c = (uint64_t{1} << g.ctrl[0]) | (uint64_t{1} << g.ctrl[1]);
                for (uint64_t i = 0; i < amps_.size(); ++i)
                    if (((i & c) == c) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
                break;
            }
            default:
                throw BuildError(BuildError::Kind::InvalidParams,
                                 "statevector needs a fully lowered circuit");
        }
    }
}

double StateVector::prob_one(Wire w) const {
    uint64_t bit = uint64_t{1} << w;
    double p = 0;
    for (uint64_t i = 0; i < amps_.size(); ++i)
        if (i & bit) p += std::norm(amps_[i]);
    return p;
}

double StateVector::project(Wire w, int outcome) {
    uint64_t bit = uint64_t{1} << w;
    double p = prob_one(w);
    double keep = outcome ? p : 1.0 - p;
    if (keep <= 0)
        throw BuildError(BuildError::Kind::InvalidParams, "projecting onto zero-probability outcome");
    double inv = 1.0 / std::sqrt(keep);
    for (uint64_t i = 0; i < amps_.size(); ++i) {
        bool one = (i & bit) != 0;
        if (one == (outcome != 0))
            amps_[i] *= inv;
        else
            amps_[i] = 0.0;
    }
    return keep;
}

int StateVector::measure(Wire w, std::mt19937_64& rng) {
    double p1 = prob_one(w);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    int outcome = dist(rng) < p1 ? 1 : 0;
    project(w, outcome);
    return outcome;
}

void StateVector::reset(Wire w, std::mt19937_64& rng) {
    if (measure(w, rng) == 1) apply_x(w);
}

double StateVector::norm() const {
    double n = 0;
    for (const Amplitude& a : amps_) n += std::norm(a);
    return n;
}

void StateVector::check_norm(double tol) const {
    if (std::abs(norm() - 1.0) > tol)
        throw BuildError(BuildError::Kind::LedgerViolation, "statevector norm drift");
}

void apply_program(const QuantumProgram& p, StateVector& sv) {
    for (const QInstr& in : p.instrs) {
        std::visit(
            [&](const auto& g) {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, QHadamard>)
                    sv.apply_h(g.w);
                else if constexpr (std::is_same_v<T, QPhase>)
                    sv.apply_phase(g.w, g.theta);
                else if constexpr (std::is_same_v<T, QCPhase>)
                    sv.apply_cphase(g.c, g.w, g.theta);
                else
                    sv.apply_swap(g.a, g.b);
            },
            in);
    }
}

std::vector<std::vector<Amplitude>> program_unitary(const QuantumProgram& p) {
    uint64_t n = uint64_t{1} << p.width;
    std::vector<std::vector<Amplitude>> u(n, std::vector<Amplitude>(n));
    for (uint64_t col = 0; col < n; ++col) {
        StateVector sv(p.width);
        sv.set_basis(col);
        apply_program(p, sv);
        for (uint64_t row = 0; row < n; ++row) u[row][col] = sv.amplitudes()[row];
    }
    return u;
}

namespace {

// Fourier transform over Z_{2^n}, LSB-first register.
void emit_qft(QuantumProgram& p, uint32_t n, bool inverse) {
    std::vector<QInstr> instrs;
    for (uint32_t k = n; k-- > 0;) {
        instrs.push_back(QHadamard{k});
        for (uint32_t j = 0; j < k; ++j)
            instrs.push_back(QCPhase{j, k, kPi / double(uint64_t{1} << (k - j))});
    }
    for (uint32_t i = 0; i * 2 + 1 < n; ++i) instrs.push_back(QSwap{i, n - 1 - i});
    if (inverse) {
        std::reverse(instrs.begin(), instrs.end());
        for (QInstr& in : instrs) {
            if (auto* cp = std::get_if<QCPhase>(&in)) cp->theta = -cp->theta;
            if (auto* ph = std::get_if<QPhase>(&in)) ph->theta = -ph->theta;
        }
    }
    p.instrs.insert(p.instrs.end(), instrs.begin(), instrs.end());
}

} // namespace

QuantumProgram quantum_increment_bootstrap(uint32_t n) {
    QuantumProgram p;
    p.width = n;
    if (n == 0) return p;
    emit_qft(p, n, false);
    // Phase gradient: in frequency space +1 is the diagonal phase e^{2 pi i
    // u / 2^n}, one single-qubit Z power per wire.
    for (uint32_t k = 0; k < n; ++k)
        p.instrs.push_back(QPhase{k, 2.0 * kPi * double(uint64_t{1} << k) / double(uint64_t{1} << n)});
    emit_qft(p, n, true);
    return p;
}

namespace {

struct SemiExec {
    const SemiProgram& prog;
    StateVector state;
    std::vector<int> record;
    std::map<uint64_t, Permutation>* fixup_cache;

    explicit SemiExec(const SemiProgram& p, uint64_t initial,
                      std::map<uint64_t, Permutation>* cache)
        : prog(p), state(p.width), record(p.record_size, 0), fixup_cache(cache) {
        state.set_basis(initial);
    }

    double angle_of(const SemiConditionalPhase& g) const {
        double theta = 0;
        for (auto [slot, a] : g.terms)
            if (record[slot]) theta += a;
        return theta;
    }

    const Permutation& fixup_perm(const SemiFixupMultiply& g) {
        uint64_t factor = 0;
        for (uint32_t i = 0; i < g.slot_width; ++i)
            factor |= uint64_t{uint32_t(record[g.slot + i])} << i;
        factor %= g.r;
        auto it = fixup_cache->find(factor);
        if (it == fixup_cache->end())
            it = fixup_cache->emplace(factor, prog.fixup_builder(factor, g)).first;
        return it->second;
    }
};

} // namespace

SemiResult run_semiclassical(const SemiProgram& p, uint64_t seed, uint64_t initial_state) {
    if (p.width > 14)
        throw BuildError(BuildError::Kind::InvalidParams, "semiclassical width > 14");
    std::mt19937_64 rng(seed);
    std::map<uint64_t, Permutation> cache;
    SemiExec ex(p, initial_state, &cache);
    for (const SemiInstr& in : p.instrs) {
        std::visit(
            [&](const auto& g) {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, SemiHadamard>) {
                    ex.state.apply_h(g.w);
                } else if constexpr (std::is_same_v<T, SemiConditionalPhase>) {
                    ex.state.apply_phase(g.w, ex.angle_of(g));
                } else if constexpr (std::is_same_v<T, SemiMeasure>) {
                    ex.record[g.slot] = ex.state.measure(g.w, rng);
                } else if constexpr (std::is_same_v<T, SemiReset>) {
                    ex.state.reset(g.w, rng);
                } else if constexpr (std::is_same_v<T, SemiPermute>) {
                    ex.state.apply_permutation(p.permutations[g.perm_index]);
                } else if constexpr (std::is_same_v<T, SemiMeasureRegister>) {
                    for (uint32_t i = 0; i < g.wires.size(); ++i)
                        ex.record[g.slot + i] = ex.state.measure(g.wires[i], rng);
                } else {
                    ex.state.apply_permutation(ex.fixup_perm(g));
                }
            },
            in);
        ex.state.check_norm();
    }
    return SemiResult{std::move(ex.record), std::move(ex.state)};
}

void enumerate_branches(const SemiProgram& p, uint64_t initial_state,
                        const std::function<void(const std::vector<int>&, double,
                                                 const StateVector&)>& visit,
                        double prob_cutoff) {
    // Rewrite register measurements into single-wire measurements so the
    // recursive walker only branches on one wire at a time.
    SemiProgram flat = p;
    flat.instrs.clear();
    for (const SemiInstr& in : p.instrs) {
        if (const auto* mr = std::get_if<SemiMeasureRegister>(&in)) {
            for (uint32_t i = 0; i < mr->wires.size(); ++i)
                flat.instrs.push_back(SemiMeasure{mr->wires[i], mr->slot + i});
        } else {
            flat.instrs.push_back(in);
        }
    }

    std::map<uint64_t, Permutation> cache;
    struct Walker {
        const SemiProgram& prog;
        double cutoff;
        const std::function<void(const std::vector<int>&, double, const StateVector&)>& visit;

        void walk(SemiExec ex, size_t pc, double prob) {
            if (prob < cutoff) return;
            for (size_t i = pc; i < prog.instrs.size(); ++i) {
                const SemiInstr& in = prog.instrs[i];
                if (const auto* h = std::get_if<SemiHadamard>(&in)) {
                    ex.state.apply_h(h->w);
                } else if (const auto* cp = std::get_if<SemiConditionalPhase>(&in)) {
                    ex.state.apply_phase(cp->w, ex.angle_of(*cp));
                } else if (const auto* pm = std::get_if<SemiPermute>(&in)) {
                    ex.state.apply_permutation(prog.permutations[pm->perm_index]);
                } else if (const auto* fx = std::get_if<SemiFixupMultiply>(&in)) {
                    ex.state.apply_permutation(ex.fixup_perm(*fx));
                } else if (const auto* rs = std::get_if<SemiReset>(&in)) {
                    double p1 = ex.state.prob_one(rs->w);
                    if (p1 > 1e-15 && p1 < 1.0 - 1e-15) {
                        SemiExec one = ex;
                        double k1 = one.state.project(rs->w, 1);
                        one.state.apply_x(rs->w);
                        walk(std::move(one), i + 1, prob * k1);
                        double k0 = ex.state.project(rs->w, 0);
                        prob *= k0;
                        if (prob < cutoff) return;
                    } else if (p1 >= 1.0 - 1e-15) {
                        ex.state.project(rs->w, 1);
                        ex.state.apply_x(rs->w);
                    } else {
                        ex.state.project(rs->w, 0);
                    }
                } else {
                    const auto& m = std::get<SemiMeasure>(in);
                    double p1 = ex.state.prob_one(m.w);
                    if (p1 > 1e-15 && p1 < 1.0 - 1e-15) {
                        SemiExec one = ex;
                        double k1 = one.state.project(m.w, 1);
                        one.record[m.slot] = 1;
                        walk(std::move(one), i + 1, prob * k1);
                        double k0 = ex.state.project(m.w, 0);
                        ex.record[m.slot] = 0;
                        prob *= k0;
                        if (prob < cutoff) return;
                    } else {
                        int outcome = p1 >= 1.0 - 1e-15 ? 1 : 0;
                        ex.state.project(m.w, outcome);
                        ex.record[m.slot] = outcome;
                    }
                }
            }
            visit(ex.record, prob, ex.state);
        }
    };

    Walker walker{flat, prob_cutoff, visit};
    SemiExec ex(flat, initial_state, &cache);
    walker.walk(std::move(ex), 0, 1.0);
}

} // namespace revarith
