#pragma once

// Small statevector simulator: Hadamards, Z-rotations, classical gates,
// projective measurement, reset, plus the semiclassical program format used
// by the single-phase-qubit period finding loop (measurement-dependent
// rotations, register measurement, classically parametrized modular
// multiplications). Also the ancilla-free quantum increment built from a
// phase-gradient conjugation.

#include "revarith/circuit.hpp"
#include "revarith/sim.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <variant>
#include <vector>

namespace revarith {

using Amplitude = std::complex<double>;

class StateVector {
  public:
    explicit StateVector(uint32_t width);

    uint32_t width() const { return width_; }
    const std::vector<Amplitude>& amplitudes() const { return amps_; }
    std::vector<Amplitude>& amplitudes() { return amps_; }

    void set_basis(uint64_t value);

    void apply_h(Wire w);
    void apply_phase(Wire w, double theta);                 // diag(1, e^{i theta})
    void apply_cphase(Wire c, Wire w, double theta);
    void apply_x(Wire w);
    void apply_swap(Wire a, Wire b);
    void apply_permutation(const Permutation& p);
    void apply_classical(const Circuit& lowered);

    double prob_one(Wire w) const;
    /// Projects wire w onto `outcome` and renormalizes; returns the outcome
    /// probability before projection.
    double project(Wire w, int outcome);
    int measure(Wire w, std::mt19937_64& rng);
    void reset(Wire w, std::mt19937_64& rng);

    double norm() const;
    void check_norm(double tol = 1e-6) const;

  private:
    uint32_t width_;
    std::vector<Amplitude> amps_;
};

// --- quantum gate programs (used by the bootstrap increment) ---

struct QHadamard { Wire w; };
struct QPhase { Wire w; double theta; };
struct QCPhase { Wire c; Wire w; double theta; };
struct QSwap { Wire a; Wire b; };
using QInstr = std::variant<QHadamard, QPhase, QCPhase, QSwap>;

struct QuantumProgram {
    uint32_t width = 0;
    std::vector<QInstr> instrs;
};

void apply_program(const QuantumProgram& p, StateVector& sv);

/// Dense unitary of a program (column k = program applied to |k>).
std::vector<std::vector<Amplitude>> program_unitary(const QuantumProgram& p);

/// Ancilla-free quantum increment: +1 (mod 2^n) up to global phase, built
/// as a phase gradient conjugated by the Fourier transform (the gradient is
/// a column of single-qubit Z powers).
QuantumProgram quantum_increment_bootstrap(uint32_t n);

// --- semiclassical programs ---

struct SemiHadamard { Wire w; };
/// Rotation whose angle is a sum over previously recorded bits:
/// theta = sum_i record[term[i].first] * term[i].second.
struct SemiConditionalPhase {
    Wire w;
    std::vector<std::pair<uint32_t, double>> terms;
};
struct SemiMeasure { Wire w; uint32_t slot; };
struct SemiReset { Wire w; };
/// Precomputed classical block (a lowered circuit's permutation).
struct SemiPermute { uint32_t perm_index; };
/// Measures a register into record slots [slot, slot + wires.size()).
struct SemiMeasureRegister { std::vector<Wire> wires; uint32_t slot; };
/// Classically parametrized fixup: multiplies `target` by the factor read
/// from record slots (slot..slot+k-1) modulo r, using `partner` as the
/// second bimultiplication register.
struct SemiFixupMultiply {
    std::vector<Wire> target;
    std::vector<Wire> partner;
    uint64_t r = 0;
    uint32_t slot = 0;
    uint32_t slot_width = 0;
};
using SemiInstr = std::variant<SemiHadamard, SemiConditionalPhase, SemiMeasure, SemiReset,
                               SemiPermute, SemiMeasureRegister, SemiFixupMultiply>;

struct SemiProgram {
    uint32_t width = 0;
    uint32_t record_size = 0;
    std::vector<SemiInstr> instrs;
    std::vector<Permutation> permutations;
    /// Fixup permutations are built on demand per factor and cached.
    std::function<Permutation(uint64_t factor, const SemiFixupMultiply&)> fixup_builder;
};

struct SemiResult {
    std::vector<int> record;
    StateVector state;
};

/// Executes the program with pseudorandom measurement outcomes.
SemiResult run_semiclassical(const SemiProgram& p, uint64_t seed, uint64_t initial_state = 0);

/// Exact distribution over measurement records by enumerating both branches
/// of every measurement (branches below prob_cutoff are pruned). The
/// visitor receives each leaf's record, probability, and final state.
void enumerate_branches(const SemiProgram& p, uint64_t initial_state,
                        const std::function<void(const std::vector<int>&, double,
                                                 const StateVector&)>& visit,
                        double prob_cutoff = 1e-12);

} // namespace revarith
