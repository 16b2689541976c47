#pragma once

// Non-modular constructions: adders, constant offsets, increments,
// comparisons, bit permutations, multi-nots, multi-control reduction, and
// the commutator controlling combinator. Everything emits plain X gates
// with 0..k controls into a builder; a final lower_mcx pass removes gates
// with more than two controls.

#include "revarith/circuit.hpp"

#include <functional>
#include <span>

namespace revarith {

/// Toggles every target iff all controls are on. One many-controlled X on
/// the first target, spread to the rest by toggle-controlled CNOT fan-out.
void multi_not(CircuitBuilder& b, std::span<const Wire> controls, const Register& targets);

/// Barenco-style reduction of one many-controlled X into exactly 4c-8
/// Toffolis (c >= 3), borrowing c-2 dirty wires outside the gate's support.
void emit_mcx_lowered(CircuitBuilder& b, std::span<const Wire> controls, Wire target);

/// Mandatory final pass: rewrites every gate with more than two controls.
Circuit lower_mcx_pass(Circuit circuit);

/// target += input (mod 2^m), input preserved; m >= n required. Subtraction
/// is the reversed circuit. Controls are added with the commutator
/// construction and one borrowed dirty LSB.
void add_reg(CircuitBuilder& b, const Register& input, const Register& target,
             std::span<const Wire> controls = {}, bool subtract = false);

/// target += k (mod 2^n) under controls. The uncontrolled form recurses on
/// register halves with a borrowed-carry chain (one dirty ancilla); the
/// controlled form wraps it in the commutator construction (two dirty).
void offset(CircuitBuilder& b, uint64_t k, const Register& target,
            std::span<const Wire> controls = {}, bool subtract = false);

/// Offset with up to three controls threaded into the recursion (the carry
/// toggles stay unconditional; controls ride on the increment pair); falls
/// back to the commutator wrapper beyond that. Cheaper on ancillae than the
/// public controlled offset, used inside bi-flips and pivot flips.
void offset_threaded(CircuitBuilder& b, uint64_t k, const Register& target,
                     std::span<const Wire> controls = {}, bool subtract = false);

/// flag ^= carry_out(x + k) over n bits, i.e. [x + k >= 2^n]. The toggle
/// gates (and only those) are additionally conditioned on toggle_controls.
void carry_toggle_const(CircuitBuilder& b, uint64_t k, const Register& x, Wire flag,
                        std::span<const Wire> toggle_controls = {},
                        bool borrow_from_top = false);

enum class IncrementForm {
    Auto,           // borrowed register when n dirty wires are free, else split
    BorrowedRegister, // double subtraction against a borrowed n-wire register
    SplitHalves,      // single dirty ancilla, low/high half split
};

/// target += 1 (mod 2^n) under controls. Requires at least one borrowable
/// wire for n >= 2 (an increment covering the whole pool is an odd
/// permutation and cannot be built from smaller classical gates).
void increment(CircuitBuilder& b, const Register& target, std::span<const Wire> controls = {},
               IncrementForm form = IncrementForm::Auto, bool borrow_from_top = false);
void decrement(CircuitBuilder& b, const Register& target, std::span<const Wire> controls = {},
               IncrementForm form = IncrementForm::Auto, bool borrow_from_top = false);

/// flag ^= [y < input] under controls; input and y preserved.
void compare_lt_toggle(CircuitBuilder& b, const Register& input, const Register& y, Wire flag,
                       std::span<const Wire> controls = {});
/// flag ^= [y < k] under controls.
void compare_lt_toggle_const(CircuitBuilder& b, uint64_t k, const Register& y, Wire flag,
                             std::span<const Wire> controls = {});

/// Swaps bit i with bit n-1-i under controls; no ancillae.
void bit_reverse(CircuitBuilder& b, const Register& target, std::span<const Wire> controls = {});
/// Left-rotates bit positions by shift under controls: three bit-reverses.
void bit_rotate(CircuitBuilder& b, const Register& target, uint32_t shift,
                std::span<const Wire> controls = {});

/// Emits the controlled-U sequence G . H_c . G^-1 . H_c for caller-supplied
/// G (with G^2 = U) and self-inverse H satisfying H G H = G^-1. Only H
/// receives the controls. Temporal emission order: H_c, G^-1, H_c, G.
void control_via_commutator(CircuitBuilder& b,
                            const std::function<void(bool inverse)>& emit_g,
                            const std::function<void(std::span<const Wire>)>& emit_h,
                            std::span<const Wire> controls);

} // namespace revarith
