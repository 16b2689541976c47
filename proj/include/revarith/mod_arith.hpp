#pragma once

// Modular constructions built from the non-modular core: bi-flips,
// pivot-flips, modular offset/addition/negation/doubling, modular
// scaled-addition, and modular bimultiplication. Modular operands always
// have size n = ceil(lg R); behavior on inputs >= R is unspecified but every
// circuit is still a permutation of the full space.

#include "revarith/arith.hpp"
#include "revarith/circuit.hpp"

#include <span>

namespace revarith {

/// Register size required for modulus r.
uint32_t mod_register_size(uint64_t r);

uint64_t mod_inverse(uint64_t k, uint64_t r); // throws when gcd(k, r) != 1

/// target <- ~(target - pivot) mod 2^m under controls; self-inverse and
/// preserves [target < pivot].
void bi_flip_const(CircuitBuilder& b, uint64_t pivot, const Register& target,
                   std::span<const Wire> controls = {});
void bi_flip_reg(CircuitBuilder& b, const Register& pivot, const Register& target,
                 std::span<const Wire> controls = {});

/// States below the pivot are reversed (i -> pivot-1-i), others fixed.
void pivot_flip_const(CircuitBuilder& b, uint64_t pivot, const Register& target,
                      std::span<const Wire> controls = {});
void pivot_flip_reg(CircuitBuilder& b, const Register& pivot, const Register& target,
                    std::span<const Wire> controls = {});

/// target <- target + k (mod r) for target < r, via pivot-flips at r-k, r, k.
/// With biflip_at_r the middle pivot-flip is replaced by the cheaper bi-flip
/// (valid because values >= r are unspecified).
void mod_offset(CircuitBuilder& b, uint64_t k, uint64_t r, const Register& target,
                std::span<const Wire> controls = {}, bool biflip_at_r = false);

/// target <- target + input (mod r) for input, target < r; input restored.
void mod_add_reg(CircuitBuilder& b, const Register& input, uint64_t r, const Register& target,
                 std::span<const Wire> controls = {});

/// target <- (r - target) mod r (0 is fixed).
void mod_negate(CircuitBuilder& b, uint64_t r, const Register& target,
                std::span<const Wire> controls = {});

/// target <- 2 * target (mod r); r must be odd.
void mod_double(CircuitBuilder& b, uint64_t r, const Register& target,
                std::span<const Wire> controls = {});
/// Inverse of mod_double.
void mod_halve(CircuitBuilder& b, uint64_t r, const Register& target,
               std::span<const Wire> controls = {});

/// y <- y + k*x (mod r); x preserved; r odd.
void mod_scale_add(CircuitBuilder& b, uint64_t k, uint64_t r, const Register& x,
                   const Register& y, std::span<const Wire> controls = {});

/// (x, y) -> (k*x mod r, k^-1*y mod r); requires gcd(k, r) = 1 (the build
/// error carries gcd(k, r), a factor of r).
void mod_bimultiply(CircuitBuilder& b, uint64_t k, uint64_t r, const Register& x,
                    const Register& y, std::span<const Wire> controls = {});

} // namespace revarith
