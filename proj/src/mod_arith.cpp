#include "revarith/mod_arith.hpp"

#include <numeric>
#include <vector>

namespace revarith {

namespace {

uint64_t mask_bits(uint32_t n) { return n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1; }

void check_mod_operand(uint64_t r, const Register& reg) {
    if (r < 2) throw BuildError(BuildError::Kind::InvalidParams, "modulus must be at least 2");
    if (reg.size() != mod_register_size(r))
        throw BuildError(BuildError::Kind::InvalidParams,
                         "modular operand must have size ceil(lg R)");
}

std::vector<Wire> join(std::span<const Wire> a, Wire w) {
    std::vector<Wire> out(a.begin(), a.end());
    out.push_back(w);
    return out;
}

} // namespace

uint32_t mod_register_size(uint64_t r) {
    uint32_t n = 0;
    while (n < 64 && (uint64_t{1} << n) < r) ++n;
    return n;
}

uint64_t mod_inverse(uint64_t k, uint64_t r) {
    long long t = 0, new_t = 1;
    long long rr = static_cast<long long>(r), new_r = static_cast<long long>(k % r);
    while (new_r != 0) {
        long long q = rr / new_r;
        std::swap(t -= q * new_t, new_t);
        std::swap(rr -= q * new_r, new_r);
    }
    if (rr != 1)
        throw BuildError(BuildError::Kind::InvalidParams,
                         "multiplier has no inverse modulo R", rr);
    return static_cast<uint64_t>(t < 0 ? t + static_cast<long long>(r) : t);
}

void bi_flip_const(CircuitBuilder& b, uint64_t pivot, const Register& target,
                   std::span<const Wire> controls) {
    uint32_t m = target.size();
    pivot &= mask_bits(m);
    offset_threaded(b, pivot, target, controls, /*subtract=*/true);
    multi_not(b, controls, target);
}

void bi_flip_reg(CircuitBuilder& b, const Register& pivot, const Register& target,
                 std::span<const Wire> controls) {
    if (pivot.size() > target.size())
        throw BuildError(BuildError::Kind::InvalidParams,
                         "bi-flip pivot register larger than target");
    add_reg(b, pivot, target, controls, /*subtract=*/true);
    multi_not(b, controls, target);
}

namespace {

// Shared pivot-flip skeleton: toggle-controlled bi-flips interleaved with
// comparisons of the target against the pivot, written onto a borrowed
// wire. The bi-flip preserves [target < pivot], so the second comparison
// restores the toggle wire. A spurious bi-flip pair from a dirty toggle
// wire cancels itself. The operation's own controls go on either the
// comparison taps or the bi-flips; both only fire the net flip when all
// controls are on.
template <typename Compare, typename BiFlip>
void pivot_flip_skeleton(CircuitBuilder& b, const WireMask& support, Compare&& compare,
                         BiFlip&& bi_flip) {
    DirtyBorrow w(b, 1, support);
    compare(w[0]);
    bi_flip(w[0]);
    compare(w[0]);
    bi_flip(w[0]);
}

} // namespace

void pivot_flip_const(CircuitBuilder& b, uint64_t pivot, const Register& target,
                      std::span<const Wire> controls) {
    uint32_t m = target.size();
    if (m < 64 && pivot > (uint64_t{1} << m))
        throw BuildError(BuildError::Kind::InvalidParams, "pivot exceeds register range");
    if (pivot <= 1) return; // flipping zero or one states is the identity
    WireMask support(b.width());
    support.add(target);
    support.add(controls);
    // Constant-pivot comparisons are the expensive half, so they run
    // unconditionally and the controls ride on the bi-flips.
    pivot_flip_skeleton(
        b, support,
        [&](Wire w) { compare_lt_toggle_const(b, pivot, target, w, {}); },
        [&](Wire w) { bi_flip_const(b, pivot, target, join(controls, w)); });
}

void pivot_flip_reg(CircuitBuilder& b, const Register& pivot, const Register& target,
                    std::span<const Wire> controls) {
    if (pivot.size() > target.size())
        throw BuildError(BuildError::Kind::InvalidParams,
                         "pivot register larger than target");
    WireMask support(b.width());
    support.add(pivot);
    support.add(target);
    support.add(controls);
    // Register comparisons are cheap (two extra carry taps), so the
    // controls condition them, leaving the bi-flips free to borrow the
    // control wires for their commutator ancilla.
    pivot_flip_skeleton(
        b, support,
        [&](Wire w) { compare_lt_toggle(b, pivot, target, w, controls); },
        [&](Wire w) { bi_flip_reg(b, pivot, target, {&w, 1}); });
}

void mod_offset(CircuitBuilder& b, uint64_t k, uint64_t r, const Register& target,
                std::span<const Wire> controls, bool biflip_at_r) {
    check_mod_operand(r, target);
    if (k >= r)
        throw BuildError(BuildError::Kind::InvalidParams, "mod_offset requires K < R");
    if (k == 0) return;
    pivot_flip_const(b, r - k, target, controls);
    if (biflip_at_r)
        bi_flip_const(b, r, target, controls);
    else
        pivot_flip_const(b, r, target, controls);
    pivot_flip_const(b, k, target, controls);
}

void mod_add_reg(CircuitBuilder& b, const Register& input, uint64_t r, const Register& target,
                 std::span<const Wire> controls) {
    check_mod_operand(r, target);
    check_mod_operand(r, input);
    uint32_t n = target.size();

    // Form the R-A pivot in place on the input: ~A + (R+1) = R - A (mod 2^n).
    auto transform_input = [&] {
        for (Wire w : input.wires()) b.emit_x(w);
        offset_threaded(b, (r + 1) & mask_bits(n), input, {});
    };
    transform_input();
    pivot_flip_reg(b, input, target, controls);
    b.reverse_scope(transform_input);

    pivot_flip_const(b, r, target, controls);
    pivot_flip_reg(b, input, target, controls);
}

void mod_negate(CircuitBuilder& b, uint64_t r, const Register& target,
                std::span<const Wire> controls) {
    check_mod_operand(r, target);
    // Move |0> out of the way with a decrement, flip below R-1, undo.
    decrement(b, target, {});
    pivot_flip_const(b, r - 1, target, controls);
    increment(b, target, {});
}

void mod_double(CircuitBuilder& b, uint64_t r, const Register& target,
                std::span<const Wire> controls) {
    check_mod_operand(r, target);
    if (r % 2 == 0)
        throw BuildError(BuildError::Kind::InvalidParams, "modular doubling requires odd R");
    uint32_t n = target.size();
    if (n == 1) return; // r == 2 is rejected above; n == 1 only for r == 2

    uint64_t half = (r + 1) / 2;
    // Align both valid halves, fix their order, then interleave with a
    // one-bit left rotation.
    offset_threaded(b, half, target, controls, /*subtract=*/true);
    Wire msb = target[n - 1];
    offset_threaded(b, half & mask_bits(n - 1), target.low(n - 1), join(controls, msb));
    b.emit_mcx(controls, msb);
    bit_rotate(b, target, 1, controls);
}

void mod_halve(CircuitBuilder& b, uint64_t r, const Register& target,
               std::span<const Wire> controls) {
    b.reverse_scope([&] { mod_double(b, r, target, controls); });
}

void mod_scale_add(CircuitBuilder& b, uint64_t k, uint64_t r, const Register& x,
                   const Register& y, std::span<const Wire> controls) {
    check_mod_operand(r, x);
    check_mod_operand(r, y);
    if (r % 2 == 0)
        throw BuildError(BuildError::Kind::InvalidParams, "mod_scale_add requires odd R");
    k %= r;
    uint32_t n = x.size();

    // Shift-and-add: n-1 halvings, then per input bit (MSB first) a doubling
    // and a conditional offset. The doublings/halvings cancel when the
    // conditional offsets never fire. Values at or above R never matter
    // here, so the offsets run with the bi-flip-at-R shortcut.
    for (uint32_t i = 0; i + 1 < n; ++i) mod_halve(b, r, y, {});
    for (uint32_t j = n - 1;; --j) {
        if (j != n - 1) mod_double(b, r, y, {});
        if (k != 0) mod_offset(b, k, r, y, join(controls, x[j]), /*biflip_at_r=*/true);
        if (j == 0) break;
    }
}

void mod_bimultiply(CircuitBuilder& b, uint64_t k, uint64_t r, const Register& x,
                    const Register& y, std::span<const Wire> controls) {
    check_mod_operand(r, x);
    check_mod_operand(r, y);
    k %= r;
    uint64_t g = std::gcd(k, r);
    if (g != 1)
        throw BuildError(BuildError::Kind::InvalidParams,
                         "bimultiplication factor shares a divisor with R",
                         static_cast<long long>(g));
    uint64_t k_inv = mod_inverse(k, r);

    mod_scale_add(b, k, r, x, y, controls);                 // (x, y+Kx)
    mod_scale_add(b, (r - k_inv) % r, r, y, x, controls);   // (-K^-1 y, y+Kx)
    mod_scale_add(b, k, r, x, y, controls);                 // (-K^-1 y, Kx)
    for (uint32_t i = 0; i < x.size(); ++i) {               // swap halves
        b.emit_cx(y[i], x[i]);
        b.emit_mcx(join(controls, x[i]), y[i]);
        b.emit_cx(y[i], x[i]);
    }
    mod_negate(b, r, y, controls);                          // (Kx, K^-1 y)
}

} // namespace revarith
