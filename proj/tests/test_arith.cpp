#include "revarith/arith.hpp"
#include "revarith/gatelist.hpp"
#include "revarith/lowering.hpp"
#include "revarith/sim.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace revarith;
using namespace revarith::testing;

namespace {

uint64_t mask_bits(uint32_t n) { return n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1; }

} // namespace

TEST_CASE("multi_not toggles targets iff all controls on") {
    // c = 0: plain NOT on every target.
    {
        Pool p;
        Register t = p.reg(3);
        check_op(3, [&](CircuitBuilder& b) { multi_not(b, {}, t); },
                 [&](BasisState s) { return s ^ 0b111; });
    }
    // c = 2, 3 targets.
    {
        Pool p;
        Register t = p.reg(3);
        auto cs = p.wires(2);
        check_op(5,
                 [&](CircuitBuilder& b) { multi_not(b, cs, t); },
                 [&](BasisState s) { return controls_on(s, cs) ? s ^ 0b111 : s; });
    }
}

TEST_CASE("multi_not lowered gate count") {
    // One |c|-controlled X on the first target spread by CNOT pairs:
    // 2(t-1) CNOTs plus the Barenco cost of the head MCX.
    for (uint32_t c : {3u, 5u}) {
        for (uint32_t t : {2u, 4u}) {
            uint32_t width = c + t + (c - 2);
            CircuitBuilder b(width);
            Register targets = Register::range(0, t);
            std::vector<Wire> controls;
            for (uint32_t i = 0; i < c; ++i) controls.push_back(t + i);
            multi_not(b, controls, targets);
            Circuit lowered = lower_mcx_pass(b.take());
            ResourceReport r = measure_resources(lowered);
            CHECK(r.cnot_count == 2 * (t - 1));
            CHECK(r.toffoli_count == 4 * c - 8);
        }
    }
}

TEST_CASE("lower_mcx emits exactly 4c-8 Toffolis") {
    for (uint32_t c = 3; c <= 12; ++c) {
        uint32_t width = c + 1 + (c - 2);
        CircuitBuilder b(width);
        std::vector<Wire> controls;
        for (uint32_t i = 0; i < c; ++i) controls.push_back(i);
        emit_mcx_lowered(b, controls, c);
        Circuit circ = b.take();
        CHECK(circ.gates.size() == 4 * c - 8);
        CHECK(circ.count_with_controls(2) == 4 * c - 8);
    }
    // c = 2 passes through as a single Toffoli.
    CircuitBuilder b(3);
    emit_mcx_lowered(b, std::vector<Wire>{0, 1}, 2);
    CHECK(b.take().gates.size() == 1);
}

TEST_CASE("lowered MCX equals a multi-controlled X for all dirty values") {
    for (uint32_t c : {3u, 4u, 5u}) {
        uint32_t width = c + 1 + (c - 2); // controls, target, borrowable
        std::vector<Wire> controls;
        for (uint32_t i = 0; i < c; ++i) controls.push_back(i);
        Wire target = c;
        check_op(width,
                 [&](CircuitBuilder& b) { b.emit_mcx(controls, target); },
                 [&](BasisState s) {
                     return controls_on(s, controls) ? s ^ (uint64_t{1} << target) : s;
                 });
    }
}

TEST_CASE("same-size adder matches oracle exhaustively") {
    for (uint32_t n = 1; n <= 4; ++n) {
        Pool p;
        Register a = p.reg(n);
        Register t = p.reg(n);
        check_op(2 * n,
                 [&](CircuitBuilder& b) { add_reg(b, a, t); },
                 [&](BasisState s) {
                     uint64_t av = read_register(a, s);
                     uint64_t tv = read_register(t, s);
                     return write_register(t, s, (tv + av) & mask_bits(n));
                 });
    }
}

TEST_CASE("adder into larger target") {
    struct Case {
        uint32_t n, m;
    };
    for (Case c : {Case{2, 3}, Case{3, 4}, Case{1, 3}, Case{2, 4}, Case{2, 5}}) {
        Pool p;
        Register a = p.reg(c.n);
        Register t = p.reg(c.m);
        uint32_t extra = (c.m > c.n + 1) ? (c.m - c.n) : 0;
        uint32_t width = c.n + c.m + extra;
        check_op(width,
                 [&](CircuitBuilder& b) { add_reg(b, a, t); },
                 [&](BasisState s) {
                     uint64_t av = read_register(a, s);
                     uint64_t tv = read_register(t, s);
                     return write_register(t, s, (tv + av) & mask_bits(c.m));
                 });
    }
}

TEST_CASE("adder worked examples") {
    // n=m=3: A=3, target=6 -> 1
    {
        Pool p;
        Register a = p.reg(3);
        Register t = p.reg(3);
        CircuitBuilder b(6);
        add_reg(b, a, t);
        Circuit c = lower_mcx_pass(b.take());
        BasisState in = write_register(t, write_register(a, 0, 3), 6);
        BasisState out = run_classical(c, in);
        CHECK(read_register(t, out) == 1);
        CHECK(read_register(a, out) == 3);
    }
    // n=2, m=4: A=3, target=14 -> 1
    {
        Pool p;
        Register a = p.reg(2);
        Register t = p.reg(4);
        CircuitBuilder b(8);
        add_reg(b, a, t);
        Circuit c = lower_mcx_pass(b.take());
        BasisState in = write_register(t, write_register(a, 0, 3), 14);
        BasisState out = run_classical(c, in);
        CHECK(read_register(t, out) == 1);
        CHECK(read_register(a, out) == 3);
    }
}

TEST_CASE("adder rejects narrower targets") {
    Pool p;
    Register a = p.reg(3);
    Register t = p.reg(2);
    CircuitBuilder b(5);
    CHECK_THROWS_AS(add_reg(b, a, t), BuildError);
}

TEST_CASE("controlled adder") {
    for (uint32_t nc : {1u, 2u}) {
        Pool p;
        Register a = p.reg(3);
        Register t = p.reg(3);
        Wire d = p.wire(); // room for the commutator's dirty LSB
        (void)d;
        auto cs = p.wires(nc);
        check_op(7 + nc,
                 [&](CircuitBuilder& b) { add_reg(b, a, t, cs); },
                 [&](BasisState s) {
                     if (!controls_on(s, cs)) return s;
                     uint64_t av = read_register(a, s);
                     uint64_t tv = read_register(t, s);
                     return write_register(t, s, (tv + av) & 7);
                 });
    }
}

TEST_CASE("controlled subtraction") {
    Pool p;
    Register a = p.reg(3);
    Register t = p.reg(3);
    Wire d = p.wire();
    (void)d;
    auto cs = p.wires(1);
    check_op(8,
             [&](CircuitBuilder& b) { add_reg(b, a, t, cs, /*subtract=*/true); },
             [&](BasisState s) {
                 if (!controls_on(s, cs)) return s;
                 uint64_t av = read_register(a, s);
                 uint64_t tv = read_register(t, s);
                 return write_register(t, s, (tv - av) & 7);
             });
}

TEST_CASE("carry_toggle_const matches carry oracle") {
    for (uint32_t n = 1; n <= 5; ++n) {
        for (uint64_t k = 1; k < (uint64_t{1} << n); ++k) {
            Pool p;
            Register x = p.reg(n);
            Wire flag = p.wire();
            uint32_t chain = n >= 3 ? n - 2 : 0;
            uint32_t width = n + 1 + chain;
            check_op(width,
                     [&](CircuitBuilder& b) { carry_toggle_const(b, k, x, flag); },
                     [&](BasisState s) {
                         uint64_t xv = read_register(x, s);
                         bool carry = xv + k >= (uint64_t{1} << n);
                         return carry ? s ^ (uint64_t{1} << flag) : s;
                     });
        }
    }
}

TEST_CASE("offset matches oracle exhaustively with dirty sweep") {
    for (uint32_t n = 1; n <= 5; ++n) {
        for (uint64_t k = 0; k < (uint64_t{1} << n); ++k) {
            Pool p;
            Register t = p.reg(n);
            p.wire(); // one borrowable dirty wire
            uint32_t width = n + 1;
            check_op(width,
                     [&](CircuitBuilder& b) { offset(b, k, t); },
                     [&](BasisState s) {
                         uint64_t tv = read_register(t, s);
                         return write_register(t, s, (tv + k) & mask_bits(n));
                     });
        }
    }
}

TEST_CASE("offset worked examples") {
    // n=4, K=5: 13 -> 2
    Pool p;
    Register t = p.reg(4);
    p.wire();
    CircuitBuilder b(5);
    offset(b, 5, t);
    Circuit c = lower_mcx_pass(b.take());
    BasisState out = run_classical(c, write_register(t, 0, 13));
    CHECK(read_register(t, out) == 2);

    // K=0 emits nothing.
    CircuitBuilder b2(5);
    offset(b2, 0, t);
    CHECK(b2.take().gates.empty());
}

TEST_CASE("controlled offset via commutator") {
    for (uint32_t nc : {1u, 2u}) {
        for (uint64_t k : {1ull, 3ull, 7ull, 11ull}) {
            Pool p;
            Register t = p.reg(4);
            p.wires(2); // commutator LSB + inner carry wire
            auto cs = p.wires(nc);
            check_op(6 + nc,
                     [&](CircuitBuilder& b) { offset(b, k, t, cs); },
                     [&](BasisState s) {
                         if (!controls_on(s, cs)) return s;
                         uint64_t tv = read_register(t, s);
                         return write_register(t, s, (tv + k) & 15);
                     });
        }
    }
}

TEST_CASE("controlled offset worked example: K=3, target 2 -> 5") {
    Pool p;
    Register t = p.reg(4);
    p.wires(2);
    Wire c = p.wire();
    CircuitBuilder b(7);
    offset(b, 3, t, {&c, 1});
    Circuit circ = lower_mcx_pass(b.take());
    BasisState in = write_register(t, 0, 2) | (uint64_t{1} << c);
    BasisState out = run_classical(circ, in);
    CHECK(read_register(t, out) == 5);
    CHECK(((out >> c) & 1) == 1);
}

TEST_CASE("controlled offset uses exactly two dirty borrows") {
    // Layout: target, extras, control; the top-level support excludes the
    // extras so the ledger counts d and g.
    Pool p;
    Register t = p.reg(4);
    p.wires(2);
    Wire c = p.wire();
    CircuitBuilder b(7);
    WireMask support(7);
    support.add(t);
    support.add(c);
    b.set_top_support(support);
    offset(b, 3, t, {&c, 1});
    Circuit circ = b.take();
    CHECK(circ.ledger.dirty_highwater == 2);
}

TEST_CASE("uncontrolled offset uses one dirty borrow") {
    Pool p;
    Register t = p.reg(5);
    p.wire();
    CircuitBuilder b(6);
    WireMask support(6);
    support.add(t);
    b.set_top_support(support);
    offset(b, 11, t);
    Circuit circ = b.take();
    CHECK(circ.ledger.dirty_highwater == 1);
}

TEST_CASE("increment both forms match oracle") {
    for (IncrementForm form : {IncrementForm::BorrowedRegister, IncrementForm::SplitHalves}) {
        for (uint32_t n = 2; n <= 5; ++n) {
            Pool p;
            Register t = p.reg(n);
            uint32_t extras = form == IncrementForm::BorrowedRegister ? n : 1;
            p.wires(extras);
            check_op(n + extras,
                     [&](CircuitBuilder& b) { increment(b, t, {}, form); },
                     [&](BasisState s) {
                         uint64_t tv = read_register(t, s);
                         return write_register(t, s, (tv + 1) & mask_bits(n));
                     });
        }
    }
}

TEST_CASE("controlled increment and decrement") {
    for (uint32_t n : {3u, 4u}) {
        Pool p;
        Register t = p.reg(n);
        p.wire();
        auto cs = p.wires(1);
        check_op(n + 2,
                 [&](CircuitBuilder& b) { increment(b, t, cs, IncrementForm::SplitHalves); },
                 [&](BasisState s) {
                     if (!controls_on(s, cs)) return s;
                     uint64_t tv = read_register(t, s);
                     return write_register(t, s, (tv + 1) & mask_bits(n));
                 });
        check_op(n + 2,
                 [&](CircuitBuilder& b) { decrement(b, t, cs, IncrementForm::SplitHalves); },
                 [&](BasisState s) {
                     if (!controls_on(s, cs)) return s;
                     uint64_t tv = read_register(t, s);
                     return write_register(t, s, (tv - 1) & mask_bits(n));
                 });
    }
}

TEST_CASE("increment wraps and refuses a full pool") {
    // n=3, target=7 -> 0.
    Pool p;
    Register t = p.reg(3);
    p.wire();
    CircuitBuilder b(4);
    increment(b, t);
    Circuit c = lower_mcx_pass(b.take());
    CHECK(read_register(t, run_classical(c, write_register(t, 0, 7))) == 0);

    // An increment covering every wire in the pool cannot be built.
    CircuitBuilder full(3);
    Register all = Register::range(0, 3);
    CHECK_THROWS_AS(increment(full, all), BuildError);
}

TEST_CASE("comparison toggles flag for y < A") {
    Pool p;
    Register a = p.reg(3);
    Register y = p.reg(3);
    Wire flag = p.wire();
    check_op(7,
             [&](CircuitBuilder& b) { compare_lt_toggle(b, a, y, flag); },
             [&](BasisState s) {
                 uint64_t av = read_register(a, s);
                 uint64_t yv = read_register(y, s);
                 return yv < av ? s ^ (uint64_t{1} << flag) : s;
             });
}

TEST_CASE("controlled comparison with dirty sweep") {
    Pool p;
    Register a = p.reg(3);
    Register y = p.reg(3);
    Wire flag = p.wire();
    p.wire(); // spare dirty wire, swept
    auto cs = p.wires(1);
    check_op(9,
             [&](CircuitBuilder& b) { compare_lt_toggle(b, a, y, flag, cs); },
             [&](BasisState s) {
                 if (!controls_on(s, cs)) return s;
                 uint64_t av = read_register(a, s);
                 uint64_t yv = read_register(y, s);
                 return yv < av ? s ^ (uint64_t{1} << flag) : s;
             });
}

TEST_CASE("comparison against a wider target") {
    Pool p;
    Register a = p.reg(2);
    Register y = p.reg(4);
    Wire flag = p.wire();
    check_op(7,
             [&](CircuitBuilder& b) { compare_lt_toggle(b, a, y, flag); },
             [&](BasisState s) {
                 uint64_t av = read_register(a, s);
                 uint64_t yv = read_register(y, s);
                 return yv < av ? s ^ (uint64_t{1} << flag) : s;
             });
}

TEST_CASE("constant comparison") {
    for (uint64_t k = 0; k <= 8; ++k) {
        Pool p;
        Register y = p.reg(3);
        Wire flag = p.wire();
        p.wire(); // chain space
        check_op(5,
                 [&](CircuitBuilder& b) { compare_lt_toggle_const(b, k, y, flag); },
                 [&](BasisState s) {
                     uint64_t yv = read_register(y, s);
                     return yv < k ? s ^ (uint64_t{1} << flag) : s;
                 });
    }
    // Controlled.
    Pool p;
    Register y = p.reg(3);
    Wire flag = p.wire();
    p.wire();
    auto cs = p.wires(1);
    check_op(6,
             [&](CircuitBuilder& b) { compare_lt_toggle_const(b, 5, y, flag, cs); },
             [&](BasisState s) {
                 if (!controls_on(s, cs)) return s;
                 uint64_t yv = read_register(y, s);
                 return yv < 5 ? s ^ (uint64_t{1} << flag) : s;
             });
}

TEST_CASE("comparison worked examples") {
    Pool p;
    Register a = p.reg(3);
    Register y = p.reg(3);
    Wire flag = p.wire();
    CircuitBuilder b(7);
    compare_lt_toggle(b, a, y, flag);
    Circuit c = lower_mcx_pass(b.take());

    BasisState in = write_register(y, write_register(a, 0, 5), 3);
    CHECK(((run_classical(c, in) >> flag) & 1) == 1); // 3 < 5

    in = write_register(y, write_register(a, 0, 3), 3);
    CHECK(((run_classical(c, in) >> flag) & 1) == 0); // not strictly less
}

TEST_CASE("bit_reverse reverses bit order") {
    for (uint32_t n : {4u, 5u}) {
        Pool p;
        Register t = p.reg(n);
        check_op(n,
                 [&](CircuitBuilder& b) { bit_reverse(b, t); },
                 [&](BasisState s) {
                     uint64_t v = read_register(t, s);
                     uint64_t r = 0;
                     for (uint32_t i = 0; i < n; ++i) r |= ((v >> i) & 1) << (n - 1 - i);
                     return write_register(t, s, r);
                 });
    }
    // Controlled, both control values swept by the oracle harness.
    Pool p;
    Register t = p.reg(4);
    auto cs = p.wires(1);
    check_op(5,
             [&](CircuitBuilder& b) { bit_reverse(b, t, cs); },
             [&](BasisState s) {
                 if (!controls_on(s, cs)) return s;
                 uint64_t v = read_register(t, s);
                 uint64_t r = 0;
                 for (uint32_t i = 0; i < 4; ++i) r |= ((v >> i) & 1) << (3 - i);
                 return write_register(t, s, r);
             });
}

TEST_CASE("bit_rotate left-rotates bit positions") {
    for (uint32_t shift = 0; shift < 4; ++shift) {
        Pool p;
        Register t = p.reg(4);
        auto cs = p.wires(1);
        check_op(5,
                 [&](CircuitBuilder& b) { bit_rotate(b, t, shift, cs); },
                 [&](BasisState s) {
                     if (!controls_on(s, cs)) return s;
                     uint64_t v = read_register(t, s);
                     uint64_t r = shift == 0
                                      ? v
                                      : (((v << shift) | (v >> (4 - shift))) & 15);
                     return write_register(t, s, r);
                 });
    }
}

TEST_CASE("same-size adder stays linear") {
    for (uint32_t n : {8u, 16u, 32u, 64u}) {
        CircuitBuilder b(2 * n);
        add_reg(b, Register::range(0, n), Register::range(n, n));
        Circuit c = lower_mcx_pass(b.take());
        CHECK(c.gates.size() <= 7 * n);
    }
}

TEST_CASE("offset stays within n lg n") {
    for (uint32_t n : {8u, 16u, 32u, 64u}) {
        CircuitBuilder b(n + 1);
        offset(b, 0x5a5a5a5a5a5a5a5aull, Register::range(0, n));
        Circuit c = lower_mcx_pass(b.take());
        double bound = 40.0 * n * std::log2(double(n));
        CHECK(double(c.gates.size()) <= bound);
    }
}

TEST_CASE("lowering is deterministic") {
    auto build = [] {
        CircuitBuilder b(9);
        Register t = Register::range(0, 4);
        Wire c0 = 6;
        offset(b, 11, t, {&c0, 1});
        return serialize_gatelist(lower_mcx_pass(b.take()));
    };
    CHECK(build() == build());
}
