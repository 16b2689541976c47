#include "revarith/arith.hpp"

#include <algorithm>
#include <vector>

namespace revarith {

namespace {

uint64_t mask_bits(uint32_t n) { return n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1; }

std::vector<Wire> join(std::span<const Wire> a, std::span<const Wire> b) {
    std::vector<Wire> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::vector<Wire> join(std::span<const Wire> a, Wire w) {
    std::vector<Wire> out(a.begin(), a.end());
    out.push_back(w);
    return out;
}

WireMask support_of(CircuitBuilder& b, std::initializer_list<const Register*> regs,
                    std::span<const Wire> controls) {
    WireMask m(b.width());
    for (const Register* r : regs) m.add(*r);
    m.add(controls);
    return m;
}

// Ripple adder using the input register as carry workspace.
// target += input (mod 2^n), input restored. 7n-8 gates, no ancillae.
void add_same_size(CircuitBuilder& b, const Register& a, const Register& t) {
    uint32_t n = a.size();
    if (n == 0) return;
    if (n == 1) {
        b.emit_cx(a[0], t[0]);
        return;
    }
    for (uint32_t i = 1; i < n; ++i) b.emit_cx(a[i], t[i]);
    for (uint32_t i = n - 2; i >= 1; --i) b.emit_cx(a[i], a[i + 1]);
    for (uint32_t i = 0; i + 1 < n; ++i) b.emit_ccx(a[i], t[i], a[i + 1]);
    for (uint32_t i = n - 1; i >= 1; --i) {
        b.emit_cx(a[i], t[i]);
        b.emit_ccx(a[i - 1], t[i - 1], a[i]);
    }
    for (uint32_t i = 1; i + 1 < n; ++i) b.emit_cx(a[i], a[i + 1]);
    for (uint32_t i = 0; i < n; ++i) b.emit_cx(a[i], t[i]);
}

} // namespace

namespace detail {

// target += input with |target| == |input| + 1: the same ripple plus two
// taps that deliver the carry into the top target wire. carry_controls
// condition only the taps; with them off the low part still adds (and is
// undone by the matching subtraction in comparison circuits).
void add_h1(CircuitBuilder& b, const Register& a, const Register& t,
            std::span<const Wire> carry_controls) {
    uint32_t n = a.size();
    if (n == 0) return;
    Wire top = t[n];
    if (n == 1) {
        std::vector<Wire> cc = join(carry_controls, a[0]);
        cc.push_back(t[0]);
        b.emit_mcx(cc, top);   // carry = a0 & t0
        b.emit_cx(a[0], t[0]); // sum
        return;
    }
    for (uint32_t i = 1; i < n; ++i) b.emit_cx(a[i], t[i]);
    b.emit_mcx(join(carry_controls, a[n - 1]), top);
    for (uint32_t i = n - 2; i >= 1; --i) b.emit_cx(a[i], a[i + 1]);
    for (uint32_t i = 0; i + 1 < n; ++i) b.emit_ccx(a[i], t[i], a[i + 1]);
    {
        std::vector<Wire> cc = join(carry_controls, a[n - 1]);
        cc.push_back(t[n - 1]);
        b.emit_mcx(cc, top);
    }
    for (uint32_t i = n - 1; i >= 1; --i) {
        b.emit_cx(a[i], t[i]);
        b.emit_ccx(a[i - 1], t[i - 1], a[i]);
    }
    for (uint32_t i = 1; i + 1 < n; ++i) b.emit_cx(a[i], a[i + 1]);
    for (uint32_t i = 0; i < n; ++i) b.emit_cx(a[i], t[i]);
}

// target += input for |target| >= |input| + 2: pad the input with borrowed
// dirty wires up to target size, add, then cancel the padding's value with
// a same-size subtraction on the high target part.
void add_into_larger(CircuitBuilder& b, const Register& a, const Register& t) {
    uint32_t n = a.size();
    uint32_t m = t.size();
    WireMask excl = support_of(b, {&a, &t}, {});
    DirtyBorrow pad(b, m - n, excl);
    Register pad_reg{std::vector<Wire>(pad.wires())};
    add_same_size(b, a.concat(pad_reg), t);
    b.reverse_scope([&] { add_same_size(b, pad_reg, t.high_from(n)); });
}

void add_uncontrolled(CircuitBuilder& b, const Register& a, const Register& t) {
    if (t.size() == a.size())
        add_same_size(b, a, t);
    else if (t.size() == a.size() + 1)
        add_h1(b, a, t, {});
    else
        add_into_larger(b, a, t);
}

} // namespace detail

void multi_not(CircuitBuilder& b, std::span<const Wire> controls, const Register& targets) {
    if (targets.empty())
        throw BuildError(BuildError::Kind::InvalidParams, "multi_not requires targets");
    if (controls.empty()) {
        for (Wire w : targets.wires()) b.emit_x(w);
        return;
    }
    if (controls.size() == 1) {
        for (Wire w : targets.wires()) b.emit_cx(controls[0], w);
        return;
    }
    if (targets.size() == 1) {
        b.emit_mcx(controls, targets[0]);
        return;
    }
    Wire head = targets[0];
    for (uint32_t i = 1; i < targets.size(); ++i) b.emit_cx(head, targets[i]);
    b.emit_mcx(controls, head);
    for (uint32_t i = 1; i < targets.size(); ++i) b.emit_cx(head, targets[i]);
}

void emit_mcx_lowered(CircuitBuilder& b, std::span<const Wire> controls, Wire target) {
    uint32_t c = static_cast<uint32_t>(controls.size());
    if (c <= 2) {
        b.emit_mcx(controls, target);
        return;
    }
    WireMask excl(b.width());
    excl.add(controls);
    excl.add(target);

    bool have_chain = true;
    try {
        DirtyBorrow probe(b, c - 2, excl);
    } catch (const BuildError&) {
        have_chain = false;
    }
    if (!have_chain) {
        // Tight pool: halve the control set around one borrowed toggle wire
        // (costs about twice as many Toffolis as the full chain).
        DirtyBorrow a(b, 1, excl);
        uint32_t half = (c + 1) / 2;
        std::vector<Wire> first(controls.begin(), controls.begin() + half);
        std::vector<Wire> rest(controls.begin() + half, controls.end());
        rest.push_back(a[0]);
        emit_mcx_lowered(b, rest, target);
        emit_mcx_lowered(b, first, a[0]);
        emit_mcx_lowered(b, rest, target);
        emit_mcx_lowered(b, first, a[0]);
        return;
    }

    DirtyBorrow anc(b, c - 2, excl);

    // The V-chain: down[0] = CCX(k_{c-1}, anc_{c-3}, target), then
    // down[j] = CCX(k_{c-1-j}, anc_{c-3-j}, anc_{c-2-j}), and the bottom
    // gate CCX(k_0, k_1, anc_0). Sequence totals 4c-8 Toffolis and restores
    // the ancillae for every initial value.
    auto down = [&](uint32_t j) {
        if (j == 0)
            b.emit_ccx(controls[c - 1], anc[c - 3], target);
        else
            b.emit_ccx(controls[c - 1 - j], anc[c - 3 - j], anc[c - 2 - j]);
    };
    auto bottom = [&] { b.emit_ccx(controls[0], controls[1], anc[0]); };

    for (uint32_t j = 0; j <= c - 3; ++j) down(j);
    bottom();
    for (uint32_t j = c - 3;; --j) {
        down(j);
        if (j == 0) break;
    }
    for (uint32_t j = 1; j <= c - 3; ++j) down(j);
    bottom();
    for (uint32_t j = c - 3; j >= 1; --j) down(j);
}

Circuit lower_mcx_pass(Circuit circuit) {
    if (circuit.is_lowered()) return circuit;
    CircuitBuilder b(circuit.width);
    for (const Gate& g : circuit.gates) {
        auto cs = circuit.controls(g);
        if (g.num_controls <= 2)
            b.emit_mcx(cs, g.target);
        else
            emit_mcx_lowered(b, cs, g.target);
    }
    Circuit out = b.take();
    out.ledger.clean_highwater =
        std::max(out.ledger.clean_highwater, circuit.ledger.clean_highwater);
    out.ledger.dirty_highwater =
        std::max(out.ledger.dirty_highwater, circuit.ledger.dirty_highwater);
    return out;
}

void control_via_commutator(CircuitBuilder&,
                            const std::function<void(bool inverse)>& emit_g,
                            const std::function<void(std::span<const Wire>)>& emit_h,
                            std::span<const Wire> controls) {
    emit_h(controls);
    emit_g(true);
    emit_h(controls);
    emit_g(false);
}

void add_reg(CircuitBuilder& b, const Register& input, const Register& target,
             std::span<const Wire> controls, bool subtract) {
    if (target.size() < input.size())
        throw BuildError(BuildError::Kind::InvalidParams,
                         "add_reg: target must be at least as large as input");
    if (input.empty()) return;
    if (controls.empty()) {
        if (subtract)
            b.reverse_scope([&] { detail::add_uncontrolled(b, input, target); });
        else
            detail::add_uncontrolled(b, input, target);
        return;
    }
    // Prepend a dirty LSB so the commutator's doubled addition lands as a
    // single addition on the real target.
    WireMask excl = support_of(b, {&input, &target}, controls);
    DirtyBorrow d(b, 1, excl);
    Register ext = target.with_lsb(d[0]);
    control_via_commutator(
        b,
        [&](bool inverse) {
            bool sub = subtract ? !inverse : inverse;
            if (sub)
                b.reverse_scope([&] { detail::add_uncontrolled(b, input, ext); });
            else
                detail::add_uncontrolled(b, input, ext);
        },
        [&](std::span<const Wire> cs) { multi_not(b, cs, ext); }, controls);
}

void carry_toggle_const(CircuitBuilder& b, uint64_t k, const Register& x, Wire flag,
                        std::span<const Wire> toggle_controls, bool borrow_from_top) {
    uint32_t n = x.size();
    k &= mask_bits(n);
    if (k == 0 || n == 0) return;
    if (n == 1) {
        b.emit_mcx(join(toggle_controls, x[0]), flag); // carry = x0 & k0
        return;
    }

    // Conjugate so wires hold x~_i = x_i ^ k_i; then
    //   carry = XOR over set bits j of (!x~_j & S_{j+1}),
    // with S_q = AND(x~_q .. x~_{n-1}). The terms are disjoint. Suffix ANDs
    // for j <= n-3 ride a borrowed chain whose garbage cancels between a
    // seeded and an unseeded sweep.
    auto conjugate = [&] {
        for (uint32_t i = 0; i < n; ++i)
            if ((k >> i) & 1) b.emit_x(x[i]);
    };
    auto toggle_term = [&](Wire negated, std::span<const Wire> extra) {
        b.emit_x(negated);
        std::vector<Wire> cs = join(toggle_controls, negated);
        cs.insert(cs.end(), extra.begin(), extra.end());
        b.emit_mcx(cs, flag);
        b.emit_x(negated);
    };

    conjugate();

    std::vector<uint32_t> chained;
    for (uint32_t j = 0; j + 2 < n; ++j)
        if ((k >> j) & 1) chained.push_back(j);

    if (!chained.empty()) {
        uint32_t lo = chained.front() + 1; // need suffix wires for q in [lo, n-2]
        WireMask excl = support_of(b, {&x}, toggle_controls);
        excl.add(flag);
        DirtyBorrow chain(b, n - 1 - lo, excl, borrow_from_top);
        auto cw = [&](uint32_t q) { return chain[q - lo]; };

        auto sweep = [&](bool seeded) {
            if (seeded) b.emit_ccx(x[n - 2], x[n - 1], cw(n - 2));
            for (uint32_t q = n - 2; q > lo; --q) b.emit_ccx(x[q - 1], cw(q), cw(q - 1));
        };
        auto toggles = [&] {
            for (uint32_t j : chained) {
                Wire suffix = cw(j + 1);
                toggle_term(x[j], {&suffix, 1});
            }
        };

        sweep(true);
        toggles();
        b.reverse_scope([&] { sweep(true); });
        sweep(false);
        toggles();
        b.reverse_scope([&] { sweep(false); });
    }

    if (n >= 2 && ((k >> (n - 2)) & 1)) {
        Wire suffix = x[n - 1];
        toggle_term(x[n - 2], {&suffix, 1});
    }
    if ((k >> (n - 1)) & 1) toggle_term(x[n - 1], {});

    conjugate();
}

namespace {

// Direct pattern for offsets on up to three wires: per set bit of k, a
// descending controlled-not ladder incrementing the sub-register above it.
void offset_small(CircuitBuilder& b, uint64_t k, const Register& t,
                  std::span<const Wire> controls) {
    uint32_t n = t.size();
    for (uint32_t j = 0; j < n; ++j) {
        if (!((k >> j) & 1)) continue;
        for (uint32_t i = n; i-- > j;) {
            std::vector<Wire> cs(controls.begin(), controls.end());
            for (uint32_t l = j; l < i; ++l) cs.push_back(t[l]);
            b.emit_mcx(cs, t[i]);
        }
    }
}

void offset_threaded_impl(CircuitBuilder& b, uint64_t k, const Register& t,
                          std::span<const Wire> controls, bool from_top = false) {
    uint32_t n = t.size();
    k &= mask_bits(n);
    if (k == 0 || n == 0) return;
    if (n <= 3) {
        offset_small(b, k, t, controls);
        return;
    }
    uint32_t l = (n + 1) / 2;
    Register low = t.low(l);
    Register high = t.high_from(l);
    uint64_t k_low = k & mask_bits(l);
    uint64_t k_high = k >> l;

    if (k_low != 0) {
        // high += carry(low + k_low). The carry arrives as a toggle of a
        // borrowed wire g; conjugating the inc/dec pair with g-controlled
        // NOTs cancels g's unknown initial value. The operation's controls
        // ride on the increment pair (one multi-controlled gate each), not
        // on every carry toggle.
        WireMask excl = support_of(b, {&t}, controls);
        DirtyBorrow g(b, 1, excl, from_top);
        Wire gw = g[0];
        std::vector<Wire> inc_controls = join(controls, gw);
        for (Wire w : high.wires()) b.emit_cx(gw, w);
        decrement(b, high, inc_controls, IncrementForm::Auto, from_top);
        carry_toggle_const(b, k_low, low, gw, {}, from_top);
        increment(b, high, inc_controls, IncrementForm::Auto, from_top);
        carry_toggle_const(b, k_low, low, gw, {}, from_top);
        for (Wire w : high.wires()) b.emit_cx(gw, w);
    }
    // The halves borrow from opposite ends of the free pool so their
    // subcircuits stay wire-disjoint and overlap in the conflict DAG.
    if (k_low != 0) offset_threaded_impl(b, k_low, low, controls, false);
    if (k_high != 0) offset_threaded_impl(b, k_high, high, controls, true);
}

} // namespace

void offset_threaded(CircuitBuilder& b, uint64_t k, const Register& target,
                     std::span<const Wire> controls, bool subtract) {
    uint32_t n = target.size();
    k &= mask_bits(n);
    if (subtract) k = (~k + 1) & mask_bits(n);
    if (k == 0) return;
    if (controls.size() <= 3) {
        offset_threaded_impl(b, k, target, controls);
        return;
    }
    // Many controls: the commutator construction beats threading the
    // controls into every base gate (only the two multi-nots see them).
    WireMask excl = support_of(b, {&target}, controls);
    DirtyBorrow d(b, 1, excl);
    Register ext = target.with_lsb(d[0]);
    control_via_commutator(
        b,
        [&](bool inverse) {
            uint64_t kk = inverse ? ((~k + 1) & mask_bits(n + 1)) : k;
            offset_threaded_impl(b, kk, ext, {});
        },
        [&](std::span<const Wire> cs) { multi_not(b, cs, ext); }, controls);
}

void offset(CircuitBuilder& b, uint64_t k, const Register& target,
            std::span<const Wire> controls, bool subtract) {
    uint32_t n = target.size();
    k &= mask_bits(n);
    if (subtract) k = (~k + 1) & mask_bits(n);
    if (k == 0 || n == 0) return;
    if (controls.empty()) {
        offset_threaded_impl(b, k, target, {});
        return;
    }
    // Commutator controlling with a dirty LSB: offsets of -k then +k on
    // [d, target] wrapped in controlled multi-nots compose to +2k there,
    // which is +k on the real target.
    WireMask excl = support_of(b, {&target}, controls);
    DirtyBorrow d(b, 1, excl);
    Register ext = target.with_lsb(d[0]);
    control_via_commutator(
        b,
        [&](bool inverse) {
            uint64_t kk = inverse ? ((~k + 1) & mask_bits(n + 1)) : k;
            offset_threaded_impl(b, kk, ext, {});
        },
        [&](std::span<const Wire> cs) { multi_not(b, cs, ext); }, controls);
}

namespace {

// Odd-sized increment with one borrowed dirty wire d: the high half (with d
// prepended) is bumped by 2 exactly when the low half stores all ones, via
// an addition framed by low-controlled NOTs; then the low half is
// incremented by a commutator-controlled double subtraction against the
// high half.
void increment_split_odd(CircuitBuilder& b, const Register& t, std::span<const Wire> controls,
                         Wire d) {
    uint32_t n = t.size();
    uint32_t l = (n + 1) / 2;
    Register low = t.low(l);
    Register high = t.high_from(l);
    Register high_ext = high.with_lsb(d); // size l

    std::vector<Wire> low_and_controls = join(controls, std::span<const Wire>(low.wires()));

    multi_not(b, low_and_controls, high_ext);
    add_same_size(b, low, high_ext);
    multi_not(b, low_and_controls, high_ext);
    b.reverse_scope([&] { add_same_size(b, low, high_ext); });

    Register both = high_ext.concat(low);
    multi_not(b, controls, both);
    add_same_size(b, high_ext, low);
    multi_not(b, controls, both);
    b.reverse_scope([&] { add_same_size(b, high_ext, low); });
}

void increment_borrowed_register(CircuitBuilder& b, const Register& t,
                                 std::span<const Wire> controls, const Register& d) {
    Register both = d.concat(t);
    multi_not(b, controls, both);
    add_same_size(b, d, t);
    multi_not(b, controls, both);
    b.reverse_scope([&] { add_same_size(b, d, t); });
}

} // namespace

namespace {

uint64_t mcx_lowered_cost(uint64_t c) { return c <= 2 ? 1 : 4 * c - 8; }

// Lowered-size estimate of the descending controlled-not ladder.
uint64_t ladder_cost(uint32_t n, uint32_t nc) {
    uint64_t total = 0;
    for (uint32_t i = 0; i < n; ++i) total += mcx_lowered_cost(i + nc);
    return total;
}

uint64_t borrowed_register_cost(uint32_t n, uint32_t nc) {
    uint64_t fanout = nc <= 1 ? 2 * n : 2 * (2 * n - 1) + mcx_lowered_cost(nc);
    return 2 * fanout + 2 * (7ull * n - 8);
}

} // namespace

void increment(CircuitBuilder& b, const Register& target, std::span<const Wire> controls,
               IncrementForm form, bool borrow_from_top) {
    uint32_t n = target.size();
    if (n == 0) return;
    if (n == 1) {
        b.emit_mcx(controls, target[0]);
        return;
    }
    WireMask excl = support_of(b, {&target}, controls);
    uint32_t nc = static_cast<uint32_t>(controls.size());

    if (form == IncrementForm::Auto &&
        ladder_cost(n, nc) < borrowed_register_cost(n, nc)) {
        // Small registers: the ladder lowers to fewer Toffolis than either
        // borrowed-wire form. One wire is still borrowed: an increment
        // covering the whole pool is an odd permutation and must be refused.
        DirtyBorrow d(b, 1, excl, borrow_from_top);
        for (uint32_t i = n; i-- > 0;) {
            std::vector<Wire> cs(controls.begin(), controls.end());
            for (uint32_t j = 0; j < i; ++j) cs.push_back(target[j]);
            b.emit_mcx(cs, target[i]);
        }
        return;
    }

    bool use_register = false;
    if (form == IncrementForm::BorrowedRegister) {
        use_register = true;
    } else if (form == IncrementForm::Auto) {
        try {
            DirtyBorrow probe(b, n, excl, borrow_from_top);
            use_register = true;
        } catch (const BuildError&) {
            use_register = false;
        }
    }

    if (use_register) {
        DirtyBorrow d(b, n, excl, borrow_from_top);
        increment_borrowed_register(b, target, controls,
                                    Register{std::vector<Wire>(d.wires())});
        return;
    }

    DirtyBorrow d(b, 1, excl, borrow_from_top);
    if (n % 2 == 1) {
        increment_split_odd(b, target, controls, d[0]);
    } else {
        // Even size: increment the odd-sized rest using the LSB as an extra
        // control, then toggle the LSB.
        Register rest = target.high_from(1);
        std::vector<Wire> inner = join(controls, target[0]);
        if (rest.size() == 1)
            b.emit_mcx(inner, rest[0]);
        else
            increment_split_odd(b, rest, inner, d[0]);
        b.emit_mcx(controls, target[0]);
    }
}

void decrement(CircuitBuilder& b, const Register& target, std::span<const Wire> controls,
               IncrementForm form, bool borrow_from_top) {
    b.reverse_scope([&] { increment(b, target, controls, form, borrow_from_top); });
}

void compare_lt_toggle(CircuitBuilder& b, const Register& input, const Register& y, Wire flag,
                       std::span<const Wire> controls) {
    uint32_t n = input.size();
    if (y.size() < n)
        throw BuildError(BuildError::Kind::InvalidParams, "compare: y narrower than input");
    if (n == 0) return;

    // [y < A] = carry(~y + A); when y is wider, additionally require y's
    // high bits to be zero, as negated extra taps on the carry.
    Register y_low = y.low(n);
    Register y_high = y.high_from(n);
    Register ext = y_low.concat(Register{std::vector<Wire>{flag}});

    for (Wire w : y.wires()) b.emit_x(w); // low part: ~y; high part: read as "was zero"
    std::vector<Wire> taps = join(controls, std::span<const Wire>(y_high.wires()));
    detail::add_h1(b, input, ext, taps);
    b.reverse_scope([&] { add_same_size(b, input, y_low); });
    for (Wire w : y.wires()) b.emit_x(w);
}

namespace {

// Dirty wires the carry chain would borrow for constant k over n wires.
uint32_t carry_chain_need(uint64_t k, uint32_t n) {
    for (uint32_t j = 0; j + 2 < n; ++j)
        if ((k >> j) & 1) return n - 2 - j;
    return 0;
}

} // namespace

void compare_lt_toggle_const(CircuitBuilder& b, uint64_t k, const Register& y, Wire flag,
                             std::span<const Wire> controls) {
    uint32_t m = y.size();
    if (k == 0) return; // nothing is below zero
    if (m < 64 && k >= (uint64_t{1} << m)) {
        b.emit_mcx(controls, flag); // everything is below 2^m
        return;
    }
    // [y < k] = carry(~y + k). The direct carry chain is linear in gates but
    // wants up to m-2 borrowed wires; when the pool has them (idle partner
    // registers) use it, otherwise fall back to the offset construction
    // (an offset on [y, flag] followed by the slightly smaller subtraction
    // on y alone, leaving only the carry in the flag).
    uint32_t need = carry_chain_need(k, m);
    bool use_chain = true;
    if (need > 0) {
        WireMask excl(b.width());
        excl.add(y);
        excl.add(flag);
        excl.add(controls);
        try {
            DirtyBorrow probe(b, need, excl);
        } catch (const BuildError&) {
            use_chain = false;
        }
    }
    for (Wire w : y.wires()) b.emit_x(w);
    if (use_chain) {
        carry_toggle_const(b, k, y, flag, controls);
    } else {
        Register ext = y.concat(Register{std::vector<Wire>{flag}});
        offset_threaded(b, k, ext, controls);
        offset_threaded(b, k, y, controls, /*subtract=*/true);
    }
    for (Wire w : y.wires()) b.emit_x(w);
}

void bit_reverse(CircuitBuilder& b, const Register& target, std::span<const Wire> controls) {
    uint32_t n = target.size();
    for (uint32_t i = 0; i * 2 + 1 < n; ++i) {
        Wire a = target[i];
        Wire c = target[n - 1 - i];
        b.emit_cx(a, c);
        b.emit_mcx(join(controls, c), a);
        b.emit_cx(a, c);
    }
}

void bit_rotate(CircuitBuilder& b, const Register& target, uint32_t shift,
                std::span<const Wire> controls) {
    uint32_t n = target.size();
    if (n == 0) return;
    shift %= n;
    if (shift == 0) return;
    bit_reverse(b, target.slice(0, n - shift), controls);
    bit_reverse(b, target.slice(n - shift, n), controls);
    bit_reverse(b, target, controls);
}

} // namespace revarith
