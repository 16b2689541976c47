#include "revarith/circuit.hpp"

#include <algorithm>

namespace revarith {

Register Register::range(Wire first, uint32_t n) {
    std::vector<Wire> ws(n);
    for (uint32_t i = 0; i < n; ++i) ws[i] = first + i;
    return Register(std::move(ws));
}

Register Register::slice(uint32_t lo, uint32_t hi) const {
    if (lo > hi || hi > size()) throw BuildError(BuildError::Kind::InvalidParams, "bad register slice");
    return Register(std::vector<Wire>(wires_.begin() + lo, wires_.begin() + hi));
}

Register Register::with_lsb(Wire w) const {
    std::vector<Wire> ws;
    ws.reserve(size() + 1);
    ws.push_back(w);
    ws.insert(ws.end(), wires_.begin(), wires_.end());
    return Register(std::move(ws));
}

Register Register::concat(const Register& other) const {
    std::vector<Wire> ws = wires_;
    ws.insert(ws.end(), other.wires_.begin(), other.wires_.end());
    return Register(std::move(ws));
}

Register Register::reversed() const {
    std::vector<Wire> ws(wires_.rbegin(), wires_.rend());
    return Register(std::move(ws));
}

void Register::check_distinct() const {
    std::vector<Wire> sorted = wires_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw BuildError(BuildError::Kind::InvalidParams, "duplicate wire in register");
}

bool Circuit::is_lowered() const {
    return std::all_of(gates.begin(), gates.end(), [](const Gate& g) { return g.num_controls <= 2; });
}

size_t Circuit::count_with_controls(uint16_t c) const {
    return static_cast<size_t>(
        std::count_if(gates.begin(), gates.end(), [c](const Gate& g) { return g.num_controls == c; }));
}

CircuitBuilder::CircuitBuilder(uint32_t width, std::vector<Wire> clean_pool)
    : width_(width), borrowed_(width, 0), clean_free_(width, 0) {
    for (Wire w : clean_pool) {
        check_wire(w);
        clean_free_[w] = 1;
    }
}

void CircuitBuilder::check_wire(Wire w) const {
    if (w >= width_) throw BuildError(BuildError::Kind::WireOutOfRange, "wire index out of range");
}

void CircuitBuilder::emit_x(Wire t) {
    check_wire(t);
    Gate g;
    g.target = t;
    gates_.push_back(g);
}

void CircuitBuilder::emit_cx(Wire c, Wire t) {
    check_wire(c);
    check_wire(t);
    if (c == t) throw BuildError(BuildError::Kind::InvalidParams, "control equals target");
    Gate g;
    g.target = t;
    g.ctrl[0] = c;
    g.num_controls = 1;
    gates_.push_back(g);
}

void CircuitBuilder::emit_ccx(Wire c0, Wire c1, Wire t) {
    check_wire(c0);
    check_wire(c1);
    check_wire(t);
    if (c0 == c1 || c0 == t || c1 == t)
        throw BuildError(BuildError::Kind::InvalidParams, "CCX wires must be distinct");
    Gate g;
    g.target = t;
    g.ctrl[0] = c0;
    g.ctrl[1] = c1;
    g.num_controls = 2;
    gates_.push_back(g);
}

void CircuitBuilder::emit_mcx(std::span<const Wire> controls, Wire t) {
    switch (controls.size()) {
        case 0: emit_x(t); return;
        case 1: emit_cx(controls[0], t); return;
        case 2: emit_ccx(controls[0], controls[1], t); return;
        default: break;
    }
    check_wire(t);
    for (size_t i = 0; i < controls.size(); ++i) {
        check_wire(controls[i]);
        if (controls[i] == t) throw BuildError(BuildError::Kind::InvalidParams, "control equals target");
        for (size_t j = i + 1; j < controls.size(); ++j)
            if (controls[i] == controls[j])
                throw BuildError(BuildError::Kind::InvalidParams, "duplicate control");
    }
    Gate g;
    g.target = t;
    g.ext = static_cast<uint32_t>(control_arena_.size());
    g.num_controls = static_cast<uint16_t>(controls.size());
    control_arena_.insert(control_arena_.end(), controls.begin(), controls.end());
    gates_.push_back(g);
}

std::vector<Wire> CircuitBuilder::borrow_dirty(uint32_t count, const WireMask& excluded,
                                               bool from_top) {
    std::vector<Wire> out;
    out.reserve(count);
    auto eligible = [&](Wire w) {
        return !borrowed_[w] && !excluded.contains(w) && !clean_free_[w];
    };
    if (from_top) {
        for (Wire w = width_; w-- > 0 && out.size() < count;)
            if (eligible(w)) out.push_back(w);
    } else {
        for (Wire w = 0; w < width_ && out.size() < count; ++w)
            if (eligible(w)) out.push_back(w);
    }
    if (out.size() < count)
        throw BuildError(BuildError::Kind::InsufficientFreeWires,
                         "insufficient free wires: need " + std::to_string(count));
    for (Wire w : out) {
        borrowed_[w] = 1;
        note_borrow(w, false);
    }
    return out;
}

void CircuitBuilder::release_dirty(std::span<const Wire> wires) {
    for (Wire w : wires) {
        borrowed_[w] = 0;
        note_release(w, false);
    }
}

std::vector<Wire> CircuitBuilder::borrow_clean(uint32_t count) {
    std::vector<Wire> out;
    out.reserve(count);
    for (Wire w = 0; w < width_ && out.size() < count; ++w) {
        if (clean_free_[w] && !borrowed_[w]) out.push_back(w);
    }
    if (out.size() < count)
        throw BuildError(BuildError::Kind::CleanPoolExhausted,
                         "clean pool exhausted: need " + std::to_string(count));
    for (Wire w : out) {
        borrowed_[w] = 1;
        note_borrow(w, true);
    }
    return out;
}

void CircuitBuilder::release_clean(std::span<const Wire> wires) {
    for (Wire w : wires) {
        borrowed_[w] = 0;
        note_release(w, true);
    }
}

void CircuitBuilder::note_borrow(Wire w, bool clean) {
    ledger_.active.emplace_back(w, clean);
    bool outside = !top_support_ || !top_support_->contains(w);
    if (outside) {
        int& level = clean ? outside_clean_ : outside_dirty_;
        int& high = clean ? ledger_.clean_highwater : ledger_.dirty_highwater;
        ++level;
        high = std::max(high, level);
    }
}

void CircuitBuilder::note_release(Wire w, bool clean) {
    auto it = std::find(ledger_.active.begin(), ledger_.active.end(), std::make_pair(w, clean));
    if (it == ledger_.active.end())
        throw BuildError(BuildError::Kind::LedgerViolation, "releasing wire that was not borrowed");
    ledger_.active.erase(it);
    bool outside = !top_support_ || !top_support_->contains(w);
    if (outside) --(clean ? outside_clean_ : outside_dirty_);
}

Circuit CircuitBuilder::take() {
    if (!ledger_.active.empty())
        throw BuildError(BuildError::Kind::LedgerViolation, "circuit completed with active borrows");
    Circuit c;
    c.width = width_;
    c.gates = std::move(gates_);
    c.control_arena = std::move(control_arena_);
    c.ledger = ledger_;
    return c;
}

} // namespace revarith
