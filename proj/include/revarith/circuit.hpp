#pragma once

// Wires, registers, gates, circuits, and the ancilla broker used by all
// lowering code. A circuit is a flat list of X gates with 0..k controls over
// a dense pool of wires; after the final lowering pass every gate has at
// most 2 controls.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace revarith {

using Wire = uint32_t;

class BuildError : public std::runtime_error {
  public:
    enum class Kind {
        InsufficientFreeWires,
        CleanPoolExhausted,
        WireOutOfRange,
        InvalidParams,
        LedgerViolation,
    };

    BuildError(Kind kind, const std::string& message, long long detail = 0)
        : std::runtime_error(message), kind(kind), detail(detail) {}

    Kind kind;
    long long detail; // carries gcd(K, R) for non-invertible multipliers
};

/// Ordered list of wires naming a multi-bit value, LSB first.
class Register {
  public:
    Register() = default;
    explicit Register(std::vector<Wire> wires) : wires_(std::move(wires)) { check_distinct(); }

    /// Contiguous register [first, first + n).
    static Register range(Wire first, uint32_t n);

    uint32_t size() const { return static_cast<uint32_t>(wires_.size()); }
    bool empty() const { return wires_.empty(); }
    Wire operator[](uint32_t i) const { return wires_[i]; }
    const std::vector<Wire>& wires() const { return wires_; }

    /// Wires [lo, hi) as a sub-register.
    Register slice(uint32_t lo, uint32_t hi) const;
    Register low(uint32_t n) const { return slice(0, n); }
    Register high_from(uint32_t lo) const { return slice(lo, size()); }

    /// This register with `w` prepended as the new LSB.
    Register with_lsb(Wire w) const;
    Register concat(const Register& other) const;
    Register reversed() const;

  private:
    void check_distinct() const;
    std::vector<Wire> wires_;
};

struct Gate {
    static constexpr uint32_t kNoExt = UINT32_MAX;

    Wire target = 0;
    Wire ctrl[2] = {0, 0};
    uint32_t ext = kNoExt;  // offset into the circuit's control arena when num_controls > 2
    uint16_t num_controls = 0;
};

struct AncillaLedger {
    int clean_highwater = 0;
    int dirty_highwater = 0;
    // Active borrows, kept sorted by wire.
    std::vector<std::pair<Wire, bool>> active; // bool: true = clean
};

/// Immutable once built; safe to share across threads for simulation.
class Circuit {
  public:
    uint32_t width = 0;
    std::vector<Gate> gates;
    std::vector<Wire> control_arena; // storage for gates with > 2 controls
    AncillaLedger ledger;

    std::span<const Wire> controls(const Gate& g) const {
        if (g.num_controls <= 2) return {g.ctrl, g.num_controls};
        return {control_arena.data() + g.ext, g.num_controls};
    }

    /// True when every gate has at most two controls.
    bool is_lowered() const;
    size_t count_with_controls(uint16_t c) const;
};

/// Re-usable wire set used for borrow exclusions.
class WireMask {
  public:
    WireMask() = default;
    explicit WireMask(uint32_t width) : bits_((width + 63) / 64, 0) {}

    void resize(uint32_t width) { bits_.assign((width + 63) / 64, 0); }
    void add(Wire w) { bits_[w >> 6] |= uint64_t{1} << (w & 63); }
    void add(const Register& r) {
        for (Wire w : r.wires()) add(w);
    }
    void add(std::span<const Wire> ws) {
        for (Wire w : ws) add(w);
    }
    void remove(Wire w) { bits_[w >> 6] &= ~(uint64_t{1} << (w & 63)); }
    bool contains(Wire w) const { return (bits_[w >> 6] >> (w & 63)) & 1; }

  private:
    std::vector<uint64_t> bits_;
};

/// Single-threaded gate sink plus the clean/dirty ancilla broker.
///
/// Borrowed dirty wires are handed out lowest-index-first among wires that
/// are neither excluded by the caller nor already borrowed. The ledger's
/// high-water marks count simultaneous borrows of wires that lie outside the
/// declared top-level operation footprint (idle partner registers and the
/// operation's own controls are borrowable without widening the circuit).
class CircuitBuilder {
  public:
    explicit CircuitBuilder(uint32_t width, std::vector<Wire> clean_pool = {});

    uint32_t width() const { return width_; }

    void emit_x(Wire t);
    void emit_cx(Wire c, Wire t);
    void emit_ccx(Wire c0, Wire c1, Wire t);
    void emit_mcx(std::span<const Wire> controls, Wire t);
    void emit_mcx(std::initializer_list<Wire> controls, Wire t) {
        emit_mcx(std::span<const Wire>(controls.begin(), controls.size()), t);
    }

    size_t gate_count() const { return gates_.size(); }

    /// Runs `fn` and then reverses the order of the gates it emitted. Every
    /// gate is self-inverse so this inverts the emitted subcircuit.
    template <typename Fn>
    void reverse_scope(Fn&& fn) {
        size_t start = gates_.size();
        fn();
        std::reverse(gates_.begin() + start, gates_.end());
    }

    /// from_top scans highest-index-first instead; the offset recursion
    /// hands opposite ends of the free pool to its two halves so their
    /// subcircuits stay wire-disjoint (and can overlap in depth).
    std::vector<Wire> borrow_dirty(uint32_t count, const WireMask& excluded,
                                   bool from_top = false);
    void release_dirty(std::span<const Wire> wires);

    std::vector<Wire> borrow_clean(uint32_t count);
    void release_clean(std::span<const Wire> wires);

    /// Declares the wire footprint of the operation being synthesized at the
    /// top level; borrows inside it do not count toward the high-water marks.
    void set_top_support(const WireMask& support) { top_support_ = support; }

    const AncillaLedger& ledger() const { return ledger_; }

    /// Finalizes into an immutable circuit. Throws if borrows are still
    /// active.
    Circuit take();

  private:
    void check_wire(Wire w) const;
    void note_borrow(Wire w, bool clean);
    void note_release(Wire w, bool clean);

    uint32_t width_;
    std::vector<Gate> gates_;
    std::vector<Wire> control_arena_;
    std::vector<uint8_t> borrowed_;   // per-wire: currently borrowed
    std::vector<uint8_t> clean_free_; // per-wire: available in the clean pool
    AncillaLedger ledger_;
    int outside_dirty_ = 0;
    int outside_clean_ = 0;
    std::optional<WireMask> top_support_;
};

/// RAII guard returning borrowed dirty wires to the pool.
class DirtyBorrow {
  public:
    DirtyBorrow(CircuitBuilder& b, uint32_t count, const WireMask& excluded,
                bool from_top = false)
        : builder_(b), wires_(b.borrow_dirty(count, excluded, from_top)) {}
    ~DirtyBorrow() { builder_.release_dirty(wires_); }
    DirtyBorrow(const DirtyBorrow&) = delete;
    DirtyBorrow& operator=(const DirtyBorrow&) = delete;

    const std::vector<Wire>& wires() const { return wires_; }
    Wire operator[](size_t i) const { return wires_[i]; }

  private:
    CircuitBuilder& builder_;
    std::vector<Wire> wires_;
};

} // namespace revarith
