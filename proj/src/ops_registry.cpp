#include "revarith/ops_registry.hpp"

#include "revarith/mod_arith.hpp"

#include <algorithm>
#include <map>

namespace revarith {

namespace {

uint64_t mask_bits(uint32_t n) { return n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1; }

struct Layout {
    std::vector<Register> operands;
    uint32_t control_count = 0;
};

bool controls_on(BasisState s, const std::vector<Wire>& cs) {
    for (Wire c : cs)
        if (!((s >> c) & 1)) return false;
    return true;
}

uint64_t bit_reversed(uint64_t v, uint32_t n) {
    uint64_t r = 0;
    for (uint32_t i = 0; i < n; ++i) r |= ((v >> i) & 1) << (n - 1 - i);
    return r;
}

uint64_t rotated_left(uint64_t v, uint32_t s, uint32_t n) {
    s %= n;
    if (s == 0) return v;
    return ((v << s) | (v >> (n - s))) & mask_bits(n);
}

struct OpDef {
    OpKind kind;
    // Builds the register layout from params (sizes only).
    std::function<Layout(const OpParams&)> layout;
    // Full-state oracle given the laid-out instance.
    std::function<BasisState(const OpInstance&, const OpParams&, BasisState)> apply;
    // Valid-domain predicate (operands only); null = everywhere.
    std::function<bool(const OpInstance&, const OpParams&, BasisState)> domain;
};

uint32_t require_n(const OpParams& p) {
    if (p.n == 0)
        throw BuildError(BuildError::Kind::InvalidParams, "operation requires -n");
    return p.n;
}

uint64_t require_r(const OpParams& p) {
    if (p.r < 2)
        throw BuildError(BuildError::Kind::InvalidParams, "operation requires an -R modulus");
    return p.r;
}

const std::map<std::string, OpDef>& op_table() {
    static const std::map<std::string, OpDef> table = [] {
        std::map<std::string, OpDef> t;

        t["add"] = OpDef{
            OpKind::AddReg,
            [](const OpParams& p) {
                uint32_t n = require_n(p);
                uint32_t m = p.m ? p.m : n;
                Layout l;
                l.operands.push_back(Register::range(0, n));
                l.operands.push_back(Register::range(n, m));
                l.control_count = p.controls;
                return l;
            },
            [](const OpInstance& inst, const OpParams&, BasisState s) {
                const Register& a = inst.operands[0];
                const Register& tr = inst.operands[1];
                uint64_t sum = (read_register(tr, s) + read_register(a, s)) &
                               mask_bits(tr.size());
                return write_register(tr, s, sum);
            },
            nullptr};

        t["offset"] = OpDef{
            OpKind::Offset,
            [](const OpParams& p) {
                Layout l;
                l.operands.push_back(Register::range(0, require_n(p)));
                l.control_count = p.controls;
                return l;
            },
            [](const OpInstance& inst, const OpParams& p, BasisState s) {
                const Register& tr = inst.operands[0];
                uint64_t sum = (read_register(tr, s) + p.k) & mask_bits(tr.size());
                return write_register(tr, s, sum);
            },
            nullptr};

        t["increment"] = OpDef{
            OpKind::Increment,
            [](const OpParams& p) {
                Layout l;
                l.operands.push_back(Register::range(0, require_n(p)));
                l.control_count = p.controls;
                return l;
            },
            [](const OpInstance& inst, const OpParams&, BasisState s) {
                const Register& tr = inst.operands[0];
                uint64_t sum = (read_register(tr, s) + 1) & mask_bits(tr.size());
                return write_register(tr, s, sum);
            },
            nullptr};

        t["decrement"] = OpDef{
            OpKind::Decrement,
            t["increment"].layout,
            [](const OpInstance& inst, const OpParams&, BasisState s) {
                const Register& tr = inst.operands[0];
                uint64_t sum = (read_register(tr, s) - 1) & mask_bits(tr.size());
                return write_register(tr, s, sum);
            },
            nullptr};

        t["compare"] = OpDef{
            OpKind::CompareLt,
            [](const OpParams& p) {
                uint32_t n = require_n(p);
                uint32_t m = p.m ? p.m : n;
                Layout l;
                l.operands.push_back(Register::range(0, n));
                l.operands.push_back(Register::range(n, m));
                l.operands.push_back(Register::range(n + m, 1)); // flag
                l.control_count = p.controls;
                return l;
            },
            [](const OpInstance& inst, const OpParams&, BasisState s) {
                uint64_t a = read_register(inst.operands[0], s);
                uint64_t y = read_register(inst.operands[1], s);
                return y < a ? s ^ (uint64_t{1} << inst.operands[2][0]) : s;
            },
            nullptr};

        t["compare_const"] = OpDef{
            OpKind::CompareLtConst,
            [](const OpParams& p) {
                Layout l;
                l.operands.push_back(Register::range(0, require_n(p)));
                l.operands.push_back(Register::range(p.n, 1)); // flag
                l.control_count = p.controls;
                return l;
            },
            [](const OpInstance& inst, const OpParams& p, BasisState s) {
                uint64_t y = read_register(inst.operands[0], s);
                return y < p.k ? s ^ (uint64_t{1} << inst.operands[1][0]) : s;
            },
            nullptr};

        t["multi_not"] = OpDef{
            OpKind::MultiNot,
            [](const OpParams& p) {
                Layout l;
                l.operands.push_back(Register::range(0, require_n(p)));
                l.control_count = p.controls;
                return l;
            },
            [](const OpInstance& inst, const OpParams&, BasisState s) {
                BasisState out = s;
                for (Wire w : inst.operands[0].wires()) out ^= uint64_t{1} << w;
                return out;
            },
            nullptr};

        t["mcx"] = OpDef{
            OpKind::Mcx,
            [](const OpParams& p) {
                Layout l;
                l.operands.push_back(Register::range(0, 1));
                l.control_count = p.controls;
                return l;
            },
            [](const OpInstance& inst, const OpParams&, BasisState s) {
                return s ^ (uint64_t{1} << inst.operands[0][0]);
            },
            nullptr};

        t["rotate"] = OpDef{
            OpKind::BitRotate,
            [](const OpParams& p) {
                Layout l;
                l.operands.push_back(Register::range(0, require_n(p)));
                l.control_count = p.controls;
                return l;
            },
            [](const OpInstance& inst, const OpParams& p, BasisState s) {
                const Register& tr = inst.operands[0];
                uint64_t v = rotated_left(read_register(tr, s), p.shift, tr.size());
                return write_register(tr, s, v);
            },
            nullptr};

        t["reverse"] = OpDef{
            OpKind::BitReverse,
            t["rotate"].layout,
            [](const OpInstance& inst, const OpParams&, BasisState s) {
                const Register& tr = inst.operands[0];
                uint64_t v = bit_reversed(read_register(tr, s), tr.size());
                return write_register(tr, s, v);
            },
            nullptr};

        t["biflip"] = OpDef{
            OpKind::BiFlipConst,
            [](const OpParams& p) {
                Layout l;
                l.operands.push_back(Register::range(0, require_n(p)));
                l.control_count = p.controls;
                return l;
            },
            [](const OpInstance& inst, const OpParams& p, BasisState s) {
                const Register& tr = inst.operands[0];
                uint64_t v = ~(read_register(tr, s) - p.k) & mask_bits(tr.size());
                return write_register(tr, s, v);
            },
            nullptr};

        t["biflip_reg"] = OpDef{
            OpKind::BiFlipReg,
            [](const OpParams& p) {
                uint32_t n = require_n(p);
                uint32_t m = p.m ? p.m : n;
                Layout l;
                l.operands.push_back(Register::range(0, n));
                l.operands.push_back(Register::range(n, m));
                l.control_count = p.controls;
                return l;
            },
            [](const OpInstance& inst, const OpParams&, BasisState s) {
                uint64_t pv = read_register(inst.operands[0], s);
                const Register& tr = inst.operands[1];
                uint64_t v = ~(read_register(tr, s) - pv) & mask_bits(tr.size());
                return write_register(tr, s, v);
            },
            nullptr};

        t["pivot_flip"] = OpDef{
            OpKind::PivotFlipConst,
            t["biflip"].layout,
            [](const OpInstance& inst, const OpParams& p, BasisState s) {
                const Register& tr = inst.operands[0];
                uint64_t v = read_register(tr, s);
                return v < p.k ? write_register(tr, s, p.k - 1 - v) : s;
            },
            nullptr};

        t["pivot_flip_reg"] = OpDef{
            OpKind::PivotFlipReg,
            t["biflip_reg"].layout,
            [](const OpInstance& inst, const OpParams&, BasisState s) {
                uint64_t pv = read_register(inst.operands[0], s);
                const Register& tr = inst.operands[1];
                uint64_t v = read_register(tr, s);
                return v < pv ? write_register(tr, s, pv - 1 - v) : s;
            },
            nullptr};

        t["mod_offset"] = OpDef{
            OpKind::ModOffset,
            [](const OpParams& p) {
                Layout l;
                l.operands.push_back(Register::range(0, mod_register_size(require_r(p))));
                l.control_count = p.controls;
                return l;
            },
            [](const OpInstance& inst, const OpParams& p, BasisState s) {
                const Register& tr = inst.operands[0];
                return write_register(tr, s, (read_register(tr, s) + p.k) % p.r);
            },
            [](const OpInstance& inst, const OpParams& p, BasisState s) {
                return read_register(inst.operands[0], s) < p.r;
            }};

        t["mod_add"] = OpDef{
            OpKind::ModAddReg,
            [](const OpParams& p) {
                uint32_t n = mod_register_size(require_r(p));
                Layout l;
                l.operands.push_back(Register::range(0, n));
                l.operands.push_back(Register::range(n, n));
                l.control_count = p.controls;
                return l;
            },
            [](const OpInstance& inst, const OpParams& p, BasisState s) {
                uint64_t a = read_register(inst.operands[0], s);
                const Register& tr = inst.operands[1];
                return write_register(tr, s, (read_register(tr, s) + a) % p.r);
            },
            [](const OpInstance& inst, const OpParams& p, BasisState s) {
                return read_register(inst.operands[0], s) < p.r &&
                       read_register(inst.operands[1], s) < p.r;
            }};

        t["mod_negate"] = OpDef{
            OpKind::ModNegate,
            t["mod_offset"].layout,
            [](const OpInstance& inst, const OpParams& p, BasisState s) {
                const Register& tr = inst.operands[0];
                return write_register(tr, s, (p.r - read_register(tr, s)) % p.r);
            },
            t["mod_offset"].domain};

        t["mod_double"] = OpDef{
            OpKind::ModDouble,
            t["mod_offset"].layout,
            [](const OpInstance& inst, const OpParams& p, BasisState s) {
                const Register& tr = inst.operands[0];
                return write_register(tr, s, (2 * read_register(tr, s)) % p.r);
            },
            t["mod_offset"].domain};

        t["mod_halve"] = OpDef{
            OpKind::ModHalve,
            t["mod_offset"].layout,
            [](const OpInstance& inst, const OpParams& p, BasisState s) {
                const Register& tr = inst.operands[0];
                uint64_t v = read_register(tr, s);
                uint64_t half = v % 2 == 0 ? v / 2 : (v + p.r) / 2;
                return write_register(tr, s, half % p.r);
            },
            t["mod_offset"].domain};

        t["mod_scale_add"] = OpDef{
            OpKind::ModScaleAdd,
            t["mod_add"].layout,
            [](const OpInstance& inst, const OpParams& p, BasisState s) {
                uint64_t x = read_register(inst.operands[0], s);
                const Register& y = inst.operands[1];
                return write_register(y, s, (read_register(y, s) + (p.k % p.r) * x) % p.r);
            },
            t["mod_add"].domain};

        t["bimultiply"] = OpDef{
            OpKind::ModBimultiply,
            t["mod_add"].layout,
            [](const OpInstance& inst, const OpParams& p, BasisState s) {
                uint64_t kinv = mod_inverse(p.k % p.r, p.r);
                uint64_t x = read_register(inst.operands[0], s);
                uint64_t y = read_register(inst.operands[1], s);
                s = write_register(inst.operands[0], s, ((p.k % p.r) * x) % p.r);
                return write_register(inst.operands[1], s, (kinv * y) % p.r);
            },
            t["mod_add"].domain};

        return t;
    }();
    return table;
}

} // namespace

std::vector<std::string> registered_ops() {
    std::vector<std::string> names;
    for (const auto& [name, def] : op_table()) names.push_back(name);
    return names;
}

OpInstance instantiate_op(const std::string& name, const OpParams& params, uint32_t extras) {
    auto it = op_table().find(name);
    if (it == op_table().end())
        throw BuildError(BuildError::Kind::InvalidParams, "unknown operation: " + name);
    const OpDef& def = it->second;

    Layout layout = def.layout(params);
    OpInstance inst;
    inst.name = name;
    inst.extras = extras;
    inst.operands = layout.operands;

    uint32_t operand_top = 0;
    for (const Register& r : inst.operands)
        for (Wire w : r.wires()) operand_top = std::max(operand_top, w + 1);
    for (uint32_t i = 0; i < layout.control_count; ++i)
        inst.controls.push_back(operand_top + extras + i);
    inst.width = operand_top + extras + layout.control_count;

    inst.node.kind = def.kind;
    inst.node.k = (def.kind == OpKind::BitRotate) ? params.shift : params.k;
    inst.node.r = params.r;
    inst.node.operands = inst.operands;
    inst.node.controls = inst.controls;
    inst.node.flag = params.biflip_at_r;

    const OpDef* defp = &def;
    OpParams p = params;
    std::vector<Wire> cs = inst.controls;
    OpInstance shallow = inst; // operand/control layout for the lambdas
    inst.oracle = [defp, p, cs, shallow](BasisState s) {
        if (!controls_on(s, cs)) return s;
        return defp->apply(shallow, p, s);
    };
    if (defp->domain) {
        inst.domain = [defp, p, shallow](BasisState s) { return defp->domain(shallow, p, s); };
    } else {
        inst.domain = [](BasisState) { return true; };
    }
    return inst;
}

namespace {

// Borrowable wires each construction is documented to need; the auto-grow
// loop starts here so canonical pools (and gate counts) come out.
uint32_t default_extras(const std::string& name, const OpParams& p) {
    if (name == "mcx" || name == "multi_not")
        return p.controls >= 3 ? p.controls - 2 : 0;
    if (name == "offset") return p.controls ? 2 : 1;
    if (name == "increment" || name == "decrement") return 1;
    if (name == "pivot_flip" || name == "pivot_flip_reg") return 2;
    if (name == "mod_offset" || name == "mod_add" || name == "mod_negate") return 2;
    if (name == "mod_double" || name == "mod_halve") return 1;
    return 0;
}

} // namespace

Circuit synthesize_op(const std::string& name, const OpParams& params, OpInstance* instance_out) {
    BuildError last(BuildError::Kind::InsufficientFreeWires, "no attempt made");
    for (uint32_t extras = default_extras(name, params); extras <= 64; ++extras) {
        OpInstance inst = instantiate_op(name, params, extras);
        try {
            CircuitBuilder b(inst.width);
            WireMask support(inst.width);
            for (const Register& r : inst.operands) support.add(r);
            support.add(std::span<const Wire>(inst.controls));
            b.set_top_support(support);
            lower(inst.node, b);
            Circuit lowered = lower_mcx_pass(b.take());
            if (instance_out) *instance_out = inst;
            return lowered;
        } catch (const BuildError& e) {
            if (e.kind != BuildError::Kind::InsufficientFreeWires) throw;
            last = e;
        }
    }
    throw last;
}

std::optional<ContractViolation> verify_instance(const OpInstance& inst, const Circuit& lowered) {
    if (lowered.width > 24)
        throw BuildError(BuildError::Kind::InvalidParams, "verification width exceeds 24 wires");
    return check_contract(lowered, inst.oracle, inst.domain);
}

std::optional<ContractViolation> verify_op(const std::string& name, const OpParams& params) {
    OpInstance inst;
    Circuit lowered = synthesize_op(name, params, &inst);
    return verify_instance(inst, lowered);
}

} // namespace revarith
