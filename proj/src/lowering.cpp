#include "revarith/lowering.hpp"

#include "revarith/arith.hpp"
#include "revarith/mod_arith.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace revarith {

namespace {

const Register& operand(const OpNode& node, size_t i) {
    if (i >= node.operands.size())
        throw BuildError(BuildError::Kind::InvalidParams, "missing operand register");
    return node.operands[i];
}

} // namespace

void lower(const OpNode& node, CircuitBuilder& b) {
    for (const Register& reg : node.operands)
        for (Wire w : reg.wires())
            for (Wire c : node.controls)
                if (w == c)
                    throw BuildError(BuildError::Kind::InvalidParams,
                                     "controls must be disjoint from operand registers");
    std::span<const Wire> cs(node.controls);
    switch (node.kind) {
        case OpKind::AddReg: add_reg(b, operand(node, 0), operand(node, 1), cs); break;
        case OpKind::Offset: offset(b, node.k, operand(node, 0), cs); break;
        case OpKind::Increment: increment(b, operand(node, 0), cs); break;
        case OpKind::Decrement: decrement(b, operand(node, 0), cs); break;
        case OpKind::CompareLt: {
            const Register& flag = operand(node, 2);
            if (flag.size() != 1)
                throw BuildError(BuildError::Kind::InvalidParams, "flag must be one wire");
            compare_lt_toggle(b, operand(node, 0), operand(node, 1), flag[0], cs);
            break;
        }
        case OpKind::CompareLtConst: {
            const Register& flag = operand(node, 1);
            if (flag.size() != 1)
                throw BuildError(BuildError::Kind::InvalidParams, "flag must be one wire");
            compare_lt_toggle_const(b, node.k, operand(node, 0), flag[0], cs);
            break;
        }
        case OpKind::MultiNot: multi_not(b, cs, operand(node, 0)); break;
        case OpKind::Mcx: {
            const Register& t = operand(node, 0);
            if (t.size() != 1)
                throw BuildError(BuildError::Kind::InvalidParams, "mcx target must be one wire");
            b.emit_mcx(cs, t[0]);
            break;
        }
        case OpKind::BitRotate:
            bit_rotate(b, operand(node, 0), static_cast<uint32_t>(node.k), cs);
            break;
        case OpKind::BitReverse: bit_reverse(b, operand(node, 0), cs); break;
        case OpKind::BiFlipConst: bi_flip_const(b, node.k, operand(node, 0), cs); break;
        case OpKind::BiFlipReg: bi_flip_reg(b, operand(node, 0), operand(node, 1), cs); break;
        case OpKind::PivotFlipConst: pivot_flip_const(b, node.k, operand(node, 0), cs); break;
        case OpKind::PivotFlipReg:
            pivot_flip_reg(b, operand(node, 0), operand(node, 1), cs);
            break;
        case OpKind::ModOffset:
            mod_offset(b, node.k, node.r, operand(node, 0), cs, node.flag);
            break;
        case OpKind::ModAddReg: mod_add_reg(b, operand(node, 0), node.r, operand(node, 1), cs); break;
        case OpKind::ModNegate: mod_negate(b, node.r, operand(node, 0), cs); break;
        case OpKind::ModDouble: mod_double(b, node.r, operand(node, 0), cs); break;
        case OpKind::ModHalve: mod_halve(b, node.r, operand(node, 0), cs); break;
        case OpKind::ModScaleAdd:
            mod_scale_add(b, node.k, node.r, operand(node, 0), operand(node, 1), cs);
            break;
        case OpKind::ModBimultiply:
            mod_bimultiply(b, node.k, node.r, operand(node, 0), operand(node, 1), cs);
            break;
    }
}

Circuit lower_to_circuit(const OpNode& node, uint32_t width) {
    CircuitBuilder b(width);
    lower(node, b);
    return lower_mcx_pass(b.take());
}

ResourceReport measure_resources(const Circuit& circuit) {
    ResourceReport r;
    r.total_width = circuit.width;
    r.clean_highwater = circuit.ledger.clean_highwater;
    r.dirty_highwater = circuit.ledger.dirty_highwater;

    std::vector<uint64_t> wire_depth(circuit.width, 0);
    for (const Gate& g : circuit.gates) {
        switch (g.num_controls) {
            case 0: ++r.not_count; break;
            case 1: ++r.cnot_count; break;
            case 2: ++r.toffoli_count; break;
            default:
                throw BuildError(BuildError::Kind::InvalidParams,
                                 "measure_resources expects a fully lowered circuit");
        }
        uint64_t d = wire_depth[g.target];
        for (Wire w : circuit.controls(g)) d = std::max(d, wire_depth[w]);
        ++d;
        wire_depth[g.target] = d;
        for (Wire w : circuit.controls(g)) wire_depth[w] = d;
        r.depth = std::max(r.depth, d);
    }
    return r;
}

std::string ResourceReport::to_text() const {
    std::ostringstream os;
    os << "not_count=" << not_count << "\n"
       << "cnot_count=" << cnot_count << "\n"
       << "toffoli_count=" << toffoli_count << "\n"
       << "total_gates=" << total_gates() << "\n"
       << "depth=" << depth << "\n"
       << "clean_highwater=" << clean_highwater << "\n"
       << "dirty_highwater=" << dirty_highwater << "\n"
       << "total_width=" << total_width << "\n";
    return os.str();
}

std::string ResourceReport::to_json() const {
    nlohmann::json j;
    j["not_count"] = not_count;
    j["cnot_count"] = cnot_count;
    j["toffoli_count"] = toffoli_count;
    j["total_gates"] = total_gates();
    j["depth"] = depth;
    j["clean_highwater"] = clean_highwater;
    j["dirty_highwater"] = dirty_highwater;
    j["total_width"] = total_width;
    return j.dump(2);
}

double fit_scaling(const std::vector<double>& sizes, const std::vector<double>& values) {
    if (sizes.size() != values.size() || sizes.size() < 2)
        throw BuildError(BuildError::Kind::InvalidParams, "fit_scaling needs matched samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = sizes.size();
    for (size_t i = 0; i < n; ++i) {
        if (sizes[i] <= 0 || values[i] <= 0)
            throw BuildError(BuildError::Kind::InvalidParams, "fit_scaling needs positive data");
        double x = std::log(sizes[i]);
        double y = std::log(values[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-12)
        throw BuildError(BuildError::Kind::InvalidParams, "fit_scaling: degenerate fit");
    return (n * sxy - sx * sy) / denom;
}

} // namespace revarith
