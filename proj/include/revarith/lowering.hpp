#pragma once

// OpNode lowering driver, the mandatory multi-control elimination pass,
// resource measurement, and empirical scaling fits.

#include "revarith/circuit.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace revarith {

enum class OpKind {
    AddReg,
    Offset,
    Increment,
    Decrement,
    CompareLt,
    CompareLtConst,
    MultiNot,
    Mcx,
    BitRotate,
    BitReverse,
    BiFlipConst,
    BiFlipReg,
    PivotFlipConst,
    PivotFlipReg,
    ModOffset,
    ModAddReg,
    ModNegate,
    ModDouble,
    ModHalve,
    ModScaleAdd,
    ModBimultiply,
};

/// A high-level operation awaiting lowering. `k` doubles as the shift for
/// BitRotate. Modular kinds require 0 < r odd where noted in the underlying
/// construction.
struct OpNode {
    OpKind kind;
    uint64_t k = 0;
    uint64_t r = 0;
    std::vector<Register> operands;
    std::vector<Wire> controls;
    bool flag = false; // ModOffset: replace the middle pivot-flip by a bi-flip
};

/// Emits the node's gates into the builder (may still contain gates with
/// more than two controls; run lower_mcx_pass on the result).
void lower(const OpNode& node, CircuitBuilder& b);

/// Lowers the node over a pool of `width` wires and runs the final
/// multi-control pass; the result contains only X/CX/CCX.
Circuit lower_to_circuit(const OpNode& node, uint32_t width);

struct ResourceReport {
    uint64_t not_count = 0;
    uint64_t cnot_count = 0;
    uint64_t toffoli_count = 0;
    uint64_t depth = 0;
    int clean_highwater = 0;
    int dirty_highwater = 0;
    uint32_t total_width = 0;

    uint64_t total_gates() const { return not_count + cnot_count + toffoli_count; }

    std::string to_text() const; // key=value lines
    std::string to_json() const;
};

/// Gate counts by kind plus depth of the conflict DAG in which two gates
/// conflict iff they share any wire (controls included).
ResourceReport measure_resources(const Circuit& circuit);

/// Least-squares slope of log(values) against log(sizes).
double fit_scaling(const std::vector<double>& sizes, const std::vector<double>& values);

} // namespace revarith
