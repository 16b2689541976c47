#pragma once

// Name-indexed registry of the synthesizable operations: wire layout,
// lowering, and the arithmetic oracle used for verification. Shared by the
// CLI, the python module, and the acceptance suite.

#include "revarith/lowering.hpp"
#include "revarith/sim.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace revarith {

struct OpParams {
    uint32_t n = 0;      // primary register size
    uint32_t m = 0;      // second/target register size where applicable (0: default)
    uint64_t k = 0;      // constant offset/multiplier/pivot
    uint64_t r = 0;      // modulus
    uint32_t controls = 0;
    uint32_t shift = 0;  // bit rotation
    bool biflip_at_r = false;
};

/// A fully laid-out operation over a pool: operand registers first, then
/// `extras` borrowable wires, then the control wires.
struct OpInstance {
    std::string name;
    OpNode node;
    uint32_t width = 0;
    uint32_t extras = 0;
    std::vector<Register> operands;
    std::vector<Wire> controls;
    std::function<BasisState(BasisState)> oracle; // full-state oracle
    std::function<bool(BasisState)> domain;
};

std::vector<std::string> registered_ops();

/// Lays the operation out with the given number of extra borrowable wires.
OpInstance instantiate_op(const std::string& name, const OpParams& params, uint32_t extras);

/// Lowers with the smallest workable number of extra wires (deterministic:
/// extras are tried in increasing order). Returns the instance used.
Circuit synthesize_op(const std::string& name, const OpParams& params,
                      OpInstance* instance_out = nullptr);

/// Exhaustively verifies a lowered circuit against the instance's oracle.
std::optional<ContractViolation> verify_instance(const OpInstance& inst, const Circuit& lowered);

/// Synthesize + verify in one step.
std::optional<ContractViolation> verify_op(const std::string& name, const OpParams& params);

} // namespace revarith
