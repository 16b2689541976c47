// Python bindings for the main operations: synthesis to gate lists,
// oracle verification, resource reports, and the factoring demo.

#include "revarith/gatelist.hpp"
#include "revarith/lowering.hpp"
#include "revarith/ops_registry.hpp"
#include "revarith/shor.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace revarith;

namespace {

OpParams make_params(uint32_t n, uint32_t m, uint64_t k, uint64_t r, uint32_t controls,
                     uint32_t shift, bool biflip_at_r) {
    OpParams p;
    p.n = n;
    p.m = m;
    p.k = k;
    p.r = r;
    p.controls = controls;
    p.shift = shift;
    p.biflip_at_r = biflip_at_r;
    return p;
}

py::dict report_dict(const ResourceReport& rep) {
    py::dict d;
    d["not_count"] = rep.not_count;
    d["cnot_count"] = rep.cnot_count;
    d["toffoli_count"] = rep.toffoli_count;
    d["total_gates"] = rep.total_gates();
    d["depth"] = rep.depth;
    d["clean_highwater"] = rep.clean_highwater;
    d["dirty_highwater"] = rep.dirty_highwater;
    d["total_width"] = rep.total_width;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "reversible arithmetic circuits with borrowed dirty wires";

    py::register_exception<BuildError>(mod, "BuildError");

    mod.def("registered_ops", &registered_ops, "Names of synthesizable operations");

    mod.def(
        "synthesize",
        [](const std::string& op, uint32_t n, uint32_t m, uint64_t k, uint64_t r,
           uint32_t controls, uint32_t shift, bool biflip_at_r) {
            OpParams p = make_params(n, m, k, r, controls, shift, biflip_at_r);
            Circuit c = synthesize_op(op, p);
            py::dict d;
            d["gatelist"] = serialize_gatelist(c);
            d["report"] = report_dict(measure_resources(c));
            return d;
        },
        py::arg("op"), py::arg("n") = 0, py::arg("m") = 0, py::arg("k") = 0, py::arg("r") = 0,
        py::arg("controls") = 0, py::arg("shift") = 0, py::arg("biflip_at_r") = false,
        "Lower an operation to an X/CX/CCX gate list plus its resource report");

    mod.def(
        "verify",
        [](const std::string& op, uint32_t n, uint32_t m, uint64_t k, uint64_t r,
           uint32_t controls, uint32_t shift, bool biflip_at_r) {
            OpParams p = make_params(n, m, k, r, controls, shift, biflip_at_r);
            auto violation = verify_op(op, p);
            py::dict d;
            d["ok"] = !violation.has_value();
            if (violation) d["counterexample"] = violation->describe();
            return d;
        },
        py::arg("op"), py::arg("n") = 0, py::arg("m") = 0, py::arg("k") = 0, py::arg("r") = 0,
        py::arg("controls") = 0, py::arg("shift") = 0, py::arg("biflip_at_r") = false,
        "Exhaustively check an operation against its arithmetic oracle");

    mod.def(
        "qubit_budget",
        [](uint64_t modulus) {
            uint64_t base = 2;
            while (std::gcd(base, modulus) != 1) ++base;
            ShorParams p;
            p.modulus = modulus;
            p.base = base;
            PeriodFindingCircuit c = build_period_finding(p);
            return py::make_tuple(c.budget.clean, c.budget.dirty, c.budget.total);
        },
        py::arg("modulus"), "Clean/dirty/total wires of the assembled period finder");

    mod.def(
        "shor",
        [](uint64_t modulus, uint32_t trials, uint64_t seed, uint32_t phase_bits) {
            FactorResult f = factor(modulus, trials, seed, phase_bits);
            py::dict d;
            d["success"] = f.success;
            if (f.success) d["factors"] = py::make_tuple(f.factor_a, f.factor_b);
            d["base"] = f.base_used;
            d["samples"] = f.samples;
            d["trials"] = f.trials;
            if (f.period) d["period"] = *f.period;
            return d;
        },
        py::arg("modulus"), py::arg("trials") = 10, py::arg("seed") = 1,
        py::arg("phase_bits") = ShorParams::kAutoPhaseBits, "Factor a small odd modulus with the simulated circuit");

    mod.def("continued_fractions", &continued_fractions, py::arg("s"), py::arg("p"),
            py::arg("limit"),
            "Denominators of the convergents of s/2^p below limit, largest first");
}
