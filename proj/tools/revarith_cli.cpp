// Command-line front end: synthesize lowered gate lists, verify
// constructions against their arithmetic oracles, and run the factoring
// demo on simulable moduli.
//
// Exit codes: 0 success/pass, 1 verification failure, 2 usage errors.

#include "revarith/gatelist.hpp"
#include "revarith/lowering.hpp"
#include "revarith/ops_registry.hpp"
#include "revarith/shor.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace revarith;

namespace {

void add_op_params(CLI::App* cmd, OpParams& p) {
    cmd->add_option("-n,--size", p.n, "primary register size");
    cmd->add_option("-m,--target-size", p.m, "target register size (defaults to -n)");
    cmd->add_option("-K,--constant", p.k, "constant offset/multiplier/pivot");
    cmd->add_option("-R,--modulus", p.r, "modulus");
    cmd->add_option("-c,--controls", p.controls, "number of control wires");
    cmd->add_option("--shift", p.shift, "bit rotation amount");
    cmd->add_flag("--biflip-at-r", p.biflip_at_r,
                  "replace the middle pivot-flip of mod_offset by a bi-flip");
}

int run_synthesize(const std::string& op, const OpParams& params, const std::string& out_path,
                   bool json) {
    OpInstance inst;
    Circuit lowered = synthesize_op(op, params, &inst);
    ResourceReport report = measure_resources(lowered);

    std::string gates = serialize_gatelist(lowered);
    if (out_path.empty()) {
        std::cout << gates;
        std::cerr << (json ? report.to_json() : report.to_text());
    } else {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "cannot write " << out_path << "\n";
            return 2;
        }
        f << gates;
        std::cout << (json ? report.to_json() : report.to_text());
    }
    return 0;
}

int run_verify(const std::string& op, const OpParams& params, const std::string& file) {
    OpInstance inst;
    Circuit lowered = synthesize_op(op, params, &inst);
    if (!file.empty()) {
        std::ifstream f(file);
        if (!f) {
            std::cerr << "cannot read " << file << "\n";
            return 2;
        }
        std::stringstream buf;
        buf << f.rdbuf();
        lowered = parse_gatelist(buf.str());
        if (lowered.width != inst.width) {
            std::cerr << "fail: file width " << lowered.width << " does not match the "
                      << op << " layout width " << inst.width << "\n";
            return 1;
        }
    }
    auto violation = verify_instance(inst, lowered);
    if (violation) {
        std::cout << "fail: " << violation->describe() << "\n";
        return 1;
    }
    std::cout << "pass: " << op << " verified over all " << (uint64_t{1} << lowered.width)
              << " basis states (" << inst.extras << " dirty wires and "
              << inst.controls.size() << " controls swept)\n";
    return 0;
}

int run_shor(uint64_t modulus, uint32_t trials, uint64_t seed, uint32_t phase_bits) {
    if (modulus % 2 == 0) {
        std::cerr << "rejected: even modulus (divide out factors of two first)\n";
        return 2;
    }
    uint64_t root = 0;
    if (is_prime_power(modulus, &root)) {
        std::cerr << "rejected: modulus is a prime power (base " << root << ")\n";
        return 2;
    }

    FactorResult result = factor(modulus, trials, seed, phase_bits);

    // Budget and gate counts reported for a canonical co-prime base (the
    // lucky-gcd path needs no quantum run at all).
    uint64_t report_base = 2;
    while (std::gcd(report_base, modulus) != 1) ++report_base;
    ShorParams params;
    params.modulus = modulus;
    params.base = report_base;
    params.phase_bits = phase_bits;
    PeriodFindingCircuit circ = build_period_finding(params);

    std::cout << "modulus: " << modulus << "\n";
    std::cout << "base: " << result.base_used << "\n";
    std::cout << "samples:";
    for (uint64_t s : result.samples) std::cout << " " << s;
    std::cout << "\n";
    if (result.period)
        std::cout << "period: " << *result.period << "\n";
    else
        std::cout << "period: not recovered\n";
    std::cout << "budget: clean=" << circ.budget.clean << " dirty=" << circ.budget.dirty
              << " total=" << circ.budget.total << "\n";
    const ResourceReport& r = circ.classical_resources;
    std::cout << "gates: not=" << r.not_count << " cnot=" << r.cnot_count
              << " toffoli=" << r.toffoli_count << " total=" << r.total_gates()
              << " depth=" << r.depth << "\n";
    if (result.success) {
        std::cout << "factors: " << result.factor_a << " " << result.factor_b << "\n";
        return 0;
    }
    std::cout << "factors: not found after " << result.trials << " trials\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reversible arithmetic circuits with borrowed dirty wires"};
    app.require_subcommand(1);

    OpParams params;
    std::string op_name;
    std::string out_path;
    std::string verify_file;
    bool json = false;

    CLI::App* synth = app.add_subcommand("synthesize", "lower an operation to a gate list");
    synth->add_option("op", op_name, "operation name")->required();
    add_op_params(synth, params);
    synth->add_option("--out", out_path, "write the gate list to this file");
    synth->add_flag("--json", json, "print the resource report as JSON");

    CLI::App* verify = app.add_subcommand("verify", "check an operation against its oracle");
    verify->add_option("op", op_name, "operation name")->required();
    add_op_params(verify, params);
    verify->add_option("--file", verify_file, "verify this gate-list file instead");

    uint64_t modulus = 0;
    uint32_t trials = 10;
    uint64_t seed = 1;
    uint32_t phase_bits = ShorParams::kAutoPhaseBits;
    CLI::App* shor = app.add_subcommand("shor", "factor a small odd modulus");
    shor->add_option("-R,--modulus", modulus, "modulus to factor")->required();
    shor->add_option("--trials", trials, "maximum factoring attempts");
    shor->add_option("--seed", seed, "pseudorandom seed");
    shor->add_option("--p,--phase-bits", phase_bits, "phase bits (default 2n)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (synth->parsed()) return run_synthesize(op_name, params, out_path, json);
        if (verify->parsed()) return run_verify(op_name, params, verify_file);
        if (shor->parsed()) return run_shor(modulus, trials, seed, phase_bits);
    } catch (const BuildError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
