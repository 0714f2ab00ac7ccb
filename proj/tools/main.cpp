// lamthin: laminar-constrained spanning trees with certified multiplicative
// guarantees, over exact rational arithmetic.
//
// Exit codes: 0 ok, 1 verification mismatch, 2 infeasible, 3 input error,
// 4 internal-invariant failure.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lamthin/harness.hpp"
#include "lamthin/json_io.hpp"
#include "lamthin/pipeline.hpp"

namespace {

using namespace lamthin;

constexpr int kOk = 0;
constexpr int kVerifyMismatch = 1;
constexpr int kInfeasible = 2;
constexpr int kInputError = 3;
constexpr int kInvariantError = 4;

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json_file(out_path, j);
}

int cmd_solve(const std::string& instance_path, const std::string& eta_text,
              const std::string& out_path) {
    Instance inst = instance_from_json(load_json_file(instance_path));
    if (!eta_text.empty()) inst.eta = parse_rat(eta_text);
    validate_instance(inst);
    auto report = solve_instance(inst);
    if (!report) {
        emit(infeasible_report(), out_path);
        return kInfeasible;
    }
    emit(report_to_json(*report), out_path);
    return kOk;
}

int cmd_lp(const std::string& instance_path, const std::string& out_path) {
    Instance inst = normalized(instance_from_json(load_json_file(instance_path)));
    auto relax = solve_relaxation(inst.graph, inst.family, inst.costs);
    if (!relax) {
        emit(infeasible_report(), out_path);
        return kInfeasible;
    }
    json j = point_to_json(relax->x);
    j["status"] = "ok";
    j["objective"] = rat_str(relax->value);
    emit(j, out_path);
    return kOk;
}

int cmd_reduce(const std::string& instance_path, const std::string& x_path,
               const std::string& out_path) {
    Instance inst = normalized(instance_from_json(load_json_file(instance_path)));
    FracPoint x = point_from_json(load_json_file(x_path));
    ReductionResult red = reduce_family(inst.graph, inst.family, x, inst.eta);
    FracPoint aligned = build_aligned_point(inst.graph, red.new_family, x, inst.eta);
    json j = reduction_to_json(red);
    j["status"] = "ok";
    j["x_prime"] = point_to_json(aligned);
    emit(j, out_path);
    return kOk;
}

int cmd_round(const std::string& instance_path, const std::string& x_path,
              const std::string& out_path) {
    Instance inst = normalized(instance_from_json(load_json_file(instance_path)));
    FracPoint x = point_from_json(load_json_file(x_path));
    LaminarFamily unbounded;
    for (LaminarSet s : inst.family.sets()) {
        s.bound = std::nullopt;
        unbounded.add(std::move(s));
    }
    RoundAlignedOutcome out = round_aligned(inst.graph, unbounded, x, inst.costs);
    json cuts = json::array();
    for (const LaminarSet& s : out.bounded.sets()) {
        IdSet cut = cut_edges(inst.graph, s.members);
        long crossings =
            static_cast<long>(set_intersection_sorted(out.tree, cut).size());
        Rat x_delta = x.sum(cut);
        cuts.push_back(
            {{"id", s.id},
             {"crossings", crossings},
             {"x_delta", rat_str(x_delta)},
             {"bound", *s.bound},
             {"ratio", x_delta == 0 ? json(nullptr) : json(rat_str(Rat(crossings) / x_delta))}});
    }
    json j;
    j["status"] = "ok";
    j["tree"] = out.tree;
    j["cost"] = {{"tree", rat_str(cost_of(inst.costs, out.tree))},
                 {"lp", rat_str(cost_of_point(inst.costs, x))}};
    j["cuts"] = std::move(cuts);
    j["trace"] = {{"rounding", rounding_log_to_json(out.log)}};
    emit(j, out_path);
    return kOk;
}

int cmd_verify(const std::string& instance_path, const std::string& report_path) {
    Instance inst = instance_from_json(load_json_file(instance_path));
    json report = load_json_file(report_path);
    if (auto defect = verify_report(inst, report)) {
        std::cerr << "verification failed: " << *defect << "\n";
        return kVerifyMismatch;
    }
    std::cout << "report verified\n";
    return kOk;
}

int cmd_gen(int n, int k, uint64_t seed, int depth, const std::string& out_path) {
    Instance inst = gen_instance(n, k, seed, depth);
    emit(instance_to_json(inst), out_path);
    return kOk;
}

int cmd_min_partition(const std::string& instance_path, const std::string& weights_path) {
    Instance inst = instance_from_json(load_json_file(instance_path));
    FracPoint w = point_from_json(load_json_file(weights_path));
    MinPartitionResult res = min_partition(inst.graph, w);
    json j;
    j["value"] = rat_str(res.value);
    j["partition"] = vertex_sets_to_json(res.partition.blocks);
    std::cout << j.dump(2) << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"laminar-constrained spanning trees with certified guarantees"};
    app.require_subcommand(1);

    std::string instance_path, x_path, report_path, weights_path, out_path, eta_text;
    int n = 8, k = 2, depth = 3;
    uint64_t seed = 0;

    CLI::App* solve = app.add_subcommand("solve", "run the full pipeline");
    solve->add_option("--instance", instance_path, "instance JSON")->required();
    solve->add_option("--eta", eta_text, "override eta (rational, > 2)");
    solve->add_option("--out", out_path, "write the report here (default stdout)");

    CLI::App* lp = app.add_subcommand("lp", "solve the relaxation and dump x");
    lp->add_option("--instance", instance_path, "instance JSON")->required();
    lp->add_option("--out", out_path, "output path");

    CLI::App* reduce = app.add_subcommand("reduce", "family reduction stage alone");
    reduce->add_option("--instance", instance_path, "instance JSON")->required();
    reduce->add_option("--x", x_path, "fractional point JSON")->required();
    reduce->add_option("--out", out_path, "output path");

    CLI::App* round = app.add_subcommand("round", "rounding stage alone (x must be aligned)");
    round->add_option("--instance", instance_path, "instance JSON")->required();
    round->add_option("--x", x_path, "aligned fractional point JSON")->required();
    round->add_option("--out", out_path, "output path");

    CLI::App* verify = app.add_subcommand("verify", "recount a report against its instance");
    verify->add_option("--instance", instance_path, "instance JSON")->required();
    verify->add_option("--report", report_path, "report JSON")->required();

    CLI::App* gen = app.add_subcommand("gen", "generate a random feasible instance");
    gen->add_option("--n", n, "vertex count")->required();
    gen->add_option("--k", k, "edge connectivity target")->required();
    gen->add_option("--seed", seed, "PRNG seed")->required();
    gen->add_option("--depth", depth, "laminar recursion depth");
    gen->add_option("--out", out_path, "output path");

    CLI::App* minpart = app.add_subcommand("min-partition", "partition separation debug");
    minpart->add_option("--instance", instance_path, "instance JSON")->required();
    minpart->add_option("--weights", weights_path, "edge weights JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (solve->parsed()) return cmd_solve(instance_path, eta_text, out_path);
        if (lp->parsed()) return cmd_lp(instance_path, out_path);
        if (reduce->parsed()) return cmd_reduce(instance_path, x_path, out_path);
        if (round->parsed()) return cmd_round(instance_path, x_path, out_path);
        if (verify->parsed()) return cmd_verify(instance_path, report_path);
        if (gen->parsed()) return cmd_gen(n, k, seed, depth, out_path);
        if (minpart->parsed()) return cmd_min_partition(instance_path, weights_path);
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const invariant_error& e) {
        std::cerr << "internal invariant failure: " << e.what() << "\n";
        return kInvariantError;
    }
    return kInputError;
}
