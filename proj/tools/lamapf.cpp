// Command-line front end for the reduction toolkit. Every subcommand
// prints one machine-readable JSON document on standard output (including
// the error path, as {"error": ...}) and keeps human prose on standard
// error. Exit codes: 0 success / ACCEPT / agreement, 1 negative verdict or
// bad input data, 2 internal inconsistency, 3 limits exceeded, 64 usage.

#include <cstdint>
#include <functional>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "lamapf/lamapf.hpp"

namespace {

using namespace lamapf;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitBug = 2;
constexpr int kExitLimits = 3;
constexpr int kExitUsage = 64;

void emit_error(const std::string& msg) {
    Json j;
    j["error"] = msg;
    std::cout << dump_canonical(j);
    std::cerr << "error: " << msg << "\n";
}

int guarded(const std::function<int()>& fn) {
    try {
        return fn();
    } catch (const BugError& e) {
        emit_error(e.what());
        return kExitBug;
    } catch (const Error& e) {
        emit_error(e.what());
        return kExitNegative;
    } catch (const std::exception& e) {
        emit_error(e.what());
        return kExitBug;
    }
}

Formula3CNF load_cnf(const std::string& path) { return parse_dimacs(read_text_file(path)); }

struct PathArgs {
    std::string cnf, instance, meta, solution, assignment, out;
};

struct LimitArgs {
    std::uint64_t max_states = 50'000'000;
    double max_seconds = 600.0;
    int threads = int(std::max(1u, std::thread::hardware_concurrency()));
    SolveLimits limits() const { return SolveLimits{max_states, max_seconds, false}; }
};

int cmd_reduce(const PathArgs& p) {
    Formula3CNF f = load_cnf(p.cnf);
    auto [inst, meta] = reduce(f);
    AuditReport rep = audit(inst, meta);
    if (!rep.ok) {
        std::string msg = "audit failed:";
        for (const std::string& s : rep.failures) msg += "\n  " + s;
        throw BugError(msg);
    }
    write_text_file(p.out, dump_canonical(instance_to_json(inst)));
    if (!p.meta.empty()) write_text_file(p.meta, dump_canonical(meta_to_json(meta)));
    Json j;
    j["vertices"] = inst.num_vertices();
    j["edges"] = inst.edges.size();
    j["agents"] = inst.num_agents();
    j["radius"] = inst.radius;
    j["audit"] = "ok";
    std::cout << dump_canonical(j);
    return kExitOk;
}

int cmd_synthesize(const PathArgs& p) {
    Formula3CNF f = load_cnf(p.cnf);
    auto [inst, meta] = reduce(f);
    if (!p.instance.empty()) {
        Instance given = load_instance(p.instance);
        if (instance_to_json(given) != instance_to_json(inst))
            throw Error("instance file does not match the reduction of this formula");
    }
    if (!p.meta.empty()) {
        ReductionMeta given = load_meta(p.meta);
        if (meta_to_json(given) != meta_to_json(meta))
            throw Error("meta file does not match the reduction of this formula");
    }
    Assignment a = assignment_from_json(
        detail::parse_json_text(read_text_file(p.assignment), "assignment"), f.num_vars);
    Solution sol = synthesize(f, a, inst, meta);
    std::string text = dump_canonical(solution_to_json(sol));
    if (!p.out.empty()) {
        write_text_file(p.out, text);
        Json j;
        j["moves"] = sol.moves.size();
        j["out"] = p.out;
        std::cout << dump_canonical(j);
    } else {
        std::cout << text;
    }
    return kExitOk;
}

int cmd_extract(const PathArgs& p) {
    Instance inst = load_instance(p.instance);
    ReductionMeta meta = load_meta(p.meta);
    Solution sol = load_solution(p.solution);
    Assignment a = extract(inst, meta, sol);
    std::string text = dump_canonical(assignment_to_json(a));
    if (!p.out.empty()) write_text_file(p.out, text);
    std::cout << text;
    if (!p.cnf.empty()) {
        Formula3CNF f = load_cnf(p.cnf);
        if (!evaluate(f, a)) {
            std::cerr << "error: extracted assignment does not satisfy the given formula; "
                         "the inputs do not belong together\n";
            return kExitNegative;
        }
        std::cerr << "extracted assignment satisfies the formula\n";
    }
    return kExitOk;
}

int cmd_validate(const PathArgs& p) {
    Instance inst = load_instance(p.instance);
    Solution sol = load_solution(p.solution);
    ValidationReport rep = validate(inst, sol);
    std::string text = dump_canonical(report_to_json(rep));
    if (!p.out.empty()) write_text_file(p.out, text);
    std::cout << text;
    return rep.accept ? kExitOk : kExitNegative;
}

int cmd_solve(const PathArgs& p, const LimitArgs& lim) {
    Instance inst = load_instance(p.instance);
    SolveResult res = solve_bfs(inst, lim.limits());
    Json j;
    j["verdict"] = to_string(res.status);
    j["states_expanded"] = res.states_expanded;
    j["states_seen"] = res.states_seen;
    if (res.status == SolveStatus::SOLVED)
        j["solution"] = solution_to_json(res.solution);
    else
        j["solution"] = nullptr;
    std::cout << dump_canonical(j);
    if (res.status == SolveStatus::SOLVED && !p.out.empty())
        write_text_file(p.out, dump_canonical(solution_to_json(res.solution)));
    switch (res.status) {
        case SolveStatus::SOLVED: return kExitOk;
        case SolveStatus::UNSOLVABLE: return kExitNegative;
        case SolveStatus::LIMIT_EXCEEDED: return kExitLimits;
    }
    return kExitBug;
}

int cmd_roundtrip(const PathArgs& p, const LimitArgs& lim) {
    Formula3CNF f = load_cnf(p.cnf);
    AgreementRecord rec = solvable_verdict(f, lim.limits());
    Json j;
    j["n"] = rec.n;
    j["m"] = rec.m;
    j["sat"] = rec.sat;
    j["assignment"] = rec.assignment ? assignment_to_json(*rec.assignment) : Json(nullptr);
    j["search"] = to_string(rec.search);
    j["states_expanded"] = rec.states_expanded;
    j["outcome"] = to_string(rec.outcome);
    j["synthesized_accepts"] =
        rec.synthesized_accepts ? Json(*rec.synthesized_accepts) : Json(nullptr);
    j["extracted_satisfies"] =
        rec.extracted_satisfies ? Json(*rec.extracted_satisfies) : Json(nullptr);
    j["consistent"] = rec.consistent();
    std::string text = dump_canonical(j);
    if (!p.out.empty()) write_text_file(p.out, text);
    std::cout << text;
    if (rec.outcome == Agreement::INCONCLUSIVE) return kExitLimits;
    return rec.consistent() ? kExitOk : kExitBug;
}

int cmd_render(const PathArgs& p, double scale, bool zones) {
    // deliberately skips the start/goal geometry check: rendering broken
    // instances is how you debug them
    Instance inst = load_instance(p.instance, false);
    RenderOptions opt;
    opt.scale = scale;
    opt.zones = zones;
    RenderResult res = render_svg(inst, opt);
    for (const std::string& w : res.warnings) std::cerr << "warning: " << w << "\n";
    if (!p.out.empty()) {
        write_text_file(p.out, res.svg);
        Json j;
        j["out"] = p.out;
        j["warnings"] = res.warnings.size();
        std::cout << dump_canonical(j);
    } else {
        std::cout << res.svg;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"3-CNF to large-agent MAPF reduction toolkit"};
    app.require_subcommand(1);

    PathArgs paths;
    LimitArgs limits;
    double scale = 10.0;
    bool zones = false;

    auto add_in = [&](CLI::App* cmd, const char* flag, std::string& slot, const char* desc,
                      bool required) {
        auto* o = cmd->add_option(flag, slot, desc)->check(CLI::ExistingFile);
        if (required) o->required();
        return o;
    };
    auto add_limit_flags = [&](CLI::App* cmd) {
        cmd->add_option("--max-states", limits.max_states, "search state budget")
            ->capture_default_str();
        cmd->add_option("--max-seconds", limits.max_seconds, "search time budget")
            ->capture_default_str();
        cmd->add_option("--threads", limits.threads,
                        "worker threads (reserved; the search currently runs sequentially)")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };

    CLI::App* reduce_cmd = app.add_subcommand("reduce", "compile a DIMACS formula to an instance");
    add_in(reduce_cmd, "--cnf", paths.cnf, "DIMACS CNF input", true);
    reduce_cmd->add_option("--out", paths.out, "instance JSON output")->required();
    reduce_cmd->add_option("--meta", paths.meta, "meta JSON output (name table)");

    CLI::App* synth_cmd =
        app.add_subcommand("synthesize", "build the canonical solution for an assignment");
    add_in(synth_cmd, "--cnf", paths.cnf, "DIMACS CNF input", true);
    add_in(synth_cmd, "--assignment", paths.assignment, "assignment JSON input", true);
    add_in(synth_cmd, "--instance", paths.instance, "instance JSON to check against", false);
    add_in(synth_cmd, "--meta", paths.meta, "meta JSON to check against", false);
    synth_cmd->add_option("--out", paths.out, "solution JSON output (default: stdout)");

    CLI::App* extract_cmd =
        app.add_subcommand("extract", "recover an assignment from a valid solution");
    add_in(extract_cmd, "--instance", paths.instance, "instance JSON input", true);
    add_in(extract_cmd, "--meta", paths.meta, "meta JSON input", true);
    add_in(extract_cmd, "--solution", paths.solution, "solution JSON input", true);
    add_in(extract_cmd, "--cnf", paths.cnf, "optional formula to check the result against", false);
    extract_cmd->add_option("--out", paths.out, "assignment JSON output (default: stdout)");

    CLI::App* validate_cmd = app.add_subcommand("validate", "replay a solution against an instance");
    add_in(validate_cmd, "--instance", paths.instance, "instance JSON input", true);
    add_in(validate_cmd, "--solution", paths.solution, "solution JSON input", true);
    validate_cmd->add_option("--out", paths.out, "report JSON output (default: stdout only)");

    CLI::App* solve_cmd = app.add_subcommand("solve", "exhaustive search for any valid solution");
    add_in(solve_cmd, "--instance", paths.instance, "instance JSON input", true);
    solve_cmd->add_option("--out", paths.out, "solution JSON output when solved");
    add_limit_flags(solve_cmd);

    CLI::App* roundtrip_cmd =
        app.add_subcommand("roundtrip", "compare the SAT oracle against the search on one formula");
    add_in(roundtrip_cmd, "--cnf", paths.cnf, "DIMACS CNF input", true);
    roundtrip_cmd->add_option("--out", paths.out, "agreement record JSON output");
    add_limit_flags(roundtrip_cmd);

    CLI::App* render_cmd = app.add_subcommand("render", "draw an instance as SVG");
    add_in(render_cmd, "--instance", paths.instance, "instance JSON input", true);
    render_cmd->add_option("--out", paths.out, "SVG output (default: stdout)");
    render_cmd->add_option("--scale", scale, "SVG pixels per coordinate unit")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    render_cmd->add_flag("--zones", zones, "shade horizontal bands per vertex family");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (app.got_subcommand(reduce_cmd)) return guarded([&] { return cmd_reduce(paths); });
    if (app.got_subcommand(synth_cmd)) return guarded([&] { return cmd_synthesize(paths); });
    if (app.got_subcommand(extract_cmd)) return guarded([&] { return cmd_extract(paths); });
    if (app.got_subcommand(validate_cmd)) return guarded([&] { return cmd_validate(paths); });
    if (app.got_subcommand(solve_cmd)) return guarded([&] { return cmd_solve(paths, limits); });
    if (app.got_subcommand(roundtrip_cmd))
        return guarded([&] { return cmd_roundtrip(paths, limits); });
    if (app.got_subcommand(render_cmd))
        return guarded([&] { return cmd_render(paths, scale, zones); });
    return kExitUsage;
}
