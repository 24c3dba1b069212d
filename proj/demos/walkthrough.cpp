// End-to-end tour on two tiny formulas: compile a satisfiable one, walk a
// canonical solution through the validator, read the assignment back out,
// then watch the search agree with the SAT oracle on an unsatisfiable one.
// Run from anywhere; writes one SVG next to the current directory.

#include <iostream>

#include "lamapf/lamapf.hpp"

using namespace lamapf;

int main() {
    const std::string dimacs = "c (x1 | ~x2 | x3)\np cnf 3 1\n1 -2 3 0\n";
    Formula3CNF f = parse_dimacs(dimacs);
    std::cout << "formula: " << render_dimacs(f);

    auto [inst, meta] = reduce(f);
    AuditReport rep = audit(inst, meta);
    std::cout << "reduced: " << inst.num_vertices() << " vertices, " << inst.edges.size()
              << " edges, " << inst.num_agents() << " agents, radius " << inst.radius
              << ", audit " << (rep.ok ? "ok" : "FAILED") << "\n";

    Assignment a{true, true, false};
    Solution sol = synthesize(f, a, inst, meta);
    ValidationReport v = validate(inst, sol);
    std::cout << "synthesized " << sol.moves.size() << " moves for x1=T x2=T x3=F; validator says "
              << (v.accept ? "ACCEPT" : "REJECT") << "\n";

    Assignment back = extract(inst, meta, sol);
    std::cout << "extracted assignment:";
    for (std::size_t i = 0; i < back.size(); ++i)
        std::cout << " x" << i + 1 << "=" << (back[i] ? "T" : "F");
    std::cout << " (satisfies: " << (evaluate(f, back) ? "yes" : "no") << ")\n";

    SolveResult sr = solve_bfs(inst, SolveLimits{2'000'000, 60.0, false});
    std::cout << "independent search: " << to_string(sr.status) << " after " << sr.states_expanded
              << " expansions\n";

    Formula3CNF unsat = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n");
    AgreementRecord rec = solvable_verdict(unsat, SolveLimits{2'000'000, 60.0, false});
    std::cout << "(x1) & (~x1): oracle says " << (rec.sat ? "SAT" : "UNSAT") << ", search says "
              << to_string(rec.search) << " -> " << to_string(rec.outcome) << "\n";

    RenderOptions opt;
    opt.zones = true;
    write_text_file("walkthrough.svg", render_svg(inst, opt).svg);
    std::cout << "wrote walkthrough.svg\n";
    return 0;
}
