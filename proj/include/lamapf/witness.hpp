#pragma once

// Bridges between SAT witnesses and MAPF witnesses, in both directions.
//
// synthesize: given a satisfying assignment, emit a move sequence in six
// phases — v-agents slide out of the way (to B_i when true, C_i when
// false), b-agents rotate through K onto the L row to pin them there,
// c-agents cross their gadgets through an F vertex of a satisfied literal,
// then everything unwinds in reverse. The phase orderings are load-bearing:
// b-agents can only reach the L row after the A row is empty, and can only
// return to the J column after every c-agent has left it.
//
// extract: replay a valid solution backwards until the moment G_1 was last
// occupied; at that instant each v-agent is parked at its B/C vertex and
// the B-row occupancy pattern reads off a satisfying assignment.

#include <array>
#include <string>
#include <unordered_map>
#include <vector>

#include "lamapf/cnf.hpp"
#include "lamapf/errors.hpp"
#include "lamapf/instance.hpp"
#include "lamapf/reduction.hpp"

namespace lamapf {

struct SynthesisPlan {
    static constexpr int kPhases = 6;
    static constexpr std::array<const char*, kPhases> phase_names = {
        "v-agents out", "b-agents out", "c-agents enter", "c-agents arrive",
        "b-agents back", "v-agents home",
    };
    std::array<std::vector<Move>, kPhases> phases;

    Solution to_solution() const {
        Solution sol;
        for (const auto& ph : phases) sol.moves.insert(sol.moves.end(), ph.begin(), ph.end());
        return sol;
    }
    std::size_t total_moves() const {
        std::size_t t = 0;
        for (const auto& ph : phases) t += ph.size();
        return t;
    }
};

namespace detail {

struct GadgetIds {
    const Instance& inst;
    const ReductionMeta& meta;
    std::unordered_map<int, int> agent_at;  // start vertex -> agent id

    GadgetIds(const Instance& i, const ReductionMeta& me) : inst(i), meta(me) {
        for (const Agent& a : inst.agents) {
            if (!agent_at.emplace(a.start, a.id).second)
                throw Error("two agents start at vertex " + std::to_string(a.start));
        }
    }
    int vertex(const std::string& name) const { return meta.id_of(name); }
    int vertex(const char* prefix, int idx) const { return meta.id_of(prefix + std::to_string(idx)); }
    int agent_starting_at(int v) const {
        auto it = agent_at.find(v);
        if (it == agent_at.end()) throw Error("no agent starts at vertex " + std::to_string(v));
        return it->second;
    }
};

inline void walk(std::vector<Move>& out, int agent, const std::vector<int>& path) {
    for (std::size_t t = 0; t + 1 < path.size(); ++t) out.push_back({agent, path[t], path[t + 1]});
}

}  // namespace detail

// Emits the canonical solution for a satisfying assignment. The instance
// and meta must be the ones produced by reduce(f); the assignment must
// satisfy f (checked up front, before any moves are produced). Each clause
// is routed through the F vertex of its first satisfied literal, in clause
// storage order.
inline SynthesisPlan synthesize_plan(const Formula3CNF& f, const Assignment& a, const Instance& inst,
                                     const ReductionMeta& meta) {
    check_formula(f);
    if (f.num_vars != meta.n || int(f.clauses.size()) != meta.m)
        throw Error("formula shape (" + std::to_string(f.num_vars) + " vars, " +
                    std::to_string(f.clauses.size()) + " clauses) does not match instance (n=" +
                    std::to_string(meta.n) + ", m=" + std::to_string(meta.m) + ")");
    if (!evaluate(f, a)) throw Error("assignment does not satisfy the formula");

    const int n = meta.n;
    const int m = meta.m;
    detail::GadgetIds ids(inst, meta);

    auto A = [&](int i) { return ids.vertex("A_", i); };
    auto B = [&](int i) { return ids.vertex("B_", i); };
    auto C = [&](int i) { return ids.vertex("C_", i); };
    auto J = [&](int i) { return ids.vertex("J_", i); };
    auto L = [&](int i) { return ids.vertex("L_", i); };
    const int K = ids.vertex("K");

    SynthesisPlan plan;

    // phase 1: each v-agent clears A_i, parking on the side its truth value dictates
    for (int i = 1; i <= n; ++i)
        plan.phases[0].push_back({ids.agent_starting_at(A(i)), A(i), a[i - 1] ? B(i) : C(i)});

    // phase 2: b-agents file down the J column, through K, onto the L row.
    // The K agent leads and takes the far seat L_n; the agent from J_i ends
    // at L_{n-i}; the one from J_n stops at K.
    {
        auto& ph = plan.phases[1];
        std::vector<int> path{K};
        for (int i = 1; i <= n; ++i) path.push_back(L(i));
        detail::walk(ph, ids.agent_starting_at(K), path);
        for (int i = 1; i <= n - 1; ++i) {
            path.clear();
            for (int t = i; t >= 1; --t) path.push_back(J(t));
            path.push_back(K);
            for (int t = 1; t <= n - i; ++t) path.push_back(L(t));
            detail::walk(ph, ids.agent_starting_at(J(i)), path);
        }
        path.clear();
        for (int t = n; t >= 1; --t) path.push_back(J(t));
        path.push_back(K);
        detail::walk(ph, ids.agent_starting_at(J(n)), path);
    }

    // phase 3: each c-agent crosses its gadget through the first satisfied
    // literal's F vertex and waits at H_j
    for (int j = 1; j <= m; ++j) {
        const Clause& clause = f.clauses[j - 1];
        int fv = -1;
        for (const Literal& lit : clause.literals) {
            if (a[lit.var - 1] != lit.negated) {
                fv = ids.vertex(ReductionMeta::f_label(j, lit));
                break;
            }
        }
        if (fv < 0) throw Error("clause " + std::to_string(j) + " has no satisfied literal");
        int c = ids.agent_starting_at(ids.vertex("D_", j));
        detail::walk(plan.phases[2], c, {ids.vertex("D_", j), ids.vertex("E_", j), fv,
                                         ids.vertex("G_", j), ids.vertex("H_", j)});
    }

    // phase 4: c-agents step to their goals, highest gadget first
    for (int j = m; j >= 1; --j) {
        int c = ids.agent_starting_at(ids.vertex("D_", j));
        plan.phases[3].push_back({c, ids.vertex("H_", j), ids.vertex("I_", j)});
    }

    // phase 5: mirror of phase 2 — the agent that ended at K climbs to J_n,
    // each L_{n-i} agent returns to J_i, and the far agent comes back to K
    {
        auto& ph = plan.phases[4];
        std::vector<int> path{K};
        for (int i = 1; i <= n; ++i) path.push_back(J(i));
        detail::walk(ph, ids.agent_starting_at(J(n)), path);
        for (int i = n - 1; i >= 1; --i) {
            path.clear();
            for (int t = n - i; t >= 1; --t) path.push_back(L(t));
            path.push_back(K);
            for (int t = 1; t <= i; ++t) path.push_back(J(t));
            detail::walk(ph, ids.agent_starting_at(J(i)), path);
        }
        path.clear();
        for (int t = n; t >= 1; --t) path.push_back(L(t));
        path.push_back(K);
        detail::walk(ph, ids.agent_starting_at(K), path);
    }

    // phase 6: v-agents return to the A row, last variable first
    for (int i = n; i >= 1; --i)
        plan.phases[5].push_back({ids.agent_starting_at(A(i)), a[i - 1] ? B(i) : C(i), A(i)});

    return plan;
}

inline Solution synthesize(const Formula3CNF& f, const Assignment& a, const Instance& inst,
                           const ReductionMeta& meta) {
    return synthesize_plan(f, a, inst, meta).to_solution();
}

// Recovers a satisfying assignment from any valid solution of a reduction
// instance — not just synthesized ones. The solution is validated first;
// then moves are undone from the end until G_1 is occupied (the last
// moment some c-agent sat there, when every clause's chosen literal was
// still pinned true). At that configuration, x_i is true iff B_i is
// occupied.
inline Assignment extract(const Instance& inst, const ReductionMeta& meta, const Solution& sol) {
    ValidationReport rep = validate(inst, sol);
    if (!rep.accept)
        throw Error("solution is invalid at step " + std::to_string(rep.step) + ": " + rep.detail);

    const int g1 = meta.id_of("G_1");

    std::vector<char> occupied(std::size_t(inst.num_vertices()), 0);
    for (int v : inst.goal_configuration().placement) occupied[std::size_t(v)] = 1;

    bool found = false;
    for (auto it = sol.moves.rbegin(); it != sol.moves.rend(); ++it) {
        occupied[std::size_t(it->to)] = 0;
        occupied[std::size_t(it->from)] = 1;
        if (occupied[std::size_t(g1)]) {
            found = true;
            break;
        }
    }
    if (!found) throw Error("no agent ever occupies G_1; solution does not traverse the clause gadgets");

    Assignment a(std::size_t(meta.n));
    for (int i = 1; i <= meta.n; ++i)
        a[std::size_t(i - 1)] = occupied[std::size_t(meta.id_of("B_" + std::to_string(i)))] != 0;
    return a;
}

}  // namespace lamapf
