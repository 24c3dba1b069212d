#pragma once

// Compile a 3-CNF formula into a disk-agent MAPF instance built from three
// gadget families (variable, clause, blocking) with radius r = m. The
// geometry is arranged so that a satisfying assignment exists exactly when
// all agents can reach their goals:
//   - parking the i-th v-agent at C_i blocks the F vertex of any positive
//     literal x_i; parking it at B_i blocks any negative literal's F vertex
//     (distances j+m-1 and 2m-j, both < 2r);
//   - a b-agent parked at L_i pins the i-th v-agent out of A_i
//     (distance 1 < 2r), freezing the chosen truth values while the
//     c-agents cross their gadgets.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lamapf/cnf.hpp"
#include "lamapf/errors.hpp"
#include "lamapf/instance.hpp"

namespace lamapf {

struct ReductionMeta {
    int n = 0;       // variables
    int m = 0;       // clauses
    Coord r = 0;     // agent radius, always == m
    std::unordered_map<std::string, int> name_to_id;
    std::vector<Clause> clauses;  // in-memory only; not part of the sidecar JSON

    bool has(const std::string& name) const { return name_to_id.count(name) > 0; }
    int id_of(const std::string& name) const {
        auto it = name_to_id.find(name);
        if (it == name_to_id.end()) throw Error("instance has no vertex named '" + name + "'");
        return it->second;
    }

    static std::string f_label(int j, const Literal& lit) {
        return "F_" + std::to_string(j) + "^{" + (lit.negated ? "~x" : "x") + std::to_string(lit.var) + "}";
    }
};

namespace detail {

struct GadgetCoords {
    std::int64_t n, m;
    std::int64_t col(std::int64_t i) const { return (2 * m + 1) * i; }
    Point a(std::int64_t i) const { return {col(i), 1}; }
    Point b(std::int64_t i) const { return {col(i), 4 * m * m * n + 2 * m * m + 2 * m * n + 5 * m - 1}; }
    Point c(std::int64_t i) const { return {col(i), 2 * m * m + m}; }
    Point d(std::int64_t j) const {
        return {0, (2 * m + 1) * j + 4 * m * m * n + 2 * m * m + 4 * m * n + 3 * m + n - 2};
    }
    Point e(std::int64_t j) const { return {0, j + 2 * m * m * n + 2 * m * m + m * n + 3 * m - 1}; }
    Point g(std::int64_t j) const { return {0, j + 2 * m * m * n + 2 * m * m + m * n + 2 * m - 1}; }
    Point h(std::int64_t j) const { return {0, (2 * m + 1) * j}; }
    Point i_(std::int64_t j) const {
        return {0, (2 * m + 1) * j + 4 * m * m * n + 4 * m * m + 4 * m * n + 5 * m + n - 2};
    }
    Point f_pos(std::int64_t j, std::int64_t i) const { return {col(i), j + 2 * m * m + 2 * m - 1}; }
    Point f_neg(std::int64_t j, std::int64_t i) const {
        return {col(i), j + 4 * m * m * n + 2 * m * m + 2 * m * n + 3 * m - 1};
    }
    Point jv(std::int64_t i) const {
        return {0, (2 * m + 1) * i + 4 * m * m * n + 2 * m * m + 2 * m * n + 3 * m - 2};
    }
    Point k() const { return {0, 0}; }
    Point l(std::int64_t i) const { return {col(i), 0}; }
};

}  // namespace detail

// The emitted instance has one variable gadget per variable (A_i, B_i, C_i
// with a v-agent parked at A_i), one clause gadget per clause (D..I column
// plus one F vertex per distinct literal; c-agent travels D_j -> I_j), and
// one blocking gadget (J_1..J_n, K, L_1..L_n with n+1 b-agents parked at
// the J vertices and K). Vertex ids follow emission order; the meta table
// maps every symbolic name to its id.
inline std::pair<Instance, ReductionMeta> reduce(const Formula3CNF& f) {
    check_formula(f);
    const std::int64_t n = f.num_vars;
    const std::int64_t m = std::int64_t(f.clauses.size());

    // top of the layout; everything else is bounded by it
    Wide top = Wide(2 * m + 1) * m + 4 * m * m * n + 4 * m * m + 4 * m * n + 5 * m + n - 2;
    Wide right = Wide(2 * m + 1) * n;
    if (top > kCoordLimit || right > kCoordLimit)
        throw Error("reduction too large: coordinates would exceed " + std::to_string(kCoordLimit));

    detail::GadgetCoords co{n, m};
    Instance inst;
    inst.radius = m;
    ReductionMeta meta;
    meta.n = int(n);
    meta.m = int(m);
    meta.r = m;
    meta.clauses = f.clauses;

    auto add_vertex = [&](const std::string& name, Point p) {
        int id = inst.num_vertices();
        inst.vertices.push_back({id, name, p});
        meta.name_to_id.emplace(name, id);
        return id;
    };
    auto add_edge = [&](int a, int b) { inst.edges.emplace_back(a, b); };

    // variable gadgets
    for (std::int64_t i = 1; i <= n; ++i) {
        int a = add_vertex("A_" + std::to_string(i), co.a(i));
        int b = add_vertex("B_" + std::to_string(i), co.b(i));
        int c = add_vertex("C_" + std::to_string(i), co.c(i));
        add_edge(a, b);
        add_edge(a, c);
    }

    // clause gadgets
    for (std::int64_t j = 1; j <= m; ++j) {
        const Clause& clause = f.clauses[j - 1];
        int d = add_vertex("D_" + std::to_string(j), co.d(j));
        int e = add_vertex("E_" + std::to_string(j), co.e(j));
        std::vector<int> fs;
        for (const Literal& lit : clause.literals) {
            Point p = lit.negated ? co.f_neg(j, lit.var) : co.f_pos(j, lit.var);
            fs.push_back(add_vertex(ReductionMeta::f_label(int(j), lit), p));
        }
        int g = add_vertex("G_" + std::to_string(j), co.g(j));
        int h = add_vertex("H_" + std::to_string(j), co.h(j));
        int i_ = add_vertex("I_" + std::to_string(j), co.i_(j));
        add_edge(d, e);
        for (int fv : fs) {
            add_edge(e, fv);
            add_edge(fv, g);
        }
        add_edge(g, h);
        add_edge(h, i_);
    }

    // blocking gadget
    std::vector<int> js;
    for (std::int64_t i = 1; i <= n; ++i) js.push_back(add_vertex("J_" + std::to_string(i), co.jv(i)));
    int kv = add_vertex("K", co.k());
    std::vector<int> ls;
    for (std::int64_t i = 1; i <= n; ++i) ls.push_back(add_vertex("L_" + std::to_string(i), co.l(i)));
    for (std::int64_t i = 0; i + 1 < n; ++i) add_edge(js[i], js[i + 1]);
    add_edge(js[0], kv);
    add_edge(kv, ls[0]);
    for (std::int64_t i = 0; i + 1 < n; ++i) add_edge(ls[i], ls[i + 1]);

    // agents: v_1..v_n, c_1..c_m, b_1..b_n (at J_i), b_K
    auto add_agent = [&](const std::string& label, int start, int goal) {
        int id = inst.num_agents();
        inst.agents.push_back({id, label, start, goal});
    };
    for (std::int64_t i = 1; i <= n; ++i) {
        int a = meta.id_of("A_" + std::to_string(i));
        add_agent("v_" + std::to_string(i), a, a);
    }
    for (std::int64_t j = 1; j <= m; ++j)
        add_agent("c_" + std::to_string(j), meta.id_of("D_" + std::to_string(j)),
                  meta.id_of("I_" + std::to_string(j)));
    for (std::int64_t i = 1; i <= n; ++i) add_agent("b_" + std::to_string(i), js[i - 1], js[i - 1]);
    add_agent("b_K", kv, kv);

    inst.check_structure();
    return {std::move(inst), std::move(meta)};
}

struct AuditReport {
    bool ok = true;
    std::vector<std::string> failures;
    int expected_vertices = 0;
    int expected_agents = 0;

    void fail(std::string msg) {
        ok = false;
        failures.push_back(std::move(msg));
    }
};

// Re-derives the construction's intended properties from the emitted
// geometry: size counts (adjusted when literal dedup dropped F vertices),
// the exact B/C-to-F blocking distances and the A-to-L parking distance,
// conflict-free start/goal configurations, and pairwise-distinct
// positions. A failure here is an implementation bug, never a property of
// the input formula.
inline AuditReport audit(const Instance& inst, const ReductionMeta& meta) {
    AuditReport rep;
    const int n = meta.n;
    const int m = meta.m;

    if (meta.r != m) rep.fail("radius is " + std::to_string(meta.r) + ", expected m = " + std::to_string(m));
    if (inst.radius != meta.r) rep.fail("instance radius disagrees with meta");
    if (int(meta.clauses.size()) != m) rep.fail("meta clause table is missing (audit needs the in-memory meta)");

    int missing_f = 0;
    for (const Clause& c : meta.clauses) missing_f += 3 - int(c.literals.size());
    rep.expected_vertices = 5 * n + 8 * m + 1 - missing_f;
    rep.expected_agents = 2 * n + m + 1;
    if (inst.num_vertices() != rep.expected_vertices)
        rep.fail("vertex count " + std::to_string(inst.num_vertices()) + " != 5n+8m+1-dedup = " +
                 std::to_string(rep.expected_vertices));
    if (inst.num_agents() != rep.expected_agents)
        rep.fail("agent count " + std::to_string(inst.num_agents()) + " != 2n+m+1 = " +
                 std::to_string(rep.expected_agents));
    if (int(meta.name_to_id.size()) != inst.num_vertices())
        rep.fail("name table has " + std::to_string(meta.name_to_id.size()) + " entries for " +
                 std::to_string(inst.num_vertices()) + " vertices");

    auto pos = [&](const std::string& name) { return inst.vertices[meta.id_of(name)].pos; };
    const Wide conflict2 = Wide(2 * meta.r) * (2 * meta.r);

    // variable blocks clause: dist(C_i, F_j^{x_i}) = j+m-1, dist(B_i, F_j^{~x_i}) = 2m-j
    for (int j = 1; j <= m && j <= int(meta.clauses.size()); ++j) {
        for (const Literal& lit : meta.clauses[j - 1].literals) {
            std::string fname = ReductionMeta::f_label(j, lit);
            if (!meta.has(fname)) {
                rep.fail("missing F vertex '" + fname + "'");
                continue;
            }
            std::string blocker = (lit.negated ? "B_" : "C_") + std::to_string(lit.var);
            Wide expect = lit.negated ? Wide(2 * m - j) : Wide(j + m - 1);
            Wide actual = sq_dist(pos(blocker), pos(fname));
            if (actual != expect * expect)
                rep.fail("dist(" + blocker + ", " + fname + ")^2 = " + wide_to_string(actual) +
                         ", expected " + wide_to_string(expect * expect));
            else if (actual >= conflict2)
                rep.fail("dist(" + blocker + ", " + fname + ") is not below 2r");
        }
    }

    // blocking pins variable: dist(A_i, L_i) = 1 < 2r
    for (int i = 1; i <= n; ++i) {
        std::string a = "A_" + std::to_string(i), l = "L_" + std::to_string(i);
        if (!meta.has(a) || !meta.has(l)) {
            rep.fail("missing blocking pair for variable " + std::to_string(i));
            continue;
        }
        if (sq_dist(pos(a), pos(l)) != 1)
            rep.fail("dist(" + a + ", " + l + ") != 1");
    }

    if (auto p = inst.config_conflict_pair(inst.start_configuration()))
        rep.fail("start configuration conflicts: agents " + std::to_string(p->first) + "," +
                 std::to_string(p->second));
    if (auto p = inst.config_conflict_pair(inst.goal_configuration()))
        rep.fail("goal configuration conflicts: agents " + std::to_string(p->first) + "," +
                 std::to_string(p->second));

    std::unordered_set<std::uint64_t> positions;
    Coord max_coord = 0;
    for (const Vertex& v : inst.vertices) {
        std::uint64_t key = (std::uint64_t(std::uint32_t(v.pos.x)) << 32) | std::uint32_t(v.pos.y);
        if (!positions.insert(key).second) rep.fail("duplicate position at vertex '" + v.label + "'");
        max_coord = std::max({max_coord, v.pos.x, v.pos.y});
        if (v.pos.x < 0 || v.pos.y < 0) rep.fail("negative coordinate at vertex '" + v.label + "'");
    }
    if (m >= 1 && meta.has("I_" + std::to_string(m))) {
        Coord top = pos("I_" + std::to_string(m)).y;
        if (max_coord > top)
            rep.fail("coordinate " + std::to_string(max_coord) + " exceeds top vertex I_m at " +
                     std::to_string(top));
    }
    return rep;
}

}  // namespace lamapf
