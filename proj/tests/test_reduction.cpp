#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lamapf/io.hpp"
#include "lamapf/reduction.hpp"
#include "support.hpp"

using namespace lamapf;

namespace {

Point pos_of(const Instance& inst, const ReductionMeta& meta, const std::string& name) {
    return inst.vertices[std::size_t(meta.id_of(name))].pos;
}

bool edge_between(const Instance& inst, const ReductionMeta& meta, const std::string& a,
                  const std::string& b) {
    return inst.has_edge(meta.id_of(a), meta.id_of(b));
}

}  // namespace

TEST_CASE("single-clause single-variable instance has the frozen layout", "[reduction]") {
    auto [inst, meta] = reduce(parse_dimacs("p cnf 1 1\n1 0\n"));
    CHECK(inst.radius == 1);
    CHECK(inst.num_vertices() == 12);
    CHECK(inst.num_agents() == 4);
    CHECK(inst.edges.size() == 9);

    const std::pair<const char*, Point> expected[] = {
        {"A_1", {3, 1}}, {"B_1", {3, 12}}, {"C_1", {3, 3}},  {"F_1^{x1}", {3, 4}},
        {"D_1", {0, 15}}, {"E_1", {0, 8}}, {"G_1", {0, 7}},  {"H_1", {0, 3}},
        {"I_1", {0, 19}}, {"J_1", {0, 12}}, {"K", {0, 0}},   {"L_1", {3, 0}},
    };
    for (const auto& [name, p] : expected) {
        INFO(name);
        CHECK(pos_of(inst, meta, name) == p);
    }

    CHECK(edge_between(inst, meta, "A_1", "B_1"));
    CHECK(edge_between(inst, meta, "A_1", "C_1"));
    CHECK(edge_between(inst, meta, "D_1", "E_1"));
    CHECK(edge_between(inst, meta, "E_1", "F_1^{x1}"));
    CHECK(edge_between(inst, meta, "F_1^{x1}", "G_1"));
    CHECK(edge_between(inst, meta, "G_1", "H_1"));
    CHECK(edge_between(inst, meta, "H_1", "I_1"));
    CHECK(edge_between(inst, meta, "J_1", "K"));
    CHECK(edge_between(inst, meta, "K", "L_1"));
    CHECK_FALSE(edge_between(inst, meta, "B_1", "C_1"));
}

TEST_CASE("worked three-variable example matches its coordinate table", "[reduction]") {
    auto [inst, meta] = reduce(parse_dimacs("p cnf 3 1\n1 -2 3 0\n"));
    CHECK(inst.radius == 1);
    CHECK(inst.num_vertices() == 24);
    CHECK(inst.num_agents() == 8);
    CHECK(inst.edges.size() == 21);

    const std::pair<const char*, Point> expected[] = {
        {"A_1", {3, 1}},  {"A_2", {6, 1}},  {"A_3", {9, 1}},
        {"B_1", {3, 24}}, {"B_2", {6, 24}}, {"B_3", {9, 24}},
        {"C_1", {3, 3}},  {"C_2", {6, 3}},  {"C_3", {9, 3}},
        {"F_1^{x1}", {3, 4}}, {"F_1^{~x2}", {6, 23}}, {"F_1^{x3}", {9, 4}},
        {"D_1", {0, 33}}, {"E_1", {0, 14}}, {"G_1", {0, 13}}, {"H_1", {0, 3}}, {"I_1", {0, 37}},
        {"J_1", {0, 24}}, {"J_2", {0, 27}}, {"J_3", {0, 30}},
        {"K", {0, 0}},    {"L_1", {3, 0}},  {"L_2", {6, 0}},  {"L_3", {9, 0}},
    };
    for (const auto& [name, p] : expected) {
        INFO(name);
        CHECK(pos_of(inst, meta, name) == p);
    }

    // clause column wiring goes through every F vertex
    for (const char* f : {"F_1^{x1}", "F_1^{~x2}", "F_1^{x3}"}) {
        CHECK(edge_between(inst, meta, "E_1", f));
        CHECK(edge_between(inst, meta, f, "G_1"));
    }
    CHECK(edge_between(inst, meta, "J_1", "J_2"));
    CHECK(edge_between(inst, meta, "J_2", "J_3"));
    CHECK(edge_between(inst, meta, "L_1", "L_2"));
    CHECK(edge_between(inst, meta, "L_2", "L_3"));
    CHECK_FALSE(edge_between(inst, meta, "J_1", "J_3"));

    // agent roster: variable, clause, blocking, in that order
    REQUIRE(inst.agents.size() == 8);
    CHECK(inst.agents[0].label == "v_1");
    CHECK(inst.agents[0].start == meta.id_of("A_1"));
    CHECK(inst.agents[0].goal == meta.id_of("A_1"));
    CHECK(inst.agents[3].label == "c_1");
    CHECK(inst.agents[3].start == meta.id_of("D_1"));
    CHECK(inst.agents[3].goal == meta.id_of("I_1"));
    CHECK(inst.agents[4].label == "b_1");
    CHECK(inst.agents[4].start == meta.id_of("J_1"));
    CHECK(inst.agents[7].label == "b_K");
    CHECK(inst.agents[7].start == meta.id_of("K"));
}

TEST_CASE("repeated literals shrink the clause gadget", "[reduction]") {
    // (x1 | ~x1): two distinct literals, one F vertex dropped
    auto [inst, meta] = reduce(parse_dimacs("p cnf 1 1\n1 -1 0\n"));
    CHECK(inst.num_vertices() == 13);
    CHECK(meta.has("F_1^{x1}"));
    CHECK(meta.has("F_1^{~x1}"));
    CHECK(pos_of(inst, meta, "F_1^{~x1}") == Point{3, 11});
    CHECK(audit(inst, meta).ok);
}

TEST_CASE("blocking distances hold and are variable-selective", "[reduction]") {
    auto [inst, meta] = reduce(parse_dimacs("p cnf 4 2\n1 -2 3 0\n-1 2 4 0\n"));
    const Coord two_r = 2 * inst.radius;
    REQUIRE(inst.radius == 2);

    // the parking vertex of the literal's own variable is within 2r of F...
    CHECK(sq_dist(pos_of(inst, meta, "C_1"), pos_of(inst, meta, "F_1^{x1}")) <
          Wide(two_r) * two_r);
    CHECK(sq_dist(pos_of(inst, meta, "B_2"), pos_of(inst, meta, "F_1^{~x2}")) <
          Wide(two_r) * two_r);
    // ...while every other variable's parking vertices are not
    for (int i = 1; i <= 4; ++i) {
        if (i == 1) continue;
        CHECK(sq_dist(pos_of(inst, meta, "C_" + std::to_string(i)),
                      pos_of(inst, meta, "F_1^{x1}")) >= Wide(two_r) * two_r);
        CHECK(sq_dist(pos_of(inst, meta, "B_" + std::to_string(i)),
                      pos_of(inst, meta, "F_1^{x1}")) >= Wide(two_r) * two_r);
    }
    // pinning distance between the A row and the L row
    for (int i = 1; i <= 4; ++i)
        CHECK(sq_dist(pos_of(inst, meta, "A_" + std::to_string(i)),
                      pos_of(inst, meta, "L_" + std::to_string(i))) == 1);
}

TEST_CASE("audit passes across a random corpus", "[reduction]") {
    std::mt19937 rng(2024);
    for (int iter = 0; iter < 40; ++iter) {
        int n = std::uniform_int_distribution<int>(2, 12)(rng);
        int m = std::uniform_int_distribution<int>(1, 12)(rng);
        auto [f, hidden] = testsupport::random_satisfiable(rng, n, m);
        auto [inst, meta] = reduce(f);
        AuditReport rep = audit(inst, meta);
        INFO(render_dimacs(f));
        for (const std::string& line : rep.failures) INFO(line);
        REQUIRE(rep.ok);
        int missing = 0;
        for (const Clause& c : f.clauses) missing += 3 - int(c.literals.size());
        CHECK(inst.num_vertices() == 5 * n + 8 * m + 1 - missing);
        CHECK(inst.num_agents() == 2 * n + m + 1);
        CHECK(inst.radius == m);
        CHECK(vertex_conflict_free(inst, inst.start_configuration()));
        CHECK(vertex_conflict_free(inst, inst.goal_configuration()));
    }
}

TEST_CASE("audit notices a displaced vertex", "[reduction]") {
    auto [inst, meta] = reduce(parse_dimacs("p cnf 2 1\n1 -2 0\n"));
    REQUIRE(audit(inst, meta).ok);

    Instance bent = inst;
    bent.vertices[std::size_t(meta.id_of("F_1^{x1}"))].pos.y += 1;
    AuditReport rep = audit(bent, meta);
    CHECK_FALSE(rep.ok);
    REQUIRE_FALSE(rep.failures.empty());

    Instance wrong_r = inst;
    wrong_r.radius = 5;
    CHECK_FALSE(audit(wrong_r, meta).ok);
}

TEST_CASE("reduction output is deterministic", "[reduction]") {
    Formula3CNF f = parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 2 0\n");
    auto [a, meta_a] = reduce(f);
    auto [b, meta_b] = reduce(f);
    CHECK(dump_canonical(instance_to_json(a)) == dump_canonical(instance_to_json(b)));
    CHECK(dump_canonical(meta_to_json(meta_a)) == dump_canonical(meta_to_json(meta_b)));
}

TEST_CASE("oversize formulas are refused before emission", "[reduction]") {
    Formula3CNF f;
    f.num_vars = 700;
    for (int j = 0; j < 700; ++j) f.clauses.push_back(Clause{{{1, false}}});
    CHECK_THROWS_AS(reduce(f), Error);
}

TEST_CASE("reduce validates its input formula", "[reduction]") {
    Formula3CNF f;
    f.num_vars = 2;
    CHECK_THROWS_AS(reduce(f), Error);  // no clauses
    f.clauses.push_back(Clause{{{1, false}, {1, false}}});
    CHECK_THROWS_AS(reduce(f), Error);  // duplicate literal
}

TEST_CASE("meta lookups resolve names and report strangers", "[reduction]") {
    auto [inst, meta] = reduce(parse_dimacs("p cnf 1 1\n1 0\n"));
    CHECK(meta.id_of("K") == 10);  // emission order: 9 gadget vertices, then J_1, K, L_1
    CHECK(meta.has("A_1"));
    CHECK_FALSE(meta.has("A_2"));
    CHECK_THROWS_AS(meta.id_of("A_2"), Error);
    CHECK(ReductionMeta::f_label(3, {7, false}) == "F_3^{x7}");
    CHECK(ReductionMeta::f_label(1, {2, true}) == "F_1^{~x2}");
}
