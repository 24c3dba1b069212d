#include <catch2/catch_amalgamated.hpp>

#include "lamapf/io.hpp"
#include "lamapf/reduction.hpp"
#include "support.hpp"

using namespace lamapf;

namespace {
Formula3CNF example3() { return parse_dimacs("p cnf 3 1\n1 -2 3 0\n"); }
}  // namespace

TEST_CASE("instance serialization round-trips exactly", "[io]") {
    auto [inst, meta] = reduce(example3());
    Json j = instance_to_json(inst);
    Instance back = instance_from_json(j);
    CHECK(dump_canonical(instance_to_json(back)) == dump_canonical(j));
    CHECK(back.num_vertices() == inst.num_vertices());
    CHECK(back.radius == inst.radius);
}

TEST_CASE("instance JSON has a fixed key order and sorted edges", "[io]") {
    auto [inst, meta] = reduce(example3());
    std::string text = dump_canonical(instance_to_json(inst));
    CHECK(text.rfind("{\"radius\":", 0) == 0);
    CHECK(text.find("\"vertices\":") < text.find("\"edges\":"));
    CHECK(text.find("\"edges\":") < text.find("\"agents\":"));

    // emitted edge order is canonical even if the in-memory order is not
    Instance shuffled = inst;
    std::reverse(shuffled.edges.begin(), shuffled.edges.end());
    for (auto& [a, b] : shuffled.edges) std::swap(a, b);
    CHECK(dump_canonical(instance_to_json(shuffled)) == text);
}

TEST_CASE("instance reader is strict", "[io]") {
    auto [inst, meta] = reduce(example3());
    Json good = instance_to_json(inst);

    Json j = good;
    j["surprise"] = 1;
    CHECK_THROWS_AS(instance_from_json(j), Error);

    j = good;
    j["vertices"][0]["x"] = 1.5;  // non-integer coordinate
    CHECK_THROWS_AS(instance_from_json(j), Error);

    j = good;
    j["vertices"][0].erase("label");
    CHECK_THROWS_AS(instance_from_json(j), Error);

    j = good;
    j["edges"][0] = Json::array({1});
    CHECK_THROWS_AS(instance_from_json(j), Error);

    j = good;
    j.erase("radius");
    CHECK_THROWS_AS(instance_from_json(j), Error);

    CHECK_THROWS_AS(instance_from_json(Json::array()), Error);
}

TEST_CASE("geometry checking on load can be deferred", "[io]") {
    // two agents parked within 2r: structurally valid, geometrically not
    Json j;
    j["radius"] = 1;
    j["vertices"] = Json::array({Json{{"id", 0}, {"label", "a"}, {"x", 0}, {"y", 0}},
                                 Json{{"id", 1}, {"label", "b"}, {"x", 1}, {"y", 0}}});
    j["edges"] = Json::array();
    j["agents"] = Json::array({Json{{"id", 0}, {"label", "p"}, {"start", 0}, {"goal", 0}},
                               Json{{"id", 1}, {"label", "q"}, {"start", 1}, {"goal", 1}}});
    CHECK_THROWS_AS(instance_from_json(j), Error);
    CHECK_NOTHROW(instance_from_json(j, false));
}

TEST_CASE("solution serialization round-trips", "[io]") {
    Solution sol{{{0, 3, 4}, {2, 7, 1}}};
    Solution back = solution_from_json(solution_to_json(sol));
    CHECK(back == sol);
    CHECK(dump_canonical(solution_to_json(Solution{})) == "{\"moves\":[]}\n");
    Json j = solution_to_json(sol);
    j["moves"][0]["speed"] = 9;
    CHECK_THROWS_AS(solution_from_json(j), Error);
}

TEST_CASE("validation reports serialize both verdicts", "[io]") {
    Json ok = report_to_json(ValidationReport::accepted());
    CHECK(ok["verdict"] == "ACCEPT");
    CHECK(ok["step"].is_null());
    CHECK(ok["kind"].is_null());
    Json bad = report_to_json(
        ValidationReport::rejected(4, Violation::EDGE_CONFLICT, "clipped", {0, 2}));
    CHECK(bad["verdict"] == "REJECT");
    CHECK(bad["step"] == 4);
    CHECK(bad["kind"] == "EDGE_CONFLICT");
    CHECK(bad["detail"] == "clipped");
}

TEST_CASE("assignment serialization round-trips and is strict", "[io]") {
    Assignment a{true, false, true};
    Json j = assignment_to_json(a);
    CHECK(dump_canonical(j) == "{\"x1\":true,\"x2\":false,\"x3\":true}\n");
    CHECK(assignment_from_json(j, 3) == a);

    CHECK_THROWS_AS(assignment_from_json(j, 4), Error);  // x4 missing
    Json extra = j;
    extra["x9"] = true;
    CHECK_THROWS_AS(assignment_from_json(extra, 3), Error);
    Json wrong = j;
    wrong["x2"] = 1;
    CHECK_THROWS_AS(assignment_from_json(wrong, 3), Error);
    Json alien = j;
    alien["y1"] = true;
    CHECK_THROWS_AS(assignment_from_json(alien, 3), Error);
}

TEST_CASE("meta serialization keeps the name table", "[io]") {
    auto [inst, meta] = reduce(example3());
    Json j = meta_to_json(meta);
    CHECK(j["n"] == 3);
    CHECK(j["m"] == 1);
    CHECK(j["names"].size() == std::size_t(inst.num_vertices()));

    ReductionMeta back = meta_from_json(j);
    CHECK(back.n == meta.n);
    CHECK(back.m == meta.m);
    CHECK(back.r == meta.r);
    for (const auto& [name, id] : meta.name_to_id) CHECK(back.id_of(name) == id);
    // the clause table is deliberately not serialized
    CHECK(back.clauses.empty());
    // re-serialization is stable
    CHECK(dump_canonical(meta_to_json(back)) == dump_canonical(j));
}

TEST_CASE("meta reader rejects broken name tables", "[io]") {
    Json j;
    j["n"] = 1;
    j["m"] = 1;
    j["names"] = Json{{"A_1", 0}, {"B_1", 2}};  // id 2 out of range for two names
    CHECK_THROWS_AS(meta_from_json(j), Error);
    j["names"] = Json{{"A_1", 0}, {"B_1", 0}};  // shared id
    CHECK_THROWS_AS(meta_from_json(j), Error);
    j["names"] = Json{{"A_1", 0}, {"B_1", true}};
    CHECK_THROWS_AS(meta_from_json(j), Error);
    j["n"] = 0;
    j["names"] = Json{{"A_1", 0}};
    CHECK_THROWS_AS(meta_from_json(j), Error);
}

TEST_CASE("files write and read back verbatim", "[io]") {
    std::string dir = testsupport::make_temp_dir();
    std::string path = dir + "/x.json";
    write_text_file(path, "hello\n");
    CHECK(read_text_file(path) == "hello\n");
    CHECK_THROWS_AS(read_text_file(dir + "/missing.json"), Error);
    CHECK_THROWS_AS(write_text_file(dir + "/no/such/dir/x", "y"), Error);

    auto [inst, meta] = reduce(example3());
    write_text_file(path, dump_canonical(instance_to_json(inst)));
    Instance back = load_instance(path);
    CHECK(back.num_vertices() == inst.num_vertices());
}
