#pragma once

// Canonical JSON file formats. Writers are deterministic: fixed key order,
// edges stored as sorted pairs in lexicographic list order, compact dump
// with a trailing newline. Readers validate structure strictly; the
// geometric start/goal invariant is checked separately so diagnostic tools
// can load broken files on purpose.

#include <algorithm>
#include <fstream>
#include <string>

#include <json.hpp>

#include "lamapf/cnf.hpp"
#include "lamapf/errors.hpp"
#include "lamapf/instance.hpp"
#include "lamapf/reduction.hpp"

namespace lamapf {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& get_field(const Json& j, const char* key, const char* what) {
    auto it = j.find(key);
    if (it == j.end()) throw Error(std::string(what) + ": missing key '" + key + "'");
    return *it;
}

inline std::int64_t get_int(const Json& j, const char* key, const char* what) {
    const Json& v = get_field(j, key, what);
    if (!v.is_number_integer())
        throw Error(std::string(what) + ": key '" + key + "' must be an integer");
    return v.get<std::int64_t>();
}

inline std::string get_str(const Json& j, const char* key, const char* what) {
    const Json& v = get_field(j, key, what);
    if (!v.is_string()) throw Error(std::string(what) + ": key '" + key + "' must be a string");
    return v.get<std::string>();
}

inline void reject_unknown_keys(const Json& j, std::initializer_list<const char*> allowed, const char* what) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) throw Error(std::string(what) + ": unknown key '" + it.key() + "'");
    }
}

inline Json parse_json_text(const std::string& text, const char* what) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error(std::string(what) + ": not valid JSON");
    return j;
}

}  // namespace detail

inline Json instance_to_json(const Instance& inst) {
    Json j;
    j["radius"] = inst.radius;
    j["vertices"] = Json::array();
    for (const Vertex& v : inst.vertices) {
        Json jv;
        jv["id"] = v.id;
        jv["label"] = v.label;
        jv["x"] = v.pos.x;
        jv["y"] = v.pos.y;
        j["vertices"].push_back(std::move(jv));
    }
    auto sorted_edges = inst.edges;
    for (auto& [a, b] : sorted_edges)
        if (a > b) std::swap(a, b);
    std::sort(sorted_edges.begin(), sorted_edges.end());
    j["edges"] = Json::array();
    for (auto [a, b] : sorted_edges) j["edges"].push_back(Json::array({a, b}));
    j["agents"] = Json::array();
    for (const Agent& a : inst.agents) {
        Json ja;
        ja["id"] = a.id;
        ja["label"] = a.label;
        ja["start"] = a.start;
        ja["goal"] = a.goal;
        j["agents"].push_back(std::move(ja));
    }
    return j;
}

// Structural validation always runs; with check_geometry the start/goal
// conflict-free invariant is enforced too. Non-integer coordinates are
// rejected outright: approximating them would break the exactness contract.
inline Instance instance_from_json(const Json& j, bool check_geometry = true) {
    const char* what = "instance";
    if (!j.is_object()) throw Error("instance: top level must be an object");
    detail::reject_unknown_keys(j, {"radius", "vertices", "edges", "agents"}, what);
    Instance inst;
    inst.radius = detail::get_int(j, "radius", what);
    const Json& jv = detail::get_field(j, "vertices", what);
    if (!jv.is_array()) throw Error("instance: 'vertices' must be an array");
    for (const Json& item : jv) {
        detail::reject_unknown_keys(item, {"id", "label", "x", "y"}, "vertex");
        Vertex v;
        v.id = int(detail::get_int(item, "id", "vertex"));
        v.label = detail::get_str(item, "label", "vertex");
        v.pos.x = detail::get_int(item, "x", "vertex");
        v.pos.y = detail::get_int(item, "y", "vertex");
        inst.vertices.push_back(std::move(v));
    }
    const Json& je = detail::get_field(j, "edges", what);
    if (!je.is_array()) throw Error("instance: 'edges' must be an array");
    for (const Json& item : je) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() || !item[1].is_number_integer())
            throw Error("instance: each edge must be a pair of integer vertex ids");
        inst.edges.emplace_back(item[0].get<int>(), item[1].get<int>());
    }
    const Json& ja = detail::get_field(j, "agents", what);
    if (!ja.is_array()) throw Error("instance: 'agents' must be an array");
    for (const Json& item : ja) {
        detail::reject_unknown_keys(item, {"id", "label", "start", "goal"}, "agent");
        Agent a;
        a.id = int(detail::get_int(item, "id", "agent"));
        a.label = detail::get_str(item, "label", "agent");
        a.start = int(detail::get_int(item, "start", "agent"));
        a.goal = int(detail::get_int(item, "goal", "agent"));
        inst.agents.push_back(std::move(a));
    }
    inst.check_structure();
    if (check_geometry) inst.check_start_goal_geometry();
    return inst;
}

inline Json solution_to_json(const Solution& sol) {
    Json j;
    j["moves"] = Json::array();
    for (const Move& m : sol.moves) {
        Json jm;
        jm["agent"] = m.agent;
        jm["from"] = m.from;
        jm["to"] = m.to;
        j["moves"].push_back(std::move(jm));
    }
    return j;
}

inline Solution solution_from_json(const Json& j) {
    if (!j.is_object()) throw Error("solution: top level must be an object");
    detail::reject_unknown_keys(j, {"moves"}, "solution");
    const Json& jm = detail::get_field(j, "moves", "solution");
    if (!jm.is_array()) throw Error("solution: 'moves' must be an array");
    Solution sol;
    for (const Json& item : jm) {
        detail::reject_unknown_keys(item, {"agent", "from", "to"}, "move");
        Move m;
        m.agent = int(detail::get_int(item, "agent", "move"));
        m.from = int(detail::get_int(item, "from", "move"));
        m.to = int(detail::get_int(item, "to", "move"));
        sol.moves.push_back(m);
    }
    return sol;
}

inline Json report_to_json(const ValidationReport& r) {
    Json j;
    j["verdict"] = r.accept ? "ACCEPT" : "REJECT";
    if (r.accept) {
        j["step"] = nullptr;
        j["kind"] = nullptr;
    } else {
        j["step"] = r.step;
        j["kind"] = to_string(*r.kind);
    }
    j["detail"] = r.detail;
    return j;
}

inline Json assignment_to_json(const Assignment& a) {
    Json j;
    for (std::size_t i = 0; i < a.size(); ++i) j["x" + std::to_string(i + 1)] = bool(a[i]);
    return j;
}

inline Assignment assignment_from_json(const Json& j, int num_vars) {
    if (!j.is_object()) throw Error("assignment: top level must be an object");
    Assignment a(num_vars, false);
    std::vector<char> seen(num_vars, 0);
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key.size() < 2 || key[0] != 'x') throw Error("assignment: unknown key '" + key + "'");
        int var = 0;
        try {
            std::size_t used = 0;
            var = std::stoi(key.substr(1), &used);
            if (used != key.size() - 1) throw Error("");
        } catch (const std::exception&) {
            throw Error("assignment: unknown key '" + key + "'");
        }
        if (var < 1 || var > num_vars)
            throw Error("assignment: variable x" + std::to_string(var) + " outside 1.." + std::to_string(num_vars));
        if (!it->is_boolean()) throw Error("assignment: value of '" + key + "' must be a boolean");
        a[var - 1] = it->get<bool>();
        seen[var - 1] = 1;
    }
    for (int i = 0; i < num_vars; ++i)
        if (!seen[i]) throw Error("assignment: missing variable x" + std::to_string(i + 1));
    return a;
}

// The sidecar records the shape and the name table only. Clause contents
// are recoverable from the formula and are not duplicated here, so a meta
// loaded from disk supports synthesis and extraction but not a full audit.
inline Json meta_to_json(const ReductionMeta& meta) {
    Json j;
    j["n"] = meta.n;
    j["m"] = meta.m;
    std::vector<const std::string*> by_id(meta.name_to_id.size(), nullptr);
    for (const auto& [name, id] : meta.name_to_id) {
        if (id < 0 || id >= int(by_id.size()) || by_id[std::size_t(id)])
            throw Error("meta: name table does not map names to distinct dense ids");
        by_id[std::size_t(id)] = &name;
    }
    j["names"] = Json::object();
    for (std::size_t id = 0; id < by_id.size(); ++id) j["names"][*by_id[id]] = int(id);
    return j;
}

inline ReductionMeta meta_from_json(const Json& j) {
    if (!j.is_object()) throw Error("meta: top level must be an object");
    detail::reject_unknown_keys(j, {"n", "m", "names"}, "meta");
    ReductionMeta meta;
    meta.n = int(detail::get_int(j, "n", "meta"));
    meta.m = int(detail::get_int(j, "m", "meta"));
    if (meta.n < 1 || meta.m < 1) throw Error("meta: n and m must be at least 1");
    meta.r = meta.m;
    const Json& names = detail::get_field(j, "names", "meta");
    if (!names.is_object()) throw Error("meta: 'names' must be an object");
    for (auto it = names.begin(); it != names.end(); ++it) {
        if (!it->is_number_integer()) throw Error("meta: id of '" + it.key() + "' must be an integer");
        int id = it->get<int>();
        if (id < 0 || id >= int(names.size()))
            throw Error("meta: id of '" + it.key() + "' out of range");
        if (!meta.name_to_id.emplace(it.key(), id).second)
            throw Error("meta: duplicate name '" + it.key() + "'");
    }
    std::vector<char> used(names.size(), 0);
    for (const auto& [name, id] : meta.name_to_id) {
        if (used[std::size_t(id)]) throw Error("meta: two names share id " + std::to_string(id));
        used[std::size_t(id)] = 1;
    }
    return meta;
}

inline std::string dump_canonical(const Json& j) { return j.dump() + "\n"; }

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error("write to '" + path + "' failed");
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

inline Instance load_instance(const std::string& path, bool check_geometry = true) {
    return instance_from_json(detail::parse_json_text(read_text_file(path), "instance"), check_geometry);
}

inline Solution load_solution(const std::string& path) {
    return solution_from_json(detail::parse_json_text(read_text_file(path), "solution"));
}

inline ReductionMeta load_meta(const std::string& path) {
    return meta_from_json(detail::parse_json_text(read_text_file(path), "meta"));
}

}  // namespace lamapf
