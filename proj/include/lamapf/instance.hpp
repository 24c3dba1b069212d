#pragma once

// LA-MAPF problem model: a graph embedded in the plane, uniform-radius disk
// agents, single-mover transitions, and the conflict-aware solution
// validator. Two conflict kinds exist beyond structural vertex
// distinctness: bodies overlapping at vertices (center distance < 2r) and a
// moving agent's swept segment passing within 2r of a parked agent.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "lamapf/errors.hpp"
#include "lamapf/geometry.hpp"

namespace lamapf {

struct Vertex {
    int id = 0;
    std::string label;  // symbolic name; leading letter is the plane zone
    Point pos;
};

struct Agent {
    int id = 0;
    std::string label;
    int start = 0;
    int goal = 0;
};

struct Move {
    int agent = 0;
    int from = 0;
    int to = 0;
    friend bool operator==(const Move&, const Move&) = default;
};

struct Solution {
    std::vector<Move> moves;
    friend bool operator==(const Solution&, const Solution&) = default;
};

// placement[agent id] = vertex id; injective by construction rules
struct Configuration {
    std::vector<int> placement;
    friend bool operator==(const Configuration&, const Configuration&) = default;
};

class Instance {
  public:
    std::vector<Vertex> vertices;
    std::vector<std::pair<int, int>> edges;  // unordered pairs, stored (lo, hi)
    Coord radius = 1;
    std::vector<Agent> agents;

    // Structural invariants: dense unique ids, unique labels, distinct
    // positions, valid loop-free edges, distinct starts, distinct goals,
    // coordinates within the exact-arithmetic bound. Throws on violation.
    void check_structure() const {
        if (radius < 1 || radius > kCoordLimit) throw Error("radius must be in 1.." + std::to_string(kCoordLimit));
        if (vertices.empty()) throw Error("instance has no vertices");
        std::unordered_set<std::string> labels;
        std::unordered_set<std::uint64_t> positions;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            const Vertex& v = vertices[i];
            if (v.id != int(i)) throw Error("vertex ids must be dense 0..|V|-1 in order");
            if (!labels.insert(v.label).second) throw Error("duplicate vertex label '" + v.label + "'");
            if (v.pos.x < -kCoordLimit || v.pos.x > kCoordLimit || v.pos.y < -kCoordLimit || v.pos.y > kCoordLimit)
                throw Error("vertex '" + v.label + "' coordinate exceeds magnitude bound " +
                            std::to_string(kCoordLimit));
            std::uint64_t key = (std::uint64_t(std::uint32_t(v.pos.x)) << 32) | std::uint32_t(v.pos.y);
            if (!positions.insert(key).second) {
                for (std::size_t k = 0; k < i; ++k)
                    if (vertices[k].pos == v.pos)
                        throw Error("vertices '" + vertices[k].label + "' and '" + v.label +
                                    "' share position");
            }
        }
        std::unordered_set<std::uint64_t> edge_keys;
        for (auto [a, b] : edges) {
            if (a < 0 || b < 0 || a >= int(vertices.size()) || b >= int(vertices.size()))
                throw Error("edge endpoint out of range");
            if (a == b) throw Error("self-loop edge at vertex " + std::to_string(a));
            std::uint64_t key = edge_key(a, b);
            if (!edge_keys.insert(key).second) throw Error("duplicate edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
        }
        if (agents.empty()) throw Error("instance has no agents");
        std::unordered_set<int> starts, goals;
        std::unordered_set<std::string> agent_labels;
        for (std::size_t i = 0; i < agents.size(); ++i) {
            const Agent& ag = agents[i];
            if (ag.id != int(i)) throw Error("agent ids must be dense 0..k-1 in order");
            if (!agent_labels.insert(ag.label).second) throw Error("duplicate agent label '" + ag.label + "'");
            if (ag.start < 0 || ag.start >= int(vertices.size()) || ag.goal < 0 || ag.goal >= int(vertices.size()))
                throw Error("agent '" + ag.label + "' start/goal vertex out of range");
            if (!starts.insert(ag.start).second) throw Error("two agents share start vertex " + std::to_string(ag.start));
            if (!goals.insert(ag.goal).second) throw Error("two agents share goal vertex " + std::to_string(ag.goal));
        }
    }

    // Geometric invariant: the start and goal configurations are conflict-free.
    void check_start_goal_geometry() const {
        if (auto p = config_conflict_pair(start_configuration()))
            throw Error("start configuration has overlapping agents '" + agents[p->first].label +
                        "' and '" + agents[p->second].label + "'");
        if (auto p = config_conflict_pair(goal_configuration()))
            throw Error("goal configuration has overlapping agents '" + agents[p->first].label +
                        "' and '" + agents[p->second].label + "'");
    }

    int num_vertices() const { return int(vertices.size()); }
    int num_agents() const { return int(agents.size()); }

    Configuration start_configuration() const {
        Configuration c;
        for (const Agent& a : agents) c.placement.push_back(a.start);
        return c;
    }
    Configuration goal_configuration() const {
        Configuration c;
        for (const Agent& a : agents) c.placement.push_back(a.goal);
        return c;
    }

    bool has_edge(int a, int b) const {
        ensure_edge_index();
        return edge_index_.count(edge_key(a, b)) > 0;
    }

    const std::vector<std::vector<int>>& adjacency() const {
        ensure_edge_index();
        return adjacency_;
    }

    // First agent pair (i < j, lowest i then j) with center distance < 2r,
    // using the given threshold; nullopt if none.
    std::optional<std::pair<int, int>> config_conflict_pair(const Configuration& cfg, Coord threshold) const {
        check_configuration(cfg);
        Wide t2 = Wide(threshold) * threshold;
        for (std::size_t i = 0; i < cfg.placement.size(); ++i)
            for (std::size_t j = i + 1; j < cfg.placement.size(); ++j)
                if (sq_dist(vertices[cfg.placement[i]].pos, vertices[cfg.placement[j]].pos) < t2)
                    return std::make_pair(int(i), int(j));
        return std::nullopt;
    }
    std::optional<std::pair<int, int>> config_conflict_pair(const Configuration& cfg) const {
        return config_conflict_pair(cfg, 2 * radius);
    }

    // Lowest-id stationary agent whose disk the moving segment would clip,
    // at the given threshold; nullopt if the move is clean.
    std::optional<int> move_conflict_agent(const Move& mv, const Configuration& cfg, Coord threshold) const {
        check_configuration(cfg);
        if (mv.agent < 0 || mv.agent >= num_agents()) throw Error("move names unknown agent " + std::to_string(mv.agent));
        if (cfg.placement[mv.agent] != mv.from)
            throw Error("agent '" + agents[mv.agent].label + "' is not at move source vertex " + std::to_string(mv.from));
        if (!has_edge(mv.from, mv.to))
            throw Error("move (" + std::to_string(mv.from) + "," + std::to_string(mv.to) + ") is not along an edge");
        Segment seg{vertices[mv.from].pos, vertices[mv.to].pos};
        for (std::size_t j = 0; j < cfg.placement.size(); ++j) {
            if (int(j) == mv.agent) continue;
            if (point_segment_closer_than(vertices[cfg.placement[j]].pos, seg, threshold)) return int(j);
        }
        return std::nullopt;
    }

    void check_configuration(const Configuration& cfg) const {
        if (int(cfg.placement.size()) != num_agents())
            throw Error("configuration has " + std::to_string(cfg.placement.size()) + " entries for " +
                        std::to_string(num_agents()) + " agents");
        std::vector<char> seen(vertices.size(), 0);
        for (int v : cfg.placement) {
            if (v < 0 || v >= num_vertices()) throw Error("configuration references unknown vertex " + std::to_string(v));
            if (seen[v]) throw Error("configuration places two agents at vertex " + std::to_string(v));
            seen[v] = 1;
        }
    }

    static std::uint64_t edge_key(int a, int b) {
        if (a > b) std::swap(a, b);
        return (std::uint64_t(std::uint32_t(a)) << 32) | std::uint32_t(b);
    }

  private:
    void ensure_edge_index() const {
        if (edge_index_built_) return;
        adjacency_.assign(vertices.size(), {});
        for (auto [a, b] : edges) {
            edge_index_.insert(edge_key(a, b));
            adjacency_[a].push_back(b);
            adjacency_[b].push_back(a);
        }
        edge_index_built_ = true;
    }

    mutable std::unordered_set<std::uint64_t> edge_index_;
    mutable std::vector<std::vector<int>> adjacency_;
    mutable bool edge_index_built_ = false;
};

inline bool vertex_conflict_free(const Instance& inst, const Configuration& cfg) {
    return !inst.config_conflict_pair(cfg).has_value();
}

inline bool edge_conflict_free(const Instance& inst, const Move& mv, const Configuration& cfg) {
    return !inst.move_conflict_agent(mv, cfg, 2 * inst.radius).has_value();
}

inline Configuration apply_move(const Configuration& cfg, const Move& mv) {
    if (mv.agent < 0 || mv.agent >= int(cfg.placement.size()))
        throw Error("apply_move: unknown agent " + std::to_string(mv.agent));
    if (cfg.placement[mv.agent] != mv.from)
        throw Error("apply_move: agent " + std::to_string(mv.agent) + " is not at vertex " + std::to_string(mv.from));
    Configuration out = cfg;
    out.placement[mv.agent] = mv.to;
    return out;
}

inline Configuration undo_move(const Configuration& cfg, const Move& mv) {
    if (mv.agent < 0 || mv.agent >= int(cfg.placement.size()))
        throw Error("undo_move: unknown agent " + std::to_string(mv.agent));
    if (cfg.placement[mv.agent] != mv.to)
        throw Error("undo_move: agent " + std::to_string(mv.agent) + " is not at vertex " + std::to_string(mv.to));
    Configuration out = cfg;
    out.placement[mv.agent] = mv.from;
    return out;
}

enum class Violation { EDGE_MISSING, VERTEX_CONFLICT, EDGE_CONFLICT, GOAL_MISMATCH, MALFORMED };

inline const char* to_string(Violation v) {
    switch (v) {
        case Violation::EDGE_MISSING: return "EDGE_MISSING";
        case Violation::VERTEX_CONFLICT: return "VERTEX_CONFLICT";
        case Violation::EDGE_CONFLICT: return "EDGE_CONFLICT";
        case Violation::GOAL_MISMATCH: return "GOAL_MISMATCH";
        case Violation::MALFORMED: return "MALFORMED";
    }
    return "?";
}

// ACCEPT, or the first violation found in replay order. `step` counts
// transitions: the start configuration is step 0 and the t-th move produces
// the configuration of step t. Within one step, checks run in a fixed
// order (move well-formed, edge exists, destination free, swept-segment
// conflicts by ascending stationary agent id, then vertex conflicts by
// ascending pair) so reports are deterministic.
struct ValidationReport {
    bool accept = false;
    int step = -1;  // -1 when accepted
    std::optional<Violation> kind;
    std::string detail;
    std::vector<int> agents_involved;

    static ValidationReport accepted() {
        ValidationReport r;
        r.accept = true;
        r.detail = "";
        return r;
    }
    static ValidationReport rejected(int step, Violation kind, std::string detail, std::vector<int> agents = {}) {
        ValidationReport r;
        r.accept = false;
        r.step = step;
        r.kind = kind;
        r.detail = std::move(detail);
        r.agents_involved = std::move(agents);
        return r;
    }
};

// The validator embodies the transition semantics: replay each move from the
// start configuration with exactly one agent moving per step, all other
// agents parked. Internal threshold hook: conflicts use distance < threshold
// (normally 2r); threshold 0 turns off all geometric checks and leaves only
// the structural Classical-MAPF rules.
inline ValidationReport validate_with_threshold(const Instance& inst, const Solution& sol, Coord threshold) {
    const int k = inst.num_agents();
    Configuration cfg = inst.start_configuration();
    std::vector<char> occupied(inst.num_vertices(), 0);
    for (int v : cfg.placement) occupied[v] = 1;

    if (threshold > 0)
        if (auto p = inst.config_conflict_pair(cfg, threshold))
            return ValidationReport::rejected(
                0, Violation::VERTEX_CONFLICT,
                "start configuration: agents '" + inst.agents[p->first].label + "' and '" +
                    inst.agents[p->second].label + "' overlap",
                {p->first, p->second});

    for (std::size_t idx = 0; idx < sol.moves.size(); ++idx) {
        const Move& mv = sol.moves[idx];
        const int step = int(idx) + 1;
        if (mv.agent < 0 || mv.agent >= k)
            return ValidationReport::rejected(step, Violation::MALFORMED,
                                              "move names unknown agent " + std::to_string(mv.agent));
        if (mv.from < 0 || mv.from >= inst.num_vertices() || mv.to < 0 || mv.to >= inst.num_vertices())
            return ValidationReport::rejected(step, Violation::MALFORMED, "move references unknown vertex",
                                              {mv.agent});
        const Agent& mover = inst.agents[mv.agent];
        if (cfg.placement[mv.agent] != mv.from)
            return ValidationReport::rejected(
                step, Violation::MALFORMED,
                "agent '" + mover.label + "' is at '" + inst.vertices[cfg.placement[mv.agent]].label +
                    "', not at move source '" + inst.vertices[mv.from].label + "'",
                {mv.agent});
        if (!inst.has_edge(mv.from, mv.to))
            return ValidationReport::rejected(step, Violation::EDGE_MISSING,
                                              "no edge between '" + inst.vertices[mv.from].label + "' and '" +
                                                  inst.vertices[mv.to].label + "'",
                                              {mv.agent});
        if (occupied[mv.to]) {
            int other = -1;
            for (int j = 0; j < k; ++j)
                if (j != mv.agent && cfg.placement[j] == mv.to) { other = j; break; }
            return ValidationReport::rejected(step, Violation::MALFORMED,
                                              "destination '" + inst.vertices[mv.to].label +
                                                  "' is occupied by agent '" + inst.agents[other].label + "'",
                                              {mv.agent, other});
        }
        if (threshold > 0) {
            Segment seg{inst.vertices[mv.from].pos, inst.vertices[mv.to].pos};
            for (int j = 0; j < k; ++j) {
                if (j == mv.agent) continue;
                if (point_segment_closer_than(inst.vertices[cfg.placement[j]].pos, seg, threshold))
                    return ValidationReport::rejected(
                        step, Violation::EDGE_CONFLICT,
                        "agent '" + mover.label + "' moving '" + inst.vertices[mv.from].label + "' -> '" +
                            inst.vertices[mv.to].label + "' passes within 2r of agent '" +
                            inst.agents[j].label + "' at '" + inst.vertices[cfg.placement[j]].label + "'",
                        {mv.agent, j});
            }
        }
        occupied[mv.from] = 0;
        occupied[mv.to] = 1;
        cfg.placement[mv.agent] = mv.to;
        if (threshold > 0) {
            // only pairs involving the mover can newly overlap
            Wide t2 = Wide(threshold) * threshold;
            for (int j = 0; j < k; ++j) {
                if (j == mv.agent) continue;
                if (sq_dist(inst.vertices[cfg.placement[j]].pos, inst.vertices[mv.to].pos) < t2) {
                    int lo = std::min(j, mv.agent), hi = std::max(j, mv.agent);
                    return ValidationReport::rejected(step, Violation::VERTEX_CONFLICT,
                                                      "agents '" + inst.agents[lo].label + "' and '" +
                                                          inst.agents[hi].label + "' overlap",
                                                      {lo, hi});
                }
            }
        }
    }

    for (int j = 0; j < k; ++j)
        if (cfg.placement[j] != inst.agents[j].goal)
            return ValidationReport::rejected(
                int(sol.moves.size()), Violation::GOAL_MISMATCH,
                "agent '" + inst.agents[j].label + "' ends at '" + inst.vertices[cfg.placement[j]].label +
                    "' instead of goal '" + inst.vertices[inst.agents[j].goal].label + "'",
                {j});
    return ValidationReport::accepted();
}

inline ValidationReport validate(const Instance& inst, const Solution& sol) {
    return validate_with_threshold(inst, sol, 2 * inst.radius);
}

// Multiply all coordinates and the radius by c > 0. Exact geometry makes
// every conflict verdict invariant under this map.
inline Instance scaled(const Instance& inst, Coord c) {
    if (c < 1) throw Error("scale factor must be positive");
    Instance out = inst;
    out.radius = inst.radius * c;
    for (Vertex& v : out.vertices) {
        v.pos.x *= c;
        v.pos.y *= c;
    }
    out.check_structure();
    return out;
}

}  // namespace lamapf
