#pragma once

// Exhaustive single-mover search over joint configurations, plus the
// round-trip harness that pits it against a brute-force SAT oracle.
//
// The search is a plain breadth-first enumeration: a state is one placement
// of all agents, a transition moves one agent along one edge. Geometry is
// folded into precomputed bitsets so the inner loop is a handful of word
// ANDs: close(u) marks every vertex too near u for a second agent, and
// block(e) marks every vertex a stationary agent must not hold while some
// agent slides along edge e. UNSOLVABLE is meaningful because the
// enumeration is complete: it means the goal is unreachable, not merely
// unfound.

#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lamapf/cnf.hpp"
#include "lamapf/errors.hpp"
#include "lamapf/instance.hpp"
#include "lamapf/reduction.hpp"
#include "lamapf/witness.hpp"

namespace lamapf {

struct SolveLimits {
    std::uint64_t max_states = 50'000'000;
    double max_seconds = 600.0;
    // explore agents and edges in reverse order; verdicts must not change
    bool reverse_expansion = false;
};

enum class SolveStatus { SOLVED, UNSOLVABLE, LIMIT_EXCEEDED };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::SOLVED: return "SOLVED";
        case SolveStatus::UNSOLVABLE: return "UNSOLVABLE";
        case SolveStatus::LIMIT_EXCEEDED: return "LIMIT_EXCEEDED";
    }
    return "?";
}

struct SolveResult {
    SolveStatus status = SolveStatus::LIMIT_EXCEEDED;
    Solution solution;  // meaningful only when status == SOLVED
    std::uint64_t states_expanded = 0;
    std::uint64_t states_seen = 0;
};

class ConflictTables {
  public:
    ConflictTables(const Instance& inst, Coord threshold) {
        const int V = inst.num_vertices();
        const int E = int(inst.edges.size());
        words_ = std::size_t(V + 63) / 64;
        close_.assign(words_ * std::size_t(V), 0);
        block_.assign(words_ * std::size_t(E), 0);
        adj_.assign(std::size_t(V), {});

        const Wide thr2 = Wide(threshold) * threshold;
        for (int u = 0; u < V; ++u) {
            std::uint64_t* row = close_.data() + words_ * std::size_t(u);
            for (int w = 0; w < V; ++w) {
                // u == w is always blocked: that is plain occupancy
                bool bad = (u == w) || sq_dist(inst.vertices[u].pos, inst.vertices[w].pos) < thr2;
                if (bad) row[std::size_t(w) / 64] |= std::uint64_t(1) << (w % 64);
            }
        }
        for (int e = 0; e < E; ++e) {
            auto [a, b] = inst.edges[std::size_t(e)];
            Segment seg{inst.vertices[a].pos, inst.vertices[b].pos};
            std::uint64_t* row = block_.data() + words_ * std::size_t(e);
            for (int w = 0; w < V; ++w)
                if (point_segment_closer_than(inst.vertices[w].pos, seg, threshold))
                    row[std::size_t(w) / 64] |= std::uint64_t(1) << (w % 64);
            adj_[std::size_t(a)].push_back({b, e});
            adj_[std::size_t(b)].push_back({a, e});
        }
    }

    std::size_t words() const { return words_; }
    const std::uint64_t* close_row(int u) const { return close_.data() + words_ * std::size_t(u); }
    const std::uint64_t* block_row(int e) const { return block_.data() + words_ * std::size_t(e); }
    const std::vector<std::pair<int, int>>& neighbors(int v) const { return adj_[std::size_t(v)]; }

  private:
    std::size_t words_;
    std::vector<std::uint64_t> close_;
    std::vector<std::uint64_t> block_;
    std::vector<std::vector<std::pair<int, int>>> adj_;  // vertex -> (neighbor, edge index)
};

namespace detail {

// joint state packed into one 64-bit word, ceil(log2 V) bits per agent
struct PackedCodec {
    int bits;
    std::uint64_t mask;
    using Key = std::uint64_t;
    Key encode(const std::vector<int>& pl) const {
        Key k = 0;
        for (std::size_t a = 0; a < pl.size(); ++a) k |= Key(pl[a]) << (bits * int(a));
        return k;
    }
    int get(Key k, int a) const { return int((k >> (bits * a)) & mask); }
    Key moved(Key k, int a, int to) const {
        int sh = bits * a;
        return (k & ~(mask << sh)) | (Key(std::uint64_t(to)) << sh);
    }
};

// fallback when bits * agents > 64
struct WideCodec {
    using Key = std::u16string;
    Key encode(const std::vector<int>& pl) const {
        Key k(pl.size(), 0);
        for (std::size_t a = 0; a < pl.size(); ++a) k[a] = char16_t(pl[a]);
        return k;
    }
    int get(const Key& k, int a) const { return int(k[std::size_t(a)]); }
    Key moved(Key k, int a, int to) const {
        k[std::size_t(a)] = char16_t(to);
        return k;
    }
};

template <class Codec>
SolveResult bfs_run(const Instance& inst, const ConflictTables& ct, const SolveLimits& lim,
                    const Codec& codec) {
    using Key = typename Codec::Key;
    const int k = inst.num_agents();
    const std::size_t W = ct.words();

    SolveResult res;
    const Key start_key = codec.encode(inst.start_configuration().placement);
    const Key goal_key = codec.encode(inst.goal_configuration().placement);
    if (start_key == goal_key) {
        res.status = SolveStatus::SOLVED;
        res.states_seen = 1;
        return res;
    }

    struct Rec {
        Key key;
        std::uint32_t parent;
        std::uint16_t agent;
        std::uint16_t to;
    };
    std::vector<Rec> states;
    std::unordered_map<Key, std::uint32_t> seen;
    seen.reserve(1 << 16);
    states.push_back({start_key, 0, 0, 0});
    seen.emplace(start_key, 0);

    auto reconstruct = [&](std::uint32_t idx) {
        std::vector<Move> rev;
        for (std::uint32_t at = idx; at != 0; at = states[at].parent) {
            const Rec& r = states[at];
            rev.push_back({int(r.agent), codec.get(states[r.parent].key, int(r.agent)), int(r.to)});
        }
        res.solution.moves.assign(rev.rbegin(), rev.rend());
    };

    std::vector<int> pl(std::size_t(k), 0);
    std::vector<std::uint64_t> occ(W);
    const auto t0 = std::chrono::steady_clock::now();

    for (std::uint32_t head = 0; head < states.size(); ++head) {
        if ((head & 8191) == 0 && head) {
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (secs > lim.max_seconds) {
                res.states_expanded = head;
                res.states_seen = states.size();
                res.status = SolveStatus::LIMIT_EXCEEDED;
                return res;
            }
        }
        const Key key = states[head].key;
        for (int a = 0; a < k; ++a) pl[std::size_t(a)] = codec.get(key, a);
        std::fill(occ.begin(), occ.end(), 0);
        for (int v : pl) occ[std::size_t(v) / 64] |= std::uint64_t(1) << (v % 64);

        for (int ai = 0; ai < k; ++ai) {
            const int a = lim.reverse_expansion ? k - 1 - ai : ai;
            const int v = pl[std::size_t(a)];
            const auto& nbrs = ct.neighbors(v);
            const std::size_t deg = nbrs.size();
            for (std::size_t ni = 0; ni < deg; ++ni) {
                const auto [u, e] = nbrs[lim.reverse_expansion ? deg - 1 - ni : ni];
                const std::uint64_t* cl = ct.close_row(u);
                const std::uint64_t* bl = ct.block_row(e);
                bool bad = false;
                for (std::size_t w = 0; w < W; ++w) {
                    std::uint64_t x = occ[w] & (cl[w] | bl[w]);
                    if (w == std::size_t(v) / 64) x &= ~(std::uint64_t(1) << (v % 64));
                    if (x) {
                        bad = true;
                        break;
                    }
                }
                if (bad) continue;
                Key nk = codec.moved(key, a, u);
                auto [it, fresh] = seen.emplace(nk, std::uint32_t(states.size()));
                if (!fresh) continue;
                if (states.size() >= lim.max_states) {
                    res.states_expanded = head;
                    res.states_seen = states.size();
                    res.status = SolveStatus::LIMIT_EXCEEDED;
                    return res;
                }
                states.push_back({nk, head, std::uint16_t(a), std::uint16_t(u)});
                if (nk == goal_key) {
                    reconstruct(std::uint32_t(states.size() - 1));
                    res.states_expanded = head + 1;
                    res.states_seen = states.size();
                    res.status = SolveStatus::SOLVED;
                    return res;
                }
            }
        }
    }
    res.states_expanded = states.size();
    res.states_seen = states.size();
    res.status = SolveStatus::UNSOLVABLE;
    return res;
}

}  // namespace detail

inline SolveResult solve_bfs(const Instance& inst, const SolveLimits& lim = {}) {
    inst.check_structure();
    inst.check_start_goal_geometry();
    const int V = inst.num_vertices();
    const int k = inst.num_agents();
    if (V > 65535 || k > 65535) throw Error("instance too large for the joint-space search");

    ConflictTables ct(inst, 2 * inst.radius);
    const int bits = std::max(1, int(std::bit_width(std::uint32_t(V - 1))));

    SolveResult res;
    if (bits * k <= 64)
        res = detail::bfs_run(inst, ct, lim, detail::PackedCodec{bits, (std::uint64_t(1) << bits) - 1});
    else
        res = detail::bfs_run(inst, ct, lim, detail::WideCodec{});

    if (res.status == SolveStatus::SOLVED) {
        ValidationReport rep = validate(inst, res.solution);
        if (!rep.accept)
            throw BugError("search produced a solution the validator rejects at step " +
                           std::to_string(rep.step) + ": " + rep.detail);
    }
    return res;
}

enum class Agreement { AGREE, INCONCLUSIVE, DISAGREE };

inline const char* to_string(Agreement a) {
    switch (a) {
        case Agreement::AGREE: return "AGREE";
        case Agreement::INCONCLUSIVE: return "INCONCLUSIVE";
        case Agreement::DISAGREE: return "DISAGREE";
    }
    return "?";
}

struct AgreementRecord {
    int n = 0, m = 0;
    bool sat = false;
    std::optional<Assignment> assignment;     // oracle witness when satisfiable
    SolveStatus search = SolveStatus::LIMIT_EXCEEDED;
    std::uint64_t states_expanded = 0;
    Agreement outcome = Agreement::INCONCLUSIVE;
    std::optional<bool> synthesized_accepts;  // satisfiable side: canonical solution validates
    std::optional<bool> extracted_satisfies;  // solved side: recovered assignment satisfies

    // true when the verdicts agree and every cross-check that ran passed
    bool consistent() const {
        if (outcome != Agreement::AGREE) return false;
        if (synthesized_accepts && !*synthesized_accepts) return false;
        if (extracted_satisfies && !*extracted_satisfies) return false;
        return true;
    }
};

// Runs the whole loop on one formula: SAT oracle, reduction, exhaustive
// search, and the two witness translations. Any disagreement is a bug in
// exactly one of those components, which is what makes this the strongest
// single check in the suite.
inline AgreementRecord solvable_verdict(const Formula3CNF& f, const SolveLimits& lim = {}) {
    AgreementRecord rec;
    rec.n = f.num_vars;
    rec.m = int(f.clauses.size());

    std::optional<Assignment> w = brute_force_sat(f);
    rec.sat = w.has_value();
    rec.assignment = w;

    auto [inst, meta] = reduce(f);
    SolveResult sr = solve_bfs(inst, lim);
    rec.search = sr.status;
    rec.states_expanded = sr.states_expanded;

    if (sr.status == SolveStatus::LIMIT_EXCEEDED)
        rec.outcome = Agreement::INCONCLUSIVE;
    else
        rec.outcome = (rec.sat == (sr.status == SolveStatus::SOLVED)) ? Agreement::AGREE
                                                                      : Agreement::DISAGREE;

    if (rec.sat) {
        Solution sol = synthesize(f, *w, inst, meta);
        rec.synthesized_accepts = validate(inst, sol).accept;
    }
    if (sr.status == SolveStatus::SOLVED)
        rec.extracted_satisfies = evaluate(f, extract(inst, meta, sr.solution));

    return rec;
}

}  // namespace lamapf
