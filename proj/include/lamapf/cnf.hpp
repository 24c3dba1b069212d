#pragma once

// 3-CNF formulas: DIMACS parsing, evaluation, and an exhaustive
// satisfiability oracle used as ground truth in round-trip checks.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lamapf/errors.hpp"

namespace lamapf {

struct Literal {
    int var = 1;  // 1-based variable index
    bool negated = false;
    friend bool operator==(const Literal&, const Literal&) = default;
};

// Literals are stored deduplicated, in first-occurrence order. A clause that
// arrives as "1 1 1 0" shrinks to the single literal x1; order matters later
// because the solution synthesizer scans literals in clause order.
struct Clause {
    std::vector<Literal> literals;
    friend bool operator==(const Clause&, const Clause&) = default;
};

struct Formula3CNF {
    int num_vars = 0;
    std::vector<Clause> clauses;
    friend bool operator==(const Formula3CNF&, const Formula3CNF&) = default;
};

// values[i] is the value of x_{i+1}
using Assignment = std::vector<bool>;

inline Clause dedup_clause(const Clause& c) {
    Clause out;
    for (const Literal& lit : c.literals)
        if (std::find(out.literals.begin(), out.literals.end(), lit) == out.literals.end())
            out.literals.push_back(lit);
    return out;
}

inline void check_formula(const Formula3CNF& f) {
    if (f.num_vars < 1) throw Error("formula must have at least one variable");
    if (f.clauses.empty()) throw Error("formula must have at least one clause");
    for (std::size_t j = 0; j < f.clauses.size(); ++j) {
        const Clause& c = f.clauses[j];
        if (c.literals.empty() || c.literals.size() > 3)
            throw Error("clause " + std::to_string(j + 1) + " has " +
                        std::to_string(c.literals.size()) + " literals (need 1..3)");
        if (dedup_clause(c).literals.size() != c.literals.size())
            throw Error("clause " + std::to_string(j + 1) + " has duplicate literals");
        for (const Literal& lit : c.literals)
            if (lit.var < 1 || lit.var > f.num_vars)
                throw Error("clause " + std::to_string(j + 1) + " references variable x" +
                            std::to_string(lit.var) + " outside 1..n");
    }
}

// Standard DIMACS CNF: 'c' comment lines, a 'p cnf <n> <m>' header, then m
// clauses as nonzero integers terminated by 0 (clauses may span lines).
// Clauses are deduplicated; more than 3 distinct literals is rejected since
// the downstream reduction is defined for 3-CNF only.
inline Formula3CNF parse_dimacs(std::istream& in) {
    int line_no = 0;
    std::string line;
    int n = 0, m = 0;
    bool have_header = false;

    // header
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;  // blank
        if (tok == "c" || tok[0] == 'c') continue;
        if (tok != "p") throw ParseError("expected 'p cnf' header, got '" + tok + "'", line_no);
        std::string fmt;
        if (!(ls >> fmt) || fmt != "cnf") throw ParseError("expected 'p cnf' header", line_no);
        if (!(ls >> n >> m)) throw ParseError("bad 'p cnf' header: need variable and clause counts", line_no);
        std::string extra;
        if (ls >> extra) throw ParseError("trailing token '" + extra + "' after header", line_no);
        have_header = true;
        break;
    }
    if (!have_header) throw ParseError("missing 'p cnf' header", line_no);
    if (n < 1) throw ParseError("header declares " + std::to_string(n) + " variables (need >= 1)", line_no);
    if (m < 1) throw ParseError("header declares " + std::to_string(m) + " clauses (need >= 1)", line_no);

    Formula3CNF f;
    f.num_vars = n;
    Clause cur;
    bool cur_open = false;

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok[0] == 'c') continue;  // comment line
        do {
            int lit;
            std::size_t used = 0;
            try {
                lit = std::stoi(tok, &used);
            } catch (const std::exception&) {
                throw ParseError("bad token '" + tok + "'", line_no);
            }
            if (used != tok.size()) throw ParseError("bad token '" + tok + "'", line_no);
            if (lit == 0) {
                if (!cur_open) throw ParseError("empty clause", line_no);
                Clause deduped = dedup_clause(cur);
                if (deduped.literals.size() > 3)
                    throw ParseError("clause " + std::to_string(f.clauses.size() + 1) + " has " +
                                         std::to_string(deduped.literals.size()) +
                                         " distinct literals; input is not 3-CNF",
                                     line_no);
                f.clauses.push_back(std::move(deduped));
                cur = Clause{};
                cur_open = false;
                continue;
            }
            int var = lit > 0 ? lit : -lit;
            if (var > n)
                throw ParseError("literal " + tok + " references variable beyond header bound " +
                                     std::to_string(n),
                                 line_no);
            cur.literals.push_back({var, lit < 0});
            cur_open = true;
        } while (ls >> tok);
    }
    if (cur_open) throw ParseError("unterminated clause at end of input (missing 0)", line_no);
    if (int(f.clauses.size()) != m)
        throw ParseError("header declares " + std::to_string(m) + " clauses but input has " +
                             std::to_string(f.clauses.size()),
                         line_no);
    check_formula(f);
    return f;
}

inline Formula3CNF parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

// Canonical renderer: header, then one clause per line, 0-terminated.
// parse_dimacs(render_dimacs(f)) == f.
inline std::string render_dimacs(const Formula3CNF& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
    for (const Clause& c : f.clauses) {
        for (const Literal& lit : c.literals) out << (lit.negated ? -lit.var : lit.var) << " ";
        out << "0\n";
    }
    return out.str();
}

inline bool evaluate(const Formula3CNF& f, const Assignment& a) {
    if (int(a.size()) != f.num_vars)
        throw Error("assignment has " + std::to_string(a.size()) + " values but formula has " +
                    std::to_string(f.num_vars) + " variables");
    for (const Clause& c : f.clauses) {
        bool sat = false;
        for (const Literal& lit : c.literals)
            if (a[lit.var - 1] != lit.negated) { sat = true; break; }
        if (!sat) return false;
    }
    return true;
}

// Exhaustive SAT oracle. Enumerates all 2^n assignments in lexicographic
// order over (x1,...,xn) with false < true and returns the first satisfying
// one, or nullopt if the formula is unsatisfiable.
inline std::optional<Assignment> brute_force_sat(const Formula3CNF& f, int max_vars = 24) {
    check_formula(f);
    if (f.num_vars > max_vars)
        throw Error("brute_force_sat: " + std::to_string(f.num_vars) + " variables exceeds cap " +
                    std::to_string(max_vars) + "; raise the max_vars cap to enumerate anyway");
    const int n = f.num_vars;
    const std::uint64_t total = std::uint64_t(1) << n;
    Assignment a(n, false);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (int i = 0; i < n; ++i) a[i] = (mask >> (n - 1 - i)) & 1;  // x1 is most significant
        if (evaluate(f, a)) return a;
    }
    return std::nullopt;
}

}  // namespace lamapf
