#pragma once

// Shared helpers for the test suites: deterministic random formula
// generators and scratch-directory plumbing. All randomness is seeded per
// call site so every run of the suite sees the same inputs.

#include <algorithm>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "lamapf/cnf.hpp"

namespace testsupport {

// Clause with exactly `size` distinct literals (distinct as literals, so
// x1 and ~x1 may co-occur). Needs 2n >= size.
inline lamapf::Clause random_clause(std::mt19937& rng, int n, int size) {
    if (2 * n < size) throw std::logic_error("not enough literals available");
    std::vector<int> pool(std::size_t(2 * n));
    for (int i = 0; i < 2 * n; ++i) pool[std::size_t(i)] = i;
    std::shuffle(pool.begin(), pool.end(), rng);
    lamapf::Clause c;
    for (int s = 0; s < size; ++s)
        c.literals.push_back({pool[std::size_t(s)] / 2 + 1, pool[std::size_t(s)] % 2 == 1});
    return c;
}

// Every clause has exactly 3 distinct literals; requires n >= 2.
inline lamapf::Formula3CNF random_formula3(std::mt19937& rng, int n, int m) {
    lamapf::Formula3CNF f;
    f.num_vars = n;
    for (int j = 0; j < m; ++j) f.clauses.push_back(random_clause(rng, n, 3));
    return f;
}

// Mixed clause sizes 1..3 with distinct variables per clause, forced
// satisfiable by planting a hidden assignment and making one literal of
// each clause agree with it.
inline std::pair<lamapf::Formula3CNF, lamapf::Assignment> random_satisfiable(std::mt19937& rng,
                                                                             int n, int m) {
    lamapf::Assignment hidden(std::size_t(n), false);
    for (int i = 0; i < n; ++i) hidden[std::size_t(i)] = std::uniform_int_distribution<int>(0, 1)(rng);

    lamapf::Formula3CNF f;
    f.num_vars = n;
    std::vector<int> vars(std::size_t(n), 0);
    for (int i = 0; i < n; ++i) vars[std::size_t(i)] = i + 1;
    for (int j = 0; j < m; ++j) {
        int size = std::uniform_int_distribution<int>(1, std::min(3, n))(rng);
        std::shuffle(vars.begin(), vars.end(), rng);
        lamapf::Clause c;
        for (int s = 0; s < size; ++s)
            c.literals.push_back({vars[std::size_t(s)], std::uniform_int_distribution<int>(0, 1)(rng) == 1});
        int witness = std::uniform_int_distribution<int>(0, size - 1)(rng);
        c.literals[std::size_t(witness)].negated = !hidden[std::size_t(c.literals[std::size_t(witness)].var - 1)];
        f.clauses.push_back(std::move(c));
    }
    return {f, hidden};
}

inline std::string make_temp_dir() {
    char tmpl[] = "/tmp/lamapf_test_XXXXXX";
    char* d = ::mkdtemp(tmpl);
    if (!d) throw std::runtime_error("mkdtemp failed");
    return d;
}

}  // namespace testsupport
