#pragma once

// Random instance generators and small reference problems shared by the
// unit and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "totp/bits.hpp"
#include "totp/gap.hpp"
#include "totp/problem.hpp"
#include "totp/problems.hpp"
#include "totp/tree.hpp"

namespace totp::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline Bits random_bits(Rng& rng, std::size_t n) {
    Bits s(n, '0');
    for (auto& ch : s) ch = coin(rng) ? '1' : '0';
    return s;
}

/// Problem whose witnesses are an explicit set; the oracle is a sorted-set lookup.
inline Problem set_problem(std::size_t length, std::vector<Bits> witnesses) {
    std::sort(witnesses.begin(), witnesses.end());
    witnesses.erase(std::unique(witnesses.begin(), witnesses.end()), witnesses.end());
    auto shared = std::make_shared<const std::vector<Bits>>(std::move(witnesses));
    auto is_w = [shared](BitsView y) {
        return std::binary_search(shared->begin(), shared->end(), y,
                                  [](auto a, auto b) { return BitsView(a) < BitsView(b); });
    };
    auto ext = [shared](BitsView c) {
        auto it = std::lower_bound(shared->begin(), shared->end(), c,
                                   [](const Bits& a, BitsView b) { return BitsView(a) < b; });
        return it != shared->end() && has_prefix(*it, c);
    };
    return make_problem(length, is_w, ext, "set(" + std::to_string(shared->size()) + ")");
}

/// Random explicit-set problem with exactly `n` witnesses (n <= 2^length).
inline Problem random_set_problem(Rng& rng, std::size_t length, std::size_t n) {
    std::set<Bits> chosen;
    while (chosen.size() < n) chosen.insert(random_bits(rng, length));
    return set_problem(length, {chosen.begin(), chosen.end()});
}

inline DnfFormula random_dnf(Rng& rng, std::size_t max_vars = 12, std::size_t max_terms = 6) {
    DnfFormula f;
    f.num_vars = uniform(rng, 0, max_vars);
    const auto terms = uniform(rng, 0, max_terms);
    for (std::size_t t = 0; t < terms; ++t) {
        std::vector<int> term;
        for (std::size_t v = 1; v <= f.num_vars; ++v) {
            if (coin(rng, 0.3)) term.push_back(coin(rng) ? static_cast<int>(v) : -static_cast<int>(v));
        }
        f.terms.push_back(term);
    }
    return f;
}

inline MonotoneCnf random_mcnf(Rng& rng, std::size_t max_vars = 12, std::size_t max_clauses = 8) {
    MonotoneCnf f;
    f.num_vars = uniform(rng, 1, max_vars);
    const auto clauses = uniform(rng, 0, max_clauses);
    for (std::size_t c = 0; c < clauses; ++c) {
        std::vector<int> clause;
        const auto width = uniform(rng, 1, std::min<std::size_t>(3, f.num_vars));
        while (clause.size() < width) {
            const int v = static_cast<int>(uniform(rng, 1, f.num_vars));
            if (std::find(clause.begin(), clause.end(), v) == clause.end()) clause.push_back(v);
        }
        f.clauses.push_back(clause);
    }
    return f;
}

inline Nfa random_nfa(Rng& rng, std::size_t max_states = 5, std::size_t max_length = 10) {
    Nfa a;
    a.num_states = uniform(rng, 1, max_states);
    a.length = uniform(rng, 0, max_length);
    for (std::size_t s = 0; s < a.num_states; ++s) {
        if (coin(rng, 0.4) || (s == 0 && a.initial.empty())) a.initial.push_back(s);
        if (coin(rng, 0.4)) a.accepting.push_back(s);
        for (int b = 0; b < 2; ++b) {
            for (std::size_t t = 0; t < a.num_states; ++t) {
                if (coin(rng, 0.35)) a.transitions.push_back({s, b, t});
            }
        }
    }
    return a;
}

inline BipartiteGraph random_bipartite(Rng& rng, std::size_t max_k = 6, double density = 0.6) {
    BipartiteGraph g;
    g.size = uniform(rng, 0, max_k);
    g.adj.assign(g.size, std::vector<std::uint8_t>(g.size, 0));
    for (auto& row : g.adj) {
        for (auto& e : row) e = coin(rng, density) ? 1 : 0;
    }
    return g;
}

/// Random computation tree of height at most max_depth.
inline Tree random_tree(Rng& rng, std::size_t max_depth) {
    if (max_depth == 0 || coin(rng, 0.2)) return Tree::leaf();
    if (coin(rng, 0.25)) return Tree::step(random_tree(rng, max_depth - 1));
    return Tree::branch(random_tree(rng, max_depth - 1), random_tree(rng, max_depth - 1));
}

/// Checker accepting a random subset of {0,1}^width with acceptance probability `density`.
inline Checker random_checker(Rng& rng, std::size_t width, double density = 0.5) {
    auto table = std::make_shared<std::vector<std::uint8_t>>(std::size_t{1} << width);
    for (auto& t : *table) t = coin(rng, density) ? 1 : 0;
    return Checker(width, [table](BitsView y) { return (*table)[small_value_of(y)] != 0; }, "table");
}

inline Checker parity_checker(std::size_t width) {
    return Checker(width, [](BitsView y) { return std::count(y.begin(), y.end(), '1') % 2 == 0; }, "parity");
}

inline Checker constant_checker(std::size_t width, bool verdict) {
    return Checker(width, [verdict](BitsView) { return verdict; }, verdict ? "always" : "never");
}

}  // namespace totp::testing
