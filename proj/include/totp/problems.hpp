#pragma once

// Concrete self-reducible counting problems with genuine polynomial-time
// prefix oracles, and the independent exact counters used to check them.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "totp/bits.hpp"
#include "totp/problem.hpp"

namespace totp {

/// Disjunction of conjunctive terms. Literal +i / -i is variable i (1-based) true / false.
struct DnfFormula {
    std::size_t num_vars = 0;
    std::vector<std::vector<int>> terms;
};

/// Conjunction of clauses over positive literals only.
struct MonotoneCnf {
    std::size_t num_vars = 0;
    std::vector<std::vector<int>> clauses;
};

/// Nondeterministic automaton over {0,1}, counted at one target length.
struct Nfa {
    struct Transition {
        std::size_t from = 0;
        int symbol = 0;
        std::size_t to = 0;
    };

    std::size_t num_states = 0;
    std::vector<std::size_t> initial;
    std::vector<std::size_t> accepting;
    std::vector<Transition> transitions;
    std::size_t length = 0;
};

/// Square 0/1 biadjacency matrix: adj[i][j] = 1 iff left i and right j are joined.
struct BipartiteGraph {
    std::size_t size = 0;
    std::vector<std::vector<std::uint8_t>> adj;
};

/// Each throws UsageError describing the first violated invariant.
void validate(const DnfFormula& f);
void validate(const MonotoneCnf& f);
void validate(const Nfa& a);
void validate(const BipartiteGraph& g);

/// Witnesses: satisfying assignments, bit i = variable i+1. A prefix extends
/// iff some term is not yet falsified by it.
Problem dnf_problem(const DnfFormula& f);

/// Witnesses: satisfying assignments. A prefix extends iff setting every
/// remaining variable true satisfies the formula.
Problem monotone_cnf_problem(const MonotoneCnf& f);

/// Witnesses: accepted strings of length a.length. A prefix extends iff the
/// states it reaches meet the states that accept in exactly the remaining steps.
Problem nfa_problem(const Nfa& a);

/// Witnesses: perfect matchings, written as one index_width(k-1)-bit partner
/// per left vertex. A prefix extends iff it is a valid partial matching whose
/// residual graph still has a perfect matching (one Kuhn augmenting-path
/// search per unmatched left vertex, tallied in OracleCalls::aux).
Problem perfect_matching_problem(const BipartiteGraph& g);

/// Bits per left vertex in the matching encoding.
std::size_t matching_field_width(std::size_t k);

/// Permanent of the 0/1 matrix by inclusion-exclusion over column subsets.
/// Throws ScaleError for k > max_k.
Count ryser_permanent(const BipartiteGraph& g, std::size_t max_k = 20);

/// Accepted strings of length a.length via subset construction and a count
/// per reachable subset and length. Throws ScaleError above max_states.
Count nfa_det_count(const Nfa& a, std::size_t max_states = 24);

// Line-oriented ASCII formats. Lines starting with 'c' are comments in the
// DIMACS-style formats. Parsers throw ParseError with the offending line.
//
//   DNF:          p dnf <nvars> <nterms>, then terms of signed ints ending in 0
//   Monotone CNF: p mcnf <nvars> <nclauses>, then clauses of positive ints ending in 0
//   NFA:          nfa <nstates> <ninitial> <naccepting>, initial states line,
//                 accepting states line, then "<from> <0|1> <to>" lines
//   Bipartite:    pm <k>, then k rows of k entries in {0,1}
DnfFormula parse_dnf(std::istream& in);
MonotoneCnf parse_mcnf(std::istream& in);
Nfa parse_nfa(std::istream& in, std::size_t length);
BipartiteGraph parse_bipartite(std::istream& in);

void write_dnf(std::ostream& out, const DnfFormula& f);
void write_mcnf(std::ostream& out, const MonotoneCnf& f);
void write_nfa(std::ostream& out, const Nfa& a);
void write_bipartite(std::ostream& out, const BipartiteGraph& g);

}  // namespace totp
