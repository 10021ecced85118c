#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "totp/bits.hpp"
#include "totp/problem.hpp"
#include "totp/tree.hpp"

namespace totp {

/// Largest witness length the exhaustive oracles accept unless overridden.
inline constexpr std::size_t kDefaultMaxP = 24;

/// Counts witnesses by trying every string of length p. Never consults can_extend.
/// Throws ScaleError when p > max_p.
Count brute_force_count(const CountingProblem& problem, OracleCalls& calls,
                        std::size_t max_p = kDefaultMaxP);
Count brute_force_count(const CountingProblem& problem, std::size_t max_p = kDefaultMaxP);

/// All witnesses in lexicographic order, by exhaustive search.
std::vector<Bits> brute_force_witnesses(const CountingProblem& problem,
                                        std::size_t max_p = kDefaultMaxP);

/// Counts witnesses by depth-first search over extendable prefixes.
///
/// Issues at most 2(p+1)(N+1) top-level oracle calls for N witnesses.
/// Throws IntegrityError if can_extend accepts a full-length non-witness.
Count count(const CountingProblem& problem, OracleCalls& calls);
Count count(const CountingProblem& problem);

/// The computation tree whose path count is count + 1.
///
/// A problem without witnesses gives a single leaf. Otherwise the root
/// branches into a leaf and a guessing subtree that branches exactly at the
/// prefixes where both one-bit extensions can still be completed and takes a
/// deterministic step where only one can.
Tree canonical_tree(const CountingProblem& problem, OracleCalls& calls);
Tree canonical_tree(const CountingProblem& problem);

struct OracleViolation {
    enum class Kind {
        unsound_extend,      // can_extend true but no witness has the prefix
        missed_extension,    // can_extend false but some witness has the prefix
        not_monotone,        // can_extend(c) true while can_extend(parent of c) false
        leaf_mismatch,       // full length: can_extend and is_witness disagree
        nondeterministic,    // two identical calls answered differently
        over_budget,         // one call issued more nested calls than call_budget()
    };
    Kind kind;
    Bits prefix;
};

std::string to_string(OracleViolation::Kind kind);

struct OracleReport {
    std::vector<OracleViolation> violations;  // first `kMaxRecorded` only
    std::uint64_t violation_count = 0;
    std::uint64_t prefixes_checked = 0;
    std::uint64_t max_nested_per_call = 0;
    std::uint64_t call_budget = 0;

    static constexpr std::size_t kMaxRecorded = 64;

    bool ok() const { return violation_count == 0; }
};

/// Exhaustively checks the prefix oracle against the witness predicate over
/// every prefix of length 0..p. Throws ScaleError when p > max_p.
OracleReport validate_oracle(const CountingProblem& problem, std::size_t max_p = kDefaultMaxP);

}  // namespace totp
