#pragma once

// Order queries over the witness set and polynomial-delay enumeration.
//
// Every query here issues at most 4(p+1) top-level oracle calls, where p is
// the witness length; enumeration therefore has that delay between outputs.

#include <cstdint>
#include <optional>
#include <vector>

#include "totp/bits.hpp"
#include "totp/problem.hpp"

namespace totp {

/// Oracle-call bound for one order query, and for one enumeration gap.
inline std::uint64_t delay_budget(std::size_t p) { return 4 * (static_cast<std::uint64_t>(p) + 1); }

/// Lexicographically smallest witness >= c. Throws UsageError unless |c| = p.
std::optional<Bits> next_witness_geq(const CountingProblem& problem, BitsView c, OracleCalls& calls);
/// Lexicographically largest witness <= c. Throws UsageError unless |c| = p.
std::optional<Bits> prev_witness_leq(const CountingProblem& problem, BitsView c, OracleCalls& calls);

/// Witness nearest to c when length-p strings are read as binary integers.
/// Ties go to the smaller witness; nullopt iff there are no witnesses.
std::optional<Bits> closest_witness(const CountingProblem& problem, BitsView c, OracleCalls& calls);

enum class Endpoints { closed, open };

/// Whether a witness lies between a and b. Throws UsageError if a > b or lengths differ.
bool exists_in_interval(const CountingProblem& problem, BitsView a, BitsView b, OracleCalls& calls,
                        Endpoints ends = Endpoints::closed);

/// Lazily yields the witnesses in increasing lexicographic order.
///
/// Single consumer. Keeps its own call accounting so the delay of every gap
/// (before the first output, between outputs, and after the last) can be read back.
class WitnessStream {
public:
    explicit WitnessStream(Problem problem);

    /// Next witness, or nullopt once exhausted.
    std::optional<Bits> next();

    bool done() const { return done_; }
    std::uint64_t emitted() const { return emitted_; }
    std::uint64_t last_gap_calls() const { return last_gap_; }
    std::uint64_t max_gap_calls() const { return max_gap_; }
    const OracleCalls& calls() const { return calls_; }
    const CountingProblem& problem() const { return *problem_; }

private:
    Problem problem_;
    OracleCalls calls_;
    std::optional<Bits> cursor_;
    bool started_ = false;
    bool done_ = false;
    std::uint64_t emitted_ = 0;
    std::uint64_t last_gap_ = 0;
    std::uint64_t max_gap_ = 0;
};

WitnessStream enumerate(Problem problem);

/// Exact count when it does not exceed the bound, otherwise an overflow marker.
struct BoundedCount {
    std::optional<std::uint64_t> value;  // nullopt: count > bound
    bool overflow() const { return !value.has_value(); }
};

/// Budget: at most 4(p+1)(bound+2) top-level oracle calls.
BoundedCount count_bounded(const CountingProblem& problem, std::uint64_t bound, OracleCalls& calls);

inline std::uint64_t count_bounded_budget(std::size_t p, std::uint64_t bound) {
    return delay_budget(p) * (bound + 2);
}

enum class Comparison { less, equal, greater };

const char* to_string(Comparison c);

/// Compares the witness count with g using count_bounded(problem, g); never
/// looks at more than g+1 witnesses.
Comparison compare_with_fp(const CountingProblem& problem, std::uint64_t g, OracleCalls& calls);

/// The first `k` witnesses in order (fewer if the problem has fewer).
std::vector<Bits> first_witnesses(const CountingProblem& problem, std::uint64_t k, OracleCalls& calls);

}  // namespace totp
