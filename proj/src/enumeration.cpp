#include "totp/enumeration.hpp"

#include <utility>

#include "totp/errors.hpp"

namespace totp {

namespace {

void require_length(const CountingProblem& problem, BitsView c, const char* what) {
    if (c.size() != problem.witness_length() || !is_bitstring(c)) {
        throw UsageError(std::string(what) + ": expected a bit string of length " +
                         std::to_string(problem.witness_length()));
    }
}

// Searches for the nearest witness on one side of c. `toward` is the bit
// that moves away from c in the search direction ('1' for >=, '0' for <=).
//
// 1. Find the deepest prefix of c that still extends (at most p+1 calls).
// 2. Walking back up, flip the first position that holds the opposite of
//    `toward` and whose flipped prefix extends (at most p calls).
// 3. Descend from there greedily preferring the bit closest to c (at most p-1
//    calls), then confirm the leaf with is_witness.
std::optional<Bits> nearest_one_side(const CountingProblem& problem, BitsView c, char toward,
                                     OracleCalls& calls) {
    const std::size_t p = c.size();
    const char away = toward == '1' ? '0' : '1';

    std::size_t extendable = 0;  // number of extendable prefix lengths, lengths 0..extendable-1
    while (extendable <= p && problem.can_extend(c.substr(0, extendable), calls)) ++extendable;
    if (extendable == 0) return std::nullopt;
    if (extendable == p + 1) {
        if (!problem.is_witness(c, calls)) {
            throw IntegrityError("prefix oracle of " + problem.describe() +
                                 " accepts full-length non-witness " + std::string(c));
        }
        return Bits(c);
    }

    // c[0..extendable-1) extends; c[0..extendable) does not.
    for (std::size_t i = extendable; i-- > 0;) {
        if (c[i] != away) continue;
        Bits y(c.substr(0, i));
        y.push_back(toward);
        if (!problem.can_extend(y, calls)) continue;
        while (y.size() < p) {
            y.push_back(away);
            if (!problem.can_extend(y, calls)) y.back() = toward;
        }
        if (!problem.is_witness(y, calls)) {
            throw IntegrityError("prefix oracle of " + problem.describe() +
                                 " leads to full-length non-witness " + y);
        }
        return y;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Bits> next_witness_geq(const CountingProblem& problem, BitsView c, OracleCalls& calls) {
    require_length(problem, c, "next_witness_geq");
    return nearest_one_side(problem, c, '1', calls);
}

std::optional<Bits> prev_witness_leq(const CountingProblem& problem, BitsView c, OracleCalls& calls) {
    require_length(problem, c, "prev_witness_leq");
    return nearest_one_side(problem, c, '0', calls);
}

std::optional<Bits> closest_witness(const CountingProblem& problem, BitsView c, OracleCalls& calls) {
    require_length(problem, c, "closest_witness");
    auto below = prev_witness_leq(problem, c, calls);
    auto above = next_witness_geq(problem, c, calls);
    if (!below) return above;
    if (!above) return below;
    const Count target = value_of(c);
    const Count down = target - value_of(*below);
    const Count up = value_of(*above) - target;
    return up < down ? above : below;
}

bool exists_in_interval(const CountingProblem& problem, BitsView a, BitsView b, OracleCalls& calls,
                        Endpoints ends) {
    require_length(problem, a, "exists_in_interval");
    require_length(problem, b, "exists_in_interval");
    if (a > b) throw UsageError("exists_in_interval: lower end exceeds upper end");
    if (ends == Endpoints::closed) {
        const auto w = next_witness_geq(problem, a, calls);
        return w && BitsView(*w) <= b;
    }
    const auto start = successor(a);
    if (!start || BitsView(*start) >= b) return false;
    const auto w = next_witness_geq(problem, *start, calls);
    return w && BitsView(*w) < b;
}

WitnessStream::WitnessStream(Problem problem) : problem_(std::move(problem)) {
    if (!problem_) throw UsageError("WitnessStream: null problem");
}

std::optional<Bits> WitnessStream::next() {
    if (done_) return std::nullopt;
    const auto before = calls_.top_level();
    std::optional<Bits> w;
    if (!started_) {
        started_ = true;
        w = next_witness_geq(*problem_, zeros(problem_->witness_length()), calls_);
    } else if (auto s = successor(*cursor_)) {
        w = next_witness_geq(*problem_, *s, calls_);
    }
    last_gap_ = calls_.top_level() - before;
    max_gap_ = std::max(max_gap_, last_gap_);
    if (w) {
        cursor_ = w;
        ++emitted_;
    } else {
        done_ = true;
    }
    return w;
}

WitnessStream enumerate(Problem problem) { return WitnessStream(std::move(problem)); }

std::vector<Bits> first_witnesses(const CountingProblem& problem, std::uint64_t k, OracleCalls& calls) {
    std::vector<Bits> out;
    if (k == 0) return out;
    auto w = next_witness_geq(problem, zeros(problem.witness_length()), calls);
    while (w) {
        out.push_back(*w);
        if (out.size() == k) break;
        const auto s = successor(*w);
        if (!s) break;
        w = next_witness_geq(problem, *s, calls);
    }
    return out;
}

BoundedCount count_bounded(const CountingProblem& problem, std::uint64_t bound, OracleCalls& calls) {
    const auto seen = first_witnesses(problem, bound + 1, calls);
    if (seen.size() > bound) return BoundedCount{};
    return BoundedCount{seen.size()};
}

const char* to_string(Comparison c) {
    switch (c) {
        case Comparison::less: return "LT";
        case Comparison::equal: return "EQ";
        case Comparison::greater: return "GT";
    }
    return "?";
}

Comparison compare_with_fp(const CountingProblem& problem, std::uint64_t g, OracleCalls& calls) {
    const auto r = count_bounded(problem, g, calls);
    if (r.overflow()) return Comparison::greater;
    if (*r.value == g) return Comparison::equal;
    return *r.value < g ? Comparison::less : Comparison::greater;
}

}  // namespace totp
