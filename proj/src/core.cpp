#include "totp/core.hpp"

#include <algorithm>
#include <utility>

#include "totp/errors.hpp"

namespace totp {

namespace {

void check_scale(std::size_t p, std::size_t max_p, const char* what) {
    if (p > max_p) {
        throw ScaleError(std::string(what) + ": witness length " + std::to_string(p) +
                         " exceeds oracle scale limit " + std::to_string(max_p));
    }
}

// Visits every string of length p in lexicographic order.
template <typename Fn>
void for_each_string(std::size_t p, Fn&& fn) {
    Bits y = zeros(p);
    while (true) {
        fn(BitsView(y));
        std::size_t i = p;
        while (i > 0 && y[i - 1] == '1') y[--i] = '0';
        if (i == 0) return;
        y[i - 1] = '1';
    }
}

void integrity_failure(const CountingProblem& problem, BitsView y) {
    throw IntegrityError("prefix oracle of " + problem.describe() +
                         " accepts full-length non-witness " + std::string(y));
}

class DfsCounter {
public:
    DfsCounter(const CountingProblem& problem, OracleCalls& calls)
        : problem_(problem), calls_(calls), p_(problem.witness_length()) {
        buf_.reserve(p_);
    }

    std::uint64_t run() {
        if (!problem_.can_extend(buf_, calls_)) return 0;
        visit();
        return found_;
    }

private:
    void visit() {
        if (buf_.size() == p_) {
            if (!problem_.is_witness(buf_, calls_)) integrity_failure(problem_, buf_);
            ++found_;
            return;
        }
        for (char b : {'0', '1'}) {
            buf_.push_back(b);
            if (problem_.can_extend(buf_, calls_)) visit();
            buf_.pop_back();
        }
    }

    const CountingProblem& problem_;
    OracleCalls& calls_;
    std::size_t p_;
    Bits buf_;
    std::uint64_t found_ = 0;
};

class TreeBuilder {
public:
    TreeBuilder(const CountingProblem& problem, OracleCalls& calls)
        : problem_(problem), calls_(calls), p_(problem.witness_length()) {}

    Tree run() {
        using Node = Tree::Node;
        if (!problem_.can_extend(buf_, calls_)) {
            nodes_.push_back(Node{});
            return Tree::from_nodes(std::move(nodes_));
        }
        nodes_.push_back(Node{});  // the path that halts right after the first step
        const auto halted = static_cast<std::uint32_t>(nodes_.size() - 1);
        const auto guessed = guess();
        nodes_.push_back(Node{Tree::Kind::branch, halted, guessed});
        return Tree::from_nodes(std::move(nodes_));
    }

private:
    // buf_ is extendable on entry; returns the index of the subtree for it.
    std::uint32_t guess() {
        using Node = Tree::Node;
        if (buf_.size() == p_) {
            if (!problem_.is_witness(buf_, calls_)) integrity_failure(problem_, buf_);
            nodes_.push_back(Node{});
            return last();
        }
        buf_.push_back('0');
        const bool zero = problem_.can_extend(buf_, calls_);
        buf_.back() = '1';
        const bool one = problem_.can_extend(buf_, calls_);
        buf_.pop_back();
        if (!zero && !one) {
            throw IntegrityError("prefix oracle of " + problem_.describe() +
                                 " accepts prefix " + buf_ + " but neither one-bit extension");
        }
        std::uint32_t left = 0;
        std::uint32_t right = 0;
        if (zero) left = descend('0');
        if (one) right = descend('1');
        if (zero && one) {
            nodes_.push_back(Node{Tree::Kind::branch, left, right});
        } else {
            nodes_.push_back(Node{Tree::Kind::step, zero ? left : right, 0});
        }
        return last();
    }

    std::uint32_t descend(char b) {
        buf_.push_back(b);
        const auto idx = guess();
        buf_.pop_back();
        return idx;
    }

    std::uint32_t last() const { return static_cast<std::uint32_t>(nodes_.size() - 1); }

    const CountingProblem& problem_;
    OracleCalls& calls_;
    std::size_t p_;
    Bits buf_;
    std::vector<Tree::Node> nodes_;
};

}  // namespace

Count brute_force_count(const CountingProblem& problem, OracleCalls& calls, std::size_t max_p) {
    const std::size_t p = problem.witness_length();
    check_scale(p, max_p, "brute_force_count");
    std::uint64_t n = 0;
    for_each_string(p, [&](BitsView y) { n += problem.is_witness(y, calls) ? 1 : 0; });
    return Count(static_cast<unsigned long>(n));
}

Count brute_force_count(const CountingProblem& problem, std::size_t max_p) {
    OracleCalls calls;
    return brute_force_count(problem, calls, max_p);
}

std::vector<Bits> brute_force_witnesses(const CountingProblem& problem, std::size_t max_p) {
    const std::size_t p = problem.witness_length();
    check_scale(p, max_p, "brute_force_witnesses");
    std::vector<Bits> out;
    OracleCalls calls;
    for_each_string(p, [&](BitsView y) {
        if (problem.is_witness(y, calls)) out.emplace_back(y);
    });
    return out;
}

Count count(const CountingProblem& problem, OracleCalls& calls) {
    DfsCounter dfs(problem, calls);
    return Count(static_cast<unsigned long>(dfs.run()));
}

Count count(const CountingProblem& problem) {
    OracleCalls calls;
    return count(problem, calls);
}

Tree canonical_tree(const CountingProblem& problem, OracleCalls& calls) {
    TreeBuilder builder(problem, calls);
    return builder.run();
}

Tree canonical_tree(const CountingProblem& problem) {
    OracleCalls calls;
    return canonical_tree(problem, calls);
}

std::string to_string(OracleViolation::Kind kind) {
    switch (kind) {
        case OracleViolation::Kind::unsound_extend: return "unsound_extend";
        case OracleViolation::Kind::missed_extension: return "missed_extension";
        case OracleViolation::Kind::not_monotone: return "not_monotone";
        case OracleViolation::Kind::leaf_mismatch: return "leaf_mismatch";
        case OracleViolation::Kind::nondeterministic: return "nondeterministic";
        case OracleViolation::Kind::over_budget: return "over_budget";
    }
    return "unknown";
}

OracleReport validate_oracle(const CountingProblem& problem, std::size_t max_p) {
    const std::size_t p = problem.witness_length();
    check_scale(p, max_p, "validate_oracle");

    OracleReport report;
    report.call_budget = problem.call_budget();
    using Kind = OracleViolation::Kind;
    auto flag = [&](Kind kind, BitsView prefix) {
        ++report.violation_count;
        if (report.violations.size() < OracleReport::kMaxRecorded) {
            report.violations.push_back(OracleViolation{kind, Bits(prefix)});
        }
    };

    // Each call is made twice; the second must agree, and each must stay
    // within the problem's declared nested-call budget.
    OracleCalls calls;
    auto measured = [&](BitsView s, bool full) {
        bool answers[2];
        for (bool& a : answers) {
            const auto before = calls.nested;
            a = full ? problem.is_witness(s, calls) : problem.can_extend(s, calls);
            const auto spent = calls.nested - before;
            report.max_nested_per_call = std::max(report.max_nested_per_call, spent);
            if (spent > report.call_budget) flag(Kind::over_budget, s);
        }
        if (answers[0] != answers[1]) flag(Kind::nondeterministic, s);
        return answers[0];
    };

    // Level-by-level tables indexed by the prefix's binary value: `reach`
    // is the ground truth (some witness below), `ext` the oracle's answer.
    std::vector<std::uint8_t> reach(std::size_t{1} << p);
    std::vector<std::uint8_t> ext_below(reach.size());
    {
        std::size_t i = 0;
        for_each_string(p, [&](BitsView y) {
            const bool w = measured(y, true);
            const bool e = measured(y, false);
            reach[i] = w;
            ext_below[i] = e;
            ++i;
            if (w != e) flag(Kind::leaf_mismatch, y);
            ++report.prefixes_checked;
        });
    }

    for (std::size_t len = p; len-- > 0;) {
        std::vector<std::uint8_t> reach_here(std::size_t{1} << len);
        std::vector<std::uint8_t> ext_here(reach_here.size());
        std::size_t i = 0;
        for_each_string(len, [&](BitsView c) {
            const bool truth = reach[2 * i] || reach[2 * i + 1];
            const bool e = measured(c, false);
            reach_here[i] = truth;
            ext_here[i] = e;
            if (e && !truth) flag(Kind::unsound_extend, c);
            if (!e && truth) flag(Kind::missed_extension, c);
            if (!e && (ext_below[2 * i] || ext_below[2 * i + 1])) {
                Bits child(c);
                child.push_back(ext_below[2 * i] ? '0' : '1');
                flag(Kind::not_monotone, child);
            }
            ++report.prefixes_checked;
            ++i;
        });
        reach = std::move(reach_here);
        ext_below = std::move(ext_here);
    }
    return report;
}

}  // namespace totp
