#include "totp/problems.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <unordered_map>
#include <utility>

#include "totp/errors.hpp"

namespace totp {

namespace {

using StateSet = std::vector<std::uint8_t>;

bool intersects(const StateSet& a, const StateSet& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] && b[i]) return true;
    }
    return false;
}

void check_literal(int lit, std::size_t n, const char* what) {
    const auto v = static_cast<std::size_t>(lit < 0 ? -static_cast<long>(lit) : lit);
    if (lit == 0 || v > n) {
        throw UsageError(std::string(what) + ": literal " + std::to_string(lit) +
                         " outside variables 1.." + std::to_string(n));
    }
}

}  // namespace

void validate(const DnfFormula& f) {
    for (const auto& term : f.terms) {
        for (int lit : term) {
            check_literal(lit, f.num_vars, "dnf");
            if (std::find(term.begin(), term.end(), -lit) != term.end()) {
                throw UsageError("dnf: term contains variable " + std::to_string(std::abs(lit)) +
                                 " and its negation");
            }
        }
    }
}

void validate(const MonotoneCnf& f) {
    for (const auto& clause : f.clauses) {
        if (clause.empty()) throw UsageError("mcnf: empty clause");
        for (int lit : clause) {
            if (lit < 0) throw UsageError("mcnf: negative literal " + std::to_string(lit));
            check_literal(lit, f.num_vars, "mcnf");
        }
    }
}

void validate(const Nfa& a) {
    auto check_state = [&](std::size_t s) {
        if (s >= a.num_states) {
            throw UsageError("nfa: state " + std::to_string(s) + " outside 0.." +
                             std::to_string(a.num_states) + ")");
        }
    };
    for (auto s : a.initial) check_state(s);
    for (auto s : a.accepting) check_state(s);
    for (const auto& t : a.transitions) {
        check_state(t.from);
        check_state(t.to);
        if (t.symbol != 0 && t.symbol != 1) {
            throw UsageError("nfa: symbol " + std::to_string(t.symbol) + " not in {0,1}");
        }
    }
}

void validate(const BipartiteGraph& g) {
    if (g.adj.size() != g.size) throw UsageError("pm: expected " + std::to_string(g.size) + " rows");
    for (const auto& row : g.adj) {
        if (row.size() != g.size) {
            throw UsageError("pm: every row needs " + std::to_string(g.size) + " entries");
        }
        for (auto e : row) {
            if (e > 1) throw UsageError("pm: entries must be 0 or 1");
        }
    }
}

namespace {

class DnfProblem final : public CountingProblem {
public:
    explicit DnfProblem(const DnfFormula& f) : n_(f.num_vars) {
        for (const auto& term : f.terms) {
            std::vector<std::pair<std::size_t, char>> lits;
            for (int lit : term) {
                lits.emplace_back(static_cast<std::size_t>(std::abs(lit)) - 1, lit > 0 ? '1' : '0');
            }
            terms_.push_back(std::move(lits));
        }
    }

    std::size_t witness_length() const override { return n_; }
    std::string describe() const override {
        return "dnf(" + std::to_string(n_) + " vars, " + std::to_string(terms_.size()) + " terms)";
    }

protected:
    bool check_witness(BitsView y, OracleCalls& calls) const override { return check_extend(y, calls); }

    bool check_extend(BitsView c, OracleCalls&) const override {
        for (const auto& term : terms_) {
            const bool alive = std::all_of(term.begin(), term.end(), [&](const auto& lit) {
                return lit.first >= c.size() || c[lit.first] == lit.second;
            });
            if (alive) return true;
        }
        return false;
    }

private:
    std::size_t n_;
    std::vector<std::vector<std::pair<std::size_t, char>>> terms_;
};

class MonotoneCnfProblem final : public CountingProblem {
public:
    explicit MonotoneCnfProblem(const MonotoneCnf& f) : n_(f.num_vars) {
        for (const auto& clause : f.clauses) {
            std::vector<std::size_t> vars;
            for (int lit : clause) vars.push_back(static_cast<std::size_t>(lit) - 1);
            clauses_.push_back(std::move(vars));
        }
    }

    std::size_t witness_length() const override { return n_; }
    std::string describe() const override {
        return "mcnf(" + std::to_string(n_) + " vars, " + std::to_string(clauses_.size()) + " clauses)";
    }

protected:
    bool check_witness(BitsView y, OracleCalls& calls) const override { return check_extend(y, calls); }

    // Unassigned variables are taken true, the most satisfying completion.
    bool check_extend(BitsView c, OracleCalls&) const override {
        return std::all_of(clauses_.begin(), clauses_.end(), [&](const auto& clause) {
            return std::any_of(clause.begin(), clause.end(),
                               [&](std::size_t v) { return v >= c.size() || c[v] == '1'; });
        });
    }

private:
    std::size_t n_;
    std::vector<std::vector<std::size_t>> clauses_;
};

class NfaProblem final : public CountingProblem {
public:
    explicit NfaProblem(const Nfa& a) : states_(a.num_states), length_(a.length) {
        start_.assign(states_, 0);
        for (auto s : a.initial) start_[s] = 1;
        succ_[0].resize(states_);
        succ_[1].resize(states_);
        for (const auto& t : a.transitions) succ_[t.symbol][t.from].push_back(t.to);

        // live_[k]: states from which some accepting state is reachable in exactly k steps.
        live_.assign(length_ + 1, StateSet(states_, 0));
        for (auto s : a.accepting) live_[0][s] = 1;
        for (std::size_t k = 1; k <= length_; ++k) {
            for (std::size_t s = 0; s < states_; ++s) {
                for (int b = 0; b < 2 && !live_[k][s]; ++b) {
                    for (auto t : succ_[b][s]) {
                        if (live_[k - 1][t]) {
                            live_[k][s] = 1;
                            break;
                        }
                    }
                }
            }
        }
    }

    std::size_t witness_length() const override { return length_; }
    std::string describe() const override {
        return "nfa(" + std::to_string(states_) + " states, n=" + std::to_string(length_) + ")";
    }

protected:
    bool check_witness(BitsView y, OracleCalls& calls) const override { return check_extend(y, calls); }

    bool check_extend(BitsView c, OracleCalls&) const override {
        StateSet cur = start_;
        StateSet next(states_);
        for (char ch : c) {
            const int b = ch == '1';
            std::fill(next.begin(), next.end(), 0);
            bool any = false;
            for (std::size_t s = 0; s < states_; ++s) {
                if (!cur[s]) continue;
                for (auto t : succ_[b][s]) {
                    next[t] = 1;
                    any = true;
                }
            }
            if (!any) return false;
            cur.swap(next);
        }
        return intersects(cur, live_[length_ - c.size()]);
    }

private:
    std::size_t states_;
    std::size_t length_;
    StateSet start_;
    std::vector<std::vector<std::size_t>> succ_[2];
    std::vector<StateSet> live_;
};

class PerfectMatchingProblem final : public CountingProblem {
public:
    explicit PerfectMatchingProblem(const BipartiteGraph& g)
        : k_(g.size), field_(matching_field_width(g.size)), adj_(g.adj) {}

    std::size_t witness_length() const override { return k_ * field_; }
    std::string describe() const override { return "pm(k=" + std::to_string(k_) + ")"; }

protected:
    bool check_witness(BitsView y, OracleCalls& calls) const override {
        if (field_ == 0) return k_ == 0 || adj_[0][0];
        std::vector<std::uint8_t> used(k_, 0);
        return fixed_partners(y, k_, used, calls);
    }

    bool check_extend(BitsView c, OracleCalls& calls) const override {
        if (field_ == 0) return check_witness(c, calls);
        const std::size_t fixed = c.size() / field_;
        std::vector<std::uint8_t> used(k_, 0);
        if (!fixed_partners(c, fixed, used, calls)) return false;
        if (fixed == k_) return true;

        // Partners still admissible for the left vertex whose field is partial.
        const auto partial = c.substr(fixed * field_);
        const std::size_t rest = field_ - partial.size();
        const auto lo = small_value_of(Bits(partial) + zeros(rest));
        const auto hi = small_value_of(Bits(partial) + ones(rest));
        std::vector<std::uint8_t> allowed(k_, 0);
        for (auto j = lo; j <= hi && j < k_; ++j) allowed[j] = adj_[fixed][j] && !used[j];
        return residual_has_perfect_matching(fixed, allowed, used, calls);
    }

private:
    // Validates the first `count` partner fields as a partial matching.
    bool fixed_partners(BitsView s, std::size_t count, std::vector<std::uint8_t>& used,
                        OracleCalls&) const {
        for (std::size_t i = 0; i < count; ++i) {
            const auto j = small_value_of(s.substr(i * field_, field_));
            if (j >= k_ || !adj_[i][j] || used[j]) return false;
            used[j] = 1;
        }
        return true;
    }

    // Left vertices first..k-1 against unused right vertices, where left
    // `first` may only use `allowed`. One augmenting-path search per left vertex.
    bool residual_has_perfect_matching(std::size_t first, const std::vector<std::uint8_t>& allowed,
                                       const std::vector<std::uint8_t>& used,
                                       OracleCalls& calls) const {
        std::vector<std::ptrdiff_t> owner(k_, -1);
        std::vector<std::uint8_t> seen(k_);
        auto edge = [&](std::size_t i, std::size_t j) {
            if (used[j]) return false;
            return i == first ? allowed[j] != 0 : adj_[i][j] != 0;
        };
        std::function<bool(std::size_t)> augment = [&](std::size_t i) {
            for (std::size_t j = 0; j < k_; ++j) {
                if (!edge(i, j) || seen[j]) continue;
                seen[j] = 1;
                if (owner[j] < 0 || augment(static_cast<std::size_t>(owner[j]))) {
                    owner[j] = static_cast<std::ptrdiff_t>(i);
                    return true;
                }
            }
            return false;
        };
        for (std::size_t i = first; i < k_; ++i) {
            std::fill(seen.begin(), seen.end(), 0);
            ++calls.aux;
            if (!augment(i)) return false;
        }
        return true;
    }

    std::size_t k_;
    std::size_t field_;
    std::vector<std::vector<std::uint8_t>> adj_;
};

}  // namespace

std::size_t matching_field_width(std::size_t k) { return k <= 1 ? 0 : index_width(k - 1); }

Problem dnf_problem(const DnfFormula& f) {
    validate(f);
    return std::make_shared<DnfProblem>(f);
}

Problem monotone_cnf_problem(const MonotoneCnf& f) {
    validate(f);
    return std::make_shared<MonotoneCnfProblem>(f);
}

Problem nfa_problem(const Nfa& a) {
    validate(a);
    return std::make_shared<NfaProblem>(a);
}

Problem perfect_matching_problem(const BipartiteGraph& g) {
    validate(g);
    return std::make_shared<PerfectMatchingProblem>(g);
}

Count ryser_permanent(const BipartiteGraph& g, std::size_t max_k) {
    validate(g);
    const std::size_t k = g.size;
    if (k > max_k) {
        throw ScaleError("ryser_permanent: k = " + std::to_string(k) + " exceeds limit " +
                         std::to_string(max_k));
    }
    if (k == 0) return Count(1);

    // perm(A) = (-1)^k * sum over column sets S of (-1)^|S| * prod_i rowsum_S(i),
    // visiting S in Gray-code order so each step toggles one column.
    std::vector<long> rowsum(k, 0);
    Count total = 0;
    Count prod;
    std::size_t popcount = 0;
    const std::uint64_t subsets = std::uint64_t{1} << k;
    for (std::uint64_t step = 1; step < subsets; ++step) {
        const auto col = static_cast<std::size_t>(__builtin_ctzll(step));
        const std::uint64_t gray = step ^ (step >> 1);
        const bool added = (gray >> col) & 1U;
        const long delta = added ? 1 : -1;
        if (added) {
            ++popcount;
        } else {
            --popcount;
        }
        for (std::size_t i = 0; i < k; ++i) rowsum[i] += delta * g.adj[i][col];
        prod = 1;
        for (std::size_t i = 0; i < k && prod != 0; ++i) prod *= rowsum[i];
        if (popcount % 2 == 0) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    return k % 2 == 0 ? total : Count(-total);
}

Count nfa_det_count(const Nfa& a, std::size_t max_states) {
    validate(a);
    if (a.num_states > max_states || a.num_states > 63) {
        throw ScaleError("nfa_det_count: " + std::to_string(a.num_states) +
                         " states exceed subset-construction limit " + std::to_string(max_states));
    }
    using Mask = std::uint64_t;
    std::vector<Mask> step_mask[2];
    step_mask[0].assign(a.num_states, 0);
    step_mask[1].assign(a.num_states, 0);
    for (const auto& t : a.transitions) step_mask[t.symbol][t.from] |= Mask{1} << t.to;
    Mask start = 0;
    Mask accept = 0;
    for (auto s : a.initial) start |= Mask{1} << s;
    for (auto s : a.accepting) accept |= Mask{1} << s;

    // Determinized transitions, discovered lazily.
    std::unordered_map<Mask, std::pair<Mask, Mask>> dfa;
    auto move = [&](Mask from, int b) {
        auto it = dfa.find(from);
        if (it == dfa.end()) {
            Mask to[2] = {0, 0};
            for (std::size_t s = 0; s < a.num_states; ++s) {
                if ((from >> s) & 1U) {
                    to[0] |= step_mask[0][s];
                    to[1] |= step_mask[1][s];
                }
            }
            it = dfa.emplace(from, std::make_pair(to[0], to[1])).first;
        }
        return b == 0 ? it->second.first : it->second.second;
    };

    std::unordered_map<Mask, Count> ways{{start, Count(1)}};
    for (std::size_t len = 0; len < a.length; ++len) {
        std::unordered_map<Mask, Count> next;
        for (const auto& [subset, n] : ways) {
            for (int b = 0; b < 2; ++b) {
                const Mask to = move(subset, b);
                if (to != 0) next[to] += n;
            }
        }
        ways = std::move(next);
    }
    Count total = 0;
    for (const auto& [subset, n] : ways) {
        if (subset & accept) total += n;
    }
    return total;
}

}  // namespace totp
