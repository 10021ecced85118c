#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/generators.hpp"
#include "totp/core.hpp"
#include "totp/errors.hpp"
#include "totp/problems.hpp"

using namespace totp;
using namespace totp::testing;

namespace {

Problem single_term_x1() { return dnf_problem(DnfFormula{2, {{1}}}); }

Tree full_tree(std::size_t depth) {
    if (depth == 0) return Tree::leaf();
    const auto sub = full_tree(depth - 1);
    return Tree::branch(sub, sub);
}

std::uint64_t dfs_budget(std::size_t p, const Count& n) {
    return 2 * (p + 1) * (n.get_ui() + 1);
}

}  // namespace

TEST_CASE("bit string helpers") {
    CHECK(successor("011") == Bits("100"));
    CHECK_FALSE(successor("11").has_value());
    CHECK(predecessor("100") == Bits("011"));
    CHECK_FALSE(predecessor("000").has_value());
    CHECK(value_of("1101") == 13);
    CHECK(value_of("") == 0);
    CHECK(encode(5, 4) == "0101");
    CHECK_THROWS_AS(encode(8, 3), UsageError);
    CHECK(index_width(0) == 0);
    CHECK(index_width(1) == 1);
    CHECK(index_width(4) == 3);
    CHECK(pow2(70) == Count("1180591620717411303424"));
}

TEST_CASE("brute_force_count examples") {
    CHECK(brute_force_count(*dnf_problem(DnfFormula{3, {}})) == 0);
    CHECK(brute_force_count(*single_term_x1()) == 2);
    Nfa all{1, {0}, {0}, {{0, 0, 0}, {0, 1, 0}}, 3};
    CHECK(brute_force_count(*nfa_problem(all)) == 8);
}

TEST_CASE("brute_force_count never consults can_extend") {
    auto p = make_problem(
        3, [](BitsView y) { return y[0] == '1'; },
        [](BitsView) -> bool { throw std::logic_error("prefix oracle consulted"); });
    CHECK(brute_force_count(*p) == 4);
}

TEST_CASE("brute_force_count enforces its scale guard") {
    CHECK_THROWS_AS(brute_force_count(*full_cube(25)), ScaleError);
    CHECK_THROWS_AS(brute_force_count(*full_cube(9), 8), ScaleError);
    CHECK(brute_force_count(*full_cube(9), 9) == 512);
}

TEST_CASE("count examples") {
    CHECK(count(*single_term_x1()) == 2);
    CHECK(count(*empty_problem(7)) == 0);
    BipartiteGraph ones3{3, {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}};
    CHECK(count(*perfect_matching_problem(ones3)) == 6);
}

TEST_CASE("count stops after one call when the empty prefix does not extend") {
    OracleCalls calls;
    CHECK(count(*empty_problem(10), calls) == 0);
    CHECK(calls.top_level() == 1);
}

TEST_CASE("count agrees with brute force within the DFS call budget") {
    Rng rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const auto p = dnf_problem(random_dnf(rng, 10, 5));
        OracleCalls calls;
        const auto n = count(*p, calls);
        REQUIRE(n == brute_force_count(*p));
        CHECK(calls.top_level() <= dfs_budget(p->witness_length(), n));
    }
}

TEST_CASE("count reports an oracle that accepts a full-length non-witness") {
    auto liar = make_problem(2, [](BitsView y) { return y == "11"; }, [](BitsView) { return true; });
    CHECK_THROWS_AS(count(*liar), IntegrityError);
}

TEST_CASE("p = 0 problems have count 0 or 1") {
    CHECK(count(*unit_problem()) == 1);
    CHECK(count(*empty_problem(0)) == 0);
    CHECK(tree_total(canonical_tree(*unit_problem())) == 2);
}

TEST_CASE("canonical_tree examples") {
    const auto none = canonical_tree(*empty_problem(4));
    CHECK(none.size() == 1);
    CHECK(tree_total(none) == 1);

    const auto one = canonical_tree(*set_problem(3, {"101"}));
    CHECK(tree_total(one) == 2);

    const auto x1 = canonical_tree(*single_term_x1());
    CHECK(tree_total(x1) == 3);
    CHECK(tree_tot(x1) == 2);
}

TEST_CASE("canonical_tree takes deterministic steps where only one side extends") {
    // Witnesses 10 and 11: the first bit is forced, the second branches.
    const auto t = canonical_tree(*single_term_x1());
    const auto& root = t.node(t.root());
    REQUIRE(root.kind == Tree::Kind::branch);
    CHECK(t.node(root.first).kind == Tree::Kind::leaf);
    const auto& guess = t.node(root.second);
    CHECK(guess.kind == Tree::Kind::step);
    CHECK(t.node(guess.first).kind == Tree::Kind::branch);
}

TEST_CASE("tree_total and tree_tot") {
    CHECK(tree_total(Tree::leaf()) == 1);
    CHECK(tree_tot(Tree::leaf()) == 0);
    CHECK(tree_total(full_tree(3)) == 8);
    CHECK(tree_tot(full_tree(3)) == 7);
    CHECK(tree_total(Tree::step(Tree::step(Tree::leaf()))) == 1);
}

TEST_CASE("Tree::from_nodes rejects malformed arenas") {
    using N = Tree::Node;
    CHECK_THROWS_AS(Tree::from_nodes({}), UsageError);
    CHECK_THROWS_AS(Tree::from_nodes({N{Tree::Kind::step, 0, 0}}), UsageError);
    CHECK_THROWS_AS(Tree::from_nodes({N{}, N{Tree::Kind::branch, 0, 0}}), UsageError);
    CHECK_THROWS_AS(Tree::from_nodes({N{}, N{}, N{Tree::Kind::step, 1, 0}}), UsageError);
    CHECK(Tree::from_nodes({N{}, N{}, N{Tree::Kind::branch, 0, 1}}) == Tree::branch(Tree::leaf(), Tree::leaf()));
}

TEST_CASE("tree_to_problem examples") {
    CHECK(count(*tree_to_problem(Tree::leaf())) == 0);
    CHECK(count(*tree_to_problem(full_tree(2))) == 3);

    // Paths {00, 01, 1}: the lone right leaf is padded to 10 and is the largest.
    const auto t = Tree::branch(full_tree(1), Tree::leaf());
    const auto p = tree_to_problem(t);
    CHECK(p->witness_length() == 2);
    CHECK(brute_force_witnesses(*p) == std::vector<Bits>{"00", "01"});
    CHECK(count(*p) == 2);
}

TEST_CASE("tree_to_problem pads deterministic steps with 0") {
    const auto t = Tree::branch(Tree::step(Tree::leaf()), Tree::leaf());
    const auto p = tree_to_problem(t);
    CHECK(brute_force_witnesses(*p) == std::vector<Bits>{"00"});
    CHECK_FALSE(p->can_extend("01"));
}

TEST_CASE("tree round trips") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto t = random_tree(rng, 8);
        const auto p = tree_to_problem(t);
        REQUIRE(count(*p) == tree_tot(t));
        CHECK(validate_oracle(*p).ok());
        // Back through the canonical machine: same number of paths.
        CHECK(tree_total(canonical_tree(*p)) == tree_total(t));
    }
}

TEST_CASE("validate_oracle accepts a well-formed problem") {
    const auto report = validate_oracle(*dnf_problem(DnfFormula{4, {{1, -2}, {3}}}));
    CHECK(report.ok());
    CHECK(report.prefixes_checked == 31);
}

TEST_CASE("validate_oracle flags a constant-true oracle on an empty problem") {
    auto broken = make_problem(3, [](BitsView) { return false; }, [](BitsView) { return true; });
    const auto report = validate_oracle(*broken);
    CHECK_FALSE(report.ok());
    int leaves = 0;
    for (const auto& v : report.violations) {
        if (v.kind == OracleViolation::Kind::leaf_mismatch) {
            CHECK(v.prefix.size() == 3);
            ++leaves;
        }
    }
    CHECK(leaves == 8);
}

TEST_CASE("validate_oracle flags non-monotone and nondeterministic oracles") {
    auto hole = make_problem(
        2, [](BitsView y) { return y == "11"; },
        [](BitsView c) { return c != "1"; });  // parent of 11 claims no extension
    bool not_monotone = false;
    for (const auto& v : validate_oracle(*hole).violations) {
        not_monotone = not_monotone || (v.kind == OracleViolation::Kind::not_monotone && v.prefix[0] == '1');
    }
    CHECK(not_monotone);

    auto flips = std::make_shared<int>(0);
    auto flaky = make_problem(1, [](BitsView) { return true; }, [flips](BitsView) { return (++*flips) % 2 == 0; });
    bool nondeterministic = false;
    for (const auto& v : validate_oracle(*flaky).violations) {
        nondeterministic = nondeterministic || v.kind == OracleViolation::Kind::nondeterministic;
    }
    CHECK(nondeterministic);
}

TEST_CASE("validate_oracle finds no violations on randomized problems") {
    Rng rng(2024);
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        Problem p;
        switch (trial % 4) {
            case 0: p = dnf_problem(random_dnf(rng, 8, 4)); break;
            case 1: p = monotone_cnf_problem(random_mcnf(rng, 8, 5)); break;
            case 2: p = nfa_problem(random_nfa(rng, 4, 8)); break;
            default: p = perfect_matching_problem(random_bipartite(rng, 4)); break;
        }
        violations += static_cast<int>(validate_oracle(*p).violation_count);
    }
    CHECK(violations == 0);
}
