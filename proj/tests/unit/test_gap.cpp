#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/generators.hpp"
#include "totp/core.hpp"
#include "totp/errors.hpp"
#include "totp/gap.hpp"

using namespace totp;
using namespace totp::testing;

namespace {

Count value_of_form(const GapNormalForm& nf) { return count(*nf.problem) - pow2(nf.exponent); }

}  // namespace

TEST_CASE("checker_eval examples") {
    CHECK(checker_eval(constant_checker(4, false)) == 0);
    CHECK(checker_eval(constant_checker(4, true)) == 16);
    CHECK(checker_eval(parity_checker(3)) == 4);
    CHECK(checker_eval(never_checker()) == 0);
    CHECK_THROWS_AS(checker_eval(constant_checker(30, true)), ScaleError);
}

TEST_CASE("checker_const examples") {
    CHECK(checker_eval(checker_const(Count(5), 3)) == 5);
    CHECK(checker_eval(checker_const(Count(8), 3)) == 8);
    CHECK(checker_eval(checker_const(BoundedFP::of(0), 2)) == 0);
    CHECK_THROWS_AS(checker_const(Count(9), 3), UsageError);
}

TEST_CASE("widen keeps the count") {
    CHECK(checker_eval(widen(parity_checker(3), 6)) == 4);
    CHECK_THROWS_AS(widen(parity_checker(3), 2), UsageError);
}

TEST_CASE("union and concat add and multiply") {
    CHECK(checker_eval(checker_union(parity_checker(3), checker_const(Count(3), 2))) == 7);
    CHECK(checker_eval(checker_concat(parity_checker(3), checker_const(Count(3), 2))) == 12);
}

TEST_CASE("gap arithmetic examples") {
    const auto three = gap_from(checker_const(Count(3), 2));
    const auto five = gap_from(checker_const(Count(5), 3));
    CHECK(gap_eval(gap_sub(three, five)) == -2);
    CHECK(gap_eval(gap_neg(three)) == -3);
    CHECK(gap_eval(gap_mul(gap_sub(three, five), gap_neg(five))) == 10);
    CHECK(gap_eval(gap_square(gap_sub(three, five))) == 4);
}

TEST_CASE("acc_to_totp_plus and acc_to_totp_minus examples") {
    const auto false3 = constant_checker(3, false);
    const auto true3 = constant_checker(3, true);
    const auto four = checker_const(Count(4), 3);

    CHECK(count(*acc_to_totp_plus(false3).problem) == 8);
    CHECK(count(*acc_to_totp_plus(true3).problem) == 16);
    CHECK(count(*acc_to_totp_plus(four).problem) == 12);
    CHECK(acc_to_totp_plus(four).exponent == 3);

    CHECK(count(*acc_to_totp_minus(false3).problem) == 16);
    CHECK(count(*acc_to_totp_minus(true3).problem) == 8);
    CHECK(count(*acc_to_totp_minus(four).problem) == 12);
    CHECK(acc_to_totp_minus(four).exponent == 4);
}

TEST_CASE("gap_normalize examples") {
    const auto h = gap_sub(gap_from(checker_const(Count(3), 2)), gap_from(checker_const(Count(5), 3)));
    const auto nf = gap_normalize(h);
    CHECK(value_of_form(nf) == -2);
    CHECK(count(*nf.problem) <= pow2(nf.exponent + 1));
    CHECK(validate_oracle(*nf.problem).ok());
}

TEST_CASE("cp_embed examples") {
    const auto three = checker_const(Count(3), 3);
    const auto miss = cp_embed(three, BoundedFP::of(5));
    CHECK(count(*miss.problem) == pow2(miss.exponent) - 4);
    const auto hit = cp_embed(three, BoundedFP::of(3));
    CHECK(count(*hit.problem) == pow2(hit.exponent));
    CHECK_THROWS_AS(cp_embed(three, BoundedFP::of(9)), UsageError);
}

TEST_CASE("gap operations are homomorphisms") {
    Rng rng(55);
    for (int trial = 0; trial < 150; ++trial) {
        const auto wa = uniform(rng, 0, 5);
        const auto wb = uniform(rng, 0, 5);
        const auto a = gap_sub(gap_from(random_checker(rng, wa)), gap_from(random_checker(rng, wb)));
        const auto b = gap_sub(gap_from(random_checker(rng, wb)), gap_from(random_checker(rng, wa)));
        const auto va = gap_eval(a);
        const auto vb = gap_eval(b);
        CHECK(gap_eval(gap_add(a, b)) == va + vb);
        CHECK(gap_eval(gap_neg(a)) == -va);
        CHECK(gap_eval(gap_sub(a, b)) == va - vb);
        CHECK(gap_eval(gap_mul(a, b)) == va * vb);
        CHECK(gap_eval(gap_square(a)) == va * va);
    }
}

TEST_CASE("gap_normalize preserves the value on random gaps") {
    Rng rng(56);
    for (int trial = 0; trial < 120; ++trial) {
        const auto pos = random_checker(rng, uniform(rng, 0, 8), 0.1 + 0.8 * coin(rng));
        const auto neg = random_checker(rng, uniform(rng, 0, 8), 0.1 + 0.8 * coin(rng));
        const GapValue h{pos, neg};
        const auto nf = gap_normalize(h);
        CHECK(value_of_form(nf) == checker_eval(pos) - checker_eval(neg));
        CHECK(count(*nf.problem) <= pow2(nf.exponent + 1));
    }
}

TEST_CASE("cp_embed separates members from non-members") {
    Rng rng(57);
    for (int trial = 0; trial < 100; ++trial) {
        const auto width = uniform(rng, 0, 4);
        const auto f = random_checker(rng, width);
        const auto acc = checker_eval(f).get_ui();
        const std::uint64_t g = coin(rng) ? acc : uniform(rng, 0, std::size_t{1} << width);
        const auto nf = cp_embed(f, BoundedFP::of(g));
        const auto n = count(*nf.problem);
        const auto top = pow2(nf.exponent);
        const Count diff = Count(acc) - Count(g);
        CHECK(n == top - diff * diff);
        if (acc == g) {
            CHECK(n == top);
        } else {
            CHECK(n < top);
        }
    }
}
