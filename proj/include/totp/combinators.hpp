#pragma once

// Closure operations on counting problems.
//
// Each combinator returns a new problem whose witness count is the stated
// function of its components' counts and whose prefix oracle is assembled
// from the components' oracles, so the result is again a problem with a
// polynomial-time prefix oracle. Problems built here report their
// per-call cost through CountingProblem::call_budget().

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "totp/bits.hpp"
#include "totp/problem.hpp"

namespace totp {

/// A nonnegative, efficiently computable function evaluated at the bound
/// instance. `poly_bounded` is the caller's promise that the value is
/// polynomially small, which licenses enumerating value+1 witnesses.
struct BoundedFP {
    std::uint64_t value = 0;
    bool poly_bounded = true;

    static BoundedFP of(std::uint64_t v) { return BoundedFP{v, true}; }
};

/// f(x, y) for the bound x, as a function of the index y.
using IndexedFamily = std::function<Problem(std::uint64_t index)>;

/// count = count(f) + count(g). Witness: a tag bit selecting the side, then
/// that side's witness padded with zeros to the longer length.
Problem add(Problem f, Problem g);

/// count = count(f) * count(g). Witness: a witness of f followed by one of g.
Problem mul(Problem f, Problem g);

/// count = count(f) - 1, floored at 0: every witness of f except the smallest.
Problem dec1(Problem f);

/// count = count(f) - g, floored at 0: every witness of f except the g smallest.
Problem sub_fp(Problem f, BoundedFP g);

/// count = count(f)^g, except that count(f) = 0 gives 0 even when g = 0.
/// Witness: g witnesses of f concatenated, repeats allowed.
Problem pow(Problem f, BoundedFP g);

/// count = C(count(f), g), except that count(f) = 0 gives 0 even when g = 0.
/// Witness: g witnesses of f in strictly increasing order, concatenated.
Problem binom(Problem f, BoundedFP g);

/// count = sum over 0 <= y <= g of count(f(x, y)). Witness: y in
/// index_width(g) bits, then a witness of f(x, y) padded with zeros.
Problem poly_sum(const IndexedFamily& family, BoundedFP g);

/// count = product over 0 <= y <= g of count(f(x, y)); 0 if any factor is 0.
/// Witness: one witness per index, concatenated in index order.
Problem poly_prod(const IndexedFamily& family, BoundedFP g);

/// Number of distinct values. Throws UsageError on an empty list.
Count span_value(const std::vector<Count>& values);

/// The most frequent values. Throws UsageError on an empty list.
std::set<Count> plu_value(const std::vector<Count>& values);

}  // namespace totp
