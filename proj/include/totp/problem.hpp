#pragma once

// The counting-problem abstraction: a witness predicate over binary strings
// of one fixed length, paired with a prefix-extension oracle that decides
// whether some witness starts with a given prefix.
//
// A CountingProblem is always bound to one instance. Problems parsed from
// files carry their instance; combinators close over the component problems
// they were built from.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "totp/bits.hpp"

namespace totp {

/// Per-run oracle accounting, owned by the caller.
///
/// Calls made directly by the caller are tallied in `extend` and `witness`.
/// Calls a composed problem issues into its components while answering one
/// of those are tallied in `nested`, so delay bounds can be stated on the
/// top-level counts while combinator cost stays observable.
struct OracleCalls {
    std::uint64_t extend = 0;
    std::uint64_t witness = 0;
    std::uint64_t nested = 0;
    /// Auxiliary work inside atomic oracles, e.g. augmenting-path searches.
    std::uint64_t aux = 0;
    std::uint32_t depth = 0;

    std::uint64_t top_level() const { return extend + witness; }
    std::uint64_t all() const { return extend + witness + nested; }
};

class CountingProblem {
public:
    virtual ~CountingProblem() = default;

    /// Length every witness has.
    virtual std::size_t witness_length() const = 0;

    /// Witness predicate. Requires y.size() == witness_length().
    bool is_witness(BitsView y, OracleCalls& calls) const;

    /// True iff some witness has c as a prefix. Requires c.size() <= witness_length().
    bool can_extend(BitsView c, OracleCalls& calls) const;

    bool is_witness(BitsView y) const;
    bool can_extend(BitsView c) const;

    /// Upper bound on the calls this problem issues into its components while
    /// answering a single is_witness or can_extend. Zero for atomic problems.
    virtual std::uint64_t call_budget() const { return 0; }

    virtual std::string describe() const = 0;

protected:
    virtual bool check_witness(BitsView y, OracleCalls& calls) const = 0;
    virtual bool check_extend(BitsView c, OracleCalls& calls) const = 0;
};

using Problem = std::shared_ptr<const CountingProblem>;

/// Problem assembled from two callables; used for ad-hoc and test problems.
class FunctionProblem final : public CountingProblem {
public:
    using Predicate = std::function<bool(BitsView)>;

    FunctionProblem(std::size_t length, Predicate witness, Predicate extend, std::string name);

    std::size_t witness_length() const override { return length_; }
    std::string describe() const override { return name_; }

protected:
    bool check_witness(BitsView y, OracleCalls&) const override { return witness_(y); }
    bool check_extend(BitsView c, OracleCalls&) const override { return extend_(c); }

private:
    std::size_t length_;
    Predicate witness_;
    Predicate extend_;
    std::string name_;
};

Problem make_problem(std::size_t length, FunctionProblem::Predicate witness,
                     FunctionProblem::Predicate extend, std::string name = "function");

/// Problem with no witnesses at the given length.
Problem empty_problem(std::size_t length = 0);
/// Problem of length 0 whose only candidate, the empty string, is a witness.
Problem unit_problem();
/// Every string of the given length is a witness.
Problem full_cube(std::size_t length);

}  // namespace totp
