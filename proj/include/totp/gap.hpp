#pragma once

// #P checkers, GapP values as formal differences of checkers, and the
// normal form that writes a GapP value as a witness count minus 2^q.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "totp/bits.hpp"
#include "totp/combinators.hpp"
#include "totp/core.hpp"
#include "totp/problem.hpp"

namespace totp {

/// A witness predicate of fixed width, with no prefix oracle. Its count,
/// acc = |{y : V(y)}|, is a #P value in [0, 2^width].
class Checker {
public:
    using Predicate = std::function<bool(BitsView)>;

    Checker(std::size_t width, Predicate accepts, std::string name = "checker");

    std::size_t width() const { return width_; }
    /// Requires y.size() == width().
    bool accepts(BitsView y) const { return accepts_(y); }
    const std::string& name() const { return name_; }

private:
    std::size_t width_;
    Predicate accepts_;
    std::string name_;
};

/// Width-0 checker accepting nothing; acc = 0.
Checker never_checker();

/// Uses a problem's witness predicate, ignoring its prefix oracle.
Checker checker_from_problem(Problem problem);

/// acc = value, with V(y) = (binary value of y < value). Throws UsageError if value > 2^width.
Checker checker_const(const Count& value, std::size_t width);
Checker checker_const(const BoundedFP& g, std::size_t width);

/// Same acceptance count at a larger width: the extra suffix must be all zeros.
Checker widen(const Checker& c, std::size_t width);

/// acc = acc(a) + acc(b): a tag bit, then the chosen side's string padded with zeros.
Checker checker_union(const Checker& a, const Checker& b);

/// acc = acc(a) * acc(b): a's string followed by b's.
Checker checker_concat(const Checker& a, const Checker& b);

/// Exhaustive acceptance count. Throws ScaleError when width > max_p.
Count checker_eval(const Checker& c, std::size_t max_p = kDefaultMaxP);

/// value = acc(pos) - acc(neg).
struct GapValue {
    Checker pos;
    Checker neg;
};

GapValue gap_from(const Checker& c);
GapValue gap_add(const GapValue& a, const GapValue& b);
GapValue gap_neg(const GapValue& a);
GapValue gap_sub(const GapValue& a, const GapValue& b);
/// (p - n)(p' - n') = (pp' + nn') - (pn' + np').
GapValue gap_mul(const GapValue& a, const GapValue& b);
GapValue gap_square(const GapValue& a);

/// Exhaustive value of a gap. Throws ScaleError when either side is wider than max_p.
Count gap_eval(const GapValue& h, std::size_t max_p = kDefaultMaxP);

/// value = count(problem) - 2^exponent, with count(problem) <= 2^(exponent+1).
struct GapNormalForm {
    Problem problem;
    std::size_t exponent = 0;
};

/// Problem with count 2^w + acc(c), w = c.width(): witnesses (y,0) for every
/// y, and (y,1) whenever c accepts y. Returned exponent is w.
GapNormalForm acc_to_totp_plus(const Checker& c);

/// Problem with count 2^(w+1) - acc(c): witnesses (y,0) for every y, and
/// (y,1) whenever c rejects y. Returned exponent is w + 1.
GapNormalForm acc_to_totp_minus(const Checker& c);

/// Writes h as count - 2^q. With w the wider of the two sides, the positive
/// side is widened to w+1 and fed to acc_to_totp_plus, the negative side to
/// acc_to_totp_minus at width w; both counts then carry an offset of 2^(w+1)
/// and their sum is value(h) + 2^(w+2).
GapNormalForm gap_normalize(const GapValue& h);

/// Normal form for the language {x : acc(f) = g}: count = 2^q on members and
/// count < 2^q otherwise. Built as normalize(-(f - g)^2).
GapNormalForm cp_embed(const Checker& f, const BoundedFP& g);

}  // namespace totp
