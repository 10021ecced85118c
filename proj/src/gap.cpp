#include "totp/gap.hpp"

#include <algorithm>
#include <utility>

#include "totp/errors.hpp"

namespace totp {

Checker::Checker(std::size_t width, Predicate accepts, std::string name)
    : width_(width), accepts_(std::move(accepts)), name_(std::move(name)) {
    if (!accepts_) throw UsageError("Checker: empty predicate");
}

Checker never_checker() {
    return Checker(0, [](BitsView) { return false; }, "never");
}

Checker checker_from_problem(Problem problem) {
    if (!problem) throw UsageError("checker_from_problem: null problem");
    const auto width = problem->witness_length();
    auto name = problem->describe();
    return Checker(width, [p = std::move(problem)](BitsView y) { return p->is_witness(y); },
                   std::move(name));
}

Checker checker_const(const Count& value, std::size_t width) {
    if (value < 0 || value > pow2(width)) {
        throw UsageError("checker_const: value " + to_decimal(value) + " does not fit in " +
                         std::to_string(width) + " bits");
    }
    auto name = "const(" + to_decimal(value) + ")";
    if (width < 64) {
        const std::uint64_t bound = value.get_ui();
        return Checker(width, [bound](BitsView y) { return small_value_of(y) < bound; },
                       std::move(name));
    }
    return Checker(width, [value](BitsView y) { return value_of(y) < value; }, std::move(name));
}

Checker checker_const(const BoundedFP& g, std::size_t width) {
    return checker_const(Count(static_cast<unsigned long>(g.value)), width);
}

Checker widen(const Checker& c, std::size_t width) {
    if (width < c.width()) throw UsageError("widen: cannot narrow a checker");
    if (width == c.width()) return c;
    const auto w = c.width();
    return Checker(width,
                   [c, w](BitsView y) { return all_zero(y.substr(w)) && c.accepts(y.substr(0, w)); },
                   c.name());
}

Checker checker_union(const Checker& a, const Checker& b) {
    const auto inner = std::max(a.width(), b.width());
    return Checker(inner + 1,
                   [a, b](BitsView y) {
                       const Checker& side = y[0] == '0' ? a : b;
                       const auto body = y.substr(1);
                       return all_zero(body.substr(side.width())) &&
                              side.accepts(body.substr(0, side.width()));
                   },
                   "(" + a.name() + " + " + b.name() + ")");
}

Checker checker_concat(const Checker& a, const Checker& b) {
    const auto split = a.width();
    return Checker(a.width() + b.width(),
                   [a, b, split](BitsView y) {
                       return a.accepts(y.substr(0, split)) && b.accepts(y.substr(split));
                   },
                   "(" + a.name() + " * " + b.name() + ")");
}

Count checker_eval(const Checker& c, std::size_t max_p) {
    const auto p = c.width();
    if (p > max_p) {
        throw ScaleError("checker_eval: width " + std::to_string(p) +
                         " exceeds oracle scale limit " + std::to_string(max_p));
    }
    std::uint64_t n = 0;
    Bits y = zeros(p);
    while (true) {
        n += c.accepts(y) ? 1 : 0;
        std::size_t i = p;
        while (i > 0 && y[i - 1] == '1') y[--i] = '0';
        if (i == 0) break;
        y[i - 1] = '1';
    }
    return Count(static_cast<unsigned long>(n));
}

GapValue gap_from(const Checker& c) { return GapValue{c, never_checker()}; }

GapValue gap_add(const GapValue& a, const GapValue& b) {
    return GapValue{checker_union(a.pos, b.pos), checker_union(a.neg, b.neg)};
}

GapValue gap_neg(const GapValue& a) { return GapValue{a.neg, a.pos}; }

GapValue gap_sub(const GapValue& a, const GapValue& b) { return gap_add(a, gap_neg(b)); }

GapValue gap_mul(const GapValue& a, const GapValue& b) {
    return GapValue{
        checker_union(checker_concat(a.pos, b.pos), checker_concat(a.neg, b.neg)),
        checker_union(checker_concat(a.pos, b.neg), checker_concat(a.neg, b.pos)),
    };
}

GapValue gap_square(const GapValue& a) { return gap_mul(a, a); }

Count gap_eval(const GapValue& h, std::size_t max_p) {
    return checker_eval(h.pos, max_p) - checker_eval(h.neg, max_p);
}

namespace {

// Witnesses (y,0) for every y plus (y,1) where the checker's verdict on y
// equals `doubled`. Every proper prefix extends through its all-zero tail.
class DoubledPathProblem final : public CountingProblem {
public:
    DoubledPathProblem(Checker c, bool doubled) : checker_(std::move(c)), doubled_(doubled) {}

    std::size_t witness_length() const override { return checker_.width() + 1; }
    std::string describe() const override {
        return std::string(doubled_ ? "totp_plus(" : "totp_minus(") + checker_.name() + ")";
    }

protected:
    bool check_witness(BitsView y, OracleCalls&) const override {
        const auto w = checker_.width();
        return y[w] == '0' || checker_.accepts(y.substr(0, w)) == doubled_;
    }

    bool check_extend(BitsView c, OracleCalls& calls) const override {
        if (c.size() <= checker_.width()) return true;
        return check_witness(c, calls);
    }

private:
    Checker checker_;
    bool doubled_;
};

}  // namespace

GapNormalForm acc_to_totp_plus(const Checker& c) {
    return GapNormalForm{std::make_shared<DoubledPathProblem>(c, true), c.width()};
}

GapNormalForm acc_to_totp_minus(const Checker& c) {
    return GapNormalForm{std::make_shared<DoubledPathProblem>(c, false), c.width() + 1};
}

GapNormalForm gap_normalize(const GapValue& h) {
    const auto w = std::max(h.pos.width(), h.neg.width());
    auto plus = acc_to_totp_plus(widen(h.pos, w + 1));   // 2^(w+1) + acc(pos)
    auto minus = acc_to_totp_minus(widen(h.neg, w));     // 2^(w+1) - acc(neg)
    return GapNormalForm{add(std::move(plus.problem), std::move(minus.problem)), w + 2};
}

GapNormalForm cp_embed(const Checker& f, const BoundedFP& g) {
    const auto target = checker_const(g, f.width());
    const auto diff = gap_sub(gap_from(f), gap_from(target));
    return gap_normalize(gap_neg(gap_square(diff)));
}

}  // namespace totp
