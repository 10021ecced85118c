#include "totp/problem.hpp"

#include <utility>

#include "totp/errors.hpp"

namespace totp {

namespace {

// Tallies one call at the caller's depth and marks everything issued while
// answering it as nested.
class CallScope {
public:
    CallScope(OracleCalls& calls, std::uint64_t OracleCalls::*top) : calls_(calls) {
        if (calls_.depth == 0) {
            ++(calls_.*top);
        } else {
            ++calls_.nested;
        }
        ++calls_.depth;
    }
    ~CallScope() { --calls_.depth; }
    CallScope(const CallScope&) = delete;
    CallScope& operator=(const CallScope&) = delete;

private:
    OracleCalls& calls_;
};

}  // namespace

bool CountingProblem::is_witness(BitsView y, OracleCalls& calls) const {
    if (y.size() != witness_length()) {
        throw UsageError("is_witness: expected " + std::to_string(witness_length()) +
                         " bits, got " + std::to_string(y.size()));
    }
    CallScope scope(calls, &OracleCalls::witness);
    return check_witness(y, calls);
}

bool CountingProblem::can_extend(BitsView c, OracleCalls& calls) const {
    if (c.size() > witness_length()) {
        throw UsageError("can_extend: prefix longer than witness length " +
                         std::to_string(witness_length()));
    }
    CallScope scope(calls, &OracleCalls::extend);
    return check_extend(c, calls);
}

bool CountingProblem::is_witness(BitsView y) const {
    OracleCalls calls;
    return is_witness(y, calls);
}

bool CountingProblem::can_extend(BitsView c) const {
    OracleCalls calls;
    return can_extend(c, calls);
}

FunctionProblem::FunctionProblem(std::size_t length, Predicate witness, Predicate extend,
                                 std::string name)
    : length_(length), witness_(std::move(witness)), extend_(std::move(extend)),
      name_(std::move(name)) {}

Problem make_problem(std::size_t length, FunctionProblem::Predicate witness,
                     FunctionProblem::Predicate extend, std::string name) {
    return std::make_shared<FunctionProblem>(length, std::move(witness), std::move(extend),
                                             std::move(name));
}

Problem empty_problem(std::size_t length) {
    auto no = [](BitsView) { return false; };
    return make_problem(length, no, no, "empty");
}

Problem unit_problem() {
    auto yes = [](BitsView) { return true; };
    return make_problem(0, yes, yes, "unit");
}

Problem full_cube(std::size_t length) {
    auto yes = [](BitsView) { return true; };
    return make_problem(length, yes, yes, "cube(" + std::to_string(length) + ")");
}

}  // namespace totp
