#pragma once

// Command-line front end: the combinator expression language, evaluation of
// expressions into problems, and the subcommands behind the `totp` tool.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "totp/bits.hpp"
#include "totp/core.hpp"
#include "totp/problem.hpp"

namespace totp::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParse = 2,  // malformed expression or problem file, unreadable file
    kScale = 3,
    kVerification = 4,
};

struct Atom {
    enum class Scheme { dnf, mcnf, nfa, pm };
    Scheme scheme = Scheme::dnf;
    std::string path;
    std::optional<std::size_t> length;  // nfa target length; nullopt means "the index y"
};

/// atom | add(e,e) | mul(e,e) | dec(e) | sub(e,k) | pow(e,k) | binom(e,k)
///      | polysum(nfa:<path>:y, k) | polyprod(nfa:<path>:y, k)
///      | totp_plus(e) | totp_minus(e)
struct Expr {
    enum class Kind { atom, add, mul, dec, sub, pow, binom, polysum, polyprod, totp_plus, totp_minus };
    Kind kind = Kind::atom;
    Atom atom;               // atom, polysum, polyprod
    std::vector<Expr> args;  // operands of the other kinds
    std::uint64_t constant = 0;
    std::size_t position = 0;  // offset of the node in the source text
};

/// Throws ParseError("position N: ...") on unknown schemes, arity
/// mismatches, negative or malformed constants, and trailing input.
Expr parse_expr(std::string_view text);

std::string to_string(const Expr& e);

/// Builds the problem for an expression, reading problem files from disk.
/// File access and format errors surface as ParseError.
Problem build_problem(const Expr& e);

/// The count an expression must have, computed from exhaustive counts of its
/// atoms and plain integer arithmetic; never consults a prefix oracle.
Count expected_count(const Expr& e, std::size_t max_p = kDefaultMaxP);

struct Outcome {
    nlohmann::json report;
    int exit_code = kOk;
};

struct EnumerateOptions {
    std::optional<std::uint64_t> limit;
    bool measure_delay = false;
};

Outcome cmd_count(const std::string& expr);
Outcome cmd_enumerate(const std::string& expr, const EnumerateOptions& opts);
Outcome cmd_closest(const std::string& expr, const std::string& target);
Outcome cmd_interval(const std::string& expr, const std::string& lo, const std::string& hi,
                     bool open_interval);
Outcome cmd_verify(const std::string& expr, std::size_t max_p);
Outcome cmd_gap_normalize(const std::string& pos, const std::string& neg, std::size_t max_p);
Outcome cmd_cp_check(const std::string& checker, std::uint64_t g, std::size_t max_p);

/// Entry point of the `totp` tool. Writes the report to `out` and
/// diagnostics to `err`; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace totp::cli
