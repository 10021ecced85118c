#include "totp/cli.hpp"

#include <cctype>
#include <charconv>
#include <chrono>
#include <fstream>
#include <ostream>
#include <utility>

#include <CLI11.hpp>

#include "totp/combinators.hpp"
#include "totp/enumeration.hpp"
#include "totp/errors.hpp"
#include "totp/gap.hpp"
#include "totp/problems.hpp"

namespace totp::cli {

namespace {

using nlohmann::json;

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    Expr parse() {
        Expr e = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg, std::optional<std::size_t> at = {}) const {
        throw ParseError("position " + std::to_string(at.value_or(pos_)) + ": " + msg);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char ch) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == ch;
    }

    void expect(char ch) {
        if (!peek(ch)) fail(std::string("expected '") + ch + "'");
        ++pos_;
    }

    std::string identifier() {
        skip_space();
        const auto start = pos_;
        while (pos_ < text_.size() &&
               (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        if (start == pos_) fail("expected an atom or an operator name");
        return std::string(text_.substr(start, pos_ - start));
    }

    std::uint64_t constant() {
        skip_space();
        const auto start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') fail("negative constant", start);
        if (pos_ < text_.size() && text_[pos_] == '+') ++pos_;
        const auto digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (digits == pos_) fail("expected a nonnegative integer constant", start);
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, v);
        if (ec != std::errc{}) fail("constant out of range", start);
        return v;
    }

    Atom atom_body(const std::string& scheme, std::size_t at) {
        Atom a;
        if (scheme == "dnf") {
            a.scheme = Atom::Scheme::dnf;
        } else if (scheme == "mcnf") {
            a.scheme = Atom::Scheme::mcnf;
        } else if (scheme == "nfa") {
            a.scheme = Atom::Scheme::nfa;
        } else if (scheme == "pm") {
            a.scheme = Atom::Scheme::pm;
        } else {
            fail("unknown scheme '" + scheme + "'", at);
        }
        ++pos_;  // ':'
        const auto start = pos_;
        while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')') ++pos_;
        auto body = text_.substr(start, pos_ - start);
        while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
        if (a.scheme == Atom::Scheme::nfa) {
            const auto colon = body.rfind(':');
            if (colon == std::string_view::npos) fail("nfa atom needs a target length: nfa:<path>:<n>", at);
            const auto len = body.substr(colon + 1);
            body = body.substr(0, colon);
            if (len != "y") {
                std::size_t n = 0;
                const auto [ptr, ec] = std::from_chars(len.data(), len.data() + len.size(), n);
                if (ec != std::errc{} || ptr != len.data() + len.size()) {
                    fail("nfa target length must be a nonnegative integer or 'y'", at);
                }
                a.length = n;
            }
        }
        if (body.empty()) fail("empty path", at);
        a.path = std::string(body);
        return a;
    }

    Expr expr() {
        skip_space();
        Expr e;
        e.position = pos_;
        const auto name = identifier();
        if (pos_ < text_.size() && text_[pos_] == ':') {
            e.kind = Expr::Kind::atom;
            e.atom = atom_body(name, e.position);
            if (e.atom.scheme == Atom::Scheme::nfa && !e.atom.length) {
                fail("index 'y' is only allowed inside polysum/polyprod", e.position);
            }
            return e;
        }

        struct Shape {
            const char* name;
            Expr::Kind kind;
            int exprs;
            bool constant;
        };
        static constexpr Shape kShapes[] = {
            {"add", Expr::Kind::add, 2, false},         {"mul", Expr::Kind::mul, 2, false},
            {"dec", Expr::Kind::dec, 1, false},         {"sub", Expr::Kind::sub, 1, true},
            {"pow", Expr::Kind::pow, 1, true},          {"binom", Expr::Kind::binom, 1, true},
            {"polysum", Expr::Kind::polysum, 0, true},  {"polyprod", Expr::Kind::polyprod, 0, true},
            {"totp_plus", Expr::Kind::totp_plus, 1, false},
            {"totp_minus", Expr::Kind::totp_minus, 1, false},
        };
        const Shape* shape = nullptr;
        for (const auto& s : kShapes) {
            if (name == s.name) shape = &s;
        }
        if (!shape) fail("unknown operator '" + name + "'", e.position);
        e.kind = shape->kind;
        expect('(');
        if (shape->exprs == 0) {
            // Indexed family: an nfa atom whose length is the index y.
            skip_space();
            const auto at = pos_;
            const auto scheme = identifier();
            if (pos_ >= text_.size() || text_[pos_] != ':') fail("expected an indexed atom", at);
            e.atom = atom_body(scheme, at);
            if (e.atom.scheme != Atom::Scheme::nfa || e.atom.length) {
                fail("indexed atom must be nfa:<path>:y", at);
            }
        }
        for (int i = 0; i < shape->exprs; ++i) {
            if (i > 0) expect(',');
            e.args.push_back(expr());
        }
        if (shape->constant) {
            if (!peek(',')) fail(name + " takes " + std::to_string(shape->exprs == 0 ? 1 : shape->exprs) +
                                 " operand(s) and a constant");
            ++pos_;
            e.constant = constant();
        }
        if (!peek(')')) fail("too many arguments to " + name);
        ++pos_;
        return e;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string scheme_name(Atom::Scheme s) {
    switch (s) {
        case Atom::Scheme::dnf: return "dnf";
        case Atom::Scheme::mcnf: return "mcnf";
        case Atom::Scheme::nfa: return "nfa";
        case Atom::Scheme::pm: return "pm";
    }
    return "?";
}

std::string atom_string(const Atom& a) {
    auto s = scheme_name(a.scheme) + ":" + a.path;
    if (a.scheme == Atom::Scheme::nfa) s += ":" + (a.length ? std::to_string(*a.length) : "y");
    return s;
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return in;
}

Nfa load_nfa(const Atom& a, std::size_t length) {
    auto in = open(a.path);
    return parse_nfa(in, length);
}

Problem build_atom(const Atom& a) {
    auto in = open(a.path);
    switch (a.scheme) {
        case Atom::Scheme::dnf: return dnf_problem(parse_dnf(in));
        case Atom::Scheme::mcnf: return monotone_cnf_problem(parse_mcnf(in));
        case Atom::Scheme::nfa: return nfa_problem(parse_nfa(in, a.length.value_or(0)));
        case Atom::Scheme::pm: return perfect_matching_problem(parse_bipartite(in));
    }
    throw ParseError("unknown scheme");
}

IndexedFamily nfa_family(const Atom& a) {
    const Nfa base = load_nfa(a, 0);
    return [base](std::uint64_t y) {
        Nfa at = base;
        at.length = static_cast<std::size_t>(y);
        return nfa_problem(at);
    };
}

Count saturating_sub(const Count& a, const Count& b) { return a >= b ? Count(a - b) : Count(0); }

json calls_json(const OracleCalls& c) {
    return json{{"extend", c.extend}, {"witness", c.witness}, {"nested", c.nested}, {"aux", c.aux}};
}

class Stopwatch {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json base_report(const char* command, const Expr& e, const CountingProblem& p) {
    return json{{"command", command}, {"expression", to_string(e)}, {"witness_length", p.witness_length()}};
}

}  // namespace

Expr parse_expr(std::string_view text) { return ExprParser(text).parse(); }

std::string to_string(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind) {
        case K::atom: return atom_string(e.atom);
        case K::add: return "add(" + to_string(e.args[0]) + ", " + to_string(e.args[1]) + ")";
        case K::mul: return "mul(" + to_string(e.args[0]) + ", " + to_string(e.args[1]) + ")";
        case K::dec: return "dec(" + to_string(e.args[0]) + ")";
        case K::sub: return "sub(" + to_string(e.args[0]) + ", " + std::to_string(e.constant) + ")";
        case K::pow: return "pow(" + to_string(e.args[0]) + ", " + std::to_string(e.constant) + ")";
        case K::binom: return "binom(" + to_string(e.args[0]) + ", " + std::to_string(e.constant) + ")";
        case K::polysum: return "polysum(" + atom_string(e.atom) + ", " + std::to_string(e.constant) + ")";
        case K::polyprod: return "polyprod(" + atom_string(e.atom) + ", " + std::to_string(e.constant) + ")";
        case K::totp_plus: return "totp_plus(" + to_string(e.args[0]) + ")";
        case K::totp_minus: return "totp_minus(" + to_string(e.args[0]) + ")";
    }
    return "?";
}

Problem build_problem(const Expr& e) {
    using K = Expr::Kind;
    const auto g = BoundedFP::of(e.constant);
    switch (e.kind) {
        case K::atom: return build_atom(e.atom);
        case K::add: return add(build_problem(e.args[0]), build_problem(e.args[1]));
        case K::mul: return mul(build_problem(e.args[0]), build_problem(e.args[1]));
        case K::dec: return dec1(build_problem(e.args[0]));
        case K::sub: return sub_fp(build_problem(e.args[0]), g);
        case K::pow: return pow(build_problem(e.args[0]), g);
        case K::binom: return binom(build_problem(e.args[0]), g);
        case K::polysum: return poly_sum(nfa_family(e.atom), g);
        case K::polyprod: return poly_prod(nfa_family(e.atom), g);
        case K::totp_plus: return acc_to_totp_plus(checker_from_problem(build_problem(e.args[0]))).problem;
        case K::totp_minus: return acc_to_totp_minus(checker_from_problem(build_problem(e.args[0]))).problem;
    }
    throw ParseError("unknown expression kind");
}

Count expected_count(const Expr& e, std::size_t max_p) {
    using K = Expr::Kind;
    auto arg = [&](std::size_t i) { return expected_count(e.args[i], max_p); };
    const unsigned long g = e.constant;
    switch (e.kind) {
        case K::atom: return brute_force_count(*build_atom(e.atom), max_p);
        case K::add: return arg(0) + arg(1);
        case K::mul: return arg(0) * arg(1);
        case K::dec: return saturating_sub(arg(0), 1);
        case K::sub: return saturating_sub(arg(0), Count(g));
        case K::pow: {
            const Count f = arg(0);
            if (f == 0) return 0;
            Count out;
            mpz_pow_ui(out.get_mpz_t(), f.get_mpz_t(), g);
            return out;
        }
        case K::binom: {
            const Count f = arg(0);
            if (f == 0) return 0;
            Count out;
            mpz_bin_ui(out.get_mpz_t(), f.get_mpz_t(), g);
            return out;
        }
        case K::polysum:
        case K::polyprod: {
            const bool sum = e.kind == K::polysum;
            Count total = sum ? 0 : 1;
            for (unsigned long y = 0; y <= g; ++y) {
                Atom at = e.atom;
                at.length = y;
                const Count term = brute_force_count(*build_atom(at), max_p);
                total = sum ? Count(total + term) : Count(total * term);
            }
            return total;
        }
        case K::totp_plus:
        case K::totp_minus: {
            const auto inner = build_problem(e.args[0]);
            const auto acc = brute_force_count(*inner, max_p);
            const auto w = inner->witness_length();
            return e.kind == K::totp_plus ? Count(pow2(w) + acc) : Count(pow2(w + 1) - acc);
        }
    }
    throw ParseError("unknown expression kind");
}

Outcome cmd_count(const std::string& text) {
    const Stopwatch clock;
    const auto e = parse_expr(text);
    const auto p = build_problem(e);
    OracleCalls calls;
    const auto n = count(*p, calls);
    auto report = base_report("count", e, *p);
    report["count"] = to_decimal(n);
    report["oracle_calls"] = calls_json(calls);
    report["wall_time_ms"] = clock.ms();
    return Outcome{report, kOk};
}

Outcome cmd_enumerate(const std::string& text, const EnumerateOptions& opts) {
    const Stopwatch clock;
    const auto e = parse_expr(text);
    const auto p = build_problem(e);
    auto stream = enumerate(p);
    json witnesses = json::array();
    while (!opts.limit || stream.emitted() < *opts.limit) {
        auto w = stream.next();
        if (!w) break;
        witnesses.push_back(*w);
    }
    auto report = base_report("enumerate", e, *p);
    report["witnesses"] = witnesses;
    report["emitted"] = stream.emitted();
    report["exhausted"] = stream.done();
    report["oracle_calls"] = calls_json(stream.calls());
    int code = kOk;
    if (opts.measure_delay) {
        const auto budget = delay_budget(p->witness_length());
        const bool within = stream.max_gap_calls() <= budget;
        report["max_gap_calls"] = stream.max_gap_calls();
        report["delay_budget"] = budget;
        report["verdicts"] = json{{"delay_within_budget", within}};
        if (!within) code = kVerification;
    }
    report["wall_time_ms"] = clock.ms();
    return Outcome{report, code};
}

Outcome cmd_closest(const std::string& text, const std::string& target) {
    const Stopwatch clock;
    const auto e = parse_expr(text);
    const auto p = build_problem(e);
    OracleCalls calls;
    const auto w = closest_witness(*p, target, calls);
    auto report = base_report("closest", e, *p);
    report["target"] = target;
    report["witness"] = w ? json(*w) : json(nullptr);
    report["oracle_calls"] = calls_json(calls);
    report["wall_time_ms"] = clock.ms();
    return Outcome{report, kOk};
}

Outcome cmd_interval(const std::string& text, const std::string& lo, const std::string& hi,
                     bool open_interval) {
    const Stopwatch clock;
    const auto e = parse_expr(text);
    const auto p = build_problem(e);
    OracleCalls calls;
    const bool found = exists_in_interval(*p, lo, hi, calls,
                                          open_interval ? Endpoints::open : Endpoints::closed);
    auto report = base_report("interval", e, *p);
    report["lower"] = lo;
    report["upper"] = hi;
    report["open"] = open_interval;
    report["exists"] = found;
    report["oracle_calls"] = calls_json(calls);
    report["wall_time_ms"] = clock.ms();
    return Outcome{report, kOk};
}

Outcome cmd_verify(const std::string& text, std::size_t max_p) {
    const Stopwatch clock;
    const auto e = parse_expr(text);
    const auto p = build_problem(e);
    const auto width = p->witness_length();
    if (width > max_p) {
        throw ScaleError("verify: witness length " + std::to_string(width) +
                         " exceeds oracle scale limit " + std::to_string(max_p));
    }

    OracleCalls calls;
    const auto n = count(*p, calls);
    const auto brute = brute_force_count(*p, max_p);
    const auto expected = expected_count(e, max_p);

    json verdicts;
    verdicts["count_equals_brute_force"] = n == brute;
    verdicts["count_equals_arithmetic"] = n == expected;
    if (e.kind == Expr::Kind::atom && e.atom.scheme == Atom::Scheme::pm) {
        auto in = open(e.atom.path);
        verdicts["count_equals_ryser"] = n == ryser_permanent(parse_bipartite(in));
    }
    if (e.kind == Expr::Kind::atom && e.atom.scheme == Atom::Scheme::nfa) {
        verdicts["count_equals_determinized"] = n == nfa_det_count(load_nfa(e.atom, *e.atom.length));
    }
    verdicts["tree_total_is_count_plus_one"] = tree_total(canonical_tree(*p)) == n + 1;

    const auto oracle = validate_oracle(*p, max_p);
    verdicts["oracle_valid"] = oracle.ok();

    auto stream = enumerate(p);
    while (stream.next()) {
    }
    verdicts["enumeration_complete"] = Count(static_cast<unsigned long>(stream.emitted())) == n;
    verdicts["delay_within_budget"] = stream.max_gap_calls() <= delay_budget(width);

    bool pass = true;
    for (const auto& [name, v] : verdicts.items()) pass = pass && v.get<bool>();

    auto report = base_report("verify", e, *p);
    report["count"] = to_decimal(n);
    report["brute_force_count"] = to_decimal(brute);
    report["expected_count"] = to_decimal(expected);
    report["oracle_calls"] = calls_json(calls);
    report["max_gap_calls"] = stream.max_gap_calls();
    report["delay_budget"] = delay_budget(width);
    report["oracle_violations"] = oracle.violation_count;
    if (!oracle.ok()) {
        json first = json::array();
        for (const auto& v : oracle.violations) first.push_back({{"kind", to_string(v.kind)}, {"prefix", v.prefix}});
        report["violations"] = first;
    }
    report["verdicts"] = verdicts;
    report["pass"] = pass;
    report["wall_time_ms"] = clock.ms();
    return Outcome{report, pass ? kOk : kVerification};
}

Outcome cmd_gap_normalize(const std::string& pos, const std::string& neg, std::size_t max_p) {
    const Stopwatch clock;
    const auto pe = parse_expr(pos);
    const auto ne = parse_expr(neg);
    const GapValue h{checker_from_problem(build_problem(pe)), checker_from_problem(build_problem(ne))};
    const auto nf = gap_normalize(h);
    OracleCalls calls;
    const auto n = count(*nf.problem, calls);
    const Count value = n - pow2(nf.exponent);
    const Count direct = gap_eval(h, max_p);
    const bool identity = value == direct;
    const bool bounded = n <= pow2(nf.exponent + 1);

    json report{{"command", "gap-normalize"},
                {"positive", to_string(pe)},
                {"negative", to_string(ne)},
                {"witness_length", nf.problem->witness_length()},
                {"count", to_decimal(n)},
                {"exponent", nf.exponent},
                {"value", to_decimal(value)},
                {"checker_value", to_decimal(direct)},
                {"oracle_calls", calls_json(calls)},
                {"verdicts", {{"value_is_count_minus_power", identity}, {"count_within_bound", bounded}}},
                {"pass", identity && bounded},
                {"wall_time_ms", clock.ms()}};
    return Outcome{report, identity && bounded ? kOk : kVerification};
}

Outcome cmd_cp_check(const std::string& checker, std::uint64_t g, std::size_t max_p) {
    const Stopwatch clock;
    const auto e = parse_expr(checker);
    const auto f = checker_from_problem(build_problem(e));
    const auto nf = cp_embed(f, BoundedFP::of(g));
    OracleCalls calls;
    const auto n = count(*nf.problem, calls);
    const auto top = pow2(nf.exponent);
    const auto acc = checker_eval(f, max_p);
    const bool member = n == top;
    const bool truth = acc == Count(static_cast<unsigned long>(g));
    const bool consistent = member == truth && n <= top;

    json report{{"command", "cp-embed-check"},
                {"checker", to_string(e)},
                {"g", g},
                {"witness_length", nf.problem->witness_length()},
                {"count", to_decimal(n)},
                {"exponent", nf.exponent},
                {"member", member},
                {"acc", to_decimal(acc)},
                {"acc_equals_g", truth},
                {"oracle_calls", calls_json(calls)},
                {"verdicts", {{"dichotomy_matches_brute_force", consistent}}},
                {"pass", consistent},
                {"wall_time_ms", clock.ms()}};
    return Outcome{report, consistent ? kOk : kVerification};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Witness counting with prefix oracles: count, enumerate, verify, gap transforms"};
    app.require_subcommand(1);
    app.fallthrough();

    std::size_t max_p = kDefaultMaxP;
    app.add_option("--max-p", max_p, "Witness-length limit for exhaustive oracles")->capture_default_str();

    std::string expr;
    std::string second;
    std::string third;
    EnumerateOptions enum_opts;
    std::uint64_t limit = 0;
    bool open_interval = false;
    std::uint64_t g = 0;

    auto* count_cmd = app.add_subcommand("count", "Count witnesses by prefix search");
    count_cmd->add_option("expr", expr, "Problem expression")->required();

    auto* enum_cmd = app.add_subcommand("enumerate", "List witnesses in lexicographic order");
    enum_cmd->add_option("expr", expr, "Problem expression")->required();
    auto* limit_opt = enum_cmd->add_option("--limit", limit, "Stop after N witnesses");
    enum_cmd->add_flag("--measure-delay", enum_opts.measure_delay,
                       "Report and enforce the per-gap oracle-call budget");

    auto* closest_cmd = app.add_subcommand("closest", "Witness nearest to a target string");
    closest_cmd->add_option("expr", expr, "Problem expression")->required();
    closest_cmd->add_option("target", second, "Bit string of the witness length")->required();

    auto* interval_cmd = app.add_subcommand("interval", "Whether a witness lies in [a, b]");
    interval_cmd->add_option("expr", expr, "Problem expression")->required();
    interval_cmd->add_option("a", second, "Lower end")->required();
    interval_cmd->add_option("b", third, "Upper end")->required();
    interval_cmd->add_flag("--open-interval", open_interval, "Exclude both endpoints");

    auto* verify_cmd = app.add_subcommand("verify", "Check the prefix oracle against exhaustive oracles");
    verify_cmd->add_option("expr", expr, "Problem expression")->required();

    auto* gap_cmd = app.add_subcommand("gap-normalize", "Write acc(pos) - acc(neg) as count - 2^q");
    gap_cmd->add_option("pos", expr, "Positive checker expression")->required();
    gap_cmd->add_option("neg", second, "Negative checker expression")->required();

    auto* cp_cmd = app.add_subcommand("cp-embed-check", "Decide acc(checker) = g through the 2^q normal form");
    cp_cmd->add_option("checker", expr, "Checker expression")->required();
    cp_cmd->add_option("g", g, "Target value")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        Outcome o;
        if (*count_cmd) {
            o = cmd_count(expr);
        } else if (*enum_cmd) {
            if (*limit_opt) enum_opts.limit = limit;
            o = cmd_enumerate(expr, enum_opts);
        } else if (*closest_cmd) {
            o = cmd_closest(expr, second);
        } else if (*interval_cmd) {
            o = cmd_interval(expr, second, third, open_interval);
        } else if (*verify_cmd) {
            o = cmd_verify(expr, max_p);
        } else if (*gap_cmd) {
            o = cmd_gap_normalize(expr, second, max_p);
        } else {
            o = cmd_cp_check(expr, g, max_p);
        }
        out << o.report.dump(2) << '\n';
        return o.exit_code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const ScaleError& e) {
        err << "scale error: " << e.what() << '\n';
        return kScale;
    } catch (const IntegrityError& e) {
        err << "verification failure: " << e.what() << '\n';
        return kVerification;
    }
}

}  // namespace totp::cli
