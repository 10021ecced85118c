#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "totp/cli.hpp"
#include "totp/errors.hpp"

using namespace totp;
using namespace totp::cli;

namespace {

std::string data(const std::string& name) { return std::string(TOTP_DATA_DIR) + "/" + name; }

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_tool(std::vector<std::string> args) {
    args.insert(args.begin(), "totp");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string parse_error_text(const std::string& text) {
    try {
        parse_expr(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("parse_expr examples") {
    const auto atom = parse_expr("dnf:f.dnf");
    CHECK(atom.kind == Expr::Kind::atom);
    CHECK(atom.atom.scheme == Atom::Scheme::dnf);
    CHECK(atom.atom.path == "f.dnf");

    const auto m = parse_expr("mul(dnf:f.dnf, pm:g.pm)");
    CHECK(m.kind == Expr::Kind::mul);
    REQUIRE(m.args.size() == 2);
    CHECK(m.args[1].atom.scheme == Atom::Scheme::pm);

    const auto n = parse_expr("nfa:a.nfa:7");
    CHECK(n.atom.length == std::optional<std::size_t>(7));

    const auto s = parse_expr("polysum(nfa:a.nfa:y, 3)");
    CHECK(s.kind == Expr::Kind::polysum);
    CHECK_FALSE(s.atom.length.has_value());
    CHECK(s.constant == 3);

    CHECK(to_string(parse_expr(" binom( dec(mcnf:c.mcnf) ,2 )")) == "binom(dec(mcnf:c.mcnf), 2)");
}

TEST_CASE("parse_expr errors carry a position") {
    CHECK_THROWS_AS(parse_expr("pow(dnf:f.dnf, -1)"), ParseError);
    CHECK(parse_error_text("pow(dnf:f.dnf, -1)").find("position 15") != std::string::npos);
    CHECK_THROWS_AS(parse_expr("sat:f.cnf"), ParseError);
    CHECK_THROWS_AS(parse_expr("add(dnf:f.dnf)"), ParseError);
    CHECK_THROWS_AS(parse_expr("dec(dnf:f.dnf, dnf:g.dnf)"), ParseError);
    CHECK_THROWS_AS(parse_expr("dec(dnf:f.dnf) extra"), ParseError);
    CHECK_THROWS_AS(parse_expr("dnf:f.dnf)"), ParseError);
    CHECK(parse_expr("dnf:my file.dnf").atom.path == "my file.dnf");
    CHECK_THROWS_AS(parse_expr("nfa:a.nfa"), ParseError);
    CHECK_THROWS_AS(parse_expr("nfa:a.nfa:y"), ParseError);
    CHECK_THROWS_AS(parse_expr("frobnicate(dnf:f.dnf)"), ParseError);
    CHECK_THROWS_AS(parse_expr(""), ParseError);
}

TEST_CASE("cmd_count on a single-term formula") {
    const auto o = cmd_count("dnf:" + data("x1.dnf"));
    CHECK(o.exit_code == kOk);
    CHECK(o.report["count"] == "2");
}

TEST_CASE("count output equals expected counts of expressions") {
    const std::string x1 = "dnf:" + data("x1.dnf");
    const std::string k33 = "pm:" + data("k33.pm");
    const std::string nfa = "nfa:" + data("ends1.nfa");
    const std::vector<std::pair<std::string, std::string>> golden{
        {x1, "2"},
        {"mcnf:" + data("or2.mcnf"), "3"},
        {nfa + ":3", "4"},
        {k33, "6"},
        {"pm:" + data("path.pm"), "1"},
        {"dnf:" + data("parity3.dnf"), "4"},
        {"mul(" + x1 + ", " + k33 + ")", "12"},
        {"add(" + x1 + ", " + k33 + ")", "8"},
        {"dec(" + k33 + ")", "5"},
        {"sub(" + k33 + ", 4)", "2"},
        {"pow(" + x1 + ", 3)", "8"},
        {"binom(" + k33 + ", 2)", "15"},
        {"polysum(" + nfa + ":y, 3)", "7"},
        {"polyprod(" + nfa + ":y, 3)", "0"},
        {"totp_plus(" + x1 + ")", "6"},
        {"totp_minus(" + x1 + ")", "6"},
    };
    for (const auto& [expr, want] : golden) {
        CAPTURE(expr);
        const auto o = cmd_count(expr);
        CHECK(o.report["count"] == want);
        CHECK(to_decimal(expected_count(parse_expr(expr))) == want);
    }
}

TEST_CASE("cmd_verify passes on cataloged instances") {
    for (const auto& expr : {"dnf:" + data("x1.dnf"), "mcnf:" + data("or2.mcnf"), "nfa:" + data("ends1.nfa") + ":5",
                             "pm:" + data("k33.pm"), "binom(pm:" + data("k33.pm") + ", 2)"}) {
        CAPTURE(expr);
        const auto o = cmd_verify(expr, 24);
        CHECK(o.exit_code == kOk);
        CHECK(o.report["pass"] == true);
    }
}

TEST_CASE("cmd_enumerate lists witnesses and measures delay") {
    EnumerateOptions opts;
    opts.measure_delay = true;
    const auto o = cmd_enumerate("dnf:" + data("x1.dnf"), opts);
    CHECK(o.exit_code == kOk);
    CHECK(o.report["witnesses"] == nlohmann::json::array({"10", "11"}));
    CHECK(o.report["max_gap_calls"].get<std::uint64_t>() <= o.report["delay_budget"].get<std::uint64_t>());

    opts.limit = 1;
    CHECK(cmd_enumerate("pm:" + data("k33.pm"), opts).report["witnesses"].size() == 1);
}

TEST_CASE("cmd_closest and cmd_interval") {
    const std::string x1 = "dnf:" + data("x1.dnf");
    CHECK(cmd_closest(x1, "01").report["witness"] == "10");
    CHECK(cmd_interval(x1, "00", "01", false).report["exists"] == false);
    CHECK(cmd_interval(x1, "10", "11", false).report["exists"] == true);
    CHECK(cmd_interval(x1, "10", "11", true).report["exists"] == false);
    CHECK_THROWS_AS(cmd_interval(x1, "11", "00", false), UsageError);
}

TEST_CASE("gap commands") {
    const auto g = cmd_gap_normalize("dnf:" + data("parity3.dnf"), "pm:" + data("k33.pm"), 24);
    CHECK(g.exit_code == kOk);
    CHECK(g.report["value"] == "-2");

    const auto hit = cmd_cp_check("dnf:" + data("x1.dnf"), 2, 24);
    CHECK(hit.exit_code == kOk);
    CHECK(hit.report["member"] == true);
    const auto miss = cmd_cp_check("dnf:" + data("x1.dnf"), 3, 24);
    CHECK(miss.exit_code == kOk);
    CHECK(miss.report["member"] == false);
}

TEST_CASE("exit codes through the tool entry point") {
    const std::string x1 = "dnf:" + data("x1.dnf");
    const auto ok = run_tool({"count", x1});
    CHECK(ok.code == kOk);
    CHECK(nlohmann::json::parse(ok.out)["count"] == "2");

    CHECK(run_tool({"interval", x1, "11", "00"}).code == kUsage);
    CHECK(run_tool({"frobnicate"}).code == kUsage);
    CHECK(run_tool({}).code == kUsage);
    CHECK(run_tool({"count", "pow(" + x1 + ", -1)"}).code == kParse);
    CHECK(run_tool({"count", "dnf:" + data("no-such-file.dnf")}).code == kParse);
    CHECK(run_tool({"--max-p", "4", "verify", "pm:" + data("k33.pm")}).code == kScale);
    CHECK(run_tool({"verify", "pm:" + data("k33.pm")}).code == kOk);
    CHECK(run_tool({"enumerate", "--measure-delay", x1}).code == kOk);
    CHECK(run_tool({"interval", "--open-interval", x1, "10", "11"}).code == kOk);
}
