#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "totp/errors.hpp"
#include "totp/problems.hpp"

namespace totp {

namespace {

struct Token {
    std::string text;
    std::size_t line;
};

// Whitespace-separated tokens, skipping blank lines and lines starting with 'c' or '#'.
class TokenReader {
public:
    TokenReader(std::istream& in, const char* format) : format_(format) {
        std::string line;
        std::size_t no = 0;
        while (std::getline(in, line)) {
            ++no;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == 'c' || line[first] == '#') continue;
            std::size_t i = first;
            while (i < line.size()) {
                const auto end = line.find_first_of(" \t\r", i);
                tokens_.push_back(Token{line.substr(i, end - i), no});
                if (end == std::string::npos) break;
                i = line.find_first_not_of(" \t\r", end);
                if (i == std::string::npos) break;
            }
        }
    }

    bool done() const { return pos_ >= tokens_.size(); }

    [[noreturn]] void fail(const std::string& msg) const {
        const auto line = pos_ < tokens_.size() ? tokens_[pos_].line
                          : tokens_.empty()     ? 0
                                                : tokens_.back().line;
        throw ParseError(std::string(format_) + " line " + std::to_string(line) + ": " + msg);
    }

    void expect(const std::string& word) {
        if (done() || tokens_[pos_].text != word) fail("expected '" + word + "'");
        ++pos_;
    }

    long integer() {
        if (done()) fail("unexpected end of input");
        const auto& t = tokens_[pos_].text;
        long v = 0;
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || ptr != t.data() + t.size()) fail("expected an integer, got '" + t + "'");
        ++pos_;
        return v;
    }

    std::size_t count() {
        const long v = integer();
        if (v < 0) {
            --pos_;
            fail("expected a nonnegative integer");
        }
        return static_cast<std::size_t>(v);
    }

    // Integers up to a terminating 0.
    std::vector<int> zero_terminated() {
        std::vector<int> out;
        while (true) {
            if (done()) fail("missing terminating 0");
            const long v = integer();
            if (v == 0) return out;
            out.push_back(static_cast<int>(v));
        }
    }

private:
    const char* format_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

template <typename T>
void checked(TokenReader& r, const T& value) {
    try {
        validate(value);
    } catch (const UsageError& e) {
        r.fail(e.what());
    }
}

}  // namespace

DnfFormula parse_dnf(std::istream& in) {
    TokenReader r(in, "dnf");
    r.expect("p");
    r.expect("dnf");
    DnfFormula f;
    f.num_vars = r.count();
    const auto terms = r.count();
    for (std::size_t i = 0; i < terms; ++i) f.terms.push_back(r.zero_terminated());
    if (!r.done()) r.fail("more terms than the header declares");
    checked(r, f);
    return f;
}

MonotoneCnf parse_mcnf(std::istream& in) {
    TokenReader r(in, "mcnf");
    r.expect("p");
    r.expect("mcnf");
    MonotoneCnf f;
    f.num_vars = r.count();
    const auto clauses = r.count();
    for (std::size_t i = 0; i < clauses; ++i) f.clauses.push_back(r.zero_terminated());
    if (!r.done()) r.fail("more clauses than the header declares");
    checked(r, f);
    return f;
}

Nfa parse_nfa(std::istream& in, std::size_t length) {
    TokenReader r(in, "nfa");
    r.expect("nfa");
    Nfa a;
    a.length = length;
    a.num_states = r.count();
    const auto initial = r.count();
    const auto accepting = r.count();
    for (std::size_t i = 0; i < initial; ++i) a.initial.push_back(r.count());
    for (std::size_t i = 0; i < accepting; ++i) a.accepting.push_back(r.count());
    while (!r.done()) {
        Nfa::Transition t;
        t.from = r.count();
        t.symbol = static_cast<int>(r.integer());
        t.to = r.count();
        a.transitions.push_back(t);
    }
    checked(r, a);
    return a;
}

BipartiteGraph parse_bipartite(std::istream& in) {
    TokenReader r(in, "pm");
    r.expect("pm");
    BipartiteGraph g;
    g.size = r.count();
    g.adj.assign(g.size, std::vector<std::uint8_t>(g.size, 0));
    for (auto& row : g.adj) {
        for (auto& e : row) {
            const long v = r.integer();
            if (v != 0 && v != 1) r.fail("entries must be 0 or 1");
            e = static_cast<std::uint8_t>(v);
        }
    }
    if (!r.done()) r.fail("trailing entries after the matrix");
    return g;
}

void write_dnf(std::ostream& out, const DnfFormula& f) {
    out << "p dnf " << f.num_vars << ' ' << f.terms.size() << '\n';
    for (const auto& term : f.terms) {
        for (int lit : term) out << lit << ' ';
        out << "0\n";
    }
}

void write_mcnf(std::ostream& out, const MonotoneCnf& f) {
    out << "p mcnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto& clause : f.clauses) {
        for (int lit : clause) out << lit << ' ';
        out << "0\n";
    }
}

void write_nfa(std::ostream& out, const Nfa& a) {
    out << "nfa " << a.num_states << ' ' << a.initial.size() << ' ' << a.accepting.size() << '\n';
    for (std::size_t i = 0; i < a.initial.size(); ++i) out << (i ? " " : "") << a.initial[i];
    out << '\n';
    for (std::size_t i = 0; i < a.accepting.size(); ++i) out << (i ? " " : "") << a.accepting[i];
    out << '\n';
    for (const auto& t : a.transitions) out << t.from << ' ' << t.symbol << ' ' << t.to << '\n';
}

void write_bipartite(std::ostream& out, const BipartiteGraph& g) {
    out << "pm " << g.size << '\n';
    for (const auto& row : g.adj) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << int(row[j]);
        out << '\n';
    }
}

}  // namespace totp
