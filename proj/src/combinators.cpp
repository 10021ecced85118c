#include "totp/combinators.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <utility>

#include "totp/enumeration.hpp"
#include "totp/errors.hpp"

namespace totp {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a > kSaturated / b ? kSaturated : a * b;
}

// Cost of one call into `p`, counting everything it issues in turn.
std::uint64_t per_call(const CountingProblem& p) { return sat_add(1, p.call_budget()); }

void require(const Problem& p, const char* what) {
    if (!p) throw UsageError(std::string(what) + ": null component problem");
}

void require_bounded(const BoundedFP& g, const char* what) {
    if (!g.poly_bounded) {
        throw UsageError(std::string(what) + ": requires a polynomially bounded g");
    }
}

class SumProblem final : public CountingProblem {
public:
    SumProblem(Problem f, Problem g)
        : f_(std::move(f)), g_(std::move(g)),
          inner_(std::max(f_->witness_length(), g_->witness_length())) {}

    std::size_t witness_length() const override { return inner_ + 1; }
    std::uint64_t call_budget() const override {
        return sat_add(per_call(*f_), per_call(*g_));
    }
    std::string describe() const override {
        return "add(" + f_->describe() + ", " + g_->describe() + ")";
    }

protected:
    bool check_witness(BitsView y, OracleCalls& calls) const override {
        const auto& side = y[0] == '0' ? *f_ : *g_;
        const auto body = y.substr(1);
        const auto len = side.witness_length();
        return all_zero(body.substr(len)) && side.is_witness(body.substr(0, len), calls);
    }

    bool check_extend(BitsView c, OracleCalls& calls) const override {
        if (c.empty()) return f_->can_extend(c, calls) || g_->can_extend(c, calls);
        const auto& side = c[0] == '0' ? *f_ : *g_;
        const auto body = c.substr(1);
        const auto len = side.witness_length();
        if (body.size() <= len) return side.can_extend(body, calls);
        return all_zero(body.substr(len)) && side.can_extend(body.substr(0, len), calls);
    }

private:
    Problem f_;
    Problem g_;
    std::size_t inner_;
};

class ProductProblem final : public CountingProblem {
public:
    ProductProblem(Problem f, Problem g) : f_(std::move(f)), g_(std::move(g)) {}

    std::size_t witness_length() const override {
        return f_->witness_length() + g_->witness_length();
    }
    std::uint64_t call_budget() const override {
        return sat_add(per_call(*f_), per_call(*g_));
    }
    std::string describe() const override {
        return "mul(" + f_->describe() + ", " + g_->describe() + ")";
    }

protected:
    bool check_witness(BitsView y, OracleCalls& calls) const override {
        const auto split = f_->witness_length();
        return f_->is_witness(y.substr(0, split), calls) && g_->is_witness(y.substr(split), calls);
    }

    bool check_extend(BitsView c, OracleCalls& calls) const override {
        const auto split = f_->witness_length();
        if (c.size() <= split) return f_->can_extend(c, calls) && g_->can_extend(BitsView{}, calls);
        return f_->is_witness(c.substr(0, split), calls) && g_->can_extend(c.substr(split), calls);
    }

private:
    Problem f_;
    Problem g_;
};

// Witnesses of f at or above f's (skip+1)-th smallest witness.
class ThresholdProblem final : public CountingProblem {
public:
    ThresholdProblem(Problem f, std::uint64_t skip, std::string name)
        : f_(std::move(f)), skip_(skip), name_(std::move(name)) {
        OracleCalls setup;
        auto smallest = first_witnesses(*f_, sat_add(skip_, 1), setup);
        if (smallest.size() > skip_) threshold_ = std::move(smallest.back());
    }

    std::size_t witness_length() const override { return f_->witness_length(); }
    std::uint64_t call_budget() const override {
        return sat_mul(delay_budget(f_->witness_length()), per_call(*f_));
    }
    std::string describe() const override {
        return name_ + "(" + f_->describe() + (name_ == "dec" ? "" : ", " + std::to_string(skip_)) + ")";
    }

protected:
    bool check_witness(BitsView y, OracleCalls& calls) const override {
        return threshold_ && y >= BitsView(*threshold_) && f_->is_witness(y, calls);
    }

    bool check_extend(BitsView c, OracleCalls& calls) const override {
        if (!threshold_) return false;
        const std::size_t rest = witness_length() - c.size();
        Bits highest(c);
        highest.append(rest, '1');
        if (highest < *threshold_) return false;
        Bits start(c);
        start.append(rest, '0');
        if (start < *threshold_) start = *threshold_;
        const auto w = next_witness_geq(*f_, start, calls);
        return w && has_prefix(*w, c);
    }

private:
    Problem f_;
    std::uint64_t skip_;
    std::string name_;
    std::optional<Bits> threshold_;
};

// Shared by pow and binom: g blocks, each holding a witness of f.
class BlockProblem : public CountingProblem {
public:
    BlockProblem(Problem f, std::uint64_t blocks) : f_(std::move(f)), blocks_(blocks) {
        OracleCalls setup;
        nonempty_ = f_->can_extend(BitsView{}, setup);
        const auto width = f_->witness_length();
        if (width != 0 && blocks_ > std::numeric_limits<std::size_t>::max() / width) {
            throw UsageError("block combinator: witness length overflows");
        }
    }

    std::size_t witness_length() const override {
        return static_cast<std::size_t>(blocks_) * f_->witness_length();
    }

protected:
    BitsView block(BitsView s, std::uint64_t i) const {
        const auto w = f_->witness_length();
        return s.substr(static_cast<std::size_t>(i) * w, w);
    }

    Problem f_;
    std::uint64_t blocks_;
    bool nonempty_ = false;
};

class PowerProblem final : public BlockProblem {
public:
    using BlockProblem::BlockProblem;

    std::uint64_t call_budget() const override { return sat_mul(blocks_, per_call(*f_)); }
    std::string describe() const override {
        return "pow(" + f_->describe() + ", " + std::to_string(blocks_) + ")";
    }

protected:
    bool check_witness(BitsView y, OracleCalls& calls) const override {
        if (!nonempty_) return false;
        for (std::uint64_t i = 0; i < blocks_; ++i) {
            if (!f_->is_witness(block(y, i), calls)) return false;
        }
        return true;
    }

    bool check_extend(BitsView c, OracleCalls& calls) const override {
        if (!nonempty_) return false;
        const auto w = f_->witness_length();
        if (w == 0) return true;
        const auto full = c.size() / w;
        for (std::size_t i = 0; i < full; ++i) {
            if (!f_->is_witness(block(c, i), calls)) return false;
        }
        // Blocks after the partial one can take any witness of f.
        if (c.size() % w != 0) return f_->can_extend(c.substr(full * w), calls);
        return true;
    }
};

class SubsetProblem final : public BlockProblem {
public:
    using BlockProblem::BlockProblem;

    std::uint64_t call_budget() const override {
        const auto scan = sat_add(1, delay_budget(f_->witness_length()));
        return sat_mul(sat_mul(blocks_, per_call(*f_)), scan);
    }
    std::string describe() const override {
        return "binom(" + f_->describe() + ", " + std::to_string(blocks_) + ")";
    }

protected:
    bool check_witness(BitsView y, OracleCalls& calls) const override {
        if (!nonempty_) return false;
        if (f_->witness_length() == 0) return blocks_ <= 1;
        return chosen_prefix(y, blocks_, calls).has_value();
    }

    bool check_extend(BitsView c, OracleCalls& calls) const override {
        if (!nonempty_) return false;
        const auto w = f_->witness_length();
        if (w == 0) return blocks_ <= 1;
        const std::uint64_t full = c.size() / w;
        const auto chosen = chosen_prefix(c, full, calls);
        if (!chosen) return false;
        if (full == blocks_) return true;

        // Greedily complete with the smallest admissible witnesses: the one
        // continuing the partial block, then blocks_-full-1 successors.
        const auto partial = c.substr(static_cast<std::size_t>(full) * w);
        std::optional<Bits> start = chosen->empty() ? std::optional<Bits>(zeros(w)) : successor(*chosen);
        if (!start) return false;
        Bits lowest(partial);
        lowest.append(w - partial.size(), '0');
        if (lowest > *start) start = std::move(lowest);
        auto next = next_witness_geq(*f_, *start, calls);
        if (!next || !has_prefix(*next, partial)) return false;
        for (std::uint64_t more = blocks_ - full - 1; more > 0; --more) {
            const auto s = successor(*next);
            if (!s) return false;
            next = next_witness_geq(*f_, *s, calls);
            if (!next) return false;
        }
        return true;
    }

private:
    // Checks the first n blocks hold strictly increasing witnesses; returns
    // the last of them ("" when n = 0), or nullopt on failure.
    std::optional<Bits> chosen_prefix(BitsView s, std::uint64_t n, OracleCalls& calls) const {
        Bits last;
        for (std::uint64_t i = 0; i < n; ++i) {
            const auto b = block(s, i);
            if (i > 0 && b <= BitsView(last)) return std::nullopt;
            if (!f_->is_witness(b, calls)) return std::nullopt;
            last.assign(b);
        }
        return last;
    }
};

std::vector<Problem> materialize(const IndexedFamily& family, std::uint64_t g, const char* what) {
    if (!family) throw UsageError(std::string(what) + ": empty family");
    if (g >= (std::uint64_t{1} << 20)) {
        throw UsageError(std::string(what) + ": index range too large to materialize");
    }
    std::vector<Problem> members;
    members.reserve(g + 1);
    for (std::uint64_t y = 0; y <= g; ++y) {
        members.push_back(family(y));
        require(members.back(), what);
    }
    return members;
}

std::uint64_t max_member_budget(const std::vector<Problem>& members) {
    std::uint64_t b = 0;
    for (const auto& m : members) b = std::max(b, per_call(*m));
    return b;
}

class IndexedSumProblem final : public CountingProblem {
public:
    IndexedSumProblem(std::vector<Problem> members)
        : members_(std::move(members)), index_bits_(index_width(members_.size() - 1)) {
        for (const auto& m : members_) inner_ = std::max(inner_, m->witness_length());
    }

    std::size_t witness_length() const override { return index_bits_ + inner_; }
    std::uint64_t call_budget() const override {
        return sat_mul(members_.size(), max_member_budget(members_));
    }
    std::string describe() const override {
        return "polysum(" + std::to_string(members_.size()) + " terms)";
    }

protected:
    bool check_witness(BitsView y, OracleCalls& calls) const override {
        const auto idx = small_value_of(y.substr(0, index_bits_));
        if (idx >= members_.size()) return false;
        const auto& m = *members_[idx];
        const auto body = y.substr(index_bits_);
        const auto len = m.witness_length();
        return all_zero(body.substr(len)) && m.is_witness(body.substr(0, len), calls);
    }

    bool check_extend(BitsView c, OracleCalls& calls) const override {
        if (c.size() < index_bits_) {
            const std::size_t rest = index_bits_ - c.size();
            const auto lo = small_value_of(Bits(c) + zeros(rest));
            const auto hi = std::min<std::uint64_t>(small_value_of(Bits(c) + ones(rest)),
                                                    members_.size() - 1);
            for (auto idx = lo; idx <= hi; ++idx) {
                if (members_[idx]->can_extend(BitsView{}, calls)) return true;
            }
            return false;
        }
        const auto idx = small_value_of(c.substr(0, index_bits_));
        if (idx >= members_.size()) return false;
        const auto& m = *members_[idx];
        const auto body = c.substr(index_bits_);
        const auto len = m.witness_length();
        if (body.size() <= len) return m.can_extend(body, calls);
        return all_zero(body.substr(len)) && m.can_extend(body.substr(0, len), calls);
    }

private:
    std::vector<Problem> members_;
    std::size_t index_bits_;
    std::size_t inner_ = 0;
};

class IndexedProductProblem final : public CountingProblem {
public:
    IndexedProductProblem(std::vector<Problem> members) : members_(std::move(members)) {
        OracleCalls setup;
        offsets_.reserve(members_.size() + 1);
        offsets_.push_back(0);
        for (const auto& m : members_) {
            offsets_.push_back(offsets_.back() + m->witness_length());
            // Any empty factor empties the product.
            if (!m->can_extend(BitsView{}, setup)) has_empty_factor_ = true;
        }
    }

    std::size_t witness_length() const override { return offsets_.back(); }
    std::uint64_t call_budget() const override {
        return sat_mul(members_.size(), max_member_budget(members_));
    }
    std::string describe() const override {
        return "polyprod(" + std::to_string(members_.size()) + " factors)";
    }

protected:
    bool check_witness(BitsView y, OracleCalls& calls) const override {
        if (has_empty_factor_) return false;
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (!members_[i]->is_witness(slice(y, i), calls)) return false;
        }
        return true;
    }

    bool check_extend(BitsView c, OracleCalls& calls) const override {
        if (has_empty_factor_) return false;
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (offsets_[i + 1] <= c.size()) {
                if (!members_[i]->is_witness(slice(c, i), calls)) return false;
            } else {
                return members_[i]->can_extend(c.substr(offsets_[i]), calls);
            }
        }
        return true;
    }

private:
    BitsView slice(BitsView s, std::size_t i) const {
        return s.substr(offsets_[i], offsets_[i + 1] - offsets_[i]);
    }

    std::vector<Problem> members_;
    std::vector<std::size_t> offsets_;
    bool has_empty_factor_ = false;
};

}  // namespace

Problem add(Problem f, Problem g) {
    require(f, "add");
    require(g, "add");
    return std::make_shared<SumProblem>(std::move(f), std::move(g));
}

Problem mul(Problem f, Problem g) {
    require(f, "mul");
    require(g, "mul");
    return std::make_shared<ProductProblem>(std::move(f), std::move(g));
}

Problem dec1(Problem f) {
    require(f, "dec1");
    return std::make_shared<ThresholdProblem>(std::move(f), 1, "dec");
}

Problem sub_fp(Problem f, BoundedFP g) {
    require(f, "sub_fp");
    require_bounded(g, "sub_fp");
    return std::make_shared<ThresholdProblem>(std::move(f), g.value, "sub");
}

Problem pow(Problem f, BoundedFP g) {
    require(f, "pow");
    require_bounded(g, "pow");
    return std::make_shared<PowerProblem>(std::move(f), g.value);
}

Problem binom(Problem f, BoundedFP g) {
    require(f, "binom");
    require_bounded(g, "binom");
    return std::make_shared<SubsetProblem>(std::move(f), g.value);
}

Problem poly_sum(const IndexedFamily& family, BoundedFP g) {
    require_bounded(g, "poly_sum");
    return std::make_shared<IndexedSumProblem>(materialize(family, g.value, "poly_sum"));
}

Problem poly_prod(const IndexedFamily& family, BoundedFP g) {
    require_bounded(g, "poly_prod");
    return std::make_shared<IndexedProductProblem>(materialize(family, g.value, "poly_prod"));
}

Count span_value(const std::vector<Count>& values) {
    if (values.empty()) throw UsageError("span_value: empty list");
    const std::set<Count> distinct(values.begin(), values.end());
    return Count(static_cast<unsigned long>(distinct.size()));
}

std::set<Count> plu_value(const std::vector<Count>& values) {
    if (values.empty()) throw UsageError("plu_value: empty list");
    std::map<Count, std::size_t> freq;
    for (const auto& v : values) ++freq[v];
    std::size_t best = 0;
    for (const auto& [v, n] : freq) best = std::max(best, n);
    std::set<Count> modes;
    for (const auto& [v, n] : freq) {
        if (n == best) modes.insert(v);
    }
    return modes;
}

}  // namespace totp
