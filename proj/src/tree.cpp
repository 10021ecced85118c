#include "totp/tree.hpp"

#include <algorithm>
#include <utility>

#include "totp/errors.hpp"

namespace totp {

namespace {

// Appends src's arena to dst, shifting child indices; returns src's root in dst.
std::uint32_t append_arena(std::vector<Tree::Node>& dst, std::span<const Tree::Node> src) {
    const auto offset = static_cast<std::uint32_t>(dst.size());
    for (Tree::Node n : src) {
        if (n.kind != Tree::Kind::leaf) {
            n.first += offset;
            if (n.kind == Tree::Kind::branch) n.second += offset;
        }
        dst.push_back(n);
    }
    return static_cast<std::uint32_t>(dst.size() - 1);
}

std::vector<std::size_t> heights(std::span<const Tree::Node> nodes) {
    std::vector<std::size_t> h(nodes.size(), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& n = nodes[i];
        switch (n.kind) {
            case Tree::Kind::leaf: h[i] = 0; break;
            case Tree::Kind::step: h[i] = h[n.first] + 1; break;
            case Tree::Kind::branch: h[i] = std::max(h[n.first], h[n.second]) + 1; break;
        }
    }
    return h;
}

}  // namespace

Tree Tree::leaf() {
    Tree t;
    t.nodes_.push_back(Node{});
    return t;
}

Tree Tree::step(const Tree& child) {
    Tree t;
    t.nodes_.reserve(child.size() + 1);
    const auto c = append_arena(t.nodes_, child.nodes_);
    t.nodes_.push_back(Node{Kind::step, c, 0});
    return t;
}

Tree Tree::branch(const Tree& left, const Tree& right) {
    Tree t;
    t.nodes_.reserve(left.size() + right.size() + 1);
    const auto l = append_arena(t.nodes_, left.nodes_);
    const auto r = append_arena(t.nodes_, right.nodes_);
    t.nodes_.push_back(Node{Kind::branch, l, r});
    return t;
}

Tree Tree::from_nodes(std::vector<Node> nodes) {
    if (nodes.empty()) throw UsageError("Tree: empty arena");
    // Post-order with every non-root node referenced exactly once makes the arena a tree.
    std::vector<std::uint8_t> referenced(nodes.size(), 0);
    auto claim = [&](std::size_t parent, std::uint32_t child) {
        if (child >= parent) throw UsageError("Tree: child index not below parent");
        if (referenced[child]++) throw UsageError("Tree: node shared by two parents");
    };
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& n = nodes[i];
        if (n.kind == Kind::step || n.kind == Kind::branch) claim(i, n.first);
        if (n.kind == Kind::branch) claim(i, n.second);
    }
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (!referenced[i]) throw UsageError("Tree: unreachable node");
    }
    Tree t;
    t.nodes_ = std::move(nodes);
    return t;
}

std::size_t Tree::height() const { return heights(nodes_).back(); }

Count tree_total(const Tree& t) {
    std::vector<Count> paths(t.size());
    const auto nodes = t.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& n = nodes[i];
        switch (n.kind) {
            case Tree::Kind::leaf: paths[i] = 1; break;
            case Tree::Kind::step: paths[i] = paths[n.first]; break;
            case Tree::Kind::branch: paths[i] = paths[n.first] + paths[n.second]; break;
        }
    }
    return paths.back();
}

Count tree_tot(const Tree& t) { return tree_total(t) - 1; }

namespace {

class TreePathProblem final : public CountingProblem {
public:
    explicit TreePathProblem(Tree t) : tree_(std::move(t)) {
        const auto nodes = tree_.nodes();
        length_ = heights(nodes).back();
        has_branch_.assign(nodes.size(), 0);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const auto& n = nodes[i];
            switch (n.kind) {
                case Tree::Kind::leaf: break;
                case Tree::Kind::step: has_branch_[i] = has_branch_[n.first]; break;
                case Tree::Kind::branch: has_branch_[i] = 1; break;
            }
        }
    }

    std::size_t witness_length() const override { return length_; }
    std::string describe() const override {
        return "tree-paths(" + std::to_string(tree_.size()) + " nodes)";
    }

protected:
    bool check_witness(BitsView y, OracleCalls&) const override {
        const Walk w = walk(y);
        return w.valid && !w.on_largest;
    }

    bool check_extend(BitsView c, OracleCalls&) const override {
        const Walk w = walk(c);
        if (!w.valid) return false;
        // Off the lex-largest path every completion is a witness; on it, a
        // second completion exists iff the subtree still branches.
        return !w.on_largest || has_branch_[w.node];
    }

private:
    struct Walk {
        bool valid = true;
        bool on_largest = true;
        std::uint32_t node = 0;
    };

    Walk walk(BitsView bits) const {
        Walk w;
        w.node = tree_.root();
        for (char b : bits) {
            const auto& n = tree_.node(w.node);
            switch (n.kind) {
                case Tree::Kind::leaf:
                case Tree::Kind::step:
                    if (b != '0') return Walk{false, false, 0};
                    if (n.kind == Tree::Kind::step) w.node = n.first;
                    break;
                case Tree::Kind::branch:
                    if (b == '1') {
                        w.node = n.second;
                    } else {
                        w.node = n.first;
                        w.on_largest = false;
                    }
                    break;
            }
        }
        return w;
    }

    Tree tree_;
    std::size_t length_ = 0;
    std::vector<std::uint8_t> has_branch_;
};

}  // namespace

Problem tree_to_problem(const Tree& t) { return std::make_shared<TreePathProblem>(t); }

}  // namespace totp
