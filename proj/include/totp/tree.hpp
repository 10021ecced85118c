#pragma once

// Explicit computation trees of a nondeterministic machine.
//
// A node is a leaf (a halting path), a step (deterministic move, one child)
// or a branch (nondeterministic move, two children). Nodes are stored in an
// arena in post-order: every child index is smaller than its parent's.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "totp/bits.hpp"
#include "totp/problem.hpp"

namespace totp {

class Tree {
public:
    enum class Kind : std::uint8_t { leaf, step, branch };

    struct Node {
        Kind kind = Kind::leaf;
        std::uint32_t first = 0;   // only child of a step, left child of a branch
        std::uint32_t second = 0;  // right child of a branch

        friend bool operator==(const Node&, const Node&) = default;
    };

    static Tree leaf();
    static Tree step(const Tree& child);
    static Tree branch(const Tree& left, const Tree& right);

    /// Adopts an arena. Throws UsageError unless nodes is a well-formed post-order tree rooted at the last node.
    static Tree from_nodes(std::vector<Node> nodes);

    std::span<const Node> nodes() const { return nodes_; }
    std::uint32_t root() const { return static_cast<std::uint32_t>(nodes_.size() - 1); }
    const Node& node(std::uint32_t i) const { return nodes_[i]; }
    std::size_t size() const { return nodes_.size(); }

    /// Longest root-to-leaf path, in edges.
    std::size_t height() const;

    friend bool operator==(const Tree&, const Tree&) = default;

private:
    Tree() = default;
    std::vector<Node> nodes_;
};

/// Number of root-to-leaf paths.
Count tree_total(const Tree& t);
/// tree_total - 1.
Count tree_tot(const Tree& t);

/// Problem whose witnesses are the encoded root-to-leaf paths of t, except
/// the lexicographically largest one.
///
/// Encoding: one bit per edge, padded to t.height(). A branch contributes the
/// chosen side (0 left, 1 right); a step contributes a forced 0; a path that
/// reaches its leaf early is padded with 0s. The oracle answers by walking t.
Problem tree_to_problem(const Tree& t);

}  // namespace totp
