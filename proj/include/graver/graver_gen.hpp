#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "graver/graph_model.hpp"
#include "graver/rng.hpp"
#include "graver/walks.hpp"

namespace graver {

/// Weighted tree blueprint of a primitive walk: one node per cycle of the
/// walk's cactus, weight = cycle length, tree edges = cycles sharing a vertex.
class WeightedTree {
public:
    using Node = std::size_t;
    static constexpr Node kNoParent = static_cast<Node>(-1);

    Node add_root(int weight);
    Node add_child(Node parent, int weight);
    /// Drops every node with id >= `node_count`. Nodes must have been added
    /// parents-first, which add_root/add_child guarantee.
    void truncate(std::size_t node_count);

    std::size_t size() const noexcept { return weight_.size(); }
    std::size_t edge_count() const noexcept { return size() == 0 ? 0 : size() - 1; }
    Node root() const noexcept { return 0; }
    Node parent(Node v) const { return parent_[v]; }
    const std::vector<Node>& children(Node v) const { return children_[v]; }
    int weight(Node v) const { return weight_[v]; }
    void set_weight(Node v, int weight) { weight_[v] = weight; }
    std::size_t degree(Node v) const { return children_[v].size() + (parent_[v] == kNoParent ? 0 : 1); }
    bool is_leaf(Node v) const { return degree(v) <= 1 && size() > 1; }

    /// Sum of weights minus tree edges: vertices needed to realize the cactus.
    long long vertex_budget() const;

    /// deg(v) <= weight(v) and deg(v) == weight(v) (mod 2) at every node.
    bool satisfies_degree_parity() const;
    /// vertex_budget() <= n.
    bool fits(std::size_t n) const { return vertex_budget() <= static_cast<long long>(n); }

    /// Single node of weight 2: a walk of length two, whose move is zero.
    bool is_degenerate() const { return size() == 1 && weight_[0] == 2; }

    /// Unrooted, weight-aware canonical string; equal iff the trees are isomorphic.
    std::string canonical_form() const;

    std::vector<int> sorted_weights() const;

private:
    std::vector<Node> parent_;
    std::vector<std::vector<Node>> children_;
    std::vector<int> weight_;
};

struct GenMode {
    bool square_free = true;
    /// Proposals tried per sample_graver_element call on a non-complete graph.
    int max_attempts = 100;

    int min_weight() const { return square_free ? 3 : 2; }
    /// Smallest vertex budget accepted by build_weighted_tree.
    std::size_t min_budget() const { return square_free ? 4 : 2; }
};

/// Hooks for inspecting the generator's trees (used by tests and diagnostics).
struct TreeObserver {
    /// After each committed growth iteration of the tree builder.
    std::function<void(const WeightedTree&)> on_growth;
    /// On every finished tree, including those later rejected.
    std::function<void(const WeightedTree&)> on_output;
};

/// Random weighted tree satisfying the degree/parity condition and the
/// vertex budget `n`. Throws ConfigError when n < mode.min_budget().
WeightedTree build_weighted_tree(std::size_t n, const GenMode& mode, Rng& rng, const TreeObserver* observer = nullptr);

/// Realizes `tree` as a closed walk on K_n (vertex labels 0..n-1).
/// Throws PreconditionError if the tree is degenerate, breaks the
/// degree/parity condition or exceeds the budget.
ClosedWalk tree_to_walk(const WeightedTree& tree, std::size_t n, Rng& rng);

/// Cycle structure of a primitive walk. Throws PreconditionError otherwise.
WeightedTree tree_from_walk(const ClosedWalk& w);

struct GeneratedMove {
    ClosedWalk walk;
    Move move;
    /// Generator calls consumed, including rejected ones.
    int attempts;
};

/// One Graver element of `graph`: a primitive walk generated on the complete
/// graph over the same vertices and kept only if all of its edges lie in
/// `graph`. Returns nullopt (exhausted) after mode.max_attempts rejections,
/// or immediately when the graph is below the minimum vertex budget.
std::optional<GeneratedMove> sample_graver_element(const Graph& graph, const GenMode& mode, Rng& rng,
                                                   const TreeObserver* observer = nullptr);

}  // namespace graver
