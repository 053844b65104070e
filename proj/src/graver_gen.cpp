#include "graver/graver_gen.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "graver/errors.hpp"

namespace graver {

// ---------------------------------------------------------------------------
// WeightedTree

WeightedTree::Node WeightedTree::add_root(int weight) {
    if (!weight_.empty()) throw PreconditionError("tree already has a root");
    parent_.push_back(kNoParent);
    children_.emplace_back();
    weight_.push_back(weight);
    return 0;
}

WeightedTree::Node WeightedTree::add_child(Node parent, int weight) {
    const Node id = weight_.size();
    parent_.push_back(parent);
    children_.emplace_back();
    weight_.push_back(weight);
    children_[parent].push_back(id);
    return id;
}

void WeightedTree::truncate(std::size_t node_count) {
    for (Node v = node_count; v < size(); ++v) {
        auto& siblings = children_[parent_[v]];
        siblings.erase(std::remove(siblings.begin(), siblings.end(), v), siblings.end());
    }
    parent_.resize(node_count);
    children_.resize(node_count);
    weight_.resize(node_count);
}

long long WeightedTree::vertex_budget() const {
    long long s = 0;
    for (int w : weight_) s += w;
    return s - static_cast<long long>(edge_count());
}

bool WeightedTree::satisfies_degree_parity() const {
    for (Node v = 0; v < size(); ++v) {
        const auto deg = static_cast<int>(degree(v));
        if (deg > weight_[v] || (weight_[v] - deg) % 2 != 0) return false;
    }
    return true;
}

std::vector<int> WeightedTree::sorted_weights() const {
    std::vector<int> w = weight_;
    std::sort(w.begin(), w.end());
    return w;
}

std::string WeightedTree::canonical_form() const {
    if (size() == 0) return "()";
    // Undirected adjacency, then encode rooted at each center.
    std::vector<std::vector<Node>> adj(size());
    for (Node v = 1; v < size(); ++v) {
        adj[v].push_back(parent_[v]);
        adj[parent_[v]].push_back(v);
    }
    // Peel leaves to find the center(s).
    std::vector<std::size_t> deg(size());
    std::vector<Node> layer;
    for (Node v = 0; v < size(); ++v) {
        deg[v] = adj[v].size();
        if (deg[v] <= 1) layer.push_back(v);
    }
    std::size_t remaining = size();
    while (remaining > 2) {
        remaining -= layer.size();
        std::vector<Node> next;
        for (Node v : layer) {
            for (Node u : adj[v]) {
                if (--deg[u] == 1) next.push_back(u);
            }
        }
        layer = std::move(next);
    }

    std::function<std::string(Node, Node)> encode = [&](Node v, Node from) {
        std::vector<std::string> parts;
        for (Node u : adj[v]) {
            if (u != from) parts.push_back(encode(u, v));
        }
        std::sort(parts.begin(), parts.end());
        std::string s = "(" + std::to_string(weight_[v]);
        for (const auto& p : parts) s += p;
        return s + ")";
    };
    std::string best;
    for (Node c : layer) {
        std::string s = encode(c, kNoParent);
        if (best.empty() || s < best) best = std::move(s);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Tree builder

namespace {

/// Number of children a node may receive so that its final degree matches
/// its weight in parity and does not exceed it. Non-root nodes also count
/// the edge to their parent.
std::int64_t draw_child_count(const WeightedTree& tree, WeightedTree::Node v, Rng& rng) {
    const int w = tree.weight(v);
    const int max_children = tree.parent(v) == WeightedTree::kNoParent ? w : w - 1;
    // Legal values: max_children, max_children - 2, ..., down to 0 or 1.
    const std::int64_t choices = max_children / 2 + 1;
    return max_children - 2 * rng.uniform(0, choices - 1);
}

/// Moves a weight by +-1 (fair coin for the first direction, the other on
/// failure) keeping it >= min_weight and the budget within n.
bool adjust_parity(WeightedTree& tree, WeightedTree::Node v, std::size_t n, int min_weight, Rng& rng) {
    const int original = tree.weight(v);
    const int first = rng.coin() ? -1 : 1;
    for (int dir : {first, -first}) {
        const int candidate = original + dir;
        if (candidate < min_weight) continue;
        tree.set_weight(v, candidate);
        if (tree.fits(n)) return true;
    }
    tree.set_weight(v, original);
    return false;
}

}  // namespace

WeightedTree build_weighted_tree(std::size_t n, const GenMode& mode, Rng& rng, const TreeObserver* observer) {
    if (n < mode.min_budget()) {
        throw ConfigError("vertex budget " + std::to_string(n) + " is too small; need at least " +
                          std::to_string(mode.min_budget()) + (mode.square_free ? " in square-free mode" : ""));
    }
    const int min_weight = mode.min_weight();
    const auto budget = static_cast<long long>(n);

    for (;;) {
        WeightedTree tree;
        tree.add_root(static_cast<int>(rng.uniform(min_weight, budget)));

        std::vector<WeightedTree::Node> frontier{tree.root()};
        for (;;) {
            const std::size_t committed = tree.size();

            std::vector<WeightedTree::Node> fresh;
            for (auto v : frontier) {
                const auto count = draw_child_count(tree, v, rng);
                for (std::int64_t k = 0; k < count; ++k) fresh.push_back(tree.add_child(v, 0));
            }
            if (fresh.empty()) break;

            // New children carry weight 0 here, so only their edges count.
            const long long max_weight = budget - tree.vertex_budget();
            if (max_weight < min_weight) {
                tree.truncate(committed);
                break;
            }
            for (auto v : fresh) tree.set_weight(v, static_cast<int>(rng.uniform(min_weight, max_weight)));
            if (!tree.fits(n)) {
                // Roll back the whole iteration, weights included.
                tree.truncate(committed);
                break;
            }
            if (observer && observer->on_growth) observer->on_growth(tree);
            frontier = std::move(fresh);
        }

        bool ok = true;
        if (tree.size() == 1) {
            if (tree.weight(tree.root()) % 2 != 0) ok = adjust_parity(tree, tree.root(), n, min_weight, rng);
        } else {
            for (WeightedTree::Node v = 1; v < tree.size() && ok; ++v) {
                if (tree.children(v).empty() && tree.weight(v) % 2 == 0) {
                    ok = adjust_parity(tree, v, n, min_weight, rng);
                }
            }
        }
        // Only reachable outside square-free mode: a weight-2 leaf with no
        // budget left for 3. Draw a fresh tree.
        if (!ok) continue;

        if (observer && observer->on_output) observer->on_output(tree);
        return tree;
    }
}

// ---------------------------------------------------------------------------
// Tree -> walk

namespace {

struct CactusLayout {
    std::vector<std::vector<Vertex>> cycle;           // per tree node, in walk order
    std::vector<std::size_t> child_at;                // per graph vertex: node attached there
};

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

void emit_cycle(const CactusLayout& layout, WeightedTree::Node node, bool is_root, std::vector<Vertex>& out) {
    const auto& cyc = layout.cycle[node];
    // Cycles are stored starting at their shared vertex (or the walk's start for the root).
    for (std::size_t k = 0; k < cyc.size(); ++k) {
        const Vertex v = cyc[k];
        if (k == 0 && !is_root) continue;
        out.push_back(v);
        const std::size_t child = layout.child_at[v];
        if (child != kNone && child != node) {
            emit_cycle(layout, child, false, out);
            out.push_back(v);
        }
    }
}

}  // namespace

ClosedWalk tree_to_walk(const WeightedTree& tree, std::size_t n, Rng& rng) {
    if (tree.size() == 0 || tree.is_degenerate()) throw PreconditionError("tree has no non-zero walk");
    if (!tree.satisfies_degree_parity()) throw PreconditionError("tree violates the degree/parity condition");
    if (!tree.fits(n)) throw PreconditionError("tree exceeds the vertex budget");

    // Vertices never assigned so far, drawn without replacement.
    std::vector<Vertex> unused(n);
    for (Vertex v = 0; v < n; ++v) unused[v] = v;
    auto draw_fresh = [&]() {
        const std::size_t i = rng.index(unused.size());
        const Vertex v = unused[i];
        unused[i] = unused.back();
        unused.pop_back();
        return v;
    };

    CactusLayout layout;
    layout.cycle.resize(tree.size());
    layout.child_at.assign(n, kNone);
    // Per node: its vertices still free to host a child cycle.
    std::vector<std::vector<Vertex>> free_slots(tree.size());

    std::deque<WeightedTree::Node> queue{tree.root()};
    while (!queue.empty()) {
        const auto node = queue.front();
        queue.pop_front();
        auto& cyc = layout.cycle[node];
        const auto parent = tree.parent(node);
        if (parent != WeightedTree::kNoParent) {
            auto& slots = free_slots[parent];
            const std::size_t i = rng.index(slots.size());
            const Vertex shared = slots[i];
            slots[i] = slots.back();
            slots.pop_back();
            layout.child_at[shared] = node;
            cyc.push_back(shared);
        }
        while (cyc.size() < static_cast<std::size_t>(tree.weight(node))) {
            const Vertex v = draw_fresh();
            cyc.push_back(v);
            free_slots[node].push_back(v);
        }
        // Random cyclic order, then rotate so the shared vertex leads.
        rng.shuffle(std::span<Vertex>(cyc));
        if (parent != WeightedTree::kNoParent) {
            const Vertex shared = [&] {
                for (Vertex v : cyc) {
                    if (layout.child_at[v] == node) return v;
                }
                return cyc.front();
            }();
            std::rotate(cyc.begin(), std::find(cyc.begin(), cyc.end(), shared), cyc.end());
        }
        for (auto c : tree.children(node)) queue.push_back(c);
    }

    std::vector<Vertex> walk;
    walk.reserve(static_cast<std::size_t>(tree.vertex_budget() + static_cast<long long>(tree.edge_count())));
    emit_cycle(layout, tree.root(), true, walk);
    return ClosedWalk(std::move(walk));
}

// ---------------------------------------------------------------------------
// Walk -> tree

WeightedTree tree_from_walk(const ClosedWalk& w) {
    if (!is_primitive(w)) throw PreconditionError("tree_from_walk needs a primitive walk, got " + w.to_string());

    // Peel cycles off a stack: when a vertex recurs, everything above its
    // first occurrence closes one cycle of the cactus.
    std::vector<std::vector<Vertex>> cycles;
    std::map<Vertex, std::size_t> closed_at;  // vertex -> inner cycle closed at it
    std::vector<Vertex> stack;
    for (Vertex v : w.vertices()) {
        auto it = std::find(stack.begin(), stack.end(), v);
        if (it == stack.end()) {
            stack.push_back(v);
            continue;
        }
        cycles.emplace_back(it, stack.end());
        closed_at[v] = cycles.size() - 1;
        stack.erase(it + 1, stack.end());
    }
    cycles.push_back(stack);
    const std::size_t outer = cycles.size() - 1;

    // Each twice-visited vertex links the cycle closed at it with the cycle
    // that still holds it.
    std::vector<std::vector<std::size_t>> adj(cycles.size());
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        for (Vertex v : cycles[c]) {
            auto it = closed_at.find(v);
            if (it != closed_at.end() && it->second != c) {
                adj[c].push_back(it->second);
                adj[it->second].push_back(c);
            }
        }
    }

    WeightedTree tree;
    std::vector<WeightedTree::Node> node_of(cycles.size(), WeightedTree::kNoParent);
    node_of[outer] = tree.add_root(static_cast<int>(cycles[outer].size()));
    std::deque<std::size_t> queue{outer};
    while (!queue.empty()) {
        const auto c = queue.front();
        queue.pop_front();
        for (auto d : adj[c]) {
            if (node_of[d] != WeightedTree::kNoParent) continue;
            node_of[d] = tree.add_child(node_of[c], static_cast<int>(cycles[d].size()));
            queue.push_back(d);
        }
    }
    return tree;
}

// ---------------------------------------------------------------------------

std::optional<GeneratedMove> sample_graver_element(const Graph& graph, const GenMode& mode, Rng& rng,
                                                   const TreeObserver* observer) {
    if (mode.max_attempts < 1) throw ConfigError("max_attempts must be >= 1");
    const std::size_t n = graph.vertex_count();
    if (n < mode.min_budget()) return std::nullopt;

    for (int attempt = 1; attempt <= mode.max_attempts; ++attempt) {
        const WeightedTree tree = build_weighted_tree(n, mode, rng, observer);
        if (tree.is_degenerate()) continue;
        ClosedWalk walk = tree_to_walk(tree, n, rng);
        bool inside = true;
        for (std::size_t l = 0; l < walk.length() && inside; ++l) {
            inside = graph.find_edge(walk.at(l), walk.at(l + 1)).has_value();
        }
        if (!inside) continue;
        Move move = walk_to_move(graph, walk);
        return GeneratedMove{std::move(walk), std::move(move), attempt};
    }
    return std::nullopt;
}

}  // namespace graver
