#include "graver/oracles.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>

#include "graver/errors.hpp"

namespace graver::oracles {

namespace {

class FiberSearch {
public:
    FiberSearch(const DegreeSequence& d, const Graph& graph, const Capacities& caps, std::uint64_t guard)
        : graph_(graph), guard_(guard), residual_(d.degrees), slack_(graph.vertex_count(), 0),
          x_(graph.edge_count(), 0), bound_(graph.edge_count()) {
        for (EdgeId e = 0; e < graph.edge_count(); ++e) {
            const Edge& ed = graph.edge(e);
            const std::int64_t c = std::min<std::int64_t>(caps.cap(e), std::min(residual_[ed.u], residual_[ed.v]));
            bound_[e] = c;
            slack_[ed.u] += c;
            slack_[ed.v] += c;
        }
    }

    std::vector<EdgeVector> run() {
        for (std::size_t v = 0; v < residual_.size(); ++v) {
            if (residual_[v] > slack_[v]) return {};
        }
        descend(0);
        return std::move(out_);
    }

private:
    void descend(EdgeId e) {
        if (++nodes_ > guard_) {
            throw GuardError("fiber enumeration exceeded the guard of " + std::to_string(guard_) + " search nodes");
        }
        if (e == graph_.edge_count()) {
            out_.push_back(EdgeVector::from_dense(x_));
            return;
        }
        const Edge& ed = graph_.edge(e);
        slack_[ed.u] -= bound_[e];
        slack_[ed.v] -= bound_[e];
        const std::int64_t hi = std::min({bound_[e], residual_[ed.u], residual_[ed.v]});
        // The remaining edges must be able to cover what this one leaves.
        const std::int64_t lo = std::max<std::int64_t>({0, residual_[ed.u] - slack_[ed.u], residual_[ed.v] - slack_[ed.v]});
        for (std::int64_t k = lo; k <= hi; ++k) {
            x_[e] = static_cast<std::int32_t>(k);
            residual_[ed.u] -= k;
            residual_[ed.v] -= k;
            descend(e + 1);
            residual_[ed.u] += k;
            residual_[ed.v] += k;
        }
        x_[e] = 0;
        slack_[ed.u] += bound_[e];
        slack_[ed.v] += bound_[e];
    }

    const Graph& graph_;
    std::uint64_t guard_;
    std::uint64_t nodes_ = 0;
    std::vector<std::int64_t> residual_;
    std::vector<std::int64_t> slack_;
    std::vector<std::int32_t> x_;
    std::vector<std::int64_t> bound_;
    std::vector<EdgeVector> out_;
};

struct MoveHash {
    std::size_t operator()(const Move& z) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (const auto& entry : z.entries()) {
            h = (h ^ entry.edge) * 1099511628211ull;
            h = (h ^ static_cast<std::uint32_t>(entry.value)) * 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), components_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t a) {
        while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
        return a;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent_[a] = b;
            --components_;
        }
    }
    std::size_t components() const { return components_; }

private:
    std::vector<std::size_t> parent_;
    std::size_t components_;
};

using FiberIndex = std::unordered_map<EdgeVector, std::size_t, EdgeVectorHash>;

FiberIndex index_fiber(std::span<const EdgeVector> fiber) {
    FiberIndex index;
    for (std::size_t i = 0; i < fiber.size(); ++i) index.emplace(fiber[i], i);
    return index;
}

}  // namespace

std::vector<EdgeVector> enumerate_fiber(const DegreeSequence& d, const Graph& graph, const Capacities& caps,
                                        std::uint64_t guard) {
    if (d.size() != graph.vertex_count()) {
        throw InputError("degree sequence has " + std::to_string(d.size()) + " entries, graph has " +
                         std::to_string(graph.vertex_count()) + " vertices");
    }
    if (d.sum() % 2 != 0) throw InputError("degree sequence has odd sum");
    return FiberSearch(d, graph, caps, guard).run();
}

bool is_primitive_bruteforce(const Move& z, const Graph& graph, std::uint64_t guard) {
    if (z.is_zero()) return false;
    if (!is_move(graph, z)) throw PreconditionError("is_primitive_bruteforce needs a move");

    const auto entries = z.entries();
    std::uint64_t product = 1;
    for (const auto& entry : entries) {
        product *= static_cast<std::uint64_t>(std::abs(entry.value)) + 1;
        if (product > guard) throw GuardError("conformal search space exceeds the guard");
    }

    // Position after which each vertex has no further support edge.
    std::vector<std::size_t> last(graph.vertex_count(), 0);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const Edge& e = graph.edge(entries[k].edge);
        last[e.u] = k;
        last[e.v] = k;
    }

    std::vector<std::int64_t> degree(graph.vertex_count(), 0);
    std::vector<std::int32_t> part(entries.size(), 0);
    bool found = false;

    // z' and z - z' are the same split; bounding the first entry by half of
    // |z_e0| visits one of each pair.
    auto search = [&](auto&& self, std::size_t k) -> void {
        if (found) return;
        if (k == entries.size()) {
            bool zero = true;
            bool full = true;
            for (std::size_t i = 0; i < entries.size(); ++i) {
                zero = zero && part[i] == 0;
                full = full && part[i] == entries[i].value;
            }
            found = !zero && !full;
            return;
        }
        const Edge& e = graph.edge(entries[k].edge);
        const std::int32_t mag = std::abs(entries[k].value);
        const std::int32_t sign = entries[k].value > 0 ? 1 : -1;
        const std::int32_t top = k == 0 ? mag / 2 : mag;
        for (std::int32_t m = 0; m <= top && !found; ++m) {
            const std::int32_t v = sign * m;
            part[k] = v;
            degree[e.u] += v;
            degree[e.v] += v;
            const bool closed_ok = (last[e.u] != k || degree[e.u] == 0) && (last[e.v] != k || degree[e.v] == 0);
            if (closed_ok) self(self, k + 1);
            degree[e.u] -= v;
            degree[e.v] -= v;
        }
        part[k] = 0;
    };
    search(search, 0);
    return !found;
}

bool is_primitive_walk_bruteforce(const ClosedWalk& w, const Graph& graph) {
    if (!has_disjoint_signed_support(w)) return false;
    return is_primitive_bruteforce(walk_to_move(graph, w), graph);
}

Connectivity connectivity_check(std::span<const EdgeVector> fiber, std::span<const Move> moves,
                                const Capacities& caps) {
    const FiberIndex index = index_fiber(fiber);
    DisjointSets sets(fiber.size());
    for (std::size_t i = 0; i < fiber.size(); ++i) {
        for (const Move& z : moves) {
            for (const Move& signed_z : {z, -z}) {
                if (auto y = apply_move(fiber[i], signed_z, caps)) {
                    if (auto it = index.find(*y); it != index.end()) sets.unite(i, it->second);
                }
            }
        }
    }
    return {sets.components() <= 1, sets.components()};
}

SaturationResult saturated_connectivity(std::span<const EdgeVector> fiber, const Graph& graph, const Capacities& caps,
                                        const GenMode& mode, Rng& rng, std::uint64_t patience) {
    const FiberIndex index = index_fiber(fiber);
    std::unordered_map<Move, bool, MoveHash> seen;
    std::set<std::pair<std::size_t, std::size_t>> fiber_edges;
    SaturationResult result;
    std::uint64_t stale = 0;

    while (stale < patience) {
        ++result.draws;
        auto generated = sample_graver_element(graph, mode, rng);
        if (!generated) {
            ++stale;
            continue;
        }
        Move z = generated->move;
        if (z.entries().front().value < 0) z = -z;
        if (!seen.emplace(z, true).second) {
            ++stale;
            continue;
        }
        bool grew = false;
        for (std::size_t i = 0; i < fiber.size(); ++i) {
            for (const Move& signed_z : {z, -z}) {
                auto y = apply_move(fiber[i], signed_z, caps);
                if (!y) continue;
                auto it = index.find(*y);
                if (it == index.end()) continue;
                grew = fiber_edges.emplace(std::min(i, it->second), std::max(i, it->second)).second || grew;
            }
        }
        result.moves.push_back(std::move(z));
        stale = grew ? 0 : stale + 1;
    }
    result.connectivity = connectivity_check(fiber, result.moves, caps);
    return result;
}

std::vector<Move> four_cycle_moves(const Graph& graph) {
    std::vector<Move> moves;
    const auto n = static_cast<Vertex>(graph.vertex_count());
    auto try_cycle = [&](Vertex a, Vertex b, Vertex c, Vertex d) {
        const auto ab = graph.find_edge(a, b);
        const auto bc = graph.find_edge(b, c);
        const auto cd = graph.find_edge(c, d);
        const auto da = graph.find_edge(d, a);
        if (!ab || !bc || !cd || !da) return;
        Move z;
        z.set(*ab, 1);
        z.set(*bc, -1);
        z.set(*cd, 1);
        z.set(*da, -1);
        moves.push_back(std::move(z));
    };
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) {
            for (Vertex c = b + 1; c < n; ++c) {
                for (Vertex d = c + 1; d < n; ++d) {
                    try_cycle(a, b, c, d);
                    try_cycle(a, b, d, c);
                    try_cycle(a, c, b, d);
                }
            }
        }
    }
    return moves;
}

std::uint64_t triangle_count_bruteforce(const Graph& graph, const EdgeVector& x) {
    const auto n = static_cast<Vertex>(graph.vertex_count());
    auto present = [&](Vertex a, Vertex b) {
        const auto e = graph.find_edge(a, b);
        return e && x.get(*e) > 0;
    };
    std::uint64_t count = 0;
    for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) {
            if (!present(a, b)) continue;
            for (Vertex c = b + 1; c < n; ++c) {
                if (present(a, c) && present(b, c)) ++count;
            }
        }
    }
    return count;
}

}  // namespace graver::oracles
