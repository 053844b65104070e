#include "graver/graph_model.hpp"

#include <algorithm>
#include <string>

#include "graver/errors.hpp"

namespace graver {

namespace {

std::string pair_name(Vertex a, Vertex b) {
    return "{" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "}";
}

}  // namespace

Graph::Graph(std::size_t vertex_count, std::span<const Edge> edges) : n_(vertex_count) {
    edges_.reserve(edges.size());
    for (const Edge& raw : edges) {
        if (raw.u >= n_ || raw.v >= n_) {
            throw InputError("edge " + pair_name(raw.u, raw.v) + " has an endpoint outside 1.." + std::to_string(n_));
        }
        if (raw.u == raw.v) throw InputError("self-loop at vertex " + std::to_string(raw.u + 1));
        edges_.push_back(make_edge(raw.u, raw.v));
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
        throw InputError("duplicate edge " + pair_name(dup->u, dup->v));
    }

    std::vector<std::size_t> deg(n_, 0);
    for (const Edge& e : edges_) {
        ++deg[e.u];
        ++deg[e.v];
    }
    offsets_.assign(n_ + 1, 0);
    for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
    incidence_.resize(offsets_[n_]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (EdgeId id = 0; id < edges_.size(); ++id) {
        const Edge& e = edges_[id];
        incidence_[fill[e.u]++] = {e.v, id};
        incidence_[fill[e.v]++] = {e.u, id};
    }
    for (std::size_t v = 0; v < n_; ++v) {
        std::sort(incidence_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                  incidence_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]),
                  [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
    }
}

Graph Graph::complete(std::size_t vertex_count) {
    std::vector<Edge> edges;
    edges.reserve(vertex_count * (vertex_count - (vertex_count > 0 ? 1 : 0)) / 2);
    for (Vertex u = 0; u < vertex_count; ++u) {
        for (Vertex v = u + 1; v < vertex_count; ++v) edges.push_back({u, v});
    }
    return Graph(vertex_count, edges);
}

std::optional<EdgeId> Graph::find_edge(Vertex a, Vertex b) const {
    if (a >= n_ || b >= n_ || a == b) return std::nullopt;
    // Search from the lower-degree endpoint.
    if (degree(a) > degree(b)) std::swap(a, b);
    const auto inc = incident(a);
    auto it = std::lower_bound(inc.begin(), inc.end(), b,
                               [](const Incidence& x, Vertex key) { return x.neighbor < key; });
    if (it == inc.end() || it->neighbor != b) return std::nullopt;
    return it->edge;
}

EdgeId Graph::edge_id(Vertex a, Vertex b) const {
    if (auto e = find_edge(a, b)) return *e;
    throw InvalidEdgeError("pair " + pair_name(a, b) + " is not an edge of the graph");
}

// ---------------------------------------------------------------------------

template <typename Derived>
std::int32_t SparseEdgeValues<Derived>::get(EdgeId e) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), e,
                               [](const Entry& x, EdgeId key) { return x.edge < key; });
    return (it != entries_.end() && it->edge == e) ? it->value : 0;
}

template <typename Derived>
void SparseEdgeValues<Derived>::set(EdgeId e, std::int32_t value) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), e,
                               [](const Entry& x, EdgeId key) { return x.edge < key; });
    const bool present = it != entries_.end() && it->edge == e;
    if (value == 0) {
        if (present) entries_.erase(it);
    } else if (present) {
        it->value = value;
    } else {
        entries_.insert(it, Entry{e, value});
    }
}

template <typename Derived>
std::vector<std::int32_t> SparseEdgeValues<Derived>::to_dense(std::size_t edge_count) const {
    std::vector<std::int32_t> dense(edge_count, 0);
    for (const Entry& x : entries_) dense.at(x.edge) = x.value;
    return dense;
}

template class SparseEdgeValues<EdgeVector>;
template class SparseEdgeValues<Move>;

EdgeVector EdgeVector::from_dense(std::span<const std::int32_t> dense) {
    EdgeVector x;
    for (EdgeId e = 0; e < dense.size(); ++e) {
        if (dense[e] < 0) throw InputError("negative edge weight at edge index " + std::to_string(e));
        if (dense[e] != 0) x.entries_.push_back({e, dense[e]});
    }
    return x;
}

EdgeVector EdgeVector::indicator(const Graph& graph, std::span<const Edge> edges) {
    EdgeVector x;
    for (const Edge& e : edges) x.set(graph.edge_id(e.u, e.v), 1);
    return x;
}

std::int64_t EdgeVector::total() const {
    std::int64_t s = 0;
    for (const Entry& x : entries_) s += x.value;
    return s;
}

std::size_t EdgeVectorHash::operator()(const EdgeVector& x) const noexcept {
    // FNV-1a over (edge, value) pairs.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffu;
            h *= 1099511628211ull;
        }
    };
    for (const auto& entry : x.entries()) {
        mix(entry.edge);
        mix(static_cast<std::uint32_t>(entry.value));
    }
    return static_cast<std::size_t>(h);
}

Move Move::from_dense(std::span<const std::int32_t> dense) {
    Move z;
    for (EdgeId e = 0; e < dense.size(); ++e) {
        if (dense[e] != 0) z.entries_.push_back({e, dense[e]});
    }
    return z;
}

Move Move::operator-() const {
    Move z = *this;
    for (auto& entry : z.entries_) entry.value = -entry.value;
    return z;
}

Move operator+(const Move& a, const Move& b) {
    Move z;
    auto ia = a.entries_.begin();
    auto ib = b.entries_.begin();
    while (ia != a.entries_.end() || ib != b.entries_.end()) {
        if (ib == b.entries_.end() || (ia != a.entries_.end() && ia->edge < ib->edge)) {
            z.entries_.push_back(*ia++);
        } else if (ia == a.entries_.end() || ib->edge < ia->edge) {
            z.entries_.push_back(*ib++);
        } else {
            if (const std::int32_t s = ia->value + ib->value; s != 0) z.entries_.push_back({ia->edge, s});
            ++ia;
            ++ib;
        }
    }
    return z;
}

std::int32_t Move::max_abs() const {
    std::int32_t m = 0;
    for (const auto& entry : entries_) m = std::max(m, entry.value < 0 ? -entry.value : entry.value);
    return m;
}

DegreeSequence DegreeSequence::checked(std::vector<std::int64_t> degrees) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] < 0) throw InputError("negative degree at vertex " + std::to_string(i + 1));
        s += degrees[i];
    }
    if (s % 2 != 0) throw InputError("degree sequence has odd sum " + std::to_string(s));
    return DegreeSequence{std::move(degrees)};
}

std::int64_t DegreeSequence::sum() const {
    std::int64_t s = 0;
    for (auto d : degrees) s += d;
    return s;
}

Capacities Capacities::per_edge(std::vector<std::int32_t> caps) {
    for (std::size_t e = 0; e < caps.size(); ++e) {
        if (caps[e] < 1) throw InputError("capacity below 1 at edge index " + std::to_string(e));
    }
    return Capacities(Kind::PerEdge, std::move(caps));
}

std::vector<std::int32_t> Capacities::dense(std::size_t edge_count) const {
    if (kind_ == Kind::PerEdge) {
        if (caps_.size() != edge_count) {
            throw ConfigError("capacity vector has " + std::to_string(caps_.size()) + " entries, graph has " +
                              std::to_string(edge_count) + " edges");
        }
        return caps_;
    }
    return std::vector<std::int32_t>(edge_count, cap(0));
}

// ---------------------------------------------------------------------------

DegreeSequence degree_sequence(const Graph& graph, const EdgeVector& x) {
    std::vector<std::int64_t> d(graph.vertex_count(), 0);
    for (const auto& entry : x.entries()) {
        const Edge& e = graph.edge(entry.edge);
        d[e.u] += entry.value;
        d[e.v] += entry.value;
    }
    return DegreeSequence{std::move(d)};
}

std::vector<std::int64_t> signed_degrees(const Graph& graph, const Move& z) {
    std::vector<std::int64_t> d(graph.vertex_count(), 0);
    for (const auto& entry : z.entries()) {
        const Edge& e = graph.edge(entry.edge);
        d[e.u] += entry.value;
        d[e.v] += entry.value;
    }
    return d;
}

bool is_move(const Graph& graph, const Move& z) {
    const auto d = signed_degrees(graph, z);
    return std::all_of(d.begin(), d.end(), [](std::int64_t v) { return v == 0; });
}

Move move_from_pairs(const Graph& graph, std::span<const SignedPair> entries) {
    Move z;
    for (const SignedPair& p : entries) z.add(graph.edge_id(p.a, p.b), p.value);
    return z;
}

bool is_move(const Graph& graph, std::span<const SignedPair> entries) {
    return is_move(graph, move_from_pairs(graph, entries));
}

std::optional<EdgeVector> apply_move(const EdgeVector& x, const Move& z, const Capacities& caps) {
    EdgeVector y = x;
    for (const auto& entry : z.entries()) {
        const std::int64_t v = static_cast<std::int64_t>(y.get(entry.edge)) + entry.value;
        if (v < 0 || v > caps.cap(entry.edge)) return std::nullopt;
        y.set(entry.edge, static_cast<std::int32_t>(v));
    }
    return y;
}

bool respects_caps(const EdgeVector& x, const Capacities& caps) {
    return std::all_of(x.entries().begin(), x.entries().end(), [&](const auto& entry) {
        return entry.value >= 0 && entry.value <= caps.cap(entry.edge);
    });
}

}  // namespace graver
