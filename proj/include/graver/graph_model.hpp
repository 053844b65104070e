#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace graver {

/// Vertices are 0-based internally; all text I/O is 1-based.
using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

/// Canonical undirected edge, u < v.
struct Edge {
    Vertex u;
    Vertex v;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

struct Incidence {
    Vertex neighbor;
    EdgeId edge;
};

/// Simple undirected graph. Edge ids follow the lexicographic order of the
/// canonical (u, v) pairs. Immutable after construction.
class Graph {
public:
    Graph() = default;

    /// Throws InputError on loops, duplicate edges or out-of-range endpoints.
    Graph(std::size_t vertex_count, std::span<const Edge> edges);

    static Graph complete(std::size_t vertex_count);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const Edge& edge(EdgeId e) const { return edges_[e]; }
    std::span<const Edge> edges() const noexcept { return edges_; }

    std::optional<EdgeId> find_edge(Vertex a, Vertex b) const;

    /// Throws InvalidEdgeError when {a, b} is not an edge.
    EdgeId edge_id(Vertex a, Vertex b) const;

    /// Incident edges sorted by neighbor.
    std::span<const Incidence> incident(Vertex v) const {
        return {incidence_.data() + offsets_[v], incidence_.data() + offsets_[v + 1]};
    }

    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Incidence> incidence_;
};

/// Sparse integer vector over E(G): only nonzero entries, sorted by edge id.
///
/// Used for both fiber points (EdgeVector, entries >= 0) and moves (Move,
/// signed). The sign discipline is enforced by the named wrappers below.
template <typename Derived>
class SparseEdgeValues {
public:
    struct Entry {
        EdgeId edge;
        std::int32_t value;

        friend bool operator==(const Entry&, const Entry&) = default;
    };

    SparseEdgeValues() = default;

    std::int32_t get(EdgeId e) const;
    void set(EdgeId e, std::int32_t value);
    void add(EdgeId e, std::int32_t delta) { set(e, get(e) + delta); }

    std::span<const Entry> entries() const noexcept { return entries_; }
    std::size_t support_size() const noexcept { return entries_.size(); }
    bool is_zero() const noexcept { return entries_.empty(); }

    std::vector<std::int32_t> to_dense(std::size_t edge_count) const;

    friend bool operator==(const SparseEdgeValues&, const SparseEdgeValues&) = default;

protected:
    std::vector<Entry> entries_;
};

/// A point of a fiber: nonnegative weight per edge.
class EdgeVector : public SparseEdgeValues<EdgeVector> {
public:
    EdgeVector() = default;

    /// Throws InputError on a negative entry.
    static EdgeVector from_dense(std::span<const std::int32_t> dense);

    /// Builds an indicator vector (weight 1) on the given edges of `graph`.
    static EdgeVector indicator(const Graph& graph, std::span<const Edge> edges);

    std::int64_t total() const;

    friend bool operator==(const EdgeVector&, const EdgeVector&) = default;
};

struct EdgeVectorHash {
    std::size_t operator()(const EdgeVector& x) const noexcept;
};

/// Signed edge vector. Whether it is actually a move (A z = 0) is checked by is_move.
class Move : public SparseEdgeValues<Move> {
public:
    Move() = default;

    static Move from_dense(std::span<const std::int32_t> dense);

    Move operator-() const;
    friend Move operator+(const Move& a, const Move& b);

    /// Largest absolute entry (0 for the zero move).
    std::int32_t max_abs() const;

    friend bool operator==(const Move&, const Move&) = default;
};

struct DegreeSequence {
    std::vector<std::int64_t> degrees;

    /// Throws InputError when the sum is odd or an entry is negative.
    static DegreeSequence checked(std::vector<std::int64_t> degrees);

    std::size_t size() const noexcept { return degrees.size(); }
    std::int64_t sum() const;

    friend bool operator==(const DegreeSequence&, const DegreeSequence&) = default;
};

/// Per-edge upper bounds n_ij on edge weights.
class Capacities {
public:
    enum class Kind { One, Unbounded, PerEdge };

    static constexpr std::int32_t kUnbounded = std::numeric_limits<std::int32_t>::max();

    static Capacities one() { return Capacities(Kind::One, {}); }
    static Capacities unbounded() { return Capacities(Kind::Unbounded, {}); }
    /// Throws InputError on an entry < 1.
    static Capacities per_edge(std::vector<std::int32_t> caps);

    Kind kind() const noexcept { return kind_; }
    bool is_one() const noexcept { return kind_ == Kind::One; }
    bool is_finite() const noexcept { return kind_ != Kind::Unbounded; }

    std::int32_t cap(EdgeId e) const {
        switch (kind_) {
        case Kind::One: return 1;
        case Kind::Unbounded: return kUnbounded;
        case Kind::PerEdge: return caps_[e];
        }
        return 1;
    }

    /// Dense caps for `edge_count` edges. Throws ConfigError on size mismatch.
    std::vector<std::int32_t> dense(std::size_t edge_count) const;

private:
    Capacities(Kind kind, std::vector<std::int32_t> caps) : kind_(kind), caps_(std::move(caps)) {}

    Kind kind_;
    std::vector<std::int32_t> caps_;
};

/// A move candidate given by vertex pairs (0-based).
struct SignedPair {
    Vertex a;
    Vertex b;
    std::int32_t value;
};

/// d = A x.
DegreeSequence degree_sequence(const Graph& graph, const EdgeVector& x);

/// Signed degree of every vertex, A z.
std::vector<std::int64_t> signed_degrees(const Graph& graph, const Move& z);

bool is_move(const Graph& graph, const Move& z);

/// Throws InvalidEdgeError if a pair is not an edge of `graph`.
bool is_move(const Graph& graph, std::span<const SignedPair> entries);

/// Converts vertex-pair entries to a Move; repeated pairs accumulate.
/// Throws InvalidEdgeError if a pair is not an edge of `graph`.
Move move_from_pairs(const Graph& graph, std::span<const SignedPair> entries);

/// x + z if every entry stays within [0, cap], otherwise nullopt.
std::optional<EdgeVector> apply_move(const EdgeVector& x, const Move& z, const Capacities& caps);

/// Checks 0 <= x_e <= cap_e for every edge.
bool respects_caps(const EdgeVector& x, const Capacities& caps);

}  // namespace graver
