#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "graver/graph_model.hpp"

namespace graver {

/// Even closed walk (i_1, ..., i_2p), implicitly closed back to i_1.
///
/// Construction checks length (even, >= 4) and that cyclically consecutive
/// vertices differ. Edge membership is checked against a graph by the
/// graph-taking constructor and by walk_to_move.
class ClosedWalk {
public:
    /// Throws InputError on odd length, length < 4 or a repeated consecutive vertex.
    explicit ClosedWalk(std::vector<Vertex> vertices);

    /// As above, and throws InvalidEdgeError when a step is not an edge of `graph`.
    ClosedWalk(const Graph& graph, std::vector<Vertex> vertices);

    std::span<const Vertex> vertices() const noexcept { return vertices_; }
    std::size_t length() const noexcept { return vertices_.size(); }
    Vertex at(std::size_t pos) const { return vertices_[pos % vertices_.size()]; }

    /// #_w(i): occurrences of i among (i_1, ..., i_2p).
    std::size_t vertex_multiplicity(Vertex i) const;

    /// Number of distinct vertices, |V(G_w)|.
    std::size_t distinct_vertices() const;

    /// Cyclic shift by `offset` positions. Odd offsets negate the induced move.
    ClosedWalk rotated(std::size_t offset) const;
    ClosedWalk reversed() const;

    /// 1-based comma-separated form, e.g. "1,2,3,1,4,5".
    std::string to_string() const;
    /// Parses the to_string form. Throws InputError.
    static ClosedWalk parse(const std::string& text);

    friend bool operator==(const ClosedWalk&, const ClosedWalk&) = default;

private:
    std::vector<Vertex> vertices_;
};

/// Primitivity test on the vertex sequence: every vertex is visited once or
/// twice, and at every twice-visited vertex the two closed sub-walks are odd
/// and meet only in that vertex.
bool is_primitive(const ClosedWalk& w);

/// Move with entry (#odd-position traversals) - (#even-position traversals)
/// per edge; positions are 1-based, so the first step is positive.
/// Throws InvalidEdgeError if a step is not an edge of `graph`.
Move walk_to_move(const Graph& graph, const ClosedWalk& w);

/// Every entry in {-1, 0, +1}.
bool is_square_free(const Move& z);

/// True when no edge is traversed at both an odd and an even position, i.e.
/// the positive and negative parts of the walk's binomial share no edge.
bool has_disjoint_signed_support(const ClosedWalk& w);

}  // namespace graver
