#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "graver/graph_model.hpp"

namespace graver::io {

struct EdgeListOptions {
    /// Drop `i i` lines instead of rejecting them.
    bool drop_loops = false;
    /// Vertex count; when unset, the largest label seen.
    std::optional<std::size_t> vertex_count;
};

/// Parsed edge list: the pairs in file order (0-based) plus loops that were dropped.
struct EdgeList {
    std::size_t vertex_count = 0;
    std::vector<Edge> edges;
    std::vector<Vertex> dropped_loops;
};

/// One `i j` pair per line, 1-based, whitespace separated; `#` starts a comment.
/// Throws InputError on malformed lines, loops (unless dropped) and duplicates.
EdgeList parse_edge_list(std::istream& in, const EdgeListOptions& options = {});
EdgeList read_edge_list(const std::filesystem::path& path, const EdgeListOptions& options = {});

/// Graph on `list.vertex_count` vertices with exactly the listed edges.
Graph to_graph(const EdgeList& list);

/// Indicator fiber point of `list` inside `underlying`. Throws InvalidEdgeError
/// when the list uses a pair missing from `underlying`.
EdgeVector to_edge_vector(const EdgeList& list, const Graph& underlying);

/// Capacity file: `i j cap` per line; every edge of `graph` must be listed once.
Capacities read_capacities(const std::filesystem::path& path, const Graph& graph);

/// Comma-separated degrees on one line (whitespace tolerated).
DegreeSequence parse_degree_sequence(const std::string& text);
DegreeSequence read_degree_sequence(const std::filesystem::path& path);
std::string format_degree_sequence(const DegreeSequence& d);

/// Sorted `i-j:w` tokens separated by single spaces (1-based).
std::string format_fiber_point(const Graph& graph, const EdgeVector& x);

std::string read_file(const std::filesystem::path& path);

}  // namespace graver::io
