#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "graver/graph_model.hpp"
#include "graver/walks.hpp"

namespace testing {

using namespace graver;

/// Walk from 1-based labels.
inline ClosedWalk walk1(std::initializer_list<Vertex> labels) {
    std::vector<Vertex> v;
    for (Vertex x : labels) v.push_back(x - 1);
    return ClosedWalk(std::move(v));
}

/// Graph from 1-based pairs.
inline Graph graph1(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> pairs) {
    std::vector<Edge> edges;
    for (auto [a, b] : pairs) edges.push_back(make_edge(a - 1, b - 1));
    return Graph(n, edges);
}

/// Indicator vector from 1-based pairs.
inline EdgeVector edges1(const Graph& g, std::initializer_list<std::pair<Vertex, Vertex>> pairs) {
    std::vector<Edge> edges;
    for (auto [a, b] : pairs) edges.push_back(make_edge(a - 1, b - 1));
    return EdgeVector::indicator(g, edges);
}

/// Move from 1-based (a, b, value) triples.
inline Move move1(const Graph& g, std::initializer_list<std::tuple<Vertex, Vertex, int>> triples) {
    std::vector<SignedPair> pairs;
    for (auto [a, b, v] : triples) pairs.push_back({a - 1, b - 1, v});
    return move_from_pairs(g, pairs);
}

}  // namespace testing
