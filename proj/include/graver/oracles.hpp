#pragma once

// Brute-force ground truth for small instances.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "graver/graph_model.hpp"
#include "graver/graver_gen.hpp"
#include "graver/rng.hpp"
#include "graver/walks.hpp"

namespace graver::oracles {

inline constexpr std::uint64_t kDefaultGuard = 1'000'000'000;

/// Every x with A x = d and 0 <= x <= caps, in lexicographic order of the
/// dense edge vectors. Throws GuardError after `guard` search nodes.
std::vector<EdgeVector> enumerate_fiber(const DegreeSequence& d, const Graph& graph, const Capacities& caps,
                                        std::uint64_t guard = kDefaultGuard);

/// True iff z is nonzero, a move, and admits no conformal split z = z' + (z - z')
/// into two nonzero moves. Throws GuardError when prod(|z_e| + 1) > guard.
bool is_primitive_bruteforce(const Move& z, const Graph& graph, std::uint64_t guard = kDefaultGuard);

/// Primitivity of the walk's binomial: the two signed parts share no edge and
/// the induced move is primitive.
bool is_primitive_walk_bruteforce(const ClosedWalk& w, const Graph& graph);

struct Connectivity {
    bool connected = false;
    std::size_t components = 0;
};

/// Components of the graph on `fiber` linking x and x +- z for every move z.
Connectivity connectivity_check(std::span<const EdgeVector> fiber, std::span<const Move> moves,
                                const Capacities& caps);

struct SaturationResult {
    Connectivity connectivity;
    std::vector<Move> moves;  // distinct moves drawn
    std::uint64_t draws = 0;
};

/// Draws Graver elements until `patience` consecutive draws add no new edge
/// to the fiber graph, then reports its connectivity under the moves drawn.
SaturationResult saturated_connectivity(std::span<const EdgeVector> fiber, const Graph& graph, const Capacities& caps,
                                        const GenMode& mode, Rng& rng, std::uint64_t patience = 1000);

/// All 4-cycle moves of `graph` (one sign per cycle).
std::vector<Move> four_cycle_moves(const Graph& graph);

/// Triangles by checking every vertex triple.
std::uint64_t triangle_count_bruteforce(const Graph& graph, const EdgeVector& x);

}  // namespace graver::oracles
