#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "graver/graph_model.hpp"
#include "graver/graver_gen.hpp"
#include "graver/rng.hpp"
#include "graver/statistics.hpp"

namespace graver {

enum class ChainTarget { Uniform };

struct ChainConfig {
    std::uint64_t steps = 0;
    std::uint64_t burn_in = 0;
    std::uint64_t thinning = 1;
    std::uint64_t seed = 0;
    /// square_free is overridden by run_chain: on for Capacities::one(), off otherwise.
    GenMode mode{};
    ChainTarget target = ChainTarget::Uniform;
    /// Count distinct retained states (keeps a hash set of fiber points).
    bool track_distinct = false;

    /// Throws ConfigError unless burn_in < steps and thinning >= 1.
    void validate() const;
    std::uint64_t retained() const { return (steps - burn_in) / thinning; }
};

struct ChainReport {
    std::uint64_t steps = 0;
    std::uint64_t burn_in = 0;
    std::uint64_t thinning = 1;
    std::uint64_t accepted = 0;
    std::uint64_t rejected_infeasible = 0;
    std::uint64_t rejected_exhausted = 0;
    std::uint64_t retained = 0;
    std::optional<std::uint64_t> distinct_states;

    ChainReport& operator+=(const ChainReport& other);
};

enum class StepOutcome { Accepted, Infeasible, Exhausted };

/// Current fiber point of one chain, kept dense with an adjacency bitset
/// mirror of its support for the graph statistics.
class ChainState {
public:
    /// Throws InputError when x0 violates the capacities.
    ChainState(const Graph& graph, const EdgeVector& x0, const Capacities& caps);

    EdgeVector current() const { return EdgeVector::from_dense(x_); }
    std::span<const std::int32_t> dense() const noexcept { return x_; }
    const AdjacencyBits& adjacency() const noexcept { return adjacency_; }
    const Graph& graph() const noexcept { return *graph_; }

    std::uint64_t step_index = 0;
    std::uint64_t accepted = 0;
    std::uint64_t rejected_infeasible = 0;
    std::uint64_t rejected_exhausted = 0;

    /// Adds z if the result stays within [0, cap]; otherwise leaves the state unchanged.
    bool try_apply(const Move& z);

private:
    const Graph* graph_;
    std::vector<std::int32_t> x_;
    std::vector<std::int32_t> caps_;
    AdjacencyBits adjacency_;
};

/// Counts one step with the given proposal (nullopt = generator exhausted).
StepOutcome apply_proposal(ChainState& state, const std::optional<Move>& proposal);

/// One Metropolis-Hastings step for the uniform target: propose a Graver
/// element with a fair-coin sign and accept iff it keeps the state in the fiber.
StepOutcome mh_step(ChainState& state, const GenMode& mode, Rng& rng);

using SampleSink = std::function<void(const ChainState&)>;

/// Runs config.steps steps from x0 and calls `sink` on every retained state
/// (after burn-in, every thinning-th step). Throws ConfigError on a bad config.
ChainReport run_chain(const EdgeVector& x0, const Graph& graph, const Capacities& caps, const ChainConfig& config,
                      const SampleSink& sink);

/// Runs `chains` independent chains concurrently with seeds seed+0 .. seed+chains-1.
/// make_sink(k) supplies chain k's sink; reports are returned in chain order.
std::vector<ChainReport> run_chains(const EdgeVector& x0, const Graph& graph, const Capacities& caps,
                                    const ChainConfig& config, std::size_t chains,
                                    const std::function<SampleSink(std::size_t)>& make_sink);

/// Fraction of samples >= observed. Throws InputError on an empty stream.
double estimate_pvalue(std::span<const double> samples, double observed);

}  // namespace graver
