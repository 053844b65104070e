#include "graver/fiber_mcmc.hpp"

#include <algorithm>
#include <exception>
#include <string>
#include <thread>
#include <unordered_set>

#include "graver/errors.hpp"
#include "graver/kernels.hpp"

namespace graver {

void ChainConfig::validate() const {
    if (burn_in >= steps) {
        throw ConfigError("burn-in (" + std::to_string(burn_in) + ") must be smaller than steps (" +
                          std::to_string(steps) + ")");
    }
    if (thinning < 1) throw ConfigError("thinning must be >= 1");
    if (mode.max_attempts < 1) throw ConfigError("max_attempts must be >= 1");
}

ChainReport& ChainReport::operator+=(const ChainReport& other) {
    steps += other.steps;
    burn_in += other.burn_in;
    accepted += other.accepted;
    rejected_infeasible += other.rejected_infeasible;
    rejected_exhausted += other.rejected_exhausted;
    retained += other.retained;
    if (distinct_states || other.distinct_states) {
        // Per-chain counts do not merge into a union; report the largest.
        distinct_states = std::max(distinct_states.value_or(0), other.distinct_states.value_or(0));
    }
    return *this;
}

ChainState::ChainState(const Graph& graph, const EdgeVector& x0, const Capacities& caps)
    : graph_(&graph),
      x_(x0.to_dense(graph.edge_count())),
      caps_(caps.dense(graph.edge_count())),
      adjacency_(graph, x0) {
    if (!respects_caps(x0, caps)) throw InputError("initial fiber point violates the edge capacities");
}

bool ChainState::try_apply(const Move& z) {
    for (const auto& entry : z.entries()) {
        const std::int64_t v = static_cast<std::int64_t>(x_[entry.edge]) + entry.value;
        if (v < 0 || v > caps_[entry.edge]) return false;
    }
    for (const auto& entry : z.entries()) {
        const std::int32_t before = x_[entry.edge];
        const std::int32_t after = before + entry.value;
        x_[entry.edge] = after;
        const Edge& e = graph_->edge(entry.edge);
        if (before == 0 && after > 0) adjacency_.set(e.u, e.v);
        if (before > 0 && after == 0) adjacency_.clear(e.u, e.v);
    }
    return true;
}

StepOutcome apply_proposal(ChainState& state, const std::optional<Move>& proposal) {
    ++state.step_index;
    if (!proposal) {
        ++state.rejected_exhausted;
        return StepOutcome::Exhausted;
    }
    if (!state.try_apply(*proposal)) {
        ++state.rejected_infeasible;
        return StepOutcome::Infeasible;
    }
    ++state.accepted;
    return StepOutcome::Accepted;
}

StepOutcome mh_step(ChainState& state, const GenMode& mode, Rng& rng) {
    auto generated = sample_graver_element(state.graph(), mode, rng);
    if (!generated) return apply_proposal(state, std::nullopt);
    const bool negate = rng.coin();
    return apply_proposal(state, negate ? -generated->move : std::move(generated->move));
}

ChainReport run_chain(const EdgeVector& x0, const Graph& graph, const Capacities& caps, const ChainConfig& config,
                      const SampleSink& sink) {
    config.validate();
    GenMode mode = config.mode;
    mode.square_free = caps.is_one();

    ChainState state(graph, x0, caps);
    Rng rng(config.seed);
    std::unordered_set<EdgeVector, EdgeVectorHash> distinct;
    ChainReport report;
    report.steps = config.steps;
    report.burn_in = config.burn_in;
    report.thinning = config.thinning;

    for (std::uint64_t t = 1; t <= config.steps; ++t) {
        mh_step(state, mode, rng);
        if (t <= config.burn_in || (t - config.burn_in) % config.thinning != 0) continue;
        ++report.retained;
        if (config.track_distinct) distinct.insert(state.current());
        if (sink) sink(state);
    }
    report.accepted = state.accepted;
    report.rejected_infeasible = state.rejected_infeasible;
    report.rejected_exhausted = state.rejected_exhausted;
    if (config.track_distinct) report.distinct_states = distinct.size();
    return report;
}

std::vector<ChainReport> run_chains(const EdgeVector& x0, const Graph& graph, const Capacities& caps,
                                    const ChainConfig& config, std::size_t chains,
                                    const std::function<SampleSink(std::size_t)>& make_sink) {
    if (chains < 1) throw ConfigError("need at least one chain");
    config.validate();
    std::vector<ChainReport> reports(chains);
    std::vector<std::exception_ptr> errors(chains);
    std::vector<SampleSink> sinks;
    sinks.reserve(chains);
    for (std::size_t k = 0; k < chains; ++k) sinks.push_back(make_sink ? make_sink(k) : SampleSink{});

    auto work = [&](std::size_t k) {
        try {
            ChainConfig own = config;
            own.seed = config.seed + k;
            reports[k] = run_chain(x0, graph, caps, own, sinks[k]);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    };
    if (chains == 1) {
        work(0);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(chains);
        for (std::size_t k = 0; k < chains; ++k) threads.emplace_back(work, k);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return reports;
}

double estimate_pvalue(std::span<const double> samples, double observed) {
    if (samples.empty()) throw InputError("p-value needs at least one sample");
    return static_cast<double>(kernels::count_at_least(samples, observed)) / static_cast<double>(samples.size());
}

}  // namespace graver
