#include "graver/cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "graver/errors.hpp"
#include "graver/fiber_mcmc.hpp"
#include "graver/graver_gen.hpp"
#include "graver/io.hpp"
#include "graver/oracles.hpp"
#include "graver/statistics.hpp"
#include "graver/walks.hpp"

namespace graver::cli {

using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Manifest

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

RunManifest make_manifest(std::string command, std::map<std::string, std::string> flags,
                          std::optional<std::uint64_t> seed, const std::vector<std::filesystem::path>& inputs) {
    RunManifest m;
    m.command = std::move(command);
    m.flags = std::move(flags);
    m.seed = seed;
    for (const auto& p : inputs) m.input_digests[p.string()] = sha256_hex(io::read_file(p));
    return m;
}

namespace {

ordered_json manifest_json(const RunManifest& m) {
    ordered_json j;
    j["command"] = m.command;
    j["flags"] = ordered_json::object();
    for (const auto& [k, v] : m.flags) j["flags"][k] = v;
    j["seed"] = m.seed ? ordered_json(*m.seed) : ordered_json(nullptr);
    j["inputs"] = ordered_json::array();
    for (const auto& [path, digest] : m.input_digests) j["inputs"].push_back({{"path", path}, {"sha256", digest}});
    j["tool_version"] = m.tool_version;
    return j;
}

ordered_json document(const RunManifest& manifest) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["manifest"] = manifest_json(manifest);
    return j;
}

io::EdgeList load(const GraphSource& src) {
    io::EdgeListOptions opts;
    opts.drop_loops = src.drop_loops;
    opts.vertex_count = src.vertex_count;
    return io::read_edge_list(src.path, opts);
}

/// Underlying graph: the given file (on at least the observed vertices) or K_n.
Graph underlying_graph(const io::EdgeList& observed, const std::optional<std::filesystem::path>& path) {
    if (!path) return Graph::complete(observed.vertex_count);
    io::EdgeListOptions opts;
    auto list = io::read_edge_list(*path, opts);
    list.vertex_count = std::max(list.vertex_count, observed.vertex_count);
    return io::to_graph(list);
}

ordered_json edges_json(const Graph& graph, const Move& z) {
    ordered_json edges = ordered_json::array();
    for (const auto& entry : z.entries()) {
        const Edge& e = graph.edge(entry.edge);
        edges.push_back({e.u + 1, e.v + 1, entry.value});
    }
    return edges;
}

ordered_json fit_json(const BetaFit& fit) {
    ordered_json j;
    j["alpha"] = fit.alpha;
    j["converged"] = fit.converged;
    j["iterations"] = fit.iterations;
    j["residual"] = fit.residual;
    return j;
}

ordered_json report_json(const ChainReport& r) {
    ordered_json j;
    j["steps"] = r.steps;
    j["burn_in"] = r.burn_in;
    j["thinning"] = r.thinning;
    j["accepted"] = r.accepted;
    j["rejected_infeasible"] = r.rejected_infeasible;
    j["rejected_exhausted"] = r.rejected_exhausted;
    j["retained"] = r.retained;
    if (r.distinct_states) j["distinct_states"] = *r.distinct_states;
    return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string RunManifest::to_json() const { return manifest_json(*this).dump(); }

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string histogram_csv(const std::vector<double>& values, std::size_t bins) {
    if (bins == 0) throw ConfigError("histogram needs at least one bin");
    std::string out = "bin_lower,bin_upper,count\n";
    if (values.empty()) return out;
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const double width = (hi - lo) / static_cast<double>(bins);
    std::vector<std::uint64_t> counts(bins, 0);
    for (double v : values) {
        std::size_t b = width > 0 ? static_cast<std::size_t>((v - lo) / width) : 0;
        counts[std::min(b, bins - 1)] += 1;
    }
    for (std::size_t b = 0; b < bins; ++b) {
        const double lower = lo + width * static_cast<double>(b);
        const double upper = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
        out += format_double(lower) + "," + format_double(upper) + "," + std::to_string(counts[b]) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------

CommandOutput sample_move(const SampleMoveArgs& args, const RunManifest& manifest) {
    if (args.count < 1) throw ConfigError("--count must be >= 1");
    const Graph graph = io::to_graph(load(args.graph));
    GenMode mode;
    mode.square_free = args.square_free;
    mode.max_attempts = args.max_attempts;
    Rng rng(args.seed);

    ordered_json doc = document(manifest);
    ordered_json moves = ordered_json::array();
    std::size_t exhausted = 0;
    for (std::size_t slot = 1; slot <= args.count; ++slot) {
        ordered_json item;
        item["slot"] = slot;
        if (auto gm = sample_graver_element(graph, mode, rng)) {
            item["edges"] = edges_json(graph, gm->move);
            item["walk"] = gm->walk.to_string();
            item["attempts"] = gm->attempts;
        } else {
            item["exhausted"] = true;
            ++exhausted;
        }
        moves.push_back(std::move(item));
    }
    doc["square_free"] = args.square_free;
    doc["moves"] = std::move(moves);
    doc["exhausted"] = exhausted;

    CommandOutput out;
    out.out = dump(doc);
    if (exhausted == args.count) {
        out.exit_code = static_cast<int>(ErrorKind::Guard);
        out.err = "error: every move slot exhausted its " + std::to_string(args.max_attempts) +
                  " attempts; the graph may have no Graver element of the requested kind\n";
    }
    return out;
}

CommandOutput test_beta(const TestBetaArgs& args, const RunManifest& manifest) {
    static const std::vector<std::string> known{"chi2", "clustering", "triangles"};
    if (args.stats.empty()) throw ConfigError("--stats needs at least one statistic");
    for (const auto& s : args.stats) {
        if (std::find(known.begin(), known.end(), s) == known.end()) {
            throw ConfigError("unknown statistic '" + s + "' (expected chi2, clustering or triangles)");
        }
    }
    ChainConfig config;
    config.steps = args.steps;
    config.burn_in = args.burn_in;
    config.thinning = args.thinning;
    config.seed = args.seed;
    config.mode.max_attempts = args.max_attempts;
    config.validate();

    const io::EdgeList observed_list = load(args.observed);
    const Graph graph = underlying_graph(observed_list, args.underlying);
    const EdgeVector observed = io::to_edge_vector(observed_list, graph);
    const Capacities caps = Capacities::one();
    const DegreeSequence d = degree_sequence(graph, observed);

    const BetaFit fitted = fit_beta_mle(d, graph, caps, {args.tolerance, args.max_iterations});
    if (!fitted.converged) {
        throw DegenerateModelError("maximum likelihood iteration did not converge (residual " +
                                   format_double(fitted.residual) + ")");
    }
    const ChiSquareModel chi2(graph, fitted, caps);

    auto evaluate = [&](const std::string& stat, std::span<const std::int32_t> dense, const AdjacencyBits& adj) {
        if (stat == "chi2") return chi2.evaluate(dense);
        if (stat == "clustering") return clustering_coefficient(adj);
        return static_cast<double>(triangle_count(adj));
    };

    const auto observed_dense = observed.to_dense(graph.edge_count());
    const AdjacencyBits observed_adj(graph, observed);

    // values[chain][stat]
    std::vector<std::vector<std::vector<double>>> values(
        args.chains, std::vector<std::vector<double>>(args.stats.size()));
    for (auto& per_chain : values) {
        for (auto& v : per_chain) v.reserve(config.retained());
    }
    const auto reports = run_chains(observed, graph, caps, config, args.chains, [&](std::size_t k) -> SampleSink {
        return [&, k](const ChainState& state) {
            for (std::size_t s = 0; s < args.stats.size(); ++s) {
                values[k][s].push_back(evaluate(args.stats[s], state.dense(), state.adjacency()));
            }
        };
    });

    ChainReport total;
    total.thinning = config.thinning;
    for (const auto& r : reports) total += r;

    ordered_json doc = document(manifest);
    doc["vertices"] = graph.vertex_count();
    doc["underlying_edges"] = graph.edge_count();
    doc["observed_edges"] = observed_list.edges.size();
    doc["degree_sequence"] = io::format_degree_sequence(d);
    doc["fit"] = fit_json(fitted);

    CommandOutput out;
    ordered_json stats = ordered_json::object();
    for (std::size_t s = 0; s < args.stats.size(); ++s) {
        const auto& name = args.stats[s];
        std::vector<double> merged;
        merged.reserve(total.retained);
        for (const auto& per_chain : values) merged.insert(merged.end(), per_chain[s].begin(), per_chain[s].end());
        const double obs = evaluate(name, observed_dense, observed_adj);
        double mean = 0.0;
        for (double v : merged) mean += v;
        mean /= static_cast<double>(merged.size());

        const std::string hist_name = "hist_" + name + ".csv";
        out.files[hist_name] = histogram_csv(merged, args.bins);
        ordered_json entry;
        entry["observed"] = obs;
        entry["p_value"] = estimate_pvalue(merged, obs);
        entry["null_mean"] = mean;
        entry["histogram"] = hist_name;
        stats[name] = std::move(entry);
    }
    doc["statistics"] = std::move(stats);
    doc["chain"] = report_json(total);
    ordered_json per_chain = ordered_json::array();
    for (std::size_t k = 0; k < reports.size(); ++k) {
        ordered_json r = report_json(reports[k]);
        r["seed"] = args.seed + k;
        per_chain.push_back(std::move(r));
    }
    doc["chains"] = std::move(per_chain);

    if (args.stream) {
        std::string csv = "chain,sample";
        for (const auto& s : args.stats) csv += "," + s;
        csv += "\n";
        for (std::size_t k = 0; k < values.size(); ++k) {
            const std::size_t rows = values[k].front().size();
            for (std::size_t i = 0; i < rows; ++i) {
                csv += std::to_string(k) + "," + std::to_string(i + 1);
                for (std::size_t s = 0; s < args.stats.size(); ++s) csv += "," + format_double(values[k][s][i]);
                csv += "\n";
            }
        }
        out.files["samples.csv"] = std::move(csv);
        doc["stream"] = "samples.csv";
    }
    out.out = dump(doc);
    return out;
}

CommandOutput enumerate(const EnumerateArgs& args, const RunManifest& manifest) {
    const Graph graph = io::to_graph(load(args.graph));
    const DegreeSequence d = io::read_degree_sequence(args.degrees);
    Capacities caps = Capacities::one();
    if (args.caps == "unbounded") {
        caps = Capacities::unbounded();
    } else if (args.caps != "one") {
        caps = io::read_capacities(args.caps, graph);
    }
    const auto fiber = oracles::enumerate_fiber(d, graph, caps, args.guard);

    CommandOutput out;
    std::ostringstream ss;
    ss << "# schema_version " << kSchemaVersion << "\n";
    ss << "# manifest " << manifest.to_json() << "\n";
    // Lines ordered by their edge tuples, compared numerically.
    using Key = std::vector<std::tuple<Vertex, Vertex, std::int64_t>>;
    std::vector<std::pair<Key, std::size_t>> order;
    for (std::size_t i = 0; i < fiber.size(); ++i) {
        Key key;
        for (const auto& entry : fiber[i].entries()) {
            const Edge& e = graph.edge(entry.edge);
            key.emplace_back(e.u, e.v, entry.value);
        }
        order.emplace_back(std::move(key), i);
    }
    std::sort(order.begin(), order.end());
    for (const auto& [key, i] : order) ss << io::format_fiber_point(graph, fiber[i]) << "\n";
    ss << "# count " << fiber.size() << "\n";
    out.out = ss.str();
    return out;
}

CommandOutput fit(const FitArgs& args, const RunManifest& manifest) {
    const io::EdgeList observed_list = load(args.observed);
    const Graph graph = underlying_graph(observed_list, args.underlying);
    const EdgeVector observed = io::to_edge_vector(observed_list, graph);
    const Capacities caps = Capacities::one();
    const BetaFit fitted =
        fit_beta_mle(degree_sequence(graph, observed), graph, caps, {args.tolerance, args.max_iterations});

    ordered_json doc = document(manifest);
    const ordered_json fields = fit_json(fitted);
    for (const auto& [k, v] : fields.items()) doc[k] = v;
    if (fitted.converged) doc["chi2"] = chi_square(graph, observed, fitted, caps);
    CommandOutput out;
    out.out = dump(doc);
    if (!fitted.converged) {
        out.exit_code = static_cast<int>(ErrorKind::DegenerateModel);
        out.err = "error: maximum likelihood iteration did not converge\n";
    }
    return out;
}

CommandOutput degrees(const GraphSource& graph_src) {
    const auto list = load(graph_src);
    const Graph graph = io::to_graph(list);
    CommandOutput out;
    out.out = io::format_degree_sequence(degree_sequence(graph, EdgeVector::indicator(graph, list.edges))) + "\n";
    return out;
}

CommandOutput check_walk(const CheckWalkArgs& args) {
    const Graph graph = io::to_graph(load(args.graph));
    const ClosedWalk w = ClosedWalk::parse(args.walk);
    const Move z = walk_to_move(graph, w);
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["walk"] = w.to_string();
    doc["primitive"] = is_primitive(w);
    doc["square_free"] = is_square_free(z);
    doc["edges"] = edges_json(graph, z);
    CommandOutput out;
    out.out = dump(doc);
    return out;
}

}  // namespace graver::cli
