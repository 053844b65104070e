// graver: Graver-basis fiber sampling for the beta model.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "graver/cli.hpp"
#include "graver/errors.hpp"

namespace {

using namespace graver::cli;

struct Common {
    std::string graph;
    bool drop_loops = false;
    std::size_t vertices = 0;
    std::string out_dir = ".";

    GraphSource source(const std::string& path) const {
        GraphSource src{path, drop_loops, std::nullopt};
        if (vertices > 0) src.vertex_count = vertices;
        return src;
    }
};

int emit(const CommandOutput& result, const std::filesystem::path& out_dir) {
    std::cout << result.out;
    std::cerr << result.err;
    if (!result.files.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        for (const auto& [name, contents] : result.files) {
            std::ofstream f(out_dir / name, std::ios::binary);
            f << contents;
            if (!f) {
                std::cerr << "error: cannot write " << (out_dir / name).string() << "\n";
                return static_cast<int>(graver::ErrorKind::Input);
            }
        }
    }
    return result.exit_code;
}

void add_graph_options(CLI::App* cmd, Common& c, const std::string& name = "graph") {
    cmd->add_option(name, c.graph, "Edge list (1-based 'i j' per line)")->required();
    cmd->add_flag("--drop-loops", c.drop_loops, "Discard self-loops instead of rejecting them");
    cmd->add_option("--vertices", c.vertices, "Vertex count (default: largest label)");
}

std::map<std::string, std::string> flags_of(const CLI::App* cmd) {
    std::map<std::string, std::string> flags;
    for (const CLI::Option* opt : cmd->get_options()) {
        if (opt->get_name() == "--help" || opt->count() == 0) continue;
        std::string value;
        for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
        flags[opt->get_name()] = value;
    }
    return flags;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graver-basis fiber sampling and goodness-of-fit for the beta model"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    Common common;

    SampleMoveArgs sm;
    auto* sample = app.add_subcommand("sample-move", "Draw random Graver elements of a graph");
    add_graph_options(sample, common);
    sample->add_flag("--square-free", sm.square_free, "Only square-free moves (weights >= 3)");
    sample->add_option("--seed", sm.seed, "Random seed");
    sample->add_option("--count", sm.count, "Number of moves")->check(CLI::PositiveNumber);
    sample->add_option("--max-attempts", sm.max_attempts, "Rejections per move before giving up")
        ->check(CLI::PositiveNumber);

    TestBetaArgs tb;
    std::string underlying;
    auto* test = app.add_subcommand("test-beta", "Monte Carlo goodness-of-fit test of the beta model");
    add_graph_options(test, common, "observed");
    auto* test_underlying = test->add_option("--underlying", underlying, "Underlying graph edge list");
    test->add_flag("--complete", "Use the complete graph on the observed vertices (default)")->excludes(test_underlying);
    test->add_option("--steps", tb.steps, "Chain length")->required();
    test->add_option("--burn-in", tb.burn_in, "Discarded initial steps");
    test->add_option("--thinning", tb.thinning, "Keep every k-th step")->check(CLI::PositiveNumber);
    test->add_option("--seed", tb.seed, "Seed of chain 0 (chain k uses seed+k)");
    test->add_option("--chains", tb.chains, "Independent chains")->check(CLI::PositiveNumber);
    test->add_option("--stats", tb.stats, "Statistics: chi2, clustering, triangles")->delimiter(',');
    test->add_option("--bins", tb.bins, "Histogram bins")->check(CLI::PositiveNumber);
    test->add_option("--max-attempts", tb.max_attempts, "Generator rejections per step")->check(CLI::PositiveNumber);
    test->add_option("--tol", tb.tolerance, "MLE tolerance");
    test->add_option("--max-iter", tb.max_iterations, "MLE iteration cap");
    test->add_flag("--stream", tb.stream, "Write every retained sample to samples.csv");
    test->add_option("--out-dir", common.out_dir, "Directory for histograms and sample stream");

    EnumerateArgs en;
    std::string degrees_path;
    auto* enumerate_cmd = app.add_subcommand("enumerate", "List every point of a small fiber");
    add_graph_options(enumerate_cmd, common);
    enumerate_cmd->add_option("degrees", degrees_path, "Degree sequence file (comma separated)")->required();
    enumerate_cmd->add_option("--caps", en.caps, "one, unbounded, or a file of 'i j cap' lines");
    enumerate_cmd->add_option("--guard", en.guard, "Search node limit");

    FitArgs fa;
    std::string fit_underlying;
    auto* fit_cmd = app.add_subcommand("fit", "Maximum likelihood estimate of the beta model");
    add_graph_options(fit_cmd, common, "observed");
    auto* fit_underlying_opt = fit_cmd->add_option("--underlying", fit_underlying, "Underlying graph edge list");
    fit_cmd->add_flag("--complete", "Use the complete graph on the observed vertices (default)")
        ->excludes(fit_underlying_opt);
    fit_cmd->add_option("--tol", fa.tolerance, "Convergence tolerance");
    fit_cmd->add_option("--max-iter", fa.max_iterations, "Iteration cap");

    auto* degrees_cmd = app.add_subcommand("degrees", "Print the degree sequence of an edge list");
    add_graph_options(degrees_cmd, common);

    CheckWalkArgs cw;
    auto* walk_cmd = app.add_subcommand("check-walk", "Test a closed walk for primitivity");
    add_graph_options(walk_cmd, common);
    walk_cmd->add_option("walk", cw.walk, "Comma-separated 1-based vertices, e.g. 1,2,3,4")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(graver::ErrorKind::Config);
    }

    CommandOutput result = run_guarded([&]() -> CommandOutput {
        if (sample->parsed()) {
            sm.graph = common.source(common.graph);
            const auto m = make_manifest("sample-move", flags_of(sample), sm.seed, {common.graph});
            return sample_move(sm, m);
        }
        if (test->parsed()) {
            tb.observed = common.source(common.graph);
            std::vector<std::filesystem::path> inputs{common.graph};
            if (!underlying.empty()) {
                tb.underlying = underlying;
                inputs.emplace_back(underlying);
            }
            const auto m = make_manifest("test-beta", flags_of(test), tb.seed, inputs);
            return test_beta(tb, m);
        }
        if (enumerate_cmd->parsed()) {
            en.graph = common.source(common.graph);
            en.degrees = degrees_path;
            std::vector<std::filesystem::path> inputs{common.graph, degrees_path};
            if (en.caps != "one" && en.caps != "unbounded") inputs.emplace_back(en.caps);
            const auto m = make_manifest("enumerate", flags_of(enumerate_cmd), std::nullopt, inputs);
            return enumerate(en, m);
        }
        if (fit_cmd->parsed()) {
            fa.observed = common.source(common.graph);
            std::vector<std::filesystem::path> inputs{common.graph};
            if (!fit_underlying.empty()) {
                fa.underlying = fit_underlying;
                inputs.emplace_back(fit_underlying);
            }
            const auto m = make_manifest("fit", flags_of(fit_cmd), std::nullopt, inputs);
            return fit(fa, m);
        }
        if (degrees_cmd->parsed()) return degrees(common.source(common.graph));
        cw.graph = common.source(common.graph);
        return check_walk(cw);
    });
    return emit(result, common.out_dir);
}
