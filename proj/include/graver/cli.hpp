#pragma once

// Command implementations behind the `graver` executable. Each command
// returns its stdout text and any side files instead of writing them, so the
// determinism contract can be checked in-process.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace graver::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.3.0";

/// Reproducibility record emitted with every run.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> flags;
    std::optional<std::uint64_t> seed;
    /// path -> SHA-256 hex digest
    std::map<std::string, std::string> input_digests;
    std::string tool_version = kToolVersion;

    std::string to_json() const;
};

/// Hashes each input file into the manifest. Throws InputError if unreadable.
RunManifest make_manifest(std::string command, std::map<std::string, std::string> flags,
                          std::optional<std::uint64_t> seed, const std::vector<std::filesystem::path>& inputs);

std::string sha256_hex(const std::string& bytes);

struct CommandOutput {
    int exit_code = 0;
    std::string out;
    std::string err;
    /// Relative file name -> contents, written by the caller into the output directory.
    std::map<std::string, std::string> files;
};

struct GraphSource {
    std::filesystem::path path;
    bool drop_loops = false;
    std::optional<std::size_t> vertex_count;
};

struct SampleMoveArgs {
    GraphSource graph;
    bool square_free = false;
    std::uint64_t seed = 1;
    std::size_t count = 1;
    int max_attempts = 100;
};

struct TestBetaArgs {
    GraphSource observed;
    /// Underlying graph; the complete graph on the observed vertices when unset.
    std::optional<std::filesystem::path> underlying;
    std::uint64_t steps = 0;
    std::uint64_t burn_in = 0;
    std::uint64_t thinning = 1;
    std::uint64_t seed = 1;
    std::size_t chains = 1;
    std::vector<std::string> stats{"chi2", "clustering", "triangles"};
    std::size_t bins = 100;
    int max_attempts = 100;
    double tolerance = 1e-10;
    std::size_t max_iterations = 100000;
    bool stream = false;
};

struct EnumerateArgs {
    GraphSource graph;
    std::filesystem::path degrees;
    /// "one", "unbounded" or a capacity file path.
    std::string caps = "one";
    std::uint64_t guard = 1'000'000'000;
};

struct FitArgs {
    GraphSource observed;
    std::optional<std::filesystem::path> underlying;
    double tolerance = 1e-10;
    std::size_t max_iterations = 100000;
};

struct CheckWalkArgs {
    GraphSource graph;
    std::string walk;
};

// Commands throw graver::Error subclasses on failure; run_guarded maps them
// to exit codes.
CommandOutput sample_move(const SampleMoveArgs& args, const RunManifest& manifest);
CommandOutput test_beta(const TestBetaArgs& args, const RunManifest& manifest);
CommandOutput enumerate(const EnumerateArgs& args, const RunManifest& manifest);
CommandOutput fit(const FitArgs& args, const RunManifest& manifest);
CommandOutput degrees(const GraphSource& graph);
CommandOutput check_walk(const CheckWalkArgs& args);

template <typename F>
CommandOutput run_guarded(F&& command);

/// Equal-width histogram as CSV (bin_lower,bin_upper,count).
std::string histogram_csv(const std::vector<double>& values, std::size_t bins);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace graver::cli

#include "graver/cli_inl.hpp"
