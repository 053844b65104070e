#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "graver/graph_model.hpp"

namespace graver {

/// Fitted beta-model parameters, alpha_i = exp(beta_i).
struct BetaFit {
    std::vector<double> alpha;
    bool converged = false;
    std::size_t iterations = 0;
    /// max_i |d_i - sum_j n_ij p_ij|
    double residual = 0.0;
};

struct MleOptions {
    double tolerance = 1e-10;
    std::size_t max_iterations = 100000;
};

/// p_ij = a_i a_j / (1 + a_i a_j)
inline double edge_probability(double alpha_i, double alpha_j) {
    const double t = alpha_i * alpha_j;
    return t / (1.0 + t);
}

/// Vertex sets S, T with sum_S d - sum_T d = |S| (n - 1 - |T|): a facet of
/// the degree sequence polytope of simple graphs on n vertices containing d.
struct PolytopeFacet {
    std::vector<Vertex> s;
    std::vector<Vertex> t;
};

/// A tight facet inequality for d, if any. The beta-model MLE on K_n with unit
/// capacities exists iff there is none.
std::optional<PolytopeFacet> tight_degree_facet(const DegreeSequence& d);

/// Maximum-likelihood alphas solving d_i = sum_j n_ij p_ij by damped
/// fixed-point iteration from alpha = 1.
///
/// Throws DegenerateModelError (listing 1-based vertices) when some d_i is 0
/// or equals its maximum sum_j n_ij, or (complete graph, unit capacities)
/// when d lies on any facet of the degree sequence polytope; ConfigError for unbounded capacities and
/// InputError when d does not match the graph.
BetaFit fit_beta_mle(const DegreeSequence& d, const Graph& graph, const Capacities& caps, const MleOptions& options = {});

/// sum_j n_ij p_ij per vertex.
std::vector<double> expected_degrees(std::span<const double> alpha, const Graph& graph, const Capacities& caps);

double moment_residual(std::span<const double> alpha, const DegreeSequence& d, const Graph& graph,
                       const Capacities& caps);

/// Beta-parameterized log-likelihood up to the additive constant:
/// sum_i beta_i d_i - sum_{ij} n_ij log(1 + exp(beta_i + beta_j)).
double log_likelihood(std::span<const double> beta, const DegreeSequence& d, const Graph& graph,
                      const Capacities& caps);

/// Analytic gradient in beta: d_i - sum_j n_ij p_ij.
std::vector<double> log_likelihood_gradient(std::span<const double> beta, const DegreeSequence& d,
                                            const Graph& graph, const Capacities& caps);

/// Pearson chi-square against independent binomials B(n_ij, p_ij),
/// precomputed per edge for repeated evaluation on a dense weight vector.
class ChiSquareModel {
public:
    /// Throws DegenerateModelError if some p_ij is 0 or 1 and
    /// PreconditionError if the fit did not converge.
    ChiSquareModel(const Graph& graph, const BetaFit& fit, const Capacities& caps);

    double evaluate(std::span<const std::int32_t> dense_x) const;
    double evaluate(const EdgeVector& x) const;

    std::span<const double> means() const noexcept { return mean_; }

private:
    std::size_t edge_count_;
    std::vector<double> mean_;    // n_ij p_ij
    std::vector<double> weight_;  // 1 / (n_ij p_ij (1 - p_ij))
};

double chi_square(const Graph& graph, const EdgeVector& x, const BetaFit& fit, const Capacities& caps);

/// Adjacency rows as bitsets over the support of a fiber point.
class AdjacencyBits {
public:
    explicit AdjacencyBits(std::size_t vertex_count);
    AdjacencyBits(const Graph& graph, const EdgeVector& x);
    AdjacencyBits(const Graph& graph, std::span<const std::int32_t> dense_x);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t words_per_row() const noexcept { return words_; }

    void set(Vertex a, Vertex b);
    void clear(Vertex a, Vertex b);
    bool test(Vertex a, Vertex b) const { return (row(a)[b / 64] >> (b % 64)) & 1u; }

    std::span<const std::uint64_t> row(Vertex v) const { return {bits_.data() + v * words_, words_}; }
    std::size_t degree(Vertex v) const;

    /// Triangles through each vertex.
    std::vector<std::uint64_t> triangles_per_vertex() const;

private:
    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

std::uint64_t triangle_count(const AdjacencyBits& adj);
/// Mean over vertices of degree >= 2 of triangles_i / C(deg_i, 2); 0 if none.
double clustering_coefficient(const AdjacencyBits& adj);

/// Throws PreconditionError if x is not square-free (some weight > 1).
std::uint64_t triangle_count(const Graph& graph, const EdgeVector& x);
double clustering_coefficient(const Graph& graph, const EdgeVector& x);

}  // namespace graver
