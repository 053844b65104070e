#include <doctest.h>

#include <cmath>

#include "graver/errors.hpp"
#include "graver/oracles.hpp"
#include "graver/rng.hpp"
#include "graver/statistics.hpp"
#include "helpers.hpp"

using namespace graver;
using testing::edges1;
using testing::graph1;

namespace {

DegreeSequence uniform_degrees(std::size_t n, std::int64_t d) {
    return DegreeSequence{std::vector<std::int64_t>(n, d)};
}

/// Random simple graph on K_n whose degrees avoid both boundaries.
EdgeVector interior_graph(const Graph& kn, Rng& rng) {
    const std::size_t n = kn.vertex_count();
    for (;;) {
        std::vector<Edge> edges;
        for (const Edge& e : kn.edges()) {
            if (rng.unit() < 0.5) edges.push_back(e);
        }
        const EdgeVector x = EdgeVector::indicator(kn, edges);
        if (!tight_degree_facet(degree_sequence(kn, x))) return x;
    }
}

}  // namespace

TEST_CASE("MLE closed forms") {
    const Graph k4 = Graph::complete(4);
    const auto fit = fit_beta_mle(uniform_degrees(4, 2), k4, Capacities::one());
    REQUIRE(fit.converged);
    for (double a : fit.alpha) CHECK(std::abs(a - std::sqrt(2.0)) <= 1e-8);

    for (std::size_t n : {5, 7, 9, 11}) {
        const Graph kn = Graph::complete(n);
        const auto half = fit_beta_mle(uniform_degrees(n, static_cast<std::int64_t>((n - 1) / 2)), kn,
                                       Capacities::one());
        REQUIRE(half.converged);
        for (double a : half.alpha) CHECK(std::abs(a - 1.0) <= 1e-8);
        CHECK(edge_probability(half.alpha[0], half.alpha[1]) == doctest::Approx(0.5).epsilon(1e-9));
    }
}

TEST_CASE("tight polytope facets match an exhaustive search") {
    Rng rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const auto n = static_cast<std::size_t>(rng.uniform(2, 7));
        const Graph kn = Graph::complete(n);
        const double density = rng.unit();
        std::vector<Edge> edges;
        for (const Edge& e : kn.edges()) {
            if (rng.unit() < density) edges.push_back(e);
        }
        const auto d = degree_sequence(kn, EdgeVector::indicator(kn, edges));
        // Every assignment of vertices to S, T or neither.
        bool tight = false;
        std::size_t codes = 1;
        for (std::size_t i = 0; i < n; ++i) codes *= 3;
        for (std::size_t code = 1; code < codes && !tight; ++code) {
            std::int64_t lhs = 0;
            std::int64_t s = 0;
            std::int64_t t = 0;
            std::size_t c = code;
            for (std::size_t i = 0; i < n; ++i, c /= 3) {
                if (c % 3 == 1) {
                    lhs += d.degrees[i];
                    ++s;
                } else if (c % 3 == 2) {
                    lhs -= d.degrees[i];
                    ++t;
                }
            }
            const std::int64_t rhs = s * (static_cast<std::int64_t>(n) - 1 - t);
            REQUIRE(lhs <= rhs);
            tight = lhs == rhs;
        }
        const auto facet = tight_degree_facet(d);
        CHECK(facet.has_value() == tight);
        if (facet) {
            std::int64_t lhs = 0;
            for (Vertex v : facet->s) lhs += d.degrees[v];
            for (Vertex v : facet->t) lhs -= d.degrees[v];
            CHECK(lhs == static_cast<std::int64_t>(facet->s.size()) *
                             (static_cast<std::int64_t>(n) - 1 - static_cast<std::int64_t>(facet->t.size())));
        }
    }
}

TEST_CASE("sequences on a polytope facet have no MLE") {
    // The path 1-2-3-4 is the only graph with its degrees.
    const Graph k4 = Graph::complete(4);
    CHECK(tight_degree_facet(DegreeSequence{{1, 2, 2, 1}}).has_value());
    CHECK_THROWS_AS(fit_beta_mle(DegreeSequence{{1, 2, 2, 1}}, k4, Capacities::one()), DegenerateModelError);
    CHECK_FALSE(tight_degree_facet(DegreeSequence{{2, 2, 2, 2}}).has_value());
}

TEST_CASE("MLE with multi-edge capacities") {
    // K3 with caps 2: 2 * 2 p = d_i with p = a^2 / (1 + a^2).
    const Graph k3 = Graph::complete(3);
    const auto fit = fit_beta_mle(uniform_degrees(3, 3), k3, Capacities::per_edge({2, 2, 2}));
    REQUIRE(fit.converged);
    // 4 p = 3 -> p = 3/4 -> a^2 = 3.
    for (double a : fit.alpha) CHECK(std::abs(a - std::sqrt(3.0)) <= 1e-8);
}

TEST_CASE("MLE errors") {
    const Graph k4 = Graph::complete(4);
    try {
        fit_beta_mle(DegreeSequence{{0, 1, 1, 2}}, k4, Capacities::one());
        FAIL("expected a degenerate model error");
    } catch (const DegenerateModelError& e) {
        CHECK(std::string(e.what()).find("1") != std::string::npos);
    }
    CHECK_THROWS_AS(fit_beta_mle(DegreeSequence{{3, 1, 1, 1}}, k4, Capacities::one()), DegenerateModelError);
    CHECK_THROWS_AS(fit_beta_mle(DegreeSequence{{1, 1, 2}}, k4, Capacities::one()), InputError);
    CHECK_THROWS_AS(fit_beta_mle(DegreeSequence{{4, 1, 1, 2}}, k4, Capacities::one()), InputError);
    CHECK_THROWS_AS(fit_beta_mle(uniform_degrees(4, 2), k4, Capacities::unbounded()), ConfigError);

    MleOptions tiny;
    tiny.max_iterations = 1;
    Rng rng(2);
    const Graph k8 = Graph::complete(8);
    const auto d = degree_sequence(k8, interior_graph(k8, rng));
    const auto partial = fit_beta_mle(d, k8, Capacities::one(), tiny);
    CHECK_FALSE(partial.converged);
    CHECK(partial.iterations == 1);
    CHECK_THROWS_AS(ChiSquareModel(k8, partial, Capacities::one()), PreconditionError);
}

TEST_CASE("MLE moment match, gradient and uniqueness on random graphs") {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 4 + static_cast<std::size_t>(rng.uniform(0, 11));
        const Graph kn = Graph::complete(n);
        const auto d = degree_sequence(kn, interior_graph(kn, rng));
        const auto fit = fit_beta_mle(d, kn, Capacities::one());
        REQUIRE(fit.converged);
        CHECK(fit.residual <= 1e-10);
        CHECK(moment_residual(fit.alpha, d, kn, Capacities::one()) <= 1e-10);
        for (double a : fit.alpha) CHECK((std::isfinite(a) && a > 0));

        std::vector<double> beta(n);
        for (std::size_t i = 0; i < n; ++i) beta[i] = std::log(fit.alpha[i]) + 0.3 * (rng.unit() - 0.5);
        const auto grad = log_likelihood_gradient(beta, d, kn, Capacities::one());
        for (std::size_t i = 0; i < n; ++i) {
            const double h = 1e-5;
            auto plus = beta;
            auto minus = beta;
            plus[i] += h;
            minus[i] -= h;
            const double fd = (log_likelihood(plus, d, kn, Capacities::one()) -
                               log_likelihood(minus, d, kn, Capacities::one())) /
                              (2 * h);
            CHECK(std::abs(fd - grad[i]) / std::max(std::abs(grad[i]), 1.0) <= 1e-4);
        }
    }
}

TEST_CASE("chi-square") {
    const Graph k4 = Graph::complete(4);
    BetaFit half;
    half.alpha.assign(4, 1.0);
    half.converged = true;
    const EdgeVector matching = edges1(k4, {{1, 2}, {3, 4}});
    CHECK(chi_square(k4, matching, half, Capacities::one()) == doctest::Approx(6.0));

    // x equal to its mean exactly: caps 2, p = 1/2, x = 1 everywhere.
    const auto caps2 = Capacities::per_edge(std::vector<std::int32_t>(6, 2));
    EdgeVector ones = edges1(k4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    CHECK(chi_square(k4, ones, half, caps2) == 0.0);

    BetaFit bad = half;
    bad.alpha[0] = 0.0;
    CHECK_THROWS_AS(ChiSquareModel(k4, bad, Capacities::one()), DegenerateModelError);

    // Nonnegative, and dense evaluation agrees with the sparse form.
    Rng rng(3);
    const Graph k9 = Graph::complete(9);
    const auto x = interior_graph(k9, rng);
    const auto fit = fit_beta_mle(degree_sequence(k9, x), k9, Capacities::one());
    const ChiSquareModel model(k9, fit, Capacities::one());
    double direct = 0.0;
    for (EdgeId e = 0; e < k9.edge_count(); ++e) {
        const Edge& ed = k9.edge(e);
        const double p = edge_probability(fit.alpha[ed.u], fit.alpha[ed.v]);
        const double diff = x.get(e) - p;
        direct += diff * diff / (p * (1 - p));
    }
    CHECK(model.evaluate(x) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(model.evaluate(x.to_dense(k9.edge_count())) == model.evaluate(x));
    CHECK(model.evaluate(x) >= 0.0);
}

TEST_CASE("triangles and clustering") {
    const Graph k4 = Graph::complete(4);
    const EdgeVector all = edges1(k4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    CHECK(triangle_count(k4, all) == 4);
    CHECK(clustering_coefficient(k4, all) == 1.0);

    const EdgeVector square = edges1(k4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});
    CHECK(triangle_count(k4, square) == 0);
    CHECK(clustering_coefficient(k4, square) == 0.0);

    const Graph k3 = Graph::complete(3);
    CHECK(clustering_coefficient(k3, edges1(k3, {{1, 2}, {2, 3}, {1, 3}})) == 1.0);
    CHECK(clustering_coefficient(k3, edges1(k3, {{1, 2}, {2, 3}})) == 0.0);
    CHECK(clustering_coefficient(k3, EdgeVector{}) == 0.0);
    CHECK(triangle_count(k3, EdgeVector{}) == 0);

    // Triangle with a pendant: vertices of degree 1 are left out.
    const Graph k4b = Graph::complete(4);
    const EdgeVector paw = edges1(k4b, {{1, 2}, {2, 3}, {1, 3}, {3, 4}});
    CHECK(clustering_coefficient(k4b, paw) == doctest::Approx((1.0 + 1.0 + 1.0 / 3.0) / 3.0));

    EdgeVector heavy = all;
    heavy.set(0, 2);
    CHECK_THROWS_AS(triangle_count(k4, heavy), PreconditionError);
}

TEST_CASE("triangle counting matches the brute-force oracle") {
    Rng rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(rng.uniform(0, 97));
        const Graph kn = Graph::complete(n);
        const double density = rng.unit();
        std::vector<Edge> edges;
        for (const Edge& e : kn.edges()) {
            if (rng.unit() < density) edges.push_back(e);
        }
        const EdgeVector x = EdgeVector::indicator(kn, edges);
        if (n <= 30) CHECK(triangle_count(kn, x) == oracles::triangle_count_bruteforce(kn, x));
        const AdjacencyBits adj(kn, x);
        std::uint64_t sum = 0;
        for (auto t : adj.triangles_per_vertex()) sum += t;
        CHECK(sum == 3 * triangle_count(adj));
        const double cc = clustering_coefficient(adj);
        CHECK((cc >= 0.0 && cc <= 1.0));
    }
}

TEST_CASE("adjacency bit updates") {
    AdjacencyBits adj(70);
    adj.set(0, 69);
    adj.set(69, 3);
    CHECK(adj.test(69, 0));
    CHECK(adj.degree(69) == 2);
    adj.clear(0, 69);
    CHECK_FALSE(adj.test(0, 69));
    CHECK(adj.degree(69) == 1);
    CHECK(adj.words_per_row() == 2);
}
