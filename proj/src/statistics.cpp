#include "graver/statistics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "graver/errors.hpp"
#include "graver/kernels.hpp"

namespace graver {

namespace {

void check_shape(const DegreeSequence& d, const Graph& graph) {
    if (d.size() != graph.vertex_count()) {
        throw InputError("degree sequence has " + std::to_string(d.size()) + " entries, graph has " +
                         std::to_string(graph.vertex_count()) + " vertices");
    }
}

double softplus(double t) { return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

}  // namespace

std::vector<double> expected_degrees(std::span<const double> alpha, const Graph& graph, const Capacities& caps) {
    std::vector<double> mu(graph.vertex_count(), 0.0);
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
        const Edge& ed = graph.edge(e);
        const double m = caps.cap(e) * edge_probability(alpha[ed.u], alpha[ed.v]);
        mu[ed.u] += m;
        mu[ed.v] += m;
    }
    return mu;
}

double moment_residual(std::span<const double> alpha, const DegreeSequence& d, const Graph& graph,
                       const Capacities& caps) {
    const auto mu = expected_degrees(alpha, graph, caps);
    double r = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) r = std::max(r, std::abs(static_cast<double>(d.degrees[i]) - mu[i]));
    return r;
}

std::optional<PolytopeFacet> tight_degree_facet(const DegreeSequence& d) {
    const std::size_t n = d.size();
    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return d.degrees[a] > d.degrees[b]; });
    // For fixed |S| and |T| the left side is largest with S the top and T the bottom degrees.
    std::vector<std::int64_t> top(n + 1, 0);
    std::vector<std::int64_t> bottom(n + 1, 0);
    for (std::size_t k = 0; k < n; ++k) {
        top[k + 1] = top[k] + d.degrees[order[k]];
        bottom[k + 1] = bottom[k] + d.degrees[order[n - 1 - k]];
    }
    const auto nn = static_cast<std::int64_t>(n);
    for (std::size_t s = 0; s <= n; ++s) {
        for (std::size_t t = 0; s + t <= n; ++t) {
            if (s + t == 0) continue;
            const auto si = static_cast<std::int64_t>(s);
            const auto ti = static_cast<std::int64_t>(t);
            if (top[s] - bottom[t] < si * (nn - 1 - ti)) continue;
            PolytopeFacet f;
            f.s.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(s));
            f.t.assign(order.end() - static_cast<std::ptrdiff_t>(t), order.end());
            return f;
        }
    }
    return std::nullopt;
}

BetaFit fit_beta_mle(const DegreeSequence& d, const Graph& graph, const Capacities& caps, const MleOptions& options) {
    check_shape(d, graph);
    if (!caps.is_finite()) throw ConfigError("the beta model needs finite edge capacities");

    const std::size_t n = graph.vertex_count();
    std::vector<double> max_degree(n, 0.0);
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
        max_degree[graph.edge(e).u] += caps.cap(e);
        max_degree[graph.edge(e).v] += caps.cap(e);
    }
    std::string boundary;
    for (std::size_t i = 0; i < n; ++i) {
        const auto di = static_cast<double>(d.degrees[i]);
        if (di > max_degree[i]) {
            throw InputError("degree " + std::to_string(d.degrees[i]) + " at vertex " + std::to_string(i + 1) +
                             " exceeds its capacity");
        }
        if (di == 0.0 || di == max_degree[i]) boundary += (boundary.empty() ? "" : ",") + std::to_string(i + 1);
    }
    if (!boundary.empty()) {
        throw DegenerateModelError("maximum likelihood estimate lies on the boundary (degree 0 or maximal) at vertices " +
                                   boundary);
    }

    if (caps.is_one() && graph.edge_count() == n * (n - 1) / 2) {
        if (auto facet = tight_degree_facet(d)) {
            auto list = [](std::vector<Vertex> vs) {
                std::sort(vs.begin(), vs.end());
                std::string out;
                for (Vertex v : vs) out += (out.empty() ? "" : ",") + std::to_string(v + 1);
                return out.empty() ? std::string("none") : out;
            };
            throw DegenerateModelError(
                "maximum likelihood estimate does not exist: the degree sequence is on a facet of the degree "
                "sequence polytope (vertices " + list(facet->s) + " against " + list(facet->t) + ")");
        }
    }

    BetaFit fit;
    fit.alpha.assign(n, 1.0);
    fit.residual = moment_residual(fit.alpha, d, graph, caps);
    std::vector<double> denom(n);
    std::vector<double> proposal(n);
    double damping = 1.0;

    while (fit.residual > options.tolerance && fit.iterations < options.max_iterations) {
        std::fill(denom.begin(), denom.end(), 0.0);
        for (EdgeId e = 0; e < graph.edge_count(); ++e) {
            const Edge& ed = graph.edge(e);
            const double ai = fit.alpha[ed.u];
            const double aj = fit.alpha[ed.v];
            const double c = caps.cap(e) / (1.0 + ai * aj);
            denom[ed.u] += c * aj;
            denom[ed.v] += c * ai;
        }
        // Damped step, geometric in alpha (linear in beta).
        for (std::size_t i = 0; i < n; ++i) {
            const double target = static_cast<double>(d.degrees[i]) / denom[i];
            proposal[i] = damping == 1.0 ? target : fit.alpha[i] * std::pow(target / fit.alpha[i], damping);
        }
        const double r = moment_residual(proposal, d, graph, caps);
        ++fit.iterations;
        if (!std::isfinite(r)) break;
        if (r > fit.residual && damping > 1.0 / 1024) {
            damping *= 0.5;
            continue;
        }
        fit.alpha.swap(proposal);
        fit.residual = r;
    }
    fit.converged = fit.residual <= options.tolerance;
    return fit;
}

double log_likelihood(std::span<const double> beta, const DegreeSequence& d, const Graph& graph,
                      const Capacities& caps) {
    check_shape(d, graph);
    double ll = 0.0;
    for (std::size_t i = 0; i < beta.size(); ++i) ll += beta[i] * static_cast<double>(d.degrees[i]);
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
        const Edge& ed = graph.edge(e);
        ll -= caps.cap(e) * softplus(beta[ed.u] + beta[ed.v]);
    }
    return ll;
}

std::vector<double> log_likelihood_gradient(std::span<const double> beta, const DegreeSequence& d,
                                            const Graph& graph, const Capacities& caps) {
    check_shape(d, graph);
    std::vector<double> alpha(beta.size());
    for (std::size_t i = 0; i < beta.size(); ++i) alpha[i] = std::exp(beta[i]);
    auto g = expected_degrees(alpha, graph, caps);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = static_cast<double>(d.degrees[i]) - g[i];
    return g;
}

// ---------------------------------------------------------------------------

ChiSquareModel::ChiSquareModel(const Graph& graph, const BetaFit& fit, const Capacities& caps)
    : edge_count_(graph.edge_count()), mean_(graph.edge_count()), weight_(graph.edge_count()) {
    if (!fit.converged) throw PreconditionError("chi-square needs a converged beta fit");
    if (fit.alpha.size() != graph.vertex_count()) throw PreconditionError("beta fit does not match the graph");
    for (EdgeId e = 0; e < edge_count_; ++e) {
        const Edge& ed = graph.edge(e);
        const double p = edge_probability(fit.alpha[ed.u], fit.alpha[ed.v]);
        if (!(p > 0.0 && p < 1.0)) {
            throw DegenerateModelError("fitted edge probability is 0 or 1 on edge {" + std::to_string(ed.u + 1) + "," +
                                       std::to_string(ed.v + 1) + "}");
        }
        const double n_ij = caps.cap(e);
        mean_[e] = n_ij * p;
        weight_[e] = 1.0 / (n_ij * p * (1.0 - p));
    }
}

double ChiSquareModel::evaluate(std::span<const std::int32_t> dense_x) const {
    return kernels::weighted_squared_deviation(dense_x, mean_, weight_);
}

double ChiSquareModel::evaluate(const EdgeVector& x) const { return evaluate(x.to_dense(edge_count_)); }

double chi_square(const Graph& graph, const EdgeVector& x, const BetaFit& fit, const Capacities& caps) {
    return ChiSquareModel(graph, fit, caps).evaluate(x);
}

// ---------------------------------------------------------------------------

AdjacencyBits::AdjacencyBits(std::size_t vertex_count)
    : n_(vertex_count), words_((vertex_count + 63) / 64), bits_(n_ * words_, 0) {}

AdjacencyBits::AdjacencyBits(const Graph& graph, const EdgeVector& x) : AdjacencyBits(graph.vertex_count()) {
    for (const auto& entry : x.entries()) {
        if (entry.value > 0) set(graph.edge(entry.edge).u, graph.edge(entry.edge).v);
    }
}

AdjacencyBits::AdjacencyBits(const Graph& graph, std::span<const std::int32_t> dense_x)
    : AdjacencyBits(graph.vertex_count()) {
    for (EdgeId e = 0; e < dense_x.size(); ++e) {
        if (dense_x[e] > 0) set(graph.edge(e).u, graph.edge(e).v);
    }
}

void AdjacencyBits::set(Vertex a, Vertex b) {
    bits_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
    bits_[b * words_ + a / 64] |= std::uint64_t{1} << (a % 64);
}

void AdjacencyBits::clear(Vertex a, Vertex b) {
    bits_[a * words_ + b / 64] &= ~(std::uint64_t{1} << (b % 64));
    bits_[b * words_ + a / 64] &= ~(std::uint64_t{1} << (a % 64));
}

std::size_t AdjacencyBits::degree(Vertex v) const {
    std::size_t d = 0;
    for (auto w : row(v)) d += static_cast<std::size_t>(std::popcount(w));
    return d;
}

std::vector<std::uint64_t> AdjacencyBits::triangles_per_vertex() const {
    std::vector<std::uint64_t> t(n_, 0);
    for (Vertex i = 0; i < n_; ++i) {
        const auto ri = row(i);
        std::uint64_t twice = 0;
        for (std::size_t w = 0; w < words_; ++w) {
            for (std::uint64_t bits = ri[w]; bits != 0; bits &= bits - 1) {
                const auto j = static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                twice += kernels::and_popcount(ri, row(j));
            }
        }
        t[i] = twice / 2;
    }
    return t;
}

std::uint64_t triangle_count(const AdjacencyBits& adj) {
    std::uint64_t s = 0;
    for (auto t : adj.triangles_per_vertex()) s += t;
    return s / 3;
}

double clustering_coefficient(const AdjacencyBits& adj) {
    const auto t = adj.triangles_per_vertex();
    double sum = 0.0;
    std::size_t counted = 0;
    for (Vertex i = 0; i < adj.vertex_count(); ++i) {
        const auto k = adj.degree(i);
        if (k < 2) continue;
        sum += static_cast<double>(t[i]) / (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
        ++counted;
    }
    return counted == 0 ? 0.0 : sum / static_cast<double>(counted);
}

namespace {

void require_square_free(const EdgeVector& x) {
    for (const auto& entry : x.entries()) {
        if (entry.value > 1) throw PreconditionError("graph statistics need a simple graph (all weights 0 or 1)");
    }
}

}  // namespace

std::uint64_t triangle_count(const Graph& graph, const EdgeVector& x) {
    require_square_free(x);
    return triangle_count(AdjacencyBits(graph, x));
}

double clustering_coefficient(const Graph& graph, const EdgeVector& x) {
    require_square_free(x);
    return clustering_coefficient(AdjacencyBits(graph, x));
}

}  // namespace graver
