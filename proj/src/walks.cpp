#include "graver/walks.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "graver/errors.hpp"

namespace graver {

namespace {

constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);

}  // namespace

ClosedWalk::ClosedWalk(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    const std::size_t len = vertices_.size();
    if (len < 4) throw InputError("closed walk needs length >= 4, got " + std::to_string(len));
    if (len % 2 != 0) throw InputError("closed walk has odd length " + std::to_string(len));
    for (std::size_t l = 0; l < len; ++l) {
        if (vertices_[l] == vertices_[(l + 1) % len]) {
            throw InputError("closed walk repeats vertex " + std::to_string(vertices_[l] + 1) + " consecutively");
        }
    }
}

ClosedWalk::ClosedWalk(const Graph& graph, std::vector<Vertex> vertices) : ClosedWalk(std::move(vertices)) {
    for (std::size_t l = 0; l < vertices_.size(); ++l) graph.edge_id(vertices_[l], at(l + 1));
}

std::size_t ClosedWalk::vertex_multiplicity(Vertex i) const {
    return static_cast<std::size_t>(std::count(vertices_.begin(), vertices_.end(), i));
}

std::size_t ClosedWalk::distinct_vertices() const {
    std::vector<Vertex> v = vertices_;
    std::sort(v.begin(), v.end());
    return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

ClosedWalk ClosedWalk::rotated(std::size_t offset) const {
    std::vector<Vertex> v(vertices_.size());
    for (std::size_t l = 0; l < v.size(); ++l) v[l] = at(l + offset);
    return ClosedWalk(std::move(v));
}

ClosedWalk ClosedWalk::reversed() const {
    std::vector<Vertex> v(vertices_.rbegin(), vertices_.rend());
    return ClosedWalk(std::move(v));
}

std::string ClosedWalk::to_string() const {
    std::string out;
    for (std::size_t l = 0; l < vertices_.size(); ++l) {
        if (l) out += ',';
        out += std::to_string(vertices_[l] + 1);
    }
    return out;
}

ClosedWalk ClosedWalk::parse(const std::string& text) {
    std::vector<Vertex> v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c); }), tok.end());
        std::size_t used = 0;
        long long label = 0;
        try {
            label = std::stoll(tok, &used);
        } catch (const std::exception&) {
            throw InputError("walk: expected a vertex label, got '" + tok + "'");
        }
        if (used != tok.size() || label < 1) throw InputError("walk: bad vertex label '" + tok + "'");
        v.push_back(static_cast<Vertex>(label - 1));
    }
    return ClosedWalk(std::move(v));
}

bool is_primitive(const ClosedWalk& w) {
    const auto seq = w.vertices();
    const std::size_t len = seq.size();
    const Vertex max_label = *std::max_element(seq.begin(), seq.end());
    std::vector<std::size_t> first(max_label + 1, kUnseen);
    std::vector<std::size_t> second(max_label + 1, kUnseen);

    for (std::size_t l = 0; l < len; ++l) {
        const Vertex v = seq[l];
        if (first[v] == kUnseen) {
            first[v] = l;
        } else if (second[v] == kUnseen) {
            second[v] = l;
        } else {
            return false;  // visited three times
        }
    }

    for (std::size_t l = 0; l < len; ++l) {
        const Vertex j = seq[l];
        if (first[j] != l || second[j] == kUnseen) continue;
        const std::size_t a = first[j];
        const std::size_t b = second[j];
        // Sub-walk (i_a .. i_b) has b - a edges; the complement has len - (b - a).
        if ((b - a) % 2 == 0) return false;
        // A vertex other than j on both sub-walks occurs once strictly inside
        // (a, b) and once strictly outside [a, b].
        for (std::size_t k = a + 1; k < b; ++k) {
            const Vertex v = seq[k];
            if (second[v] == kUnseen) continue;
            const bool other_outside = (first[v] < a) || (second[v] > b);
            if (other_outside) return false;
        }
    }
    return true;
}

Move walk_to_move(const Graph& graph, const ClosedWalk& w) {
    std::map<EdgeId, std::int32_t> acc;
    for (std::size_t l = 0; l < w.length(); ++l) {
        const EdgeId e = graph.edge_id(w.at(l), w.at(l + 1));
        acc[e] += (l % 2 == 0) ? 1 : -1;
    }
    Move z;
    for (const auto& [e, value] : acc) z.set(e, value);
    return z;
}

bool is_square_free(const Move& z) { return z.max_abs() <= 1; }

bool has_disjoint_signed_support(const ClosedWalk& w) {
    std::map<Edge, int> sign_mask;
    for (std::size_t l = 0; l < w.length(); ++l) {
        sign_mask[make_edge(w.at(l), w.at(l + 1))] |= (l % 2 == 0) ? 1 : 2;
    }
    return std::none_of(sign_mask.begin(), sign_mask.end(), [](const auto& kv) { return kv.second == 3; });
}

}  // namespace graver
