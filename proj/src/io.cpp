#include "graver/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "graver/errors.hpp"

namespace graver::io {

namespace {

std::string strip_comment(const std::string& line) {
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

std::vector<std::string> split_ws(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

std::int64_t parse_int(const std::string& tok, const std::string& where) {
    std::int64_t v = 0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw InputError(where + ": expected an integer, got '" + tok + "'");
    return v;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path.string());
    return in;
}

}  // namespace

EdgeList parse_edge_list(std::istream& in, const EdgeListOptions& options) {
    EdgeList list;
    std::set<Edge> seen;
    std::size_t max_label = 0;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        const auto toks = split_ws(strip_comment(line));
        if (toks.empty()) continue;
        const std::string where = "line " + std::to_string(lineno);
        if (toks.size() != 2) throw InputError(where + ": expected two vertex labels");
        const auto a = parse_int(toks[0], where);
        const auto b = parse_int(toks[1], where);
        if (a < 1 || b < 1) throw InputError(where + ": vertex labels are 1-based");
        if (options.vertex_count && (static_cast<std::size_t>(a) > *options.vertex_count ||
                                     static_cast<std::size_t>(b) > *options.vertex_count)) {
            throw InputError(where + ": vertex label exceeds vertex count " + std::to_string(*options.vertex_count));
        }
        max_label = std::max({max_label, static_cast<std::size_t>(a), static_cast<std::size_t>(b)});
        const auto u = static_cast<Vertex>(a - 1);
        const auto v = static_cast<Vertex>(b - 1);
        if (u == v) {
            if (!options.drop_loops) throw InputError(where + ": self-loop at vertex " + std::to_string(a));
            list.dropped_loops.push_back(u);
            continue;
        }
        const Edge e = make_edge(u, v);
        if (!seen.insert(e).second) {
            throw InputError(where + ": duplicate edge {" + std::to_string(e.u + 1) + "," + std::to_string(e.v + 1) + "}");
        }
        list.edges.push_back(e);
    }
    list.vertex_count = options.vertex_count.value_or(max_label);
    return list;
}

EdgeList read_edge_list(const std::filesystem::path& path, const EdgeListOptions& options) {
    auto in = open_or_throw(path);
    return parse_edge_list(in, options);
}

Graph to_graph(const EdgeList& list) { return Graph(list.vertex_count, list.edges); }

EdgeVector to_edge_vector(const EdgeList& list, const Graph& underlying) {
    return EdgeVector::indicator(underlying, list.edges);
}

Capacities read_capacities(const std::filesystem::path& path, const Graph& graph) {
    auto in = open_or_throw(path);
    std::vector<std::int32_t> caps(graph.edge_count(), 0);
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        const auto toks = split_ws(strip_comment(line));
        if (toks.empty()) continue;
        const std::string where = path.string() + " line " + std::to_string(lineno);
        if (toks.size() != 3) throw InputError(where + ": expected `i j cap`");
        const auto a = parse_int(toks[0], where);
        const auto b = parse_int(toks[1], where);
        const auto c = parse_int(toks[2], where);
        if (a < 1 || b < 1) throw InputError(where + ": vertex labels are 1-based");
        if (c < 1 || c > Capacities::kUnbounded) throw InputError(where + ": capacity must be a positive integer");
        const EdgeId e = graph.edge_id(static_cast<Vertex>(a - 1), static_cast<Vertex>(b - 1));
        if (caps[e] != 0) throw InputError(where + ": capacity given twice for the same edge");
        caps[e] = static_cast<std::int32_t>(c);
    }
    for (EdgeId e = 0; e < caps.size(); ++e) {
        if (caps[e] == 0) {
            const Edge& ed = graph.edge(e);
            throw InputError(path.string() + ": no capacity for edge {" + std::to_string(ed.u + 1) + "," +
                             std::to_string(ed.v + 1) + "}");
        }
    }
    return Capacities::per_edge(std::move(caps));
}

DegreeSequence parse_degree_sequence(const std::string& text) {
    std::string body = strip_comment(text);
    std::replace(body.begin(), body.end(), ',', ' ');
    std::vector<std::int64_t> d;
    for (const auto& tok : split_ws(body)) d.push_back(parse_int(tok, "degree sequence"));
    if (d.empty()) throw InputError("empty degree sequence");
    return DegreeSequence::checked(std::move(d));
}

DegreeSequence read_degree_sequence(const std::filesystem::path& path) {
    // Only the first non-comment line carries the sequence.
    auto in = open_or_throw(path);
    std::string line;
    while (std::getline(in, line)) {
        if (!split_ws(strip_comment(line)).empty()) return parse_degree_sequence(line);
    }
    throw InputError(path.string() + ": no degree sequence found");
}

std::string format_degree_sequence(const DegreeSequence& d) {
    std::string out;
    for (std::size_t i = 0; i < d.degrees.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(d.degrees[i]);
    }
    return out;
}

std::string format_fiber_point(const Graph& graph, const EdgeVector& x) {
    std::string out;
    for (const auto& entry : x.entries()) {
        const Edge& e = graph.edge(entry.edge);
        if (!out.empty()) out += ' ';
        out += std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1) + ":" + std::to_string(entry.value);
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace graver::io
