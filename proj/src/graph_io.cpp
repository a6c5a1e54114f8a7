#include "domatic/graph_io.hpp"

#include <fstream>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>

namespace domatic::io {

namespace {

void expect_word(std::istream& in, const std::string& word) {
    std::string got;
    if (!(in >> got) || got != word) throw FormatError("expected '" + word + "', got '" + got + "'");
}

template <typename T>
T read_number(std::istream& in, const char* what) {
    // Read as text so that signs and junk are rejected rather than wrapped.
    std::string token;
    if (!(in >> token)) throw FormatError(std::string("missing ") + what);
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
        throw FormatError(std::string("bad ") + what + " '" + token + "'");
    try {
        const unsigned long long value = std::stoull(token);
        if (value > std::numeric_limits<T>::max()) throw std::out_of_range("too large");
        return static_cast<T>(value);
    } catch (const std::exception&) {
        throw FormatError(std::string("bad ") + what + " '" + token + "'");
    }
}

void expect_end(std::istream& in) {
    std::string extra;
    if (in >> extra) throw FormatError("trailing content '" + extra + "'");
}

template <typename Fn>
auto with_file(const std::filesystem::path& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    try {
        return fn(in);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path.string());
    out << text;
    if (!out) throw FormatError("write failed for " + path.string());
}

template <typename Fn>
void save_with(const std::filesystem::path& path, Fn&& fn) {
    std::ostringstream out;
    fn(out);
    write_file(path, out.str());
}

}  // namespace

void write_graph(std::ostream& out, const MeasuredGraph& g) {
    out << "vertices " << g.vertex_count() << " generators " << g.generators().size() << '\n';
    for (const auto& w : g.weights()) out << "weight " << to_string(w) << '\n';
    for (const auto& sigma : g.generators()) {
        out << "perm\n";
        for (std::size_t v = 0; v < sigma.size(); ++v) out << sigma[v] << (v + 1 == sigma.size() ? '\n' : ' ');
    }
}

MeasuredGraph read_graph(std::istream& in) {
    expect_word(in, "vertices");
    const auto n = read_number<std::size_t>(in, "vertex count");
    expect_word(in, "generators");
    const auto count = read_number<std::size_t>(in, "generator count");
    if (n == 0) throw FormatError("graph has no vertices");
    std::vector<Rational> weights;
    weights.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
        expect_word(in, "weight");
        std::string text;
        if (!(in >> text)) throw FormatError("missing weight");
        try {
            weights.push_back(parse_rational(text));
        } catch (const std::invalid_argument& e) {
            throw FormatError(e.what());
        }
    }
    std::vector<Permutation> generators(count);
    for (auto& sigma : generators) {
        expect_word(in, "perm");
        sigma.resize(n);
        for (auto& image : sigma) image = read_number<Vertex>(in, "image");
    }
    expect_end(in);
    try {
        return build_from_generators(std::move(weights), std::move(generators));
    } catch (const GraphError& e) {
        throw FormatError(e.what());
    }
}

void write_coloring(std::ostream& out, const VertexColoring& f) {
    out << "coloring " << f.size() << " palette " << f.palette_bound() << '\n';
    for (std::size_t v = 0; v < f.size(); ++v) out << f.colors[v] << '\n';
}

VertexColoring read_coloring(std::istream& in) {
    expect_word(in, "coloring");
    const auto n = read_number<std::size_t>(in, "vertex count");
    expect_word(in, "palette");
    VertexColoring f;
    f.palette = read_number<Color>(in, "palette");
    f.colors.resize(n);
    for (auto& c : f.colors) c = read_number<Color>(in, "color");
    expect_end(in);
    try {
        f.validate();
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    return f;
}

void write_set(std::ostream& out, std::size_t vertex_count, const VertexSet& set) {
    out << "set " << vertex_count << " size " << set.size() << '\n';
    for (Vertex v : set) out << v << '\n';
}

VertexSet read_set(std::istream& in, std::size_t expected_vertex_count) {
    expect_word(in, "set");
    const auto n = read_number<std::size_t>(in, "vertex count");
    if (n != expected_vertex_count)
        throw FormatError("set is over " + std::to_string(n) + " vertices, expected " +
                          std::to_string(expected_vertex_count));
    expect_word(in, "size");
    const auto size = read_number<std::size_t>(in, "set size");
    if (size > n) throw FormatError("set larger than vertex count");
    VertexSet set(size);
    for (auto& v : set) {
        v = read_number<Vertex>(in, "vertex");
        if (v >= n) throw FormatError("vertex " + std::to_string(v) + " out of range");
    }
    expect_end(in);
    for (std::size_t i = 1; i < set.size(); ++i)
        if (set[i] <= set[i - 1]) throw FormatError("set is not strictly increasing");
    return set;
}

void write_edge_coloring(std::ostream& out, const MeasuredGraph& g, const EdgeColoring& ec) {
    out << "edgecoloring " << g.vertex_count() << " edges " << ec.edges.size() << '\n';
    for (std::size_t e = 0; e < ec.edges.size(); ++e)
        out << ec.edges[e].first << ' ' << ec.edges[e].second << ' ' << ec.colors[e] << '\n';
}

EdgeColoring read_edge_coloring(std::istream& in, const MeasuredGraph& g) {
    expect_word(in, "edgecoloring");
    const auto n = read_number<std::size_t>(in, "vertex count");
    expect_word(in, "edges");
    const auto count = read_number<std::size_t>(in, "edge count");
    EdgeColoring ec = edge_skeleton(g);
    if (n != g.vertex_count() || count != ec.edges.size()) throw FormatError("edge coloring does not match graph");
    for (std::size_t e = 0; e < count; ++e) {
        const auto u = read_number<Vertex>(in, "endpoint");
        const auto v = read_number<Vertex>(in, "endpoint");
        if (Edge{u, v} != ec.edges[e]) throw FormatError("edge " + std::to_string(e) + " does not match graph");
        ec.colors[e] = read_number<Color>(in, "color");
    }
    expect_end(in);
    return ec;
}

void save_graph(const std::filesystem::path& path, const MeasuredGraph& g) {
    save_with(path, [&](std::ostream& out) { write_graph(out, g); });
}
MeasuredGraph load_graph(const std::filesystem::path& path) {
    return with_file(path, [](std::istream& in) { return read_graph(in); });
}
void save_coloring(const std::filesystem::path& path, const VertexColoring& f) {
    save_with(path, [&](std::ostream& out) { write_coloring(out, f); });
}
VertexColoring load_coloring(const std::filesystem::path& path) {
    return with_file(path, [](std::istream& in) { return read_coloring(in); });
}
void save_set(const std::filesystem::path& path, std::size_t vertex_count, const VertexSet& set) {
    save_with(path, [&](std::ostream& out) { write_set(out, vertex_count, set); });
}
VertexSet load_set(const std::filesystem::path& path, std::size_t expected_vertex_count) {
    return with_file(path, [&](std::istream& in) { return read_set(in, expected_vertex_count); });
}
void save_edge_coloring(const std::filesystem::path& path, const MeasuredGraph& g, const EdgeColoring& ec) {
    save_with(path, [&](std::ostream& out) { write_edge_coloring(out, g, ec); });
}
EdgeColoring load_edge_coloring(const std::filesystem::path& path, const MeasuredGraph& g) {
    return with_file(path, [&](std::istream& in) { return read_edge_coloring(in, g); });
}

void save_text(const std::filesystem::path& path, const std::string& text) { write_file(path, text); }

std::string load_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace domatic::io
