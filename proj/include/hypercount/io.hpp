#ifndef HYPERCOUNT_IO_HPP
#define HYPERCOUNT_IO_HPP

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hypercount/hypergraph.hpp"

namespace hypercount {

using json = nlohmann::ordered_json;

// Edge-list text: "n k" on the first line, then one sorted edge per line.
// Edges come out in sorted order, so write(read(write(H))) == write(H).
inline void write_edge_list(std::ostream& out, const Hypergraph& h) {
    out << h.n() << ' ' << h.k() << '\n';
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        auto e = h.edge(i);
        for (unsigned j = 0; j < h.k(); ++j) out << (j ? " " : "") << e[j];
        out << '\n';
    }
}

inline std::string edge_list_string(const Hypergraph& h) {
    std::ostringstream out;
    write_edge_list(out, h);
    return out.str();
}

inline Hypergraph read_edge_list(std::istream& in, const std::string& source = "<stream>") {
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) {
        return io_error(source + ":" + std::to_string(line_no) + ": " + what);
    };
    long long n = -1, k = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream header(line);
        std::string extra;
        if (!(header >> n >> k) || (header >> extra)) throw fail("expected header 'n k'");
        break;
    }
    if (n < 0 || k < 1) throw fail("missing or invalid header");
    std::vector<std::vector<Vertex>> edges;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row(line);
        std::vector<Vertex> e;
        long long v;
        while (row >> v) {
            if (v < 0 || v >= n) throw fail("vertex " + std::to_string(v) + " out of range");
            e.push_back(static_cast<Vertex>(v));
        }
        if (!row.eof()) throw fail("non-numeric token");
        if (e.size() != static_cast<std::size_t>(k)) throw fail("edge has " + std::to_string(e.size()) + " vertices");
        edges.push_back(std::move(e));
    }
    try {
        return Hypergraph(static_cast<std::size_t>(n), static_cast<unsigned>(k), std::move(edges));
    } catch (const invalid_structure& e) {
        throw io_error(source + ": " + e.what());
    }
}

inline Hypergraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path + " for reading");
    return read_edge_list(in, path);
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw io_error("write failed for " + path);
}

inline void write_edge_list_file(const std::string& path, const Hypergraph& h) {
    write_text_file(path, edge_list_string(h));
}

inline json to_json(const Hypergraph& h) {
    return json{{"n", h.n()}, {"k", h.k()}, {"edges", h.edge_list()}};
}

inline Hypergraph hypergraph_from_json(const json& j) {
    try {
        return Hypergraph(j.at("n").get<std::size_t>(), j.at("k").get<unsigned>(),
                          j.at("edges").get<std::vector<std::vector<Vertex>>>());
    } catch (const json::exception& e) {
        throw io_error(std::string("bad hypergraph JSON: ") + e.what());
    }
}

// One whitespace-separated line of vertices per block.
inline std::string blocks_string(const std::vector<std::vector<Vertex>>& blocks) {
    std::ostringstream out;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.size(); ++i) out << (i ? " " : "") << b[i];
        out << '\n';
    }
    return out.str();
}

inline std::vector<std::vector<Vertex>> read_blocks(std::istream& in, const std::string& source = "<stream>") {
    std::vector<std::vector<Vertex>> blocks;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row(line);
        std::vector<Vertex> b;
        long long v;
        while (row >> v) {
            if (v < 0) throw io_error(source + ":" + std::to_string(line_no) + ": negative vertex");
            b.push_back(static_cast<Vertex>(v));
        }
        if (!row.eof()) throw io_error(source + ":" + std::to_string(line_no) + ": non-numeric token");
        blocks.push_back(std::move(b));
    }
    return blocks;
}

inline std::vector<std::vector<Vertex>> read_blocks_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path + " for reading");
    return read_blocks(in, path);
}

} // namespace hypercount

#endif // HYPERCOUNT_IO_HPP
