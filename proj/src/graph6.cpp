// graph6 codec. Bit layout: upper triangle in column order x(0,1), x(0,2),
// x(1,2), x(0,3), ..., packed big-endian into 6-bit groups offset by 63.

#include <fstream>

#include "cubiso/graph.hpp"

namespace cubiso {

namespace {

constexpr int kOffset = 63;

long decode_size(const std::string& s, std::size_t& pos) {
    if (pos >= s.size()) throw parse_error("graph6: empty input");
    int c = static_cast<unsigned char>(s[pos]);
    if (c < 63 || c > 126) throw parse_error("graph6: byte out of range");
    if (c != 126) {
        ++pos;
        return c - kOffset;
    }
    // 126 prefix: 18-bit size in 3 bytes; 126 126 (36-bit) is out of scope here.
    if (pos + 1 < s.size() && static_cast<unsigned char>(s[pos + 1]) == 126)
        throw parse_error("graph6: sizes above 258047 unsupported");
    if (pos + 3 >= s.size()) throw parse_error("graph6: truncated size");
    long n = 0;
    for (int i = 1; i <= 3; ++i) {
        int b = static_cast<unsigned char>(s[pos + i]);
        if (b < 63 || b > 126) throw parse_error("graph6: byte out of range in size");
        n = (n << 6) | (b - kOffset);
    }
    pos += 4;
    return n;
}

std::string strip_header(const std::string& line) {
    const std::string header = ">>graph6<<";
    std::string s = line;
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    if (s.rfind(header, 0) == 0) s = s.substr(header.size());
    return s;
}

}  // namespace

std::vector<std::vector<Vertex>> parse_graph6_adjacency(const std::string& line) {
    std::string s = strip_header(line);
    std::size_t pos = 0;
    long n = decode_size(s, pos);
    if (n < 0) throw parse_error("graph6: negative size");
    const long bits_needed = n * (n - 1) / 2;
    const long bytes_needed = (bits_needed + 5) / 6;
    if (static_cast<long>(s.size()) - static_cast<long>(pos) != bytes_needed)
        throw parse_error("graph6: body length mismatch for n=" + std::to_string(n));
    std::vector<std::vector<Vertex>> adj(n);
    long bit = 0;
    for (Vertex j = 1; j < n; ++j) {
        for (Vertex i = 0; i < j; ++i, ++bit) {
            int c = static_cast<unsigned char>(s[pos + bit / 6]);
            if (c < 63 || c > 126) throw parse_error("graph6: byte out of range in body");
            int val = c - kOffset;
            if (val >> (5 - bit % 6) & 1) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
        }
    }
    return adj;
}

std::string encode_graph6(const std::vector<std::vector<Vertex>>& adj) {
    const long n = static_cast<long>(adj.size());
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + kOffset));
    } else if (n <= 258047) {
        out.push_back(126);
        out.push_back(static_cast<char>((n >> 12 & 63) + kOffset));
        out.push_back(static_cast<char>((n >> 6 & 63) + kOffset));
        out.push_back(static_cast<char>((n & 63) + kOffset));
    } else {
        throw parse_error("graph6: sizes above 258047 unsupported");
    }
    int acc = 0, nbits = 0;
    std::vector<std::vector<bool>> has(n, std::vector<bool>(n, false));
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v : adj[u]) has[u][v] = true;
    for (Vertex j = 1; j < n; ++j) {
        for (Vertex i = 0; i < j; ++i) {
            acc = acc << 1 | (has[i][j] ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(acc + kOffset));
                acc = 0;
                nbits = 0;
            }
        }
    }
    if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + kOffset));
    return out;
}

CubicGraph parse_cubic_graph6(const std::string& line) {
    return CubicGraph::from_adjacency(parse_graph6_adjacency(line));
}

SmallGraph parse_small_graph6(const std::string& line) {
    return SmallGraph::from_adjacency(parse_graph6_adjacency(line));
}

std::string encode_graph6(const CubicGraph& g) { return encode_graph6(g.adjacency()); }

std::string encode_graph6(const SmallGraph& g) {
    std::vector<std::vector<Vertex>> adj(g.n());
    for (Vertex v = 0; v < g.n(); ++v) adj[v] = g.neighbors(v);
    return encode_graph6(adj);
}

std::vector<std::string> read_graph6_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

}  // namespace cubiso
