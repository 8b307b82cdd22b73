// Edge-list ingestion (KONECT/SNAP-style "u v" lines, %/# comments),
// dense id remapping, and result/stats emission.
#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "khtruss/graph.hpp"
#include "khtruss/stats.hpp"

namespace khtruss {

// Graph plus the dense-id -> original-id mapping used for output.
struct LoadedGraph {
    Graph graph;
    std::vector<std::int64_t> original_ids;
};

namespace detail {

inline bool parse_int64(const std::string& tok, std::int64_t& out) {
    if (tok.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        return false;
    }
    return pos == tok.size();
}

}  // namespace detail

// Parses whitespace-separated "u v" lines; lines starting with '%' or
// '#' are comments; extra trailing columns are ignored. Malformed lines
// (fewer than two tokens, non-integer or negative ids) are hard errors
// naming the line number. Original ids are remapped to a dense [0, n)
// space preserving numeric order.
inline LoadedGraph load_edge_list(std::istream& in, const std::string& name) {
    std::vector<std::pair<std::int64_t, std::int64_t>> raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '%' || line[first] == '#') continue;

        std::istringstream ls(line);
        std::string tu, tv;
        if (!(ls >> tu >> tv))
            throw std::runtime_error(name + ":" + std::to_string(line_no) +
                                     ": expected two vertex ids");
        std::int64_t u = 0, v = 0;
        if (!detail::parse_int64(tu, u) || !detail::parse_int64(tv, v))
            throw std::runtime_error(name + ":" + std::to_string(line_no) +
                                     ": non-integer vertex id");
        if (u < 0 || v < 0)
            throw std::runtime_error(name + ":" + std::to_string(line_no) +
                                     ": negative vertex id");
        raw.emplace_back(u, v);
    }

    std::vector<std::int64_t> ids;
    ids.reserve(2 * raw.size());
    for (const auto& [u, v] : raw) {
        ids.push_back(u);
        ids.push_back(v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    auto dense = [&](std::int64_t orig) {
        return static_cast<std::int64_t>(
            std::lower_bound(ids.begin(), ids.end(), orig) - ids.begin());
    };
    std::vector<std::pair<std::int64_t, std::int64_t>> remapped;
    remapped.reserve(raw.size());
    for (const auto& [u, v] : raw) remapped.emplace_back(dense(u), dense(v));

    LoadedGraph out;
    out.graph = build_graph(remapped);
    out.original_ids = std::move(ids);
    return out;
}

inline LoadedGraph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    return load_edge_list(in, path);
}

// One "u\tv\tt" line per edge, original ids, ordered by the dense (u, v)
// pair (EdgeId order).
inline void write_trussness(std::ostream& os, const LoadedGraph& lg,
                            const TrussnessResult& res) {
    for (EdgeId e = 0; e < lg.graph.edge_count(); ++e) {
        const auto [u, v] = lg.graph.edge(e);
        os << lg.original_ids[u] << '\t' << lg.original_ids[v] << '\t'
           << res.trussness[e] << '\n';
    }
}

inline std::string stats_csv_header() {
    return "mode,h,threads,rounds,evaluations,skipped,wall_time_ms,vertices,edges";
}

inline std::string stats_csv_row(const RunStats& st) {
    std::ostringstream os;
    os << to_string(st.mode) << ',' << st.h << ',' << st.workers << ',' << st.rounds
       << ',' << st.evaluations << ',' << st.skipped << ',' << st.wall_time_ms << ','
       << st.vertex_count << ',' << st.edge_count;
    return os.str();
}

inline std::string stats_line(const RunStats& st) {
    std::ostringstream os;
    os << "mode=" << to_string(st.mode) << " h=" << st.h << " threads=" << st.workers
       << " rounds=" << st.rounds << " evaluations=" << st.evaluations
       << " skipped=" << st.skipped << " wall_time_ms=" << st.wall_time_ms
       << " vertices=" << st.vertex_count << " edges=" << st.edge_count;
    return os.str();
}

}  // namespace khtruss
