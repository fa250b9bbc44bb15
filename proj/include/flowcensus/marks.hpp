#pragma once

// Marked maps: a spherical map plus one selected element. Each marked map up
// to mark-preserving equivalence is one codimension-1 gradient flow.
//
//   source mark  - a non-loop edge and one of its ends (saddle-source)
//   sink mark    - an edge bordering two distinct faces and one of them
//                  (saddle-sink)
//   T mark       - the perpendicular dart at a loop-free degree-3 vertex
//                  (saddle connection); the map has one more edge than the
//                  flow has saddles

#include <map>

#include "flowcensus/combmap.hpp"
#include "flowcensus/generate.hpp"

namespace flowcensus {

struct MarkedMap {
    CombinatorialMap map;
    Mark mark;
};

struct CensusOptions {
    bool allow_reflection = true;
    int parallelism = 1;
};

inline bool is_legal_mark(const CombinatorialMap& m, const Mark& mark) {
    if (mark.dart < 0 || mark.dart >= m.n_darts()) return false;
    switch (mark.kind) {
        case MarkKind::source:
            return !m.is_loop(mark.dart);
        case MarkKind::sink:
            return !m.is_bridge(mark.dart);
        case MarkKind::t_vertex: {
            if (m.degree(mark.dart) != 3) return false;
            Dart d = mark.dart;
            for (int i = 0; i < 3; ++i, d = m.sigma(d)) {
                if (m.is_loop(d)) return false;
            }
            return true;
        }
    }
    return false;
}

inline void check_mark(const CombinatorialMap& m, const Mark& mark) {
    if (!is_legal_mark(m, mark)) {
        throw Error(Errc::invalid_mark,
                    std::string(to_string(mark.kind)) + " mark on dart " + std::to_string(mark.dart) + " is not legal");
    }
}

inline MarkedMap make_marked(CombinatorialMap m, Mark mark) {
    check_mark(m, mark);
    return {std::move(m), mark};
}

inline CanonicalCode canonical_code(const MarkedMap& mm, bool allow_reflection = true) {
    return canonical_code(mm.map, mm.mark, allow_reflection);
}

inline bool are_equivalent(const MarkedMap& a, const MarkedMap& b, bool allow_reflection = true) {
    return are_equivalent(a.map, a.mark, b.map, b.mark, allow_reflection);
}

/// One representative per class of legal marks of `kind` on `m`, each using
/// the smallest dart of its class, ordered by marked canonical code.
inline std::vector<MarkedMap> enumerate_marks(const CombinatorialMap& m, MarkKind kind, bool allow_reflection = true) {
    std::vector<std::pair<CanonicalCode, Dart>> classes;
    for (Dart d = 0; d < m.n_darts(); ++d) {
        Mark mark{kind, d};
        if (!is_legal_mark(m, mark)) continue;
        auto code = canonical_code(m, mark, allow_reflection);
        bool seen = std::any_of(classes.begin(), classes.end(), [&](const auto& c) { return c.first == code; });
        if (!seen) classes.emplace_back(std::move(code), d);
    }
    std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<MarkedMap> out;
    for (const auto& [code, d] : classes) out.push_back({m, Mark{kind, d}});
    return out;
}

inline std::vector<MarkedMap> enumerate_source_marks(const CombinatorialMap& m, bool allow_reflection = true) {
    return enumerate_marks(m, MarkKind::source, allow_reflection);
}

inline std::vector<MarkedMap> enumerate_sink_marks(const CombinatorialMap& m, bool allow_reflection = true) {
    return enumerate_marks(m, MarkKind::sink, allow_reflection);
}

inline std::vector<MarkedMap> enumerate_t_marks(const CombinatorialMap& m, bool allow_reflection = true) {
    return enumerate_marks(m, MarkKind::t_vertex, allow_reflection);
}

namespace detail {

inline void check_saddle_range(int n, int lo, int hi) {
    if (n < lo || n > hi) {
        throw Error(Errc::saddle_count_out_of_range,
                    "saddle count " + std::to_string(n) + " outside [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
    }
}

inline std::vector<CombinatorialMap> maps_for(int n_edges, const CensusOptions& opts) {
    return generate_maps({n_edges, opts.allow_reflection, opts.parallelism});
}

}  // namespace detail

/// Saddle-connection flows with `n_saddles` saddles, one per class, ordered
/// by marked canonical code.
inline std::vector<MarkedMap> enumerate_t_marks(int n_saddles, const CensusOptions& opts = {}) {
    detail::check_saddle_range(n_saddles, 2, 4);
    std::vector<std::pair<CanonicalCode, MarkedMap>> all;
    for (const auto& m : detail::maps_for(n_saddles + 1, opts)) {
        for (auto& mm : enumerate_t_marks(m, opts.allow_reflection)) {
            auto code = canonical_code(mm, opts.allow_reflection);
            all.emplace_back(std::move(code), std::move(mm));
        }
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<MarkedMap> out;
    for (auto& p : all) out.push_back(std::move(p.second));
    return out;
}

/// Time reversal of a saddle-node flow: the dual map with the mark of the
/// opposite kind on the same dart. The dual shares the dart set, vertex(d)
/// of the input is face(d) of the dual and vice versa.
inline MarkedMap reverse(const MarkedMap& mm) {
    if (mm.mark.kind == MarkKind::t_vertex) {
        throw Error(Errc::not_reversible, "reversal of saddle-connection flows is not defined");
    }
    MarkKind flipped = mm.mark.kind == MarkKind::source ? MarkKind::sink : MarkKind::source;
    return make_marked(dual(mm.map), Mark{flipped, mm.mark.dart});
}

// ---------------------------------------------------------------------------
// Censuses

struct MapMarkCounts {
    CanonicalCode code;
    int vertices = 0;
    int faces = 0;
    int source_classes = 0;
    int sink_classes = 0;
    /// Source classes on dual(map), reached by reversing the sink classes.
    int dual_source_classes = 0;
    bool duality_bijection = false;
};

struct SaddleNodeCensus {
    int n_saddles = 0;
    int singular_points = 0;
    std::vector<MapMarkCounts> per_map;
    int source_total = 0;
    int sink_total = 0;
    /// Every map's sink classes reverse one-to-one onto source classes of its dual.
    bool duality_bijection = true;

    int total() const { return source_total + sink_total; }
    int twice_source() const { return 2 * source_total; }

    template <class Pred>
    int sum_where(Pred pred, bool sources, bool sinks) const {
        int s = 0;
        for (const auto& row : per_map) {
            if (!pred(row)) continue;
            if (sources) s += row.source_classes;
            if (sinks) s += row.sink_classes;
        }
        return s;
    }
};

inline SaddleNodeCensus saddle_node_census(int n_saddles, const CensusOptions& opts = {}) {
    detail::check_saddle_range(n_saddles, 1, 4);
    SaddleNodeCensus c;
    c.n_saddles = n_saddles;
    c.singular_points = 2 * n_saddles + 1;
    for (const auto& m : detail::maps_for(n_saddles, opts)) {
        MapMarkCounts row;
        row.code = canonical_code(m, std::nullopt, opts.allow_reflection);
        row.vertices = m.n_vertices();
        row.faces = m.n_faces();
        auto sources = enumerate_source_marks(m, opts.allow_reflection);
        auto sinks = enumerate_sink_marks(m, opts.allow_reflection);
        row.source_classes = static_cast<int>(sources.size());
        row.sink_classes = static_cast<int>(sinks.size());

        auto dual_sources = enumerate_source_marks(dual(m), opts.allow_reflection);
        row.dual_source_classes = static_cast<int>(dual_sources.size());
        std::vector<CanonicalCode> reversed, expected;
        for (const auto& s : sinks) reversed.push_back(canonical_code(reverse(s), opts.allow_reflection));
        for (const auto& s : dual_sources) expected.push_back(canonical_code(s, opts.allow_reflection));
        std::sort(reversed.begin(), reversed.end());
        std::sort(expected.begin(), expected.end());
        row.duality_bijection =
            reversed == expected && std::adjacent_find(reversed.begin(), reversed.end()) == reversed.end();

        c.source_total += row.source_classes;
        c.sink_total += row.sink_classes;
        c.duality_bijection = c.duality_bijection && row.duality_bijection;
        c.per_map.push_back(std::move(row));
    }
    return c;
}

/// Where the perpendicular edge of a T mark sits. If deleting it leaves the
/// graph connected the flow is `attached`; otherwise the side holding the
/// T-vertex has `k_edges` edges once the two collinear edges are glued into
/// one, and the far side has `l_edges` edges. A pendant perpendicular edge is
/// the disconnecting case with l_edges == 0.
struct TMarkPlacement {
    bool disconnecting = false;
    int k_edges = 0;
    int l_edges = 0;

    bool pendant() const { return disconnecting && l_edges == 0; }
    friend bool operator==(const TMarkPlacement&, const TMarkPlacement&) = default;
};

inline TMarkPlacement classify_t_mark(const MarkedMap& mm) {
    const auto& m = mm.map;
    const Dart p = mm.mark.dart;
    std::vector<char> reached(m.n_vertices(), 0);
    std::vector<int> stack{m.vertex_of(p)};
    reached[m.vertex_of(p)] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (Dart d = 0; d < m.n_darts(); ++d) {
            if (m.vertex_of(d) != v || m.edge_of(d) == m.edge_of(p)) continue;
            int w = m.vertex_of(m.alpha(d));
            if (!reached[w]) {
                reached[w] = 1;
                stack.push_back(w);
            }
        }
    }
    TMarkPlacement placement;
    if (reached[m.vertex_of(m.alpha(p))]) {
        placement.k_edges = m.n_edges() - 2;
        return placement;
    }
    int near_darts = 0;
    for (Dart d = 0; d < m.n_darts(); ++d) {
        if (m.edge_of(d) != m.edge_of(p) && reached[m.vertex_of(d)]) ++near_darts;
    }
    placement.disconnecting = true;
    placement.k_edges = near_darts / 2 - 1;
    placement.l_edges = m.n_edges() - 1 - near_darts / 2;
    return placement;
}

struct SaddleConnectionCensus {
    int n_saddles = 0;
    int singular_points = 0;
    int total = 0;
    int non_disconnecting = 0;
    int pendant = 0;
    /// (k_edges, l_edges) -> classes, disconnecting non-pendant placements only.
    std::map<std::pair<int, int>, int> split;

    /// Perpendicular edge ends on the remaining graph or at a new end vertex.
    int attached() const { return non_disconnecting + pendant; }
    int split_count(int k, int l) const {
        auto it = split.find({k, l});
        return it == split.end() ? 0 : it->second;
    }
};

inline SaddleConnectionCensus summarize_t_marks(int n_saddles, const std::vector<MarkedMap>& classes) {
    SaddleConnectionCensus c;
    c.n_saddles = n_saddles;
    c.singular_points = 2 * n_saddles + 2;
    c.total = static_cast<int>(classes.size());
    for (const auto& mm : classes) {
        auto p = classify_t_mark(mm);
        if (!p.disconnecting) {
            ++c.non_disconnecting;
        } else if (p.pendant()) {
            ++c.pendant;
        } else {
            ++c.split[{p.k_edges, p.l_edges}];
        }
    }
    return c;
}

inline SaddleConnectionCensus saddle_connection_census(int n_saddles, const CensusOptions& opts = {}) {
    return summarize_t_marks(n_saddles, enumerate_t_marks(n_saddles, opts));
}

}  // namespace flowcensus
