#pragma once

// Catalog records, JSON/DOT serialization and the census comparison report.

#include <json.hpp>

#include <iomanip>

#include "flowcensus/combmap.hpp"
#include "flowcensus/marks.hpp"
#include "flowcensus/paper_labels.hpp"
#include "flowcensus/realize.hpp"

namespace flowcensus {

inline constexpr int kCatalogSchemaVersion = 1;

struct SingularPointSummary {
    int sources = 0;
    int sinks = 0;
    int saddles = 0;
    int saddle_node_sources = 0;
    int saddle_node_sinks = 0;
    int saddle_connections = 0;

    int total() const { return sources + sinks + saddles + saddle_node_sources + saddle_node_sinks; }
    friend bool operator==(const SingularPointSummary&, const SingularPointSummary&) = default;
};

inline SingularPointSummary summarize(const SeparatrixDiagram& d) {
    return {d.count(PointKind::source),
            d.count(PointKind::sink),
            d.count(PointKind::saddle),
            d.count(PointKind::saddle_node_source),
            d.count(PointKind::saddle_node_sink),
            d.saddle_connection ? 1 : 0};
}

struct CatalogEntry {
    std::string code;
    int n_edges = 0;
    int n_vertices = 0;
    int n_faces = 0;
    std::vector<int> degree_sequence;
    std::optional<CodeMark> mark;  // dart label in the code's numbering
    SingularPointSummary singular_point_summary;
    std::optional<std::string> paper_label;

    friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

struct Catalog {
    std::string catalog;                  // "maps" or "bifurcations"
    std::optional<std::string> kind;      // bifurcation kind
    int n_edges = 0;
    std::optional<int> n_saddles;
    bool allow_reflections = true;
    std::vector<CatalogEntry> entries;

    friend bool operator==(const Catalog&, const Catalog&) = default;
};

enum class BifurcationKind { saddle_node, saddle_connection };

inline std::string_view to_string(BifurcationKind k) {
    return k == BifurcationKind::saddle_node ? "saddle-node" : "saddle-connection";
}

inline std::optional<BifurcationKind> parse_bifurcation_kind(std::string_view s) {
    if (s == "saddle-node") return BifurcationKind::saddle_node;
    if (s == "saddle-connection") return BifurcationKind::saddle_connection;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// JSON

inline void to_json(nlohmann::json& j, const SingularPointSummary& s) {
    j = {{"source", s.sources},
         {"sink", s.sinks},
         {"saddle", s.saddles},
         {"saddle_node_source", s.saddle_node_sources},
         {"saddle_node_sink", s.saddle_node_sinks},
         {"saddle_connection", s.saddle_connections}};
}

inline void from_json(const nlohmann::json& j, SingularPointSummary& s) {
    j.at("source").get_to(s.sources);
    j.at("sink").get_to(s.sinks);
    j.at("saddle").get_to(s.saddles);
    j.at("saddle_node_source").get_to(s.saddle_node_sources);
    j.at("saddle_node_sink").get_to(s.saddle_node_sinks);
    j.at("saddle_connection").get_to(s.saddle_connections);
}

inline void to_json(nlohmann::json& j, const CatalogEntry& e) {
    j = {{"code", e.code},
         {"n_edges", e.n_edges},
         {"n_vertices", e.n_vertices},
         {"n_faces", e.n_faces},
         {"degree_sequence", e.degree_sequence},
         {"mark", nullptr},
         {"singular_point_summary", e.singular_point_summary},
         {"paper_label", nullptr}};
    if (e.mark) j["mark"] = {{"kind", std::string(to_string(e.mark->kind))}, {"dart", e.mark->label}};
    if (e.paper_label) j["paper_label"] = *e.paper_label;
}

inline void from_json(const nlohmann::json& j, CatalogEntry& e) {
    j.at("code").get_to(e.code);
    j.at("n_edges").get_to(e.n_edges);
    j.at("n_vertices").get_to(e.n_vertices);
    j.at("n_faces").get_to(e.n_faces);
    j.at("degree_sequence").get_to(e.degree_sequence);
    e.mark.reset();
    if (const auto& m = j.at("mark"); !m.is_null()) {
        auto kind = parse_mark_kind(m.at("kind").get<std::string>());
        if (!kind) throw Error(Errc::invalid_mark, "unknown mark kind in catalog entry");
        e.mark = CodeMark{m.at("dart").get<int>(), *kind};
    }
    j.at("singular_point_summary").get_to(e.singular_point_summary);
    e.paper_label.reset();
    if (const auto& l = j.at("paper_label"); !l.is_null()) e.paper_label = l.get<std::string>();
}

inline void to_json(nlohmann::json& j, const Catalog& c) {
    j = {{"schema_version", kCatalogSchemaVersion},
         {"catalog", c.catalog},
         {"kind", nullptr},
         {"n_edges", c.n_edges},
         {"n_saddles", nullptr},
         {"allow_reflections", c.allow_reflections},
         {"count", c.entries.size()},
         {"entries", c.entries}};
    if (c.kind) j["kind"] = *c.kind;
    if (c.n_saddles) j["n_saddles"] = *c.n_saddles;
}

inline void from_json(const nlohmann::json& j, Catalog& c) {
    if (j.at("schema_version").get<int>() != kCatalogSchemaVersion) {
        throw Error(Errc::unsupported_format, "unsupported catalog schema version");
    }
    j.at("catalog").get_to(c.catalog);
    c.kind.reset();
    if (!j.at("kind").is_null()) c.kind = j.at("kind").get<std::string>();
    j.at("n_edges").get_to(c.n_edges);
    c.n_saddles.reset();
    if (!j.at("n_saddles").is_null()) c.n_saddles = j.at("n_saddles").get<int>();
    j.at("allow_reflections").get_to(c.allow_reflections);
    j.at("entries").get_to(c.entries);
}

inline nlohmann::json diagram_to_json(const SeparatrixDiagram& d) {
    nlohmann::json points = nlohmann::json::array(), seps = nlohmann::json::array();
    for (const auto& p : d.points) {
        nlohmann::json jp = {{"id", p.id},
                             {"kind", std::string(to_string(p.kind))},
                             {"origin", std::string(to_string(p.origin))},
                             {"origin_index", p.origin_index},
                             {"mark_dart", nullptr},
                             {"rotation", p.rotation}};
        if (p.mark_dart) jp["mark_dart"] = *p.mark_dart;
        points.push_back(std::move(jp));
    }
    for (const auto& s : d.separatrices) {
        seps.push_back({{"id", s.id},
                        {"from", s.from},
                        {"to", s.to},
                        {"owner", s.owner},
                        {"role", std::string(to_string(s.role))},
                        {"dart", s.dart}});
    }
    nlohmann::json j = {{"n_saddles", d.n_saddles},
                        {"mark_kind", std::string(to_string(d.mark_kind))},
                        {"points", std::move(points)},
                        {"separatrices", std::move(seps)},
                        {"saddle_connection", nullptr}};
    if (d.saddle_connection) j["saddle_connection"] = {d.saddle_connection->first, d.saddle_connection->second};
    return j;
}

// ---------------------------------------------------------------------------
// Entries and catalogs

namespace detail {

inline SingularPointSummary morse_summary(const CombinatorialMap& m) {
    return {m.n_vertices(), m.n_faces(), m.n_edges(), 0, 0, 0};
}

inline void check_realization(const SeparatrixDiagram& d) {
    auto bad = check_diagram(d);
    if (!bad.empty()) throw Error(Errc::invariant_violation, bad.front());
}

}  // namespace detail

/// Entry for a plain map; the summary describes the Morse field it encodes.
inline CatalogEntry make_entry(const CombinatorialMap& m, bool allow_reflection, const PaperLabels* labels = nullptr) {
    CatalogEntry e;
    e.code = canonical_code(m, std::nullopt, allow_reflection).token();
    e.n_edges = m.n_edges();
    e.n_vertices = m.n_vertices();
    e.n_faces = m.n_faces();
    e.degree_sequence = degree_sequence(m);
    e.singular_point_summary = detail::morse_summary(m);
    if (labels) e.paper_label = labels->find(e.code);
    return e;
}

/// Entry for a marked map; the realized diagram is checked before summarizing.
inline CatalogEntry make_entry(const MarkedMap& mm, bool allow_reflection, const PaperLabels* labels = nullptr) {
    auto code = canonical_code(mm, allow_reflection);
    auto diag = realize(mm);
    detail::check_realization(diag);
    CatalogEntry e;
    e.code = code.token();
    e.n_edges = mm.map.n_edges();
    e.n_vertices = mm.map.n_vertices();
    e.n_faces = mm.map.n_faces();
    e.degree_sequence = degree_sequence(mm.map);
    e.mark = code.mark();
    e.singular_point_summary = summarize(diag);
    if (labels) e.paper_label = labels->find(e.code);
    return e;
}

inline Catalog map_catalog(int n_edges, const CensusOptions& opts = {}) {
    PaperLabels labels(opts.allow_reflection);
    Catalog c;
    c.catalog = "maps";
    c.n_edges = n_edges;
    c.allow_reflections = opts.allow_reflection;
    for (const auto& m : generate_maps({n_edges, opts.allow_reflection, opts.parallelism})) {
        c.entries.push_back(make_entry(m, opts.allow_reflection, &labels));
    }
    return c;
}

/// All classes of one bifurcation kind, ordered by marked canonical code.
inline std::vector<MarkedMap> bifurcation_classes(BifurcationKind kind, int n_saddles, const CensusOptions& opts = {}) {
    if (kind == BifurcationKind::saddle_connection) return enumerate_t_marks(n_saddles, opts);
    detail::check_saddle_range(n_saddles, 1, 4);
    std::vector<std::pair<CanonicalCode, MarkedMap>> found;
    for (const auto& m : detail::maps_for(n_saddles, opts)) {
        for (auto k : {MarkKind::source, MarkKind::sink}) {
            for (auto& mm : enumerate_marks(m, k, opts.allow_reflection)) {
                auto code = canonical_code(mm, opts.allow_reflection);
                found.emplace_back(std::move(code), std::move(mm));
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<MarkedMap> out;
    for (auto& f : found) out.push_back(std::move(f.second));
    return out;
}

inline Catalog bifurcation_catalog(BifurcationKind kind, int n_saddles, const CensusOptions& opts = {}) {
    PaperLabels labels(opts.allow_reflection);
    Catalog c;
    c.catalog = "bifurcations";
    c.kind = std::string(to_string(kind));
    c.n_saddles = n_saddles;
    c.n_edges = kind == BifurcationKind::saddle_connection ? n_saddles + 1 : n_saddles;
    c.allow_reflections = opts.allow_reflection;
    for (const auto& mm : bifurcation_classes(kind, n_saddles, opts)) {
        c.entries.push_back(make_entry(mm, opts.allow_reflection, &labels));
    }
    return c;
}

/// Decodes a code token into its (marked) map; UnknownCode if it does not
/// describe a valid object.
inline std::pair<CombinatorialMap, std::optional<Mark>> resolve_code(const std::string& token) {
    auto code = CanonicalCode::parse(token);
    if (!code) throw Error(Errc::unknown_code, "malformed code token '" + token + "'");
    try {
        auto decoded = code->decode();
        if (decoded.second) check_mark(decoded.first, *decoded.second);
        return decoded;
    } catch (const Error&) {
        throw Error(Errc::unknown_code, "code token '" + token + "' does not describe a valid object");
    }
}

/// Undirected multigraph with one node per vertex; the marked edge carries
/// the attribute mark="<kind>,<dart>".
inline std::string to_dot(const CombinatorialMap& m, const std::optional<Mark>& mark, const std::string& name = "map") {
    std::ostringstream os;
    os << "graph \"" << name << "\" {\n";
    for (int v = 0; v < m.n_vertices(); ++v) os << "  v" << v << ";\n";
    for (const auto& e : orbits(m, Cells::edges)) {
        os << "  v" << m.vertex_of(e[0]) << " -- v" << m.vertex_of(e[1]) << " [darts=\"" << e[0] << ',' << e[1] << '"';
        if (mark && m.edge_of(mark->dart) == m.edge_of(e[0])) {
            os << ", mark=\"" << to_string(mark->kind) << ',' << mark->dart << '"';
        }
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Census report

struct CensusRow {
    int singular_points = 0;  // 0 for rows about graphs
    std::string family;
    int computed = 0;
    int expected = 0;
    std::string note;

    bool matches() const { return expected == computed; }
};

struct CensusReport {
    bool allow_reflections = true;
    std::vector<CensusRow> rows;
    std::vector<std::string> notes;

    const CensusRow* find(std::string_view family) const {
        for (const auto& r : rows) {
            if (r.family == family) return &r;
        }
        return nullptr;
    }
};

inline CensusReport build_census_report(const CensusOptions& opts = {}) {
    CensusReport rep;
    rep.allow_reflections = opts.allow_reflection;
    auto row = [&](int points, std::string family, int computed, int expected, std::string note = {}) {
        rep.rows.push_back({points, std::move(family), computed, expected, std::move(note)});
    };

    auto note = [&](const std::string& text) { rep.notes.push_back(text); };

    // Graph listings. Four-edge expectations are the listed families a)-e).
    const std::optional<int> listed_maps[] = {std::nullopt, 2, 4, 14, 38, std::nullopt};
    for (int e = 1; e <= kMaxGeneratedEdges; ++e) {
        auto maps = generate_maps({e, opts.allow_reflection, opts.parallelism});
        int n = static_cast<int>(maps.size());
        if (!listed_maps[e]) {
            note("maps E=" + std::to_string(e) + ": " + std::to_string(n));
            continue;
        }
        row(0, "maps E=" + std::to_string(e), n, *listed_maps[e],
            e == 4 ? "listed as 3+9+14 graphs with 5/4/3 vertices plus 9+3 duals" : "");
        if (e == 4) {
            const std::pair<int, int> listed_by_vertices[] = {{5, 3}, {4, 9}, {3, 14}, {2, 9}, {1, 3}};
            for (auto [v, expected] : listed_by_vertices) {
                int k = static_cast<int>(std::count_if(maps.begin(), maps.end(), [v](const auto& m) { return m.n_vertices() == v; }));
                row(0, "maps E=4 V=" + std::to_string(v), k, expected);
            }
        }
    }

    auto sn1 = saddle_node_census(1, opts);
    row(3, "saddle-node n=1", sn1.total(), 2);

    int four_point = 0;
    for (const auto& m : detail::maps_for(2, opts)) four_point += static_cast<int>(enumerate_t_marks(m, opts.allow_reflection).size());
    row(4, "saddle-connection n=1", four_point, 0, "T-marks on two-edge graphs");

    auto sn2 = saddle_node_census(2, opts);
    row(5, "saddle-node n=2", sn2.total(), 10);
    row(5, "saddle-node n=2 source", sn2.source_total, 5, "flows 2-6");
    row(5, "saddle-node n=2 sink", sn2.sink_total, 5, "flows 8-12");
    {
        PaperLabels labels(opts.allow_reflection);
        const std::pair<const char*, int> per_graph[] = {{"G^2_1", 1}, {"G^2_2", 2}, {"G^2_3", 2}, {"G^2_4", 0}};
        for (auto [name, expected] : per_graph) {
            for (const auto& r : sn2.per_map) {
                if (labels.find(r.code.token()) == std::optional<std::string>(name)) {
                    row(5, std::string("saddle-node n=2 source on ") + name, r.source_classes, expected);
                }
            }
        }
    }

    auto sc2 = saddle_connection_census(2, opts);
    row(6, "saddle-connection n=2", sc2.total, 4, "flows 13-16");

    auto sn3 = saddle_node_census(3, opts);
    row(7, "saddle-node n=3", sn3.total(), 56);
    note("n=3 saddle-node: " + std::to_string(sn3.source_total) + " source + " + std::to_string(sn3.sink_total) +
         " sink classes; duality bijection " + (sn3.duality_bijection ? "holds on every graph" : "FAILS"));

    auto sc3 = saddle_connection_census(3, opts);
    row(8, "saddle-connection n=3", sc3.total, 20);
    note("n=3 saddle-connection: " + std::to_string(sc3.attached()) + " attached (" + std::to_string(sc3.non_disconnecting) +
         " non-disconnecting + " + std::to_string(sc3.pendant) + " pendant) + " + std::to_string(sc3.total - sc3.attached()) +
         " with a disconnecting perpendicular edge (K=1, L=1: " + std::to_string(sc3.split_count(1, 1)) + ")");

    auto sn4 = saddle_node_census(4, opts);
    row(9, "saddle-node n=4 (source+sink)", sn4.total(), 217);
    row(9, "saddle-node n=4 (2 x source)", sn4.twice_source(), 217);
    row(9, "saddle-node n=4 source on graphs with 5 or 4 vertices", sn4.sum_where([](const auto& r) { return r.vertices >= 4; }, true, false), 64,
        "graphs 1-12");
    row(9, "saddle-node n=4 source+sink on graphs with 3 vertices", sn4.sum_where([](const auto& r) { return r.vertices == 3; }, true, true), 89,
        "graphs 13-26");

    auto sc4 = saddle_connection_census(4, opts);
    row(10, "saddle-connection n=4", sc4.total, 160);
    row(10, "saddle-connection n=4 attached", sc4.attached(), 130);
    row(10, "saddle-connection n=4 split K=1 L=2", sc4.split_count(1, 2), 16);
    row(10, "saddle-connection n=4 split K=2 L=1", sc4.split_count(2, 1), 14);

    std::ostringstream parity;
    parity << "parity n=4: " << sn4.source_total << " source classes, " << sn4.sink_total << " sink classes ("
           << sn4.sum_where([](const auto& r) { return r.vertices == 3; }, true, false)
           << " source on graphs with 3 vertices); reversal maps sink classes one-to-one onto source classes of the dual on "
           << (sn4.duality_bijection ? "every" : "NOT every") << " graph, so the saddle-node total is "
           << (sn4.total() % 2 == 0 ? "even" : "odd") << " and cannot equal an odd count";
    note(parity.str());
    note("n=4 saddle-connection: " + std::to_string(sc4.non_disconnecting) + " non-disconnecting + " +
         std::to_string(sc4.pendant) + " pendant");
    return rep;
}

inline nlohmann::json report_to_json(const CensusReport& rep) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rep.rows) {
        nlohmann::json j = {{"singular_points", r.singular_points},
                            {"family", r.family},
                            {"computed", r.computed},
                            {"expected", r.expected},
                            {"delta", r.computed - r.expected},
                            {"match", r.matches()},
                            {"note", r.note}};
        rows.push_back(std::move(j));
    }
    return {{"schema_version", kCatalogSchemaVersion},
            {"allow_reflections", rep.allow_reflections},
            {"rows", std::move(rows)},
            {"notes", rep.notes}};
}

inline std::string report_to_text(const CensusReport& rep) {
    std::ostringstream os;
    os << std::left << std::setw(7) << "points" << std::setw(58) << "family" << std::right << std::setw(9) << "computed"
       << std::setw(9) << "listed" << std::setw(7) << "delta" << "  status\n";
    for (const auto& r : rep.rows) {
        os << std::left << std::setw(7) << (r.singular_points ? std::to_string(r.singular_points) : "-") << std::setw(58)
           << r.family << std::right << std::setw(9) << r.computed;
        int delta = r.computed - r.expected;
        os << std::setw(9) << r.expected << std::setw(7) << (delta > 0 ? "+" : "") + std::to_string(delta)
           << (delta == 0 ? "  match" : "  MISMATCH");
        if (!r.note.empty()) os << "  (" << r.note << ")";
        os << '\n';
    }
    for (const auto& n : rep.notes) os << "note: " << n << '\n';
    return os.str();
}

}  // namespace flowcensus
