#pragma once

// Separatrix diagrams of codimension-1 gradient flows.
//
// For a plain map every vertex is a source, every face a sink and every edge
// a saddle whose two stable separatrices run along the edge and whose two
// unstable separatrices enter the faces on either side. A mark modifies this
// Morse diagram:
//   source mark d - the stable separatrix along d is contracted, merging
//                   vertex(d) and the saddle of edge(d) into a saddle-node
//   sink mark d   - the unstable separatrix into face(d) is contracted
//   T mark p      - the two collinear edges at t = vertex(p) form the stable
//                   manifold of a saddle sitting at t; the separatrix from t
//                   along p is a saddle connection into the saddle of edge(p)
//
// Points keep the cyclic order of their separatrices (counterclockwise, the
// same sense as sigma), so a diagram is itself a spherical embedded graph and
// the marked map can be read back from it.

#include <string>

#include "flowcensus/combmap.hpp"
#include "flowcensus/marks.hpp"

namespace flowcensus {

enum class PointKind : std::uint8_t { source, sink, saddle, saddle_node_source, saddle_node_sink };

inline std::string_view to_string(PointKind k) {
    switch (k) {
        case PointKind::source: return "source";
        case PointKind::sink: return "sink";
        case PointKind::saddle: return "saddle";
        case PointKind::saddle_node_source: return "saddle-node-source";
        case PointKind::saddle_node_sink: return "saddle-node-sink";
    }
    return "?";
}

enum class OriginKind : std::uint8_t { vertex, face, edge };

inline std::string_view to_string(OriginKind k) {
    switch (k) {
        case OriginKind::vertex: return "vertex";
        case OriginKind::face: return "face";
        case OriginKind::edge: return "edge";
    }
    return "?";
}

enum class SeparatrixRole : std::uint8_t { stable, unstable, connection };

inline std::string_view to_string(SeparatrixRole r) {
    switch (r) {
        case SeparatrixRole::stable: return "stable";
        case SeparatrixRole::unstable: return "unstable";
        case SeparatrixRole::connection: return "connection";
    }
    return "?";
}

struct SingularPoint {
    int id = 0;
    PointKind kind = PointKind::source;
    OriginKind origin = OriginKind::vertex;
    int origin_index = 0;            // orbit index in the input map
    std::optional<Dart> mark_dart;   // set on the point created by the mark
    std::vector<int> rotation;       // incident separatrix ids, counterclockwise
};

struct Separatrix {
    int id = 0;
    int from = 0;
    int to = 0;
    int owner = 0;  // the saddle or saddle-node whose invariant manifold this is
    SeparatrixRole role = SeparatrixRole::stable;
    Dart dart = 0;  // dart of the input map the separatrix runs along or next to
};

struct SeparatrixDiagram {
    int n_saddles = 0;
    MarkKind mark_kind = MarkKind::source;
    std::vector<SingularPoint> points;
    std::vector<Separatrix> separatrices;
    std::optional<std::pair<int, int>> saddle_connection;

    int count(PointKind k) const {
        return static_cast<int>(std::count_if(points.begin(), points.end(), [k](const auto& p) { return p.kind == k; }));
    }
};

namespace detail {

class DiagramBuilder {
public:
    int add_point(PointKind kind, OriginKind origin, int index) {
        SingularPoint p;
        p.id = static_cast<int>(points_.size());
        p.kind = kind;
        p.origin = origin;
        p.origin_index = index;
        points_.push_back(std::move(p));
        point_alive_.push_back(1);
        return points_.back().id;
    }

    int add_arc(int from, int to, int owner, SeparatrixRole role, Dart dart) {
        Separatrix s{static_cast<int>(arcs_.size()), from, to, owner, role, dart};
        arcs_.push_back(s);
        arc_alive_.push_back(1);
        return s.id;
    }

    SingularPoint& point(int id) { return points_[id]; }
    Separatrix& arc(int id) { return arcs_[id]; }

    void kill_point(int id) { point_alive_[id] = 0; }
    void kill_arc(int id) { arc_alive_[id] = 0; }

    /// Contracts arc `a`, keeping endpoint `keep`. The other endpoint's
    /// rotation, read from just after `a`, takes the place of `a` in the
    /// kept point's rotation.
    void contract(int a, int keep) {
        const int gone = arcs_[a].from == keep ? arcs_[a].to : arcs_[a].from;
        auto& kr = points_[keep].rotation;
        const auto& gr = points_[gone].rotation;
        auto gpos = std::find(gr.begin(), gr.end(), a) - gr.begin();
        std::vector<int> insert;
        for (std::size_t i = 1; i < gr.size(); ++i) insert.push_back(gr[(gpos + i) % gr.size()]);
        auto kpos = std::find(kr.begin(), kr.end(), a);
        kpos = kr.erase(kpos);
        kr.insert(kpos, insert.begin(), insert.end());
        for (auto& s : arcs_) {
            if (s.from == gone) s.from = keep;
            if (s.to == gone) s.to = keep;
            if (s.owner == gone) s.owner = keep;
        }
        kill_arc(a);
        kill_point(gone);
    }

    SeparatrixDiagram finish(int n_saddles, MarkKind kind, std::optional<std::pair<int, int>> connection) {
        std::vector<int> pmap(points_.size(), -1), amap(arcs_.size(), -1);
        SeparatrixDiagram d;
        d.n_saddles = n_saddles;
        d.mark_kind = kind;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (point_alive_[i]) pmap[i] = static_cast<int>(d.points.size()), d.points.push_back(points_[i]);
        }
        for (std::size_t i = 0; i < arcs_.size(); ++i) {
            if (arc_alive_[i]) amap[i] = static_cast<int>(d.separatrices.size()), d.separatrices.push_back(arcs_[i]);
        }
        for (auto& p : d.points) {
            p.id = pmap[p.id];
            std::vector<int> rot;
            for (int a : p.rotation) {
                if (amap[a] >= 0) rot.push_back(amap[a]);
            }
            p.rotation = std::move(rot);
        }
        for (auto& s : d.separatrices) {
            s.id = amap[s.id];
            s.from = pmap[s.from];
            s.to = pmap[s.to];
            s.owner = pmap[s.owner];
        }
        if (connection) d.saddle_connection = std::pair{pmap[connection->first], pmap[connection->second]};
        return d;
    }

private:
    std::vector<SingularPoint> points_;
    std::vector<Separatrix> arcs_;
    std::vector<char> point_alive_;
    std::vector<char> arc_alive_;
};

struct MorseSkeleton {
    DiagramBuilder b;
    std::vector<int> source, sink, saddle;  // by vertex, face, edge orbit
    std::vector<int> stable, unstable;      // by dart
};

inline MorseSkeleton morse_skeleton(const CombinatorialMap& m) {
    MorseSkeleton s;
    for (int v = 0; v < m.n_vertices(); ++v) s.source.push_back(s.b.add_point(PointKind::source, OriginKind::vertex, v));
    for (int f = 0; f < m.n_faces(); ++f) s.sink.push_back(s.b.add_point(PointKind::sink, OriginKind::face, f));
    for (int e = 0; e < m.n_edges(); ++e) s.saddle.push_back(s.b.add_point(PointKind::saddle, OriginKind::edge, e));
    s.stable.resize(m.n_darts());
    s.unstable.resize(m.n_darts());
    for (Dart x = 0; x < m.n_darts(); ++x) {
        int sad = s.saddle[m.edge_of(x)];
        s.stable[x] = s.b.add_arc(s.source[m.vertex_of(x)], sad, sad, SeparatrixRole::stable, x);
        s.unstable[x] = s.b.add_arc(sad, s.sink[m.face_of(x)], sad, SeparatrixRole::unstable, x);
    }
    for (const auto& orbit : orbits(m, Cells::vertices)) {
        auto& rot = s.b.point(s.source[m.vertex_of(orbit.front())]).rotation;
        for (Dart x : orbit) rot.push_back(s.stable[x]);
    }
    for (const auto& orbit : orbits(m, Cells::edges)) {
        Dart x = orbit[0], y = orbit[1];
        s.b.point(s.saddle[m.edge_of(x)]).rotation = {s.stable[x], s.unstable[x], s.stable[y], s.unstable[y]};
    }
    // face(d) lies clockwise of d at its vertex, so a face's darts in phi
    // order run clockwise around the sink.
    for (const auto& orbit : orbits(m, Cells::faces)) {
        auto& rot = s.b.point(s.sink[m.face_of(orbit.front())]).rotation;
        for (auto it = orbit.rbegin(); it != orbit.rend(); ++it) rot.push_back(s.unstable[*it]);
    }
    return s;
}

inline void replace_in_rotation(std::vector<int>& rot, int old_arc, int new_arc) {
    std::replace(rot.begin(), rot.end(), old_arc, new_arc);
}

inline void erase_from_rotation(std::vector<int>& rot, int arc) {
    rot.erase(std::remove(rot.begin(), rot.end(), arc), rot.end());
}

}  // namespace detail

/// The separatrix diagram of the flow encoded by `mm`.
inline SeparatrixDiagram realize(const MarkedMap& mm) {
    const auto& m = mm.map;
    check_mark(m, mm.mark);
    auto sk = detail::morse_skeleton(m);
    auto& b = sk.b;
    const Dart d = mm.mark.dart;

    switch (mm.mark.kind) {
        case MarkKind::source: {
            int keep = sk.source[m.vertex_of(d)];
            b.contract(sk.stable[d], keep);
            b.point(keep).kind = PointKind::saddle_node_source;
            b.point(keep).mark_dart = d;
            return b.finish(m.n_edges(), MarkKind::source, std::nullopt);
        }
        case MarkKind::sink: {
            int keep = sk.sink[m.face_of(d)];
            b.contract(sk.unstable[d], keep);
            b.point(keep).kind = PointKind::saddle_node_sink;
            b.point(keep).mark_dart = d;
            return b.finish(m.n_edges(), MarkKind::sink, std::nullopt);
        }
        case MarkKind::t_vertex: {
            const Dart p = d, a = m.sigma(p), c = m.sigma(a);
            const int t = m.vertex_of(p);
            const int q = sk.saddle[m.edge_of(p)];
            const int hub = b.add_point(PointKind::saddle, OriginKind::vertex, t);
            b.point(hub).mark_dart = p;

            const int link = b.add_arc(hub, q, hub, SeparatrixRole::connection, p);
            detail::replace_in_rotation(b.point(q).rotation, sk.stable[p], link);
            for (Dart x : {a, c}) {
                auto& s = b.arc(sk.stable[m.alpha(x)]);
                s.to = hub;
                s.owner = hub;
            }
            // The hub's free unstable separatrix enters the corner between
            // the collinear darts, which belongs to face(c).
            const int free_arc = b.add_arc(hub, sk.sink[m.face_of(c)], hub, SeparatrixRole::unstable, c);
            detail::replace_in_rotation(b.point(sk.sink[m.face_of(c)]).rotation, sk.unstable[c], free_arc);
            b.point(hub).rotation = {link, sk.stable[m.alpha(a)], free_arc, sk.stable[m.alpha(c)]};

            for (int dead : {sk.stable[p], sk.stable[a], sk.stable[c], sk.unstable[a], sk.unstable[m.alpha(a)],
                             sk.unstable[c], sk.unstable[m.alpha(c)]}) {
                b.kill_arc(dead);
                for (int f = 0; f < m.n_faces(); ++f) detail::erase_from_rotation(b.point(sk.sink[f]).rotation, dead);
            }
            b.kill_point(sk.source[t]);
            b.kill_point(sk.saddle[m.edge_of(a)]);
            b.kill_point(sk.saddle[m.edge_of(c)]);
            return b.finish(m.n_edges() - 1, MarkKind::t_vertex, std::pair{hub, q});
        }
    }
    throw Error(Errc::invalid_mark, "unknown mark kind");
}

/// The diagram as an embedded graph: separatrix i gives darts 2i (at its
/// tail) and 2i+1 (at its head); rotations come from the points.
inline CombinatorialMap diagram_as_map(const SeparatrixDiagram& diag) {
    const int n = 2 * static_cast<int>(diag.separatrices.size());
    Permutation sigma(n, -1), alpha(n);
    for (int i = 0; i < n; ++i) alpha[i] = i ^ 1;
    auto end_dart = [&](int arc, int point) {
        return diag.separatrices[arc].from == point ? 2 * arc : 2 * arc + 1;
    };
    for (const auto& p : diag.points) {
        const auto& r = p.rotation;
        for (std::size_t i = 0; i < r.size(); ++i) {
            sigma[end_dart(r[i], p.id)] = end_dart(r[(i + 1) % r.size()], p.id);
        }
    }
    return CombinatorialMap::create(std::move(sigma), std::move(alpha));
}

namespace detail {

inline bool owned_block_contiguous(const SeparatrixDiagram& diag, const SingularPoint& p) {
    const auto& r = p.rotation;
    int transitions = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        bool own = diag.separatrices[r[i]].owner == p.id;
        bool next_own = diag.separatrices[r[(i + 1) % r.size()]].owner == p.id;
        if (own != next_own) ++transitions;
    }
    return transitions <= 2;
}

inline bool acyclic(const SeparatrixDiagram& diag) {
    std::vector<int> indeg(diag.points.size(), 0);
    for (const auto& s : diag.separatrices) ++indeg[s.to];
    std::vector<int> ready;
    for (std::size_t i = 0; i < indeg.size(); ++i) {
        if (indeg[i] == 0) ready.push_back(static_cast<int>(i));
    }
    std::size_t done = 0;
    while (!ready.empty()) {
        int v = ready.back();
        ready.pop_back();
        ++done;
        for (const auto& s : diag.separatrices) {
            if (s.from == v && --indeg[s.to] == 0) ready.push_back(s.to);
        }
    }
    return done == diag.points.size();
}

}  // namespace detail

/// Every violated diagram invariant, as readable messages; empty if valid.
inline std::vector<std::string> check_diagram(const SeparatrixDiagram& diag) {
    std::vector<std::string> bad;
    auto fail = [&](const std::string& msg) { bad.push_back(msg); };
    const auto& seps = diag.separatrices;

    std::vector<int> in(diag.points.size(), 0), out(diag.points.size(), 0);
    std::vector<int> own_in(diag.points.size(), 0), own_out(diag.points.size(), 0);
    std::vector<int> incidences(diag.points.size(), 0);
    int connections = 0;
    for (const auto& s : seps) {
        if (s.from == s.to) fail("separatrix " + std::to_string(s.id) + " is a loop");
        ++out[s.from];
        ++in[s.to];
        if (s.owner == s.to) ++own_in[s.owner];
        if (s.owner == s.from) ++own_out[s.owner];
        if (s.owner != s.to && s.owner != s.from) fail("separatrix " + std::to_string(s.id) + " owner not an endpoint");
        if (s.role == SeparatrixRole::connection) ++connections;
    }
    for (const auto& p : diag.points) {
        const std::string tag = std::string(to_string(p.kind)) + " " + std::to_string(p.id);
        for (int a : p.rotation) {
            if (seps[a].from != p.id && seps[a].to != p.id) fail(tag + " rotation lists a foreign separatrix");
        }
        if (static_cast<int>(p.rotation.size()) != in[p.id] + out[p.id]) fail(tag + " rotation incomplete");
        switch (p.kind) {
            case PointKind::source:
                if (in[p.id] != 0 || out[p.id] == 0) fail(tag + " must only emit");
                break;
            case PointKind::sink:
                if (out[p.id] != 0 || in[p.id] == 0) fail(tag + " must only absorb");
                break;
            case PointKind::saddle: {
                if (in[p.id] != 2 || out[p.id] != 2) fail(tag + " needs 2 incoming and 2 outgoing");
                const auto& r = p.rotation;
                for (std::size_t i = 0; r.size() == 4 && i < 4; ++i) {
                    if ((seps[r[i]].to == p.id) == (seps[r[(i + 1) % 4]].to == p.id)) {
                        fail(tag + " separatrices do not alternate");
                        break;
                    }
                }
                break;
            }
            case PointKind::saddle_node_source:
                if (own_in[p.id] != 1 || own_out[p.id] != 2) fail(tag + " needs own pattern 1 in / 2 out");
                if (in[p.id] != 1) fail(tag + " node part must only emit");
                if (!detail::owned_block_contiguous(diag, p)) fail(tag + " own separatrices not contiguous");
                break;
            case PointKind::saddle_node_sink:
                if (own_in[p.id] != 2 || own_out[p.id] != 1) fail(tag + " needs own pattern 2 in / 1 out");
                if (out[p.id] != 1) fail(tag + " node part must only absorb");
                if (!detail::owned_block_contiguous(diag, p)) fail(tag + " own separatrices not contiguous");
                break;
        }
    }
    for (const auto& s : seps) {
        const auto& from = diag.points[s.from];
        const auto& to = diag.points[s.to];
        bool from_saddle = from.kind == PointKind::saddle;
        bool to_saddle = to.kind == PointKind::saddle;
        if (s.role == SeparatrixRole::connection) {
            if (!from_saddle || !to_saddle) fail("connection must join two saddles");
        } else if (from_saddle && to_saddle) {
            fail("saddle-to-saddle separatrix outside the marked connection");
        }
    }

    const int nodes = diag.count(PointKind::saddle_node_source) + diag.count(PointKind::saddle_node_sink);
    const bool t_kind = diag.mark_kind == MarkKind::t_vertex;
    if (t_kind) {
        if (nodes != 0 || connections != 1 || !diag.saddle_connection) fail("saddle-connection flow needs one connection and no saddle-node");
        if (static_cast<int>(diag.points.size()) != 2 * diag.n_saddles + 2) fail("point count is not 2n+2");
    } else {
        if (nodes != 1 || connections != 0 || diag.saddle_connection) fail("saddle-node flow needs one saddle-node and no connection");
        if (static_cast<int>(diag.points.size()) != 2 * diag.n_saddles + 1) fail("point count is not 2n+1");
    }
    if (diag.count(PointKind::saddle) + nodes != diag.n_saddles) fail("saddle count mismatch");
    if (!detail::acyclic(diag)) fail("separatrices form a directed cycle");
    if (bad.empty()) {
        try {
            (void)diagram_as_map(diag);
        } catch (const Error& e) {
            fail(std::string("diagram is not a spherical embedded graph: ") + e.what());
        }
    }
    return bad;
}

/// Reads the marked map back from the diagram's topology alone: point kinds,
/// separatrix ends and cyclic orders. The result is equivalent to the input
/// of `realize`, with its own dart numbering.
inline MarkedMap reconstruct(const SeparatrixDiagram& diag) {
    const auto& seps = diag.separatrices;
    const int hub = diag.saddle_connection ? diag.saddle_connection->first : -1;

    // Darts live at vertex-like points: sources, saddle-node-sources (node
    // part plus one dart for the hyperbolic block) and the T hub.
    std::map<std::pair<int, int>, Dart> dart_at;  // (point, separatrix) -> dart
    Permutation sigma;
    std::optional<Dart> mark_dart;
    auto new_dart = [&](int point, int arc) {
        Dart d = static_cast<Dart>(sigma.size());
        sigma.push_back(-1);
        dart_at[{point, arc}] = d;
        return d;
    };
    for (const auto& p : diag.points) {
        std::vector<Dart> ring;
        if (p.kind == PointKind::source) {
            for (int a : p.rotation) ring.push_back(new_dart(p.id, a));
        } else if (p.kind == PointKind::saddle_node_source) {
            const auto& r = p.rotation;
            const std::size_t n = r.size();
            auto owned = [&](std::size_t i) { return seps[r[i % n]].owner == p.id; };
            std::size_t start = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (owned(i) && !owned(i + n - 1)) {
                    start = i;
                    break;
                }
            }
            mark_dart = new_dart(p.id, -1);
            ring.push_back(*mark_dart);
            for (std::size_t k = 1; k < n; ++k) {
                if (!owned(start + k)) ring.push_back(new_dart(p.id, r[(start + k) % n]));
            }
        } else if (p.id == hub) {
            for (int a : p.rotation) {
                if (seps[a].role == SeparatrixRole::unstable) continue;
                Dart d = new_dart(p.id, a);
                if (seps[a].role == SeparatrixRole::connection) mark_dart = d;
                ring.push_back(d);
            }
        }
        for (std::size_t i = 0; i < ring.size(); ++i) sigma[ring[i]] = ring[(i + 1) % ring.size()];
    }

    Permutation alpha(sigma.size(), -1);
    auto pair_up = [&](Dart x, Dart y) {
        alpha[x] = y;
        alpha[y] = x;
    };
    auto tail_dart = [&](const Separatrix& s) { return dart_at.at({s.from, s.id}); };
    for (const auto& p : diag.points) {
        std::vector<const Separatrix*> incoming;
        for (int a : p.rotation) {
            if (seps[a].to == p.id && seps[a].role != SeparatrixRole::unstable) incoming.push_back(&seps[a]);
        }
        if (p.id == hub) {
            for (const auto* s : incoming) pair_up(tail_dart(*s), dart_at.at({p.id, s->id}));
        } else if (p.kind == PointKind::saddle || p.kind == PointKind::saddle_node_sink) {
            pair_up(tail_dart(*incoming[0]), tail_dart(*incoming[1]));
        } else if (p.kind == PointKind::saddle_node_source) {
            pair_up(tail_dart(*incoming[0]), dart_at.at({p.id, -1}));
        }
    }

    std::optional<Mark> mark;
    if (diag.mark_kind == MarkKind::sink) {
        // Own block of the saddle-node-sink reads (in, out, in); the stable
        // separatrix after the outgoing one runs along the marked dart.
        for (const auto& p : diag.points) {
            if (p.kind != PointKind::saddle_node_sink) continue;
            const auto& r = p.rotation;
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (seps[r[i]].from == p.id) {
                    mark = Mark{MarkKind::sink, tail_dart(seps[r[(i + 1) % r.size()]])};
                }
            }
        }
    } else if (mark_dart) {
        mark = Mark{diag.mark_kind, *mark_dart};
    }
    if (!mark) throw Error(Errc::invariant_violation, "diagram carries no recoverable mark");
    auto m = CombinatorialMap::create(std::move(sigma), std::move(alpha));
    return make_marked(std::move(m), *mark);
}

/// Code of the diagram up to equivalence: the marked-map code of its
/// reconstruction.
inline CanonicalCode diagram_code(const SeparatrixDiagram& diag, bool allow_reflection = true) {
    return canonical_code(reconstruct(diag), allow_reflection);
}

/// True iff every enumerated class of the given kind realizes to a diagram
/// with no invariant violations and the expected number of singular points.
inline bool diagram_census_check(int n_saddles, MarkKind kind, const CensusOptions& opts = {}) {
    std::vector<MarkedMap> classes;
    if (kind == MarkKind::t_vertex) {
        classes = enumerate_t_marks(n_saddles, opts);
    } else {
        detail::check_saddle_range(n_saddles, 1, 4);
        for (const auto& m : detail::maps_for(n_saddles, opts)) {
            auto found = enumerate_marks(m, kind, opts.allow_reflection);
            classes.insert(classes.end(), found.begin(), found.end());
        }
    }
    const int expected = kind == MarkKind::t_vertex ? 2 * n_saddles + 2 : 2 * n_saddles + 1;
    for (const auto& mm : classes) {
        auto diag = realize(mm);
        if (!check_diagram(diag).empty() || static_cast<int>(diag.points.size()) != expected) return false;
    }
    return true;
}

}  // namespace flowcensus
