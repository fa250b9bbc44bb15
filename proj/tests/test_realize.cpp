#include <gtest/gtest.h>

#include "flowcensus/realize.hpp"
#include "oracle.hpp"

using namespace flowcensus;

namespace {

CombinatorialMap rot(Permutation s) { return CombinatorialMap::from_rotation(std::move(s)); }

std::vector<MarkedMap> saddle_node_classes(int n, MarkKind kind) {
    std::vector<MarkedMap> out;
    for (const auto& m : generate_maps({n})) {
        auto found = enumerate_marks(m, kind);
        out.insert(out.end(), found.begin(), found.end());
    }
    return out;
}

std::vector<MarkedMap> all_classes(int n) {
    auto out = saddle_node_classes(n, MarkKind::source);
    auto sinks = saddle_node_classes(n, MarkKind::sink);
    out.insert(out.end(), sinks.begin(), sinks.end());
    if (n >= 2) {
        auto ts = enumerate_t_marks(n);
        out.insert(out.end(), ts.begin(), ts.end());
    }
    return out;
}

int saddle_count(const SeparatrixDiagram& d) { return d.count(PointKind::saddle); }

}  // namespace

TEST(Realize, SegmentSourceHasThreePoints) {
    auto d = realize(make_marked(rot({0, 1}), {MarkKind::source, 0}));
    EXPECT_EQ(d.points.size(), 3u);
    EXPECT_EQ(d.count(PointKind::source), 1);
    EXPECT_EQ(d.count(PointKind::sink), 1);
    EXPECT_EQ(d.count(PointKind::saddle_node_source), 1);
    EXPECT_TRUE(check_diagram(d).empty());
}

TEST(Realize, ChainCenterSourceHasFivePoints) {
    auto d = realize(make_marked(rot({0, 2, 1, 3}), {MarkKind::source, 1}));
    EXPECT_EQ(d.points.size(), 5u);
    EXPECT_EQ(d.count(PointKind::source), 2);
    EXPECT_EQ(d.count(PointKind::saddle), 1);
    EXPECT_EQ(d.count(PointKind::saddle_node_source), 1);
    EXPECT_EQ(d.count(PointKind::sink), 1);
}

TEST(Realize, YGraphTMarkHasSixPoints) {
    auto d = realize(make_marked(rot({2, 1, 4, 3, 0, 5}), {MarkKind::t_vertex, 0}));
    EXPECT_EQ(d.points.size(), 6u);
    EXPECT_EQ(d.count(PointKind::source), 3);
    EXPECT_EQ(d.count(PointKind::sink), 1);
    EXPECT_EQ(d.count(PointKind::saddle), 2);
    ASSERT_TRUE(d.saddle_connection);
    EXPECT_EQ(d.points[d.saddle_connection->first].kind, PointKind::saddle);
    EXPECT_EQ(d.points[d.saddle_connection->second].kind, PointKind::saddle);
    int connections = 0;
    for (const auto& s : d.separatrices) connections += s.role == SeparatrixRole::connection;
    EXPECT_EQ(connections, 1);
}

TEST(Realize, IllegalMarkRejected) {
    MarkedMap bad{rot({1, 0}), {MarkKind::source, 0}};
    try {
        realize(bad);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::invalid_mark);
    }
}

TEST(Realize, EveryClassGivesAValidDiagram) {
    for (int n = 1; n <= 4; ++n) {
        for (const auto& mm : all_classes(n)) {
            auto d = realize(mm);
            auto bad = check_diagram(d);
            EXPECT_TRUE(bad.empty()) << canonical_code(mm).token() << ": " << (bad.empty() ? "" : bad.front());
            int expected = mm.mark.kind == MarkKind::t_vertex ? 2 * n + 2 : 2 * n + 1;
            EXPECT_EQ(static_cast<int>(d.points.size()), expected);
            EXPECT_EQ(d.n_saddles, n);
            EXPECT_EQ(saddle_count(d), mm.mark.kind == MarkKind::t_vertex ? n : n - 1);
        }
    }
}

TEST(Realize, DiagramIsItselfSpherical) {
    for (const auto& mm : all_classes(3)) {
        auto as_map = diagram_as_map(realize(mm));
        EXPECT_EQ(oracle::euler_characteristic(as_map), 2);
    }
}

TEST(Reconstruct, RoundTripsEveryClass) {
    for (int n = 1; n <= 4; ++n) {
        for (const auto& mm : all_classes(n)) {
            auto back = reconstruct(realize(mm));
            EXPECT_EQ(back.mark.kind, mm.mark.kind);
            EXPECT_TRUE(are_equivalent(back, mm)) << canonical_code(mm).token();
            EXPECT_TRUE(are_equivalent(back, mm, false)) << canonical_code(mm).token();
        }
    }
}

TEST(Reconstruct, StableManifoldsRecoverTheGraph) {
    for (int n = 1; n <= 3; ++n) {
        for (const auto& mm : saddle_node_classes(n, MarkKind::source)) {
            auto d = realize(mm);
            EXPECT_EQ(d.count(PointKind::source) + d.count(PointKind::saddle_node_source), mm.map.n_vertices());
            EXPECT_EQ(d.count(PointKind::sink), mm.map.n_faces());
            int stable = 0;
            for (const auto& s : d.separatrices) stable += s.role == SeparatrixRole::stable;
            EXPECT_EQ(stable, 2 * mm.map.n_edges() - 1);
        }
    }
}

TEST(Realize, EquivalentRepresentativesGiveEquivalentDiagrams) {
    std::mt19937 rng(11);
    for (int n = 1; n <= 3; ++n) {
        for (const auto& mm : all_classes(n)) {
            auto p = oracle::random_relabeling(mm.map.n_darts(), rng);
            MarkedMap other{relabel(mm.map, p), {mm.mark.kind, p[mm.mark.dart]}};
            auto a = realize(mm), b = realize(other);
            EXPECT_EQ(a.points.size(), b.points.size());
            EXPECT_EQ(diagram_code(a), diagram_code(b));
            EXPECT_TRUE(are_equivalent(diagram_as_map(a), diagram_as_map(b)));
        }
    }
}

TEST(Realize, ReversalSwapsPointKinds) {
    for (int n = 1; n <= 3; ++n) {
        for (const auto& mm : saddle_node_classes(n, MarkKind::source)) {
            auto a = realize(mm), b = realize(reverse(mm));
            EXPECT_EQ(a.count(PointKind::source), b.count(PointKind::sink));
            EXPECT_EQ(a.count(PointKind::sink), b.count(PointKind::source));
            EXPECT_EQ(a.count(PointKind::saddle), b.count(PointKind::saddle));
            EXPECT_EQ(a.count(PointKind::saddle_node_source), b.count(PointKind::saddle_node_sink));
        }
    }
}

TEST(DiagramCensus, ChecksPass) {
    EXPECT_TRUE(diagram_census_check(1, MarkKind::source));
    EXPECT_TRUE(diagram_census_check(2, MarkKind::sink));
    EXPECT_TRUE(diagram_census_check(3, MarkKind::t_vertex));
    EXPECT_TRUE(diagram_census_check(4, MarkKind::t_vertex));
    EXPECT_TRUE(diagram_census_check(4, MarkKind::sink, {false, 1}));
}

TEST(CheckDiagram, DetectsTampering) {
    auto d = realize(make_marked(rot({0, 2, 1, 3}), {MarkKind::source, 1}));
    auto broken = d;
    for (auto& p : broken.points) {
        if (p.kind == PointKind::sink) p.kind = PointKind::source;
    }
    EXPECT_FALSE(check_diagram(broken).empty());
    auto flipped = d;
    std::swap(flipped.separatrices[0].from, flipped.separatrices[0].to);
    EXPECT_FALSE(check_diagram(flipped).empty());
}
