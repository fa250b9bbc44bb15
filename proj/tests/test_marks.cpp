#include <gtest/gtest.h>

#include "flowcensus/marks.hpp"
#include "oracle.hpp"

using namespace flowcensus;

namespace {

CombinatorialMap rot(Permutation s) { return CombinatorialMap::from_rotation(std::move(s)); }

// two-edge graphs
CombinatorialMap g2_double_edge() { return rot({2, 3, 0, 1}); }
CombinatorialMap g2_chain() { return rot({0, 2, 1, 3}); }
CombinatorialMap g2_loop_tail() { return rot({0, 2, 3, 1}); }
CombinatorialMap g2_two_loops() { return rot({1, 2, 3, 0}); }

// Oracle class count: legal marks of `kind` over all maps with e edges.
int oracle_mark_classes(int e, MarkKind kind, bool refl) {
    std::vector<std::pair<CombinatorialMap, Mark>> reps;
    for (const auto& m : generate_maps({e, refl})) {
        for (Dart d = 0; d < m.n_darts(); ++d) {
            Mark mk{kind, d};
            if (!is_legal_mark(m, mk)) continue;
            bool seen = std::any_of(reps.begin(), reps.end(),
                                    [&](const auto& r) { return oracle::equivalent(r.first, r.second, m, mk, refl); });
            if (!seen) reps.emplace_back(m, mk);
        }
    }
    return static_cast<int>(reps.size());
}

}  // namespace

TEST(SourceMarks, TwoEdgeGraphs) {
    EXPECT_EQ(enumerate_source_marks(g2_two_loops()).size(), 0u);
    EXPECT_EQ(enumerate_source_marks(g2_chain()).size(), 2u);
    EXPECT_EQ(enumerate_source_marks(g2_double_edge()).size(), 1u);
    EXPECT_EQ(enumerate_source_marks(g2_loop_tail()).size(), 2u);
}

TEST(SinkMarks, OneEdgeGraphs) {
    EXPECT_EQ(enumerate_sink_marks(rot({0, 1})).size(), 0u);
    EXPECT_EQ(enumerate_sink_marks(rot({1, 0})).size(), 1u);
}

TEST(SinkMarks, TreesHaveNone) {
    for (int e = 1; e <= 4; ++e) {
        for (const auto& m : generate_maps({e})) {
            if (m.n_faces() == 1) EXPECT_TRUE(enumerate_sink_marks(m).empty());
        }
    }
}

TEST(Marks, IllegalMarksRejected) {
    EXPECT_THROW(make_marked(rot({1, 0}), Mark{MarkKind::source, 0}), Error);
    EXPECT_THROW(make_marked(rot({0, 1}), Mark{MarkKind::sink, 0}), Error);
    EXPECT_THROW(make_marked(g2_chain(), Mark{MarkKind::t_vertex, 1}), Error);
    EXPECT_THROW(make_marked(rot({0, 1}), Mark{MarkKind::source, 7}), Error);
    try {
        make_marked(rot({1, 0}), Mark{MarkKind::source, 0});
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::invalid_mark);
    }
}

TEST(TMarks, TwoSaddleClassesMatchStructuralList) {
    auto classes = enumerate_t_marks(2);
    ASSERT_EQ(classes.size(), 4u);
    int y = 0, bigon_side = 0, bigon_tail = 0, theta = 0;
    for (const auto& mm : classes) {
        const auto& m = mm.map;
        EXPECT_EQ(m.degree(mm.mark.dart), 3);
        auto degs = oracle::sorted(degree_sequence(m));
        bool pendant_perpendicular = m.degree(m.alpha(mm.mark.dart)) == 1;
        if (degs == std::vector<int>{1, 1, 1, 3}) ++y;
        if (degs == std::vector<int>{1, 2, 3}) (pendant_perpendicular ? bigon_tail : bigon_side)++;
        if (degs == std::vector<int>{3, 3}) ++theta;
    }
    EXPECT_EQ(y, 1);
    EXPECT_EQ(bigon_side, 1);
    EXPECT_EQ(bigon_tail, 1);
    EXPECT_EQ(theta, 1);
}

TEST(TMarks, SaddleCountOutOfRange) {
    for (int n : {1, 5}) {
        try {
            enumerate_t_marks(n);
            ADD_FAILURE() << n;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::saddle_count_out_of_range);
        }
    }
    EXPECT_THROW(saddle_node_census(0), Error);
    EXPECT_THROW(saddle_node_census(5), Error);
}

TEST(MarkClasses, CountsMatchOracle) {
    for (bool refl : {true, false}) {
        for (int e = 1; e <= 3; ++e) {
            for (auto kind : {MarkKind::source, MarkKind::sink}) {
                int computed = 0;
                for (const auto& m : generate_maps({e, refl})) computed += static_cast<int>(enumerate_marks(m, kind, refl).size());
                EXPECT_EQ(computed, oracle_mark_classes(e, kind, refl)) << "E=" << e;
            }
        }
        for (int n = 2; n <= 3; ++n) {
            EXPECT_EQ(static_cast<int>(enumerate_t_marks(n, {refl}).size()), oracle_mark_classes(n + 1, MarkKind::t_vertex, refl));
        }
    }
}

TEST(MarkedCodes, EquivalenceCoincidesWithOracle) {
    // every legal marked map with at most three edges, with random relabelings
    std::mt19937 rng(99);
    for (auto kind : {MarkKind::source, MarkKind::sink, MarkKind::t_vertex}) {
        std::vector<std::pair<CombinatorialMap, Mark>> objects;
        for (int e = 1; e <= 3; ++e) {
            for (const auto& m : generate_maps({e})) {
                auto p = oracle::random_relabeling(m.n_darts(), rng);
                auto r = relabel(m, p);
                for (Dart d = 0; d < m.n_darts(); ++d) {
                    if (is_legal_mark(m, {kind, d})) objects.emplace_back(r, Mark{kind, p[d]});
                }
            }
        }
        for (bool refl : {true, false}) {
            for (const auto& [a, ma] : objects) {
                for (const auto& [b, mb] : objects) {
                    if (a.n_edges() != b.n_edges()) continue;
                    EXPECT_EQ(are_equivalent(a, ma, b, mb, refl), oracle::equivalent(a, ma, b, mb, refl));
                }
            }
        }
    }
}

TEST(SaddleNodeCensus, OneAndTwoSaddles) {
    EXPECT_EQ(saddle_node_census(1).total(), 2);
    auto c = saddle_node_census(2);
    EXPECT_EQ(c.source_total, 5);
    EXPECT_EQ(c.sink_total, 5);
    EXPECT_EQ(c.total(), 10);
    EXPECT_EQ(c.singular_points, 5);
}

TEST(SaddleNodeCensus, PerGraphSourceCountsForTwoEdges) {
    auto c = saddle_node_census(2);
    auto count_for = [&](const CombinatorialMap& m) {
        auto code = canonical_code(m);
        for (const auto& r : c.per_map) {
            if (r.code == code) return r.source_classes;
        }
        return -1;
    };
    EXPECT_EQ(count_for(g2_double_edge()), 1);
    EXPECT_EQ(count_for(g2_chain()), 2);
    EXPECT_EQ(count_for(g2_loop_tail()), 2);
    EXPECT_EQ(count_for(g2_two_loops()), 0);
}

TEST(SaddleNodeCensus, DualityBijectionEverywhere) {
    for (int n = 1; n <= 4; ++n) {
        auto c = saddle_node_census(n);
        EXPECT_TRUE(c.duality_bijection);
        EXPECT_EQ(c.source_total, c.sink_total);
        EXPECT_EQ(c.total() % 2, 0);
        for (const auto& r : c.per_map) EXPECT_EQ(r.sink_classes, r.dual_source_classes);
    }
}

TEST(SaddleNodeCensus, IndependentOfLabeling) {
    std::mt19937 rng(5);
    for (int e = 1; e <= 4; ++e) {
        for (const auto& m : generate_maps({e})) {
            auto r = relabel(m, oracle::random_relabeling(m.n_darts(), rng));
            for (auto kind : {MarkKind::source, MarkKind::sink, MarkKind::t_vertex}) {
                auto a = enumerate_marks(m, kind), b = enumerate_marks(r, kind);
                ASSERT_EQ(a.size(), b.size());
                for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(canonical_code(a[i]), canonical_code(b[i]));
            }
        }
    }
}

TEST(Reverse, SegmentSourceIsLoopSink) {
    auto r = reverse(make_marked(rot({0, 1}), Mark{MarkKind::source, 0}));
    EXPECT_EQ(r.mark.kind, MarkKind::sink);
    EXPECT_TRUE(are_equivalent(r, make_marked(rot({1, 0}), Mark{MarkKind::sink, 0})));
}

TEST(Reverse, IsAnInvolution) {
    for (int n = 1; n <= 3; ++n) {
        for (const auto& m : generate_maps({n})) {
            for (auto kind : {MarkKind::source, MarkKind::sink}) {
                for (const auto& mm : enumerate_marks(m, kind)) {
                    auto back = reverse(reverse(mm));
                    EXPECT_EQ(back.map, mm.map);
                    EXPECT_EQ(back.mark, mm.mark);
                }
            }
        }
    }
}

TEST(Reverse, TMarksAreNotReversible) {
    auto mm = make_marked(rot({2, 1, 4, 3, 0, 5}), Mark{MarkKind::t_vertex, 0});
    try {
        reverse(mm);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::not_reversible);
    }
}

TEST(Legality, EveryEnumeratedMarkIsLegal) {
    for (int n = 1; n <= 4; ++n) {
        for (const auto& m : generate_maps({n})) {
            for (const auto& mm : enumerate_source_marks(m)) EXPECT_FALSE(m.is_loop(mm.mark.dart));
            for (const auto& mm : enumerate_sink_marks(m)) EXPECT_NE(m.face_of(mm.mark.dart), m.face_of(m.alpha(mm.mark.dart)));
        }
    }
    for (int n = 2; n <= 4; ++n) {
        for (const auto& mm : enumerate_t_marks(n)) {
            EXPECT_EQ(mm.map.degree(mm.mark.dart), 3);
            Dart d = mm.mark.dart;
            for (int i = 0; i < 3; ++i, d = mm.map.sigma(d)) EXPECT_NE(mm.map.vertex_of(mm.map.alpha(d)), mm.map.vertex_of(d));
        }
    }
}

TEST(TPlacement, ClassifiesTwoSaddleFlows) {
    int attached = 0;
    for (const auto& mm : enumerate_t_marks(2)) {
        auto p = classify_t_mark(mm);
        if (!p.disconnecting || p.pendant()) ++attached;
    }
    EXPECT_EQ(attached, 4);
}

TEST(TPlacement, BreakdownSumsToTotal) {
    for (int n = 2; n <= 4; ++n) {
        auto c = saddle_connection_census(n);
        int split = 0;
        for (const auto& [kl, count] : c.split) {
            EXPECT_EQ(kl.first + kl.second, n - 1);
            EXPECT_GE(kl.first, 1);
            EXPECT_GE(kl.second, 1);
            split += count;
        }
        EXPECT_EQ(c.non_disconnecting + c.pendant + split, c.total);
        EXPECT_EQ(c.singular_points, 2 * n + 2);
    }
}

TEST(TPlacement, FourSaddleSplitCounts) {
    auto c = saddle_connection_census(4);
    EXPECT_EQ(c.split_count(1, 2), 16);
    EXPECT_EQ(c.split_count(2, 1), 14);
}
