#pragma once

// Hand-maintained names for small objects, each given by an explicit rotation
// system (alpha = (0 1)(2 3)...). G^k_i names graphs; Fig3:<i> names one- and
// two-saddle flows. A slash marks a pair that the naming does not separate.

#include <string>

#include "flowcensus/combmap.hpp"
#include "flowcensus/marks.hpp"

namespace flowcensus {

struct PaperLabel {
    std::string_view label;
    Permutation sigma;
    std::optional<Mark> mark;  // none for a plain graph
    bool reversed = false;     // label names reverse(sigma + mark)
};

inline const std::vector<PaperLabel>& paper_label_fixture() {
    static const std::vector<PaperLabel> table = {
        // one edge
        {"G^1_1", {0, 1}, std::nullopt},
        {"G^1_2", {1, 0}, std::nullopt},
        // two edges
        {"G^2_1", {2, 3, 0, 1}, std::nullopt},
        {"G^2_2", {0, 2, 1, 3}, std::nullopt},
        {"G^2_3", {0, 2, 3, 1}, std::nullopt},
        {"G^2_4", {1, 2, 3, 0}, std::nullopt},
        // three edges
        {"G^3_1", {0, 2, 1, 4, 3, 5}, std::nullopt},
        {"G^3_2", {2, 1, 4, 3, 0, 5}, std::nullopt},
        {"G^3_3", {5, 2, 1, 4, 3, 0}, std::nullopt},
        {"G^3_4", {0, 2, 1, 4, 5, 3}, std::nullopt},
        {"G^3_5", {0, 2, 4, 5, 1, 3}, std::nullopt},
        // saddle-source flows
        {"Fig3:1", {0, 1}, Mark{MarkKind::source, 0}},
        {"Fig3:2", {2, 3, 0, 1}, Mark{MarkKind::source, 0}},
        {"Fig3:3", {0, 2, 1, 3}, Mark{MarkKind::source, 0}},
        {"Fig3:4", {0, 2, 1, 3}, Mark{MarkKind::source, 1}},
        {"Fig3:5/6", {0, 2, 3, 1}, Mark{MarkKind::source, 0}},
        {"Fig3:5/6", {0, 2, 3, 1}, Mark{MarkKind::source, 1}},
        // saddle-sink flows, as reversals of the saddle-source items
        {"Fig3:7", {0, 1}, Mark{MarkKind::source, 0}, true},
        {"Fig3:8", {2, 3, 0, 1}, Mark{MarkKind::source, 0}, true},
        {"Fig3:9", {0, 2, 1, 3}, Mark{MarkKind::source, 0}, true},
        {"Fig3:10", {0, 2, 1, 3}, Mark{MarkKind::source, 1}, true},
        {"Fig3:11/12", {0, 2, 3, 1}, Mark{MarkKind::source, 0}, true},
        {"Fig3:11/12", {0, 2, 3, 1}, Mark{MarkKind::source, 1}, true},
        // saddle connections; 13/14 split a segment, 15/16 split a loop
        {"Fig3:13/14", {2, 1, 4, 3, 0, 5}, Mark{MarkKind::t_vertex, 0}},
        {"Fig3:13/14", {2, 3, 4, 1, 0, 5}, Mark{MarkKind::t_vertex, 0}},
        {"Fig3:15/16", {2, 3, 4, 1, 0, 5}, Mark{MarkKind::t_vertex, 4}},
        {"Fig3:15/16", {2, 5, 4, 1, 0, 3}, Mark{MarkKind::t_vertex, 0}},
    };
    return table;
}

/// The fixture object behind a label entry.
inline std::pair<CombinatorialMap, std::optional<Mark>> fixture_object(const PaperLabel& entry) {
    auto m = CombinatorialMap::from_rotation(entry.sigma);
    if (!entry.mark) return {std::move(m), std::nullopt};
    auto mm = make_marked(std::move(m), *entry.mark);
    if (entry.reversed) mm = reverse(mm);
    return {std::move(mm.map), mm.mark};
}

/// Label lookup keyed by canonical code token under the given equivalence.
class PaperLabels {
public:
    explicit PaperLabels(bool allow_reflection = true) {
        for (const auto& entry : paper_label_fixture()) {
            auto [m, mark] = fixture_object(entry);
            by_token_.emplace_back(canonical_code(m, mark, allow_reflection).token(), std::string(entry.label));
        }
    }

    std::optional<std::string> find(const std::string& token) const {
        for (const auto& [t, label] : by_token_) {
            if (t == token) return label;
        }
        return std::nullopt;
    }

private:
    std::vector<std::pair<std::string, std::string>> by_token_;
};

}  // namespace flowcensus
