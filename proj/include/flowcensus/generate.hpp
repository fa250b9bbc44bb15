#pragma once

// Isomorph-free generation of connected spherical maps with a fixed number
// of edges. The reference method fixes alpha = (0 1)(2 3)... and runs over
// every rotation sigma of the 2E darts, keeping one representative per
// canonical code. The permutation space is sharded by sigma(0); shards are
// merged by sorting codes, so the output does not depend on the worker count.

#include <array>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "flowcensus/combmap.hpp"

namespace flowcensus {

inline constexpr int kMaxGeneratedEdges = 5;

struct GenerationConfig {
    int n_edges = 1;
    bool allow_reflection = true;
    int parallelism = 1;
};

namespace detail {

inline void check_generation_config(const GenerationConfig& cfg) {
    if (cfg.n_edges < 1 || cfg.n_edges > kMaxGeneratedEdges) {
        throw Error(Errc::edge_count_out_of_range,
                    "edge count " + std::to_string(cfg.n_edges) + " outside [1, " +
                        std::to_string(kMaxGeneratedEdges) + "]");
    }
}

inline constexpr int kMaxGenDarts = 2 * kMaxGeneratedEdges;

// Connected and V - E + F = 2, for alpha = d ^ 1. Allocation free.
inline bool spherical_rotation(const std::array<Dart, kMaxGenDarts>& sigma, int n) {
    std::uint32_t seen = 1u;
    std::array<Dart, kMaxGenDarts> stack{};
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        Dart d = stack[--top];
        for (Dart e : {sigma[d], d ^ 1}) {
            if (!(seen & (1u << e))) {
                seen |= 1u << e;
                stack[top++] = e;
            }
        }
    }
    if (seen != (1u << n) - 1u) return false;

    auto cycles = [n](auto&& next) {
        std::uint32_t visited = 0;
        int count = 0;
        for (int s = 0; s < n; ++s) {
            if (visited & (1u << s)) continue;
            ++count;
            for (int d = s; !(visited & (1u << d)); d = next(d)) visited |= 1u << d;
        }
        return count;
    };
    int v = cycles([&](int d) { return sigma[d]; });
    int f = cycles([&](int d) { return sigma[d ^ 1]; });
    return v - n / 2 + f == 2;
}

// Canonical codes of every valid rotation with sigma(0) == first.
inline std::vector<CanonicalCode> shard_codes(int n_edges, Dart first, bool allow_reflection) {
    const int n = 2 * n_edges;
    std::vector<Dart> rest;
    for (Dart d = 0; d < n; ++d) {
        if (d != first) rest.push_back(d);
    }
    Permutation alpha(n);
    for (Dart d = 0; d < n; ++d) alpha[d] = d ^ 1;

    std::vector<CanonicalCode> codes;
    std::array<Dart, kMaxGenDarts> sigma{};
    sigma[0] = first;
    do {
        std::copy(rest.begin(), rest.end(), sigma.begin() + 1);
        if (!spherical_rotation(sigma, n)) continue;
        codes.push_back(minimal_trace(std::span<const Dart>(sigma.data(), n), alpha, std::nullopt,
                                      allow_reflection));
    } while (std::next_permutation(rest.begin(), rest.end()));
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    return codes;
}

inline int worker_count(int hint, int tasks) {
    int w = hint > 0 ? hint : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return std::clamp(w, 1, std::max(1, tasks));
}

}  // namespace detail

/// Canonical codes of all spherical maps with `cfg.n_edges` edges, sorted,
/// computed without the per-process cache.
inline std::vector<CanonicalCode> generate_map_codes_uncached(const GenerationConfig& cfg) {
    detail::check_generation_config(cfg);
    const int n = 2 * cfg.n_edges;
    std::vector<std::vector<CanonicalCode>> shards(n);
    std::atomic<int> next{0};
    auto work = [&] {
        for (int s = next++; s < n; s = next++) {
            shards[s] = detail::shard_codes(cfg.n_edges, s, cfg.allow_reflection);
        }
    };
    const int workers = detail::worker_count(cfg.parallelism, n);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    std::vector<CanonicalCode> all;
    for (auto& s : shards) all.insert(all.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

/// Memoized `generate_map_codes_uncached`; the result does not depend on
/// `cfg.parallelism`, so the cache is keyed by edge count and reflection flag.
inline const std::vector<CanonicalCode>& generate_map_codes(const GenerationConfig& cfg) {
    detail::check_generation_config(cfg);
    static std::mutex mutex;
    static std::map<std::pair<int, bool>, std::vector<CanonicalCode>> cache;
    std::lock_guard lock(mutex);
    auto key = std::pair{cfg.n_edges, cfg.allow_reflection};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, generate_map_codes_uncached(cfg)).first;
    return it->second;
}

/// One representative per class of connected spherical maps, in canonical
/// code order. Representatives are decoded from the codes and relabeled to
/// the normal alpha form, so they do not depend on the search order.
inline std::vector<CombinatorialMap> generate_maps(const GenerationConfig& cfg) {
    std::vector<CombinatorialMap> maps;
    for (const auto& code : generate_map_codes(cfg)) {
        maps.push_back(normalize_alpha(code.decode().first).map);
    }
    return maps;
}

struct MapWithVertex {
    CombinatorialMap map;
    std::vector<Dart> vertex;  // rotation orbit of the chosen vertex
};

/// Key identifying a vertex of `m` up to automorphisms of `m`.
inline CanonicalCode vertex_class_code(const CombinatorialMap& m, std::span<const Dart> vertex,
                                       bool allow_reflection) {
    CanonicalCode best;
    bool first = true;
    for (Dart d : vertex) {
        auto c = canonical_code(m, Mark{MarkKind::t_vertex, d}, allow_reflection);
        if (first || c < best) best = std::move(c);
        first = false;
    }
    return best;
}

/// All (map, degree-3 vertex) pairs, up to equivalence of the pair, where no
/// edge at the vertex is a loop. Ordered by map code, then vertex key.
inline std::vector<MapWithVertex> generate_maps_with_degree3_vertex(const GenerationConfig& cfg) {
    std::vector<MapWithVertex> out;
    for (const auto& m : generate_maps(cfg)) {
        std::vector<std::pair<CanonicalCode, std::vector<Dart>>> found;
        for (const auto& v : orbits(m, Cells::vertices)) {
            if (v.size() != 3) continue;
            if (std::any_of(v.begin(), v.end(), [&](Dart d) { return m.is_loop(d); })) continue;
            auto key = vertex_class_code(m, v, cfg.allow_reflection);
            bool seen = std::any_of(found.begin(), found.end(), [&](const auto& f) { return f.first == key; });
            if (!seen) found.emplace_back(std::move(key), v);
        }
        std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& f : found) out.push_back({m, std::move(f.second)});
    }
    return out;
}

}  // namespace flowcensus
