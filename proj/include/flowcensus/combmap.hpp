#pragma once

// Sphere-embedded graphs as combinatorial maps (rotation systems).
//
// A map on 2E darts is a pair of permutations: sigma, the successor of a
// dart in the rotation around its source vertex, and alpha, the fixed-point
// free involution pairing the two darts of an edge. Faces are the orbits of
// phi = sigma o alpha. A map is spherical iff it is connected and
// V - E + F = 2.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace flowcensus {

using Dart = int;
using Permutation = std::vector<Dart>;

enum class Errc {
    not_permutation,
    empty_map,
    not_involution,
    not_connected,
    not_spherical,
    invalid_mark,
    kind_mismatch,
    edge_count_out_of_range,
    saddle_count_out_of_range,
    not_reversible,
    unknown_code,
    unsupported_format,
    invariant_violation,
};

inline std::string_view to_string(Errc e) {
    switch (e) {
        case Errc::not_permutation: return "NotPermutation";
        case Errc::empty_map: return "EmptyMap";
        case Errc::not_involution: return "NotInvolution";
        case Errc::not_connected: return "NotConnected";
        case Errc::not_spherical: return "NotSpherical";
        case Errc::invalid_mark: return "InvalidMark";
        case Errc::kind_mismatch: return "KindMismatch";
        case Errc::edge_count_out_of_range: return "EdgeCountOutOfRange";
        case Errc::saddle_count_out_of_range: return "SaddleCountOutOfRange";
        case Errc::not_reversible: return "NotReversible";
        case Errc::unknown_code: return "UnknownCode";
        case Errc::unsupported_format: return "UnsupportedFormat";
        case Errc::invariant_violation: return "InvariantViolation";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// The three kinds of selected element on a distinguishing graph.
///   source: the dart names an edge and its endpoint vertex(d)
///   sink:   the dart names an edge and the face containing d
///   t_vertex: the dart is the perpendicular dart at a degree-3 vertex
enum class MarkKind : std::uint8_t { source = 0, sink = 1, t_vertex = 2 };

inline std::string_view to_string(MarkKind k) {
    switch (k) {
        case MarkKind::source: return "source";
        case MarkKind::sink: return "sink";
        case MarkKind::t_vertex: return "t";
    }
    return "?";
}

inline std::optional<MarkKind> parse_mark_kind(std::string_view s) {
    if (s == "source") return MarkKind::source;
    if (s == "sink") return MarkKind::sink;
    if (s == "t") return MarkKind::t_vertex;
    return std::nullopt;
}

struct Mark {
    MarkKind kind;
    Dart dart;

    friend bool operator==(const Mark&, const Mark&) = default;
};

enum class Cells { vertices, edges, faces };

namespace detail {

inline bool is_permutation(std::span<const Dart> p) {
    std::vector<char> seen(p.size(), 0);
    for (Dart d : p) {
        if (d < 0 || static_cast<std::size_t>(d) >= p.size() || seen[d]) return false;
        seen[d] = 1;
    }
    return true;
}

// Orbit index of every dart under `perm`, numbered by smallest member.
inline int orbit_ids(std::span<const Dart> perm, std::vector<int>& ids) {
    ids.assign(perm.size(), -1);
    int count = 0;
    for (std::size_t start = 0; start < perm.size(); ++start) {
        if (ids[start] >= 0) continue;
        Dart d = static_cast<Dart>(start);
        while (ids[d] < 0) {
            ids[d] = count;
            d = perm[d];
        }
        ++count;
    }
    return count;
}

inline int count_cycles(std::span<const Dart> perm) {
    std::vector<int> ids;
    return orbit_ids(perm, ids);
}

inline bool transitive(std::span<const Dart> sigma, std::span<const Dart> alpha) {
    if (sigma.empty()) return true;
    std::vector<char> seen(sigma.size(), 0);
    std::vector<Dart> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        Dart d = stack.back();
        stack.pop_back();
        for (Dart e : {sigma[d], alpha[d]}) {
            if (!seen[e]) {
                seen[e] = 1;
                ++reached;
                stack.push_back(e);
            }
        }
    }
    return reached == sigma.size();
}

inline Permutation compose(std::span<const Dart> outer, std::span<const Dart> inner) {
    Permutation r(inner.size());
    for (std::size_t d = 0; d < inner.size(); ++d) r[d] = outer[inner[d]];
    return r;
}

inline Permutation inverse(std::span<const Dart> p) {
    Permutation r(p.size());
    for (std::size_t d = 0; d < p.size(); ++d) r[p[d]] = static_cast<Dart>(d);
    return r;
}

}  // namespace detail

struct ValidationResult {
    std::vector<Errc> failures;
    int vertices = 0;
    int edges = 0;
    int faces = 0;

    bool ok() const { return failures.empty(); }
    bool has(Errc e) const { return std::find(failures.begin(), failures.end(), e) != failures.end(); }
};

/// Checks every map invariant and reports all that fail.
inline ValidationResult validate(std::span<const Dart> sigma, std::span<const Dart> alpha) {
    ValidationResult r;
    if (sigma.size() != alpha.size() || !detail::is_permutation(sigma) ||
        !detail::is_permutation(alpha)) {
        r.failures.push_back(Errc::not_permutation);
        return r;
    }
    if (sigma.empty()) {
        r.failures.push_back(Errc::empty_map);
        return r;
    }
    for (std::size_t d = 0; d < alpha.size(); ++d) {
        if (alpha[d] == static_cast<Dart>(d) || alpha[alpha[d]] != static_cast<Dart>(d)) {
            r.failures.push_back(Errc::not_involution);
            return r;
        }
    }
    r.edges = static_cast<int>(alpha.size() / 2);
    r.vertices = detail::count_cycles(sigma);
    r.faces = detail::count_cycles(detail::compose(sigma, alpha));
    if (!detail::transitive(sigma, alpha)) r.failures.push_back(Errc::not_connected);
    if (r.vertices - r.edges + r.faces != 2) r.failures.push_back(Errc::not_spherical);
    return r;
}

/// An immutable, validated spherical map. Any fixed-point-free involution is
/// accepted as alpha; `normalize_alpha` relabels to the (0 1)(2 3)... form.
class CombinatorialMap {
public:
    static CombinatorialMap create(Permutation sigma, Permutation alpha) {
        auto v = validate(sigma, alpha);
        if (!v.ok()) {
            throw Error(v.failures.front(), "invalid combinatorial map");
        }
        return CombinatorialMap(std::move(sigma), std::move(alpha));
    }

    /// Builds a map whose alpha is (0 1)(2 3)...(2E-2 2E-1).
    static CombinatorialMap from_rotation(Permutation sigma) {
        Permutation alpha(sigma.size());
        for (std::size_t d = 0; d < alpha.size(); ++d) alpha[d] = static_cast<Dart>(d ^ 1u);
        return create(std::move(sigma), std::move(alpha));
    }

    int n_darts() const { return static_cast<int>(sigma_.size()); }
    int n_edges() const { return n_darts() / 2; }
    int n_vertices() const { return n_vertices_; }
    int n_faces() const { return n_faces_; }

    Dart sigma(Dart d) const { return sigma_[d]; }
    Dart sigma_inv(Dart d) const { return sigma_inv_[d]; }
    Dart alpha(Dart d) const { return alpha_[d]; }
    Dart phi(Dart d) const { return sigma_[alpha_[d]]; }

    const Permutation& sigma_perm() const { return sigma_; }
    const Permutation& alpha_perm() const { return alpha_; }

    int vertex_of(Dart d) const { return vertex_id_[d]; }
    int face_of(Dart d) const { return face_id_[d]; }
    int edge_of(Dart d) const { return edge_id_[d]; }

    int degree(Dart d) const { return vertex_size_[vertex_id_[d]]; }
    int face_size(Dart d) const { return face_size_[face_id_[d]]; }

    bool is_loop(Dart d) const { return vertex_of(d) == vertex_of(alpha(d)); }
    /// On the sphere an edge is a bridge iff both sides lie on the same face.
    bool is_bridge(Dart d) const { return face_of(d) == face_of(alpha(d)); }

    bool alpha_is_normal() const {
        for (Dart d = 0; d < n_darts(); ++d) {
            if (alpha_[d] != (d ^ 1)) return false;
        }
        return true;
    }

    friend bool operator==(const CombinatorialMap& a, const CombinatorialMap& b) {
        return a.sigma_ == b.sigma_ && a.alpha_ == b.alpha_;
    }

private:
    CombinatorialMap(Permutation sigma, Permutation alpha)
        : sigma_(std::move(sigma)), alpha_(std::move(alpha)) {
        sigma_inv_ = detail::inverse(sigma_);
        n_vertices_ = detail::orbit_ids(sigma_, vertex_id_);
        n_faces_ = detail::orbit_ids(detail::compose(sigma_, alpha_), face_id_);
        detail::orbit_ids(alpha_, edge_id_);
        vertex_size_.assign(n_vertices_, 0);
        face_size_.assign(n_faces_, 0);
        for (Dart d = 0; d < n_darts(); ++d) {
            ++vertex_size_[vertex_id_[d]];
            ++face_size_[face_id_[d]];
        }
    }

    Permutation sigma_;
    Permutation alpha_;
    Permutation sigma_inv_;
    std::vector<int> vertex_id_;
    std::vector<int> face_id_;
    std::vector<int> edge_id_;
    std::vector<int> vertex_size_;
    std::vector<int> face_size_;
    int n_vertices_ = 0;
    int n_faces_ = 0;
};

/// Dart orbits of the requested cell type. Each orbit starts at its smallest
/// dart and follows the generating permutation; orbits are ordered by that
/// smallest dart.
inline std::vector<std::vector<Dart>> orbits(const CombinatorialMap& m, Cells which) {
    std::vector<std::vector<Dart>> out;
    std::vector<char> seen(m.n_darts(), 0);
    for (Dart start = 0; start < m.n_darts(); ++start) {
        if (seen[start]) continue;
        std::vector<Dart> orbit;
        Dart d = start;
        while (!seen[d]) {
            seen[d] = 1;
            orbit.push_back(d);
            switch (which) {
                case Cells::vertices: d = m.sigma(d); break;
                case Cells::edges: d = m.alpha(d); break;
                case Cells::faces: d = m.phi(d); break;
            }
        }
        out.push_back(std::move(orbit));
    }
    return out;
}

/// Vertex degrees in non-increasing order.
inline std::vector<int> degree_sequence(const CombinatorialMap& m) {
    std::vector<int> degrees;
    for (const auto& o : orbits(m, Cells::vertices)) degrees.push_back(static_cast<int>(o.size()));
    std::sort(degrees.rbegin(), degrees.rend());
    return degrees;
}

inline std::vector<int> face_size_sequence(const CombinatorialMap& m) {
    std::vector<int> sizes;
    for (const auto& o : orbits(m, Cells::faces)) sizes.push_back(static_cast<int>(o.size()));
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

/// The dual map shares the dart set: dart d of the dual crosses edge(d).
/// Vertices of the dual are the faces of `m` and vice versa; dual(dual(m)) == m.
inline CombinatorialMap dual(const CombinatorialMap& m) {
    return CombinatorialMap::create(detail::compose(m.sigma_perm(), m.alpha_perm()), m.alpha_perm());
}

/// Orientation reversal.
inline CombinatorialMap mirror(const CombinatorialMap& m) {
    return CombinatorialMap::create(detail::inverse(m.sigma_perm()), m.alpha_perm());
}

/// Image of `m` under the dart relabeling d -> new_id[d].
inline CombinatorialMap relabel(const CombinatorialMap& m, std::span<const Dart> new_id) {
    Permutation s(m.n_darts()), a(m.n_darts());
    for (Dart d = 0; d < m.n_darts(); ++d) {
        s[new_id[d]] = new_id[m.sigma(d)];
        a[new_id[d]] = new_id[m.alpha(d)];
    }
    return CombinatorialMap::create(std::move(s), std::move(a));
}

struct NormalizedMap {
    CombinatorialMap map;
    Permutation new_id;  // old dart -> new dart
};

/// Relabels darts so alpha becomes (0 1)(2 3)...; edges are numbered in order
/// of their smallest old dart, which keeps the smaller dart first.
inline NormalizedMap normalize_alpha(const CombinatorialMap& m) {
    Permutation new_id(m.n_darts(), -1);
    Dart next = 0;
    for (Dart d = 0; d < m.n_darts(); ++d) {
        if (new_id[d] >= 0) continue;
        new_id[d] = next++;
        new_id[m.alpha(d)] = next++;
    }
    return {relabel(m, new_id), new_id};
}

// ---------------------------------------------------------------------------
// Canonical codes

struct CodeMark {
    int label;
    MarkKind kind;

    friend auto operator<=>(const CodeMark&, const CodeMark&) = default;
};

/// Total-order key of a (marked) map up to the configured equivalence.
///
/// The words are the interleaved pairs (label(sigma(d)), label(alpha(d))) for
/// d in label order 0..2E-1, produced by the breadth-first relabeling that
/// minimizes them; the mark label follows when present.
class CanonicalCode {
public:
    CanonicalCode() = default;
    CanonicalCode(int n_edges, std::vector<int> words, std::optional<CodeMark> mark)
        : n_edges_(n_edges), words_(std::move(words)), mark_(mark) {}

    int n_edges() const { return n_edges_; }
    const std::vector<int>& words() const { return words_; }
    const std::optional<CodeMark>& mark() const { return mark_; }

    Permutation sigma() const {
        Permutation s(words_.size() / 2);
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = words_[2 * i];
        return s;
    }

    Permutation alpha() const {
        Permutation a(words_.size() / 2);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = words_[2 * i + 1];
        return a;
    }

    /// "E:<n>;s:<sigma>;a:<alpha>;m:<kind,label|->"
    std::string token() const {
        std::ostringstream os;
        os << "E:" << n_edges_ << ";s:";
        join(os, sigma());
        os << ";a:";
        join(os, alpha());
        os << ";m:";
        if (mark_) {
            os << to_string(mark_->kind) << ',' << mark_->label;
        } else {
            os << '-';
        }
        return os.str();
    }

    /// Parses a token; nullopt if it is malformed. The encoded map itself is
    /// validated by `decode`.
    static std::optional<CanonicalCode> parse(std::string_view token);

    /// The labeled map (and mark) the code describes.
    std::pair<CombinatorialMap, std::optional<Mark>> decode() const {
        auto m = CombinatorialMap::create(sigma(), alpha());
        std::optional<Mark> mark;
        if (mark_) mark = Mark{mark_->kind, mark_->label};
        return {std::move(m), mark};
    }

    friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
    friend std::strong_ordering operator<=>(const CanonicalCode& a, const CanonicalCode& b) {
        if (auto c = a.n_edges_ <=> b.n_edges_; c != 0) return c;
        if (auto c = a.words_ <=> b.words_; c != 0) return c;
        return a.mark_ <=> b.mark_;
    }

private:
    static void join(std::ostringstream& os, const Permutation& p) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) os << ',';
            os << p[i];
        }
    }

    int n_edges_ = 0;
    std::vector<int> words_;
    std::optional<CodeMark> mark_;
};

namespace detail {

inline bool parse_int_list(std::string_view s, std::vector<int>& out) {
    out.clear();
    if (s.empty()) return false;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        auto piece = s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        if (piece.empty() || piece.size() > 6) return false;
        int v = 0;
        for (char c : piece) {
            if (c < '0' || c > '9') return false;
            v = v * 10 + (c - '0');
        }
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return true;
}

inline bool strip_prefix(std::string_view& s, std::string_view prefix) {
    if (s.substr(0, prefix.size()) != prefix) return false;
    s.remove_prefix(prefix.size());
    return true;
}

}  // namespace detail

inline std::optional<CanonicalCode> CanonicalCode::parse(std::string_view token) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        auto semi = token.find(';', pos);
        fields.push_back(token.substr(pos, semi == std::string_view::npos ? std::string_view::npos : semi - pos));
        if (semi == std::string_view::npos) break;
        pos = semi + 1;
    }
    if (fields.size() != 4) return std::nullopt;
    if (!detail::strip_prefix(fields[0], "E:") || !detail::strip_prefix(fields[1], "s:") ||
        !detail::strip_prefix(fields[2], "a:") || !detail::strip_prefix(fields[3], "m:")) {
        return std::nullopt;
    }
    std::vector<int> e, s, a;
    if (!detail::parse_int_list(fields[0], e) || e.size() != 1) return std::nullopt;
    if (!detail::parse_int_list(fields[1], s) || !detail::parse_int_list(fields[2], a)) return std::nullopt;
    if (s.size() != a.size() || s.size() != static_cast<std::size_t>(2 * e[0])) return std::nullopt;
    std::optional<CodeMark> mark;
    if (fields[3] != "-") {
        auto comma = fields[3].find(',');
        if (comma == std::string_view::npos) return std::nullopt;
        auto kind = parse_mark_kind(fields[3].substr(0, comma));
        std::vector<int> label;
        if (!kind || !detail::parse_int_list(fields[3].substr(comma + 1), label) || label.size() != 1 ||
            label[0] >= static_cast<int>(s.size())) {
            return std::nullopt;
        }
        mark = CodeMark{label[0], *kind};
    }
    std::vector<int> words(2 * s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        words[2 * i] = s[i];
        words[2 * i + 1] = a[i];
    }
    return CanonicalCode(e[0], std::move(words), mark);
}

namespace detail {

/// Dart that carries the mark after orientation reversal. Vertices and edges
/// are preserved by reversal; the face on a given side of a dart is not:
/// the phi-orbit of d in the mirror corresponds to the phi-orbit of alpha(d).
inline Dart mirrored_mark_dart(MarkKind kind, Dart d, std::span<const Dart> alpha) {
    return kind == MarkKind::sink ? alpha[d] : d;
}

/// Breadth-first relabeling from `start`: from each labeled dart, visit its
/// rotation successor and then its edge partner. The words of position i are
/// final once dart i has been expanded, so the comparison with `best` runs
/// alongside and stops at the first word that is larger. Returns the sign of
/// words <=> best over the words produced (0 when `best` is empty and the
/// trace ran to completion).
inline int trace(std::span<const Dart> rot, std::span<const Dart> alpha, Dart start, std::span<int> labels,
                 std::span<Dart> order, std::span<int> words, std::span<const int> best) {
    const std::size_t n = rot.size();
    std::fill(labels.begin(), labels.end(), -1);
    labels[start] = 0;
    order[0] = start;
    std::size_t assigned = 1;
    int sign = best.empty() ? -1 : 0;
    for (std::size_t i = 0; i < n; ++i) {
        Dart d = order[i];
        for (Dart e : {rot[d], alpha[d]}) {
            if (labels[e] < 0) {
                labels[e] = static_cast<int>(assigned);
                order[assigned++] = e;
            }
        }
        words[2 * i] = labels[rot[d]];
        words[2 * i + 1] = labels[alpha[d]];
        if (sign == 0) {
            for (std::size_t k = 2 * i; k < 2 * i + 2; ++k) {
                if (words[k] != best[k]) {
                    sign = words[k] < best[k] ? -1 : 1;
                    break;
                }
            }
            if (sign > 0) return 1;
        }
    }
    return sign;
}

/// Lexicographically smallest trace over every start dart and, if allowed,
/// both orientations. Works on raw permutations of a connected map.
inline CanonicalCode minimal_trace(std::span<const Dart> sigma, std::span<const Dart> alpha,
                                   std::optional<Mark> mark, bool allow_reflection) {
    const std::size_t n = sigma.size();
    std::vector<int> labels(n), words(2 * n), best_words;
    std::vector<Dart> order(n);
    std::optional<CodeMark> best_mark;

    Permutation reversed;
    if (allow_reflection) reversed = inverse(sigma);

    auto consider = [&](std::span<const Dart> rot, bool mirrored) {
        for (std::size_t start = 0; start < n; ++start) {
            int sign = trace(rot, alpha, static_cast<Dart>(start), labels, order, words, best_words);
            if (sign > 0) continue;
            std::optional<CodeMark> cm;
            if (mark) {
                Dart md = mirrored ? mirrored_mark_dart(mark->kind, mark->dart, alpha) : mark->dart;
                cm = CodeMark{labels[md], mark->kind};
            }
            if (sign < 0 || cm < best_mark) {
                best_words = words;
                best_mark = cm;
            }
        }
    };
    consider(sigma, false);
    if (allow_reflection) consider(reversed, true);
    return CanonicalCode(static_cast<int>(n / 2), std::move(best_words), best_mark);
}

}  // namespace detail

/// Canonical code of `m` with an optional mark. With `allow_reflection` the
/// code is also invariant under orientation reversal.
inline CanonicalCode canonical_code(const CombinatorialMap& m, std::optional<Mark> mark = std::nullopt,
                                    bool allow_reflection = true) {
    if (mark && (mark->dart < 0 || mark->dart >= m.n_darts())) {
        throw Error(Errc::invalid_mark, "mark dart " + std::to_string(mark->dart) + " outside map");
    }
    return detail::minimal_trace(m.sigma_perm(), m.alpha_perm(), mark, allow_reflection);
}

inline bool are_equivalent(const CombinatorialMap& a, const std::optional<Mark>& mark_a,
                           const CombinatorialMap& b, const std::optional<Mark>& mark_b,
                           bool allow_reflection = true) {
    if (mark_a.has_value() != mark_b.has_value()) {
        throw Error(Errc::kind_mismatch, "comparing a marked map with an unmarked one");
    }
    if (mark_a && mark_a->kind != mark_b->kind) {
        throw Error(Errc::kind_mismatch, "comparing marks of different kinds");
    }
    if (a.n_edges() != b.n_edges()) return false;
    return canonical_code(a, mark_a, allow_reflection) == canonical_code(b, mark_b, allow_reflection);
}

inline bool are_equivalent(const CombinatorialMap& a, const CombinatorialMap& b, bool allow_reflection = true) {
    return are_equivalent(a, std::nullopt, b, std::nullopt, allow_reflection);
}

}  // namespace flowcensus
