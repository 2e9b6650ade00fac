#include "sps/pattern.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sps {

int StarsPathsPattern::order() const {
    int total = star_count();
    for (const auto& star : stars)
        total += star.out_leaves + star.in_leaves;
    for (const auto& path : paths)
        total += path.from == path.to ? path.vertex_count - 1 : path.vertex_count - 2;
    return total;
}

void StarsPathsPattern::check() const {
    if (stars.empty())
        fail(ErrorKind::Parse, "pattern needs at least one star");
    for (const auto& star : stars)
        if (star.out_leaves < 0 || star.in_leaves < 0)
            fail(ErrorKind::Parse, "negative leaf count");
    for (const auto& path : paths) {
        if (path.from < 0 || path.from >= star_count() || path.to < 0 || path.to >= star_count())
            fail(ErrorKind::Parse, "path endpoint is not a star index");
        int minimum = path.from == path.to ? 3 : 2;
        if (path.vertex_count < minimum)
            fail(ErrorKind::Parse, "path vertex count below minimum");
    }
    if (roots) {
        if (static_cast<int>(roots->size()) != star_count())
            fail(ErrorKind::Parse, "root list length differs from star count");
        std::set<VertexId> distinct(roots->begin(), roots->end());
        if (static_cast<int>(distinct.size()) != star_count())
            fail(ErrorKind::Parse, "roots must be pairwise distinct");
    }
}

PatternDigraph pattern_to_digraph(const StarsPathsPattern& pattern) {
    pattern.check();
    PatternDigraph result;
    int k = pattern.star_count();
    int next = 0;
    result.center_vertex.resize(k);
    for (int i = 0; i < k; ++i)
        result.center_vertex[i] = next++;
    std::vector<Arc> arcs;
    result.out_leaf_vertex.resize(k);
    result.in_leaf_vertex.resize(k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < pattern.stars[i].out_leaves; ++j) {
            result.out_leaf_vertex[i].push_back(next);
            arcs.emplace_back(result.center_vertex[i], next++);
        }
        for (int j = 0; j < pattern.stars[i].in_leaves; ++j) {
            result.in_leaf_vertex[i].push_back(next);
            arcs.emplace_back(next, result.center_vertex[i]);
            ++next;
        }
    }
    for (const auto& path : pattern.paths) {
        std::vector<VertexId> seq;
        seq.push_back(result.center_vertex[path.from]);
        int interior = path.from == path.to ? path.vertex_count - 1 : path.vertex_count - 2;
        for (int j = 0; j < interior; ++j)
            seq.push_back(next++);
        if (path.from != path.to)
            seq.push_back(result.center_vertex[path.to]);
        for (size_t j = 0; j + 1 < seq.size(); ++j)
            arcs.emplace_back(seq[j], seq[j + 1]);
        if (path.from == path.to)
            arcs.emplace_back(seq.back(), seq.front());
        result.path_vertexes.push_back(std::move(seq));
    }
    result.graph = Digraph::from_arc_list(next, arcs, false);
    return result;
}

namespace {

// Tracks host vertex usage by pattern role; a host vertex may carry exactly
// one pattern vertex, so any double booking is a violation.
struct UsageMap {
    std::map<VertexId, std::string> role;

    std::optional<std::string> claim(VertexId v, const std::string& tag) {
        auto [it, fresh] = role.emplace(v, tag);
        if (!fresh)
            return "host vertex " + std::to_string(v) + " used as both " + it->second + " and " + tag;
        return std::nullopt;
    }
};

} // namespace

std::optional<std::string> embedding_violation(const Digraph& host, const StarsPathsPattern& pattern,
                                               const Embedding& embedding) {
    pattern.check();
    int k = pattern.star_count();
    if (static_cast<int>(embedding.star_centers.size()) != k)
        return "center count mismatch";
    if (static_cast<int>(embedding.star_out_leaves.size()) != k ||
        static_cast<int>(embedding.star_in_leaves.size()) != k)
        return "leaf list count mismatch";
    if (static_cast<int>(embedding.path_vertices.size()) != pattern.path_count())
        return "path count mismatch";

    for (VertexId v : embedding.star_centers)
        if (v < 0 || v >= host.vertex_count())
            return "center out of range";
    if (pattern.roots && embedding.star_centers != *pattern.roots)
        return "embedding ignores the prescribed roots";

    UsageMap usage;
    for (int i = 0; i < k; ++i)
        if (auto why = usage.claim(embedding.star_centers[i], "center " + std::to_string(i)))
            return why;

    for (int i = 0; i < k; ++i) {
        VertexId center = embedding.star_centers[i];
        const auto& outs = embedding.star_out_leaves[i];
        const auto& ins = embedding.star_in_leaves[i];
        if (static_cast<int>(outs.size()) != pattern.stars[i].out_leaves ||
            static_cast<int>(ins.size()) != pattern.stars[i].in_leaves)
            return "leaf count mismatch at star " + std::to_string(i);
        for (VertexId leaf : outs) {
            if (!host.has_arc(center, leaf))
                return "missing out-leaf arc at star " + std::to_string(i);
            if (auto why = usage.claim(leaf, "leaf of star " + std::to_string(i)))
                return why;
        }
        for (VertexId leaf : ins) {
            if (!host.has_arc(leaf, center))
                return "missing in-leaf arc at star " + std::to_string(i);
            if (auto why = usage.claim(leaf, "leaf of star " + std::to_string(i)))
                return why;
        }
    }

    for (int p = 0; p < pattern.path_count(); ++p) {
        const auto& spec = pattern.paths[p];
        const auto& seq = embedding.path_vertices[p];
        if (static_cast<int>(seq.size()) != spec.vertex_count)
            return "path " + std::to_string(p) + " has wrong vertex count";
        if (seq.front() != embedding.star_centers[spec.from])
            return "path " + std::to_string(p) + " does not start at its center";
        if (spec.from != spec.to && seq.back() != embedding.star_centers[spec.to])
            return "path " + std::to_string(p) + " does not end at its center";
        for (size_t j = 0; j + 1 < seq.size(); ++j)
            if (!host.has_arc(seq[j], seq[j + 1]))
                return "path " + std::to_string(p) + " uses a missing arc";
        if (spec.from == spec.to && !host.has_arc(seq.back(), seq.front()))
            return "cycle " + std::to_string(p) + " misses its closing arc";
        size_t interior_from = 1;
        size_t interior_to = spec.from == spec.to ? seq.size() : seq.size() - 1;
        for (size_t j = interior_from; j < interior_to; ++j)
            if (auto why = usage.claim(seq[j], "interior of path " + std::to_string(p)))
                return why;
    }
    return std::nullopt;
}

} // namespace sps
