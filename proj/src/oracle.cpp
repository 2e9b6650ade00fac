#include "sps/oracle.hpp"

#include <algorithm>
#include <string>

namespace sps {

namespace {

// Pattern vertices are placed one at a time; the order prefers vertices
// adjacent to already-placed ones (so arc checks prune early), breaking ties
// by total degree, descending.
std::vector<VertexId> placement_order(const Digraph& h, const std::map<VertexId, VertexId>& pinned) {
    int k = h.vertex_count();
    std::vector<int> degree(k);
    for (VertexId v = 0; v < k; ++v)
        degree[v] = h.out_degree(v) + h.in_degree(v);
    std::vector<char> placed(k, 0);
    std::vector<VertexId> order;
    auto pick = [&](bool need_adjacent) -> VertexId {
        VertexId best = -1;
        for (VertexId v = 0; v < k; ++v) {
            if (placed[v])
                continue;
            if (need_adjacent) {
                bool adjacent = false;
                for (VertexId u : order) {
                    if (h.has_arc(u, v) || h.has_arc(v, u)) {
                        adjacent = true;
                        break;
                    }
                }
                if (!adjacent)
                    continue;
            }
            if (best == -1 || degree[v] > degree[best])
                best = v;
        }
        return best;
    };
    for (auto& [pv, hv] : pinned) {
        (void)hv;
        if (!placed[pv]) {
            placed[pv] = 1;
            order.push_back(pv);
        }
    }
    while (static_cast<int>(order.size()) < k) {
        VertexId v = pick(true);
        if (v == -1)
            v = pick(false);
        placed[v] = 1;
        order.push_back(v);
    }
    return order;
}

struct MapSearch {
    const Digraph& d;
    const Digraph& h;
    const std::map<VertexId, VertexId>& pinned;
    std::vector<VertexId> order;
    std::vector<VertexId> image;  // pattern vertex -> host vertex or -1
    std::vector<char> host_used;

    MapSearch(const Digraph& d, const Digraph& h, const std::map<VertexId, VertexId>& pinned)
        : d(d), h(h), pinned(pinned), order(placement_order(h, pinned)),
          image(h.vertex_count(), -1), host_used(d.vertex_count(), 0) {}

    bool compatible(VertexId pv, VertexId hv) const {
        if (h.out_degree(pv) > d.out_degree(hv) || h.in_degree(pv) > d.in_degree(hv))
            return false;
        for (VertexId pu : h.out_neighbors(pv)) {
            if (pu == pv) {
                if (!d.has_arc(hv, hv))
                    return false;
            } else if (image[pu] != -1 && !d.has_arc(hv, image[pu])) {
                return false;
            }
        }
        for (VertexId pu : h.in_neighbors(pv))
            if (pu != pv && image[pu] != -1 && !d.has_arc(image[pu], hv))
                return false;
        return true;
    }

    bool place(size_t depth) {
        if (depth == order.size())
            return true;
        VertexId pv = order[depth];
        auto pin = pinned.find(pv);
        for (VertexId hv = 0; hv < d.vertex_count(); ++hv) {
            if (host_used[hv])
                continue;
            if (pin != pinned.end() && pin->second != hv)
                continue;
            if (!compatible(pv, hv))
                continue;
            image[pv] = hv;
            host_used[hv] = 1;
            if (place(depth + 1))
                return true;
            image[pv] = -1;
            host_used[hv] = 0;
        }
        return false;
    }
};

} // namespace

std::optional<std::vector<VertexId>> oracle_find_map(const Digraph& d, const Digraph& h,
                                                     const std::map<VertexId, VertexId>& pinned, int cap) {
    if (h.vertex_count() > cap)
        fail(ErrorKind::PatternTooLarge,
             "pattern has " + std::to_string(h.vertex_count()) + " vertices, cap is " + std::to_string(cap));
    if (h.vertex_count() > d.vertex_count())
        return std::nullopt;
    for (auto& [pv, hv] : pinned) {
        h.check_vertex(pv);
        d.check_vertex(hv);
    }
    MapSearch search(d, h, pinned);
    if (!search.place(0))
        return std::nullopt;
    return search.image;
}

std::optional<std::vector<VertexId>> oracle_find_pattern(const Digraph& d, const Digraph& h, int cap) {
    return oracle_find_map(d, h, {}, cap);
}

std::optional<Embedding> oracle_find_pattern(const Digraph& d, const StarsPathsPattern& h, int cap) {
    PatternDigraph pd = pattern_to_digraph(h);
    std::map<VertexId, VertexId> pinned;
    if (h.roots)
        for (int i = 0; i < h.star_count(); ++i)
            pinned[pd.center_vertex[i]] = (*h.roots)[i];
    auto image = oracle_find_map(d, pd.graph, pinned, cap);
    if (!image)
        return std::nullopt;
    Embedding embedding;
    for (int i = 0; i < h.star_count(); ++i) {
        embedding.star_centers.push_back((*image)[pd.center_vertex[i]]);
        std::vector<VertexId> outs, ins;
        for (VertexId leaf : pd.out_leaf_vertex[i])
            outs.push_back((*image)[leaf]);
        for (VertexId leaf : pd.in_leaf_vertex[i])
            ins.push_back((*image)[leaf]);
        embedding.star_out_leaves.push_back(std::move(outs));
        embedding.star_in_leaves.push_back(std::move(ins));
    }
    for (const auto& seq : pd.path_vertexes) {
        std::vector<VertexId> mapped;
        for (VertexId v : seq)
            mapped.push_back((*image)[v]);
        embedding.path_vertices.push_back(std::move(mapped));
    }
    return embedding;
}

} // namespace sps
