#include "sps/rspsi.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "sps/matching.hpp"
#include "sps/saddp.hpp"

namespace sps {

namespace {

struct PreparedInstance {
    std::vector<StarSpec> active_specs;   // leaf_count > 0
    std::vector<int> active_of_spec;      // spec index -> active index or -1
    HomogenizeResult homogenized;
    VertexSet centers;
    std::vector<SizedRequest> plain_requests;          // ordinary pattern paths
    std::vector<std::pair<int, int>> self_paths;       // (star index, vertex_count)
};

PreparedInstance prepare(const Digraph& d, const StarsPathsPattern& pattern,
                         const std::vector<VertexId>& roots) {
    PreparedInstance prep;
    prep.homogenized = homogenize(pattern, roots);
    prep.centers.insert(roots.begin(), roots.end());
    prep.active_of_spec.assign(prep.homogenized.specs.size(), -1);
    for (size_t i = 0; i < prep.homogenized.specs.size(); ++i) {
        if (prep.homogenized.specs[i].leaf_count > 0) {
            prep.active_of_spec[i] = static_cast<int>(prep.active_specs.size());
            prep.active_specs.push_back(prep.homogenized.specs[i]);
        }
    }
    for (const auto& path : pattern.paths) {
        if (path.from == path.to)
            prep.self_paths.emplace_back(path.from, path.vertex_count);
        else
            prep.plain_requests.push_back({roots[path.from], roots[path.to], path.vertex_count});
    }
    (void)d;
    return prep;
}

// Neighborhoods for the avoid sets: usable = raw neighborhood minus all
// center vertices (centers can never serve as leaves, so path traffic over
// them must not burn slack).
std::vector<VertexSet> usable_neighborhoods(const Digraph& d, const std::vector<StarSpec>& specs,
                                            const VertexSet& centers) {
    std::vector<VertexSet> result;
    for (const auto& spec : specs) {
        const auto& raw = spec.orientation == StarOrientation::Out ? d.out_neighbors(spec.center_in_host)
                                                                   : d.in_neighbors(spec.center_in_host);
        VertexSet usable;
        for (VertexId v : raw)
            if (!centers.count(v))
                usable.insert(v);
        result.push_back(std::move(usable));
    }
    return result;
}

Embedding assemble(const StarsPathsPattern& pattern, const std::vector<VertexId>& roots,
                   const PreparedInstance& prep, const LeafAssignment& assignment,
                   const std::vector<std::vector<VertexId>>& plain_paths,
                   const std::vector<std::vector<VertexId>>& self_path_routes) {
    Embedding embedding;
    embedding.star_centers = roots;
    embedding.star_out_leaves.resize(pattern.star_count());
    embedding.star_in_leaves.resize(pattern.star_count());
    for (int star = 0; star < pattern.star_count(); ++star) {
        for (int spec_index : prep.homogenized.specs_of_star[star]) {
            const auto& spec = prep.homogenized.specs[spec_index];
            if (spec.leaf_count == 0)
                continue;
            int active = prep.active_of_spec[spec_index];
            const auto& leaves = assignment.leaves[active];
            auto& bucket = spec.orientation == StarOrientation::Out ? embedding.star_out_leaves[star]
                                                                    : embedding.star_in_leaves[star];
            bucket.assign(leaves.begin(), leaves.end());
        }
    }
    size_t next_plain = 0, next_self = 0;
    for (const auto& path : pattern.paths) {
        if (path.from == path.to)
            embedding.path_vertices.push_back(self_path_routes[next_self++]);
        else
            embedding.path_vertices.push_back(plain_paths[next_plain++]);
    }
    return embedding;
}

} // namespace

std::optional<Embedding> solve_rooted(const RspsiInstance& inst) {
    inst.pattern.check();
    if (!inst.pattern.roots)
        fail(ErrorKind::BadRequest, "rooted solver needs pattern roots");
    const auto& roots = *inst.pattern.roots;
    for (VertexId v : roots)
        inst.d.check_vertex(v);

    ArborealDecomposition dec;
    if (inst.decomposition) {
        dec = *inst.decomposition;
    } else if (is_dag(inst.d)) {
        dec = dag_decomposition(inst.d);
    } else {
        fail(ErrorKind::NoDecomposition, "host is not a DAG and no decomposition was supplied");
    }
    auto validation = validate(inst.d, dec);
    if (!validation.ok)
        fail(ErrorKind::InvalidDecomposition, "decomposition rejected: " + validation.issue);

    PreparedInstance prep = prepare(inst.d, inst.pattern, roots);
    int active_count = static_cast<int>(prep.active_specs.size());
    auto neighborhoods = usable_neighborhoods(inst.d, prep.active_specs, prep.centers);

    // Fast reject: a spec can never gather its leaves.
    for (int i = 0; i < active_count; ++i)
        if (prep.active_specs[i].leaf_count > static_cast<int>(neighborhoods[i].size()))
            return std::nullopt;

    // One SADDP instance per host: the avoid sets are fixed, only budgets
    // (the slacks) change across the sweep, so the itinerary tree is shared.
    SaddpInstance saddp;
    saddp.d = inst.d;
    saddp.spec.avoid_sets = neighborhoods;
    saddp.spec.budgets.assign(active_count, 0);
    auto itinerary = build_itinerary(saddp, dec);

    // Closing-arc combinations for cycle requests: the last interior vertex
    // before returning to the center.
    std::vector<std::vector<VertexId>> closing_candidates;
    for (const auto& [star, size] : prep.self_paths) {
        (void)size;
        std::vector<VertexId> candidates;
        for (VertexId u : inst.d.in_neighbors(roots[star]))
            if (!prep.centers.count(u))
                candidates.push_back(u);
        if (candidates.empty())
            return std::nullopt;
        closing_candidates.push_back(std::move(candidates));
    }

    std::vector<int> slack(active_count, 0);
    std::function<std::optional<Embedding>(int)> sweep = [&](int index) -> std::optional<Embedding> {
        if (index < active_count) {
            for (slack[index] = 0; slack[index] <= static_cast<int>(neighborhoods[index].size());
                 ++slack[index]) {
                if (auto found = sweep(index + 1))
                    return found;
            }
            slack[index] = 0;
            return std::nullopt;
        }

        auto system = build_system(inst.d, prep.active_specs, slack, prep.centers);
        if (!solve(system))
            return std::nullopt;

        // Route the paths within the slack budgets, trying each combination
        // of closing arcs for cycle requests.
        std::vector<VertexId> closing(prep.self_paths.size(), -1);
        std::function<std::optional<Embedding>(size_t)> route = [&](size_t ci) -> std::optional<Embedding> {
            if (ci < prep.self_paths.size()) {
                for (VertexId u : closing_candidates[ci]) {
                    closing[ci] = u;
                    if (auto found = route(ci + 1))
                        return found;
                }
                return std::nullopt;
            }
            std::vector<SizedRequest> requests = prep.plain_requests;
            for (size_t s = 0; s < prep.self_paths.size(); ++s)
                requests.push_back({roots[prep.self_paths[s].first], closing[s], prep.self_paths[s].second});
            auto witness = itinerary->witness(requests, slack);
            if (!witness)
                return std::nullopt;

            VertexSet reserved = prep.centers;
            for (const auto& path : *witness)
                reserved.insert(path.begin(), path.end());
            auto final_system =
                build_system(inst.d, prep.active_specs, std::vector<int>(active_count, 0), reserved);
            auto assignment = solve(final_system);
            if (!assignment)
                fail(ErrorKind::Internal, "slack-feasible system became infeasible after reserving paths");

            std::vector<std::vector<VertexId>> plain(witness->begin(),
                                                     witness->begin() + prep.plain_requests.size());
            std::vector<std::vector<VertexId>> selfs(witness->begin() + prep.plain_requests.size(),
                                                     witness->end());
            Embedding embedding = assemble(inst.pattern, roots, prep, *assignment, plain, selfs);
            if (auto why = embedding_violation(inst.d, inst.pattern, embedding))
                fail(ErrorKind::Internal, "assembled embedding is invalid: " + *why);
            return embedding;
        };
        return route(0);
    };
    return sweep(0);
}

std::optional<Embedding> solve_unrooted(const Digraph& d, const StarsPathsPattern& pattern,
                                        const std::optional<ArborealDecomposition>& dec) {
    pattern.check();
    if (pattern.roots)
        fail(ErrorKind::BadRequest, "unrooted solver expects a pattern without roots");
    int k = pattern.star_count();
    if (k > d.vertex_count())
        return std::nullopt;

    // Arc demands per center, used to prune placements.
    std::vector<int> need_out(k, 0), need_in(k, 0);
    for (int i = 0; i < k; ++i) {
        need_out[i] = pattern.stars[i].out_leaves;
        need_in[i] = pattern.stars[i].in_leaves;
    }
    for (const auto& path : pattern.paths) {
        need_out[path.from]++;
        need_in[path.to]++;
    }

    std::vector<VertexId> placement(k, -1);
    std::vector<char> taken(d.vertex_count(), 0);
    std::function<std::optional<Embedding>(int)> place = [&](int i) -> std::optional<Embedding> {
        if (i == k) {
            RspsiInstance rooted{d, pattern, dec};
            rooted.pattern.roots = placement;
            return solve_rooted(rooted);
        }
        for (VertexId v = 0; v < d.vertex_count(); ++v) {
            if (taken[v])
                continue;
            if (d.out_degree(v) < need_out[i] || d.in_degree(v) < need_in[i])
                continue;
            placement[i] = v;
            taken[v] = 1;
            auto found = place(i + 1);
            taken[v] = 0;
            if (found)
                return found;
        }
        placement[i] = -1;
        return std::nullopt;
    };
    return place(0);
}

std::optional<Embedding> find_disjoint_arcs(const Digraph& d, int l) {
    if (l < 0)
        fail(ErrorKind::BadRequest, "negative arc count");
    std::vector<Edge> edges;
    for (const auto& [tail, head] : d.arcs())
        if (tail != head)
            edges.emplace_back(std::min(tail, head), std::max(tail, head));
    auto matching = max_matching(d.vertex_count(), edges);
    if (static_cast<int>(matching.size()) < l)
        return std::nullopt;
    Embedding embedding;
    for (int i = 0; i < l; ++i) {
        auto [u, v] = matching[i];
        VertexId tail = d.has_arc(u, v) ? u : v;
        VertexId head = tail == u ? v : u;
        embedding.star_centers.push_back(tail);
        embedding.star_out_leaves.push_back({head});
        embedding.star_in_leaves.push_back({});
    }
    return embedding;
}

Digraph once_subdivided_star_digraph(int l, StarOrientation orientation) {
    if (l < 0)
        fail(ErrorKind::BadRequest, "negative star size");
    std::vector<Arc> arcs;
    for (int i = 0; i < l; ++i) {
        VertexId spoke = 1 + 2 * i, tip = 2 + 2 * i;
        if (orientation == StarOrientation::Out) {
            arcs.emplace_back(0, spoke);
            arcs.emplace_back(spoke, tip);
        } else {
            arcs.emplace_back(spoke, 0);
            arcs.emplace_back(tip, spoke);
        }
    }
    return Digraph::from_arc_list(1 + 2 * l, arcs, false);
}

std::optional<std::string> subdivided_star_violation(const Digraph& d, int l, StarOrientation orientation,
                                                     const Embedding& embedding) {
    if (embedding.star_centers.size() != 1)
        return "expected exactly one center";
    VertexId center = embedding.star_centers[0];
    const auto& spokes =
        orientation == StarOrientation::Out ? embedding.star_out_leaves[0] : embedding.star_in_leaves[0];
    if (static_cast<int>(spokes.size()) != l || static_cast<int>(embedding.path_vertices.size()) != l)
        return "arm count mismatch";
    std::set<VertexId> all{center};
    for (int i = 0; i < l; ++i) {
        const auto& arm = embedding.path_vertices[i];
        if (arm.size() != 2 || arm[0] != spokes[i])
            return "arm " + std::to_string(i) + " malformed";
        VertexId spoke = arm[0], tip = arm[1];
        bool arcs_ok = orientation == StarOrientation::Out
                           ? d.has_arc(center, spoke) && d.has_arc(spoke, tip)
                           : d.has_arc(spoke, center) && d.has_arc(tip, spoke);
        if (!arcs_ok)
            return "arm " + std::to_string(i) + " uses a missing arc";
        if (!all.insert(spoke).second)
            return "spoke reused";
        if (!all.insert(tip).second)
            return "tip reused";
    }
    return std::nullopt;
}

std::optional<Embedding> find_once_subdivided_star(const Digraph& d, int l, StarOrientation orientation) {
    if (l < 0)
        fail(ErrorKind::BadRequest, "negative star size");
    if (l == 0) {
        if (d.vertex_count() == 0)
            return std::nullopt;
        Embedding embedding;
        embedding.star_centers.push_back(0);
        embedding.star_out_leaves.push_back({});
        embedding.star_in_leaves.push_back({});
        return embedding;
    }
    for (VertexId v = 0; v < d.vertex_count(); ++v) {
        const auto& raw =
            orientation == StarOrientation::Out ? d.out_neighbors(v) : d.in_neighbors(v);
        VertexSet spokes_pool;
        for (VertexId s : raw)
            if (s != v)
                spokes_pool.insert(s);
        // Arcs one step beyond the neighborhood; the far endpoint may fall
        // back into the neighborhood but never onto v itself.
        std::vector<Edge> edges;
        for (const auto& [tail, head] : d.arcs()) {
            if (tail == head)
                continue;
            bool usable = orientation == StarOrientation::Out ? (spokes_pool.count(tail) && head != v)
                                                              : (spokes_pool.count(head) && tail != v);
            if (usable)
                edges.emplace_back(std::min(tail, head), std::max(tail, head));
        }
        auto matching = max_matching(d.vertex_count(), edges);
        if (static_cast<int>(matching.size()) < l)
            continue;
        Embedding embedding;
        embedding.star_centers.push_back(v);
        embedding.star_out_leaves.push_back({});
        embedding.star_in_leaves.push_back({});
        auto& spokes = orientation == StarOrientation::Out ? embedding.star_out_leaves[0]
                                                           : embedding.star_in_leaves[0];
        for (int i = 0; i < l; ++i) {
            auto [x, y] = matching[i];
            VertexId spoke, tip;
            if (orientation == StarOrientation::Out) {
                if (spokes_pool.count(x) && d.has_arc(x, y) && y != v) {
                    spoke = x;
                    tip = y;
                } else {
                    spoke = y;
                    tip = x;
                }
            } else {
                if (spokes_pool.count(x) && d.has_arc(y, x) && y != v) {
                    spoke = x;
                    tip = y;
                } else {
                    spoke = y;
                    tip = x;
                }
            }
            spokes.push_back(spoke);
            embedding.path_vertices.push_back({spoke, tip});
        }
        if (auto why = subdivided_star_violation(d, l, orientation, embedding))
            fail(ErrorKind::Internal, "assembled subdivided star is invalid: " + *why);
        return embedding;
    }
    return std::nullopt;
}

} // namespace sps
