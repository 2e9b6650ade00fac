#include "sps/reductions.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

namespace sps {

namespace {

void check_undirected(const UndirectedGraph& g) {
    std::set<Edge> seen;
    for (auto [u, v] : g.edges) {
        if (u < 0 || u >= g.n || v < 0 || v >= g.n)
            fail(ErrorKind::BadVertexId, "edge endpoint out of range");
        if (u == v)
            fail(ErrorKind::HasLoops, "undirected input has a loop");
        if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
            fail(ErrorKind::DuplicateArc, "duplicate undirected edge");
    }
}

} // namespace

Expansion expand(const Digraph& d) {
    for (VertexId v = 0; v < d.vertex_count(); ++v)
        if (d.has_loop(v))
            fail(ErrorKind::HasLoops, "expansion input must be loop-free");

    int n = d.vertex_count();
    std::vector<Arc> arcs;
    Expansion result;
    result.owner.resize(n);
    result.kind.assign(n, 0);
    std::iota(result.owner.begin(), result.owner.end(), 0);
    int next = n;
    auto fresh = [&](int owner, int kind) {
        result.owner.push_back(owner);
        result.kind.push_back(kind);
        return next++;
    };

    // Part one: replace each out-neighborhood by a minimal binary
    // out-arborescence; internal tree arcs are doubled, direct arcs to
    // originals are subdivided, and the two root children get a pair when
    // the root keeps out-degree two.
    for (VertexId u = 0; u < n; ++u) {
        std::vector<VertexId> leaves = d.out_neighbors(u);
        if (leaves.empty())
            continue;
        std::vector<Arc> tree_arcs;
        // returns the root of a subtree over leaves[lo..hi)
        std::function<VertexId(int, int)> build = [&](int lo, int hi) -> VertexId {
            if (hi - lo == 1)
                return leaves[lo];
            VertexId internal = fresh(u, 1);
            int mid = lo + (hi - lo + 1) / 2;
            tree_arcs.emplace_back(internal, build(lo, mid));
            tree_arcs.emplace_back(internal, build(mid, hi));
            return internal;
        };
        std::vector<VertexId> root_children;
        if (leaves.size() == 1) {
            root_children.push_back(leaves[0]);
        } else {
            int mid = (static_cast<int>(leaves.size()) + 1) / 2;
            root_children.push_back(build(0, mid));
            root_children.push_back(build(mid, static_cast<int>(leaves.size())));
        }
        // subdivide direct root-to-original arcs
        for (auto& child : root_children) {
            if (child < n) {
                VertexId s = fresh(u, 1);
                tree_arcs.emplace_back(s, child);
                child = s;
            }
            arcs.emplace_back(u, child);
        }
        // doubled arcs between internal vertices of this arborescence
        for (const auto& [tail, head] : tree_arcs) {
            arcs.emplace_back(tail, head);
            if (tail >= n && head >= n)
                arcs.emplace_back(head, tail);
        }
        if (root_children.size() == 2) {
            arcs.emplace_back(root_children[0], root_children[1]);
            arcs.emplace_back(root_children[1], root_children[0]);
        }
    }

    // Part two: originals with more than two in-neighbors get an
    // in-arborescence of type-2 internals; arcs between type-1 and type-2
    // stay single-direction.
    for (VertexId u = 0; u < n; ++u) {
        std::vector<VertexId> feeders;
        for (const auto& [tail, head] : arcs)
            if (head == u && tail != u)
                feeders.push_back(tail);
        std::sort(feeders.begin(), feeders.end());
        if (static_cast<int>(feeders.size()) <= 2)
            continue;
        std::vector<Arc> kept;
        for (const auto& a : arcs)
            if (!(a.second == u && a.first != u))
                kept.push_back(a);
        arcs = std::move(kept);
        std::vector<Arc> tree_arcs;
        std::function<VertexId(int, int)> build = [&](int lo, int hi) -> VertexId {
            if (hi - lo == 1)
                return feeders[lo];
            VertexId internal = fresh(u, 2);
            int mid = lo + (hi - lo + 1) / 2;
            tree_arcs.emplace_back(build(lo, mid), internal);
            tree_arcs.emplace_back(build(mid, hi), internal);
            return internal;
        };
        int mid = (static_cast<int>(feeders.size()) + 1) / 2;
        VertexId left = build(0, mid);
        VertexId right = build(mid, static_cast<int>(feeders.size()));
        arcs.emplace_back(left, u);
        arcs.emplace_back(right, u);
        for (const auto& [tail, head] : tree_arcs) {
            arcs.emplace_back(tail, head);
            if (result.kind[tail] == 2 && result.kind[head] == 2)
                arcs.emplace_back(head, tail);
        }
        if (result.kind[left] == 2 && result.kind[right] == 2) {
            arcs.emplace_back(left, right);
            arcs.emplace_back(right, left);
        }
    }

    for (VertexId v = 0; v < n; ++v)
        arcs.emplace_back(v, v);
    result.graph = Digraph::from_arc_list(next, arcs, true);
    return result;
}

namespace {

Digraph transitive_tournament(int k) {
    std::vector<Arc> arcs;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            arcs.emplace_back(i, j);
    return Digraph::from_arc_list(k, arcs, false);
}

void tag_expansion_roles(const Expansion& expansion, ReductionOutput& out) {
    for (VertexId v = 0; v < expansion.graph.vertex_count(); ++v) {
        switch (expansion.kind[v]) {
        case 0:
            out.roles[v] = "original";
            break;
        case 1:
            out.roles[v] = "internal-1";
            break;
        default:
            out.roles[v] = "internal-2";
            break;
        }
    }
}

} // namespace

ReductionOutput gen_clique_to_expansion(const UndirectedGraph& g, int k) {
    check_undirected(g);
    if (k < 1)
        fail(ErrorKind::BadRequest, "clique size must be positive");
    std::vector<Arc> arcs;
    for (auto [u, v] : g.edges)
        arcs.emplace_back(std::min(u, v), std::max(u, v));
    Digraph oriented = Digraph::from_arc_list(g.n, arcs, false);
    Expansion host = expand(oriented);
    Expansion target = expand(transitive_tournament(k));
    ReductionOutput out;
    out.host = host.graph;
    out.target_digraph = target.graph;
    out.expected_dtw_bound = 3;
    tag_expansion_roles(host, out);
    out.meta["k"] = k;
    out.meta["target_order"] = target.graph.vertex_count();
    return out;
}

ReductionOutput gen_antidirected(const UndirectedGraph& g, VertexId s, VertexId t,
                                 const std::vector<std::pair<int, int>>& pairs) {
    check_undirected(g);
    if (s < 0 || s >= g.n || t < 0 || t >= g.n || s == t)
        fail(ErrorKind::BadVertexId, "bad terminal pair");
    if (pairs.empty())
        fail(ErrorKind::BadPairs, "at least one edge pair is required");
    int m = static_cast<int>(g.edges.size());
    std::set<std::pair<int, int>> seen_pairs;
    std::vector<int> share_count(m, 0);
    for (auto [e, f] : pairs) {
        if (e < 0 || e >= m || f < 0 || f >= m || e == f)
            fail(ErrorKind::BadPairs, "edge pair indices must be distinct and in range");
        if (!seen_pairs.insert({std::min(e, f), std::max(e, f)}).second)
            fail(ErrorKind::BadPairs, "duplicate edge pair");
        share_count[e]++;
        share_count[f]++;
    }
    int k = *std::max_element(share_count.begin(), share_count.end());
    int length = 6 * k + 2;

    // Build with provisional ids, then merge identified vertices.
    int next = g.n;
    std::vector<std::vector<VertexId>> gadget(m);  // per edge: the full a_0..a_L sequence
    for (int e = 0; e < m; ++e) {
        auto [u, v] = g.edges[e];
        VertexId first = std::min(u, v), last = std::max(u, v);
        gadget[e].push_back(first);
        for (int j = 1; j < length; ++j)
            gadget[e].push_back(next++);
        gadget[e].push_back(last);
    }
    // usable internal indices 3j+1: sinks at even j, sources at odd j
    std::vector<std::vector<VertexId>> usable_sinks(m), usable_sources(m);
    for (int e = 0; e < m; ++e) {
        for (int j = 0; j <= 2 * k; ++j) {
            VertexId v = gadget[e][3 * j + 1];
            if (j % 2 == 0)
                usable_sinks[e].push_back(v);
            else
                usable_sources[e].push_back(v);
        }
    }
    std::vector<int> merged_into(next);
    std::iota(merged_into.begin(), merged_into.end(), 0);
    std::vector<size_t> sink_cursor(m, 0), source_cursor(m, 0);
    for (auto [e, f] : pairs) {
        if (sink_cursor[e] >= usable_sinks[e].size() || source_cursor[f] >= usable_sources[f].size())
            fail(ErrorKind::BadPairs, "ran out of usable vertices; too many pairs share an edge");
        VertexId sink = usable_sinks[e][sink_cursor[e]++];
        VertexId source = usable_sources[f][source_cursor[f]++];
        merged_into[source] = sink;
    }
    // compact ids
    std::vector<int> compact(next, -1);
    int final_count = 0;
    for (int v = 0; v < next; ++v)
        if (merged_into[v] == v)
            compact[v] = final_count++;
    auto resolve = [&](VertexId v) { return compact[merged_into[v]]; };

    std::set<Arc> arc_set;
    for (int e = 0; e < m; ++e) {
        for (int j = 0; j + 1 <= length; ++j) {
            VertexId a = gadget[e][j], b = gadget[e][j + 1];
            if (j % 2 == 0)
                arc_set.insert({resolve(a), resolve(b)});
            else
                arc_set.insert({resolve(b), resolve(a)});
        }
    }
    ReductionOutput out;
    out.host = Digraph::from_arc_list(final_count, std::vector<Arc>(arc_set.begin(), arc_set.end()), false);
    out.expected_dtw_bound = 0;
    out.meta["k"] = k;
    out.meta["segment_length"] = length;
    out.meta["s"] = resolve(s);
    out.meta["t"] = resolve(t);
    for (int v = 0; v < g.n; ++v)
        out.roles[resolve(v)] = "original";
    for (int e = 0; e < m; ++e)
        for (int j = 1; j < length; ++j) {
            VertexId v = resolve(gadget[e][j]);
            if (out.roles.count(v) && out.roles[v] != "internal")
                out.roles[v] = "identified";
            else if (out.roles.count(v))
                out.roles[v] = "identified";
            else
                out.roles[v] = "internal";
        }
    // representative target: one gadget-length antidirected path
    std::vector<Arc> target_arcs;
    for (int j = 0; j < length; ++j) {
        if (j % 2 == 0)
            target_arcs.emplace_back(j, j + 1);
        else
            target_arcs.emplace_back(j + 1, j);
    }
    out.target_digraph = Digraph::from_arc_list(length + 1, target_arcs, false);
    return out;
}

namespace {

void check_bipartite_instance(const BipartiteInstance& g) {
    std::set<Edge> seen;
    std::vector<int> deg1(g.n1, 0), deg2(g.n2, 0);
    for (auto [u, v] : g.edges) {
        if (u < 0 || u >= g.n1 || v < 0 || v >= g.n2)
            fail(ErrorKind::BadVertexId, "bipartite edge endpoint out of range");
        if (!seen.insert({u, v}).second)
            fail(ErrorKind::DuplicateArc, "duplicate bipartite edge");
        if (++deg1[u] > 3 || ++deg2[v] > 3)
            fail(ErrorKind::BadPartition, "maximum degree three exceeded");
    }
    if (g.n1 != g.n2)
        fail(ErrorKind::BadPartition, "sides must have equal size");
    auto check_parts = [](const std::vector<std::vector<int>>& parts, int n, const char* side) {
        std::vector<char> covered(n, 0);
        for (const auto& part : parts) {
            if (part.empty() || part.size() > 2)
                fail(ErrorKind::BadPartition, std::string(side) + " part sizes must be 1 or 2");
            for (int v : part) {
                if (v < 0 || v >= n || covered[v])
                    fail(ErrorKind::BadPartition, std::string(side) + " parts must partition the side");
                covered[v] = 1;
            }
        }
        for (int v = 0; v < n; ++v)
            if (!covered[v])
                fail(ErrorKind::BadPartition, std::string(side) + " parts must cover the side");
    };
    check_parts(g.parts1, g.n1, "left");
    check_parts(g.parts2, g.n2, "right");
}

struct MatchingHost {
    std::vector<Arc> arcs;
    int next = 0;
    std::vector<VertexId> edge_selector;  // c(e) per edge
    std::vector<VertexId> f_vertices;
    std::vector<VertexId> spare;          // the v' vertices
    int kprime = 0;
};

// Shared first stage of the matching reductions: orientation, c(e)
// selectors, and the per-part-pair F gadget.
MatchingHost build_matching_host(const BipartiteInstance& g) {
    MatchingHost host;
    host.next = g.n1 + g.n2;
    auto right_id = [&](int v) { return g.n1 + v; };
    for (auto [u, v] : g.edges)
        host.arcs.emplace_back(u, right_id(v));
    for (size_t e = 0; e < g.edges.size(); ++e) {
        VertexId c = host.next++;
        host.edge_selector.push_back(c);
        host.arcs.emplace_back(c, g.edges[e].first);
        host.arcs.emplace_back(c, right_id(g.edges[e].second));
    }
    for (const auto& part1 : g.parts1) {
        for (const auto& part2 : g.parts2) {
            std::vector<int> between;
            for (size_t e = 0; e < g.edges.size(); ++e) {
                bool left_in = std::find(part1.begin(), part1.end(), g.edges[e].first) != part1.end();
                bool right_in = std::find(part2.begin(), part2.end(), g.edges[e].second) != part2.end();
                if (left_in && right_in)
                    between.push_back(static_cast<int>(e));
            }
            if (between.size() <= 1)
                continue;
            if (between.size() == 2) {
                VertexId v = host.next++;
                VertexId spare = host.next++;
                host.f_vertices.push_back(v);
                host.spare.push_back(spare);
                host.arcs.emplace_back(v, host.edge_selector[between[0]]);
                host.arcs.emplace_back(v, host.edge_selector[between[1]]);
                host.arcs.emplace_back(v, spare);
                host.kprime += 1;
            } else if (between.size() == 3) {
                VertexId v = host.next++;
                host.f_vertices.push_back(v);
                for (int e : between)
                    host.arcs.emplace_back(v, host.edge_selector[e]);
                host.kprime += 1;
            } else {
                VertexId v1 = host.next++;
                VertexId v2 = host.next++;
                VertexId spare = host.next++;
                host.f_vertices.push_back(v1);
                host.f_vertices.push_back(v2);
                host.spare.push_back(spare);
                for (VertexId v : {v1, v2}) {
                    for (int e : between)
                        host.arcs.emplace_back(v, host.edge_selector[e]);
                    host.arcs.emplace_back(v, spare);
                }
                host.kprime += 2;
            }
        }
    }
    return host;
}

void tag_matching_roles(const BipartiteInstance& g, const MatchingHost& host, ReductionOutput& out) {
    for (int v = 0; v < g.n1; ++v)
        out.roles[v] = "left";
    for (int v = 0; v < g.n2; ++v)
        out.roles[g.n1 + v] = "right";
    for (VertexId c : host.edge_selector)
        out.roles[c] = "selector";
    for (VertexId v : host.f_vertices)
        out.roles[v] = "F";
    for (VertexId v : host.spare)
        out.roles[v] = "spare";
}

} // namespace

ReductionOutput gen_matching_to_stars(const BipartiteInstance& g) {
    check_bipartite_instance(g);
    MatchingHost host = build_matching_host(g);
    ReductionOutput out;
    out.host = Digraph::from_arc_list(host.next, host.arcs, false);
    StarsPathsPattern pattern;
    pattern.stars.assign(g.n1 + host.kprime, {2, 0});
    out.target_pattern = pattern;
    out.expected_dtw_bound = 0;
    out.meta["kprime"] = host.kprime;
    out.meta["stars"] = g.n1 + host.kprime;
    tag_matching_roles(g, host, out);
    return out;
}

ReductionOutput gen_matching_to_stars_plus_bigstar(const BipartiteInstance& g) {
    check_bipartite_instance(g);
    MatchingHost host = build_matching_host(g);
    VertexId hub = host.next++;
    for (VertexId c : host.edge_selector)
        host.arcs.emplace_back(c, hub);
    for (VertexId v : host.f_vertices)
        host.arcs.emplace_back(v, hub);
    ReductionOutput out;
    out.host = Digraph::from_arc_list(host.next, host.arcs, false);
    out.expected_dtw_bound = 0;
    int k = g.n1 + host.kprime;
    // target: k 2-out-stars whose centers all feed one k-in-star
    std::vector<Arc> target_arcs;
    int next = 0;
    VertexId big = next++;
    for (int i = 0; i < k; ++i) {
        VertexId center = next++;
        target_arcs.emplace_back(center, big);
        target_arcs.emplace_back(center, next++);
        target_arcs.emplace_back(center, next++);
    }
    out.target_digraph = Digraph::from_arc_list(next, target_arcs, false);
    out.meta["kprime"] = host.kprime;
    out.meta["stars"] = k;
    tag_matching_roles(g, host, out);
    out.roles[hub] = "hub";
    return out;
}

Digraph subdivided_out_star(int l, int times) {
    if (l < 0 || times < 0)
        fail(ErrorKind::BadRequest, "negative star parameters");
    std::vector<Arc> arcs;
    int next = 1;
    for (int arm = 0; arm < l; ++arm) {
        VertexId prev = 0;
        for (int j = 0; j <= times; ++j) {
            arcs.emplace_back(prev, next);
            prev = next++;
        }
    }
    return Digraph::from_arc_list(next, arcs, false);
}

ReductionOutput gen_sat22(const Sat22Formula& formula) {
    int n = formula.variable_count;
    std::vector<int> positive(n, 0), negative(n, 0);
    for (const auto& clause : formula.clauses) {
        if (clause.size() != 3)
            fail(ErrorKind::NotTwoTwo, "clauses must have exactly three literals");
        for (const auto& lit : clause) {
            if (lit.variable < 0 || lit.variable >= n)
                fail(ErrorKind::NotTwoTwo, "literal variable out of range");
            (lit.negated ? negative : positive)[lit.variable]++;
        }
    }
    for (int v = 0; v < n; ++v)
        if (positive[v] != 2 || negative[v] != 2)
            fail(ErrorKind::NotTwoTwo, "every literal must occur exactly twice");
    int m = static_cast<int>(formula.clauses.size());

    ReductionOutput out;
    std::vector<Arc> arcs;
    int next = 0;
    VertexId selector = next++;
    out.roles[selector] = "selector";
    std::vector<VertexId> variable_center(n);
    std::vector<std::vector<VertexId>> pos_chain(n), neg_chain(n);
    for (int v = 0; v < n; ++v) {
        variable_center[v] = next++;
        out.roles[variable_center[v]] = "variable";
        arcs.emplace_back(selector, variable_center[v]);
        pos_chain[v] = {next, next + 1};
        next += 2;
        neg_chain[v] = {next, next + 1};
        next += 2;
        arcs.emplace_back(variable_center[v], pos_chain[v][0]);
        arcs.emplace_back(pos_chain[v][0], pos_chain[v][1]);
        arcs.emplace_back(variable_center[v], neg_chain[v][0]);
        arcs.emplace_back(neg_chain[v][0], neg_chain[v][1]);
        out.roles[pos_chain[v][0]] = "occ-pos-1";
        out.roles[pos_chain[v][1]] = "occ-pos-2";
        out.roles[neg_chain[v][0]] = "occ-neg-1";
        out.roles[neg_chain[v][1]] = "occ-neg-2";
    }
    VertexId verifier = next++;
    out.roles[verifier] = "verifier";
    std::vector<VertexId> clause_vertex(m);
    for (int c = 0; c < m; ++c) {
        clause_vertex[c] = next++;
        out.roles[clause_vertex[c]] = "clause";
        arcs.emplace_back(verifier, clause_vertex[c]);
    }
    // occurrence wiring: the first clause containing a literal points at the
    // first chain vertex, the second clause at the second
    std::vector<int> pos_seen(n, 0), neg_seen(n, 0);
    for (int c = 0; c < m; ++c) {
        for (const auto& lit : formula.clauses[c]) {
            if (lit.negated)
                arcs.emplace_back(clause_vertex[c], neg_chain[lit.variable][neg_seen[lit.variable]++]);
            else
                arcs.emplace_back(clause_vertex[c], pos_chain[lit.variable][pos_seen[lit.variable]++]);
        }
    }
    out.host = Digraph::from_arc_list(next, arcs, false);
    out.expected_dtw_bound = 0;

    // target: 2-subdivided n-out-star plus 1-subdivided m-out-star
    Digraph s1 = subdivided_out_star(n, 2);
    Digraph s2 = subdivided_out_star(m, 1);
    std::vector<Arc> target_arcs = s1.arcs();
    int offset = s1.vertex_count();
    for (auto [a, b] : s2.arcs())
        target_arcs.emplace_back(a + offset, b + offset);
    out.target_digraph = Digraph::from_arc_list(s1.vertex_count() + s2.vertex_count(), target_arcs, false);
    out.meta["variables"] = n;
    out.meta["clauses"] = m;
    return out;
}

ReductionOutput gen_caterpillar(const BipartiteInstance& g) {
    check_bipartite_instance(g);
    int m = static_cast<int>(g.edges.size());
    if (m <= g.n1)
        fail(ErrorKind::TooFewEdges, "need more edges than left vertices");
    MatchingHost host = build_matching_host(g);

    // subdivided transitive tournament over the c(e) vertices
    std::vector<VertexId> connectors;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            VertexId u = host.next++;
            connectors.push_back(u);
            host.arcs.emplace_back(host.edge_selector[i], u);
            host.arcs.emplace_back(u, host.edge_selector[j]);
        }
    }
    VertexId hub = host.next++;
    for (VertexId c : host.edge_selector)
        host.arcs.emplace_back(c, hub);
    for (VertexId u : connectors)
        host.arcs.emplace_back(hub, u);

    ReductionOutput out;
    out.host = Digraph::from_arc_list(host.next, host.arcs, false);
    out.expected_dtw_bound = 1;
    tag_matching_roles(g, host, out);
    for (VertexId u : connectors)
        out.roles[u] = "connector";
    out.roles[hub] = "hub";

    // Target: a caterpillar whose spine alternates branching vertices (two
    // out-leaves each) with plain spine vertices, ending in the big star,
    // plus the k' gadget stars. The big star takes every connector the spine
    // leaves unused, so the branchings are forced onto proper edge
    // selectors.
    int spine_x = 2 * g.n1 - 1;
    int big_leaves = m * (m - 1) / 2 - g.n1 + 1;
    std::vector<Arc> target_arcs;
    int next = 0;
    std::vector<VertexId> spine;
    for (int i = 0; i < spine_x; ++i)
        spine.push_back(next++);
    VertexId big = next++;
    for (int i = 0; i + 1 < spine_x; ++i)
        target_arcs.emplace_back(spine[i], spine[i + 1]);
    target_arcs.emplace_back(spine.back(), big);
    for (int i = 0; i < spine_x; i += 2) {
        target_arcs.emplace_back(spine[i], next++);
        target_arcs.emplace_back(spine[i], next++);
    }
    for (int i = 0; i < big_leaves; ++i)
        target_arcs.emplace_back(big, next++);
    for (int i = 0; i < host.kprime; ++i) {
        VertexId center = next++;
        target_arcs.emplace_back(center, next++);
        target_arcs.emplace_back(center, next++);
    }
    out.target_digraph = Digraph::from_arc_list(next, target_arcs, false);
    out.meta["kprime"] = host.kprime;
    out.meta["spine_vertices"] = spine_x + 1;
    out.meta["big_star_leaves"] = big_leaves;
    return out;
}

} // namespace sps
