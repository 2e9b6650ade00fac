#include "sps/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <queue>

namespace sps {

std::vector<int> ArborealDecomposition::children_of(int node) const {
    std::vector<int> result;
    for (const auto& e : edges)
        if (e.parent == node)
            result.push_back(e.child);
    std::sort(result.begin(), result.end());
    return result;
}

std::optional<int> ArborealDecomposition::parent_edge_index(int node) const {
    for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i].child == node)
            return static_cast<int>(i);
    return std::nullopt;
}

VertexSet ArborealDecomposition::below(int node) const {
    VertexSet result;
    std::vector<int> stack{node};
    while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        result.insert(bags[cur].begin(), bags[cur].end());
        for (int child : children_of(cur))
            stack.push_back(child);
    }
    return result;
}

namespace {

std::vector<VertexId> bfs_path(const Digraph& d, const std::vector<char>& blocked, VertexId source,
                               const std::vector<char>& targets) {
    std::vector<int> parent(d.vertex_count(), -2);
    std::queue<VertexId> queue;
    parent[source] = -1;
    queue.push(source);
    while (!queue.empty()) {
        VertexId u = queue.front();
        queue.pop();
        if (targets[u]) {
            std::vector<VertexId> path;
            for (VertexId v = u; v != -1; v = parent[v])
                path.push_back(v);
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (VertexId v : d.out_neighbors(u)) {
            if (blocked[v] || parent[v] != -2)
                continue;
            parent[v] = u;
            queue.push(v);
        }
    }
    return {};
}

} // namespace

GuardCheck is_guarded(const Digraph& d, const VertexSet& s, const VertexSet& z) {
    std::vector<char> in_s(d.vertex_count(), 0), in_z(d.vertex_count(), 0);
    for (VertexId v : s) {
        d.check_vertex(v);
        in_s[v] = 1;
    }
    for (VertexId v : z) {
        d.check_vertex(v);
        if (in_s[v])
            fail(ErrorKind::OverlappingSets, "guard set intersects the guarded set at " + std::to_string(v));
        in_z[v] = 1;
    }
    // S is Z-guarded iff no vertex outside S and Z both is reachable from S
    // and reaches S in d minus Z.
    std::vector<VertexId> seeds(s.begin(), s.end());
    auto from_s = reach_from(d, seeds, in_z, false);
    auto to_s = reach_from(d, seeds, in_z, true);
    VertexId violator = -1;
    for (VertexId v = 0; v < d.vertex_count(); ++v) {
        if (!in_s[v] && !in_z[v] && from_s[v] && to_s[v]) {
            violator = v;
            break;
        }
    }
    if (violator == -1)
        return {true, std::nullopt};
    // Witness walk: a path from S to the violator, then onward back to S.
    std::vector<char> targets_violator(d.vertex_count(), 0);
    targets_violator[violator] = 1;
    std::vector<VertexId> walk;
    for (VertexId start : s) {
        if (in_z[start])
            continue;
        auto head = bfs_path(d, in_z, start, targets_violator);
        if (head.empty())
            continue;
        auto tail = bfs_path(d, in_z, violator, in_s);
        walk = head;
        walk.insert(walk.end(), tail.begin() + 1, tail.end());
        break;
    }
    return {false, GuardCertificate{walk}};
}

ValidationResult validate(const Digraph& d, const ArborealDecomposition& dec) {
    ValidationResult result;
    if (dec.node_count != static_cast<int>(dec.bags.size())) {
        result.issue = "bag list does not match node count";
        return result;
    }
    if (dec.node_count == 0) {
        if (d.vertex_count() != 0) {
            result.issue = "empty decomposition for a non-empty digraph";
            return result;
        }
        result.ok = true;
        result.width = 0;
        return result;
    }
    if (dec.root < 0 || dec.root >= dec.node_count) {
        result.issue = "root out of range";
        return result;
    }

    // Tree shape: every non-root node has exactly one parent, all nodes
    // reachable from the root.
    std::vector<int> parent_count(dec.node_count, 0);
    for (const auto& e : dec.edges) {
        if (e.parent < 0 || e.parent >= dec.node_count || e.child < 0 || e.child >= dec.node_count) {
            result.issue = "tree edge endpoint out of range";
            return result;
        }
        parent_count[e.child]++;
    }
    if (parent_count[dec.root] != 0) {
        result.issue = "root has a parent edge";
        return result;
    }
    for (int node = 0; node < dec.node_count; ++node) {
        if (node != dec.root && parent_count[node] != 1) {
            result.issue = "node " + std::to_string(node) + " does not have exactly one parent";
            return result;
        }
    }
    std::vector<char> seen(dec.node_count, 0);
    std::vector<int> stack{dec.root};
    seen[dec.root] = 1;
    int reached = 0;
    while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        ++reached;
        for (int child : dec.children_of(cur)) {
            if (!seen[child]) {
                seen[child] = 1;
                stack.push_back(child);
            }
        }
    }
    if (reached != dec.node_count) {
        result.issue = "tree is not connected";
        return result;
    }

    // Partition: bags non-empty, pairwise disjoint, covering V(d).
    std::vector<int> owner(d.vertex_count(), -1);
    for (int node = 0; node < dec.node_count; ++node) {
        if (dec.bags[node].empty()) {
            result.issue = "empty bag at node " + std::to_string(node);
            return result;
        }
        for (VertexId v : dec.bags[node]) {
            if (v < 0 || v >= d.vertex_count()) {
                result.issue = "bag vertex out of range";
                return result;
            }
            if (owner[v] != -1) {
                result.issue = "vertex " + std::to_string(v) + " appears in two bags";
                return result;
            }
            owner[v] = node;
        }
    }
    for (VertexId v = 0; v < d.vertex_count(); ++v) {
        if (owner[v] == -1) {
            result.issue = "vertex " + std::to_string(v) + " is in no bag";
            return result;
        }
    }
    for (const auto& e : dec.edges)
        for (VertexId v : e.guard)
            if (v < 0 || v >= d.vertex_count()) {
                result.issue = "guard vertex out of range";
                return result;
            }

    // Guard condition per tree arc: the below-set minus the guard must be
    // guarded by the guard.
    for (size_t i = 0; i < dec.edges.size(); ++i) {
        const auto& e = dec.edges[i];
        VertexSet below = dec.below(e.child);
        VertexSet s;
        std::set_difference(below.begin(), below.end(), e.guard.begin(), e.guard.end(),
                            std::inserter(s, s.end()));
        auto check = is_guarded(d, s, e.guard);
        if (!check.guarded) {
            result.issue = "guard violation on edge " + std::to_string(e.parent) + "->" + std::to_string(e.child);
            result.violating_edge = static_cast<int>(i);
            result.certificate = check.certificate;
            return result;
        }
    }

    int width = 0;
    for (int node = 0; node < dec.node_count; ++node) {
        VertexSet closure = dec.bags[node];
        for (const auto& e : dec.edges)
            if (e.parent == node || e.child == node)
                closure.insert(e.guard.begin(), e.guard.end());
        width = std::max(width, static_cast<int>(closure.size()) - 1);
    }
    result.ok = true;
    result.width = width;
    return result;
}

ArborealDecomposition dag_decomposition(const Digraph& d) {
    auto order = topological_order(d);
    ArborealDecomposition dec;
    dec.node_count = static_cast<int>(order.size());
    dec.root = 0;
    for (size_t i = 0; i < order.size(); ++i) {
        dec.bags.push_back({order[i]});
        if (i > 0)
            dec.edges.push_back({static_cast<int>(i) - 1, static_cast<int>(i), {}});
    }
    return dec;
}

namespace {

// Decodes a Pruefer sequence over n labeled nodes into tree adjacency.
std::vector<std::vector<int>> pruefer_tree(int n, const std::vector<int>& code) {
    std::vector<std::vector<int>> adj(n);
    std::vector<int> degree(n, 1);
    for (int v : code)
        degree[v]++;
    std::set<int> leaves;
    for (int v = 0; v < n; ++v)
        if (degree[v] == 1)
            leaves.insert(v);
    std::vector<int> remaining = code;
    for (int v : remaining) {
        int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        adj[leaf].push_back(v);
        adj[v].push_back(leaf);
        if (--degree[v] == 1)
            leaves.insert(v);
    }
    int a = *leaves.begin();
    int b = *std::next(leaves.begin());
    adj[a].push_back(b);
    adj[b].push_back(a);
    return adj;
}

// Smallest guard (by size, then lexicographic) making below minus guard
// guarded, restricted to sizes <= budget.
std::optional<VertexSet> minimal_guard(const Digraph& d, const VertexSet& below, int budget) {
    int n = d.vertex_count();
    std::vector<VertexId> all(n);
    for (int v = 0; v < n; ++v)
        all[v] = v;
    std::vector<VertexId> chosen;
    std::optional<VertexSet> found;
    auto try_guard = [&](const VertexSet& guard) {
        VertexSet s;
        std::set_difference(below.begin(), below.end(), guard.begin(), guard.end(),
                            std::inserter(s, s.end()));
        return is_guarded(d, s, guard).guarded;
    };
    std::function<bool(int, int)> pick = [&](int start, int need) {
        if (need == 0) {
            VertexSet guard(chosen.begin(), chosen.end());
            if (try_guard(guard)) {
                found = guard;
                return true;
            }
            return false;
        }
        for (int v = start; v < n; ++v) {
            chosen.push_back(v);
            if (pick(v + 1, need - 1))
                return true;
            chosen.pop_back();
        }
        return false;
    };
    for (int size = 0; size <= budget; ++size) {
        chosen.clear();
        if (pick(0, size))
            return found;
    }
    return std::nullopt;
}

} // namespace

std::optional<std::pair<int, ArborealDecomposition>> dtw_upper_small(const Digraph& d, int budget) {
    int n = d.vertex_count();
    if (n > 7)
        fail(ErrorKind::TooLarge, "dtw_upper_small handles at most 7 vertices");
    if (n == 0)
        return std::make_pair(0, ArborealDecomposition{});
    if (n == 1) {
        ArborealDecomposition dec;
        dec.node_count = 1;
        dec.root = 0;
        dec.bags = {{0}};
        return std::make_pair(0, dec);
    }

    std::optional<std::pair<int, ArborealDecomposition>> best;
    std::vector<int> code(std::max(0, n - 2), 0);
    bool more = true;
    while (more) {
        auto adj = pruefer_tree(n, code);
        for (int root = 0; root < n; ++root) {
            // Orient away from the root; node ids double as bag vertices.
            ArborealDecomposition dec;
            dec.node_count = n;
            dec.root = root;
            dec.bags.assign(n, {});
            for (int v = 0; v < n; ++v)
                dec.bags[v] = {v};
            std::vector<int> parent(n, -1);
            std::vector<int> stack{root};
            std::vector<char> seen(n, 0);
            seen[root] = 1;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int v : adj[u]) {
                    if (seen[v])
                        continue;
                    seen[v] = 1;
                    parent[v] = u;
                    stack.push_back(v);
                }
            }
            bool feasible = true;
            for (int v = 0; v < n && feasible; ++v) {
                if (parent[v] == -1)
                    continue;
                auto below = dec.below(v);
                auto guard = minimal_guard(d, below, budget);
                if (!guard) {
                    feasible = false;
                    break;
                }
                dec.edges.push_back({parent[v], v, *guard});
            }
            if (!feasible)
                continue;
            auto check = validate(d, dec);
            if (!check.ok)
                continue;
            if (!best || check.width < best->first)
                best = std::make_pair(check.width, dec);
        }
        // next Pruefer code
        more = false;
        for (int i = static_cast<int>(code.size()) - 1; i >= 0; --i) {
            if (++code[i] < n) {
                more = true;
                break;
            }
            code[i] = 0;
        }
    }
    return best;
}

namespace {

using Mask = std::uint64_t;

int count_weak_components(const std::vector<Mask>& undirected_adj, Mask members) {
    int count = 0;
    Mask left = members;
    while (left) {
        ++count;
        Mask comp = left & (~left + 1);  // lowest set bit
        while (true) {
            Mask grown = comp;
            Mask probe = comp;
            while (probe) {
                int v = std::countr_zero(probe);
                probe &= probe - 1;
                grown |= undirected_adj[v] & members;
            }
            if (grown == comp)
                break;
            comp = grown;
        }
        left &= ~comp;
    }
    return count;
}

} // namespace

int breakability(const Digraph& d, const VertexSet& h_vertices, int w) {
    int n = d.vertex_count();
    if (n > 15)
        fail(ErrorKind::TooLarge, "breakability enumeration handles at most 15 vertices");
    for (VertexId v : h_vertices)
        d.check_vertex(v);
    Mask h_mask = 0;
    for (VertexId v : h_vertices)
        h_mask |= Mask(1) << v;
    std::vector<Mask> undirected_adj(n, 0);
    for (const auto& [tail, head] : d.arcs()) {
        if (tail == head)
            continue;
        undirected_adj[tail] |= Mask(1) << head;
        undirected_adj[head] |= Mask(1) << tail;
    }

    int best = 0;
    std::vector<VertexId> z_members;
    auto evaluate_z = [&]() {
        Mask z_mask = 0;
        std::vector<char> z_blocked(n, 0);
        for (VertexId v : z_members) {
            z_mask |= Mask(1) << v;
            z_blocked[v] = 1;
        }
        // Per-vertex reachability closures in d minus Z, as bitmasks.
        std::vector<Mask> from(n, 0), to(n, 0);
        for (VertexId v = 0; v < n; ++v) {
            if (z_blocked[v])
                continue;
            auto fwd = reach_from(d, {v}, z_blocked, false);
            auto bwd = reach_from(d, {v}, z_blocked, true);
            for (VertexId u = 0; u < n; ++u) {
                if (fwd[u])
                    from[v] |= Mask(1) << u;
                if (bwd[u])
                    to[v] |= Mask(1) << u;
            }
        }
        Mask universe = (n == 64 ? ~Mask(0) : (Mask(1) << n) - 1) & ~z_mask;
        // Enumerate candidate sets X within the non-guard vertices.
        std::vector<VertexId> free_vertices;
        for (VertexId v = 0; v < n; ++v)
            if (universe & (Mask(1) << v))
                free_vertices.push_back(v);
        int m = static_cast<int>(free_vertices.size());
        for (Mask pick = 0; pick < (Mask(1) << m); ++pick) {
            Mask x_mask = 0;
            Mask probe = pick;
            while (probe) {
                int i = std::countr_zero(probe);
                probe &= probe - 1;
                x_mask |= Mask(1) << free_vertices[i];
            }
            Mask from_x = 0, to_x = 0;
            Mask bits = x_mask;
            while (bits) {
                int v = std::countr_zero(bits);
                bits &= bits - 1;
                from_x |= from[v];
                to_x |= to[v];
            }
            if (from_x & to_x & ~x_mask & ~z_mask)
                continue;  // some outside vertex lies on a returning walk
            int components = count_weak_components(undirected_adj, x_mask & h_mask);
            best = std::max(best, components);
        }
    };
    std::function<void(int, int)> choose_z = [&](int start, int left) {
        evaluate_z();
        if (left == 0)
            return;
        for (int v = start; v < n; ++v) {
            z_members.push_back(v);
            choose_z(v + 1, left - 1);
            z_members.pop_back();
        }
    };
    choose_z(0, w);
    return best;
}

} // namespace sps
