#include "sps/digraph.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace sps {

Digraph Digraph::from_arc_list(int n, const std::vector<Arc>& arcs, bool allow_loops) {
    if (n < 0)
        fail(ErrorKind::BadVertexId, "vertex count must be non-negative");
    Digraph d;
    d.n_ = n;
    d.allow_loops_ = allow_loops;
    d.out_adj_.assign(n, {});
    d.in_adj_.assign(n, {});
    std::set<Arc> seen;
    for (const auto& [tail, head] : arcs) {
        if (tail < 0 || tail >= n || head < 0 || head >= n)
            fail(ErrorKind::BadVertexId,
                 "arc (" + std::to_string(tail) + "," + std::to_string(head) + ") out of range for n=" + std::to_string(n));
        if (tail == head && !allow_loops)
            fail(ErrorKind::LoopForbidden, "loop at vertex " + std::to_string(tail));
        if (!seen.insert({tail, head}).second)
            fail(ErrorKind::DuplicateArc,
                 "duplicate arc (" + std::to_string(tail) + "," + std::to_string(head) + ")");
        d.arcs_.emplace_back(tail, head);
        d.out_adj_[tail].push_back(head);
        d.in_adj_[head].push_back(tail);
    }
    for (auto& adj : d.out_adj_)
        std::sort(adj.begin(), adj.end());
    for (auto& adj : d.in_adj_)
        std::sort(adj.begin(), adj.end());
    return d;
}

void Digraph::check_vertex(VertexId v) const {
    if (v < 0 || v >= n_)
        fail(ErrorKind::BadVertexId, "vertex " + std::to_string(v) + " out of range for n=" + std::to_string(n_));
}

const std::vector<VertexId>& Digraph::out_neighbors(VertexId v) const {
    check_vertex(v);
    return out_adj_[v];
}

const std::vector<VertexId>& Digraph::in_neighbors(VertexId v) const {
    check_vertex(v);
    return in_adj_[v];
}

bool Digraph::has_arc(VertexId tail, VertexId head) const {
    if (tail < 0 || tail >= n_ || head < 0 || head >= n_)
        return false;
    const auto& adj = out_adj_[tail];
    return std::binary_search(adj.begin(), adj.end(), head);
}

std::vector<Arc> Digraph::sorted_arcs() const {
    std::vector<Arc> sorted = arcs_;
    std::sort(sorted.begin(), sorted.end());
    return sorted;
}

Digraph Digraph::subdivide(Arc arc, int times) const {
    if (times < 1)
        fail(ErrorKind::ArcNotFound, "subdivision count must be >= 1");
    if (!has_arc(arc.first, arc.second))
        fail(ErrorKind::ArcNotFound,
             "arc (" + std::to_string(arc.first) + "," + std::to_string(arc.second) + ") not present");
    std::vector<Arc> arcs;
    arcs.reserve(arcs_.size() + times);
    for (const auto& a : arcs_)
        if (a != arc)
            arcs.push_back(a);
    VertexId prev = arc.first;
    for (int i = 0; i < times; ++i) {
        VertexId fresh = n_ + i;
        arcs.emplace_back(prev, fresh);
        prev = fresh;
    }
    arcs.emplace_back(prev, arc.second);
    return from_arc_list(n_ + times, arcs, allow_loops_);
}

std::vector<char> reach_from(const Digraph& d, const std::vector<VertexId>& seeds,
                             const std::vector<char>& forbidden, bool reverse) {
    std::vector<char> visited(d.vertex_count(), 0);
    std::queue<VertexId> queue;
    for (VertexId s : seeds) {
        if (forbidden[s] || visited[s])
            continue;
        visited[s] = 1;
        queue.push(s);
    }
    while (!queue.empty()) {
        VertexId u = queue.front();
        queue.pop();
        const auto& next = reverse ? d.in_neighbors(u) : d.out_neighbors(u);
        for (VertexId v : next) {
            if (forbidden[v] || visited[v])
                continue;
            visited[v] = 1;
            queue.push(v);
        }
    }
    return visited;
}

bool reachable(const Digraph& d, VertexId from, VertexId to, const VertexSet& forbidden) {
    d.check_vertex(from);
    d.check_vertex(to);
    std::vector<char> blocked(d.vertex_count(), 0);
    for (VertexId v : forbidden) {
        d.check_vertex(v);
        blocked[v] = 1;
    }
    if (blocked[from] || blocked[to])
        fail(ErrorKind::OverlappingSets, "reachable endpoints must avoid the forbidden set");
    if (from == to)
        return true;
    auto visited = reach_from(d, {from}, blocked);
    return visited[to] != 0;
}

std::vector<std::vector<VertexId>> weak_components(const Digraph& d, const VertexSet& restrict_to) {
    std::vector<char> in_set(d.vertex_count(), 0);
    for (VertexId v : restrict_to) {
        d.check_vertex(v);
        in_set[v] = 1;
    }
    std::vector<char> visited(d.vertex_count(), 0);
    std::vector<std::vector<VertexId>> components;
    for (VertexId start : restrict_to) {
        if (visited[start])
            continue;
        std::vector<VertexId> comp;
        std::queue<VertexId> queue;
        visited[start] = 1;
        queue.push(start);
        while (!queue.empty()) {
            VertexId u = queue.front();
            queue.pop();
            comp.push_back(u);
            for (const auto& next : {d.out_neighbors(u), d.in_neighbors(u)}) {
                for (VertexId v : next) {
                    if (!in_set[v] || visited[v])
                        continue;
                    visited[v] = 1;
                    queue.push(v);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

namespace {

struct TarjanState {
    const Digraph& d;
    int counter = 0;
    std::vector<int> index, low;
    std::vector<char> on_stack;
    std::vector<VertexId> stack;
    std::vector<std::vector<VertexId>> components;

    explicit TarjanState(const Digraph& d)
        : d(d), index(d.vertex_count(), -1), low(d.vertex_count(), 0), on_stack(d.vertex_count(), 0) {}

    // Iterative Tarjan; recursion would overflow on long paths.
    void run(VertexId root) {
        std::vector<std::pair<VertexId, size_t>> call_stack{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call_stack.empty()) {
            auto& [u, next_i] = call_stack.back();
            const auto& adj = d.out_neighbors(u);
            if (next_i < adj.size()) {
                VertexId v = adj[next_i++];
                if (index[v] == -1) {
                    index[v] = low[v] = counter++;
                    stack.push_back(v);
                    on_stack[v] = 1;
                    call_stack.emplace_back(v, 0);
                } else if (on_stack[v]) {
                    low[u] = std::min(low[u], index[v]);
                }
            } else {
                if (low[u] == index[u]) {
                    std::vector<VertexId> comp;
                    while (true) {
                        VertexId w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp.push_back(w);
                        if (w == u)
                            break;
                    }
                    std::sort(comp.begin(), comp.end());
                    components.push_back(std::move(comp));
                }
                VertexId finished = u;
                call_stack.pop_back();
                if (!call_stack.empty()) {
                    VertexId parent = call_stack.back().first;
                    low[parent] = std::min(low[parent], low[finished]);
                }
            }
        }
    }
};

} // namespace

std::vector<std::vector<VertexId>> strong_components(const Digraph& d) {
    TarjanState state(d);
    for (VertexId v = 0; v < d.vertex_count(); ++v)
        if (state.index[v] == -1)
            state.run(v);
    return state.components;
}

bool is_dag(const Digraph& d) {
    for (VertexId v = 0; v < d.vertex_count(); ++v)
        if (d.has_loop(v))
            return false;
    for (const auto& comp : strong_components(d))
        if (comp.size() > 1)
            return false;
    return true;
}

std::vector<VertexId> topological_order(const Digraph& d) {
    if (!is_dag(d))
        fail(ErrorKind::NotADag, "topological order requires a DAG");
    std::vector<int> remaining_in(d.vertex_count(), 0);
    for (VertexId v = 0; v < d.vertex_count(); ++v)
        remaining_in[v] = d.in_degree(v);
    std::set<VertexId> ready;
    for (VertexId v = 0; v < d.vertex_count(); ++v)
        if (remaining_in[v] == 0)
            ready.insert(v);
    std::vector<VertexId> order;
    while (!ready.empty()) {
        VertexId u = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(u);
        for (VertexId v : d.out_neighbors(u))
            if (--remaining_in[v] == 0)
                ready.insert(v);
    }
    return order;
}

} // namespace sps
