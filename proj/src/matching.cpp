#include "sps/matching.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace sps {

namespace {

// Classic array-based blossom algorithm: repeatedly grow alternating BFS
// forests, contracting odd cycles via base[] until an augmenting path shows
// up.
class Blossom {
public:
    Blossom(int n, const std::vector<Edge>& edges) : n_(n), adj_(n), match_(n, -1), parent_(n), base_(n) {
        std::set<Edge> dedup;
        for (auto [u, v] : edges) {
            if (u == v)
                continue;
            Edge e{std::min(u, v), std::max(u, v)};
            if (dedup.insert(e).second) {
                adj_[u].push_back(v);
                adj_[v].push_back(u);
            }
        }
    }

    std::vector<Edge> solve() {
        for (int v = 0; v < n_; ++v) {
            if (match_[v] != -1)
                continue;
            int u = find_augmenting_path(v);
            while (u != -1) {
                int pv = parent_[u];
                int ppv = match_[pv];
                match_[u] = pv;
                match_[pv] = u;
                u = ppv;
            }
        }
        std::vector<Edge> result;
        for (int v = 0; v < n_; ++v)
            if (match_[v] > v)
                result.emplace_back(v, match_[v]);
        std::sort(result.begin(), result.end());
        return result;
    }

private:
    int n_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_, parent_, base_;
    std::vector<char> used_, blossom_;

    int lowest_common_ancestor(int a, int b) {
        std::vector<char> seen(n_, 0);
        while (true) {
            a = base_[a];
            seen[a] = 1;
            if (match_[a] == -1)
                break;
            a = parent_[match_[a]];
        }
        while (true) {
            b = base_[b];
            if (seen[b])
                return b;
            b = parent_[match_[b]];
        }
    }

    void mark_path(int v, int b, int child, std::queue<int>& queue) {
        while (base_[v] != b) {
            blossom_[base_[v]] = 1;
            blossom_[base_[match_[v]]] = 1;
            parent_[v] = child;
            child = match_[v];
            if (!used_[match_[v]]) {
                used_[match_[v]] = 1;
                queue.push(match_[v]);
            }
            v = parent_[match_[v]];
        }
    }

    int find_augmenting_path(int root) {
        used_.assign(n_, 0);
        parent_.assign(n_, -1);
        for (int i = 0; i < n_; ++i)
            base_[i] = i;
        used_[root] = 1;
        std::queue<int> queue;
        queue.push(root);
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop();
            for (int to : adj_[v]) {
                if (base_[v] == base_[to] || match_[v] == to)
                    continue;
                if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
                    int cur_base = lowest_common_ancestor(v, to);
                    blossom_.assign(n_, 0);
                    mark_path(v, cur_base, to, queue);
                    mark_path(to, cur_base, v, queue);
                    for (int i = 0; i < n_; ++i) {
                        if (blossom_[base_[i]]) {
                            base_[i] = cur_base;
                            if (!used_[i]) {
                                used_[i] = 1;
                                queue.push(i);
                            }
                        }
                    }
                } else if (parent_[to] == -1) {
                    parent_[to] = v;
                    if (match_[to] == -1)
                        return to;
                    used_[match_[to]] = 1;
                    queue.push(match_[to]);
                }
            }
        }
        return -1;
    }
};

} // namespace

std::vector<Edge> max_matching(int n, const std::vector<Edge>& edges) {
    return Blossom(n, edges).solve();
}

} // namespace sps
