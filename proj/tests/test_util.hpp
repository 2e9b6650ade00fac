#ifndef TESTS_TEST_UTIL_HPP
#define TESTS_TEST_UTIL_HPP

#include <random>
#include <vector>

#include "sps/digraph.hpp"

namespace testutil {

inline sps::Digraph path_digraph(int n) {
    std::vector<sps::Arc> arcs;
    for (int i = 0; i + 1 < n; ++i)
        arcs.emplace_back(i, i + 1);
    return sps::Digraph::from_arc_list(n, arcs, false);
}

inline sps::Digraph cycle_digraph(int n) {
    std::vector<sps::Arc> arcs;
    for (int i = 0; i < n; ++i)
        arcs.emplace_back(i, (i + 1) % n);
    return sps::Digraph::from_arc_list(n, arcs, false);
}

inline sps::Digraph transitive_tournament(int n) {
    std::vector<sps::Arc> arcs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            arcs.emplace_back(i, j);
    return sps::Digraph::from_arc_list(n, arcs, false);
}

// u1 -> u2 <- u3 -> u4 <- u5 ... (forward arc first)
inline sps::Digraph antidirected_path(int n) {
    std::vector<sps::Arc> arcs;
    for (int i = 0; i + 1 < n; ++i) {
        if (i % 2 == 0)
            arcs.emplace_back(i, i + 1);
        else
            arcs.emplace_back(i + 1, i);
    }
    return sps::Digraph::from_arc_list(n, arcs, false);
}

inline sps::Digraph fig2_digraph() {
    std::vector<sps::Arc> arcs;
    for (auto [u, v] : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}, {1, 3}, {1, 4},
                                                        {2, 5}, {2, 6}, {3, 4}, {5, 6}}) {
        arcs.emplace_back(u, v);
        arcs.emplace_back(v, u);
    }
    return sps::Digraph::from_arc_list(7, arcs, false);
}

inline sps::Digraph random_digraph(std::mt19937& rng, int n, double arc_probability, bool allow_loops = false) {
    std::bernoulli_distribution flip(arc_probability);
    std::vector<sps::Arc> arcs;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v && !allow_loops)
                continue;
            if (flip(rng))
                arcs.emplace_back(u, v);
        }
    return sps::Digraph::from_arc_list(n, arcs, allow_loops);
}

inline sps::Digraph random_dag(std::mt19937& rng, int n, double arc_probability) {
    std::bernoulli_distribution flip(arc_probability);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i)
        order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<sps::Arc> arcs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (flip(rng))
                arcs.emplace_back(order[i], order[j]);
    return sps::Digraph::from_arc_list(n, arcs, false);
}

// all loop-free digraphs on n vertices, via the arc-subset counter
inline std::vector<sps::Digraph> all_digraphs(int n) {
    std::vector<sps::Arc> slots;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v)
                slots.emplace_back(u, v);
    std::vector<sps::Digraph> result;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << slots.size()); ++mask) {
        std::vector<sps::Arc> arcs;
        for (size_t i = 0; i < slots.size(); ++i)
            if (mask & (std::uint64_t(1) << i))
                arcs.push_back(slots[i]);
        result.push_back(sps::Digraph::from_arc_list(n, arcs, false));
    }
    return result;
}

} // namespace testutil

#endif
