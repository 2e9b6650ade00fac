#include <doctest.h>

#include <algorithm>

#include "sps/digraph.hpp"
#include "test_util.hpp"

using namespace sps;

namespace {

// independent recursive DFS used to cross-check reachable()
bool dfs_reachable(const Digraph& d, VertexId from, VertexId to, const VertexSet& forbidden,
                   std::vector<char>& visited) {
    if (from == to)
        return true;
    visited[from] = 1;
    for (VertexId next : d.out_neighbors(from)) {
        if (visited[next] || forbidden.count(next))
            continue;
        if (dfs_reachable(d, next, to, forbidden, visited))
            return true;
    }
    return false;
}

bool dfs_reachable(const Digraph& d, VertexId from, VertexId to, const VertexSet& forbidden) {
    std::vector<char> visited(d.vertex_count(), 0);
    return dfs_reachable(d, from, to, forbidden, visited);
}

std::vector<std::vector<VertexId>> undirected_components(const Digraph& d, const VertexSet& restrict_to) {
    std::vector<std::vector<VertexId>> components;
    VertexSet left = restrict_to;
    while (!left.empty()) {
        std::vector<VertexId> stack{*left.begin()};
        std::vector<VertexId> comp;
        left.erase(left.begin());
        while (!stack.empty()) {
            VertexId u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (const auto& [x, y] : d.arcs()) {
                VertexId other = -1;
                if (x == u && left.count(y))
                    other = y;
                else if (y == u && left.count(x))
                    other = x;
                if (other != -1) {
                    left.erase(other);
                    stack.push_back(other);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(comp);
    }
    std::sort(components.begin(), components.end());
    return components;
}

} // namespace

TEST_CASE("from_arc_list basics") {
    auto d = Digraph::from_arc_list(3, {{0, 1}, {1, 2}}, false);
    CHECK(d.vertex_count() == 3);
    CHECK(d.arc_count() == 2);
    CHECK(d.has_arc(0, 1));
    CHECK(!d.has_arc(1, 0));
    CHECK(d.out_degree(0) == 1);
    CHECK(d.in_degree(2) == 1);

    auto fig2 = testutil::fig2_digraph();
    CHECK(fig2.vertex_count() == 7);
    CHECK(fig2.arc_count() == 18);

    CHECK_THROWS_AS(Digraph::from_arc_list(2, {{0, 1}, {0, 1}}, false), Error);
    CHECK_THROWS_AS(Digraph::from_arc_list(2, {{0, 0}}, false), Error);
    CHECK_THROWS_AS(Digraph::from_arc_list(2, {{0, 2}}, false), Error);
    CHECK_NOTHROW(Digraph::from_arc_list(2, {{0, 0}}, true));
}

TEST_CASE("degree sums match arc count") {
    std::mt19937 rng(7);
    for (int round = 0; round < 20; ++round) {
        auto d = testutil::random_digraph(rng, 6, 0.3);
        int out_sum = 0;
        for (VertexId v = 0; v < d.vertex_count(); ++v) {
            out_sum += d.out_degree(v);
            CHECK(static_cast<int>(d.out_neighbors(v).size()) == d.out_degree(v));
        }
        CHECK(out_sum == d.arc_count());
    }
}

TEST_CASE("reachable") {
    auto path = testutil::path_digraph(3);
    CHECK(reachable(path, 0, 2, {}));
    CHECK(!reachable(path, 0, 2, {1}));

    auto fig2 = testutil::fig2_digraph();
    // every way from d back to a passes through b or c
    CHECK(!reachable(fig2, 3, 0, {1, 2}));
    CHECK(reachable(fig2, 3, 0, {}));

    CHECK_THROWS_AS(reachable(path, 0, 2, {0}), Error);
}

TEST_CASE("reachable agrees with an independent DFS") {
    std::mt19937 rng(11);
    for (int round = 0; round < 40; ++round) {
        auto d = testutil::random_digraph(rng, 5, 0.3);
        for (VertexId u = 0; u < 5; ++u) {
            for (VertexId v = 0; v < 5; ++v) {
                for (VertexId f = 0; f < 5; ++f) {
                    if (f == u || f == v)
                        continue;
                    VertexSet forbidden{f};
                    CHECK(reachable(d, u, v, forbidden) == dfs_reachable(d, u, v, forbidden));
                }
            }
        }
    }
}

TEST_CASE("weak components") {
    auto any = testutil::path_digraph(4);
    CHECK(weak_components(any, {}).empty());

    auto anti = testutil::antidirected_path(5);
    auto comps = weak_components(anti, {0, 2, 4});
    CHECK(comps.size() == 3);

    auto fig2 = testutil::fig2_digraph();
    auto fig_comps = weak_components(fig2, {3, 4, 5, 6});
    std::sort(fig_comps.begin(), fig_comps.end());
    CHECK(fig_comps == std::vector<std::vector<VertexId>>{{3, 4}, {5, 6}});
}

TEST_CASE("weak components agree with undirected flood fill") {
    std::mt19937 rng(13);
    for (int round = 0; round < 30; ++round) {
        auto d = testutil::random_digraph(rng, 6, 0.2);
        VertexSet restrict_to;
        for (VertexId v = 0; v < 6; ++v)
            if (rng() % 2)
                restrict_to.insert(v);
        auto got = weak_components(d, restrict_to);
        std::sort(got.begin(), got.end());
        CHECK(got == undirected_components(d, restrict_to));
    }
}

TEST_CASE("strong components, is_dag, topological order") {
    auto path = testutil::path_digraph(3);
    CHECK(is_dag(path));
    CHECK(topological_order(path) == std::vector<VertexId>{0, 1, 2});

    auto triangle = testutil::cycle_digraph(3);
    CHECK(!is_dag(triangle));
    auto sccs = strong_components(triangle);
    CHECK(sccs.size() == 1);
    CHECK(sccs[0].size() == 3);
    CHECK_THROWS_AS(topological_order(triangle), Error);

    auto looped = Digraph::from_arc_list(1, {{0, 0}}, true);
    CHECK(!is_dag(looped));
}

TEST_CASE("subdivide") {
    auto arc = Digraph::from_arc_list(2, {{0, 1}}, false);
    auto once = arc.subdivide({0, 1}, 1);
    CHECK(once.vertex_count() == 3);
    CHECK(once.has_arc(0, 2));
    CHECK(once.has_arc(2, 1));
    CHECK(!once.has_arc(0, 1));

    auto twice = arc.subdivide({0, 1}, 2);
    CHECK(twice.vertex_count() == 4);
    CHECK(twice.has_arc(0, 2));
    CHECK(twice.has_arc(2, 3));
    CHECK(twice.has_arc(3, 1));

    auto star = Digraph::from_arc_list(3, {{0, 1}, {0, 2}}, false);
    auto sub = star.subdivide({0, 1}, 1).subdivide({0, 2}, 1);
    CHECK(sub.vertex_count() == 5);
    CHECK(sub.out_degree(0) == 2);
    CHECK(sub.has_arc(3, 1));
    CHECK(sub.has_arc(4, 2));

    CHECK_THROWS_AS(arc.subdivide({1, 0}, 1), Error);
}
