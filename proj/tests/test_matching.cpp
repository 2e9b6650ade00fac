#include <doctest.h>

#include <random>

#include "sps/matching.hpp"

using namespace sps;

namespace {

bool valid_matching(const std::vector<Edge>& matching) {
    std::set<int> touched;
    for (auto [u, v] : matching) {
        if (!touched.insert(u).second || !touched.insert(v).second)
            return false;
    }
    return true;
}

// brute force over all edge subsets
int best_matching_size(int n, const std::vector<Edge>& edges) {
    (void)n;
    int best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << edges.size()); ++mask) {
        std::vector<Edge> subset;
        for (size_t i = 0; i < edges.size(); ++i)
            if (mask & (std::uint64_t(1) << i))
                subset.push_back(edges[i]);
        if (valid_matching(subset))
            best = std::max(best, static_cast<int>(subset.size()));
    }
    return best;
}

} // namespace

TEST_CASE("max matching small cases") {
    CHECK(max_matching(0, {}).empty());
    CHECK(max_matching(3, {{0, 1}, {1, 2}}).size() == 1);
    // C6
    std::vector<Edge> c6{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}};
    CHECK(max_matching(6, c6).size() == 3);
    // odd cycle forces a blossom
    std::vector<Edge> c5{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
    CHECK(max_matching(5, c5).size() == 2);
    // blossom with a stem
    std::vector<Edge> flower{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 1}, {3, 5}};
    auto got = max_matching(6, flower);
    CHECK(valid_matching(got));
    CHECK(got.size() == 3);
}

TEST_CASE("max matching equals brute force on every graph with up to 10 edges") {
    std::mt19937 rng(23);
    for (int round = 0; round < 200; ++round) {
        int n = 3 + static_cast<int>(rng() % 6);
        std::vector<Edge> all;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                all.emplace_back(u, v);
        std::shuffle(all.begin(), all.end(), rng);
        size_t keep = rng() % std::min<size_t>(all.size() + 1, 11);
        std::vector<Edge> edges(all.begin(), all.begin() + keep);
        auto got = max_matching(n, edges);
        CHECK(valid_matching(got));
        CHECK(static_cast<int>(got.size()) == best_matching_size(n, edges));
    }
}
