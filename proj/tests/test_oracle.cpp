#include <doctest.h>

#include <random>

#include "sps/oracle.hpp"
#include "test_util.hpp"

using namespace sps;

namespace {

// dumb reference: enumerate every injective map recursively, no pruning
bool dumb_embeds(const Digraph& d, const Digraph& h, std::vector<VertexId>& image,
                 std::vector<char>& used, size_t next) {
    if (next == static_cast<size_t>(h.vertex_count())) {
        for (const auto& [u, v] : h.arcs())
            if (!d.has_arc(image[u], image[v]))
                return false;
        return true;
    }
    for (VertexId hv = 0; hv < d.vertex_count(); ++hv) {
        if (used[hv])
            continue;
        image[next] = hv;
        used[hv] = 1;
        if (dumb_embeds(d, h, image, used, next + 1))
            return true;
        used[hv] = 0;
    }
    return false;
}

bool dumb_embeds(const Digraph& d, const Digraph& h) {
    std::vector<VertexId> image(h.vertex_count(), -1);
    std::vector<char> used(d.vertex_count(), 0);
    return dumb_embeds(d, h, image, used, 0);
}

} // namespace

TEST_CASE("oracle basics") {
    auto arc = testutil::path_digraph(2);
    StarsPathsPattern single_arc;
    single_arc.stars = {{1, 0}};
    CHECK(oracle_find_pattern(arc, single_arc).has_value());

    // transitive tournament in an acyclically oriented K3
    auto tt3 = testutil::transitive_tournament(3);
    CHECK(oracle_find_pattern(tt3, testutil::transitive_tournament(3)).has_value());

    // antidirected path of 4 vertices is not in the directed path of 4
    auto anti4 = testutil::antidirected_path(4);
    CHECK(!oracle_find_pattern(testutil::path_digraph(4), anti4).has_value());
    CHECK(dumb_embeds(testutil::path_digraph(4), anti4) == false);
}

TEST_CASE("oracle rejects oversized patterns") {
    auto big = testutil::path_digraph(13);
    CHECK_THROWS_AS(oracle_find_pattern(testutil::path_digraph(13), big, 12), Error);
    CHECK(oracle_find_pattern(testutil::path_digraph(13), big, 13).has_value());
}

TEST_CASE("oracle respects roots") {
    auto path = testutil::path_digraph(3);
    StarsPathsPattern one_out;
    one_out.stars = {{1, 0}};
    one_out.roots = std::vector<VertexId>{1};
    auto hit = oracle_find_pattern(path, one_out);
    REQUIRE(hit.has_value());
    CHECK(hit->star_centers == std::vector<VertexId>{1});
    one_out.roots = std::vector<VertexId>{2};
    CHECK(!oracle_find_pattern(path, one_out).has_value());
}

TEST_CASE("found embeddings validate") {
    std::mt19937 rng(5);
    for (int round = 0; round < 60; ++round) {
        auto host = testutil::random_digraph(rng, 7, 0.3);
        StarsPathsPattern pattern;
        pattern.stars = {{static_cast<int>(rng() % 3), static_cast<int>(rng() % 2)},
                         {static_cast<int>(rng() % 2), 0}};
        if (rng() % 2)
            pattern.paths.push_back({0, 1, 2 + static_cast<int>(rng() % 2)});
        auto found = oracle_find_pattern(host, pattern);
        if (found)
            CHECK(embedding_violation(host, pattern, *found) == std::nullopt);
    }
}

TEST_CASE("oracle equals exhaustive enumeration on all hosts with 3 vertices") {
    auto hosts = testutil::all_digraphs(3);
    std::vector<Digraph> patterns{
        testutil::path_digraph(2),
        testutil::path_digraph(3),
        testutil::antidirected_path(3),
        testutil::transitive_tournament(3),
        testutil::cycle_digraph(3),
        Digraph::from_arc_list(3, {{0, 1}, {0, 2}}, false),
        Digraph::from_arc_list(3, {{1, 0}, {2, 0}}, false),
    };
    for (const auto& host : hosts)
        for (const auto& pattern : patterns)
            CHECK(oracle_find_pattern(host, pattern).has_value() == dumb_embeds(host, pattern));
}

TEST_CASE("oracle equals exhaustive enumeration on random hosts up to 6 vertices") {
    std::mt19937 rng(17);
    for (int round = 0; round < 120; ++round) {
        int n = 4 + static_cast<int>(rng() % 3);
        auto host = testutil::random_digraph(rng, n, 0.25);
        auto pattern = testutil::random_digraph(rng, 2 + static_cast<int>(rng() % 4), 0.35);
        CHECK(oracle_find_pattern(host, pattern).has_value() == dumb_embeds(host, pattern));
    }
}

TEST_CASE("oracle handles loops in host and pattern") {
    auto host = Digraph::from_arc_list(3, {{0, 0}, {0, 1}, {1, 2}}, true);
    auto looped = Digraph::from_arc_list(1, {{0, 0}}, true);
    auto hit = oracle_find_pattern(host, looped);
    REQUIRE(hit.has_value());
    CHECK((*hit)[0] == 0);
    auto plain = Digraph::from_arc_list(2, {{0, 0}, {0, 1}}, true);
    CHECK(oracle_find_pattern(host, plain).has_value());
    auto two_loops = Digraph::from_arc_list(2, {{0, 0}, {1, 1}}, true);
    CHECK(!oracle_find_pattern(host, two_loops).has_value());
}
