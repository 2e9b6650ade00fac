#ifndef SPS_REDUCTIONS_HPP
#define SPS_REDUCTIONS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sps/digraph.hpp"
#include "sps/pattern.hpp"
#include "sps/star_system.hpp"

namespace sps {

struct UndirectedGraph {
    int n = 0;
    std::vector<Edge> edges;
};

/// Bipartite graph with partitions of both sides into parts; vertices are
/// 0..n1-1 on the left and 0..n2-1 on the right.
struct BipartiteInstance {
    int n1 = 0;
    int n2 = 0;
    std::vector<Edge> edges;              // (left, right)
    std::vector<std::vector<int>> parts1;
    std::vector<std::vector<int>> parts2;
};

struct Sat22Formula {
    struct Literal {
        int variable = 0;
        bool negated = false;
    };
    int variable_count = 0;
    std::vector<std::vector<Literal>> clauses;  // each of size 3
};

/// Vertex roles: original / internal-1 / internal-2 for expansions, plus
/// generator-specific tags (selector, verifier, F, connector, hub, ...).
struct ReductionOutput {
    Digraph host;
    std::optional<StarsPathsPattern> target_pattern;
    std::optional<Digraph> target_digraph;
    int expected_dtw_bound = 0;
    std::map<VertexId, std::string> roles;
    std::map<std::string, int> meta;
};

struct Expansion {
    Digraph graph;
    std::vector<int> owner;  // vertex -> original vertex it descends from
    std::vector<int> kind;   // 0 original, 1 type-1 internal, 2 type-2 internal
};

/// Degree-bounding expansion: out-arborescences with doubled internal arcs
/// and sibling pairs, subdivision of root-to-original arcs, loops on
/// originals, then in-arborescences (type-2) for originals of in-degree
/// above two, never pairing type-1 with type-2. Throws HasLoops.
Expansion expand(const Digraph& d);

/// Clique via expansions: orient the graph along the vertex order, expand;
/// target is the expansion of the transitive tournament on k vertices.
ReductionOutput gen_clique_to_expansion(const UndirectedGraph& g, int k);

/// Antidirected-path hardness host: one long antidirected gadget per edge,
/// with usable sinks and sources identified along the given edge pairs.
/// `pairs` are ordered (sink-side edge, source-side edge) index pairs.
ReductionOutput gen_antidirected(const UndirectedGraph& g, VertexId s, VertexId t,
                                 const std::vector<std::pair<int, int>>& pairs);

/// Consistent-matching hardness: c(e) selectors plus the F gadget per pair
/// of parts; target is |V1| + k' disjoint 2-out-stars.
ReductionOutput gen_matching_to_stars(const BipartiteInstance& g);

/// Same host plus a hub collecting every c(e) and F vertex; the target adds
/// a big in-star over all star centers.
ReductionOutput gen_matching_to_stars_plus_bigstar(const BipartiteInstance& g);

/// 3-SAT-(2,2) to two subdivided stars: the variable selector s, the clause
/// verifier c, and the occurrence wiring.
ReductionOutput gen_sat22(const Sat22Formula& formula);

/// Caterpillar variant of the matching reduction: c(e) vertices form a
/// subdivided transitive tournament, all cycles routed through the hub r.
ReductionOutput gen_caterpillar(const BipartiteInstance& g);

/// l-out-star with every arc subdivided `times` times, as a digraph.
Digraph subdivided_out_star(int l, int times);

} // namespace sps

#endif
