#ifndef SPS_DECOMPOSITION_HPP
#define SPS_DECOMPOSITION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sps/digraph.hpp"

namespace sps {

/// Rooted out-arborescence with one non-empty vertex bag per node and one
/// guard set per tree arc. Node ids are 0..node_count-1.
struct ArborealDecomposition {
    struct TreeEdge {
        int parent = -1;
        int child = -1;
        VertexSet guard;
    };

    int node_count = 0;
    int root = 0;
    std::vector<VertexSet> bags;    // indexed by node id
    std::vector<TreeEdge> edges;

    std::vector<int> children_of(int node) const;
    std::optional<int> parent_edge_index(int node) const;
    /// Union of bags in the subtree rooted at `node` (inclusive).
    VertexSet below(int node) const;
};

/// Walk witnessing a guardedness violation: starts and ends in S, avoids Z,
/// and visits at least one vertex outside S and Z.
struct GuardCertificate {
    std::vector<VertexId> walk;
};

struct GuardCheck {
    bool guarded = false;
    std::optional<GuardCertificate> certificate;
};

/// Z-guardedness of S in d: no directed walk in d minus Z starts and ends in
/// S while visiting a vertex outside S and Z. Throws OverlappingSets if S
/// and Z intersect.
GuardCheck is_guarded(const Digraph& d, const VertexSet& s, const VertexSet& z);

struct ValidationResult {
    bool ok = false;
    int width = -1;
    std::string issue;                         // empty when ok
    std::optional<int> violating_edge;          // index into edges
    std::optional<GuardCertificate> certificate;
};

/// Checks the partition property, tree shape, and the guard condition
/// (below-set minus guard must be guard-guarded) for every tree arc.
/// Width is max over nodes of |bag + incident guards| - 1.
ValidationResult validate(const Digraph& d, const ArborealDecomposition& dec);

/// Path-shaped decomposition along a topological order: singleton bags,
/// empty guards, width 0. Throws NotADag on cyclic input.
ArborealDecomposition dag_decomposition(const Digraph& d);

/// Exhaustive search over singleton-bag decompositions (all rooted labeled
/// tree shapes) with per-edge minimal guards of size <= budget. The result
/// is an upper bound on dtw(d), not necessarily tight. Throws TooLarge when
/// the digraph has more than 7 vertices.
std::optional<std::pair<int, ArborealDecomposition>> dtw_upper_small(const Digraph& d, int budget);

/// Maximum number of weak components of d[h_vertices intersect X] over all
/// w-guarded X. Exhaustive over (X, Z) pairs; throws TooLarge beyond 15
/// vertices.
int breakability(const Digraph& d, const VertexSet& h_vertices, int w);

} // namespace sps

#endif
