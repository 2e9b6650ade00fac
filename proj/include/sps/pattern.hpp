#ifndef SPS_PATTERN_HPP
#define SPS_PATTERN_HPP

#include <optional>
#include <string>
#include <vector>

#include "sps/digraph.hpp"

namespace sps {

/// Target digraph given as k stars plus inter-center paths. A path entry with
/// from == to asks for a directed cycle through that center (vertex_count >= 3);
/// ordinary entries need vertex_count >= 2.
struct StarsPathsPattern {
    struct Star {
        int out_leaves = 0;
        int in_leaves = 0;
    };
    struct Path {
        int from = 0;
        int to = 0;
        int vertex_count = 0;
    };

    std::vector<Star> stars;
    std::vector<Path> paths;
    std::optional<std::vector<VertexId>> roots;

    int star_count() const { return static_cast<int>(stars.size()); }
    int path_count() const { return static_cast<int>(paths.size()); }

    /// Total vertices of the represented digraph H.
    int order() const;

    /// Throws on malformed patterns (empty, bad path lengths, bad roots).
    void check() const;
};

/// Role map for the digraph form of a pattern.
struct PatternDigraph {
    Digraph graph;
    std::vector<VertexId> center_vertex;              // star index -> pattern vertex
    std::vector<std::vector<VertexId>> out_leaf_vertex; // star index -> pattern vertices
    std::vector<std::vector<VertexId>> in_leaf_vertex;
    std::vector<std::vector<VertexId>> path_vertexes;   // path index -> full vertex sequence (closing arc implied for cycles)
};

PatternDigraph pattern_to_digraph(const StarsPathsPattern& pattern);

/// Witness for a stars-paths pattern inside a host.
struct Embedding {
    std::vector<VertexId> star_centers;
    std::vector<std::vector<VertexId>> star_out_leaves;
    std::vector<std::vector<VertexId>> star_in_leaves;
    /// Per path: full host vertex sequence including both endpoints; for a
    /// cycle request the closing arc back to the first vertex is implied.
    std::vector<std::vector<VertexId>> path_vertices;
};

/// Checks every structural invariant of an embedding: arcs exist, leaf and
/// path counts match, all pattern vertices map injectively, paths are
/// internally disjoint from everything else, roots are respected.
/// Returns an explanation for the first violated condition.
std::optional<std::string> embedding_violation(const Digraph& host, const StarsPathsPattern& pattern,
                                               const Embedding& embedding);

} // namespace sps

#endif
