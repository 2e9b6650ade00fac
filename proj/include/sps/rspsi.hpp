#ifndef SPS_RSPSI_HPP
#define SPS_RSPSI_HPP

#include <optional>

#include "sps/decomposition.hpp"
#include "sps/digraph.hpp"
#include "sps/pattern.hpp"
#include "sps/star_system.hpp"

namespace sps {

struct RspsiInstance {
    Digraph d;
    StarsPathsPattern pattern;
    std::optional<ArborealDecomposition> decomposition;
};

/// Rooted solver: centers pinned by pattern.roots. Sweeps slack vectors in
/// lexicographic order; per feasible slack vector the paths are routed by
/// the itinerary DP and the leaves re-assigned around them. Requires a
/// decomposition unless the host is a DAG (throws NoDecomposition).
std::optional<Embedding> solve_rooted(const RspsiInstance& inst);

/// Unrooted wrapper: tries every injective center placement in
/// lexicographic order and delegates to the rooted solver.
std::optional<Embedding> solve_unrooted(const Digraph& d, const StarsPathsPattern& pattern,
                                        const std::optional<ArborealDecomposition>& dec = std::nullopt);

/// l pairwise disjoint arcs via maximum matching in the underlying graph;
/// returned as l one-out-stars.
std::optional<Embedding> find_disjoint_arcs(const Digraph& d, int l);

/// Once-subdivided l-star: for each candidate center v, a maximum matching
/// on the arcs leaving (entering) the relevant neighborhood of v decides
/// membership; the embedding assembles center, spokes, and matched arcs.
std::optional<Embedding> find_once_subdivided_star(const Digraph& d, int l, StarOrientation orientation);

/// Pattern describing the once-subdivided l-star (for oracle cross-checks):
/// center + l spokes + l tips.
Digraph once_subdivided_star_digraph(int l, StarOrientation orientation);

/// Checks a once-subdivided-star witness: 2l+1 distinct vertices, spoke and
/// arm arcs present and correctly oriented. Arm tips may lie in the center's
/// neighborhood but nowhere else may vertices coincide.
std::optional<std::string> subdivided_star_violation(const Digraph& d, int l, StarOrientation orientation,
                                                     const Embedding& embedding);

} // namespace sps

#endif
