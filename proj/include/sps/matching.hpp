#ifndef SPS_MATCHING_HPP
#define SPS_MATCHING_HPP

#include <utility>
#include <vector>

namespace sps {

using Edge = std::pair<int, int>;

/// Maximum-cardinality matching in a simple undirected graph on vertices
/// 0..n-1 (general graphs, blossom contraction). Exact. Loops and duplicate
/// edges are ignored. Returned edges are (min,max)-normalized and sorted.
std::vector<Edge> max_matching(int n, const std::vector<Edge>& edges);

} // namespace sps

#endif
