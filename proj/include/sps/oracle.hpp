#ifndef SPS_ORACLE_HPP
#define SPS_ORACLE_HPP

#include <map>
#include <optional>
#include <vector>

#include "sps/pattern.hpp"

namespace sps {

constexpr int kDefaultOracleCap = 12;

/// Exhaustive backtracking search for an injective map g: V(h) -> V(d) with
/// (u,v) in E(h) implying (g(u),g(v)) in E(d). Subdigraph semantics: extra
/// host arcs among chosen vertices are fine. `pinned` fixes images of given
/// pattern vertices. Throws PatternTooLarge above the cap.
std::optional<std::vector<VertexId>> oracle_find_map(const Digraph& d, const Digraph& h,
                                                     const std::map<VertexId, VertexId>& pinned = {},
                                                     int cap = kDefaultOracleCap);

/// Ground-truth search for a stars-paths pattern; respects roots when the
/// pattern carries them.
std::optional<Embedding> oracle_find_pattern(const Digraph& d, const StarsPathsPattern& h,
                                             int cap = kDefaultOracleCap);

/// Digraph-target variant of the oracle.
std::optional<std::vector<VertexId>> oracle_find_pattern(const Digraph& d, const Digraph& h,
                                                         int cap = kDefaultOracleCap);

} // namespace sps

#endif
