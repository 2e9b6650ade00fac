#ifndef SPS_STAR_SYSTEM_HPP
#define SPS_STAR_SYSTEM_HPP

#include <map>
#include <optional>
#include <vector>

#include "sps/digraph.hpp"
#include "sps/pattern.hpp"

namespace sps {

enum class StarOrientation { Out, In };

/// One homogeneous star pinned to a host vertex.
struct StarSpec {
    VertexId center_in_host = -1;
    StarOrientation orientation = StarOrientation::Out;
    int leaf_count = 0;
};

/// Splits every star of the pattern into homogeneous pieces mapped to the
/// same host vertex. The multiplicity map records, per original star, the
/// produced spec indices (one or two). Stars with no leaves yield one empty
/// out-spec.
struct HomogenizeResult {
    std::vector<StarSpec> specs;
    std::vector<std::vector<int>> specs_of_star;
};

HomogenizeResult homogenize(const StarsPathsPattern& pattern, const std::vector<VertexId>& centers);

/// The cell decomposition behind the leaf-count inequalities: usable
/// neighborhoods N_i, their non-empty intersection cells X_J, and per-spec
/// slacks. Only cells that actually occur are materialized.
struct StarSystem {
    std::vector<StarSpec> specs;
    std::vector<VertexSet> usable_neighborhoods;           // per spec
    std::vector<std::pair<std::vector<int>, VertexSet>> cells;  // (sorted spec indices J, X_J)
    std::vector<int> slacks;
};

/// Builds the system from the host: N_i is the out- or in-neighborhood of
/// the spec's center minus `reserved`. Reserved vertices never appear in any
/// cell.
StarSystem build_system(const Digraph& d, const std::vector<StarSpec>& specs, const std::vector<int>& slacks,
                        const VertexSet& reserved);

struct LeafAssignment {
    std::vector<VertexSet> leaves;  // per spec
};

/// Exact feasibility of the per-cell counting system (leaf demands, cell
/// capacities, slack allowances), with leaves extracted deterministically
/// (lowest ids first). nullopt iff infeasible.
std::optional<LeafAssignment> solve(const StarSystem& system);

/// Independent check of a returned assignment against its system.
std::optional<std::string> assignment_violation(const StarSystem& system, const LeafAssignment& assignment);

} // namespace sps

#endif
