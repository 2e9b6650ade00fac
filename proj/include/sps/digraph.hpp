#ifndef SPS_DIGRAPH_HPP
#define SPS_DIGRAPH_HPP

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "sps/errors.hpp"

namespace sps {

using VertexId = int;
using Arc = std::pair<VertexId, VertexId>;
using VertexSet = std::set<VertexId>;

/// Simple digraph over vertices 0..n-1. Loops are only admitted when the
/// graph was constructed with allow_loops; parallel arcs with the same
/// orientation are always rejected.
class Digraph {
public:
    Digraph() = default;

    static Digraph from_arc_list(int n, const std::vector<Arc>& arcs, bool allow_loops = false);

    int vertex_count() const { return n_; }
    int arc_count() const { return static_cast<int>(arcs_.size()); }
    bool loops_allowed() const { return allow_loops_; }

    const std::vector<Arc>& arcs() const { return arcs_; }
    const std::vector<VertexId>& out_neighbors(VertexId v) const;
    const std::vector<VertexId>& in_neighbors(VertexId v) const;
    int out_degree(VertexId v) const { return static_cast<int>(out_neighbors(v).size()); }
    int in_degree(VertexId v) const { return static_cast<int>(in_neighbors(v).size()); }
    bool has_arc(VertexId tail, VertexId head) const;
    bool has_loop(VertexId v) const { return has_arc(v, v); }

    void check_vertex(VertexId v) const;

    /// Arc replaced by a directed path with 2+times vertices; new interior
    /// vertices take ids n, n+1, ... in tail-to-head order.
    Digraph subdivide(Arc arc, int times) const;

    bool operator==(const Digraph& other) const {
        return n_ == other.n_ && allow_loops_ == other.allow_loops_ && sorted_arcs() == other.sorted_arcs();
    }

    std::vector<Arc> sorted_arcs() const;

private:
    int n_ = 0;
    bool allow_loops_ = false;
    std::vector<Arc> arcs_;
    std::vector<std::vector<VertexId>> out_adj_;
    std::vector<std::vector<VertexId>> in_adj_;
};

/// True iff a directed walk from `from` to `to` exists avoiding `forbidden`.
/// from == to counts as reachable (empty walk).
bool reachable(const Digraph& d, VertexId from, VertexId to, const VertexSet& forbidden = {});

/// Vertices reachable from any seed in d minus forbidden (seeds included
/// unless forbidden themselves).
std::vector<char> reach_from(const Digraph& d, const std::vector<VertexId>& seeds,
                             const std::vector<char>& forbidden, bool reverse = false);

/// Partition of `restrict` into the weak components of d[restrict], each
/// component sorted, components ordered by smallest member.
std::vector<std::vector<VertexId>> weak_components(const Digraph& d, const VertexSet& restrict_to);

/// Tarjan SCCs, in reverse topological order of the condensation.
std::vector<std::vector<VertexId>> strong_components(const Digraph& d);

/// A digraph is a DAG iff every strong component is a loop-free singleton.
bool is_dag(const Digraph& d);

/// Topological order of a DAG; throws NotADag otherwise. Deterministic:
/// smallest available vertex first.
std::vector<VertexId> topological_order(const Digraph& d);

} // namespace sps

#endif
