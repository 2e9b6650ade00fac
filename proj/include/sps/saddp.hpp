#ifndef SPS_SADDP_HPP
#define SPS_SADDP_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sps/decomposition.hpp"
#include "sps/digraph.hpp"

namespace sps {

struct Request {
    VertexId source = 0;
    VertexId target = 0;
};

/// Requests with sizes, avoid sets with budgets; the file format keeps the
/// digraph separate, so this struct does too.
struct SaddpSpec {
    std::vector<Request> requests;
    std::vector<int> sizes;              // p_i = |V(P_i)|, aligned with requests
    std::vector<VertexSet> avoid_sets;   // X_1..X_k
    std::vector<int> budgets;            // x_1..x_k
};

struct SaddpInstance {
    Digraph d;
    SaddpSpec spec;

    int request_count() const { return static_cast<int>(spec.requests.size()); }
    int set_count() const { return static_cast<int>(spec.avoid_sets.size()); }

    /// Rejects degenerate requests (source == target, sizes < 2), bad ids
    /// and shape mismatches.
    void check() const;
};

struct PathSolution {
    std::vector<std::vector<VertexId>> paths;
};

/// Full validity check of a solution against an instance: endpoints, exact
/// sizes, arcs, budget counts, and the disjointness rule (a vertex shared by
/// two paths must be a terminal of both requests).
std::optional<std::string> solution_violation(const SaddpInstance& inst, const PathSolution& sol);

/// Exhaustive backtracking ground truth. Throws TooLarge beyond 12 vertices.
std::optional<PathSolution> oracle_saddp(const SaddpInstance& inst);

/// DP-internal request: a terminal pair with a prescribed vertex count.
/// source == target is the single-vertex form (size 1) used while splitting
/// paths across decomposition pieces.
struct SizedRequest {
    VertexId source = 0;
    VertexId target = 0;
    int size = 0;

    auto operator<=>(const SizedRequest&) const = default;
};

/// Memoized table answering restricted instances on d[A]: query(L, x) is
/// true iff d[A] has internally disjoint paths realizing L whose union uses
/// at most x[i] vertices of X_i. Tables are built by the three combinators
/// below and evaluated lazily. Entries are monotone in x.
class Itinerary {
public:
    const VertexSet& vertices() const { return vertices_; }

    bool query(const std::vector<SizedRequest>& requests, const std::vector<int>& budgets);

    /// Paths aligned with `requests`; nullopt when the query is false.
    std::optional<std::vector<std::vector<VertexId>>> witness(const std::vector<SizedRequest>& requests,
                                                              const std::vector<int>& budgets);

private:
    friend std::shared_ptr<Itinerary> base_itinerary(const SaddpInstance& inst, const VertexSet& a);
    friend std::shared_ptr<Itinerary> combine_sequential(std::shared_ptr<Itinerary> fa,
                                                         std::shared_ptr<Itinerary> fb,
                                                         const SaddpInstance& inst);
    friend std::shared_ptr<Itinerary> combine_small(std::shared_ptr<Itinerary> fa, const VertexSet& b,
                                                    const SaddpInstance& inst);

    struct Impl;
    std::shared_ptr<Impl> impl_;
};

/// Itinerary for a small vertex set, computed by exhaustive path search
/// inside d[a].
std::shared_ptr<Itinerary> base_itinerary(const SaddpInstance& inst, const VertexSet& a);

/// Itinerary for A union B from itineraries for disjoint A and B with no
/// arcs from B to A in d (throws ArcFromBToA otherwise). Crossing requests
/// are split over all crossing arcs, budget splits, and size splits.
std::shared_ptr<Itinerary> combine_sequential(std::shared_ptr<Itinerary> fa, std::shared_ptr<Itinerary> fb,
                                              const SaddpInstance& inst);

/// Itinerary for A union b where b is a small set absorbed by guessing, per
/// request, the subpaths inside A and the connector vertices taken from b.
std::shared_ptr<Itinerary> combine_small(std::shared_ptr<Itinerary> fa, const VertexSet& b,
                                         const SaddpInstance& inst);

/// Itinerary for all of V(d), assembled bottom-up along a valid arboreal
/// decomposition; the instance budgets are not baked in, so one tree serves
/// any budget vector via query().
std::shared_ptr<Itinerary> build_itinerary(const SaddpInstance& inst, const ArborealDecomposition& dec);

/// Decides the instance via the itinerary DP and reconstructs a witness.
/// Throws InvalidDecomposition when the decomposition does not validate.
std::optional<PathSolution> solve_saddp(const SaddpInstance& inst, const ArborealDecomposition& dec);

} // namespace sps

#endif
