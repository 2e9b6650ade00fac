#include "sps/star_system.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

namespace sps {

HomogenizeResult homogenize(const StarsPathsPattern& pattern, const std::vector<VertexId>& centers) {
    pattern.check();
    if (centers.size() != pattern.stars.size())
        fail(ErrorKind::BadRequest, "homogenize needs one center per star");
    HomogenizeResult result;
    result.specs_of_star.resize(pattern.stars.size());
    for (size_t i = 0; i < pattern.stars.size(); ++i) {
        const auto& star = pattern.stars[i];
        if (star.out_leaves > 0 || star.in_leaves == 0) {
            result.specs_of_star[i].push_back(static_cast<int>(result.specs.size()));
            result.specs.push_back({centers[i], StarOrientation::Out, star.out_leaves});
        }
        if (star.in_leaves > 0) {
            result.specs_of_star[i].push_back(static_cast<int>(result.specs.size()));
            result.specs.push_back({centers[i], StarOrientation::In, star.in_leaves});
        }
    }
    return result;
}

StarSystem build_system(const Digraph& d, const std::vector<StarSpec>& specs, const std::vector<int>& slacks,
                        const VertexSet& reserved) {
    if (slacks.size() != specs.size())
        fail(ErrorKind::BadRequest, "slack vector length differs from spec count");
    StarSystem system;
    system.specs = specs;
    system.slacks = slacks;
    for (const auto& spec : specs) {
        d.check_vertex(spec.center_in_host);
        const auto& raw = spec.orientation == StarOrientation::Out ? d.out_neighbors(spec.center_in_host)
                                                                   : d.in_neighbors(spec.center_in_host);
        VertexSet usable;
        for (VertexId v : raw)
            if (!reserved.count(v))
                usable.insert(v);
        system.usable_neighborhoods.push_back(std::move(usable));
    }
    // Group the union of the neighborhoods by membership profile.
    std::map<std::vector<int>, VertexSet> cells;
    VertexSet all;
    for (const auto& n : system.usable_neighborhoods)
        all.insert(n.begin(), n.end());
    for (VertexId v : all) {
        std::vector<int> profile;
        for (size_t i = 0; i < specs.size(); ++i)
            if (system.usable_neighborhoods[i].count(v))
                profile.push_back(static_cast<int>(i));
        cells[profile].insert(v);
    }
    for (auto& [profile, members] : cells)
        system.cells.emplace_back(profile, members);
    return system;
}

std::optional<std::string> assignment_violation(const StarSystem& system, const LeafAssignment& assignment) {
    if (assignment.leaves.size() != system.specs.size())
        return "leaf set count mismatch";
    VertexSet used;
    for (size_t i = 0; i < system.specs.size(); ++i) {
        const auto& leaves = assignment.leaves[i];
        if (static_cast<int>(leaves.size()) != system.specs[i].leaf_count)
            return "leaf count mismatch at spec " + std::to_string(i);
        for (VertexId v : leaves) {
            if (!system.usable_neighborhoods[i].count(v))
                return "leaf outside usable neighborhood at spec " + std::to_string(i);
            if (used.count(v))
                return "leaf " + std::to_string(v) + " used twice";
            used.insert(v);
        }
    }
    for (size_t i = 0; i < system.specs.size(); ++i) {
        int untouched = 0;
        for (VertexId v : system.usable_neighborhoods[i])
            if (!used.count(v))
                ++untouched;
        if (untouched < system.slacks[i])
            return "slack violated at spec " + std::to_string(i);
    }
    return std::nullopt;
}

namespace {

// DFS over cells, distributing each cell's capacity among its member specs.
// The slack inequality says: the total taken from cells touching spec i may
// not exceed |N_i| - slack(i).
struct SystemSearch {
    const StarSystem& system;
    std::vector<int> remaining_demand;   // per spec
    std::vector<int> allowance;          // per spec: |N_i| - slack_i remaining
    std::vector<std::map<int, int>> take;  // cell -> spec -> count

    explicit SystemSearch(const StarSystem& system) : system(system) {
        for (size_t i = 0; i < system.specs.size(); ++i) {
            remaining_demand.push_back(system.specs[i].leaf_count);
            allowance.push_back(static_cast<int>(system.usable_neighborhoods[i].size()) - system.slacks[i]);
        }
        take.resize(system.cells.size());
    }

    // Upper bound on what spec i can still receive from cells >= cell_index.
    bool demands_satisfiable(size_t cell_index) const {
        for (size_t i = 0; i < system.specs.size(); ++i) {
            if (remaining_demand[i] == 0)
                continue;
            if (remaining_demand[i] > allowance[i])
                return false;
            int reachable = 0;
            for (size_t c = cell_index; c < system.cells.size(); ++c) {
                const auto& [profile, members] = system.cells[c];
                if (std::find(profile.begin(), profile.end(), static_cast<int>(i)) != profile.end())
                    reachable += static_cast<int>(members.size());
            }
            if (remaining_demand[i] > reachable)
                return false;
        }
        return true;
    }

    bool assign_cell(size_t cell_index) {
        if (!demands_satisfiable(cell_index))
            return false;
        if (cell_index == system.cells.size()) {
            for (int d : remaining_demand)
                if (d != 0)
                    return false;
            return true;
        }
        const auto& [profile, members] = system.cells[cell_index];
        int capacity = static_cast<int>(members.size());
        // Distribute up to `capacity` leaves among the specs in `profile`;
        // the cell's total take charges every member spec's allowance.
        std::function<bool(size_t, int)> split = [&](size_t pi, int left) -> bool {
            if (pi == profile.size()) {
                int total_take = capacity - left;
                for (int member : profile)
                    if (allowance[member] < total_take)
                        return false;
                for (int member : profile)
                    allowance[member] -= total_take;
                bool ok = assign_cell(cell_index + 1);
                if (!ok)
                    for (int member : profile)
                        allowance[member] += total_take;
                return ok;
            }
            int spec = profile[pi];
            for (int count = std::min(left, remaining_demand[spec]); count >= 0; --count) {
                take[cell_index][spec] = count;
                remaining_demand[spec] -= count;
                if (split(pi + 1, left - count))
                    return true;
                remaining_demand[spec] += count;
                take[cell_index].erase(spec);
            }
            return false;
        };
        return split(0, capacity);
    }
};

} // namespace

std::optional<LeafAssignment> solve(const StarSystem& system) {
    for (size_t i = 0; i < system.specs.size(); ++i) {
        if (system.specs[i].leaf_count < 0 || system.slacks[i] < 0)
            fail(ErrorKind::BadRequest, "negative demand or slack");
    }
    SystemSearch search(system);
    if (!search.assign_cell(0))
        return std::nullopt;
    // Materialize: lowest ids per cell, specs in index order.
    LeafAssignment assignment;
    assignment.leaves.resize(system.specs.size());
    for (size_t c = 0; c < system.cells.size(); ++c) {
        const auto& members = system.cells[c].second;
        auto it = members.begin();
        std::vector<std::pair<int, int>> ordered(search.take[c].begin(), search.take[c].end());
        for (const auto& [spec, count] : ordered)
            for (int j = 0; j < count; ++j)
                assignment.leaves[spec].insert(*it++);
    }
    if (auto why = assignment_violation(system, assignment))
        fail(ErrorKind::Internal, "solver produced an invalid assignment: " + *why);
    return assignment;
}

} // namespace sps
