#include "sps/saddp.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>

namespace sps {

void SaddpInstance::check() const {
    if (spec.sizes.size() != spec.requests.size())
        fail(ErrorKind::BadRequest, "size vector length differs from request count");
    if (spec.budgets.size() != spec.avoid_sets.size())
        fail(ErrorKind::BadRequest, "budget vector length differs from avoid-set count");
    for (size_t i = 0; i < spec.requests.size(); ++i) {
        d.check_vertex(spec.requests[i].source);
        d.check_vertex(spec.requests[i].target);
        if (spec.requests[i].source == spec.requests[i].target)
            fail(ErrorKind::BadRequest, "request " + std::to_string(i) + " has equal terminals");
        if (spec.sizes[i] < 2)
            fail(ErrorKind::BadRequest, "request " + std::to_string(i) + " needs at least 2 vertices");
    }
    for (const auto& x : spec.avoid_sets)
        for (VertexId v : x)
            d.check_vertex(v);
    for (int b : spec.budgets)
        if (b < 0)
            fail(ErrorKind::BadRequest, "negative budget");
}

std::optional<std::string> solution_violation(const SaddpInstance& inst, const PathSolution& sol) {
    const auto& spec = inst.spec;
    if (sol.paths.size() != spec.requests.size())
        return "path count mismatch";
    for (size_t i = 0; i < sol.paths.size(); ++i) {
        const auto& path = sol.paths[i];
        if (path.empty())
            return "empty path";
        if (static_cast<int>(path.size()) != spec.sizes[i])
            return "path " + std::to_string(i) + " has wrong size";
        if (path.front() != spec.requests[i].source || path.back() != spec.requests[i].target)
            return "path " + std::to_string(i) + " has wrong terminals";
        std::set<VertexId> distinct(path.begin(), path.end());
        if (distinct.size() != path.size())
            return "path " + std::to_string(i) + " repeats a vertex";
        for (size_t j = 0; j + 1 < path.size(); ++j)
            if (!inst.d.has_arc(path[j], path[j + 1]))
                return "path " + std::to_string(i) + " uses a missing arc";
    }
    // Sharing rule: a vertex on two paths must be a terminal of both requests.
    for (size_t i = 0; i < sol.paths.size(); ++i) {
        std::set<VertexId> a(sol.paths[i].begin(), sol.paths[i].end());
        for (size_t j = i + 1; j < sol.paths.size(); ++j) {
            for (VertexId v : sol.paths[j]) {
                if (!a.count(v))
                    continue;
                bool term_i = v == spec.requests[i].source || v == spec.requests[i].target;
                bool term_j = v == spec.requests[j].source || v == spec.requests[j].target;
                if (!term_i || !term_j)
                    return "paths " + std::to_string(i) + " and " + std::to_string(j) +
                           " share non-terminal vertex " + std::to_string(v);
            }
        }
    }
    std::set<VertexId> used;
    for (const auto& path : sol.paths)
        used.insert(path.begin(), path.end());
    for (size_t s = 0; s < spec.avoid_sets.size(); ++s) {
        int count = 0;
        for (VertexId v : used)
            if (spec.avoid_sets[s].count(v))
                ++count;
        if (count > spec.budgets[s])
            return "avoid set " + std::to_string(s) + " over budget";
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Brute-force ground truth, independent of the itinerary machinery.

namespace {

struct OracleSearch {
    const SaddpInstance& inst;
    std::vector<int> interior_owner;  // vertex -> path index or -1
    std::vector<int> terminal_refs;   // vertex -> number of paths touching it as a terminal
    std::vector<int> union_refs;      // vertex -> number of paths containing it
    std::vector<int> set_counts;      // avoid set -> distinct used vertices
    std::vector<std::vector<VertexId>> paths;
    std::vector<std::vector<VertexId>> found;

    explicit OracleSearch(const SaddpInstance& inst)
        : inst(inst), interior_owner(inst.d.vertex_count(), -1), terminal_refs(inst.d.vertex_count(), 0),
          union_refs(inst.d.vertex_count(), 0), set_counts(inst.set_count(), 0) {}

    bool add_vertex(VertexId v) {
        if (union_refs[v] > 0) {
            ++union_refs[v];
            return true;
        }
        for (int s = 0; s < inst.set_count(); ++s) {
            if (inst.spec.avoid_sets[s].count(v) && set_counts[s] + 1 > inst.spec.budgets[s])
                return false;
        }
        ++union_refs[v];
        for (int s = 0; s < inst.set_count(); ++s)
            if (inst.spec.avoid_sets[s].count(v))
                ++set_counts[s];
        return true;
    }

    void remove_vertex(VertexId v) {
        if (--union_refs[v] == 0)
            for (int s = 0; s < inst.set_count(); ++s)
                if (inst.spec.avoid_sets[s].count(v))
                    --set_counts[s];
    }

    bool place(size_t request_index) {
        if (request_index == inst.spec.requests.size()) {
            found = paths;
            return true;
        }
        const auto& req = inst.spec.requests[request_index];
        if (interior_owner[req.source] != -1 || interior_owner[req.target] != -1)
            return false;
        if (!add_vertex(req.source))
            return false;
        ++terminal_refs[req.source];
        paths.push_back({req.source});
        bool ok = extend(request_index, inst.spec.sizes[request_index] - 1);
        paths.pop_back();
        --terminal_refs[req.source];
        remove_vertex(req.source);
        return ok;
    }

    bool extend(size_t request_index, int remaining) {
        const auto& req = inst.spec.requests[request_index];
        VertexId current = paths.back().back();
        if (remaining == 0)
            return current == req.target && place(request_index + 1);
        for (VertexId next : inst.d.out_neighbors(current)) {
            bool is_final = remaining == 1;
            if (is_final != (next == req.target))
                continue;
            if (std::find(paths.back().begin(), paths.back().end(), next) != paths.back().end())
                continue;
            if (interior_owner[next] != -1)
                continue;
            if (!is_final && terminal_refs[next] > 0)
                continue;
            if (!add_vertex(next))
                continue;
            paths.back().push_back(next);
            if (is_final)
                ++terminal_refs[next];
            else
                interior_owner[next] = static_cast<int>(request_index);
            bool ok = extend(request_index, remaining - 1);
            if (is_final)
                --terminal_refs[next];
            else
                interior_owner[next] = -1;
            paths.back().pop_back();
            remove_vertex(next);
            if (ok)
                return true;
        }
        return false;
    }
};

} // namespace

std::optional<PathSolution> oracle_saddp(const SaddpInstance& inst) {
    inst.check();
    if (inst.d.vertex_count() > 12)
        fail(ErrorKind::TooLarge, "oracle_saddp handles at most 12 vertices");
    if (inst.spec.requests.empty())
        return PathSolution{};
    OracleSearch search(inst);
    if (!search.place(0))
        return std::nullopt;
    PathSolution sol{search.found};
    if (auto why = solution_violation(inst, sol))
        fail(ErrorKind::Internal, "oracle produced an invalid solution: " + *why);
    return sol;
}

// ---------------------------------------------------------------------------
// Itinerary DP.

namespace {

struct Occurrence {
    VertexId v;
    bool terminal;
};

// A vertex appearing more than once across the planned segment endpoints
// must be a shared terminal in every appearance.
bool occurrences_ok(const std::vector<Occurrence>& occurrences) {
    std::map<VertexId, std::pair<int, bool>> info;
    for (const auto& occ : occurrences) {
        auto [it, fresh] = info.try_emplace(occ.v, 1, occ.terminal);
        if (!fresh) {
            it->second.first++;
            it->second.second = it->second.second && occ.terminal;
        }
    }
    for (const auto& [v, stat] : info) {
        (void)v;
        if (stat.first >= 2 && !stat.second)
            return false;
    }
    return true;
}

} // namespace

struct Itinerary::Impl {
    enum class Kind { Base, Seq, Small };

    Kind kind = Kind::Base;
    const SaddpInstance* inst = nullptr;
    VertexSet vertices;
    std::vector<char> member;      // indicator over V(d)
    std::vector<int> cap;          // |X_i intersect A|
    std::shared_ptr<Itinerary> left, right;
    std::vector<VertexId> small_b;
    std::vector<Arc> arcs_a_to_b;  // Seq only

    struct Entry {
        bool ok = false;
        std::vector<std::vector<VertexId>> paths;  // canonical request order
    };
    using Key = std::pair<std::vector<SizedRequest>, std::vector<int>>;
    std::map<Key, Entry> memo;

    void finish_setup() {
        member.assign(inst->d.vertex_count(), 0);
        for (VertexId v : vertices)
            member[v] = 1;
        cap.assign(inst->set_count(), 0);
        for (int s = 0; s < inst->set_count(); ++s)
            for (VertexId v : inst->spec.avoid_sets[s])
                if (member[v])
                    ++cap[s];
    }

    std::vector<int> clamp_budgets(const std::vector<int>& x) const {
        std::vector<int> clamped(inst->set_count(), 0);
        for (size_t s = 0; s < clamped.size(); ++s)
            clamped[s] = std::clamp(x.size() > s ? x[s] : 0, 0, cap[s]);
        return clamped;
    }

    bool contains_requests(const std::vector<SizedRequest>& requests) const {
        for (const auto& r : requests) {
            if (r.source < 0 || r.source >= inst->d.vertex_count() || r.target < 0 ||
                r.target >= inst->d.vertex_count())
                return false;
            if (!member[r.source] || !member[r.target])
                return false;
            if (r.size < 1)
                return false;
            if ((r.source == r.target) != (r.size == 1))
                return false;
        }
        return true;
    }

    const Entry& solve(const Key& key) {
        auto it = memo.find(key);
        if (it != memo.end())
            return it->second;
        Entry entry;
        switch (kind) {
        case Kind::Base:
            entry = solve_base(key);
            break;
        case Kind::Seq:
            entry = solve_seq(key);
            break;
        case Kind::Small:
            entry = solve_small(key);
            break;
        }
        return memo.emplace(key, std::move(entry)).first->second;
    }

    // -- Base: exhaustive search inside the (small) set. ---------------------

    void enumerate_paths(const SizedRequest& r, std::vector<std::vector<VertexId>>& out) const {
        if (r.size == 1) {
            if (r.source == r.target)
                out.push_back({r.source});
            return;
        }
        if (r.source == r.target)
            return;
        std::vector<VertexId> path{r.source};
        std::vector<char> on_path(inst->d.vertex_count(), 0);
        on_path[r.source] = 1;
        std::function<void()> go = [&]() {
            if (static_cast<int>(path.size()) == r.size) {
                if (path.back() == r.target)
                    out.push_back(path);
                return;
            }
            for (VertexId next : inst->d.out_neighbors(path.back())) {
                if (!member[next] || on_path[next])
                    continue;
                if ((next == r.target) != (static_cast<int>(path.size()) + 1 == r.size))
                    continue;
                path.push_back(next);
                on_path[next] = 1;
                go();
                path.pop_back();
                on_path[next] = 0;
            }
        };
        go();
    }

    static bool paths_compatible(const std::vector<VertexId>& a, const SizedRequest& ra,
                                 const std::vector<VertexId>& b, const SizedRequest& rb) {
        for (VertexId v : b) {
            if (std::find(a.begin(), a.end(), v) == a.end())
                continue;
            bool term_a = v == ra.source || v == ra.target;
            bool term_b = v == rb.source || v == rb.target;
            bool end_a = v == a.front() || v == a.back();
            bool end_b = v == b.front() || v == b.back();
            if (!(term_a && term_b && end_a && end_b))
                return false;
        }
        return true;
    }

    Entry solve_base(const Key& key) {
        const auto& [requests, budgets] = key;
        std::vector<std::vector<std::vector<VertexId>>> candidates(requests.size());
        for (size_t i = 0; i < requests.size(); ++i) {
            enumerate_paths(requests[i], candidates[i]);
            if (candidates[i].empty())
                return {};
        }
        std::vector<std::vector<VertexId>> chosen(requests.size());
        std::function<bool(size_t)> pick = [&](size_t i) -> bool {
            if (i == requests.size()) {
                std::set<VertexId> used;
                for (const auto& path : chosen)
                    used.insert(path.begin(), path.end());
                for (int s = 0; s < inst->set_count(); ++s) {
                    int count = 0;
                    for (VertexId v : used)
                        if (inst->spec.avoid_sets[s].count(v))
                            ++count;
                    if (count > budgets[s])
                        return false;
                }
                return true;
            }
            for (const auto& path : candidates[i]) {
                bool ok = true;
                for (size_t j = 0; j < i && ok; ++j)
                    ok = paths_compatible(chosen[j], requests[j], path, requests[i]);
                if (!ok)
                    continue;
                chosen[i] = path;
                if (pick(i + 1))
                    return true;
            }
            return false;
        };
        if (!pick(0))
            return {};
        return {true, chosen};
    }

    // -- Seq: A before B, no arcs from B back into A. -------------------------

    struct CrossChoice {
        VertexId exit_a = -1;
        VertexId entry_b = -1;
        int size_a = 0;
    };

    Entry solve_seq(const Key& key) {
        const auto& [requests, budgets] = key;
        const auto& in_a = left->impl_->member;
        const auto& in_b = right->impl_->member;

        std::vector<size_t> crossing;
        std::vector<SizedRequest> base_la, base_lb;
        std::vector<size_t> origin_la, origin_lb;
        for (size_t i = 0; i < requests.size(); ++i) {
            const auto& r = requests[i];
            if (in_a[r.source] && in_a[r.target]) {
                base_la.push_back(r);
                origin_la.push_back(i);
            } else if (in_b[r.source] && in_b[r.target]) {
                base_lb.push_back(r);
                origin_lb.push_back(i);
            } else if (in_a[r.source] && in_b[r.target]) {
                crossing.push_back(i);
            } else {
                return {};  // source in B, target in A: no arcs go back
            }
        }

        std::vector<CrossChoice> choices(requests.size());
        Entry result;
        std::function<bool(size_t)> choose = [&](size_t ci) -> bool {
            if (ci == crossing.size())
                return attempt_seq(requests, budgets, base_la, origin_la, base_lb, origin_lb, crossing,
                                   choices, result);
            size_t request_index = crossing[ci];
            const auto& r = requests[request_index];
            for (const auto& [u, v] : arcs_a_to_b) {
                for (int size_a = 1; size_a <= r.size - 1; ++size_a) {
                    if ((u == r.source) != (size_a == 1))
                        continue;
                    if ((v == r.target) != (r.size - size_a == 1))
                        continue;
                    choices[request_index] = {u, v, size_a};
                    if (choose(ci + 1))
                        return true;
                }
            }
            return false;
        };
        if (!choose(0))
            return {};
        return result;
    }

    bool attempt_seq(const std::vector<SizedRequest>& requests, const std::vector<int>& budgets,
                     const std::vector<SizedRequest>& base_la, const std::vector<size_t>& origin_la,
                     const std::vector<SizedRequest>& base_lb, const std::vector<size_t>& origin_lb,
                     const std::vector<size_t>& crossing, const std::vector<CrossChoice>& choices,
                     Entry& result) {
        std::vector<SizedRequest> la = base_la, lb = base_lb;
        std::vector<size_t> la_origin = origin_la, lb_origin = origin_lb;
        std::vector<Occurrence> occurrences;
        for (const auto& r : base_la) {
            occurrences.push_back({r.source, true});
            if (r.source != r.target)
                occurrences.push_back({r.target, true});
        }
        for (const auto& r : base_lb) {
            occurrences.push_back({r.source, true});
            if (r.source != r.target)
                occurrences.push_back({r.target, true});
        }
        for (size_t request_index : crossing) {
            const auto& r = requests[request_index];
            const auto& choice = choices[request_index];
            la.push_back({r.source, choice.exit_a, choice.size_a});
            la_origin.push_back(request_index);
            lb.push_back({choice.entry_b, r.target, r.size - choice.size_a});
            lb_origin.push_back(request_index);
            occurrences.push_back({r.source, true});
            if (choice.exit_a != r.source)
                occurrences.push_back({choice.exit_a, false});
            occurrences.push_back({r.target, true});
            if (choice.entry_b != r.target)
                occurrences.push_back({choice.entry_b, false});
        }
        if (!occurrences_ok(occurrences))
            return false;

        int k = inst->set_count();
        const auto& cap_a = left->impl_->cap;
        const auto& cap_b = right->impl_->cap;
        std::vector<int> max_a(k), max_b(k);
        for (int s = 0; s < k; ++s) {
            max_a[s] = std::min(budgets[s], cap_a[s]);
            max_b[s] = std::min(budgets[s], cap_b[s]);
        }
        if (!left->query(la, max_a) || !right->query(lb, max_b))
            return false;

        // Budget splits: the B side always takes whatever A leaves unused.
        std::vector<int> xa(k, 0);
        std::function<bool(int)> split = [&](int s) -> bool {
            if (s == k) {
                std::vector<int> xb(k);
                for (int j = 0; j < k; ++j)
                    xb[j] = std::min(budgets[j] - xa[j], cap_b[j]);
                if (!left->query(la, xa) || !right->query(lb, xb))
                    return false;
                auto paths_a = left->witness(la, xa);
                auto paths_b = right->witness(lb, xb);
                result.ok = true;
                result.paths.assign(requests.size(), {});
                for (size_t i = 0; i < la_origin.size(); ++i)
                    result.paths[la_origin[i]] = (*paths_a)[i];
                for (size_t i = 0; i < lb_origin.size(); ++i) {
                    auto& glued = result.paths[lb_origin[i]];
                    glued.insert(glued.end(), (*paths_b)[i].begin(), (*paths_b)[i].end());
                }
                return true;
            }
            for (xa[s] = max_a[s]; xa[s] >= 0; --xa[s])
                if (split(s + 1))
                    return true;
            xa[s] = 0;
            return false;
        };
        return split(0);
    }

    // -- Small: base set plus a handful of absorbed vertices. ----------------

    struct PlanSeg {
        bool in_a = false;
        VertexId u = -1, v = -1;   // guessed A-subpath endpoints
        int size = 0;
        std::vector<VertexId> run;  // connector vertices from b, in order
    };

    struct SmallState {
        std::vector<std::vector<PlanSeg>> plans;
        std::map<VertexId, std::pair<int, bool>> b_usage;  // count, all-terminal
    };

    bool use_b_vertex(SmallState& st, VertexId v, bool terminal) {
        auto [it, fresh] = st.b_usage.try_emplace(v, 0, true);
        if (!fresh && !(it->second.second && terminal))
            return false;
        it->second.first++;
        it->second.second = it->second.second && terminal;
        return true;
    }

    void unuse_b_vertex(SmallState& st, VertexId v) {
        auto it = st.b_usage.find(v);
        if (--it->second.first == 0)
            st.b_usage.erase(it);
    }

    Entry solve_small(const Key& key) {
        const auto& [requests, budgets] = key;
        const auto& in_a = left->impl_->member;
        std::vector<char> in_b(inst->d.vertex_count(), 0);
        for (VertexId v : small_b)
            in_b[v] = 1;

        SmallState st;
        st.plans.resize(requests.size());
        Entry result;

        std::function<bool(size_t)> plan_request = [&](size_t index) -> bool {
            if (index == requests.size())
                return finish_small(requests, budgets, st, result);
            const auto& r = requests[index];
            auto& plan = st.plans[index];

            // Alternates guessed A-subpaths with connector runs through b;
            // `consumed` counts path vertices committed so far.
            std::function<bool(int, bool)> extend = [&](int consumed, bool expect_a) -> bool {
                bool first = plan.empty();
                if (expect_a) {
                    VertexId u_first = first ? r.source : -1;
                    for (VertexId u = 0; u < inst->d.vertex_count(); ++u) {
                        if (first && u != u_first)
                            continue;
                        if (!in_a[u])
                            continue;
                        if (!first && !inst->d.has_arc(plan.back().run.back(), u))
                            continue;
                        for (int q = 1; consumed + q <= r.size; ++q) {
                            for (VertexId v = 0; v < inst->d.vertex_count(); ++v) {
                                if (!in_a[v])
                                    continue;
                                if ((u == v) != (q == 1))
                                    continue;
                                bool completes = consumed + q == r.size && v == r.target;
                                if (consumed + q == r.size && !completes)
                                    continue;
                                plan.push_back({true, u, v, q, {}});
                                bool ok = completes ? plan_request(index + 1) : extend(consumed + q, false);
                                plan.pop_back();
                                if (ok)
                                    return true;
                            }
                        }
                    }
                    return false;
                }
                // connector run through b
                std::vector<VertexId> starts;
                if (first) {
                    starts = {r.source};
                } else {
                    for (VertexId w : inst->d.out_neighbors(plan.back().v))
                        if (in_b[w])
                            starts.push_back(w);
                }
                std::vector<VertexId> run;
                std::function<bool(VertexId, int)> grow = [&](VertexId w, int used) -> bool {
                    // arriving at w as the `used`-th connector vertex of this run
                    if (std::find(run.begin(), run.end(), w) != run.end())
                        return false;
                    run.push_back(w);
                    bool plan_first_vertex = first && run.size() == 1;
                    // complete at w
                    if (w == r.target && consumed + used == r.size) {
                        if (use_b_vertex(st, w, true)) {
                            plan.push_back({false, -1, -1, 0, run});
                            bool ok = plan_request(index + 1);
                            plan.pop_back();
                            unuse_b_vertex(st, w);
                            if (ok) {
                                run.pop_back();
                                return true;
                            }
                        }
                    }
                    bool ok = false;
                    if (consumed + used < r.size) {
                        bool terminal_here = plan_first_vertex && w == r.source;
                        if (use_b_vertex(st, w, terminal_here)) {
                            // continue within b
                            for (VertexId w2 : inst->d.out_neighbors(w)) {
                                if (!in_b[w2])
                                    continue;
                                if (grow(w2, used + 1)) {
                                    ok = true;
                                    break;
                                }
                            }
                            // or hop back into A
                            if (!ok) {
                                plan.push_back({false, -1, -1, 0, run});
                                ok = extend(consumed + used, true);
                                plan.pop_back();
                            }
                            unuse_b_vertex(st, w);
                        }
                    }
                    run.pop_back();
                    return ok;
                };
                for (VertexId w0 : starts)
                    if (grow(w0, 1))
                        return true;
                return false;
            };

            if (in_a[r.source] && extend(0, true))
                return true;
            if (in_b[r.source] && extend(0, false))
                return true;
            return false;
        };

        if (!plan_request(0))
            return {};
        return result;
    }

    bool finish_small(const std::vector<SizedRequest>& requests, const std::vector<int>& budgets,
                      SmallState& st, Entry& result) {
        std::vector<SizedRequest> la;
        std::vector<Occurrence> occurrences;
        for (size_t i = 0; i < requests.size(); ++i) {
            const auto& plan = st.plans[i];
            for (size_t g = 0; g < plan.size(); ++g) {
                const auto& seg = plan[g];
                if (seg.in_a) {
                    la.push_back({seg.u, seg.v, seg.size});
                    bool u_terminal = g == 0 && seg.u == requests[i].source;
                    bool v_terminal = g + 1 == plan.size() && seg.v == requests[i].target;
                    if (seg.u == seg.v) {
                        occurrences.push_back({seg.u, u_terminal || v_terminal});
                    } else {
                        occurrences.push_back({seg.u, u_terminal});
                        occurrences.push_back({seg.v, v_terminal});
                    }
                } else {
                    for (size_t p = 0; p < seg.run.size(); ++p) {
                        bool terminal = (g == 0 && p == 0 && seg.run[p] == requests[i].source) ||
                                        (g + 1 == plan.size() && p + 1 == seg.run.size() &&
                                         seg.run[p] == requests[i].target);
                        occurrences.push_back({seg.run[p], terminal});
                    }
                }
            }
        }
        if (!occurrences_ok(occurrences))
            return false;

        int k = inst->set_count();
        std::vector<int> xa(k);
        for (int s = 0; s < k; ++s) {
            int b_cost = 0;
            for (const auto& [v, stat] : st.b_usage) {
                (void)stat;
                if (inst->spec.avoid_sets[s].count(v))
                    ++b_cost;
            }
            if (b_cost > budgets[s])
                return false;
            xa[s] = std::min(budgets[s] - b_cost, left->impl_->cap[s]);
        }
        auto paths_a = left->witness(la, xa);
        if (!paths_a)
            return false;

        result.ok = true;
        result.paths.assign(requests.size(), {});
        size_t next_a = 0;
        for (size_t i = 0; i < requests.size(); ++i) {
            auto& glued = result.paths[i];
            for (const auto& seg : st.plans[i]) {
                if (seg.in_a) {
                    const auto& part = (*paths_a)[next_a++];
                    glued.insert(glued.end(), part.begin(), part.end());
                } else {
                    glued.insert(glued.end(), seg.run.begin(), seg.run.end());
                }
            }
        }
        return true;
    }
};

bool Itinerary::query(const std::vector<SizedRequest>& requests, const std::vector<int>& budgets) {
    if (!impl_->contains_requests(requests))
        return false;
    std::vector<SizedRequest> canon = requests;
    std::sort(canon.begin(), canon.end());
    return impl_->solve({std::move(canon), impl_->clamp_budgets(budgets)}).ok;
}

std::optional<std::vector<std::vector<VertexId>>> Itinerary::witness(
    const std::vector<SizedRequest>& requests, const std::vector<int>& budgets) {
    if (!impl_->contains_requests(requests))
        return std::nullopt;
    std::vector<size_t> index(requests.size());
    std::iota(index.begin(), index.end(), 0);
    std::stable_sort(index.begin(), index.end(),
                     [&](size_t a, size_t b) { return requests[a] < requests[b]; });
    std::vector<SizedRequest> canon;
    for (size_t i : index)
        canon.push_back(requests[i]);
    const auto& entry = impl_->solve({std::move(canon), impl_->clamp_budgets(budgets)});
    if (!entry.ok)
        return std::nullopt;
    std::vector<std::vector<VertexId>> aligned(requests.size());
    for (size_t pos = 0; pos < index.size(); ++pos)
        aligned[index[pos]] = entry.paths[pos];
    return aligned;
}

std::shared_ptr<Itinerary> base_itinerary(const SaddpInstance& inst, const VertexSet& a) {
    for (VertexId v : a)
        inst.d.check_vertex(v);
    auto impl = std::make_shared<Itinerary::Impl>();
    impl->kind = Itinerary::Impl::Kind::Base;
    impl->inst = &inst;
    impl->vertices = a;
    auto itinerary = std::make_shared<Itinerary>();
    itinerary->impl_ = std::move(impl);
    itinerary->impl_->finish_setup();
    return itinerary;
}

std::shared_ptr<Itinerary> combine_sequential(std::shared_ptr<Itinerary> fa, std::shared_ptr<Itinerary> fb,
                                              const SaddpInstance& inst) {
    const auto& a = fa->vertices();
    const auto& b = fb->vertices();
    for (VertexId v : b)
        if (a.count(v))
            fail(ErrorKind::OverlappingSets, "sequential combine needs disjoint sets");
    std::vector<Arc> forward;
    for (const auto& [tail, head] : inst.d.arcs()) {
        if (b.count(tail) && a.count(head))
            fail(ErrorKind::ArcFromBToA,
                 "arc (" + std::to_string(tail) + "," + std::to_string(head) + ") runs from B to A");
        if (a.count(tail) && b.count(head))
            forward.emplace_back(tail, head);
    }
    auto impl = std::make_shared<Itinerary::Impl>();
    impl->kind = Itinerary::Impl::Kind::Seq;
    impl->inst = &inst;
    impl->vertices = a;
    impl->vertices.insert(b.begin(), b.end());
    impl->left = std::move(fa);
    impl->right = std::move(fb);
    std::sort(forward.begin(), forward.end());
    impl->arcs_a_to_b = std::move(forward);
    auto itinerary = std::make_shared<Itinerary>();
    itinerary->impl_ = std::move(impl);
    itinerary->impl_->finish_setup();
    return itinerary;
}

std::shared_ptr<Itinerary> combine_small(std::shared_ptr<Itinerary> fa, const VertexSet& b,
                                         const SaddpInstance& inst) {
    const auto& a = fa->vertices();
    for (VertexId v : b) {
        inst.d.check_vertex(v);
        if (a.count(v))
            fail(ErrorKind::OverlappingSets, "absorbed vertices must be outside the base set");
    }
    if (b.empty())
        return fa;
    auto impl = std::make_shared<Itinerary::Impl>();
    impl->kind = Itinerary::Impl::Kind::Small;
    impl->inst = &inst;
    impl->vertices = a;
    impl->vertices.insert(b.begin(), b.end());
    impl->left = std::move(fa);
    impl->small_b.assign(b.begin(), b.end());
    auto itinerary = std::make_shared<Itinerary>();
    itinerary->impl_ = std::move(impl);
    itinerary->impl_->finish_setup();
    return itinerary;
}

namespace {

std::shared_ptr<Itinerary> build_subtree(const SaddpInstance& inst, const ArborealDecomposition& dec,
                                         int node, const VertexSet& excluded) {
    VertexSet z_local = dec.bags[node];
    std::vector<int> child_nodes;
    for (const auto& e : dec.edges) {
        if (e.parent == node) {
            z_local.insert(e.guard.begin(), e.guard.end());
            child_nodes.push_back(e.child);
        }
    }
    VertexSet child_excluded = excluded;
    child_excluded.insert(z_local.begin(), z_local.end());

    VertexSet target;
    for (VertexId v : dec.below(node))
        if (!excluded.count(v))
            target.insert(v);

    std::vector<std::shared_ptr<Itinerary>> parts;
    for (int child : child_nodes) {
        bool has_vertices = false;
        for (VertexId v : dec.below(child)) {
            if (!child_excluded.count(v)) {
                has_vertices = true;
                break;
            }
        }
        if (has_vertices)
            parts.push_back(build_subtree(inst, dec, child, child_excluded));
    }

    std::shared_ptr<Itinerary> current;
    if (parts.empty())
        return base_itinerary(inst, target);
    if (parts.size() == 1) {
        current = parts[0];
    } else {
        // Sequential combination needs a back-arc-free order; take the
        // condensation of the piece-level arc relation, sources first.
        // Pieces stuck in one strong component are merged by absorption.
        int m = static_cast<int>(parts.size());
        std::vector<Arc> relation;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                if (i == j)
                    continue;
                for (const auto& [tail, head] : inst.d.arcs()) {
                    if (parts[i]->vertices().count(tail) && parts[j]->vertices().count(head)) {
                        relation.emplace_back(i, j);
                        break;
                    }
                }
            }
        }
        Digraph relation_graph = Digraph::from_arc_list(m, relation, false);
        auto sccs = strong_components(relation_graph);
        std::reverse(sccs.begin(), sccs.end());  // sources first
        for (const auto& scc : sccs) {
            std::vector<int> members(scc.begin(), scc.end());
            std::sort(members.begin(), members.end(), [&](int x, int y) {
                return parts[x]->vertices().size() > parts[y]->vertices().size();
            });
            std::shared_ptr<Itinerary> group = parts[members[0]];
            for (size_t i = 1; i < members.size(); ++i)
                for (VertexId v : parts[members[i]]->vertices())
                    group = combine_small(group, {v}, inst);
            current = current ? combine_sequential(current, group, inst) : group;
        }
    }
    for (VertexId v : target)
        if (!current->vertices().count(v))
            current = combine_small(current, {v}, inst);
    return current;
}

} // namespace

std::shared_ptr<Itinerary> build_itinerary(const SaddpInstance& inst, const ArborealDecomposition& dec) {
    if (dec.node_count == 0)
        return base_itinerary(inst, {});
    return build_subtree(inst, dec, dec.root, {});
}

std::optional<PathSolution> solve_saddp(const SaddpInstance& inst, const ArborealDecomposition& dec) {
    inst.check();
    auto validation = validate(inst.d, dec);
    if (!validation.ok)
        fail(ErrorKind::InvalidDecomposition, "decomposition rejected: " + validation.issue);
    if (inst.spec.requests.empty())
        return PathSolution{};
    auto root = build_itinerary(inst, dec);
    std::vector<SizedRequest> requests;
    for (size_t i = 0; i < inst.spec.requests.size(); ++i)
        requests.push_back({inst.spec.requests[i].source, inst.spec.requests[i].target, inst.spec.sizes[i]});
    auto paths = root->witness(requests, inst.spec.budgets);
    if (!paths)
        return std::nullopt;
    PathSolution sol{*paths};
    if (auto why = solution_violation(inst, sol))
        fail(ErrorKind::Internal, "dp produced an invalid solution: " + *why);
    return sol;
}

} // namespace sps
