#include "permweyl/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

namespace permweyl {

namespace {

// Incremental pair graph with online topological-order maintenance
// (Pearce-Kelly). Nodes are unordered off-diagonal vertex pairs; an arc
// insertion that would close a cycle is refused without mutation, so a
// refused placement unwinds cleanly.
class PairPK {
public:
    void init(int vertices) {
        nv_ = vertices;
        int n = vertices * (vertices - 1) / 2;
        adj_.assign(n, {});
        radj_.assign(n, {});
        ord_.resize(n);
        node_at_.resize(n);
        std::iota(ord_.begin(), ord_.end(), 0);
        std::iota(node_at_.begin(), node_at_.end(), 0);
        stamp_.assign(n, 0);
        epoch_ = 0;
    }

    int node(int a, int b) const {
        int lo = std::min(a, b), hi = std::max(a, b);
        return hi * (hi - 1) / 2 + lo;
    }

    // Arc between unordered pairs; returns false (and leaves the structure
    // untouched) when it closes a cycle.
    bool insert(int u, int v) {
        if (u == v) return false;
        if (ord_[u] < ord_[v]) {
            push(u, v);
            return true;
        }
        // Discover the affected region between ord[v] and ord[u].
        ++epoch_;
        fwd_.clear();
        if (!forward(v, ord_[u])) return false;  // reached u: cycle
        ++epoch_;
        bwd_.clear();
        backward(u, ord_[v]);
        reorder();
        push(u, v);
        return true;
    }

    void remove_last(int u, int v) {
        adj_[u].pop_back();
        radj_[v].pop_back();
    }

private:
    void push(int u, int v) {
        adj_[u].push_back(v);
        radj_[v].push_back(u);
    }

    bool forward(int from, int ub) {
        work_.clear();
        work_.push_back(from);
        stamp_[from] = epoch_;
        while (!work_.empty()) {
            int w = work_.back();
            work_.pop_back();
            fwd_.push_back(w);
            for (int x : adj_[w]) {
                if (ord_[x] > ub || stamp_[x] == epoch_) continue;
                if (ord_[x] == ub) return false;  // x == u
                stamp_[x] = epoch_;
                work_.push_back(x);
            }
        }
        return true;
    }

    void backward(int from, int lb) {
        work_.clear();
        work_.push_back(from);
        stamp_[from] = epoch_;
        while (!work_.empty()) {
            int w = work_.back();
            work_.pop_back();
            bwd_.push_back(w);
            for (int x : radj_[w]) {
                if (ord_[x] < lb || stamp_[x] == epoch_) continue;
                stamp_[x] = epoch_;
                work_.push_back(x);
            }
        }
    }

    void reorder() {
        auto by_ord = [&](int a, int b) { return ord_[a] < ord_[b]; };
        std::sort(fwd_.begin(), fwd_.end(), by_ord);
        std::sort(bwd_.begin(), bwd_.end(), by_ord);
        pool_.clear();
        for (int w : bwd_) pool_.push_back(ord_[w]);
        for (int w : fwd_) pool_.push_back(ord_[w]);
        std::sort(pool_.begin(), pool_.end());
        size_t i = 0;
        for (int w : bwd_) place(w, pool_[i++]);
        for (int w : fwd_) place(w, pool_[i++]);
    }

    void place(int node, int pos) {
        ord_[node] = pos;
        node_at_[pos] = node;
    }

    int nv_ = 0;
    std::vector<std::vector<int>> adj_, radj_;
    std::vector<int> ord_, node_at_;
    std::vector<unsigned> stamp_;
    unsigned epoch_ = 0;
    std::vector<int> fwd_, bwd_, work_, pool_;
};

// One placement slot: the unique edge with the given first label into the
// given target vertex.
struct Slot {
    EdgeId first;
    int target;      // vertex id (path id or block-relative global id)
    int forced_src;  // >= 0 when a fixed-point constraint forces (src, second)
    EdgeId forced_second;
};

struct Candidate {
    int src;
    EdgeId second;
};

// Immutable per-search tables shared by all workers.
struct Plan {
    const Graph* g = nullptr;
    int level = 1;
    SearchConfig::Mode mode;
    bool sync_prune = true;
    int n_vertices = 0;
    std::vector<Slot> slots;
    std::vector<std::vector<Candidate>> candidates;  // per slot
    std::vector<int> slot_group;                     // generator group of the slot's label
    std::vector<int> block_of;                       // per vertex (Psi only)
    std::vector<int> block_sizes;                    // Psi only
    std::vector<int> block_start;                    // Psi only
    // Subalgebra typing (Phi only): path type per vertex, group per edge.
    bool typed = false;
    int n_groups = 0, n_utypes = 0;
    std::vector<int> vtype, edge_group;
    // Vertex tables for emission (Phi only).
    std::shared_ptr<const PathTable> vt, pk;
    int split_slots = 0;  // serial prefix depth for the parallel split
};

struct State {
    const Plan* plan;
    std::vector<LabeledEdge> edges;
    std::vector<std::uint64_t> second_used;               // per source vertex
    std::vector<std::vector<int>> by_label[2];            // label -> edge ids
    std::vector<std::pair<int, int>> arc_log[2];
    std::vector<int> outdeg;
    std::vector<int> used_count;  // per block (Psi)
    // Typed pruning: utype -> (input group, range type), -1 when unset.
    std::vector<int> type_group, type_vtype;
    std::vector<int> type_log;  // utype set per placement, -1 for none
    PairPK pair[2];

    explicit State(const Plan& p) : plan(&p) {
        second_used.assign(p.n_vertices, 0);
        by_label[0].assign(p.g->num_edges(), {});
        by_label[1].assign(p.g->num_edges(), {});
        outdeg.assign(p.n_vertices, 0);
        used_count.assign(p.block_sizes.size(), 0);
        if (p.typed) {
            type_group.assign(p.n_utypes, -1);
            type_vtype.assign(p.n_utypes, -1);
        }
        if (p.sync_prune) {
            pair[0].init(p.n_vertices);
            pair[1].init(p.n_vertices);
        }
    }

    bool try_place(const Slot& slot, const Candidate& cand, int slot_group) {
        const Plan& p = *plan;
        if (second_used[cand.src] & (1ull << cand.second)) return false;
        int typed_key = -1;
        if (p.typed) {
            int ut = p.vtype[cand.src] * p.n_groups + p.edge_group[cand.second];
            if (type_group[ut] == -1) {
                typed_key = ut;
            } else if (type_group[ut] != slot_group ||
                       type_vtype[ut] != p.vtype[slot.target]) {
                return false;
            }
        }
        int id = static_cast<int>(edges.size());
        if (p.sync_prune) {
            size_t mark0 = arc_log[0].size(), mark1 = arc_log[1].size();
            auto add_arcs = [&](int which, EdgeId label, int src, int dst) {
                auto& pk = pair[which];
                for (int j : by_label[which][label]) {
                    const auto& ej = edges[j];
                    if (ej.src == src || ej.dst == dst) continue;
                    int u = pk.node(ej.src, src), v = pk.node(ej.dst, dst);
                    if (!pk.insert(u, v)) return false;
                    arc_log[which].push_back({u, v});
                }
                return true;
            };
            if (!add_arcs(0, slot.first, cand.src, slot.target) ||
                !add_arcs(1, cand.second, cand.src, slot.target)) {
                unwind_arcs(0, mark0);
                unwind_arcs(1, mark1);
                return false;
            }
        }
        edges.push_back({cand.src, slot.target, slot.first, cand.second});
        second_used[cand.src] |= 1ull << cand.second;
        by_label[0][slot.first].push_back(id);
        by_label[1][cand.second].push_back(id);
        if (p.typed) {
            if (typed_key >= 0) {
                type_group[typed_key] = slot_group;
                type_vtype[typed_key] = p.vtype[slot.target];
            }
            type_log.push_back(typed_key);
        }
        if (!p.block_of.empty()) {
            if (outdeg[cand.src]++ == 0) ++used_count[p.block_of[cand.src]];
        } else {
            ++outdeg[cand.src];
        }
        return true;
    }

    void unplace() {
        const Plan& p = *plan;
        LabeledEdge e = edges.back();
        edges.pop_back();
        second_used[e.src] &= ~(1ull << e.second);
        by_label[0][e.first].pop_back();
        by_label[1][e.second].pop_back();
        if (p.typed) {
            int key = type_log.back();
            type_log.pop_back();
            if (key >= 0) {
                type_group[key] = -1;
                type_vtype[key] = -1;
            }
        }
        if (--outdeg[e.src] == 0 && !p.block_of.empty()) --used_count[p.block_of[e.src]];
        if (p.sync_prune) {
            // One placement added a contiguous tail of each arc log.
            size_t n0 = count_tail(0, static_cast<int>(edges.size()));
            size_t n1 = count_tail(1, static_cast<int>(edges.size()));
            unwind_arcs(0, arc_log[0].size() - n0);
            unwind_arcs(1, arc_log[1].size() - n1);
        }
    }

private:
    // Arcs contributed by the edge being removed are exactly those appended
    // since it was placed; count them from the per-placement marker stack.
    std::vector<size_t> marker_stack0_, marker_stack1_;

public:
    void push_markers() {
        marker_stack0_.push_back(arc_log[0].size());
        marker_stack1_.push_back(arc_log[1].size());
    }
    size_t count_tail(int which, int) {
        auto& ms = which == 0 ? marker_stack0_ : marker_stack1_;
        size_t mark = ms.back();
        ms.pop_back();
        return arc_log[which].size() - mark;
    }
    void unwind_arcs(int which, size_t downto) {
        auto& log = arc_log[which];
        while (log.size() > downto) {
            pair[which].remove_last(log.back().first, log.back().second);
            log.pop_back();
        }
    }
};

Plan build_plan(const Graph& g, const SearchConfig& config, bool outer) {
    if (g.num_edges() > 63) throw std::runtime_error("searches support at most 63 edges");
    auto valid = g.validate();
    if (!valid.valid()) throw std::runtime_error("invalid graph:\n" + valid.to_string());
    if (config.level < 1) throw std::runtime_error("level must be >= 1");

    Plan p;
    p.g = &g;
    p.level = config.level;
    p.mode = config.mode;
    p.sync_prune = config.mode != SearchConfig::Endomorphisms;
    p.vt = std::make_shared<const PathTable>(g, config.level - 1);
    int V = g.num_vertices();

    if (config.subalgebra) {
        if (outer)
            throw std::runtime_error("subalgebra constraints require all-automorphisms mode");
        const auto& groups = config.subalgebra->groups;
        p.n_groups = static_cast<int>(groups.size());
        p.edge_group.assign(g.num_edges(), -1);
        for (int i = 0; i < p.n_groups; ++i)
            for (EdgeId e : groups[i]) {
                if (e < 0 || e >= g.num_edges() || p.edge_group[e] != -1)
                    throw std::runtime_error("generators must partition the edge set");
                p.edge_group[e] = i;
            }
        for (EdgeId e = 0; e < g.num_edges(); ++e)
            if (p.edge_group[e] == -1)
                throw std::runtime_error("generators must partition the edge set");
        p.vtype.assign(p.vt->size(), 0);
        int vt_types = 1;
        for (int i = 1; i < config.level; ++i) vt_types *= p.n_groups;
        for (int v = 0; v < p.vt->size(); ++v) {
            int t = 0;
            for (EdgeId e : p.vt->edges(v)) t = t * p.n_groups + p.edge_group[e];
            p.vtype[v] = t;
        }
        p.n_utypes = vt_types * p.n_groups;
        p.typed = true;
    }

    if (outer) {
        if (config.constraint)
            throw std::runtime_error("fixed-point constraints require all-automorphisms mode");
        p.block_sizes.assign(V * V, 0);
        for (int c = 0; c < V * V; ++c)
            p.block_sizes[c] = static_cast<int>(p.vt->class_members(c).size());
        p.block_start.assign(V * V, 0);
        int acc = 0;
        for (int c = 0; c < V * V; ++c) {
            p.block_start[c] = acc;
            acc += p.block_sizes[c];
        }
        p.n_vertices = acc;
        p.block_of.resize(acc);
        for (int c = 0; c < V * V; ++c)
            for (int i = 0; i < p.block_sizes[c]; ++i) p.block_of[p.block_start[c] + i] = c;
        // Slots in (label, range vertex, block index) order; candidate
        // sources are filtered by the first-use rule at search time.
        for (int m = 0; m < g.num_edges(); ++m) {
            EdgeId em = g.edge_at_rank(m);
            VertexId rm = g.range(em), sm = g.source(em);
            for (VertexId vn = 0; vn < V; ++vn) {
                int blk = rm * V + vn;
                for (int i = 0; i < p.block_sizes[blk]; ++i) {
                    Slot s{em, p.block_start[blk] + i, -1, -1};
                    std::vector<Candidate> cands;
                    for (VertexId q = 0; q < V; ++q) {
                        int sblk = sm * V + q;
                        if (!p.block_sizes[sblk]) continue;
                        for (int l = 0; l < p.block_sizes[sblk]; ++l)
                            for (EdgeId f : g.edges_between(q, vn))
                                cands.push_back({p.block_start[sblk] + l, f});
                    }
                    p.slots.push_back(s);
                    p.candidates.push_back(std::move(cands));
                }
            }
        }
    } else {
        p.n_vertices = p.vt->size();
        p.pk = std::make_shared<const PathTable>(g, config.level);
        std::vector<char> fixed_prefix(g.num_edges(), 0);
        if (config.constraint)
            for (EdgeId e : config.constraint->prefixes) fixed_prefix[e] = 1;
        // Forced placements go first: they prune every free branch below.
        std::vector<int> label_order;
        for (int pass = 1; pass >= 0; --pass)
            for (int m = 0; m < g.num_edges(); ++m)
                if (fixed_prefix[g.edge_at_rank(m)] == pass) label_order.push_back(m);
        for (int m : label_order) {
            EdgeId em = g.edge_at_rank(m);
            for (int alpha : p.vt->from_source(g.range(em))) {
                Slot s{em, alpha, -1, -1};
                std::vector<Candidate> cands;
                if (fixed_prefix[em]) {
                    // tau fixes e.alpha: the edge is beta = (e.alpha)_{1..k-1},
                    // second = last edge of e.alpha.
                    if (p.level == 1) {
                        s.forced_src = *p.vt->find_vertex_path(g.source(em));
                        s.forced_second = em;
                    } else {
                        std::vector<EdgeId> mu{em};
                        const auto& ae = p.vt->edges(alpha);
                        mu.insert(mu.end(), ae.begin(), ae.end());
                        s.forced_src =
                            *p.vt->find(std::vector<EdgeId>(mu.begin(), mu.end() - 1));
                        s.forced_second = mu.back();
                    }
                    cands.push_back({s.forced_src, s.forced_second});
                } else {
                    for (int beta : p.vt->from_source(g.source(em)))
                        for (EdgeId f : g.edges_between(p.vt->range(beta), p.vt->range(alpha)))
                            cands.push_back({beta, f});
                }
                p.slots.push_back(s);
                p.candidates.push_back(std::move(cands));
            }
        }
    }
    p.slot_group.assign(p.slots.size(), -1);
    if (p.typed)
        for (size_t s = 0; s < p.slots.size(); ++s)
            p.slot_group[s] = p.edge_group[p.slots[s].first];
    // Parallel split point: after the first label's placements.
    p.split_slots = 0;
    if (!p.slots.empty()) {
        EdgeId first_label = p.slots[0].first;
        while (p.split_slots < static_cast<int>(p.slots.size()) &&
               p.slots[p.split_slots].first == first_label)
            ++p.split_slots;
    }
    return p;
}

class Driver {
public:
    Driver(const Plan& plan, const SearchConfig& config) : plan_(plan), config_(config) {
        deadline_active_ = config.budget_seconds.has_value();
        if (deadline_active_)
            deadline_ = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(*config.budget_seconds));
    }

    // emit(state) is called on every completed placement, in DFS order.
    SearchStats run(const std::function<void(const State&)>& emit) {
        SearchStats stats;
        if (config_.jobs <= 1 || plan_.split_slots == 0 ||
            plan_.split_slots >= static_cast<int>(plan_.slots.size())) {
            State st(plan_);
            dfs(st, 0, emit, stats.nodes_expanded, stats.emitted);
            return stats;
        }
        // Serial expansion to the split depth, then one subtree per task.
        std::vector<State> frontier;
        std::uint64_t nodes = 0, emitted = 0;
        State st(plan_);
        collect_frontier(st, 0, frontier, nodes);
        stats.nodes_expanded = nodes;

        int workers = std::max(1, config_.jobs);
        std::atomic<size_t> next{0};
        std::atomic<bool> cancel{false};
        std::vector<SearchStats> wstats(workers);
        // Buffered per-subtree emissions, merged afterwards in subtree order.
        std::vector<std::vector<std::vector<LabeledEdge>>> buffers(frontier.size());
        std::string error;
        std::mutex error_mu;

        auto work = [&](int wid) {
            try {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= frontier.size() || cancel.load()) break;
                    State local = frontier[i];
                    local.plan = &plan_;
                    std::function<void(const State&)> buffer_emit;
                    if (emit) buffer_emit = [&, i](const State& s) { buffers[i].push_back(s.edges); };
                    dfs(local, plan_.split_slots, buffer_emit, wstats[wid].nodes_expanded,
                        wstats[wid].emitted);
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(error_mu);
                if (error.empty()) error = e.what();
                cancel.store(true);
            }
        };
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
        for (auto& t : threads) t.join();
        if (!error.empty()) throw BudgetError(error, stats.nodes_expanded);
        for (const auto& ws : wstats) {
            stats.nodes_expanded += ws.nodes_expanded;
            stats.emitted += ws.emitted;
        }
        (void)emitted;
        // Deterministic merge: subtree order equals the serial DFS order.
        if (emit) {
            State replay(plan_);
            for (size_t i = 0; i < frontier.size(); ++i)
                for (auto& edges : buffers[i]) {
                    replay.edges = std::move(edges);
                    emit(replay);
                }
        }
        return stats;
    }

private:
    void tick(std::uint64_t& nodes) {
        if ((++nodes & 1023) == 0) {
            if (deadline_active_ && std::chrono::steady_clock::now() > deadline_)
                throw BudgetError("search budget exhausted", nodes);
            if (config_.progress && progress_mu_.try_lock()) {
                auto now = std::chrono::steady_clock::now();
                if (now - last_progress_ > std::chrono::seconds(1)) {
                    last_progress_ = now;
                    config_.progress(nodes);
                }
                progress_mu_.unlock();
            }
        }
    }

    void dfs(State& st, int slot_idx, const std::function<void(const State&)>& emit,
             std::uint64_t& nodes, std::uint64_t& emitted) {
        if (slot_idx == static_cast<int>(plan_.slots.size())) {
            ++emitted;
            if (emit) emit(st);
            return;
        }
        tick(nodes);
        const Slot& slot = plan_.slots[slot_idx];
        for (const Candidate& cand : plan_.candidates[slot_idx]) {
            if (!plan_.block_of.empty()) {
                // First-use rule: sources of each block are opened in order.
                int blk = plan_.block_of[cand.src];
                int rel = cand.src - plan_.block_start[blk];
                if (rel > st.used_count[blk]) continue;
            }
            st.push_markers();
            if (!st.try_place(slot, cand, plan_.slot_group[slot_idx])) {
                st.count_tail(0, 0);
                st.count_tail(1, 0);
                continue;
            }
            dfs(st, slot_idx + 1, emit, nodes, emitted);
            st.unplace();
        }
    }

    void collect_frontier(State& st, int slot_idx, std::vector<State>& out, std::uint64_t& nodes) {
        if (slot_idx == plan_.split_slots) {
            out.push_back(st);
            return;
        }
        tick(nodes);
        const Slot& slot = plan_.slots[slot_idx];
        for (const Candidate& cand : plan_.candidates[slot_idx]) {
            if (!plan_.block_of.empty()) {
                int blk = plan_.block_of[cand.src];
                if (cand.src - plan_.block_start[blk] > st.used_count[blk]) continue;
            }
            st.push_markers();
            if (!st.try_place(slot, cand, plan_.slot_group[slot_idx])) {
                st.count_tail(0, 0);
                st.count_tail(1, 0);
                continue;
            }
            collect_frontier(st, slot_idx + 1, out, nodes);
            st.unplace();
        }
    }

    const Plan& plan_;
    const SearchConfig& config_;
    bool deadline_active_ = false;
    std::chrono::steady_clock::time_point deadline_;
    std::mutex progress_mu_;
    std::chrono::steady_clock::time_point last_progress_ = std::chrono::steady_clock::now();
};

PathPerm perm_of_state(const Plan& plan, const std::vector<LabeledEdge>& edges) {
    std::vector<int> image(plan.pk->size(), -1);
    for (const auto& e : edges) {
        std::vector<EdgeId> in{e.first};
        const auto& ae = plan.vt->edges(e.dst);
        in.insert(in.end(), ae.begin(), ae.end());
        std::vector<EdgeId> out(plan.vt->edges(e.src));
        out.push_back(e.second);
        image[*plan.pk->find(in)] = *plan.pk->find(out);
    }
    return PathPerm::from_global_map(plan.pk, image);
}

OrderedPermutationGraph og_of_state(const Plan& plan, const std::vector<LabeledEdge>& edges) {
    OrderedPermutationGraph og;
    og.level = plan.level;
    og.base = plan.g;
    og.block_sizes = plan.block_sizes;
    for (const auto& e : edges)
        og.edges.push_back({plan.block_of[e.src], e.src - plan.block_start[plan.block_of[e.src]],
                            plan.block_of[e.dst], e.dst - plan.block_start[plan.block_of[e.dst]],
                            e.first, e.second});
    return og;
}

}  // namespace

SearchStats enumerate_automorphisms(const Graph& g, const SearchConfig& config,
                                    const std::function<void(const PathPerm&)>& emit) {
    SearchConfig cfg = config;
    if (cfg.mode == SearchConfig::OuterClasses) cfg.mode = SearchConfig::Automorphisms;
    if (cfg.mode == SearchConfig::Endomorphisms) {
        BigInt total = count_endpoint_fixing(g, cfg.level);
        if (total > cfg.endomorphism_cap)
            throw std::runtime_error("endomorphism enumeration of size " + total.str() +
                                     " exceeds cap " + cfg.endomorphism_cap.str());
    }
    Plan plan = build_plan(g, cfg, false);
    Driver driver(plan, cfg);
    return driver.run(emit ? std::function<void(const State&)>([&](const State& st) {
        emit(perm_of_state(plan, st.edges));
    })
                           : std::function<void(const State&)>());
}

SearchStats enumerate_outer_classes(const Graph& g, const SearchConfig& config,
                                    const std::function<void(const OrderedPermutationGraph&)>& emit) {
    SearchConfig cfg = config;
    cfg.mode = SearchConfig::OuterClasses;
    Plan plan = build_plan(g, cfg, true);
    Driver driver(plan, cfg);
    return driver.run(emit ? std::function<void(const State&)>([&](const State& st) {
        emit(og_of_state(plan, st.edges));
    })
                           : std::function<void(const State&)>());
}

std::vector<EdgeId> parse_edge_permutation(const Graph& g, const std::string& cycles) {
    std::vector<EdgeId> image(g.num_edges());
    std::iota(image.begin(), image.end(), 0);
    std::string trimmed;
    for (char c : cycles)
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed == "Id" || trimmed == "id" || trimmed.empty()) return image;
    std::vector<EdgeId> cycle;
    std::string cur;
    std::vector<char> used(g.num_edges(), 0);
    auto flush_name = [&] {
        auto e = g.find_edge(cur);
        if (!e) throw std::runtime_error("unknown edge '" + cur + "' in symmetry");
        if (used[*e]) throw std::runtime_error("edge '" + cur + "' repeated in symmetry");
        used[*e] = 1;
        cycle.push_back(*e);
        cur.clear();
    };
    for (size_t i = 0; i < trimmed.size(); ++i) {
        char c = trimmed[i];
        if (c == '(') {
            cycle.clear();
        } else if (c == ',' || c == ')') {
            flush_name();
            if (c == ')')
                for (size_t j = 0; j < cycle.size(); ++j)
                    image[cycle[j]] = cycle[(j + 1) % cycle.size()];
        } else {
            cur += c;
        }
    }
    return image;
}

OrderedPermutationGraph act_by_symmetry(const OrderedPermutationGraph& og,
                                        const std::vector<EdgeId>& edge_map) {
    const Graph& g = *og.base;
    if (static_cast<int>(edge_map.size()) != g.num_edges())
        throw std::runtime_error("edge permutation size mismatch");
    int V = g.num_vertices();
    // The edge permutation must preserve incidences via a vertex bijection.
    std::vector<VertexId> vmap(V, -1);
    auto edge_image = [&](EdgeId e) { return edge_map[e]; };
    auto bind = [&](VertexId from, VertexId to) {
        if (vmap[from] == -1) vmap[from] = to;
        if (vmap[from] != to)
            throw std::runtime_error("edge permutation is not a graph automorphism");
    };
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        EdgeId ie = edge_image(e);
        bind(g.source(e), g.source(ie));
        bind(g.range(e), g.range(ie));
    }
    // Post-composition with the symmetry relabels the second track and the
    // vertex blocks; renumbering restores the canonical form.
    DLGraph dl = og.as_dlgraph();
    for (auto& e : dl.edges) e.second = edge_image(e.second);
    std::vector<int> block_of(dl.n_vertices);
    for (int v = 0; v < dl.n_vertices; ++v) {
        int b = og.block_of_vertex(v);
        block_of[v] = vmap[b / V] * V + vmap[b % V];
    }
    return canonical_ordered_graph(dl, og.level, block_of);
}

std::vector<int> quotient_by_graph_symmetries(const std::vector<OrderedPermutationGraph>& classes,
                                              const std::vector<std::vector<EdgeId>>& symmetries) {
    std::set<std::string> seen;
    std::vector<int> reps;
    for (int i = 0; i < static_cast<int>(classes.size()); ++i) {
        if (seen.count(classes[i].serialize())) continue;
        reps.push_back(i);
        // Orbit closure under the generating set.
        std::vector<OrderedPermutationGraph> queue{classes[i]};
        seen.insert(classes[i].serialize());
        while (!queue.empty()) {
            OrderedPermutationGraph og = std::move(queue.back());
            queue.pop_back();
            for (const auto& sym : symmetries) {
                OrderedPermutationGraph img = act_by_symmetry(og, sym);
                if (seen.insert(img.serialize()).second) queue.push_back(img);
            }
        }
    }
    return reps;
}

}  // namespace permweyl
