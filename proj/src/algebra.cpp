#include "permweyl/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace permweyl {

Word Word::path(const Graph& g, std::vector<EdgeId> es) {
    if (es.empty()) throw std::invalid_argument("empty edge list; use Word::vertex");
    Word w;
    w.src = g.source(es.front());
    w.dst = g.range(es.back());
    for (size_t i = 0; i + 1 < es.size(); ++i)
        if (g.range(es[i]) != g.source(es[i + 1]))
            throw std::invalid_argument("edges do not compose into a path");
    w.edges = std::move(es);
    return w;
}

std::string Word::name(const Graph& g) const {
    if (edges.empty()) return g.vertex_name(src);
    std::string out;
    bool plain = g.single_char_edge_names();
    for (size_t i = 0; i < edges.size(); ++i) {
        if (i && !plain) out += '.';
        out += g.edge_name(edges[i]);
    }
    return out;
}

namespace {

Word concat(const Word& a, const Word& b) {
    if (a.dst != b.src) throw std::invalid_argument("word endpoints do not match");
    Word w;
    w.src = a.src;
    w.dst = b.dst;
    w.edges = a.edges;
    w.edges.insert(w.edges.end(), b.edges.begin(), b.edges.end());
    return w;
}

bool is_prefix(const Word& a, const Word& b) {
    if (a.src != b.src || a.edges.size() > b.edges.size()) return false;
    return std::equal(a.edges.begin(), a.edges.end(), b.edges.begin());
}

Word suffix_after(const Graph& g, const Word& whole, const Word& prefix) {
    if (whole.edges.size() == prefix.edges.size()) return Word::vertex(whole.dst);
    return Word::path(g, std::vector<EdgeId>(whole.edges.begin() + prefix.edges.size(),
                                             whole.edges.end()));
}

std::string render_word(const Graph& g, const Word& w, bool adjoint) {
    std::string s = w.edges.empty() ? "P_" + w.name(g) : "S_" + w.name(g);
    if (adjoint && !w.edges.empty()) s += "*";
    return s;
}

}  // namespace

std::string SymbolicSum::render(const Graph& g) const {
    std::string out;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (i) out += " + ";
        const auto& t = terms[i];
        std::string part;
        if (!t.beta.edges.empty()) part += render_word(g, t.beta, false) + " ";
        part += render_word(g, t.delta, false);
        if (!t.alpha.edges.empty()) part += " " + render_word(g, t.alpha, true);
        out += part;
    }
    if (collapsed) out += "  =  S_" + collapsed->name(g);
    return out;
}

std::string SymbolicSum::to_json(const Graph& g) const {
    nlohmann::json j;
    j["terms"] = nlohmann::json::array();
    for (const auto& t : terms)
        j["terms"].push_back(
            {{"beta", t.beta.name(g)}, {"delta", t.delta.name(g)}, {"alpha", t.alpha.name(g)}});
    if (collapsed) j["collapsed"] = "S_" + collapsed->name(g);
    return j.dump();
}

namespace {

Word word_of_vertex_path(const PathTable& vt, int v) {
    if (vt.level() == 0) return Word::vertex(vt.source(v));
    Word w;
    w.src = vt.source(v);
    w.dst = vt.range(v);
    w.edges = vt.edges(v);
    return w;
}

// Collapse detection: a family {(beta_i, delta_i, alpha_i)} sums to S_w
// exactly when every term satisfies beta.delta = w.alpha and the alphas
// exhaust the level-(k-1) paths from r(w).
void detect_collapse(const Graph& g, const PathTable& vt, SymbolicSum& sum) {
    if (sum.terms.empty()) return;
    std::optional<Word> w;
    std::set<std::vector<EdgeId>> alphas;
    for (const auto& t : sum.terms) {
        std::vector<EdgeId> lhs = t.beta.edges;
        lhs.insert(lhs.end(), t.delta.edges.begin(), t.delta.edges.end());
        if (lhs.size() < t.alpha.edges.size() + 1) return;
        size_t wl = lhs.size() - t.alpha.edges.size();
        if (!std::equal(t.alpha.edges.begin(), t.alpha.edges.end(), lhs.begin() + wl)) return;
        Word cand = Word::path(g, std::vector<EdgeId>(lhs.begin(), lhs.begin() + wl));
        if (w && !(cand == *w)) return;
        w = cand;
        alphas.insert(t.alpha.edges);
    }
    size_t expected = 0;
    for (int v = 0; v < vt.size(); ++v)
        if (vt.source(v) == w->dst) ++expected;
    if (alphas.size() == sum.terms.size() && alphas.size() == expected) sum.collapsed = w;
}

}  // namespace

SymbolicSum image_of_path(const PermutationGraph& pg, const std::vector<EdgeId>& gamma) {
    const Graph& g = pg.base();
    const PathTable& vt = *pg.vertex_table();
    for (size_t i = 0; i + 1 < gamma.size(); ++i)
        if (g.range(gamma[i]) != g.source(gamma[i + 1]))
            throw std::runtime_error("not a path over the base graph");
    // A path over the permutation graph with a given first-label word is
    // determined by its final vertex; walk backwards from every vertex.
    std::map<std::pair<int, EdgeId>, const LabeledEdge*> into;
    for (const auto& e : pg.edges()) into[{e.dst, e.first}] = &e;
    SymbolicSum sum;
    for (int end = 0; end < vt.size(); ++end) {
        int cur = end;
        std::vector<EdgeId> second(gamma.size());
        bool ok = true;
        for (int j = static_cast<int>(gamma.size()) - 1; j >= 0; --j) {
            auto it = into.find({cur, gamma[j]});
            if (it == into.end()) {
                ok = false;
                break;
            }
            second[j] = it->second->second;
            cur = it->second->src;
        }
        if (!ok) continue;
        SymbolicSum::Term t;
        t.beta = word_of_vertex_path(vt, cur);
        t.delta = Word::path(g, second);
        t.alpha = word_of_vertex_path(vt, end);
        sum.terms.push_back(std::move(t));
    }
    std::sort(sum.terms.begin(), sum.terms.end());
    detect_collapse(g, vt, sum);
    return sum;
}

SymbolicSum image_of_edge(const PermutationGraph& pg, EdgeId e) {
    if (e < 0 || e >= pg.base().num_edges()) throw std::runtime_error("unknown edge");
    return image_of_path(pg, {e});
}

namespace {

// Backward walk over a permutation graph: the unique path with the given
// first-label word ending at `end`. Returns (source vertex, second labels).
struct BackWalk {
    int source;
    std::vector<EdgeId> second;
};
std::optional<BackWalk> walk_first_label(
    const std::map<std::pair<int, EdgeId>, const LabeledEdge*>& into,
    const std::vector<EdgeId>& word, int end) {
    BackWalk w;
    w.second.resize(word.size());
    int cur = end;
    for (int j = static_cast<int>(word.size()) - 1; j >= 0; --j) {
        auto it = into.find({cur, word[j]});
        if (it == into.end()) return std::nullopt;
        w.second[j] = it->second->second;
        cur = it->second->src;
    }
    w.source = cur;
    return w;
}

std::vector<std::vector<EdgeId>> base_paths_from(const Graph& g, VertexId v, int len) {
    std::vector<std::vector<EdgeId>> out;
    std::vector<EdgeId> cur;
    auto rec = [&](auto&& self, VertexId at, int depth) -> void {
        if (depth == len) {
            out.push_back(cur);
            return;
        }
        for (EdgeId e : g.out_edges(at)) {
            cur.push_back(e);
            self(self, g.range(e), depth + 1);
            cur.pop_back();
        }
    };
    rec(rec, v, 0);
    return out;
}

}  // namespace

PathPerm compose_perms(const PathPerm& outer, const PathPerm& inner) {
    const Graph& g = outer.paths().graph();
    if (&g != &inner.paths().graph()) throw std::runtime_error("base graph mismatch");
    int l = outer.level(), k = inner.level();
    PermutationGraph pgo = PermutationGraph::build(outer);
    std::map<std::pair<int, EdgeId>, const LabeledEdge*> into;
    for (const auto& e : pgo.edges()) into[{e.dst, e.first}] = &e;
    const PathTable& vt_out = *pgo.vertex_table();  // E^{l-1}
    PathTable vt_in(g, k - 1);
    auto pk = std::make_shared<const PathTable>(g, k + l - 1);
    std::vector<int> image(pk->size(), -1);

    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        for (int a = 0; a < vt_in.size(); ++a) {
            if (vt_in.source(a) != g.range(e)) continue;
            // beta f = image of e.alpha under the inner permutation
            std::vector<EdgeId> in_word{e};
            const auto& ae = vt_in.edges(a);
            in_word.insert(in_word.end(), ae.begin(), ae.end());
            int in_id = *inner.paths().find(in_word);
            const auto& out_word = inner.paths().edges(inner.apply(in_id));
            std::vector<EdgeId> beta_f(out_word.begin(), out_word.end());
            for (int rho = 0; rho < vt_out.size(); ++rho) {
                if (vt_out.source(rho) != vt_in.range(a)) continue;
                auto A = walk_first_label(into, ae, rho);
                auto B = walk_first_label(into, beta_f, rho);
                if (!A || !B)
                    throw std::logic_error("missing lift in permutation-graph composition");
                // composite input e . delta . alpha', output gamma . beta' . g
                std::vector<EdgeId> in_c{e};
                const auto& d = vt_out.edges(A->source);
                in_c.insert(in_c.end(), d.begin(), d.end());
                in_c.insert(in_c.end(), A->second.begin(), A->second.end());
                std::vector<EdgeId> out_c(vt_out.edges(B->source));
                out_c.insert(out_c.end(), B->second.begin(), B->second.end());
                image[*pk->find(in_c)] = *pk->find(out_c);
            }
        }
    }
    return PathPerm::from_global_map(pk, image);
}

PermutationGraph compose(const PermutationGraph& outer, const PermutationGraph& inner) {
    return PermutationGraph::build(compose_perms(recover_permutation(outer),
                                                 recover_permutation(inner)));
}

namespace {

// Monomial algebra over S_u S_v* words, enough to evaluate the inverse
// construction: products reduce by prefix cancellation, sums stay 0/1.
struct Monomial {
    Word u, v;
    auto operator<=>(const Monomial&) const = default;
};

using MonSum = std::vector<Monomial>;

std::optional<Monomial> mon_mul(const Graph& g, const Monomial& a, const Monomial& b) {
    if (is_prefix(a.v, b.u)) return Monomial{concat(a.u, suffix_after(g, b.u, a.v)), b.v};
    if (is_prefix(b.u, a.v)) return Monomial{a.u, concat(b.v, suffix_after(g, a.v, b.u))};
    return std::nullopt;
}

MonSum sum_mul(const Graph& g, const MonSum& a, const MonSum& b) {
    MonSum out;
    for (const auto& x : a)
        for (const auto& y : b)
            if (auto m = mon_mul(g, x, y)) out.push_back(*m);
    return out;
}

}  // namespace

PathPerm inverse(const PermutationGraph& pg) {
    const Graph& g = pg.base();
    DLGraph dl = DLGraph::of(pg);
    for (Labeling lab : {Labeling::First, Labeling::Second}) {
        auto sync = is_synchronizing(dl, lab);
        if (!sync.synchronizing) {
            std::ostringstream os;
            os << "not an automorphism: two distinct equal-labeled cycles in the "
               << (lab == Labeling::First ? "first" : "second") << " label; cycle edges";
            for (int i : sync.witness->cycle1) os << " " << i;
            os << " vs";
            for (int i : sync.witness->cycle2) os << " " << i;
            throw std::runtime_error(os.str());
        }
    }
    int k = pg.level();
    int l = std::max({1, synchronization_delay(dl, Labeling::First),
                      synchronization_delay(dl, Labeling::Second)});
    const PathTable& vt = *pg.vertex_table();

    std::map<std::pair<int, EdgeId>, const LabeledEdge*> by_src_second;
    for (const auto& e : pg.edges()) by_src_second[{e.src, e.second}] = &e;
    // Unique path from a vertex with the given second-label word.
    auto walk_second = [&](int v0, const std::vector<EdgeId>& word) {
        std::vector<EdgeId> first(word.size());
        int cur = v0;
        for (size_t j = 0; j < word.size(); ++j) {
            auto it = by_src_second.find({cur, word[j]});
            if (it == by_src_second.end()) throw std::logic_error("missing second-label lift");
            first[j] = it->second->first;
            cur = it->second->dst;
        }
        return std::pair<std::vector<EdgeId>, int>{first, cur};
    };
    auto vertex_of_prefix = [&](const std::vector<EdgeId>& w) {
        if (k == 1) return *vt.find_vertex_path(g.source(w.front()));
        return *vt.find(std::vector<EdgeId>(w.begin(), w.begin() + (k - 1)));
    };
    auto word_of = [&](const std::vector<EdgeId>& es) { return Word::path(g, es); };

    std::vector<std::vector<const LabeledEdge*>> out_adj(vt.size());
    for (const auto& e : pg.edges()) out_adj[e.src].push_back(&e);

    // q_W: a diagonal projection sum with lambda(q_W) = P_W.
    auto q_of = [&](const std::vector<EdgeId>& W) {
        int v0 = vertex_of_prefix(W);
        auto [nu, alpha] = walk_second(v0, std::vector<EdgeId>(W.begin() + (k - 1), W.end()));
        // First labels of every length-l permutation-graph path from alpha.
        std::set<std::vector<EdgeId>> gammas;
        std::vector<EdgeId> cur;
        auto rec = [&](auto&& self, int at, int depth) -> void {
            if (depth == l) {
                gammas.insert(cur);
                return;
            }
            for (const auto* e : out_adj[at]) {
                cur.push_back(e->first);
                self(self, e->dst, depth + 1);
                cur.pop_back();
            }
        };
        rec(rec, alpha, 0);
        MonSum q;
        for (const auto& gm : gammas) {
            std::vector<EdgeId> w = nu;
            w.insert(w.end(), gm.begin(), gm.end());
            Word ww = word_of(w);
            q.push_back({ww, ww});
        }
        return q;
    };

    // Preimage of S_mu S_nu* via the synchronization-delay window.
    auto preimage_mu_nu = [&](const std::vector<EdgeId>& mu, const std::vector<EdgeId>& nu) {
        auto [mubar, alpha] = walk_second(vertex_of_prefix(mu),
                                          std::vector<EdgeId>(mu.begin() + (k - 1), mu.end()));
        auto [nubar, beta] = walk_second(vertex_of_prefix(nu),
                                         std::vector<EdgeId>(nu.begin() + (k - 1), nu.end()));
        MonSum total;
        for (const auto& gamma : base_paths_from(g, g.range(mu.back()), l)) {
            std::vector<EdgeId> g1 = walk_second(alpha, gamma).first;
            std::vector<EdgeId> g2 = walk_second(beta, gamma).first;
            std::vector<EdgeId> u = mubar;
            u.insert(u.end(), g1.begin(), g1.end());
            std::vector<EdgeId> v = nubar;
            v.insert(v.end(), g2.begin(), g2.end());
            Monomial middle{word_of(u), word_of(v)};
            std::vector<EdgeId> mug = mu, nug = nu;
            mug.insert(mug.end(), gamma.begin(), gamma.end());
            nug.insert(nug.end(), gamma.begin(), gamma.end());
            MonSum part = sum_mul(g, sum_mul(g, q_of(mug), {middle}), q_of(nug));
            total.insert(total.end(), part.begin(), part.end());
        }
        return total;
    };

    // lambda^{-1}(S_e) = sum over alpha of the preimage of S_{e alpha} S_alpha*.
    std::map<EdgeId, MonSum> preimages;
    size_t max_v = 0;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        MonSum sum;
        for (const auto& alpha : base_paths_from(g, g.range(e), k + l - 1)) {
            std::vector<EdgeId> mu{e};
            mu.insert(mu.end(), alpha.begin(), alpha.end());
            MonSum part = preimage_mu_nu(mu, alpha);
            sum.insert(sum.end(), part.begin(), part.end());
        }
        for (const auto& m : sum) {
            if (m.u.length() != m.v.length() + 1)
                throw std::logic_error("inverse preimage has unexpected bidegree");
            max_v = std::max(max_v, m.v.edges.size());
        }
        preimages[e] = std::move(sum);
    }
    int n = static_cast<int>(max_v) + 1;  // level of the inverse

    auto pn = std::make_shared<const PathTable>(g, n);
    std::vector<int> image(pn->size(), -1);
    for (auto& [e, sum] : preimages) {
        std::set<Monomial> padded;
        for (const auto& m : sum) {
            for (const auto& w : base_paths_from(g, m.v.dst, n - 1 - m.v.length())) {
                Monomial q = m;
                if (!w.empty()) {
                    Word ww = word_of(w);
                    q.u = concat(q.u, ww);
                    q.v = concat(q.v, ww);
                }
                if (!padded.insert(q).second)
                    throw std::logic_error("duplicate monomial in inverse preimage");
            }
        }
        for (const auto& m : padded) {
            std::vector<EdgeId> in{e};
            in.insert(in.end(), m.v.edges.begin(), m.v.edges.end());
            int in_id = *pn->find(in);
            auto out_id = pn->find(m.u.edges);
            if (!out_id || image[in_id] != -1)
                throw std::logic_error("inverse preimage terms do not assemble to a permutation");
            image[in_id] = *out_id;
        }
    }
    PathPerm pi = PathPerm::from_global_map(pn, image);
    if (!compose_perms(recover_permutation(pg), pi).is_identity())
        throw std::logic_error("inverse verification failed");
    return pi;
}

RelationCode compose_ordered(const OrderedPermutationGraph& og1, const OrderedPermutationGraph& og2,
                             std::size_t max_product_edges) {
    if (og1.base != og2.base) throw std::runtime_error("base graph mismatch");
    // phi_1 ∘ phi_2: apply og2's automorphism first.
    return compose_codes(align_code(og2), align_code(og1), max_product_edges);
}

namespace {

long long lcm_capped(long long a, long long b, long long cap) {
    long long g = std::gcd(a, b);
    long long l = a / g;
    if (l > cap / b + 1) return cap + 1;
    l *= b;
    return l > cap ? cap + 1 : l;
}

}  // namespace

OrderResult order_of_code(const RelationCode& base_code, const DLGraph& eval_graph, int level,
                          const OrderOptions& opts) {
    OrderResult res;
    res.bound = opts.bound;
    const Graph& g = *base_code.base;
    PeriodicEvaluator eval(eval_graph, level);

    // The order is a common multiple of the orbit lengths of the induced
    // permutation of every Per_p, so `step` restricts the candidates; the
    // filter deepens on demand and exceeding the bound settles the answer
    // without any code composition.
    long long step = 1;
    int p_done = 0, total_pts = 0;
    auto deepen_one = [&]() -> bool {  // false when no further depth is available
        if (p_done >= opts.max_period) return false;
        auto pts = periodic_points(g, p_done + 1);
        if (p_done >= 1 && total_pts + static_cast<int>(pts.size()) > opts.max_periodic_points)
            return false;
        ++p_done;
        total_pts += static_cast<int>(pts.size());
        std::map<std::vector<EdgeId>, int> index;
        for (int i = 0; i < static_cast<int>(pts.size()); ++i) index[pts[i]] = i;
        std::vector<char> seen(pts.size(), 0);
        for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
            if (seen[i]) continue;
            int len = 0, j = i;
            do {
                seen[j] = 1;
                auto it = index.find(eval.apply(pts[j]));
                if (it == index.end()) throw std::logic_error("periodic image is not periodic");
                j = it->second;
                ++len;
            } while (j != i);
            step = lcm_capped(step, len, opts.bound);
            if (step > opts.bound) return true;
        }
        return true;
    };
    auto deepen_past = [&](long long target) {  // try to push step beyond target
        while (step <= target)
            if (!deepen_one()) return;
    };

    for (int i = 0; i < 3 && step <= opts.bound; ++i)  // cheap initial depths
        if (!deepen_one()) break;
    if (step > opts.bound) {
        res.kind = OrderResult::ExceedsBound;
        return res;
    }

    RelationCode power = base_code;
    int n = 1;
    try {
        for (;;) {
            if (code_is_identity(power)) {
                if (n % step != 0)
                    throw std::logic_error("identity power contradicts the periodic-point filter");
                res.kind = OrderResult::Finite;
                res.value = n;
                return res;
            }
            if (n % step == 0) {
                // A refuted candidate: deepen the filter before composing on.
                deepen_past(n);
            } else if (((n + step - 1) / step) * step - n > 4) {
                // The next candidate is far; spend periodic depth instead of
                // compositions when it can settle the question outright.
                deepen_past(opts.bound);
            }
            if (step > opts.bound) {
                res.kind = OrderResult::ExceedsBound;
                return res;
            }
            if (n >= opts.bound) {
                res.kind = OrderResult::ExceedsBound;
                return res;
            }
            power = compose_codes(power, base_code, opts.state_budget);
            ++n;
        }
    } catch (const BudgetExceeded& e) {
        res.kind = OrderResult::BudgetBreached;
        res.detail = std::string(e.what()) + " while computing power " + std::to_string(n + 1);
        // Orders below the next un-refuted candidate are ruled out: powers
        // 1..n are refuted by the codes, larger non-multiples of `step` by
        // the periodic filter.
        long long next_candidate = ((n / step) + 1) * step;
        res.ruled_out_upto = static_cast<int>(std::min<long long>(opts.bound, next_candidate - 1));
        return res;
    }
}

OrderResult order_of(const OrderedPermutationGraph& og, const OrderOptions& opts) {
    return order_of_code(align_code(og), og.as_dlgraph(), og.level, opts);
}

OrderResult order_of(const PermutationGraph& pg, const OrderOptions& opts) {
    return order_of_code(align_code(pg), DLGraph::of(pg), pg.level(), opts);
}

SubalgebraReport image_in_subalgebra(const PermutationGraph& pg,
                                     const std::vector<std::vector<EdgeId>>& generators) {
    const Graph& g = pg.base();
    std::vector<int> group_of(g.num_edges(), -1);
    for (int i = 0; i < static_cast<int>(generators.size()); ++i)
        for (EdgeId e : generators[i]) {
            if (e < 0 || e >= g.num_edges() || group_of[e] != -1)
                throw std::runtime_error("generators must partition the edge set");
            group_of[e] = i;
        }
    for (EdgeId e = 0; e < g.num_edges(); ++e)
        if (group_of[e] == -1) throw std::runtime_error("generators must partition the edge set");

    int k = pg.level();
    SubalgebraReport rep;
    rep.preserved = true;
    auto type_of = [&](const std::vector<EdgeId>& w) {
        std::vector<int> t(w.size());
        for (size_t i = 0; i < w.size(); ++i) t[i] = group_of[w[i]];
        return t;
    };
    auto render_type = [&](const std::vector<int>& t1, const std::vector<int>& t2) {
        std::string s;
        for (int x : t1) s += "T" + std::to_string(x + 1) + " ";
        for (auto it = t2.rbegin(); it != t2.rend(); ++it) s += "T" + std::to_string(*it + 1) + "* ";
        if (!s.empty()) s.pop_back();
        return s;
    };

    for (int i = 0; i < static_cast<int>(generators.size()) && rep.preserved; ++i) {
        // Raw terms of lambda(T_i) at bidegree (k, k-1).
        std::set<std::pair<std::vector<EdgeId>, std::vector<EdgeId>>> terms;
        for (EdgeId e : generators[i]) {
            for (const auto& t : image_of_edge(pg, e).terms) {
                std::vector<EdgeId> u = t.beta.edges;
                u.insert(u.end(), t.delta.edges.begin(), t.delta.edges.end());
                terms.insert({u, t.alpha.edges});
            }
        }
        // Try bidegrees (p, p-1) for p = k .. k+2: a sum of generator words
        // of any shape normalizes to complete type groups at some p.
        bool done = false;
        for (int p = k; p <= k + 2 && !done; ++p) {
            if (p > k) {
                std::set<std::pair<std::vector<EdgeId>, std::vector<EdgeId>>> padded;
                for (const auto& [u, v] : terms)
                    for (const auto& w :
                         base_paths_from(g, v.empty() ? g.range(u.back()) : g.range(v.back()), 1)) {
                        auto u2 = u, v2 = v;
                        u2.insert(u2.end(), w.begin(), w.end());
                        v2.insert(v2.end(), w.begin(), w.end());
                        padded.insert({u2, v2});
                    }
                terms = std::move(padded);
            }
            std::map<std::pair<std::vector<int>, std::vector<int>>, int> groups;
            for (const auto& [u, v] : terms) groups[{type_of(u), type_of(v)}]++;
            bool complete = true;
            std::string witness;
            for (const auto& [type, count] : groups) {
                // Expected size of the full type expansion with matching range:
                // enumerate u, v of the given group types with r(u) = r(v).
                int expected = 0;
                std::vector<std::vector<EdgeId>> us{{}}, vs{{}};
                auto expand = [&](std::vector<std::vector<EdgeId>>& acc, const std::vector<int>& ty) {
                    for (int grp : ty) {
                        std::vector<std::vector<EdgeId>> next;
                        for (const auto& w : acc)
                            for (EdgeId e : generators[grp]) {
                                if (!w.empty() && g.range(w.back()) != g.source(e)) continue;
                                auto w2 = w;
                                w2.push_back(e);
                                next.push_back(w2);
                            }
                        acc = std::move(next);
                    }
                };
                expand(us, type.first);
                expand(vs, type.second);
                for (const auto& u : us)
                    for (const auto& v : vs)
                        if (v.empty() || g.range(u.back()) == g.range(v.back())) ++expected;
                if (count != expected) {
                    complete = false;
                    witness = "lambda(T_" + std::to_string(i + 1) + ") covers " +
                              std::to_string(count) + " of " + std::to_string(expected) +
                              " terms of shape " + render_type(type.first, type.second);
                    if (p == k + 2) {
                        rep.preserved = false;
                        rep.witness = witness;
                    }
                    break;
                }
            }
            if (complete) {
                std::string rw = "lambda(T_" + std::to_string(i + 1) + ") = ";
                bool first = true;
                for (const auto& [type, count] : groups) {
                    if (!first) rw += " + ";
                    first = false;
                    rw += render_type(type.first, type.second);
                }
                rep.rewrites.push_back(rw);
                done = true;
            }
        }
        if (!done && rep.preserved) {
            rep.preserved = false;
            if (rep.witness.empty())
                rep.witness = "lambda(T_" + std::to_string(i + 1) +
                              ") does not normalize to complete generator-word groups";
        }
    }
    return rep;
}

}  // namespace permweyl
