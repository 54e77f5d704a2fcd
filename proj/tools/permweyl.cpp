#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "permweyl/algebra.hpp"
#include "permweyl/search.hpp"

using namespace permweyl;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return Graph::parse_json(text);
    return Graph::parse_text(text);
}

void repro_header(const Graph& g, const std::string& verb, const std::string& flags) {
    std::ostringstream os;
    os << "# permweyl " << kVersion << " graph=" << std::hex << g.content_hash() << std::dec
       << " verb=" << verb;
    if (!flags.empty()) os << " " << flags;
    std::cerr << os.str() << "\n";
}

std::shared_ptr<const PathTable> table_at(const Graph& g, int level) {
    return std::make_shared<const PathTable>(g, level);
}

std::vector<EdgeId> parse_edge_list(const Graph& g, const std::string& csv) {
    std::vector<EdgeId> out;
    std::string cur;
    std::stringstream ss(csv);
    while (std::getline(ss, cur, ',')) {
        if (cur.empty()) continue;
        auto e = g.find_edge(cur);
        if (!e) throw std::runtime_error("unknown edge '" + cur + "'");
        out.push_back(*e);
    }
    return out;
}

// "a+b+d|c+e+f" -> edge groups.
std::vector<std::vector<EdgeId>> parse_generators(const Graph& g, const std::string& spec) {
    std::vector<std::vector<EdgeId>> groups;
    std::stringstream ss(spec);
    std::string group;
    while (std::getline(ss, group, '|')) {
        std::vector<EdgeId> edges;
        std::stringstream gs(group);
        std::string name;
        while (std::getline(gs, name, '+')) {
            if (name.empty()) continue;
            auto e = g.find_edge(name);
            if (!e) throw std::runtime_error("unknown edge '" + name + "' in generator spec");
            edges.push_back(*e);
        }
        groups.push_back(std::move(edges));
    }
    return groups;
}

std::string path_name(const Graph& g, const std::vector<EdgeId>& edges) {
    std::string out;
    bool plain = g.single_char_edge_names();
    for (size_t i = 0; i < edges.size(); ++i) {
        if (i && !plain) out += '.';
        out += g.edge_name(edges[i]);
    }
    return out;
}

std::string order_to_string(const OrderResult& r) {
    switch (r.kind) {
        case OrderResult::Finite:
            return std::to_string(r.value);
        case OrderResult::ExceedsBound:
            return "exceeds-bound(" + std::to_string(r.bound) + ")";
        default:
            return "budget-breached(ruled out 1.." + std::to_string(r.ruled_out_upto) + ")";
    }
}

json order_to_json(const OrderResult& r) {
    json j;
    j["bound"] = r.bound;
    switch (r.kind) {
        case OrderResult::Finite:
            j["kind"] = "finite";
            j["order"] = r.value;
            break;
        case OrderResult::ExceedsBound:
            j["kind"] = "exceeds-bound";
            break;
        default:
            j["kind"] = "budget-breached";
            j["ruled_out_upto"] = r.ruled_out_upto;
            j["detail"] = r.detail;
            break;
    }
    return j;
}

json sync_to_json(const DLGraph& dl, Labeling which) {
    json j;
    auto res = is_synchronizing(dl, which);
    j["synchronizing"] = res.synchronizing;
    if (res.synchronizing) {
        j["delay"] = synchronization_delay(dl, which);
    } else {
        auto render = [&](const std::vector<int>& cycle) {
            json arr = json::array();
            for (int i : cycle) {
                const auto& e = dl.edges[i];
                arr.push_back({{"from", e.src},
                               {"to", e.dst},
                               {"first", dl.base->edge_name(e.first)},
                               {"second", dl.base->edge_name(e.second)}});
            }
            return arr;
        };
        j["witness"] = {{"cycle1", render(res.witness->cycle1)},
                        {"cycle2", render(res.witness->cycle2)}};
    }
    return j;
}

int default_jobs() {
    if (const char* env = std::getenv("PERMWEYL_JOBS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

struct TableColumn {
    std::vector<std::string> cells;
    size_t width = 0;
};

void print_table(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> width;
    for (const auto& row : rows)
        for (size_t c = 0; c < row.size(); ++c) {
            if (width.size() <= c) width.resize(c + 1, 0);
            width[c] = std::max(width[c], row[c].size());
        }
    for (const auto& row : rows) {
        for (size_t c = 0; c < row.size(); ++c)
            os << (c ? "  " : "") << row[c] << std::string(width[c] - row[c].size(), ' ');
        os << "\n";
    }
}

void run_table_bowtie(const Graph& g, int max_level, int jobs) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"k", "Paths", "Endomorphisms", "Automorphisms", "Classes"});
    for (int k = 1; k <= max_level; ++k) {
        std::vector<std::string> row{std::to_string(k)};
        PathTable pt(g, k);
        row.push_back(std::to_string(pt.size()));
        BigInt endo = count_endpoint_fixing(g, k);
        row.push_back(endo.str());
        if (k <= 4) {
            SearchConfig cfg;
            cfg.level = k;
            cfg.jobs = jobs;
            auto stats = enumerate_outer_classes(g, cfg, nullptr);
            BigInt autos = BigInt(stats.emitted) * count_endpoint_fixing(g, k - 1);
            row.push_back(autos.str());
            row.push_back(std::to_string(stats.emitted));
        } else {
            row.push_back("?");
            row.push_back("?");
        }
        rows.push_back(row);
    }
    print_table(std::cout, rows);
    std::cout << "# paths of length k; endpoint-fixing permutation count; automorphism count\n"
                 "# (for k <= 4 derived as classes x level-(k-1) permutation count); distinct\n"
                 "# equivalence classes from the ordered-graph search.\n";
}

void run_table_o3(const Graph& g, int jobs) {
    SearchConfig cfg;
    cfg.level = 2;
    cfg.jobs = jobs;
    std::vector<OrderedPermutationGraph> classes;
    enumerate_outer_classes(g, cfg,
                            [&](const OrderedPermutationGraph& og) { classes.push_back(og); });
    const char* sym_names[] = {"(a,b)", "(a,c)", "(b,c)", "(a,b,c)", "(a,c,b)"};
    std::vector<std::vector<EdgeId>> syms;
    for (const char* s : sym_names) syms.push_back(parse_edge_permutation(g, s));
    auto reps = quotient_by_graph_symmetries(classes, syms);

    auto p1 = table_at(g, 1);
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"Representative", "phi", "(a,b).phi", "(a,c).phi", "(b,c).phi", "(a,b,c).phi",
                    "(a,c,b).phi"});
    for (int idx : reps) {
        PathPerm tau = classes[idx].representative();
        std::vector<std::string> row{format_cycles(tau)};
        for (const char* c : {"Id", "(a,b)", "(a,c)", "(b,c)", "(a,b,c)", "(a,c,b)"}) {
            PathPerm pi = parse_cycles(p1, c);
            auto res = order_of(PermutationGraph::build(compose_perms(pi, tau)));
            row.push_back(res.kind == OrderResult::Finite ? std::to_string(res.value)
                          : res.kind == OrderResult::ExceedsBound ? "inf"
                                                                  : "?");
        }
        rows.push_back(row);
    }
    print_table(std::cout, rows);
    std::cout << "# " << classes.size() << " outer classes collapse to " << reps.size()
              << " orbits under the six edge permutations; each row lists the orders of\n"
                 "# the induced shift automorphisms composed with those permutations\n"
                 "# (inf = no order up to 100). Representatives are canonical orbit choices.\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"permutative endomorphisms of graph algebras as labeled permutation graphs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::string graph_file, perm_text, perm_a, perm_b, outer_text, inner_text;
    std::string edge_name, path_text, subalgebra, fix_prefixes, quotient_syms;
    int level = 1, outer_level = 1, inner_level = 1, bound = 100, max_level = 5;
    int jobs = default_jobs();
    double budget = 0;
    std::size_t state_budget = 10000000;
    bool as_json = false, as_dot = false, ordered = false, outer = false, endomorphisms = false;
    bool count_only = false, confirm_long = false, counts = false;
    bool table_bowtie = false, table_o3 = false;

    auto add_graph = [&](CLI::App* cmd) {
        cmd->add_option("graph", graph_file, "graph file (text or JSON)")->required();
    };

    auto* validate = app.add_subcommand("validate", "check the structural graph invariants");
    add_graph(validate);
    validate->add_flag("--json", as_json);

    auto* paths = app.add_subcommand("paths", "list paths of a given length");
    add_graph(paths);
    paths->add_option("--level", level, "path length")->required();
    paths->add_flag("--json", as_json);
    paths->add_flag("--counts", counts, "print the per-endpoint count matrix instead");

    auto* count_perms = app.add_subcommand("count-perms", "count endpoint-fixing permutations");
    add_graph(count_perms);
    count_perms->add_option("--level", level)->required();
    count_perms->add_flag("--json", as_json);

    auto* permgraph = app.add_subcommand("permgraph", "emit the (ordered) permutation graph");
    add_graph(permgraph);
    permgraph->add_option("--level", level)->required();
    permgraph->add_option("--perm", perm_text, "cycle notation")->required();
    permgraph->add_flag("--ordered", ordered, "emit the ordered permutation graph");
    permgraph->add_flag("--json", as_json);
    permgraph->add_flag("--dot", as_dot);

    auto* check = app.add_subcommand("check", "synchronization and automorphism verdicts");
    add_graph(check);
    check->add_option("--level", level)->required();
    check->add_option("--perm", perm_text)->required();
    check->add_flag("--json", as_json);

    auto* image = app.add_subcommand("image", "symbolic generator images");
    add_graph(image);
    image->add_option("--level", level)->required();
    image->add_option("--perm", perm_text)->required();
    image->add_option("--edge", edge_name, "base edge");
    image->add_option("--path", path_text, "base path");
    image->add_option("--subalgebra", subalgebra, "generator groups, e.g. a+b+d|c+e+f");
    image->add_flag("--json", as_json);

    auto* enumerate = app.add_subcommand("enumerate", "exhaustive searches");
    add_graph(enumerate);
    enumerate->add_option("--level", level)->required();
    enumerate->add_flag("--outer", outer, "equivalence classes instead of automorphisms");
    enumerate->add_flag("--endomorphisms", endomorphisms, "drop the synchronization test");
    enumerate->add_flag("--count-only", count_only);
    enumerate->add_option("--fix-prefixes", fix_prefixes, "edges whose paths must be fixed");
    enumerate->add_option("--preserve-subalgebra", subalgebra,
                          "post-filter: images stay in the generator subalgebra");
    enumerate->add_option("--quotient-symmetries", quotient_syms,
                          "semicolon-separated edge permutations; print orbit representatives");
    enumerate->add_option("--jobs", jobs, "worker count (default $PERMWEYL_JOBS or 1)");
    enumerate->add_option("--budget", budget, "wall-clock budget in seconds");
    enumerate->add_flag("--confirm-long", confirm_long, "allow desk-scale-exceeding runs");
    enumerate->add_flag("--json", as_json);

    auto* compose_cmd = app.add_subcommand("compose", "compose two permutative endomorphisms");
    add_graph(compose_cmd);
    compose_cmd->add_option("--outer-level", outer_level)->required();
    compose_cmd->add_option("--outer", outer_text)->required();
    compose_cmd->add_option("--inner-level", inner_level)->required();
    compose_cmd->add_option("--inner", inner_text)->required();
    compose_cmd->add_flag("--json", as_json);
    compose_cmd->add_flag("--dot", as_dot);

    auto* order_cmd = app.add_subcommand("order", "bounded order of the induced shift map");
    add_graph(order_cmd);
    order_cmd->add_option("--level", level)->required();
    order_cmd->add_option("--perm", perm_text)->required();
    order_cmd->add_option("--bound", bound);
    order_cmd->add_option("--state-budget", state_budget);
    order_cmd->add_flag("--json", as_json);

    auto* equiv = app.add_subcommand("equiv", "shift space equivalence of two permutations");
    add_graph(equiv);
    equiv->add_option("--level", level)->required();
    equiv->add_option("--perm-a", perm_a)->required();
    equiv->add_option("--perm-b", perm_b)->required();
    equiv->add_flag("--json", as_json);

    auto* table = app.add_subcommand("table", "reproduce the survey tables");
    add_graph(table);
    table->add_flag("--bowtie", table_bowtie, "level summary table");
    table->add_flag("--o3", table_o3, "order table at level 2");
    table->add_option("--max-level", max_level);
    table->add_option("--jobs", jobs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2
    }

    try {
        Graph g = load_graph(graph_file);
        std::ostringstream flags;
        for (int i = 2; i < argc; ++i) flags << (i > 2 ? " " : "") << argv[i];

        if (*validate) {
            repro_header(g, "validate", flags.str());
            auto rep = g.validate();
            if (as_json) {
                json j;
                j["valid"] = rep.valid();
                j["violations"] = rep.violations;
                std::cout << j.dump() << "\n";
            } else {
                std::cout << rep.to_string();
                if (rep.valid()) std::cout << "\n";
            }
            return 0;
        }

        if (*paths) {
            repro_header(g, "paths", flags.str());
            if (level < 1) throw std::runtime_error("path length must be >= 1");
            if (counts) {
                auto m = count_paths_by_endpoints(g, level);
                int n = g.num_vertices();
                if (as_json) {
                    json j = json::array();
                    for (int u = 0; u < n; ++u)
                        for (int v = 0; v < n; ++v)
                            if (m[u * n + v])
                                j.push_back({{"source", g.vertex_name(u)},
                                             {"range", g.vertex_name(v)},
                                             {"count", m[u * n + v]}});
                    std::cout << j.dump() << "\n";
                } else {
                    for (int u = 0; u < n; ++u)
                        for (int v = 0; v < n; ++v)
                            if (m[u * n + v])
                                std::cout << g.vertex_name(u) << " -> " << g.vertex_name(v) << ": "
                                          << m[u * n + v] << "\n";
                }
                return 0;
            }
            PathTable pt(g, level);
            if (as_json) {
                json j = json::array();
                for (int p = 0; p < pt.size(); ++p)
                    j.push_back({{"path", pt.name(p)},
                                 {"source", g.vertex_name(pt.source(p))},
                                 {"range", g.vertex_name(pt.range(p))}});
                std::cout << j.dump() << "\n";
            } else {
                for (int p = 0; p < pt.size(); ++p) std::cout << pt.name(p) << "\n";
            }
            return 0;
        }

        if (*count_perms) {
            repro_header(g, "count-perms", flags.str());
            BigInt total = count_endpoint_fixing(g, level);
            if (as_json)
                std::cout << json{{"level", level}, {"count", total.str()}}.dump() << "\n";
            else
                std::cout << total.str() << "\n";
            return 0;
        }

        if (*permgraph) {
            repro_header(g, "permgraph", flags.str());
            PathPerm tau = parse_cycles(table_at(g, level), perm_text);
            PermutationGraph pg = PermutationGraph::build(tau);
            if (ordered) {
                OrderedPermutationGraph og = ordered_permutation_graph(pg);
                std::cout << (as_dot ? og.to_dot() : og.to_json() + "\n");
            } else {
                std::cout << (as_dot ? pg.to_dot() : pg.to_json() + "\n");
            }
            return 0;
        }

        if (*check) {
            repro_header(g, "check", flags.str());
            PathPerm tau = parse_cycles(table_at(g, level), perm_text);
            PermutationGraph pg = PermutationGraph::build(tau);
            DLGraph dl = DLGraph::of(pg);
            json j;
            j["level"] = level;
            j["perm"] = format_cycles(tau);
            j["first"] = sync_to_json(dl, Labeling::First);
            j["second"] = sync_to_json(dl, Labeling::Second);
            bool is_auto = j["first"]["synchronizing"].get<bool>() &&
                           j["second"]["synchronizing"].get<bool>();
            j["diagonal_automorphism"] = j["first"]["synchronizing"].get<bool>();
            j["automorphism"] = is_auto;
            if (as_json) {
                std::cout << j.dump() << "\n";
            } else {
                std::cout << "first-label synchronizing: "
                          << (j["first"]["synchronizing"].get<bool>() ? "true" : "false");
                if (j["first"].contains("delay"))
                    std::cout << " (delay " << j["first"]["delay"].get<int>() << ")";
                std::cout << "\nsecond-label synchronizing: "
                          << (j["second"]["synchronizing"].get<bool>() ? "true" : "false");
                if (j["second"].contains("delay"))
                    std::cout << " (delay " << j["second"]["delay"].get<int>() << ")";
                std::cout << "\nautomorphism: " << (is_auto ? "true" : "false") << "\n";
                for (const char* lab : {"first", "second"})
                    if (j[lab].contains("witness")) {
                        std::cout << "witness (" << lab << "): two distinct cycles share a label\n";
                        std::cout << "  " << j[lab]["witness"].dump() << "\n";
                    }
            }
            return 0;
        }

        if (*image) {
            repro_header(g, "image", flags.str());
            PathPerm tau = parse_cycles(table_at(g, level), perm_text);
            PermutationGraph pg = PermutationGraph::build(tau);
            if (!subalgebra.empty()) {
                auto gens = parse_generators(g, subalgebra);
                auto rep = image_in_subalgebra(pg, gens);
                if (as_json) {
                    json j;
                    j["preserved"] = rep.preserved;
                    j["rewrites"] = rep.rewrites;
                    if (!rep.preserved) j["witness"] = rep.witness;
                    std::cout << j.dump() << "\n";
                } else {
                    std::cout << "preserved: " << (rep.preserved ? "true" : "false") << "\n";
                    for (const auto& r : rep.rewrites) std::cout << r << "\n";
                    if (!rep.preserved) std::cout << "witness: " << rep.witness << "\n";
                }
                return 0;
            }
            SymbolicSum sum;
            if (!edge_name.empty()) {
                auto e = g.find_edge(edge_name);
                if (!e) throw std::runtime_error("unknown edge '" + edge_name + "'");
                sum = image_of_edge(pg, *e);
            } else if (!path_text.empty()) {
                PathTable any(g, 1);
                std::vector<EdgeId> edges;
                // parse a path of arbitrary length in the path-name syntax
                std::string token;
                if (path_text.find('.') != std::string::npos) {
                    std::stringstream ps(path_text);
                    while (std::getline(ps, token, '.')) {
                        auto e = g.find_edge(token);
                        if (!e) throw std::runtime_error("unknown edge '" + token + "'");
                        edges.push_back(*e);
                    }
                } else {
                    for (char c : path_text) {
                        auto e = g.find_edge(std::string(1, c));
                        if (!e) throw std::runtime_error(std::string("unknown edge '") + c + "'");
                        edges.push_back(*e);
                    }
                }
                sum = image_of_path(pg, edges);
            } else {
                throw std::runtime_error("image needs --edge, --path, or --subalgebra");
            }
            std::cout << (as_json ? sum.to_json(g) + "\n" : sum.render(g) + "\n");
            return 0;
        }

        if (*enumerate) {
            repro_header(g, "enumerate", flags.str());
            SearchConfig cfg;
            cfg.level = level;
            cfg.jobs = jobs;
            if (budget > 0) cfg.budget_seconds = budget;
            cfg.progress = [](std::uint64_t nodes) {
                std::cerr << "# nodes expanded: " << nodes << "\n";
            };
            if (!fix_prefixes.empty())
                cfg.constraint = FixedPointConstraint{parse_edge_list(g, fix_prefixes)};
            if (endomorphisms) cfg.mode = SearchConfig::Endomorphisms;

            if (outer) {
                std::vector<OrderedPermutationGraph> classes;
                SearchStats stats =
                    enumerate_outer_classes(g, cfg, count_only && quotient_syms.empty()
                                                        ? nullptr
                                                        : std::function<void(const OrderedPermutationGraph&)>(
                                                              [&](const OrderedPermutationGraph& og) {
                                                                  classes.push_back(og);
                                                              }));
                if (!quotient_syms.empty()) {
                    std::vector<std::vector<EdgeId>> syms;
                    std::stringstream ss(quotient_syms);
                    std::string one;
                    while (std::getline(ss, one, ';'))
                        if (!one.empty()) syms.push_back(parse_edge_permutation(g, one));
                    auto reps = quotient_by_graph_symmetries(classes, syms);
                    if (count_only) {
                        std::cout << reps.size() << "\n";
                    } else {
                        for (int idx : reps) {
                            if (as_json)
                                std::cout << classes[idx].to_json() << "\n";
                            else
                                std::cout << format_cycles(classes[idx].representative()) << "\n";
                        }
                    }
                    std::cerr << "# classes: " << stats.emitted << " orbits: " << reps.size()
                              << " nodes: " << stats.nodes_expanded << "\n";
                    return 0;
                }
                if (count_only) {
                    std::cout << stats.emitted << "\n";
                } else {
                    for (const auto& og : classes)
                        std::cout << (as_json ? og.to_json() : og.serialize()) << "\n";
                }
                std::cerr << "# classes: " << stats.emitted << " nodes: " << stats.nodes_expanded
                          << "\n";
                return 0;
            }

            if (!confirm_long && !endomorphisms &&
                count_endpoint_fixing(g, level) > BigInt("1000000000000")) {
                throw std::runtime_error(
                    "direct enumeration at this level is a long-running job; re-run with "
                    "--confirm-long, or use --outer and derive the automorphism count as "
                    "classes x level-(k-1) permutation count");
            }
            std::vector<std::vector<EdgeId>> gens;
            if (!subalgebra.empty()) {
                gens = parse_generators(g, subalgebra);
                cfg.subalgebra = SubalgebraConstraint{gens};
            }
            std::uint64_t kept = 0;
            SearchStats stats = enumerate_automorphisms(
                g, cfg,
                count_only && subalgebra.empty()
                    ? std::function<void(const PathPerm&)>()
                    : std::function<void(const PathPerm&)>([&](const PathPerm& p) {
                          if (!gens.empty()) {
                              PermutationGraph pg = PermutationGraph::build(p);
                              if (!image_in_subalgebra(pg, gens).preserved) return;
                          }
                          ++kept;
                          if (count_only) return;
                          if (as_json)
                              std::cout << perm_to_json(p) << "\n";
                          else
                              std::cout << format_cycles(p) << "\n";
                      }));
            if (count_only) std::cout << (gens.empty() ? stats.emitted : kept) << "\n";
            std::cerr << "# emitted: " << (gens.empty() ? stats.emitted : kept)
                      << " nodes: " << stats.nodes_expanded << "\n";
            return 0;
        }

        if (*compose_cmd) {
            repro_header(g, "compose", flags.str());
            PathPerm outer_perm = parse_cycles(table_at(g, outer_level), outer_text);
            PathPerm inner_perm = parse_cycles(table_at(g, inner_level), inner_text);
            PathPerm comp = compose_perms(outer_perm, inner_perm);
            if (as_dot) {
                std::cout << PermutationGraph::build(comp).to_dot();
            } else if (as_json) {
                std::cout << perm_to_json(comp) << "\n";
            } else {
                std::cout << "level " << comp.level() << ": " << format_cycles(comp) << "\n";
            }
            return 0;
        }

        if (*order_cmd) {
            repro_header(g, "order", flags.str());
            PathPerm tau = parse_cycles(table_at(g, level), perm_text);
            PermutationGraph pg = PermutationGraph::build(tau);
            OrderOptions opts;
            opts.bound = bound;
            opts.state_budget = state_budget;
            auto res = order_of(pg, opts);
            if (as_json)
                std::cout << order_to_json(res).dump() << "\n";
            else
                std::cout << order_to_string(res) << "\n";
            return 0;
        }

        if (*equiv) {
            repro_header(g, "equiv", flags.str());
            PathPerm a = parse_cycles(table_at(g, level), perm_a);
            PathPerm b = parse_cycles(table_at(g, level), perm_b);
            bool eq = shift_space_equivalent(PermutationGraph::build(a), PermutationGraph::build(b));
            if (as_json)
                std::cout << json{{"equivalent", eq}}.dump() << "\n";
            else
                std::cout << "equivalent: " << (eq ? "true" : "false") << "\n";
            return 0;
        }

        if (*table) {
            repro_header(g, "table", flags.str());
            if (table_bowtie == table_o3)
                throw std::runtime_error("table needs exactly one of --bowtie or --o3");
            if (table_bowtie)
                run_table_bowtie(g, max_level, jobs);
            else
                run_table_o3(g, jobs);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
