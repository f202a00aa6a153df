#include <incidence/amalgam.hpp>
#include <incidence/finsearch.hpp>
#include <incidence/gamma.hpp>
#include <incidence/indep.hpp>
#include <incidence/serialize.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace incidence;

namespace {

constexpr int exit_decided = 0;
constexpr int exit_invalid = 1;
constexpr int exit_unknown = 2;

struct Budgets {
    int stages = default_stage_budget;
    std::size_t elements = default_element_cap;
    std::size_t nodes = default_node_budget;
};

std::string read_input(const std::string & path)
{
    std::stringstream buf;
    if (path == "-")
        buf << std::cin.rdbuf();
    else {
        std::ifstream in(path);
        if (! in)
            throw std::invalid_argument("cannot read " + path);
        buf << in.rdbuf();
    }
    return buf.str();
}

Document load(const std::string & path) { return parse_document(read_input(path)); }

std::vector<std::string> split_names(const std::string & csv)
{
    std::vector<std::string> out;
    std::stringstream in(csv);
    for (std::string item; std::getline(in, item, ',');)
        if (! item.empty())
            out.push_back(item);
    return out;
}

std::vector<Id> name_tuple(const Structure & s, const std::string & csv)
{
    std::vector<Id> out;
    for (auto & n : split_names(csv)) {
        auto x = s.find(n);
        if (! x)
            throw std::invalid_argument("unknown element " + n);
        out.push_back(*x);
    }
    return out;
}

IdSet name_set(const Structure & s, const std::string & csv) { return make_set(name_tuple(s, csv)); }

int print(const Json & j, int code)
{
    std::cout << j.dump(2) << "\n";
    return code;
}

int emit(const Structure & s, const std::string & format, const std::map<Id, Provenance> * prov = nullptr)
{
    std::cout << (format == "dot" ? emit_dot(s) : emit_json(s, prov));
    return exit_decided;
}

Json biclique_json(const Structure & s, const Biclique & b)
{
    return Json{{"points", id_set_json(s, b.points)}, {"lines", id_set_json(s, b.lines)}};
}

Json verdict_json(const Verdict & v, Relation rel)
{
    Json j{{"relation", relation_name(rel)}, {"status", indep_status_name(v.status)}, {"detail", v.detail}};
    const Structure & s = v.completion;
    if (v.element)
        j["witness"] = Json{{"element", s.name(*v.element)}};
    if (v.incidence)
        j["witness"] = Json{{"incidence", Json::array({s.name(v.incidence->first), s.name(v.incidence->second)})}};
    if (v.failing_d)
        j["witness"]["failing_d"] = id_set_json(s, *v.failing_d);
    if (rel == Relation::otimes)
        j["verified_stage"] = v.verified_stage;
    std::string summary = std::string(indep_status_name(v.status));
    auto names = v.witness_names();
    if (! names.empty()) {
        summary += " witness";
        for (auto & n : names)
            summary += " " + n;
    }
    if (v.status == IndepStatus::unknown)
        summary += " (" + v.detail + ")";
    j["summary"] = summary;
    return j;
}

int search_exit(SearchStatus s) { return s == SearchStatus::unknown ? exit_unknown : exit_decided; }

}

int main(int argc, char ** argv)
{
    CLI::App app{"K_{m,n}-free incidence structures: completion, closure, amalgamation, independence, search"};
    app.require_subcommand(1);
    Budgets budget;
    std::string format = "json";
    std::function<int()> action;

    auto add_budgets = [&](CLI::App * sub, bool stages, bool elements, bool nodes) {
        if (stages)
            sub->add_option("--stages", budget.stages, "completion stage budget")->capture_default_str();
        if (elements)
            sub->add_option("--elements", budget.elements, "element cap")->capture_default_str();
        if (nodes)
            sub->add_option("--budget", budget.nodes, "search node budget")->capture_default_str();
    };
    auto add_emit = [&](CLI::App * sub) {
        sub->add_option("--emit", format, "output format")->check(CLI::IsMember({"json", "dot"}))->capture_default_str();
    };

    std::string input = "-";
    auto add_input = [&](CLI::App * sub) { sub->add_option("input", input, "structure document, - for stdin"); };

    // check
    {
        auto * sub = app.add_subcommand("check", "K_{m,n}-freeness and completeness");
        add_input(sub);
        sub->callback([&] {
            action = [&] {
                Structure s = load(input).structure;
                auto w = find_biclique(s);
                auto c = satisfies_complete(s);
                Json j{{"kmn_free", ! w}, {"complete", c.pass}};
                if (w)
                    j["biclique"] = biclique_json(s, *w);
                if (! c.pass)
                    j["incomplete"] = Json{{"set", id_set_json(s, c.failing)}, {"common", c.count}};
                j["summary"] = std::string(w ? "contains a biclique" : "K_{m,n}-free") + ", " +
                    (c.pass ? "complete" : "not complete");
                return print(j, exit_decided);
            };
        });
    }

    // closure
    {
        auto * sub = app.add_subcommand("closure", "staged I-closure of a seed inside the given structure");
        add_input(sub);
        static std::string seed;
        sub->add_option("--seed", seed, "comma-separated element names")->required();
        add_budgets(sub, true, false, false);
        sub->callback([&] {
            action = [&] {
                Structure s = load(input).structure;
                auto st = closure_stages(s, name_set(s, seed), budget.stages);
                Json stages = Json::array();
                for (auto & a : st.stages)
                    stages.push_back(id_set_json(s, a));
                Json j{{"stages", stages}, {"converged", st.converged}, {"closure", id_set_json(s, st.last())},
                    {"stage_budget", budget.stages}};
                j["summary"] = std::to_string(st.last().size()) + " elements, " +
                    (st.converged ? "converged" : "UNKNOWN: not converged within the stage budget");
                return print(j, st.converged ? exit_decided : exit_unknown);
            };
        });
    }

    // complete
    {
        auto * sub = app.add_subcommand("complete", "free completion stages with provenance");
        add_input(sub);
        add_budgets(sub, true, true, false);
        add_emit(sub);
        sub->callback([&] {
            action = [&] {
                Structure s = load(input).structure;
                CompletionStage st = free_completion(s, budget.stages, budget.elements);
                return emit(st.structure, format, &st.provenance);
            };
        });
    }

    // relcomplete
    {
        auto * sub = app.add_subcommand("relcomplete", "free completion of B tracked relative to a closed A");
        add_input(sub);
        static std::string a;
        sub->add_option("--a", a, "closed subset A")->required();
        add_budgets(sub, true, true, false);
        sub->callback([&] {
            action = [&] {
                Structure b = load(input).structure;
                auto r = relative_free_completion(b, name_set(b, a), budget.stages, budget.elements);
                const Structure & x = r.ambient.structure;
                Json ys = Json::array();
                for (auto & y : r.y_stages)
                    ys.push_back(id_set_json(x, y));
                Json j{{"y_stages", ys}, {"y_closed", r.y_closed}, {"meets_base_in_a", r.meets_base_in_a},
                    {"no_cross_incidence", r.no_cross_incidence}, {"matches_free", r.matches_free},
                    {"ok", r.ok()}, {"stages", budget.stages}};
                j["summary"] = std::string(r.ok() ? "all postconditions hold" : "a postcondition fails") +
                    " to stage " + std::to_string(budget.stages);
                return print(j, exit_decided);
            };
        });
    }

    // amalgamate
    {
        auto * sub = app.add_subcommand("amalgamate", "free amalgam of B and C over the elements named in A");
        static std::string bpath, cpath, shared;
        sub->add_option("--b", bpath, "structure B")->required();
        sub->add_option("--c", cpath, "structure C")->required();
        sub->add_option("--a", shared, "names shared by B and C forming A");
        add_emit(sub);
        sub->callback([&] {
            action = [&] {
                Structure b = load(bpath).structure, c = load(cpath).structure;
                IdSet ab = name_set(b, shared), ac = name_set(c, shared);
                Structure a = b.induced(ab);
                BaseMap to_b, to_c;
                for (Id x : ab) {
                    to_b.emplace_back(x, x);
                    to_c.emplace_back(x, c.at(b.name(x)));
                }
                return emit(free_amalgam(b, c, a, to_b, to_c).structure, format);
            };
        });
    }

    // extend
    {
        auto * sub = app.add_subcommand("extend", "realise a safe diagram over a tuple");
        add_input(sub);
        static std::string diagram, base_vars, tuple;
        sub->add_option("--diagram", diagram, "diagram structure document")->required();
        sub->add_option("--base-vars", base_vars, "diagram elements forming the base variables")->required();
        sub->add_option("--tuple", tuple, "elements realising the base variables, aligned with --base-vars")
            ->required();
        add_emit(sub);
        sub->callback([&] {
            action = [&] {
                Structure s = load(input).structure;
                Structure ds = load(diagram).structure;
                std::vector<Id> vars = name_tuple(ds, base_vars);
                std::vector<Id> abar = name_tuple(s, tuple);
                if (vars.size() != abar.size())
                    throw std::invalid_argument("--tuple and --base-vars differ in length");
                std::vector<std::pair<Id, Id>> paired;
                for (std::size_t i = 0; i < vars.size(); ++i)
                    paired.emplace_back(vars[i], abar[i]);
                std::sort(paired.begin(), paired.end());
                SafeDiagram d{ds, {}, {}};
                std::vector<Id> aligned;
                for (auto [v, x] : paired) {
                    d.base_vars.push_back(v);
                    aligned.push_back(x);
                }
                d.base_vars = make_set(d.base_vars);
                d.ext_vars = set_difference(ds.elements(), d.base_vars);
                return emit(extension_witness(s, aligned, d).structure, format);
            };
        });
    }

    // glue
    {
        auto * sub = app.add_subcommand("glue", "glue three pairwise joins over D");
        static std::string ab, ac, bc, d, a, b, c;
        sub->add_option("--ab", ab, "join of X_a and X_b")->required();
        sub->add_option("--ac", ac, "join of X_a' and X_c")->required();
        sub->add_option("--bc", bc, "join of X_b and X_c")->required();
        sub->add_option("--d", d, "names of D");
        sub->add_option("--a", a, "names of X_a, D included")->required();
        sub->add_option("--b", b, "names of X_b, D included")->required();
        sub->add_option("--c", c, "names of X_c, D included")->required();
        add_emit(sub);
        sub->callback([&] {
            action = [&] {
                GlueProblem g{load(ab).structure, load(ac).structure, load(bc).structure, split_names(d),
                    split_names(a), split_names(b), split_names(c)};
                return emit(independence_glue(g).structure, format);
            };
        });
    }

    // gamma
    {
        auto * sub = app.add_subcommand("gamma", "the structure Gamma_eta");
        static std::string eta;
        static bool report = false;
        sub->add_option("--eta", eta, "bit string, empty for the base structure");
        sub->add_flag("--report", report, "print the invariant report instead of the structure");
        add_emit(sub);
        sub->callback([&] {
            action = [&] {
                GammaStructure g = gamma(parse_bits(eta));
                if (! report)
                    return emit(g.structure, format);
                GammaReport r = gamma_invariants(g);
                Json j{{"eta", eta}, {"points", g.structure.points().size()}, {"lines", g.structure.lines().size()},
                    {"incidences", g.structure.incidence_count()}, {"prefixes_induced", r.prefixes_induced},
                    {"generated", r.generated}, {"pairs_open", r.pairs_open}, {"kmn_free", r.kmn_free},
                    {"ok", r.ok()}, {"summary", r.ok() ? "all invariants hold" : r.detail}};
                return print(j, exit_decided);
            };
        });
    }

    // separate
    {
        auto * sub = app.add_subcommand("separate", "H-term separation between eta^0 and eta^1");
        static std::string eta;
        sub->add_option("--eta", eta, "bit string");
        sub->callback([&] {
            action = [&] {
                SeparationReport r = separating_check(parse_bits(eta));
                return print(Json{{"eta", eta}, {"separated", r.separated}, {"summary", r.detail}}, exit_decided);
            };
        });
    }

    // bm
    {
        auto * sub = app.add_subcommand("bm", "the base-monotonicity configuration");
        static int m = 2, n = 2;
        sub->add_option("--m", m, "point-side parameter")->capture_default_str();
        sub->add_option("--n", n, "line-side parameter")->capture_default_str();
        add_emit(sub);
        sub->callback([&] { action = [&] { return emit(bm_witness(m, n), format); }; });
    }

    // probe
    {
        auto * sub = app.add_subcommand("probe", "non-free completion probe with the Fano obstruction");
        add_input(sub);
        static int max_stage = 40;
        static std::size_t cap = 20000;
        sub->add_option("--stages", max_stage, "completion stage budget")->capture_default_str();
        sub->add_option("--elements", cap, "element cap")->capture_default_str();
        sub->callback([&] {
            action = [&] {
                Structure a = load(input).structure;
                ProbeResult r = nonfree_completion_probe(a, max_stage, cap);
                Json j{{"ok", r.ok}};
                if (! r.ok) {
                    j["failure"] = r.failure;
                    j["summary"] = "probe failed: " + r.failure;
                    bool budget_hit = r.failure.starts_with("growth precondition") || r.failure.starts_with("budget");
                    return print(j, budget_hit ? exit_unknown : exit_decided);
                }
                j["k"] = r.k;
                j["r_lines"] = id_set_json(r.b0, IdSet(r.r_lines.begin(), r.r_lines.end()));
                j["r_stages"] = r.r_stages;
                j["fano"] = id_set_json(r.b0, r.fano);
                j["b0"] = structure_json(r.b0);
                Json base = Json::array();
                for (Id x : a.elements())
                    base.push_back(a.name(x));
                BaseMap over;
                for (Id x : a.elements())
                    over.emplace_back(x, x);
                bool differ = ! isomorphic_over(*r.free_side, *r.b0_side, over).map;
                j["stage_matched_differ"] = differ;
                j["summary"] = "B0 has " + std::to_string(r.b0.size()) + " elements; Fano witness found; " +
                    (differ ? "completions differ over A" : "completions agree over A");
                return print(j, exit_decided);
            };
        });
    }

    // indep
    {
        auto * sub = app.add_subcommand("indep", "independence of A and B over C");
        add_input(sub);
        static std::string rel = "i", a, b, c;
        static int otimes_stages = 3;
        sub->add_option("--rel", rel, "relation")->check(CLI::IsMember({"a", "i", "d", "otimes"}))->required();
        sub->add_option("--a", a, "names of A");
        sub->add_option("--b", b, "names of B");
        sub->add_option("--c", c, "names of C");
        sub->add_option("--otimes-stages", otimes_stages, "stages compared by otimes")->capture_default_str();
        add_budgets(sub, true, true, false);
        sub->callback([&] {
            action = [&] {
                Structure s = load(input).structure;
                Relation r = rel == "a" ? Relation::alg
                    : rel == "i"        ? Relation::i
                    : rel == "d"        ? Relation::div
                                        : Relation::otimes;
                IndepQuery q{s, name_set(s, a), name_set(s, b), name_set(s, c), r, budget.stages, otimes_stages,
                    16, budget.elements};
                Verdict v = check_independence(q);
                Json j = verdict_json(v, r);
                j["stage_budget"] = budget.stages;
                return print(j, v.status == IndepStatus::unknown ? exit_unknown : exit_decided);
            };
        });
    }

    // sequence
    {
        auto * sub = app.add_subcommand("sequence", "independent sequence of copies of b over C");
        add_input(sub);
        static std::string rel = "i", b, c;
        static int length = 3;
        sub->add_option("--rel", rel, "relation")->check(CLI::IsMember({"a", "i"}))->capture_default_str();
        sub->add_option("--b", b, "names of the tuple b")->required();
        sub->add_option("--c", c, "names of C");
        sub->add_option("--length", length, "sequence length")->capture_default_str();
        add_budgets(sub, true, false, false);
        sub->callback([&] {
            action = [&] {
                Structure s = load(input).structure;
                IndepSequence seq = indep_sequence(s, name_tuple(s, b), name_set(s, c), length,
                    rel == "a" ? Relation::alg : Relation::i, budget.stages);
                Json tuples = Json::array();
                for (auto & t : seq.tuples)
                    tuples.push_back(id_set_json(seq.ambient, IdSet(t.begin(), t.end())));
                Json j{{"tuples", tuples}, {"verified", seq.verified}, {"ambient", structure_json(seq.ambient)},
                    {"summary", std::to_string(seq.tuples.size()) + " tuples, " +
                         (seq.verified ? "independence verified" : "independence NOT verified")}};
                return print(j, exit_decided);
            };
        });
    }

    // pattern
    {
        auto * sub = app.add_subcommand("pattern", "consistency of instances of the base-monotonicity pattern");
        static int instances = 3, m = 2, n = 2;
        sub->add_option("--instances", instances, "number of instances")->capture_default_str();
        sub->add_option("--m", m, "point-side parameter")->capture_default_str();
        sub->add_option("--n", n, "line-side parameter")->capture_default_str();
        add_budgets(sub, false, false, true);
        sub->callback([&] {
            action = [&] {
                PatternExperiment ex = tp2_experiment({m, n}, instances);
                PatternVerdict v = pattern_consistent(ex.base, ex.pattern, ex.instances, budget.nodes);
                Json j{{"status", consistency_name(v.status)}, {"instances", instances}, {"merges", v.merges},
                    {"nodes", v.nodes}, {"node_budget", budget.nodes}, {"sequence_verified", ex.sequence_verified}};
                if (v.witness)
                    j["witness"] = structure_json(*v.witness);
                j["summary"] = std::string(consistency_name(v.status)) + " after " + std::to_string(v.nodes) +
                    " nodes";
                return print(j, v.status == Consistency::unknown ? exit_unknown : exit_decided);
            };
        });
    }

    // plane
    {
        auto * sub = app.add_subcommand("plane", "search for a projective plane of the given order");
        static int order = 2;
        sub->add_option("--order", order, "order q")->required();
        add_budgets(sub, false, false, true);
        add_emit(sub);
        sub->callback([&] {
            action = [&] {
                PlaneResult r = find_projective_plane(order, budget.nodes);
                if (r.status == SearchStatus::found && format == "dot")
                    return emit(*r.plane, format);
                Json j{{"status", search_status_name(r.status)}, {"order", order}, {"nodes", r.nodes},
                    {"node_budget", budget.nodes}};
                if (r.plane)
                    j["plane"] = structure_json(*r.plane);
                j["summary"] = r.status == SearchStatus::found ? "plane found"
                    : r.status == SearchStatus::none         ? "NONE within the bounded search"
                                                             : "UNKNOWN: node budget exhausted";
                return print(j, search_exit(r.status));
            };
        });
    }

    // embed
    {
        auto * sub = app.add_subcommand("embed", "induced embedding into a plane of the given order");
        add_input(sub);
        static int order = 0;
        static std::size_t max_elements = 64;
        sub->add_option("--order", order, "plane order; 0 searches completions of every size up to --max-elements");
        sub->add_option("--max-elements", max_elements, "size bound for the general search")->capture_default_str();
        add_budgets(sub, false, false, true);
        sub->callback([&] {
            action = [&] {
                Structure a = load(input).structure;
                EmbedResult r = order > 0 ? embed_in_finite_plane(a, order, budget.nodes)
                                          : embed_search_general(a, max_elements, budget.nodes);
                Json j{{"status", search_status_name(r.status)}, {"nodes", r.nodes}, {"node_budget", budget.nodes},
                    {"route", r.route}};
                if (r.target) {
                    Json map = Json::object();
                    for (auto [x, y] : r.map)
                        map[a.name(x)] = r.target->name(y);
                    j["map"] = map;
                    j["target"] = structure_json(*r.target);
                }
                j["summary"] = r.status == SearchStatus::found ? "embedding found via " + r.route
                    : r.status == SearchStatus::none         ? "NONE within the bounded search"
                                                             : "UNKNOWN: node budget exhausted";
                return print(j, search_exit(r.status));
            };
        });
    }

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        return exit_invalid;
    }

    try {
        return action();
    }
    catch (const FreenessViolation & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid;
    }
    catch (const BudgetExceeded & e) {
        return print(Json{{"status", "UNKNOWN"}, {"summary", std::string("UNKNOWN: ") + e.what()}}, exit_unknown);
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid;
    }
}
