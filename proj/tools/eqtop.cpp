// Command-line front end. Exit codes: 0 success, 1 refuted or failing
// check, 2 parse or IO error, 3 demanding.

#include <chrono>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "eqtop/catalog.hpp"
#include "eqtop/error.hpp"
#include "eqtop/interp.hpp"
#include "eqtop/io.hpp"
#include "eqtop/parser.hpp"
#include "eqtop/theories.hpp"
#include "eqtop/undemanding.hpp"

using namespace eqtop;
using io::Json;

namespace {

struct Options {
    bool json = false;
    bool timing = false;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

/// What a command found. Text lines go to stdout in plain mode; witnesses
/// feed the JSON report.
struct Report {
    Report(std::string c, std::string v) : command(std::move(c)), verdict(std::move(v)) {}

    std::string command;
    std::string verdict;
    std::vector<std::string> lines;
    Json witnesses = Json::array();
    /// Raw payload printed instead of the report (gen output).
    std::optional<std::string> artifact;
};

int exit_code(const std::string& verdict) {
    if (verdict == "demanding") return 3;
    if (verdict == "refuted" || verdict == "none") return 1;
    return 0;
}

Document load_document(const std::string& path) { return parse_document(io::read_input(path)); }

/// "@name" picks a built-in theory; anything else is a DSL file ("-" for
/// stdin) whose first theory is used unless `name` selects another.
Theory load_theory(const std::string& arg, const std::string& name = "") {
    if (!arg.empty() && arg[0] == '@') return theories::by_name(arg.substr(1));
    Document doc = load_document(arg);
    if (doc.theories.empty()) throw Error("no theory in '" + arg + "'");
    if (name.empty()) return doc.theories.front();
    const Theory* t = doc.find_theory(name);
    if (!t) throw Error("no theory named '" + name + "' in '" + arg + "'");
    return *t;
}

std::string join_rationals(const std::vector<Rational>& xs) {
    std::string s = "(";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + format_rational(xs[i]);
    return s + ")";
}

std::string join_elements(const std::vector<Element>& xs) {
    std::string s = "(";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + std::to_string(xs[i]);
    return s + ")";
}

// ---- parse ---------------------------------------------------------------

Report cmd_parse(const std::string& path) {
    Report r{"parse", "ok"};
    Document doc = load_document(path);
    for (const auto& t : doc.theories) {
        r.lines.push_back(to_string(t));
        Json w;
        w["theory"] = t.name;
        w["symbols"] = t.signature.size();
        w["equations"] = t.equations.size();
        r.witnesses.push_back(w);
    }
    for (const auto& spec : doc.interpretations) {
        Interpretation in = resolve(spec, doc);
        r.lines.push_back("interpret " + in.source.name + " in " + in.target.name + " (" +
                          std::to_string(in.terms.size()) + " definitions)");
        Json w;
        w["interpret"] = in.source.name;
        w["in"] = in.target.name;
        r.witnesses.push_back(w);
    }
    return r;
}

// ---- demand --------------------------------------------------------------

Report cmd_demand(const std::string& path, const std::string& name, std::size_t k) {
    Report r{"demand", ""};
    Theory t = load_theory(path, name);
    std::uint64_t visited = 0;
    r.lines.push_back("theory " + t.name);
    if (k == 1) {
        auto v = is_undemanding(t, &visited);
        if (auto* u = std::get_if<Undemanding>(&v)) {
            r.verdict = "undemanding";
            r.lines.push_back("witness (C is a single constant):\n" + to_string(u->witness));
            r.witnesses.push_back(to_string(u->witness));
        } else {
            r.verdict = "demanding";
        }
    } else {
        auto v = is_k_undemanding(t, k, &visited);
        if (auto* u = std::get_if<KUndemanding>(&v)) {
            r.verdict = "undemanding";
            r.lines.push_back("witness on coordinates 1.." + std::to_string(k) + ":\n" + to_string(u->witness));
            r.witnesses.push_back(to_string(u->witness));
        } else {
            r.verdict = "demanding";
        }
    }
    r.lines.push_back("k = " + std::to_string(k) + ", assignments visited: " + std::to_string(visited));
    return r;
}

// ---- model-check / search ------------------------------------------------

void describe_failure(Report& r, const Counterexample& c) {
    r.lines.push_back("equation " + std::to_string(c.equation_index + 1) + " fails: " + to_string(c.equation));
    r.lines.push_back("  at x = " + join_elements(c.assignment) + ": " + std::to_string(c.lhs_value) +
                      " != " + std::to_string(c.rhs_value));
    Json w;
    w["equation"] = c.equation_index + 1;
    w["text"] = to_string(c.equation);
    w["assignment"] = c.assignment;
    w["lhs"] = c.lhs_value;
    w["rhs"] = c.rhs_value;
    r.witnesses.push_back(w);
}

Report cmd_model_check(const std::string& theory_path, const std::string& algebra_path, const std::string& name) {
    Report r{"model-check", ""};
    Theory t = load_theory(theory_path, name);
    FiniteAlgebra a = io::algebra_from_json(io::parse_json(io::read_input(algebra_path)));
    Satisfaction s = satisfies(a, t);
    r.verdict = s.holds() ? "holds" : "refuted";
    if (s.failure) describe_failure(r, *s.failure);
    return r;
}

Report cmd_search(const std::string& path, const std::string& name, std::size_t size, bool count, bool fix) {
    Report r{"search", ""};
    Theory t = load_theory(path, name);
    SearchOptions opt{fix};
    SearchStats stats;
    if (count) {
        std::optional<FiniteAlgebra> first;
        search_all_models(t, size, [&](const FiniteAlgebra& a) {
            if (!first) first = a;
            return true;
        }, opt, &stats);
        r.verdict = first ? "found" : "none";
        r.lines.push_back("models of size " + std::to_string(size) + ": " + std::to_string(stats.models));
        if (first) r.witnesses.push_back(io::algebra_to_json(*first));
    } else {
        auto m = search_models(t, size, opt, &stats);
        r.verdict = m ? "found" : "none";
        if (m) {
            r.lines.push_back(io::algebra_to_json(*m).dump());
            r.witnesses.push_back(io::algebra_to_json(*m));
        } else {
            r.lines.push_back("no model of size " + std::to_string(size));
        }
    }
    r.lines.push_back("search nodes: " + std::to_string(stats.nodes));
    return r;
}

// ---- interp --------------------------------------------------------------

Report cmd_interp_check(const std::string& path, std::size_t max_size) {
    Report r{"interp check", ""};
    Document doc = load_document(path);
    if (doc.interpretations.empty()) throw Error("no interpret block in '" + path + "'");
    Interpretation in = resolve(doc.interpretations.front(), doc);
    InterpretationCheck c = check_interpretation(in, max_size);
    r.lines.push_back("interpret " + in.source.name + " in " + in.target.name);
    r.lines.push_back("target models checked: " + std::to_string(c.models_checked));
    if (c.confirmed()) {
        r.verdict = "confirmed";
        r.lines.push_back("confirmed up to size " + std::to_string(max_size) + " (not a proof)");
    } else {
        r.verdict = "refuted";
        r.lines.push_back("refuted by a target model of size " + std::to_string(c.refutation->model.size()) + ":");
        r.lines.push_back(io::algebra_to_json(c.refutation->model).dump());
        describe_failure(r, c.refutation->failure);
        r.witnesses.push_back(io::algebra_to_json(c.refutation->model));
    }
    return r;
}

// ---- gen -----------------------------------------------------------------

Report cmd_gen(const std::vector<std::string>& args) {
    Report r{"gen", "ok"};
    if (args.empty()) throw Error("gen needs one of: squaring, sqrt2-hspace, lambda N, power K [algebra]");
    auto number = [&](std::size_t i) -> std::size_t {
        if (args.size() <= i) throw Error("gen " + args[0] + " needs a number");
        Rational n = parse_rational(args[i]);
        if (n.get_den() != 1 || n < 0 || n > 1000) throw Error("bad number '" + args[i] + "'");
        return n.get_num().get_ui();
    };
    const std::string& what = args[0];
    if (what == "squaring") {
        r.artifact = to_string(squaring_theory());
    } else if (what == "sqrt2-hspace") {
        r.artifact = to_string(sqrt2_hspace_theory());
    } else if (what == "lambda") {
        r.artifact = to_string(lambda_theory(number(1)));
    } else if (what == "power") {
        const std::size_t k = number(1);
        FiniteAlgebra base = args.size() > 2 ? io::algebra_from_json(io::parse_json(io::read_input(args[2])))
                                             : FiniteAlgebra(2, {});
        r.artifact = io::algebra_to_json(power_algebra(base, k)).dump(2) + "\n";
    } else {
        throw Error("unknown gen target '" + what + "'");
    }
    return r;
}

// ---- check-pl ------------------------------------------------------------

Report cmd_check_pl(const std::string& theory_path, const std::string& witness_path, bool sample,
                    const SamplePlan& plan, const std::string& name) {
    Report r{"check-pl", ""};
    Theory t = load_theory(theory_path, name);
    io::WitnessFile w = io::witness_from_json(io::parse_json(io::read_input(witness_path)));
    r.lines.push_back("theory " + t.name + " on [" + format_rational(w.universe.lo) + ", " +
                      format_rational(w.universe.hi) + "]");
    if (!sample) {
        bool all = true;
        for (const auto& v : check_pl_model(t, w.ops, w.universe)) {
            std::string line = "  eq " + std::to_string(v.equation_index + 1) + " " + to_string(v.equation) + ": ";
            if (v.verdict.equal()) {
                line += "equal (" + std::to_string(v.verdict.cells) + " cells)";
            } else {
                all = false;
                line += "differs at " + join_rationals(*v.verdict.witness) + ": " +
                        format_rational(v.verdict.lhs_value) + " vs " + format_rational(v.verdict.rhs_value);
                Json j;
                j["equation"] = v.equation_index + 1;
                j["point"] = io::point_list_to_json(*v.verdict.witness);
                j["lhs"] = format_rational(v.verdict.lhs_value);
                j["rhs"] = format_rational(v.verdict.rhs_value);
                r.witnesses.push_back(j);
            }
            r.lines.push_back(line);
        }
        r.verdict = all ? "equal" : "refuted";
    } else {
        SampleVerdict s = sample_check(t, w.ops, w.universe, plan);
        r.lines.push_back("points evaluated: " + std::to_string(s.points) + " (seed " + std::to_string(plan.seed) + ")");
        if (s.refutation) {
            const auto& f = *s.refutation;
            r.verdict = "refuted";
            r.lines.push_back("eq " + std::to_string(f.equation_index + 1) + " " + to_string(f.equation) +
                              " fails at " + join_rationals(f.point) + ": " + format_rational(f.lhs_value) + " vs " +
                              format_rational(f.rhs_value));
            Json j;
            j["equation"] = f.equation_index + 1;
            j["point"] = io::point_list_to_json(f.point);
            j["lhs"] = format_rational(f.lhs_value);
            j["rhs"] = format_rational(f.rhs_value);
            r.witnesses.push_back(j);
        } else {
            r.verdict = "no-counterexample";
            r.lines.push_back("no counterexample found (sampling is not a proof)");
        }
    }
    return r;
}

// ---- tree-check ----------------------------------------------------------

Report cmd_tree_check(const std::string& tree_path, const std::string& op, const std::string& theory_path,
                      std::size_t denominator, const std::string& name) {
    Report r{"tree-check", ""};
    MetricTree tree = io::tree_from_json(io::parse_json(io::read_input(tree_path)));
    TreeOp kind;
    if (op == "median") kind = TreeOp::Median;
    else if (op == "minority") kind = TreeOp::Minority;
    else if (op == "rooted-meet") kind = TreeOp::RootedMeet;
    else throw Error("unknown tree operation '" + op + "' (median, minority, rooted-meet)");
    Theory t = load_theory(theory_path, name);
    TreeCheck c = tree_check(tree, kind, t, denominator);
    r.lines.push_back("grid points: " + std::to_string(c.grid_points) + ", assignments: " +
                      std::to_string(c.assignments));
    r.verdict = c.holds() ? "holds" : "refuted";
    if (c.failure) {
        const auto& f = *c.failure;
        std::string at;
        Json pts = Json::array();
        for (const auto& p : f.assignment) {
            at += (at.empty() ? "" : ", ") + to_string(tree, p);
            pts.push_back(io::point_to_json(p));
        }
        r.lines.push_back("eq " + std::to_string(f.equation_index + 1) + " " + to_string(f.equation) + " fails at (" +
                          at + "): " + to_string(tree, f.lhs_value) + " vs " + to_string(tree, f.rhs_value));
        Json j;
        j["equation"] = f.equation_index + 1;
        j["assignment"] = pts;
        r.witnesses.push_back(j);
    }
    return r;
}

// ---- catalog -------------------------------------------------------------

Report cmd_catalog(const std::string& action, const std::string& entry, const SamplePlan& plan) {
    Report r{"catalog " + action, "ok"};
    if (action == "list") {
        for (const auto& e : catalog_all()) r.lines.push_back(e.name);
        return r;
    }
    if (action == "show") {
        CatalogEntry e = catalog(entry);
        r.artifact = io::witness_to_json(e.universe, e.ops).dump(2) + "\n";
        return r;
    }
    if (action == "theory") {
        r.artifact = to_string(catalog(entry).theory);
        return r;
    }
    if (action != "run-all")
        throw Error("unknown catalog action '" + action + "' (run-all, list, show NAME, theory NAME)");

    bool clean = true;
    for (const auto& e : catalog_all()) {
        const bool certify = e.mode == CheckMode::Certify;
        auto passes = [&](const Witness& ops, std::string& where) {
            if (certify) {
                for (const auto& v : check_pl_model(e.theory, ops, e.universe))
                    if (!v.verdict.equal()) {
                        where = "eq " + std::to_string(v.equation_index + 1) + " at " + join_rationals(*v.verdict.witness);
                        return false;
                    }
                return true;
            }
            SampleVerdict s = sample_check(e.theory, ops, e.universe, plan);
            if (!s.refutation) return true;
            where = "eq " + std::to_string(s.refutation->equation_index + 1) + " at " +
                    join_rationals(s.refutation->point);
            return false;
        };
        std::string where;
        const bool ok = passes(e.ops, where);
        Json j;
        j["entry"] = e.name;
        j["mode"] = certify ? "certify" : "sample";
        j["holds"] = ok;
        std::string line = e.name + " [" + (certify ? "certify" : "sample") + "]: " +
                           (ok ? (certify ? "certified" : "no counterexample") : "FAILS " + where);
        clean = clean && ok;
        Json ms = Json::array();
        for (const auto& m : e.mutants) {
            std::string mwhere;
            const bool caught = !passes(m.ops, mwhere);
            clean = clean && caught;
            line += "\n  mutant \"" + m.description + "\": " + (caught ? "refuted, " + mwhere : "NOT REFUTED");
            Json mj;
            mj["mutant"] = m.description;
            mj["refuted"] = caught;
            if (caught) mj["where"] = mwhere;
            ms.push_back(mj);
        }
        j["mutants"] = ms;
        r.lines.push_back(line);
        r.witnesses.push_back(j);
    }
    r.verdict = clean ? "ok" : "refuted";
    return r;
}

void emit(const Report& r, const Options& opt, double elapsed_ms) {
    if (opt.json) {
        Json j;
        j["command"] = r.command;
        j["verdict"] = r.verdict;
        j["seed"] = opt.seed;
        if (r.artifact) j["output"] = *r.artifact;
        j["witnesses"] = r.witnesses;
        if (opt.timing) j["elapsed_ms"] = elapsed_ms;
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (r.artifact) {
        std::cout << *r.artifact;
        return;
    }
    for (const auto& l : r.lines) std::cout << l << "\n";
    std::cout << "verdict: " << r.verdict << "\n";
    if (opt.timing) std::cout << "elapsed: " << elapsed_ms << " ms\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eqtop: equational theories, finite models and exact piecewise-linear witnesses"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_flag("--json", opt.json, "emit the report as JSON");
    app.add_flag("--timing", opt.timing, "include elapsed time (reports are otherwise reproducible byte for byte)");
    app.add_option("--seed", opt.seed, "seed for every random choice")->capture_default_str();
    app.add_option("--jobs", opt.jobs, "worker cap; the library runs single threaded, so values above 1 act as 1")
        ->check(CLI::PositiveNumber);

    std::function<Report()> run;
    std::string file, file2, name, op, action, entry;
    std::size_t k = 1, size = 2, max_size = 4, denominator = 4;
    bool count = false, fix = false, certify = false, sample = false;
    std::vector<std::string> gen_args;
    SamplePlan plan;

    auto* parse = app.add_subcommand("parse", "parse a DSL file and print its theories");
    parse->add_option("file", file, "DSL file or -")->required();
    parse->callback([&] { run = [&] { return cmd_parse(file); }; });

    auto* demand = app.add_subcommand("demand", "decide (k-)undemanding; exit 3 when demanding");
    demand->add_option("theory", file, "DSL file, - or @name")->required();
    demand->add_option("--k", k, "power of the coordinates")->check(CLI::PositiveNumber);
    demand->add_option("--name", name, "theory name inside the file");
    demand->callback([&] { run = [&] { return cmd_demand(file, name, k); }; });

    auto* mc = app.add_subcommand("model-check", "check a finite algebra against a theory");
    mc->add_option("theory", file, "DSL file, - or @name")->required();
    mc->add_option("algebra", file2, "algebra JSON file")->required();
    mc->add_option("--name", name, "theory name inside the file");
    mc->callback([&] { run = [&] { return cmd_model_check(file, file2, name); }; });

    auto* search = app.add_subcommand("search", "look for a model of a given size");
    search->add_option("theory", file, "DSL file, - or @name")->required();
    search->add_option("--size", size, "universe size")->required()->check(CLI::PositiveNumber);
    search->add_flag("--count", count, "count every model of that size");
    search->add_flag("--fix-first-constant", fix, "pin the first constant to 0");
    search->add_option("--name", name, "theory name inside the file");
    search->callback([&] { run = [&] { return cmd_search(file, name, size, count, fix); }; });

    auto* interp = app.add_subcommand("interp", "interpretations");
    interp->require_subcommand(1);
    interp->fallthrough();
    auto* icheck = interp->add_subcommand("check", "check the first interpret block of a file");
    icheck->add_option("file", file, "DSL file or -")->required();
    icheck->add_option("--max-size", max_size, "largest target model")->check(CLI::PositiveNumber);
    icheck->callback([&] { run = [&] { return cmd_interp_check(file, max_size); }; });

    auto* gen = app.add_subcommand("gen", "generate squaring | sqrt2-hspace | lambda N | power K [algebra]");
    gen->add_option("what", gen_args, "target and its arguments")->required();
    gen->callback([&] { run = [&] { return cmd_gen(gen_args); }; });

    auto* pl = app.add_subcommand("check-pl", "check interval operations against a theory");
    pl->add_option("theory", file, "DSL file, - or @name")->required();
    pl->add_option("witness", file2, "witness JSON file")->required();
    auto* fcert = pl->add_flag("--certify", certify, "exact arrangement check (default)");
    pl->add_flag("--sample", sample, "sampling check; required when the witness multiplies")->excludes(fcert);
    pl->add_option("--grid-denominator", plan.grid_denominator, "grid denominator for --sample")->capture_default_str();
    pl->add_option("--random-points", plan.random_points, "random points per equation for --sample")
        ->capture_default_str();
    pl->add_option("--name", name, "theory name inside the file");
    pl->callback([&] { run = [&] { plan.seed = opt.seed; return cmd_check_pl(file, file2, sample, plan, name); }; });

    auto* tc = app.add_subcommand("tree-check", "check a tree operation against a theory on a grid");
    tc->add_option("tree", file, "tree JSON file")->required();
    tc->add_option("op", op, "median | minority | rooted-meet")->required();
    tc->add_option("theory", file2, "DSL file, - or @name")->required();
    tc->add_option("--grid-denominator", denominator, "grid denominator")->capture_default_str()
        ->check(CLI::PositiveNumber);
    tc->add_option("--name", name, "theory name inside the file");
    tc->callback([&] { run = [&] { return cmd_tree_check(file, op, file2, denominator, name); }; });

    auto* cat = app.add_subcommand("catalog", "the built-in witnesses: run-all | list | show NAME | theory NAME");
    cat->add_option("action", action, "run-all | list | show | theory")->required();
    cat->add_option("entry", entry, "entry name for show and theory");
    cat->callback([&] { run = [&] { plan.seed = opt.seed; return cmd_catalog(action, entry, plan); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        Report r = run();
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        emit(r, opt, ms);
        return exit_code(r.verdict);
    } catch (const std::exception& e) {
        if (opt.json) {
            Json j;
            j["command"] = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();
            j["verdict"] = "error";
            j["error"] = e.what();
            std::cout << j.dump(2) << "\n";
        } else {
            std::cerr << "eqtop: " << e.what() << "\n";
        }
        return 2;
    }
}
