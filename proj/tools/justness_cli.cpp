// Command-line front end: parse, lts, conc, just, sigjust, fair, extend,
// minb and check.

#include "justness/corpus.hpp"
#include "justness/criteria.hpp"
#include "justness/io.hpp"
#include "justness/suites.hpp"
#include "justness/syntax.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace justness;

namespace {

struct Config {
    std::string dialect = "ccs";
    std::vector<std::string> defs;
    std::size_t bound = 1000;
    std::string blocking;
    std::string variant = "dyn";
    std::string format = "json";
    std::size_t budget = 0;  // 0: 10·|states|·|derivations|
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Loaded {
    System sys;
    std::shared_ptr<const Semantics> sem;
    std::unique_ptr<Ltsc> lts;
};

// TERM is either a system file with an init line or a term; --defs files
// contribute definitions.
Loaded load(const std::string& term, const Config& cfg)
{
    auto calc = calculus_from_string(cfg.dialect);
    if (!calc) throw Error("unknown dialect '" + cfg.dialect + "'");
    std::string text;
    for (const auto& d : cfg.defs) text += slurp(d) + "\n";
    if (std::filesystem::is_regular_file(term)) text += slurp(term) + "\n";
    else text += "init := " + term + "\n";
    Loaded l;
    l.sys = parse_system(text, *calc);
    if (!l.sys.init) throw Error("no initial term");
    l.sem = std::make_shared<Semantics>(l.sys.calc, l.sys.env, std::vector<Process>{*l.sys.init});
    l.lts = std::make_unique<Ltsc>(l.sem, *l.sys.init, cfg.bound);
    return l;
}

LabelSet blocking_set(const Loaded& l, const Config& cfg, bool sig = false)
{
    LabelSet b = parse_label_set(cfg.blocking, l.sem->signal_universe());
    LabelSet missing;
    for (const auto& r : l.sem->receptive())
        if (!b.count(r)) missing.insert(r);
    if (!missing.empty()) {
        std::cerr << "note: B augmented with Rec " << to_string(missing) << "\n";
        b.insert(missing.begin(), missing.end());
    }
    l.sem->check_blocking_set(b, sig);
    return b;
}

ConcVariant variant(const Config& cfg)
{
    auto v = variant_from_string(cfg.variant);
    if (!v) throw Error("unknown variant '" + cfg.variant + "'");
    return *v;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int verdict_out(const Verdict& v, const LabelSet& b, const Config& cfg, const Lasso& pi)
{
    if (cfg.format == "text") {
        std::cout << (v.holds ? "holds" : "fails") << "  B=" << to_string(b) << "\n  path: " << pi.str() << "\n";
        if (!v.reason.empty()) std::cout << "  " << v.reason << "\n";
    } else {
        Json j = to_json(v);
        j["B"] = to_string(b);
        j["path"] = to_json(pi);
        emit(j);
    }
    return v.holds ? 0 : 3;
}

TaskFamily task_family(const std::string& which, const Ltsc& lts)
{
    if (which == "per-action") return tasks_per_action(lts);
    if (which == "per-transition") return tasks_per_transition(lts);
    if (which == "whole") return tasks_whole(lts);
    if (which == "conc") return tasks_from_conc(lts);
    return tasks_from_json(read_json_file(which), lts);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Justness and fairness checker for CCS, ABC, ABCd and CCS with signals"};
    app.require_subcommand(1);
    app.footer("Exit status: 0 success or verdict holds, 1 error or failed suite, 2 extension budget\n"
               "exhausted, 3 verdict fails.");
    Config cfg;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--dialect", cfg.dialect, "ccs, abc, abcd, ccss or ccss-enc")->capture_default_str();
        sub->add_option("--defs", cfg.defs, "definition files (A := term, f := [a->b])");
        sub->add_option("--bound", cfg.bound, "maximum number of reachable states")->capture_default_str();
    };
    std::string term, lasso_file, tasks = "conc", mode = "weak";
    std::vector<std::string> suite_names;
    std::uint64_t seed = 1;
    std::size_t random_count = 200;
    bool dot = false, coinductive = false, abstract = false;

    auto* parse = app.add_subcommand("parse", "parse and pretty-print a term");
    auto* lts = app.add_subcommand("lts", "reachable LTSC");
    auto* concm = app.add_subcommand("conc", "concurrency matrix of the reachable derivations");
    auto* just = app.add_subcommand("just", "B-justness of a lasso");
    auto* sigjust = app.add_subcommand("sigjust", "B-sigjustness of a lasso");
    auto* fair = app.add_subcommand("fair", "fairness of a lasso");
    auto* extend = app.add_subcommand("extend", "extend a finite path to a just one");
    auto* minb = app.add_subcommand("minb", "least blocking set of a lasso");
    auto* check = app.add_subcommand("check", "run property suites over the corpus");

    for (auto* sub : {parse, lts, concm, just, sigjust, fair, extend, minb}) {
        common(sub);
        sub->add_option("term", term, "term or system file")->required();
        sub->add_option("--format", cfg.format, "json, text, dot or csv")->capture_default_str();
    }
    lts->add_flag("--dot", dot, "DOT output");
    concm->add_option("--variant", cfg.variant, "dyn, dyn-direct, static, c, static-prime, c-prime, gh")->capture_default_str();
    for (auto* sub : {just, sigjust, fair, minb}) sub->add_option("lasso", lasso_file, "lasso JSON file")->required();
    extend->add_option("lasso", lasso_file, "finite prefix (JSON); default: the initial state");
    for (auto* sub : {just, sigjust, fair, extend}) sub->add_option("--B", cfg.blocking, "blocking labels, comma separated");
    for (auto* sub : {just, sigjust, extend, minb})
        sub->add_option("--variant", cfg.variant, "concurrency variant")->capture_default_str();
    just->add_flag("--coinductive", coinductive, "decide by the coinductive characterisation");
    just->add_flag("--abstract", abstract, "read the lasso as an abstract path");
    fair->add_option("--tasks", tasks, "per-action, per-transition, whole, conc, or a task file")->capture_default_str();
    fair->add_option("--mode", mode, "strong, weak or j")->capture_default_str();
    extend->add_option("--budget", cfg.budget, "maximum number of added steps");
    minb->add_flag("--coinductive", coinductive, "also print the recursion trace");
    check->add_option("suites", suite_names, "suites to run (default: all)");
    check->add_option("--seed", seed, "random corpus seed")->capture_default_str();
    check->add_option("--random", random_count, "number of random systems")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) {
            auto corpus = full_corpus(seed, random_count);
            if (suite_names.empty())
                for (const auto& s : suites()) suite_names.push_back(s.first);
            bool ok = true;
            for (const auto& n : suite_names) {
                SuiteResult r = run_suite(n, corpus);
                std::cout << (r.pass() ? "PASS " : "FAIL ") << n << ": " << r.checked << " checks, " << r.violations
                          << " violations, " << r.skipped << " skipped, " << r.seconds << " s\n";
                for (const auto& f : r.failures) std::cout << "  " << f << "\n";
                ok = ok && r.pass();
            }
            return ok ? 0 : 1;
        }

        Loaded l = load(term, cfg);
        const Ltsc& g = *l.lts;

        if (*parse) {
            Process p = *l.sys.init;
            if (cfg.format == "text") {
                std::cout << print(p) << "\n";
            } else {
                emit({{"term", print(p)},
                      {"dialect", std::string(to_string(l.sys.calc))},
                      {"size", term_size(p)},
                      {"depth", term_depth(p)},
                      {"agents", l.sys.env->agents().size()}});
            }
            return 0;
        }
        if (*lts) {
            if (dot || cfg.format == "dot") std::cout << to_dot(g);
            else if (cfg.format == "text") {
                for (std::size_t i = 0; i < g.derivations().size(); ++i)
                    std::cout << i << ": " << g.source_index(i) << " -" << g.derivations()[i].label().str() << "-> "
                              << g.target_index(i) << "   " << g.derivations()[i].str() << "\n";
            } else emit(to_json(g));
            return 0;
        }
        if (*concm) {
            auto v = variant(cfg);
            auto m = conc_matrix(g, v);
            if (v == ConcVariant::GH)
                for (std::size_t i = 0; i < m.size(); ++i)
                    for (std::size_t k = 0; k < m.size(); ++k)
                        if (g.source_index(i) != g.source_index(k)) m[i][k] = -1;
            if (cfg.format == "csv") std::cout << matrix_csv(m);
            else emit(matrix_json(g, m, v));
            return 0;
        }
        if (*extend) {
            LabelSet b = blocking_set(l, cfg);
            Lasso prefix = lasso_file.empty() ? make_lasso(l.sem, g.initial(), {}) : lasso_from_json(read_json_file(lasso_file), g);
            std::size_t budget = cfg.budget ? cfg.budget : 10 * g.states().size() * g.derivations().size();
            auto res = extend_to_just(prefix, b, variant(cfg), budget);
            Json j{{"exhausted", res.exhausted}, {"steps_added", res.steps_added}, {"B", to_string(b)}, {"path", to_json(res.path)}};
            if (!res.exhausted) j["just"] = is_just(res.path, b, variant(cfg)).holds;
            if (cfg.format == "text") std::cout << (res.exhausted ? "exhausted: " : "") << res.path.str() << "\n";
            else emit(j);
            return res.exhausted ? 2 : 0;
        }

        Json lj = read_json_file(lasso_file);
        if (*just && abstract) {
            LabelSet b = blocking_set(l, cfg);
            auto rho = abstract_lasso_from_json(lj, g);
            auto v = abstract_is_just(rho, b, variant(cfg));
            Json j = to_json(v);
            j["B"] = to_string(b);
            emit(j);
            return v.holds ? 0 : 3;
        }
        Lasso pi = lasso_from_json(lj, g);
        if (*just) {
            LabelSet b = blocking_set(l, cfg);
            return verdict_out(coinductive ? coinductive_is_just(pi, b) : is_just(pi, b, variant(cfg)), b, cfg, pi);
        }
        if (*sigjust) {
            LabelSet b = blocking_set(l, cfg, true);
            return verdict_out(is_sigjust(pi, b, variant(cfg)), b, cfg, pi);
        }
        if (*fair) {
            LabelSet b = blocking_set(l, cfg);
            auto m = fair_mode_from_string(mode);
            if (!m) throw Error("unknown mode '" + mode + "'");
            return verdict_out(is_fair(pi, b, task_family(tasks, g), *m), b, cfg, pi);
        }
        if (*minb) {
            LabelSet m = minimal_blocking_set(pi, variant(cfg));
            Json j{{"minimal", to_string(m)}};
            if (coinductive) {
                auto r = coinductive_minimal(pi, has_signals(l.sys.calc));
                j["coinductive"] = to_string(r.minimal_set);
            }
            if (cfg.format == "text") std::cout << to_string(m) << "\n";
            else emit(j);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
