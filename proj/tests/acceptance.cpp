// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include "justness/concur.hpp"
#include "justness/corpus.hpp"
#include "justness/criteria.hpp"
#include "justness/suites.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace justness;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

Symbol sym(const char* s) { return Symbol::intern(s); }

Derivation by_label(const Semantics& sem, Process p, const Label& l)
{
    for (auto d : sem.derivations(p))
        if (d.label() == l) return d;
    throw Error("no derivation labelled " + l.str());
}

int failures = 0;

void criterion(int n, const char* title, double limit_s, const std::function<Outcome()>& body)
{
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && s > limit_s) o.require(false, "took " + std::to_string(s) + " s, limit " + std::to_string(limit_s));
    if (!o.ok) ++failures;
    std::printf("%s %2d %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", n, title, s, o.detail.empty() ? "" : ": ",
                o.detail.c_str());
    std::fflush(stdout);
}

void suite(Outcome& o, const std::string& name, const std::vector<CorpusEntry>& corpus)
{
    SuiteResult r = run_suite(name, corpus);
    std::string summary = name + " " + std::to_string(r.checked) + " checks, " + std::to_string(r.violations) +
                          " violations, " + std::to_string(r.skipped) + " skipped";
    if (!o.detail.empty() && o.ok) o.detail += "; ";
    if (o.ok) o.detail += summary;
    o.require(r.pass(), summary + (r.failures.empty() ? "" : "; first: " + r.failures.front()));
}

Outcome golden_synchrons()
{
    Outcome o;
    auto e = named_example("concurrent");
    auto sem = semantics_for(e);
    Arg res = Arg::restrict(NameSet({sym("c")}));
    auto leaf = [](const char* a, Label l) { return Leaf{LeafKind::Act, l, Process::agent(sym(a)), {}}; };
    SynchronSet tau{Synchron{{res, Arg::par_l(), Arg::sum_l()}, leaf("Q", Label::chan(sym("c")))},
                    Synchron{{res, Arg::par_r()}, leaf("T", Label::cochan(sym("c")))}};
    SynchronSet d{Synchron{{res, Arg::par_l(), Arg::sum_r(), Arg::par_l()}, leaf("R", Label::chan(sym("d")))}};
    SynchronSet ee{Synchron{{res, Arg::par_l(), Arg::sum_r(), Arg::par_r()}, leaf("S", Label::chan(sym("e")))}};
    auto chi_tau = by_label(*sem, e.init, Label::tau());
    auto chi_d = by_label(*sem, e.init, Label::chan(sym("d")));
    auto chi_e = by_label(*sem, e.init, Label::chan(sym("e")));
    o.require(sem->derivations(e.init).size() == 3, "expected 3 derivations");
    o.require(same_set(chi_tau.synchrons(), tau), "tau: " + str(chi_tau.synchrons()));
    o.require(same_set(chi_d.synchrons(), d), "d: " + str(chi_d.synchrons()));
    o.require(same_set(chi_e.synchrons(), ee), "e: " + str(chi_e.synchrons()));
    if (o.ok) o.detail = str(chi_tau.synchrons());
    return o;
}

Outcome asymmetry()
{
    Outcome o;
    auto check = [&](const char* name, Label chi_l, Label v_l) {
        auto e = named_example(name);
        auto sem = semantics_for(e);
        auto chi = by_label(*sem, e.init, chi_l);
        auto v = by_label(*sem, e.init, v_l);
        for (auto var : {ConcVariant::Dyn, ConcVariant::Static, ConcVariant::C}) {
            std::string tag = std::string(name) + " " + std::string(to_string(var));
            o.require(conc(chi, v, var), tag + ": chi not unaffected by v");
            o.require(!conc(v, chi, var), tag + ": v unaffected by chi");
        }
    };
    check("broadcast", Label::bcast(sym("b")), Label::chan(sym("c")));
    check("broadcast_discard", Label::bcast(sym("b")), Label::chan(sym("c")));
    check("signalling", Label::chan(sym("a")), Label::tau());
    check("signalling_enc", Label::chan(sym("a")), Label::tau());
    return o;
}

// ⌣ against the brute-force predecessor search, on the synchrons of each
// corpus system.
void synchron_search(Outcome& o, const std::vector<CorpusEntry>& corpus)
{
    std::size_t checked = 0, skipped = 0;
    for (const auto& e : corpus) {
        auto lts = explore(e);
        SynchronSet all;
        for (auto d : lts.derivations())
            for (const auto& s : d.synchrons())
                if (std::find(all.begin(), all.end(), s) == all.end()) all.push_back(s);
        for (const auto& a : all)
            for (const auto& b : all) {
                auto want = oracle::concurrent_by_search(a, b);
                if (!want) {
                    ++skipped;
                    continue;
                }
                ++checked;
                o.require(concurrent(a, b) == *want, e.name + ": " + a.str() + " vs " + b.str());
            }
    }
    if (o.ok)
        o.detail += "; synchron search " + std::to_string(checked) + " pairs, " + std::to_string(skipped) + " skipped";
    o.require(checked > 0, "no synchron pairs checked");
}

void sos_oracle(Outcome& o)
{
    const std::size_t samples = 20000;
    std::size_t exhaustive = 0, sampled = 0;
    for (auto calc : {Calculus::CCS, Calculus::ABC, Calculus::ABCd, Calculus::CCSS_PRED, Calculus::CCSS_ENC}) {
        auto g = oracle::grammar(calc);
        std::vector<Process> terms;
        for (const auto& layer : oracle::terms_by_depth(g, 2)) terms.insert(terms.end(), layer.begin(), layer.end());
        exhaustive += terms.size();
        std::mt19937_64 rng(7);
        for (int depth : {3, 4})
            for (std::size_t i = 0; i < samples; ++i) terms.push_back(oracle::random_term(g, depth, rng));
        sampled += 2 * samples;
        Semantics sem(calc, g.env, terms);
        oracle::SosOracle orc(calc, g.env, sem.broadcast_universe());
        for (auto p : terms) {
            auto diff = oracle::compare_derivations(sem, orc, p);
            o.require(!diff, std::string(to_string(calc)) + " " + (diff ? *diff : ""));
            if (!o.ok) return;
        }
        if (has_broadcast(calc))
            for (auto p : terms) o.require(abc_abcd_agreement(p, g.env), "abc/abcd disagree on " + print(p));
    }
    o.detail += "; SOS oracle " + std::to_string(exhaustive) + " exhaustive + " + std::to_string(sampled) +
                " sampled terms of depth 3 and 4";
}

Outcome infeasible()
{
    Outcome o;
    auto u = named_example("unfeasible");
    auto lts = explore(u);
    auto sem = lts.semantics_ptr();
    o.require(lts.states().size() == 1, "0^s should have one state");
    // every path from 0^s is the empty path
    for (const auto& pi : simple_lassos(lts)) {
        o.require(!is_sigjust(pi, {}).holds, "a path of 0^s is empty-sigjust: " + pi.str());
    }
    Lasso empty = make_lasso(sem, u.init, {});
    ExtendResult r = extend_to_just(empty, {}, ConcVariant::Dyn, 100);
    o.require(!r.exhausted, "extension exhausted its budget");
    o.require(is_just(r.path, {}).holds, "extended path is not just");
    o.require(!is_sigjust(r.path, {}).holds, "extended path is empty-sigjust");
    return o;
}

} // namespace

int main()
{
    auto t0 = std::chrono::steady_clock::now();
    std::vector<CorpusEntry> corpus = full_corpus(1, 200);
    std::printf("corpus: %zu systems (loaded in %.2f s)\n", corpus.size(),
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());

    criterion(1, "golden synchrons of example concurrent", 1.0, golden_synchrons);
    criterion(2, "asymmetry of broadcast and signalling", 0, asymmetry);
    criterion(3, "relation chain and irreflexivity", 60.0, [&] {
        Outcome o;
        o.require(corpus.size() >= 200, "corpus has fewer than 200 terms");
        suite(o, "relation-chain", corpus);
        return o;
    });
    criterion(4, "inductive characterisations", 0, [&] {
        Outcome o;
        suite(o, "inductive-oracle", corpus);
        synchron_search(o, corpus);
        return o;
    });
    criterion(5, "justness agrees across variants", 300.0, [&] {
        Outcome o;
        suite(o, "agreement-static-dynamic", corpus);
        return o;
    });
    criterion(6, "coinductive justness agrees", 0, [&] {
        Outcome o;
        suite(o, "agreement-coinductive", corpus);
        return o;
    });
    criterion(7, "feasibility of justness", 0, [&] {
        Outcome o;
        suite(o, "feasibility", corpus);
        return o;
    });
    criterion(8, "fairness lattice and closure", 0, [&] {
        Outcome o;
        suite(o, "fair-implies-just", corpus);
        suite(o, "closure", corpus);
        return o;
    });
    criterion(9, "SOS cross-checks", 0, [&] {
        Outcome o;
        suite(o, "discard-lemma", corpus);
        suite(o, "abc-abcd", corpus);
        if (o.ok) sos_oracle(o);
        return o;
    });
    criterion(10, "sigjustness is not feasible, justness is", 0, infeasible);

    std::printf("%s (%d failed)\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
