#include "justness/suites.hpp"

#include "justness/criteria.hpp"

#include <chrono>

namespace justness {

void SuiteResult::fail(std::string what)
{
    ++violations;
    if (failures.size() < 10) failures.push_back(std::move(what));
}

namespace {

const ConcVariant kJustVariants[] = {ConcVariant::Dyn, ConcVariant::Static, ConcVariant::C, ConcVariant::StaticPrime,
                                     ConcVariant::CPrime};

std::string where(const CorpusEntry& e) { return e.name + " [" + print(e.init) + "]"; }

LabelSet with_emissions(const Semantics& sem, LabelSet b)
{
    auto em = sem.emissions();
    b.insert(em.begin(), em.end());
    return b;
}

SuiteResult relation_chain(const std::vector<CorpusEntry>& corpus)
{
    SuiteResult r;
    for (const auto& e : corpus) {
        Ltsc lts = explore(e);
        const auto& ds = lts.derivations();
        for (auto t : ds) {
            if (!in_tr_sbullet(t)) continue;
            if (in_tr_bullet(t)) {
                for (auto v : kJustVariants) {
                    ++r.checked;
                    if (conc(t, t, v)) r.fail(where(e) + ": " + t.str() + " concurrent with itself under " + std::string(to_string(v)));
                }
            }
            for (auto u : ds) {
                bool s = conc(t, u, ConcVariant::Static), sp = conc(t, u, ConcVariant::StaticPrime),
                     cp = conc(t, u, ConcVariant::CPrime), c = conc(t, u, ConcVariant::C),
                     d = conc(t, u, ConcVariant::Dyn), dd = conc(t, u, ConcVariant::DynDirect);
                r.checked += 6;
                auto pair = [&] { return where(e) + ": " + t.str() + " vs " + u.str(); };
                if (s && !sp) r.fail(pair() + ": static without static-prime");
                if (sp && !cp) r.fail(pair() + ": static-prime without c-prime");
                if (cp && !c) r.fail(pair() + ": c-prime without c");
                if (s && !d) r.fail(pair() + ": static without dyn");
                if (dd && !d) r.fail(pair() + ": dyn-direct without dyn");
                if (t.source() == u.source() && (s != c || d != dd)) r.fail(pair() + ": same-source variants disagree");
            }
        }
    }
    return r;
}

SuiteResult inductive_oracle(const std::vector<CorpusEntry>& corpus)
{
    SuiteResult r;
    for (const auto& e : corpus) {
        Ltsc lts = explore(e);
        const auto& ds = lts.derivations();
        for (auto t : ds) {
            if (!in_tr_sbullet(t)) continue;
            for (auto u : ds) {
                auto pair = [&] { return where(e) + ": " + t.str() + " vs " + u.str(); };
                r.checked += 2;
                if (inductive_conc(t, u, Inductive::Dynamic) != conc(t, u, ConcVariant::DynDirect))
                    r.fail(pair() + ": inductive dynamic disagrees with dyn-direct");
                if (inductive_conc(t, u, Inductive::Static) != conc(t, u, ConcVariant::Static))
                    r.fail(pair() + ": inductive static disagrees with static");
                if (in_tr_bullet(t)) {
                    ++r.checked;
                    bool want = conc(t, u, ConcVariant::Dyn) && t.source() == u.source();
                    if (gh_conc(t, u) != want) r.fail(pair() + ": gh disagrees with same-source dyn");
                }
            }
        }
    }
    return r;
}

// Preorder, inherited properties and the successor construction.
SuiteResult closure(const std::vector<CorpusEntry>& corpus)
{
    SuiteResult r;
    for (const auto& e : corpus) {
        Ltsc lts = explore(e);
        const Semantics& sem = lts.semantics();
        const auto& ds = lts.derivations();
        for (auto t : ds) {
            if (!in_tr_sbullet(t)) continue;
            ++r.checked;
            if (!successor(t, t)) r.fail(where(e) + ": successor not reflexive at " + t.str());
            for (auto t2 : ds) {
                if (!in_tr_sbullet(t2) || !successor(t, t2)) continue;
                r.checked += 2;
                if (t.label() != t2.label()) r.fail(where(e) + ": successor changes the label of " + t.str());
                if (in_tr_bullet(t) && in_tr_bullet(t2) && conc(t, t2, ConcVariant::Dyn))
                    r.fail(where(e) + ": " + t.str() + " concurrent with its successor " + t2.str());
                for (auto v : ds) {
                    ++r.checked;
                    if (conc(t, v, ConcVariant::Dyn) && !conc(t2, v, ConcVariant::Dyn))
                        r.fail(where(e) + ": concurrency not inherited by " + t2.str());
                }
                for (auto t3 : ds) {
                    if (in_tr_sbullet(t3) && successor(t2, t3) && !successor(t, t3))
                        r.fail(where(e) + ": successor not transitive via " + t2.str());
                }
            }
            for (auto v : ds) {
                if (v.source() != t.source() || !conc(t, v, ConcVariant::Dyn)) continue;
                ++r.checked;
                try {
                    Derivation u = successor_after(sem, t, v);
                    if (u.source() != v.target() || !successor(t, u))
                        r.fail(where(e) + ": bad successor of " + t.str() + " after " + v.str());
                    if (conc(t, v, ConcVariant::Static) && !equiv(t, u))
                        r.fail(where(e) + ": static concurrency but " + u.str() + " not equivalent to " + t.str());
                } catch (const Error& ex) {
                    r.fail(where(e) + ": " + ex.what());
                }
            }
        }
        // along finite paths: a same-label interfering successor remains
        for (const auto& pi : simple_lassos(lts)) {
            if (!pi.finite()) continue;
            for (auto t : sem.derivations(pi.first_state())) {
                if (!in_tr_bullet(t)) continue;
                bool all = true;
                for (const auto& s : pi.stem()) all = all && conc(t, s.step, ConcVariant::Dyn);
                if (!all) continue;
                ++r.checked;
                bool found = false;
                for (auto u : sem.derivations(pi.last_state()))
                    if (in_tr_bullet(u) && u.label() == t.label() && !conc(t, u, ConcVariant::Dyn)) found = true;
                if (!found) r.fail(where(e) + ": no successor of " + t.str() + " at the end of " + pi.str());
            }
        }
    }
    return r;
}

SuiteResult agreement_static_dynamic(const std::vector<CorpusEntry>& corpus)
{
    SuiteResult r;
    for (const auto& e : corpus) {
        Ltsc lts = explore(e);
        const Semantics& sem = lts.semantics();
        bool sig = has_signals(e.calc);
        auto bs = blocking_sets(sem.receptive(), lts.relevant_labels());
        for (const auto& pi : simple_lassos(lts)) {
            std::vector<std::vector<Interference>> tables;
            for (auto v : kJustVariants) tables.push_back(obligations(pi, v));
            auto sigtable = sig ? obligations(pi, ConcVariant::Dyn, true) : std::vector<Interference>{};
            LabelSet minb = minimal_blocking_set(pi, ConcVariant::Dyn);
            auto rho = to_abstract(pi);
            for (const auto& b : bs) {
                ++r.checked;
                bool ref = judge(tables[0], b).holds;
                auto ctx = [&] { return where(e) + ": " + pi.str() + " B=" + to_string(b); };
                for (std::size_t i = 1; i < tables.size(); ++i)
                    if (judge(tables[i], b).holds != ref)
                        r.fail(ctx() + ": " + std::string(to_string(kJustVariants[i])) + " disagrees with dyn");
                if (ref && !is_progressing(pi, b).holds) r.fail(ctx() + ": just but not progressing");
                if (ref != subset(minb, b)) r.fail(ctx() + ": minimal blocking set " + to_string(minb) + " disagrees");
                if (sig && judge(sigtable, with_emissions(sem, b)).holds != ref)
                    r.fail(ctx() + ": sigjust with all emissions disagrees");
                bool abs = abstract_is_just(rho, b).holds;
                if (ref && !abs) r.fail(ctx() + ": concrete just, abstract not");
                if (abs && !concretize(rho, b)) r.fail(ctx() + ": abstract just without a concrete witness");
            }
        }
    }
    return r;
}

SuiteResult agreement_coinductive(const std::vector<CorpusEntry>& corpus)
{
    SuiteResult r;
    for (const auto& e : corpus) {
        Ltsc lts = explore(e);
        const Semantics& sem = lts.semantics();
        bool sig = has_signals(e.calc);
        auto bs = blocking_sets(sem.receptive(), lts.relevant_labels());
        for (const auto& pi : simple_lassos(lts)) {
            auto table = obligations(pi, ConcVariant::Static);
            auto block = coinductive_minimal(pi, sig);
            if (replay(block.trace, sem) != block.minimal_set) r.fail(where(e) + ": trace replay differs for " + pi.str());
            for (const auto& b : bs) {
                ++r.checked;
                bool ref = judge(table, b).holds;
                bool co = coinductive_is_just(pi, b).holds;
                auto ctx = [&] { return where(e) + ": " + pi.str() + " B=" + to_string(b); };
                if (co != ref) r.fail(ctx() + ": coinductive " + std::to_string(co) + " vs static " + std::to_string(ref));
                auto en = coinductive_enumerate(pi, b);
                if (!en) ++r.skipped;
                else if (*en != co) r.fail(ctx() + ": enumeration " + std::to_string(*en) + " vs minimal set");
            }
        }
    }
    return r;
}

SuiteResult feasibility(const std::vector<CorpusEntry>& corpus)
{
    SuiteResult r;
    for (const auto& e : corpus) {
        Ltsc lts = explore(e);
        const Semantics& sem = lts.semantics();
        std::size_t budget = 10 * lts.states().size() * lts.derivations().size();
        auto bs = blocking_sets(sem.receptive(), lts.relevant_labels());
        for (const auto& pi : simple_lassos(lts)) {
            if (!pi.finite()) continue;
            for (const auto& b : bs) {
                ++r.checked;
                auto ctx = [&] { return where(e) + ": " + pi.str() + " B=" + to_string(b); };
                auto res = extend_to_just(pi, b, ConcVariant::Dyn, budget);
                if (res.exhausted) {
                    r.fail(ctx() + ": budget exhausted");
                    continue;
                }
                if (!is_just(res.path, b, ConcVariant::Dyn).holds || !is_just(res.path, b, ConcVariant::Static).holds)
                    r.fail(ctx() + ": extension not just: " + res.path.str());
                for (std::size_t p = pi.size(); p < res.path.size(); ++p)
                    if (b.count(res.path.at(p).step.label())) r.fail(ctx() + ": extension uses a blocked label");
            }
        }
    }
    return r;
}

SuiteResult fair_implies_just(const std::vector<CorpusEntry>& corpus)
{
    SuiteResult r;
    for (const auto& e : corpus) {
        Ltsc lts = explore(e);
        const Semantics& sem = lts.semantics();
        auto bs = blocking_sets(sem.receptive(), lts.relevant_labels());
        TaskFamily fams[] = {tasks_per_action(lts), tasks_per_transition(lts), tasks_from_conc(lts), tasks_whole(lts)};
        for (const auto& pi : simple_lassos(lts)) {
            auto table = obligations(pi, ConcVariant::Dyn);
            for (const auto& b : bs) {
                auto ctx = [&] { return where(e) + ": " + pi.str() + " B=" + to_string(b); };
                bool just = judge(table, b).holds;
                bool prog = is_progressing(pi, b).holds;
                for (std::size_t k = 0; k < 4; ++k) {
                    r.checked += 3;
                    bool s = is_fair(pi, b, fams[k], FairMode::Strong).holds;
                    bool w = is_fair(pi, b, fams[k], FairMode::Weak).holds;
                    bool j = is_fair(pi, b, fams[k], FairMode::J).holds;
                    if (s && !w) r.fail(ctx() + ": strong but not weak");
                    if (w && !j) r.fail(ctx() + ": weak but not J");
                    if (k == 2 && w && !just) r.fail(ctx() + ": weakly fair for conc tasks but not just");
                    if (k == 3 && (s != prog || w != prog || j != prog)) r.fail(ctx() + ": whole-Tr° fairness differs from progress");
                }
            }
        }
    }
    return r;
}

SuiteResult discard_lemma(const std::vector<CorpusEntry>& corpus)
{
    SuiteResult r;
    for (const auto& e : corpus) {
        if (!has_broadcast(e.calc)) continue;
        CorpusEntry d = e;
        d.calc = Calculus::ABCd;
        Ltsc lts = explore(d);
        const Semantics& sem = lts.semantics();
        for (auto p : lts.states())
            for (Symbol b : sem.broadcast_universe()) {
                ++r.checked;
                bool hears = sem.admits(p, Label::receive(b));
                bool discards = false;
                for (auto x : sem.derivations(p))
                    if (x.label() == Label::discard(b)) {
                        discards = true;
                        if (x.target() != p) r.fail(where(e) + ": discard changes state " + print(p));
                    }
                if (discards == hears) r.fail(where(e) + ": discard of " + b.str() + " at " + print(p) + " vs receive");
            }
    }
    return r;
}

SuiteResult abc_abcd(const std::vector<CorpusEntry>& corpus)
{
    SuiteResult r;
    for (const auto& e : corpus) {
        if (!has_broadcast(e.calc)) continue;
        ++r.checked;
        if (!abc_abcd_agreement(e.init, e.env)) r.fail(where(e) + ": ABC and ABCd transition relations differ");
    }
    return r;
}

} // namespace

const std::vector<std::pair<std::string, Suite>>& suites()
{
    static const std::vector<std::pair<std::string, Suite>> all{
        {"relation-chain", relation_chain},
        {"inductive-oracle", inductive_oracle},
        {"closure", closure},
        {"agreement-static-dynamic", agreement_static_dynamic},
        {"agreement-coinductive", agreement_coinductive},
        {"feasibility", feasibility},
        {"fair-implies-just", fair_implies_just},
        {"discard-lemma", discard_lemma},
        {"abc-abcd", abc_abcd},
    };
    return all;
}

SuiteResult run_suite(const std::string& name, const std::vector<CorpusEntry>& corpus)
{
    for (const auto& [n, s] : suites())
        if (n == name) {
            auto t0 = std::chrono::steady_clock::now();
            SuiteResult r = s(corpus);
            r.name = name;
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return r;
        }
    throw Error("unknown suite '" + name + "'");
}

} // namespace justness
