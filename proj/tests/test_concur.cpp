#include <catch2/catch_amalgamated.hpp>

#include "justness/concur.hpp"
#include "justness/corpus.hpp"

using namespace justness;

namespace {

Symbol sym(const char* s) { return Symbol::intern(s); }

Derivation by_label(const Semantics& sem, Process p, const Label& l)
{
    for (auto d : sem.derivations(p))
        if (d.label() == l) return d;
    throw Error("no derivation labelled " + l.str());
}

const ConcVariant all_variants[] = {ConcVariant::Dyn,         ConcVariant::DynDirect, ConcVariant::Static,
                                    ConcVariant::C,           ConcVariant::StaticPrime, ConcVariant::CPrime};

} // namespace

TEST_CASE("broadcast asymmetry")
{
    auto e = named_example("broadcast");
    auto sem = semantics_for(e);
    auto chi = by_label(*sem, e.init, Label::bcast(sym("b")));
    auto v = by_label(*sem, e.init, Label::chan(sym("c")));
    for (auto var : all_variants) {
        INFO(to_string(var));
        CHECK(conc(chi, v, var));
        CHECK_FALSE(conc(v, chi, var));
    }
    CHECK(gh_conc(chi, v));
    CHECK_FALSE(gh_conc(v, chi));
}

TEST_CASE("signalling asymmetry")
{
    for (const char* name : {"signalling", "signalling_enc"}) {
        auto e = named_example(name);
        auto sem = semantics_for(e);
        auto chi = by_label(*sem, e.init, Label::chan(sym("a")));
        auto v = by_label(*sem, e.init, Label::tau());
        for (auto var : all_variants) {
            INFO(name << " " << to_string(var));
            CHECK(conc(chi, v, var));
            CHECK_FALSE(conc(v, chi, var));
        }
    }
}

TEST_CASE("d and e are concurrent only dynamically")
{
    auto e = named_example("concurrent");
    auto sem = semantics_for(e);
    auto chi_d = by_label(*sem, e.init, Label::chan(sym("d")));
    auto chi_e = by_label(*sem, e.init, Label::chan(sym("e")));
    auto chi_tau = by_label(*sem, e.init, Label::tau());
    CHECK(conc(chi_d, chi_e, ConcVariant::Dyn));
    CHECK(conc(chi_d, chi_e, ConcVariant::DynDirect));
    CHECK_FALSE(conc(chi_d, chi_e, ConcVariant::Static));
    CHECK_FALSE(conc(chi_d, chi_e, ConcVariant::C));
    CHECK_FALSE(conc(chi_d, chi_tau, ConcVariant::Dyn));
    CHECK_FALSE(conc(chi_tau, chi_d, ConcVariant::Dyn));
    CHECK(gh_conc(chi_d, chi_e));
    for (auto var : all_variants) CHECK_FALSE(conc(chi_d, chi_d, var));
}

TEST_CASE("successor after a concurrent step")
{
    auto e = named_example("concurrent");
    auto sem = semantics_for(e);
    auto chi_d = by_label(*sem, e.init, Label::chan(sym("d")));
    auto chi_e = by_label(*sem, e.init, Label::chan(sym("e")));
    Derivation next = successor_after(*sem, chi_d, chi_e);
    CHECK(next.source() == chi_e.target());
    CHECK(next.label() == chi_d.label());
    SynchronSet want{Synchron{{Arg::restrict(NameSet({sym("c")})), Arg::par_l(), Arg::par_l()},
                              Leaf{LeafKind::Act, Label::chan(sym("d")), Process::agent(sym("R")), {}}}};
    CHECK(same_set(necessary(next), want));
    CHECK(successor(chi_d, next));
    CHECK_FALSE(successor(next, chi_d));
    CHECK_FALSE(equiv(chi_d, next));
    CHECK(equiv(chi_d, chi_d));
    auto chi_tau = by_label(*sem, e.init, Label::tau());
    CHECK_THROWS_AS(successor_after(*sem, chi_d, chi_tau), PreconditionViolated);
}

TEST_CASE("alternative static concurrency")
{
    auto t1e = named_example("alt_static");
    auto t2e = named_example("alt_static_restrict");
    auto s1 = semantics_for(t1e);
    auto s2 = semantics_for(t2e);
    auto t1 = s1->derivations(t1e.init).front();
    auto t2 = s2->derivations(t2e.init).front();
    CHECK_FALSE(conc(t1, t2, ConcVariant::Static));
    CHECK_FALSE(conc(t1, t2, ConcVariant::Dyn));
    CHECK(conc(t1, t2, ConcVariant::C));
}

TEST_CASE("type discipline")
{
    auto e = named_example("broadcast");
    auto sem = semantics_for(e);
    auto recv = by_label(*sem, e.init, Label::receive(sym("b")));
    auto chi = by_label(*sem, e.init, Label::bcast(sym("b")));
    CHECK_THROWS_AS(conc(recv, chi, ConcVariant::Dyn), TypeDiscipline);
    CHECK_NOTHROW(conc(chi, recv, ConcVariant::Dyn));

    auto p = named_example("unfeasible");
    auto ps = semantics_for(p);
    auto emit = ps->derivations(p.init).front();
    CHECK_NOTHROW(conc(emit, emit, ConcVariant::Static));
    CHECK_THROWS_AS(gh_conc(emit, emit), TypeDiscipline);
}

TEST_CASE("inductive characterisation on the two-tau example")
{
    auto e = named_example("two_tau");
    auto sem = semantics_for(e);
    const auto& ds = sem->derivations(e.init);
    for (auto t : ds)
        for (auto u : ds) {
            if (!in_tr_sbullet(t)) continue;
            INFO(t.str() << " vs " << u.str());
            CHECK(inductive_conc(t, u, Inductive::Dynamic) == conc(t, u, ConcVariant::DynDirect));
            CHECK(inductive_conc(t, u, Inductive::Static) == conc(t, u, ConcVariant::Static));
        }
}

TEST_CASE("variant names")
{
    for (auto v : all_variants) CHECK(variant_from_string(to_string(v)) == v);
    CHECK(variant_from_string("gh") == ConcVariant::GH);
    CHECK_FALSE(variant_from_string("nope"));
}
