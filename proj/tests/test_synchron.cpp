#include <catch2/catch_amalgamated.hpp>

#include "justness/corpus.hpp"
#include "oracle.hpp"

using namespace justness;

namespace {

Symbol sym(const char* s) { return Symbol::intern(s); }

Synchron act(ArgString path, Label l, const char* agent)
{
    return Synchron{std::move(path), Leaf{LeafKind::Act, l, Process::agent(sym(agent)), {}}};
}

Derivation by_label(const Semantics& sem, Process p, const Label& l)
{
    for (auto d : sem.derivations(p))
        if (d.label() == l) return d;
    throw Error("no derivation labelled " + l.str());
}

} // namespace

TEST_CASE("synchrons of example concurrent")
{
    auto e = named_example("concurrent");
    auto sem = semantics_for(e);
    Arg res = Arg::restrict(NameSet({sym("c")}));
    auto chi_tau = by_label(*sem, e.init, Label::tau());
    auto chi_d = by_label(*sem, e.init, Label::chan(sym("d")));
    auto chi_e = by_label(*sem, e.init, Label::chan(sym("e")));

    SynchronSet tau{act({res, Arg::par_l(), Arg::sum_l()}, Label::chan(sym("c")), "Q"),
                    act({res, Arg::par_r()}, Label::cochan(sym("c")), "T")};
    CHECK(same_set(chi_tau.synchrons(), tau));
    CHECK(same_set(chi_d.synchrons(), {act({res, Arg::par_l(), Arg::sum_r(), Arg::par_l()}, Label::chan(sym("d")), "R")}));
    CHECK(same_set(chi_e.synchrons(), {act({res, Arg::par_l(), Arg::sum_r(), Arg::par_r()}, Label::chan(sym("e")), "S")}));
    CHECK(str(chi_tau.synchrons()) == "{\\c |_L +_L (c^Q), \\c |_R ('c^T)}");
}

TEST_CASE("necessary and active synchrons of a broadcast")
{
    auto s = parse_system("init := b! | (b? + c)", Calculus::ABC);
    Semantics sem(s.calc, s.env, {*s.init});
    auto bang = by_label(sem, *s.init, Label::bcast(sym("b")));
    CHECK(bang.synchrons().size() == 2);
    REQUIRE(necessary(bang).size() == 1);
    CHECK(necessary(bang).front().path == ArgString{Arg::par_l()});
    CHECK(active(bang).size() == 2);
    auto recv = by_label(sem, *s.init, Label::receive(sym("b")));
    CHECK_THROWS_AS(necessary(recv), NotSBullet);
}

TEST_CASE("components")
{
    Synchron s = act({Arg::restrict(NameSet({sym("c")})), Arg::par_l(), Arg::sum_r(), Arg::par_l()}, Label::chan(sym("d")), "R");
    CHECK(static_component(s) == ArgString{Arg::restrict(NameSet({sym("c")})), Arg::par_l()});
    CHECK(dynamic_component(s) == s.path);
    CHECK(abstract_component(s) == ArgString{Arg::par_l()});
}

TEST_CASE("possible successors")
{
    Arg res = Arg::restrict(NameSet({sym("c")}));
    Synchron d = act({res, Arg::par_l(), Arg::sum_r(), Arg::par_l()}, Label::chan(sym("d")), "R");
    Synchron d2 = act({res, Arg::par_l(), Arg::par_l()}, Label::chan(sym("d")), "R");
    CHECK(leadsto(d, d));
    CHECK(leadsto(d, d2));
    CHECK_FALSE(leadsto(d2, d));
    Synchron e = act({res, Arg::par_l(), Arg::sum_r(), Arg::par_r()}, Label::chan(sym("e")), "S");
    CHECK(directly_concurrent(d, e));
    CHECK(concurrent(d, e));
    CHECK(concurrent(d2, e));
    CHECK_FALSE(concurrent(d, d));
    Synchron e2 = act({res, Arg::par_l(), Arg::par_r()}, Label::chan(sym("e")), "S");
    CHECK(after(d, e) == d2);
    CHECK(after(e, d) == e2);
    CHECK_THROWS_AS(after(d, d), PreconditionViolated);
}

TEST_CASE("concurrency matches a predecessor search")
{
    Arg res = Arg::restrict(NameSet({sym("c")}));
    Arg rec = Arg::rec(sym("A"));
    std::vector<ArgString> paths{
        {},
        {Arg::par_l()},
        {Arg::par_r()},
        {Arg::sum_l(), Arg::par_l()},
        {Arg::sum_r(), Arg::par_r()},
        {res, Arg::par_l(), Arg::sum_r(), Arg::par_l()},
        {res, Arg::par_l(), Arg::sum_r(), Arg::par_r()},
        {res, Arg::par_l(), Arg::par_r()},
        {res, Arg::par_r()},
        {rec, Arg::par_l(), Arg::sum_l()},
        {rec, Arg::par_r()},
        {Arg::par_r()},
        {Arg::par_l(), rec, Arg::par_l()},
        {Arg::par_l(), rec, Arg::par_r()},
        {Arg::par_l(), Arg::par_r()},
        {Arg::sum_l(), Arg::par_l(), Arg::sum_r(), Arg::par_l()},
        {Arg::par_l(), Arg::sum_r(), Arg::par_r()},
    };
    std::size_t checked = 0;
    for (const auto& x : paths)
        for (const auto& y : paths) {
            Synchron a = act(x, Label::tau(), "R"), b = act(y, Label::tau(), "S");
            auto want = oracle::concurrent_by_search(a, b);
            if (!want) continue;
            INFO(a.str() << " vs " << b.str());
            CHECK(concurrent(a, b) == *want);
            ++checked;
        }
    CHECK(checked > 200);
}

TEST_CASE("concurrency matches a predecessor search on named examples")
{
    std::size_t checked = 0;
    for (const auto& e : named_examples()) {
        auto lts = explore(e);
        SynchronSet all;
        for (auto d : lts.derivations())
            for (const auto& s : d.synchrons()) all.push_back(s);
        for (const auto& a : all)
            for (const auto& b : all) {
                auto want = oracle::concurrent_by_search(a, b);
                if (!want) continue;
                INFO(e.name << ": " << a.str() << " vs " << b.str());
                CHECK(concurrent(a, b) == *want);
                ++checked;
            }
    }
    CHECK(checked > 100);
}
