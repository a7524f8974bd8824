#include <catch2/catch_amalgamated.hpp>

#include "justness/corpus.hpp"
#include "justness/criteria.hpp"

using namespace justness;

namespace {

Symbol sym(const char* s) { return Symbol::intern(s); }

Derivation by_label(const Semantics& sem, Process p, const Label& l)
{
    for (auto d : sem.derivations(p))
        if (d.label() == l) return d;
    throw Error("no derivation labelled " + l.str());
}

} // namespace

TEST_CASE("coinductive justness on the Alice loop")
{
    auto e = named_example("alice_cataline");
    auto sem = semantics_for(e);
    Lasso loop = make_lasso(sem, e.init, {}, {by_label(*sem, e.init, Label::chan(sym("call")))});
    BlockResult r = coinductive_minimal(loop, false);
    CHECK(r.minimal_set == LabelSet{Label::chan(sym("t"))});
    CHECK(replay(r.trace, *sem) == r.minimal_set);
    CHECK_FALSE(coinductive_is_just(loop, {}).holds);
    CHECK(coinductive_is_just(loop, {Label::chan(sym("t"))}).holds);
    CHECK(coinductive_enumerate(loop, {}) == false);
    CHECK(coinductive_enumerate(loop, {Label::chan(sym("t"))}) == true);
}

TEST_CASE("coinductive agrees with the direct check on named examples")
{
    for (const auto& e : named_examples()) {
        auto lts = explore(e);
        for (const auto& pi : simple_lassos(lts))
            for (const auto& b : blocking_sets(lts.semantics().receptive(), lts.relevant_labels())) {
                INFO(e.name << " " << pi.str() << " B=" << to_string(b));
                CHECK(coinductive_is_just(pi, b).holds == is_just(pi, b, ConcVariant::Static).holds);
                if (auto en = coinductive_enumerate(pi, b)) CHECK(*en == coinductive_is_just(pi, b).holds);
            }
    }
}

TEST_CASE("Bart is unfair")
{
    auto e = named_example("bart");
    auto lts = explore(e);
    auto sem = lts.semantics_ptr();
    Lasso pi = make_lasso(sem, e.init, {}, {by_label(*sem, e.init, Label::chan(sym("o")))});
    for (const auto& tasks : {tasks_per_action(lts), tasks_per_transition(lts), tasks_from_conc(lts)})
        for (auto m : {FairMode::Strong, FairMode::Weak, FairMode::J}) {
            INFO(to_string(m));
            CHECK_FALSE(is_fair(pi, {}, tasks, m).holds);
        }
    CHECK(is_fair(pi, {}, tasks_whole(lts), FairMode::Strong).holds);
    CHECK(is_fair(pi, {Label::chan(sym("beer"))}, tasks_per_action(lts), FairMode::Weak).holds);
}

TEST_CASE("strong but not weak")
{
    // a choice that keeps being offered and withdrawn
    auto s = parse_system("A := a.B + c\nB := b.A\ninit := A", Calculus::CCS);
    auto lts = reachable_lts(*s.init, s.calc, s.env, 10);
    auto sem = lts.semantics_ptr();
    auto a = by_label(*sem, *s.init, Label::chan(sym("a")));
    auto b = by_label(*sem, a.target(), Label::chan(sym("b")));
    Lasso pi = make_lasso(sem, *s.init, {}, {a, b});
    auto tasks = tasks_per_action(lts);
    CHECK_FALSE(is_fair(pi, {}, tasks, FairMode::Strong).holds);
    CHECK(is_fair(pi, {}, tasks, FairMode::Weak).holds);
    CHECK(is_fair(pi, {}, tasks, FairMode::J).holds);
}

TEST_CASE("task families")
{
    auto e = named_example("concurrent");
    auto lts = explore(e);
    CHECK(tasks_whole(lts).size() == 1);
    std::size_t circ = 0;
    for (auto d : lts.derivations()) circ += in_tr_circ(d);
    CHECK(tasks_per_transition(lts).size() == circ);
    CHECK_NOTHROW(check_tasks(tasks_from_conc(lts), lts));
    TaskFamily bad{{"x"}, {{lts.derivations().front()}}};
    auto other = explore(named_example("cataline"));
    CHECK_THROWS(check_tasks(bad, other));
    CHECK(fair_mode_from_string("weak") == FairMode::Weak);
    CHECK_FALSE(fair_mode_from_string("sometimes"));
}

TEST_CASE("extending to a just path")
{
    auto e = named_example("alice_cataline");
    auto sem = semantics_for(e);
    Lasso empty = make_lasso(sem, e.init, {});
    ExtendResult r = extend_to_just(empty, {}, ConcVariant::Dyn, 1000);
    REQUIRE_FALSE(r.exhausted);
    CHECK(is_just(r.path, {}).holds);
    bool has_t = false;
    for (std::size_t i = 0; i < r.path.size(); ++i) has_t = has_t || r.path.at(i).step.label() == Label::chan(sym("t"));
    CHECK(has_t);

    ExtendResult blocked = extend_to_just(empty, {Label::chan(sym("t"))}, ConcVariant::Static, 1000);
    REQUIRE_FALSE(blocked.exhausted);
    for (std::size_t i = 0; i < blocked.path.size(); ++i)
        CHECK(blocked.path.at(i).step.label() != Label::chan(sym("t")));
    CHECK(is_just(blocked.path, {Label::chan(sym("t"))}).holds);

    auto u = named_example("unfeasible");
    auto us = semantics_for(u);
    ExtendResult lone = extend_to_just(make_lasso(us, u.init, {}), {}, ConcVariant::Dyn, 100);
    CHECK_FALSE(lone.exhausted);
    CHECK(is_just(lone.path, {}).holds);
    CHECK_FALSE(is_sigjust(lone.path, {}).holds);
}

TEST_CASE("extension respects the budget")
{
    auto e = named_example("concurrent");
    auto sem = semantics_for(e);
    ExtendResult r = extend_to_just(make_lasso(sem, e.init, {}), {}, ConcVariant::Dyn, 0);
    CHECK(r.exhausted);
    CHECK(r.steps_added == 0);
}
