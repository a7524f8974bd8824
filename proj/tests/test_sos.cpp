#include <catch2/catch_amalgamated.hpp>

#include "justness/corpus.hpp"
#include "oracle.hpp"

using namespace justness;

namespace {

struct Sys {
    std::shared_ptr<const Semantics> sem;
    Process init;
};

Sys load(const std::string& text, Calculus calc)
{
    System s = parse_system(text, calc);
    return {std::make_shared<Semantics>(s.calc, s.env, std::vector<Process>{*s.init}), *s.init};
}

std::multiset<std::string> labels(const std::vector<Derivation>& ds)
{
    std::multiset<std::string> out;
    for (auto d : ds) out.insert(d.label().str());
    return out;
}

} // namespace

TEST_CASE("two derivations of one tau transition")
{
    auto s = load("A := c.A\ninit := A | ('c + tau)", Calculus::CCS);
    const auto& ds = s.sem->derivations(s.init);
    CHECK(labels(ds) == std::multiset<std::string>{"c", "'c", "tau", "tau"});
    std::vector<Derivation> taus;
    for (auto d : ds)
        if (d.label() == Label::tau()) taus.push_back(d);
    REQUIRE(taus.size() == 2);
    CHECK(taus[0] != taus[1]);
    CHECK(taus[0].target() == taus[1].target());
}

TEST_CASE("example concurrent has three derivations")
{
    auto e = named_example("concurrent");
    auto sem = semantics_for(e);
    CHECK(labels(sem->derivations(e.init)) == std::multiset<std::string>{"tau", "d", "e"});
}

TEST_CASE("broadcast derivations in ABC and ABCd")
{
    auto abc = load("init := b! | (b? + c)", Calculus::ABC);
    const auto& ds = abc.sem->derivations(abc.init);
    CHECK(labels(ds) == std::multiset<std::string>{"b!", "b?", "c"});
    for (auto d : ds) {
        if (d.label().kind == LabelKind::Bcast) CHECK(d.kind() == DerivKind::ParBoth);
        if (d.label().kind == LabelKind::Receive) CHECK(d.kind() == DerivKind::ParRight);
    }
    auto abcd = load("init := b! | (b? + c)", Calculus::ABCd);
    std::multiset<std::string> acts;
    for (auto d : abcd.sem->derivations(abcd.init))
        if (!d.passive()) acts.insert(d.label().str());
    CHECK(acts == std::multiset<std::string>{"b!", "b?", "c"});
    CHECK(abc_abcd_agreement(abc.init, abc.sem->env_ptr()));
    CHECK(abc_abcd_agreement(Process::nil(), abc.sem->env_ptr()));
}

TEST_CASE("admits")
{
    auto b = Symbol::intern("b");
    auto s = load("init := b!.0 | (b? + c)", Calculus::ABC);
    CHECK_FALSE(s.sem->admits(s.init.left(), Label::receive(b)));
    CHECK(s.sem->admits(s.init.right(), Label::receive(b)));
    auto sig = load("init := 0^s", Calculus::CCSS_PRED);
    CHECK(sig.sem->admits(sig.init, Label::emission(Symbol::intern("s"))));
}

TEST_CASE("discards")
{
    auto b = Symbol::intern("b");
    auto s = load("init := (a.0 | b?.0) + 0 + b!", Calculus::ABCd);
    CHECK(s.sem->discard_check(Process::nil(), b));
    Process recv = parse_process("b?.0", Calculus::ABCd);
    CHECK_FALSE(s.sem->discard_check(recv, b));
    Process both = parse_process("a.0 | b?.0", Calculus::ABCd);
    CHECK_FALSE(s.sem->discard_check(both, b));
    CHECK(s.sem->admits(both, Label::receive(b)));
    for (Process p : {Process::nil(), recv, both, s.init})
        CHECK(s.sem->discard_check(p, b) == !s.sem->admits(p, Label::receive(b)));
}

TEST_CASE("classification")
{
    auto c = load("init := c", Calculus::CCS);
    auto d = c.sem->derivations(c.init).front();
    CHECK(c.sem->classify(d) == DerivClass::V_Other);
    CHECK(in_tr_bullet(d));
    CHECK(in_tr_circ(d));
    CHECK(in_tr_sbullet(d));

    auto r = load("init := b?", Calculus::ABC);
    auto rd = r.sem->derivations(r.init).front();
    CHECK(r.sem->classify(rd) == DerivClass::IV_Receive);
    CHECK(in_tr_circ(rd));
    CHECK_FALSE(in_tr_bullet(rd));
    CHECK_FALSE(in_tr_sbullet(rd));

    auto enc = load("init := 0^s", Calculus::CCSS_ENC);
    auto ed = enc.sem->derivations(enc.init).front();
    CHECK(enc.sem->classify(ed) == DerivClass::II_Emission);
    CHECK_FALSE(in_tr_circ(ed));
    CHECK(in_tr_sbullet(ed));
    CHECK(in_tr(ed, Calculus::CCSS_ENC));

    auto pred = load("init := 0^s", Calculus::CCSS_PRED);
    auto pd = pred.sem->derivations(pred.init).front();
    CHECK(pred.sem->classify(pd) == DerivClass::I_Indicator);
    CHECK_FALSE(in_tr(pd, Calculus::CCSS_PRED));
    CHECK(pd.target() == pd.source());

    auto disc = load("init := 0 | b!", Calculus::ABCd);
    bool seen = false;
    for (auto x : disc.sem->derivations(disc.init.left()))
        if (x.label().kind == LabelKind::Discard) {
            seen = true;
            CHECK(disc.sem->classify(x) == DerivClass::III_Discard);
        }
    CHECK(seen);
}

TEST_CASE("reachable fragments")
{
    auto env = std::make_shared<AgentEnv>();
    auto a = Symbol::intern("a");
    auto lts = reachable_lts(Process::prefix(Label::chan(a), Process::nil()), Calculus::CCS, env, 10);
    CHECK(lts.states().size() == 2);
    CHECK(lts.derivations().size() == 1);

    auto s = parse_system("A := a.A\ninit := A", Calculus::CCS);
    auto loop = reachable_lts(*s.init, Calculus::CCS, s.env, 10);
    CHECK(loop.states().size() == 1);
    CHECK(loop.derivations().size() == 1);

    auto t = parse_system("A := c.A\ninit := A | ('c + tau)", Calculus::CCS);
    auto two = reachable_lts(*t.init, Calculus::CCS, t.env, 10);
    CHECK(two.states().size() == 2);
    CHECK(two.derivations().size() == 5);
    for (std::size_t i = 0; i < two.derivations().size(); ++i) {
        CHECK(two.states()[two.source_index(i)] == two.derivations()[i].source());
        CHECK(two.states()[two.target_index(i)] == two.derivations()[i].target());
    }

    auto u = parse_system("A := a.(A | A)\ninit := A", Calculus::CCS);
    CHECK_THROWS_AS(reachable_lts(*u.init, Calculus::CCS, u.env, 5), BoundExceeded);
}

TEST_CASE("every derivation replays against the rules")
{
    for (const auto& e : named_examples()) {
        auto lts = explore(e);
        for (auto d : lts.derivations()) {
            auto why = lts.semantics().validate(d);
            INFO(e.name << ": " << (why ? *why : ""));
            CHECK_FALSE(why);
        }
    }
}

TEST_CASE("oracle agreement on shallow terms")
{
    for (auto calc : {Calculus::CCS, Calculus::ABC, Calculus::ABCd, Calculus::CCSS_PRED, Calculus::CCSS_ENC}) {
        auto g = oracle::grammar(calc);
        auto layers = oracle::terms_by_depth(g, 1);
        std::vector<Process> all;
        for (const auto& l : layers) all.insert(all.end(), l.begin(), l.end());
        Semantics sem(calc, g.env, all);
        oracle::SosOracle o(calc, g.env, sem.broadcast_universe());
        for (auto p : all) {
            auto diff = oracle::compare_derivations(sem, o, p);
            INFO(to_string(calc) << " " << (diff ? *diff : ""));
            CHECK_FALSE(diff);
        }
    }
}

TEST_CASE("composition tables")
{
    auto b = Symbol::intern("b");
    CHECK(compose(Label::chan(b), Label::cochan(b), Calculus::CCS) == Label::tau());
    CHECK_FALSE(compose(Label::bcast(b), Label::bcast(b), Calculus::ABC));
    CHECK(compose(Label::bcast(b), Label::receive(b), Calculus::ABC) == Label::bcast(b));
    CHECK(compose(Label::receive(b), Label::receive(b), Calculus::ABC) == Label::receive(b));
    CHECK(compose(Label::discard(b), Label::receive(b), Calculus::ABCd) == Label::receive(b));
    CHECK(compose(Label::discard(b), Label::discard(b), Calculus::ABCd) == Label::discard(b));
    CHECK(compose(Label::bcast(b), Label::discard(b), Calculus::ABCd) == Label::bcast(b));
    CHECK(compose(Label::signal(b), Label::emission(b), Calculus::CCSS_ENC) == Label::tau());
}
