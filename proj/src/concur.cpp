#include "justness/concur.hpp"

#include <algorithm>
#include <unordered_map>

namespace justness {

std::string_view to_string(ConcVariant v)
{
    switch (v) {
    case ConcVariant::Dyn: return "dyn";
    case ConcVariant::DynDirect: return "dyn-direct";
    case ConcVariant::Static: return "static";
    case ConcVariant::C: return "c";
    case ConcVariant::StaticPrime: return "static-prime";
    case ConcVariant::CPrime: return "c-prime";
    case ConcVariant::GH: return "gh";
    }
    return "?";
}

std::optional<ConcVariant> variant_from_string(std::string_view s)
{
    for (auto v : {ConcVariant::Dyn, ConcVariant::DynDirect, ConcVariant::Static, ConcVariant::C,
                   ConcVariant::StaticPrime, ConcVariant::CPrime, ConcVariant::GH})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

namespace {

bool all_pairs(const std::vector<Component>& a, const std::vector<Component>& b)
{
    for (const auto& x : a)
        for (const auto& y : b)
            if (!directly_concurrent(x, y)) return false;
    return true;
}

bool disjoint(const std::vector<Component>& a, const std::vector<Component>& b)
{
    for (const auto& x : a)
        if (std::find(b.begin(), b.end(), x) != b.end()) return false;
    return true;
}

bool compute(Derivation t, Derivation u, ConcVariant v)
{
    switch (v) {
    case ConcVariant::Dyn:
    case ConcVariant::DynDirect: {
        auto n = necessary(t);
        for (const auto& a : u.synchrons()) {
            if (!a.active()) continue;
            for (const auto& s : n)
                if (!(v == ConcVariant::Dyn ? concurrent(s, a) : directly_concurrent(s, a))) return false;
        }
        return true;
    }
    case ConcVariant::Static: return all_pairs(comp_sets(t).npc, comp_sets(u).afc);
    case ConcVariant::C: return disjoint(comp_sets(t).npc, comp_sets(u).afc);
    case ConcVariant::StaticPrime: return all_pairs(comp_sets(t).npc_abs, comp_sets(u).afc_abs);
    case ConcVariant::CPrime: return disjoint(comp_sets(t).npc_abs, comp_sets(u).afc_abs);
    case ConcVariant::GH: return gh_conc(t, u);
    }
    return false;
}

struct Key {
    const void* t;
    const void* u;
    ConcVariant v;
    bool operator==(const Key& o) const { return t == o.t && u == o.u && v == o.v; }
};
struct KeyHash {
    std::size_t operator()(const Key& k) const
    {
        return hash_mix(hash_mix(std::hash<const void*>()(k.t), std::hash<const void*>()(k.u)),
                        static_cast<std::size_t>(k.v));
    }
};

// z seen from one side of a parallel composition: nothing happening there
// (an idle process or a passive indicator), or an active sub-derivation.
struct ZSides {
    std::optional<Derivation> left, right;
};

std::optional<ZSides> z_sides(Derivation z)
{
    switch (z.kind()) {
    case DerivKind::ParLeft: return ZSides{z.child(), std::nullopt};
    case DerivKind::ParRight: return ZSides{std::nullopt, z.right()};
    case DerivKind::ParBoth: {
        ZSides s;
        if (!z.child().passive()) s.left = z.child();
        if (!z.right().passive()) s.right = z.right();
        return s;
    }
    default: return std::nullopt;
    }
}

// The sides of x whose synchrons are necessary. For a broadcast only the
// sender counts; receivers and discarders behave like idle processes.
struct XSides {
    std::optional<Derivation> left, right;
};

XSides x_sides(Derivation x)
{
    switch (x.kind()) {
    case DerivKind::ParLeft: return {x.child(), std::nullopt};
    case DerivKind::ParRight: return {std::nullopt, x.right()};
    default: break;
    }
    if (x.label().kind == LabelKind::Bcast) {
        if (x.child().label().kind == LabelKind::Bcast) return {x.child(), std::nullopt};
        return {std::nullopt, x.right()};
    }
    return {x.child(), x.right()};
}

bool ind(Derivation x, Derivation z, bool dyn)
{
    if (!in_tr_sbullet(x)) return false;
    if (z.passive()) return true;
    switch (x.kind()) {
    case DerivKind::SumLeft:
        return dyn && z.kind() == DerivKind::SumLeft && ind(x.child(), z.child(), dyn);
    case DerivKind::SumRight:
        return dyn && z.kind() == DerivKind::SumRight && ind(x.right(), z.right(), dyn);
    case DerivKind::Restrict:
        return z.kind() == DerivKind::Restrict && z.names() == x.names() && ind(x.child(), z.child(), dyn);
    case DerivKind::Relabel:
        return z.kind() == DerivKind::Relabel && z.relabelling() == x.relabelling() &&
               ind(x.child(), z.child(), dyn);
    case DerivKind::Rec:
        return dyn && z.kind() == DerivKind::Rec && z.name() == x.name() && ind(x.child(), z.child(), dyn);
    case DerivKind::SigSkip:
        return dyn && z.kind() == DerivKind::SigSkip && z.name() == x.name() && ind(x.child(), z.child(), dyn);
    case DerivKind::ParLeft:
    case DerivKind::ParRight:
    case DerivKind::ParBoth: {
        auto zs = z_sides(z);
        if (!zs) return false;
        XSides xs = x_sides(x);
        if (xs.left && zs->left && !ind(*xs.left, *zs->left, dyn)) return false;
        if (xs.right && zs->right && !ind(*xs.right, *zs->right, dyn)) return false;
        return true;
    }
    default: return false;
    }
}

std::optional<Derivation> build(const Semantics& sem, Process q, const SynchronSet& set)
{
    if (set.empty()) return std::nullopt;
    auto tails = [&](auto pred) {
        SynchronSet out;
        for (const auto& s : set)
            if (!s.path.empty() && pred(s.path.front()))
                out.push_back(Synchron{ArgString(s.path.begin() + 1, s.path.end()), s.leaf});
        return out;
    };
    auto all_start = [&](const Arg& a) {
        return std::all_of(set.begin(), set.end(), [&](const Synchron& s) { return !s.path.empty() && s.path.front() == a; });
    };
    auto of = [&](const Arg& a) { return tails([&](const Arg& b) { return b == a; }); };

    if (set.size() == 1 && set.front().path.empty()) {
        const Leaf& l = set.front().leaf;
        if (l.kind == LeafKind::Act && q.kind() == ProcKind::Prefix && q.action() == l.action && q.body() == l.proc)
            return Derivation::act_leaf(l.action, l.proc);
        if (l.kind == LeafKind::Sig && q.kind() == ProcKind::Signalled && q.signal() == l.name && q.body() == l.proc)
            return Derivation::sig_leaf(l.proc, l.name);
        return std::nullopt;
    }

    switch (q.kind()) {
    case ProcKind::Sum:
        if (all_start(Arg::sum_l())) {
            auto d = build(sem, q.left(), of(Arg::sum_l()));
            if (d) return Derivation::sum_left(*d, q.right());
        } else if (all_start(Arg::sum_r())) {
            auto d = build(sem, q.right(), of(Arg::sum_r()));
            if (d) return Derivation::sum_right(q.left(), *d);
        }
        return std::nullopt;
    case ProcKind::Par: {
        auto ls = of(Arg::par_l()), rs = of(Arg::par_r());
        if (ls.size() + rs.size() != set.size()) return std::nullopt;
        std::optional<Derivation> l, r;
        if (!ls.empty() && !(l = build(sem, q.left(), ls))) return std::nullopt;
        if (!rs.empty() && !(r = build(sem, q.right(), rs))) return std::nullopt;
        if (l && r) {
            if (!compose(l->label(), r->label(), sem.calculus())) return std::nullopt;
            return Derivation::par_both(*l, *r);
        }
        Derivation d = l ? *l : *r;
        Process other = l ? q.right() : q.left();
        const Label& lab = d.label();
        if (lab.kind == LabelKind::Bcast || lab.kind == LabelKind::Receive) {
            // pick a partner from the other component
            std::optional<Derivation> partner;
            for (auto p : sem.derivations(other))
                if (p.label() == Label::receive(lab.name)) {
                    partner = p;
                    break;
                }
            if (!partner && sem.calculus() == Calculus::ABCd)
                for (auto p : sem.derivations(other))
                    if (p.label() == Label::discard(lab.name)) {
                        partner = p;
                        break;
                    }
            if (partner) return l ? Derivation::par_both(d, *partner) : Derivation::par_both(*partner, d);
            if (sem.calculus() == Calculus::ABCd) return std::nullopt;
        }
        return l ? Derivation::par_left(d, q.right()) : Derivation::par_right(q.left(), d);
    }
    case ProcKind::Restrict: {
        if (!all_start(Arg::restrict(q.names()))) return std::nullopt;
        auto d = build(sem, q.body(), of(Arg::restrict(q.names())));
        if (!d || q.names().blocks(d->label())) return std::nullopt;
        return Derivation::restrict(*d, q.names());
    }
    case ProcKind::Relabel: {
        if (!all_start(Arg::relabel(q.relabelling()))) return std::nullopt;
        auto d = build(sem, q.body(), of(Arg::relabel(q.relabelling())));
        if (!d) return std::nullopt;
        return Derivation::relabel(*d, q.relabelling());
    }
    case ProcKind::Agent: {
        if (!all_start(Arg::rec(q.ident()))) return std::nullopt;
        auto d = build(sem, sem.env().body(q.ident()), of(Arg::rec(q.ident())));
        if (!d) return std::nullopt;
        return Derivation::rec(q.ident(), *d);
    }
    case ProcKind::Signalled: {
        if (!all_start(Arg::sig_skip(q.signal()))) return std::nullopt;
        auto d = build(sem, q.body(), of(Arg::sig_skip(q.signal())));
        if (!d) return std::nullopt;
        return Derivation::sig_skip(*d, q.signal());
    }
    default: return std::nullopt;
    }
}

} // namespace

bool conc(Derivation t, Derivation u, ConcVariant v)
{
    if (v == ConcVariant::GH) {
        if (!in_tr_bullet(t)) throw TypeDiscipline("first argument of gh concurrency must be in Tr•: " + t.str());
    } else if (!in_tr_sbullet(t)) {
        throw TypeDiscipline("first argument of concurrency must be in Tr^{s•}: " + t.str());
    }
    thread_local std::unordered_map<Key, bool, KeyHash> memo;
    Key k{t.id(), u.id(), v};
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    bool r = compute(t, u, v);
    memo.emplace(k, r);
    return r;
}

bool successor(Derivation t, Derivation t2)
{
    auto a = necessary(t), b = necessary(t2);
    if (a.size() != b.size()) return false;
    return std::all_of(b.begin(), b.end(), [&](const Synchron& s2) {
        return std::any_of(a.begin(), a.end(), [&](const Synchron& s) { return leadsto(s, s2); });
    });
}

bool equiv(Derivation t, Derivation u) { return same_set(necessary(t), necessary(u)); }

std::optional<Derivation> synthesize(const Semantics& sem, Process q, const SynchronSet& nec)
{
    auto d = build(sem, q, nec);
    if (!d || !in_tr_sbullet(*d) || !same_set(necessary(*d), nec)) return std::nullopt;
    const auto& all = sem.derivations(q);
    if (std::find(all.begin(), all.end(), *d) == all.end()) return std::nullopt;
    return d;
}

Derivation successor_after(const Semantics& sem, Derivation t, Derivation v)
{
    if (!in_tr_sbullet(t)) throw PreconditionViolated("successor_after: " + t.str() + " is not in Tr^{s•}");
    if (t.source() != v.source()) throw PreconditionViolated("successor_after: sources differ");
    if (!conc(t, v, ConcVariant::Dyn))
        throw PreconditionViolated("successor_after: " + t.str() + " is affected by " + v.str());
    SynchronSet next;
    for (const auto& s : necessary(t)) next.push_back(after(s, v));
    auto u = synthesize(sem, v.target(), next);
    if (!u) throw Error("successor_after: no derivation at the target carries " + str(next));
    return *u;
}

bool inductive_conc(Derivation t, Derivation u, Inductive which)
{
    if (!in_tr_sbullet(t)) throw TypeDiscipline("first argument of concurrency must be in Tr^{s•}: " + t.str());
    return ind(t, u, which == Inductive::Dynamic);
}

bool gh_conc(Derivation t, Derivation u)
{
    if (!in_tr_bullet(t)) throw TypeDiscipline("first argument of gh concurrency must be in Tr•: " + t.str());
    return t.source() == u.source() && ind(t, u, true);
}

} // namespace justness
