#include "justness/synchron.hpp"

#include "justness/sos.hpp"
#include "justness/syntax.hpp"

#include <algorithm>

namespace justness {

std::string Arg::str() const
{
    switch (kind) {
    case ArgKind::SumL: return "+_L";
    case ArgKind::SumR: return "+_R";
    case ArgKind::ParL: return "|_L";
    case ArgKind::ParR: return "|_R";
    case ArgKind::Restrict:
        return names.items().size() == 1 ? "\\" + names.items().front().str() : "\\" + names.str();
    case ArgKind::Relabel: return f.str();
    case ArgKind::Rec: return name.str() + ":";
    case ArgKind::SigSkip: return "^" + name.str();
    }
    return "?";
}

std::string str(const ArgString& s)
{
    if (s.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + s[i].str();
    return out;
}

std::string Synchron::str() const
{
    std::string out;
    for (const auto& a : path) out += a.str() + " ";
    switch (leaf.kind) {
    case LeafKind::Act: return out + "(" + leaf.action.str() + "^" + print(leaf.proc) + ")";
    case LeafKind::Sig: return out + "(" + print(leaf.proc) + " ^" + leaf.name.str() + ")";
    case LeafKind::Disc: return out + "(" + leaf.name.str() + ":)";
    }
    return out;
}

std::string str(const SynchronSet& s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + s[i].str();
    return out + "}";
}

namespace {

template <class T>
bool included(const std::vector<T>& a, const std::vector<T>& b)
{
    return std::all_of(a.begin(), a.end(), [&](const T& x) { return std::find(b.begin(), b.end(), x) != b.end(); });
}

template <class T>
void push_unique(std::vector<T>& v, T x)
{
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(std::move(x));
}

std::size_t lcp(const ArgString& a, const ArgString& b)
{
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return k;
}

bool opposite(const Arg& a, const Arg& b)
{
    return (a.kind == ArgKind::ParL && b.kind == ArgKind::ParR) || (a.kind == ArgKind::ParR && b.kind == ArgKind::ParL);
}

/// Position in `path` of its n-th static argument.
std::size_t nth_static(const ArgString& path, std::size_t n)
{
    for (std::size_t i = 0; i < path.size(); ++i)
        if (path[i].is_static() && n-- == 0) return i;
    return path.size();
}

/// The ↝-predecessors of a synchron can rewrite any all-static prefix that
/// ends just before a |_D argument into an arbitrary string with the same
/// static part. Seen from the divergence position p, this leaves a fixed
/// tail F before p, preceded either by such a rewritable prefix (free) or
/// by nothing at all.
struct Tail {
    bool free;
    ArgString fixed;
};

Tail tail_before(const ArgString& path, std::size_t p)
{
    std::optional<std::size_t> q;
    bool all_static = true;
    for (std::size_t i = 0; i <= p && i < path.size(); ++i) {
        if (all_static && path[i].is_par()) q = i;
        all_static = all_static && path[i].is_static();
    }
    if (!q) return {false, ArgString(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(p))};
    return {true, ArgString(path.begin() + static_cast<std::ptrdiff_t>(*q), path.begin() + static_cast<std::ptrdiff_t>(p))};
}

bool is_suffix(const ArgString& small, const ArgString& big)
{
    return small.size() <= big.size() && std::equal(small.rbegin(), small.rend(), big.rbegin());
}

} // namespace

bool same_set(const SynchronSet& a, const SynchronSet& b) { return included(a, b) && included(b, a); }
bool same_set(const std::vector<Component>& a, const std::vector<Component>& b)
{
    return included(a, b) && included(b, a);
}

ArgString static_part(const ArgString& s)
{
    ArgString out;
    for (const auto& a : s)
        if (a.is_static()) out.push_back(a);
    return out;
}

bool leadsto(const Synchron& from, const Synchron& to)
{
    if (from == to) return true;
    if (!(from.leaf == to.leaf)) return false;
    const auto& p = from.path;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!p[i].is_par()) continue;
        ArgString head(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i));
        ArgString cand = static_part(head);
        cand.insert(cand.end(), p.begin() + static_cast<std::ptrdiff_t>(i), p.end());
        if (cand == to.path) return true;
    }
    return false;
}

bool directly_concurrent(const ArgString& a, const ArgString& b)
{
    std::size_t k = lcp(a, b);
    return k < a.size() && k < b.size() && opposite(a[k], b[k]);
}

bool directly_concurrent(const Synchron& a, const Synchron& b) { return directly_concurrent(a.path, b.path); }

bool concurrent(const Synchron& a, const Synchron& b)
{
    ArgString sa = static_part(a.path), sb = static_part(b.path);
    if (!directly_concurrent(sa, sb)) return false;
    std::size_t k = lcp(sa, sb);
    Tail ta = tail_before(a.path, nth_static(a.path, k));
    Tail tb = tail_before(b.path, nth_static(b.path, k));
    if (!ta.free && !tb.free) return ta.fixed == tb.fixed;
    if (ta.free && !tb.free) return is_suffix(ta.fixed, tb.fixed);
    if (!ta.free && tb.free) return is_suffix(tb.fixed, ta.fixed);
    return is_suffix(ta.fixed, tb.fixed) || is_suffix(tb.fixed, ta.fixed);
}

Synchron after(const Synchron& s, const Synchron& u)
{
    if (!directly_concurrent(s, u))
        throw PreconditionViolated("after: " + s.str() + " is not directly concurrent with " + u.str());
    std::size_t k = lcp(s.path, u.path);
    ArgString head(s.path.begin(), s.path.begin() + static_cast<std::ptrdiff_t>(k));
    Synchron out;
    out.path = static_part(head);
    out.path.insert(out.path.end(), s.path.begin() + static_cast<std::ptrdiff_t>(k), s.path.end());
    out.leaf = s.leaf;
    return out;
}

Synchron after(const Synchron& s, const Derivation& z)
{
    if (!in_tr_circ(z)) return s;
    const Synchron* best = nullptr;
    std::size_t best_len = 0;
    for (const auto& u : z.synchrons()) {
        if (!u.active()) continue;
        if (!directly_concurrent(s, u))
            throw PreconditionViolated("after: " + s.str() + " is not directly concurrent with " + u.str());
        std::size_t len = lcp(s.path, u.path);
        if (!best || len > best_len) {
            best = &u;
            best_len = len;
        }
    }
    return best ? after(s, *best) : s;
}

Component dynamic_component(const Synchron& s)
{
    std::size_t end = 0;
    for (std::size_t i = 0; i < s.path.size(); ++i)
        if (s.path[i].is_static()) end = i + 1;
    return Component(s.path.begin(), s.path.begin() + static_cast<std::ptrdiff_t>(end));
}

Component static_component(const Synchron& s)
{
    std::size_t end = 0;
    while (end < s.path.size() && s.path[end].is_static()) ++end;
    return Component(s.path.begin(), s.path.begin() + static_cast<std::ptrdiff_t>(end));
}

Component abstract_component(const Synchron& s)
{
    Component out;
    for (const auto& a : static_component(s))
        if (a.is_par()) out.push_back(a);
    return out;
}

SynchronSet proc_synchrons(Process p, const Semantics& sem)
{
    auto prefixed = [](const Arg& a, SynchronSet set) {
        for (auto& s : set) s.path.insert(s.path.begin(), a);
        return set;
    };
    auto join = [](SynchronSet a, const SynchronSet& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    const bool abcd = sem.calculus() == Calculus::ABCd;
    SynchronSet out;
    switch (p.kind()) {
    case ProcKind::Nil:
        if (abcd)
            for (auto b : sem.broadcast_universe()) out.push_back(Synchron{{}, Leaf{LeafKind::Disc, {}, {}, b}});
        return out;
    case ProcKind::Prefix:
        if (abcd)
            for (auto b : sem.broadcast_universe())
                if (p.action() != Label::receive(b)) out.push_back(Synchron{{}, Leaf{LeafKind::Disc, {}, {}, b}});
        out.push_back(Synchron{{}, Leaf{LeafKind::Act, p.action(), p.body(), {}}});
        return out;
    case ProcKind::Sum:
        return join(prefixed(Arg::sum_l(), proc_synchrons(p.left(), sem)),
                    prefixed(Arg::sum_r(), proc_synchrons(p.right(), sem)));
    case ProcKind::Par:
        return join(prefixed(Arg::par_l(), proc_synchrons(p.left(), sem)),
                    prefixed(Arg::par_r(), proc_synchrons(p.right(), sem)));
    case ProcKind::Restrict: return prefixed(Arg::restrict(p.names()), proc_synchrons(p.body(), sem));
    case ProcKind::Relabel: return prefixed(Arg::relabel(p.relabelling()), proc_synchrons(p.body(), sem));
    case ProcKind::Agent: return prefixed(Arg::rec(p.ident()), proc_synchrons(sem.env().body(p.ident()), sem));
    case ProcKind::Signalled:
        out.push_back(Synchron{{}, Leaf{LeafKind::Sig, {}, p.body(), p.signal()}});
        return join(out, prefixed(Arg::sig_skip(p.signal()), proc_synchrons(p.body(), sem)));
    }
    return out;
}

const SynchronSet& deriv_synchrons(const Derivation& d) { return d.synchrons(); }

SynchronSet necessary(const Derivation& d)
{
    if (!in_tr_sbullet(d)) throw NotSBullet("necessary synchrons of " + d.str() + " (label " + d.label().str() + ")");
    if (d.label().kind != LabelKind::Bcast) return d.synchrons();
    SynchronSet out;
    for (const auto& s : d.synchrons())
        if (s.leaf.kind == LeafKind::Act && s.leaf.action.kind == LabelKind::Bcast) out.push_back(s);
    return out;
}

SynchronSet active(const Derivation& d)
{
    SynchronSet out;
    for (const auto& s : d.synchrons())
        if (s.active()) out.push_back(s);
    return out;
}

CompSets comp_sets(const Derivation& d)
{
    CompSets c;
    for (const auto& s : d.synchrons()) {
        push_unique(c.COMP, dynamic_component(s));
        push_unique(c.comp, static_component(s));
        if (s.active()) {
            push_unique(c.AC, dynamic_component(s));
            push_unique(c.afc, static_component(s));
            push_unique(c.afc_abs, abstract_component(s));
        }
    }
    if (in_tr_sbullet(d))
        for (const auto& s : necessary(d)) {
            push_unique(c.NC, dynamic_component(s));
            push_unique(c.npc, static_component(s));
            push_unique(c.npc_abs, abstract_component(s));
        }
    return c;
}

} // namespace justness
