#include "justness/criteria.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace justness {

namespace {

bool clash(const LabelSet& c, const LabelSet& d)
{
    for (const auto& l : c)
        if (auto k = l.complement(); k && d.count(*k)) return true;
    return false;
}

LabelSet without_restricted(const LabelSet& s, NameSet l)
{
    LabelSet out;
    for (const auto& x : s)
        if (!l.blocks(x)) out.insert(x);
    return out;
}

BlockNode minimal_node(const Lasso& pi, bool sig);

BlockNode anchor_node(const Lasso& sigma, std::size_t a, bool sig)
{
    const Semantics& sem = sigma.semantics();
    BlockNode n;
    n.op = BlockNode::Op::Anchor;
    n.anchor = a;
    if (sigma.finite()) n.local = sem.admitted(sigma.last_state(), sig);
    n.result = n.local;
    if (auto top = shared_static_top(sigma)) {
        Decomposition dec = decompose(sigma);
        BlockNode op;
        if (*top == ProcKind::Par) {
            op.op = BlockNode::Op::Par;
            op.children.push_back(minimal_node(*dec.left, sig));
            op.children.push_back(minimal_node(*dec.right, sig));
        } else if (*top == ProcKind::Restrict) {
            op.op = BlockNode::Op::Restrict;
            op.names = dec.names;
            op.children.push_back(minimal_node(*dec.inner, sig));
        } else {
            op.op = BlockNode::Op::Relabel;
            op.f = dec.f;
            op.children.push_back(minimal_node(*dec.inner, sig));
        }
        op.result = replay(op, sem);
        n.result.insert(op.result.begin(), op.result.end());
        n.children.push_back(std::move(op));
    }
    return n;
}

BlockNode minimal_node(const Lasso& pi, bool sig)
{
    BlockNode n;
    n.op = BlockNode::Op::Path;
    for (std::size_t a = 0; a < pi.anchor_count(); ++a) n.children.push_back(anchor_node(pi.suffix(a), a, sig));
    n.result = replay(n, pi.semantics());
    return n;
}

// Labels (besides Rec) that can matter for the justness of sigma.
LabelSet universe(const Lasso& sigma, bool sig)
{
    const Semantics& sem = sigma.semantics();
    LabelSet u{Label::tau()};
    for (auto s : sigma.suffix_states(0))
        for (const auto& l : sem.admitted(s, sig))
            if (!l.is_receive()) u.insert(l);
    return u;
}

std::vector<LabelSet> subsets_within(const LabelSet& u, const LabelSet& b, const LabelSet& rec)
{
    std::vector<Label> pool;
    for (const auto& l : u)
        if (b.count(l) && !rec.count(l)) pool.push_back(l);
    std::vector<LabelSet> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << pool.size()); ++mask) {
        LabelSet s = rec;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (mask >> i & 1) s.insert(pool[i]);
        out.push_back(std::move(s));
    }
    return out;
}

std::optional<bool> enumerate(const Lasso& pi, const LabelSet& b, bool sig, std::size_t max_u)
{
    const Semantics& sem = pi.semantics();
    const LabelSet& rec = sem.receptive();
    for (std::size_t a = 0; a < pi.anchor_count(); ++a) {
        Lasso sigma = pi.suffix(a);
        if (sigma.finite() && !subset(sem.admitted(sigma.last_state(), sig), b)) return false;
        auto top = shared_static_top(sigma);
        if (!top) continue;
        Decomposition dec = decompose(sigma);
        if (*top == ProcKind::Par) {
            LabelSet u1 = universe(*dec.left, sig), u2 = universe(*dec.right, sig);
            if (u1.size() > max_u || u2.size() > max_u) return std::nullopt;
            std::vector<LabelSet> cs, ds;
            for (auto& c : subsets_within(u1, b, rec)) {
                auto r = enumerate(*dec.left, c, sig, max_u);
                if (!r) return std::nullopt;
                if (*r) cs.push_back(std::move(c));
            }
            for (auto& d : subsets_within(u2, b, rec)) {
                auto r = enumerate(*dec.right, d, sig, max_u);
                if (!r) return std::nullopt;
                if (*r) ds.push_back(std::move(d));
            }
            bool ok = false;
            for (const auto& c : cs) {
                for (const auto& d : ds)
                    if (b.count(Label::tau()) || !clash(c, d)) {
                        ok = true;
                        break;
                    }
                if (ok) break;
            }
            if (!ok) return false;
        } else if (*top == ProcKind::Restrict) {
            LabelSet inner = b;
            for (Symbol n : dec.names.items())
                for (auto l : {Label::chan(n), Label::cochan(n), Label::signal(n), Label::emission(n)})
                    if (sig || l.is_action()) inner.insert(l);
            auto r = enumerate(*dec.inner, inner, sig, max_u);
            if (!r || !*r) return r;
        } else {
            LabelSet inner = rec;
            for (const auto& l : universe(*dec.inner, sig))
                if (b.count(apply_relabelling(dec.f, l))) inner.insert(l);
            auto r = enumerate(*dec.inner, inner, sig, max_u);
            if (!r || !*r) return r;
        }
    }
    return true;
}

} // namespace

LabelSet replay(const BlockNode& node, const Semantics& sem)
{
    switch (node.op) {
    case BlockNode::Op::Path: {
        LabelSet out = sem.receptive();
        for (const auto& c : node.children) out.insert(c.result.begin(), c.result.end());
        return out;
    }
    case BlockNode::Op::Anchor: {
        LabelSet out = node.local;
        for (const auto& c : node.children) out.insert(c.result.begin(), c.result.end());
        return out;
    }
    case BlockNode::Op::Par: {
        const LabelSet& c = node.children.at(0).result;
        const LabelSet& d = node.children.at(1).result;
        LabelSet out = c;
        out.insert(d.begin(), d.end());
        if (clash(c, d)) out.insert(Label::tau());
        return out;
    }
    case BlockNode::Op::Restrict: return without_restricted(node.children.at(0).result, node.names);
    case BlockNode::Op::Relabel: return apply_relabelling(node.f, node.children.at(0).result);
    }
    return {};
}

BlockResult coinductive_minimal(const Lasso& pi, bool sig)
{
    BlockResult r;
    r.trace = minimal_node(pi, sig);
    r.minimal_set = r.trace.result;
    return r;
}

Verdict coinductive_is_just(const Lasso& pi, const LabelSet& b)
{
    const Semantics& sem = pi.semantics();
    sem.check_blocking_set(b);
    bool sig = has_signals(sem.calculus());
    LabelSet bb = b;
    if (sig) {
        auto em = sem.emissions();
        bb.insert(em.begin(), em.end());
    }
    auto m = coinductive_minimal(pi, sig).minimal_set;
    Verdict v;
    v.holds = true;
    for (const auto& l : m)
        if (!bb.count(l)) {
            if (v.holds) v.reason = "missing from B:";
            v.holds = false;
            v.reason += " " + l.str();
        }
    return v;
}

std::optional<bool> coinductive_enumerate(const Lasso& pi, const LabelSet& b, std::size_t max_universe)
{
    const Semantics& sem = pi.semantics();
    sem.check_blocking_set(b);
    bool sig = has_signals(sem.calculus());
    LabelSet bb = b;
    if (sig) {
        auto em = sem.emissions();
        bb.insert(em.begin(), em.end());
    }
    return enumerate(pi, bb, sig, max_universe);
}

// ---- fairness -------------------------------------------------------------

TaskFamily tasks_per_action(const Ltsc& lts)
{
    std::map<Label, std::vector<Derivation>> by;
    for (auto d : lts.derivations())
        if (in_tr_circ(d)) by[d.label()].push_back(d);
    TaskFamily f;
    for (auto& [l, ds] : by) {
        f.names.push_back(l.str());
        f.tasks.push_back(std::move(ds));
    }
    return f;
}

TaskFamily tasks_per_transition(const Ltsc& lts)
{
    TaskFamily f;
    for (std::size_t i = 0; i < lts.derivations().size(); ++i) {
        auto d = lts.derivations()[i];
        if (!in_tr_circ(d)) continue;
        f.names.push_back("t" + std::to_string(i));
        f.tasks.push_back({d});
    }
    return f;
}

TaskFamily tasks_whole(const Ltsc& lts)
{
    TaskFamily f;
    f.names.push_back("Tr°");
    f.tasks.emplace_back();
    for (auto d : lts.derivations())
        if (in_tr_circ(d)) f.tasks.back().push_back(d);
    return f;
}

TaskFamily tasks_from_conc(const Ltsc& lts, ConcVariant v)
{
    TaskFamily f;
    std::set<std::vector<const void*>> seen;
    const auto& ds = lts.derivations();
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (!in_tr_bullet(ds[i])) continue;
        std::vector<Derivation> task;
        std::vector<const void*> key;
        for (auto u : ds)
            if (in_tr_circ(u) && !conc(ds[i], u, v)) {
                task.push_back(u);
                key.push_back(u.id());
            }
        std::sort(key.begin(), key.end());
        if (!seen.insert(key).second) continue;
        f.names.push_back("T_t" + std::to_string(i));
        f.tasks.push_back(std::move(task));
    }
    return f;
}

void check_tasks(const TaskFamily& tasks, const Ltsc& lts)
{
    for (std::size_t i = 0; i < tasks.size(); ++i)
        for (auto d : tasks.tasks[i]) {
            if (!lts.deriv_index(d)) throw Error("task " + tasks.names.at(i) + " has a foreign derivation " + d.str());
            if (!in_tr_circ(d)) throw Error("task " + tasks.names.at(i) + " has a non-action derivation " + d.str());
        }
}

std::string_view to_string(FairMode m)
{
    switch (m) {
    case FairMode::Strong: return "strong";
    case FairMode::Weak: return "weak";
    case FairMode::J: return "j";
    }
    return "?";
}

std::optional<FairMode> fair_mode_from_string(std::string_view s)
{
    for (auto m : {FairMode::Strong, FairMode::Weak, FairMode::J})
        if (to_string(m) == s) return m;
    return std::nullopt;
}

Verdict is_fair(const Lasso& pi, const LabelSet& b, const TaskFamily& tasks, FairMode mode)
{
    const Semantics& sem = pi.semantics();
    sem.check_blocking_set(b);
    Verdict v;
    v.holds = true;
    for (std::size_t k = 0; k < tasks.size(); ++k) {
        const auto& task = tasks.tasks[k];
        std::unordered_set<Derivation> members(task.begin(), task.end());
        std::unordered_map<Process, std::vector<Derivation>> live;  // non-blocked members by source
        for (auto t : task)
            if (!b.count(t.label())) live[t.source()].push_back(t);
        auto enabled = [&](Process s) { return live.count(s) > 0; };
        auto during = [&](Derivation u) {
            auto it = live.find(u.source());
            if (it == live.end()) return false;
            return std::any_of(it->second.begin(), it->second.end(),
                               [&](Derivation t) { return conc(t, u, ConcVariant::Dyn); });
        };
        for (std::size_t a = 0; a < pi.anchor_count(); ++a) {
            auto pos = pi.suffix_positions(a);
            auto states = pi.suffix_states(a);
            bool on;
            if (mode == FairMode::Strong) {
                if (pi.finite()) on = enabled(pi.last_state());
                else on = std::any_of(pi.cycle().begin(), pi.cycle().end(), [&](const Step& s) { return enabled(s.state); });
            } else {
                on = std::all_of(states.begin(), states.end(), enabled);
                if (on && mode == FairMode::J)
                    on = std::all_of(pos.begin(), pos.end(), [&](std::size_t p) { return during(pi.at(p).step); });
            }
            if (!on) continue;
            bool occurs = std::any_of(pos.begin(), pos.end(), [&](std::size_t p) { return members.count(pi.at(p).step) > 0; });
            if (occurs) continue;
            v.holds = false;
            auto it = live.find(pi.anchor_state(a));
            Derivation w = it != live.end() ? it->second.front() : live.begin()->second.front();
            v.witness = Interference{a, w, std::nullopt};
            v.reason = "task " + tasks.names.at(k) + " is enabled from anchor " + std::to_string(a) + " but never occurs";
            return v;
        }
    }
    return v;
}

// ---- feasibility ------------------------------------------------------------

namespace {

struct Obligation {
    Derivation t;    // as enabled at `pos`
    std::size_t pos;
    Derivation rep;  // its successor at the current state
};

} // namespace

ExtendResult extend_to_just(const Lasso& prefix, const LabelSet& b, ConcVariant v, std::size_t budget)
{
    if (!prefix.finite()) throw PreconditionViolated("extend_to_just needs a finite prefix");
    auto semp = prefix.semantics_ptr();
    const Semantics& sem = *semp;
    sem.check_blocking_set(b);

    std::vector<Derivation> steps;
    for (const auto& s : prefix.stem()) steps.push_back(s.step);
    std::vector<Obligation> pending;

    auto open = [&](Process s, std::size_t pos) {
        for (auto t : sem.derivations(s)) {
            if (!in_tr_bullet(t) || b.count(t.label())) continue;
            bool dup = std::any_of(pending.begin(), pending.end(), [&](const Obligation& o) { return equiv(o.rep, t); });
            if (!dup) pending.push_back({t, pos, t});
        }
    };
    // Obligations are followed along the path by their successors; one is
    // discharged once a step interferes with its current successor.
    auto take = [&](Derivation u) {
        std::vector<Obligation> next;
        for (auto& o : pending) {
            if (!conc(o.rep, u, ConcVariant::Dyn)) continue;
            Derivation r = successor_after(sem, o.rep, u);
            if (std::any_of(next.begin(), next.end(), [&](const Obligation& p) { return equiv(p.rep, r); })) continue;
            next.push_back({o.t, o.pos, r});
        }
        pending = std::move(next);
    };

    for (std::size_t i = 0; i < steps.size(); ++i) {
        open(prefix.stem()[i].state, i);
        take(steps[i]);
    }
    Process start = prefix.first_state();
    Process cur = prefix.last_state();
    struct KeyHash {
        std::size_t operator()(const std::pair<Process, std::vector<const void*>>& k) const
        {
            std::size_t h = std::hash<Process>()(k.first);
            for (auto p : k.second) h = hash_mix(h, std::hash<const void*>()(p));
            return h;
        }
    };
    std::unordered_map<std::pair<Process, std::vector<const void*>>, std::size_t, KeyHash> seen;

    ExtendResult res;
    for (;;) {
        open(cur, steps.size());
        if (pending.empty()) {
            res.path = make_lasso(semp, start, steps);
            return res;
        }
        std::pair<Process, std::vector<const void*>> key{cur, {}};
        for (const auto& o : pending) key.second.push_back(o.rep.id());
        if (auto it = seen.find(key); it != seen.end()) {
            std::size_t q = it->second;
            std::vector<Derivation> stem(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(q));
            std::vector<Derivation> cyc(steps.begin() + static_cast<std::ptrdiff_t>(q), steps.end());
            Lasso cand = make_lasso(semp, start, stem, cyc);
            if (is_just(cand, b, v).holds) {
                res.path = cand;
                return res;
            }
            it->second = steps.size();
        } else {
            seen.emplace(std::move(key), steps.size());
        }
        if (res.steps_added >= budget) {
            res.exhausted = true;
            res.path = make_lasso(semp, start, steps);
            return res;
        }
        Derivation u = pending.front().rep;
        steps.push_back(u);
        ++res.steps_added;
        take(u);
        cur = u.target();
    }
}

} // namespace justness
