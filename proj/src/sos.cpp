#include "justness/sos.hpp"

#include "intern.hpp"
#include "justness/syntax.hpp"

#include <algorithm>
#include <deque>

namespace justness {

namespace detail {

struct DerivNode {
    DerivKind kind;
    const DerivNode* left = nullptr;
    const DerivNode* right = nullptr;
    Process side;
    Label action;
    Symbol name;
    NameSet names;
    Relabelling relabel;

    Process source, target;
    Label label;
    SynchronSet synchrons;
    std::size_t hash = 0;
};

} // namespace detail

namespace {

using detail::DerivNode;

struct NodeHash {
    std::size_t operator()(const DerivNode& n) const { return n.hash; }
};
struct NodeEq {
    bool operator()(const DerivNode& a, const DerivNode& b) const
    {
        return a.kind == b.kind && a.left == b.left && a.right == b.right && a.side == b.side &&
               a.action == b.action && a.name == b.name && a.names == b.names && a.relabel == b.relabel;
    }
};

detail::Interner<DerivNode, NodeHash, NodeEq>& deriv_table()
{
    static detail::Interner<DerivNode, NodeHash, NodeEq> t;
    return t;
}

SynchronSet prepend(const Arg& a, const SynchronSet& set)
{
    SynchronSet out;
    out.reserve(set.size());
    for (const auto& s : set) {
        Synchron t;
        t.path.reserve(s.path.size() + 1);
        t.path.push_back(a);
        t.path.insert(t.path.end(), s.path.begin(), s.path.end());
        t.leaf = s.leaf;
        out.push_back(std::move(t));
    }
    return out;
}

SynchronSet join(SynchronSet a, const SynchronSet& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

/// Builds a node whose cached fields are filled in by `fill`.
struct Builder {
    DerivNode n;
    explicit Builder(DerivKind k) { n.kind = k; }

    const DerivNode* finish()
    {
        std::size_t h = static_cast<std::size_t>(n.kind);
        h = hash_mix(h, n.left ? n.left->hash : 0);
        h = hash_mix(h, n.right ? n.right->hash : 0);
        h = hash_mix(h, n.side.hash());
        h = hash_mix(h, std::hash<Label>()(n.action));
        h = hash_mix(h, n.name.id());
        h = hash_mix(h, n.names.hash());
        n.hash = hash_mix(h, n.relabel.hash());
        if (!n.label.is_action()) n.target = n.source;
        return deriv_table().intern(std::move(n));
    }
};

std::optional<Label> compose_any(const Label& l, const Label& r)
{
    if (l.name != r.name) return std::nullopt;
    auto k1 = l.kind, k2 = r.kind;
    using K = LabelKind;
    if ((k1 == K::Name && k2 == K::CoName) || (k1 == K::CoName && k2 == K::Name)) return Label::tau();
    if ((k1 == K::Signal && k2 == K::Emission) || (k1 == K::Emission && k2 == K::Signal)) return Label::tau();
    if (!l.is_broadcast_family() || !r.is_broadcast_family()) return std::nullopt;
    // rows/columns !, ?, :
    if (k1 == K::Bcast && k2 == K::Bcast) return std::nullopt;
    if (k1 == K::Bcast || k2 == K::Bcast) return Label::bcast(l.name);
    if (k1 == K::Receive || k2 == K::Receive) return Label::receive(l.name);
    return Label::discard(l.name);
}

std::string wrap(Process p)
{
    auto s = print(p);
    bool atomic = p.kind() == ProcKind::Nil || p.kind() == ProcKind::Agent ||
                  (p.kind() == ProcKind::Prefix && p.body().kind() == ProcKind::Nil);
    return atomic ? s : "(" + s + ")";
}

} // namespace

// ---- constructors -----------------------------------------------------------

Derivation Derivation::act_leaf(Label a, Process p)
{
    Builder b(DerivKind::ActLeaf);
    b.n.action = a;
    b.n.side = p;
    b.n.source = Process::prefix(a, p);
    b.n.target = p;
    b.n.label = a;
    b.n.synchrons = {Synchron{{}, Leaf{LeafKind::Act, a, p, {}}}};
    return Derivation(b.finish());
}

Derivation Derivation::sig_leaf(Process p, Symbol s)
{
    Builder b(DerivKind::SigLeaf);
    b.n.side = p;
    b.n.name = s;
    b.n.source = Process::signalled(p, s);
    b.n.label = Label::emission(s);
    b.n.synchrons = {Synchron{{}, Leaf{LeafKind::Sig, {}, p, s}}};
    return Derivation(b.finish());
}

Derivation Derivation::discard_nil(Symbol name)
{
    Builder b(DerivKind::DiscardNil);
    b.n.name = name;
    b.n.source = Process::nil();
    b.n.label = Label::discard(name);
    b.n.synchrons = {Synchron{{}, Leaf{LeafKind::Disc, {}, {}, name}}};
    return Derivation(b.finish());
}

Derivation Derivation::discard_prefix(Symbol name, Label a, Process p)
{
    Builder b(DerivKind::DiscardPrefix);
    b.n.name = name;
    b.n.action = a;
    b.n.side = p;
    b.n.source = Process::prefix(a, p);
    b.n.label = Label::discard(name);
    b.n.synchrons = {Synchron{{}, Leaf{LeafKind::Disc, {}, {}, name}}};
    return Derivation(b.finish());
}

Derivation Derivation::sum_left(Derivation l, Process q)
{
    Builder b(DerivKind::SumLeft);
    b.n.left = l.node_;
    b.n.side = q;
    b.n.source = Process::sum(l.source(), q);
    b.n.target = l.target();
    b.n.label = l.label();
    b.n.synchrons = prepend(Arg::sum_l(), l.synchrons());
    return Derivation(b.finish());
}

Derivation Derivation::sum_right(Process p, Derivation r)
{
    Builder b(DerivKind::SumRight);
    b.n.right = r.node_;
    b.n.side = p;
    b.n.source = Process::sum(p, r.source());
    b.n.target = r.target();
    b.n.label = r.label();
    b.n.synchrons = prepend(Arg::sum_r(), r.synchrons());
    return Derivation(b.finish());
}

Derivation Derivation::sum_both(Derivation l, Derivation r)
{
    if (l.label() != r.label() || l.label().kind != LabelKind::Discard)
        throw Error("sum of two derivations needs equal discard labels");
    Builder b(DerivKind::SumBoth);
    b.n.left = l.node_;
    b.n.right = r.node_;
    b.n.source = Process::sum(l.source(), r.source());
    b.n.label = l.label();
    b.n.synchrons = join(prepend(Arg::sum_l(), l.synchrons()), prepend(Arg::sum_r(), r.synchrons()));
    return Derivation(b.finish());
}

Derivation Derivation::par_left(Derivation l, Process q)
{
    Builder b(DerivKind::ParLeft);
    b.n.left = l.node_;
    b.n.side = q;
    b.n.source = Process::par(l.source(), q);
    b.n.target = Process::par(l.target(), q);
    b.n.label = l.label();
    b.n.synchrons = prepend(Arg::par_l(), l.synchrons());
    return Derivation(b.finish());
}

Derivation Derivation::par_right(Process p, Derivation r)
{
    Builder b(DerivKind::ParRight);
    b.n.right = r.node_;
    b.n.side = p;
    b.n.source = Process::par(p, r.source());
    b.n.target = Process::par(p, r.target());
    b.n.label = r.label();
    b.n.synchrons = prepend(Arg::par_r(), r.synchrons());
    return Derivation(b.finish());
}

Derivation Derivation::par_both(Derivation l, Derivation r)
{
    auto lab = compose_any(l.label(), r.label());
    if (!lab) throw Error("labels " + l.label().str() + " and " + r.label().str() + " do not synchronise");
    Builder b(DerivKind::ParBoth);
    b.n.left = l.node_;
    b.n.right = r.node_;
    b.n.source = Process::par(l.source(), r.source());
    b.n.target = Process::par(l.target(), r.target());
    b.n.label = *lab;
    b.n.synchrons = join(prepend(Arg::par_l(), l.synchrons()), prepend(Arg::par_r(), r.synchrons()));
    return Derivation(b.finish());
}

Derivation Derivation::restrict(Derivation d, NameSet names)
{
    Builder b(DerivKind::Restrict);
    b.n.left = d.node_;
    b.n.names = names;
    b.n.source = Process::restrict(names, d.source());
    b.n.target = Process::restrict(names, d.target());
    b.n.label = d.label();
    b.n.synchrons = prepend(Arg::restrict(names), d.synchrons());
    return Derivation(b.finish());
}

Derivation Derivation::relabel(Derivation d, Relabelling f)
{
    Builder b(DerivKind::Relabel);
    b.n.left = d.node_;
    b.n.relabel = f;
    b.n.source = Process::relabel(f, d.source());
    b.n.target = Process::relabel(f, d.target());
    b.n.label = apply_relabelling(f, d.label());
    b.n.synchrons = prepend(Arg::relabel(f), d.synchrons());
    return Derivation(b.finish());
}

Derivation Derivation::rec(Symbol agent, Derivation d)
{
    Builder b(DerivKind::Rec);
    b.n.left = d.node_;
    b.n.name = agent;
    b.n.source = Process::agent(agent);
    b.n.target = d.target();
    b.n.label = d.label();
    b.n.synchrons = prepend(Arg::rec(agent), d.synchrons());
    return Derivation(b.finish());
}

Derivation Derivation::sig_skip(Derivation d, Symbol r)
{
    Builder b(DerivKind::SigSkip);
    b.n.left = d.node_;
    b.n.name = r;
    b.n.source = Process::signalled(d.source(), r);
    b.n.target = d.target();
    b.n.label = d.label();
    b.n.synchrons = prepend(Arg::sig_skip(r), d.synchrons());
    return Derivation(b.finish());
}

DerivKind Derivation::kind() const { return node_->kind; }
Process Derivation::source() const { return node_->source; }
Process Derivation::target() const { return node_->target; }
const Label& Derivation::label() const { return node_->label; }
Derivation Derivation::child() const { return Derivation(node_->left); }
Derivation Derivation::right() const { return Derivation(node_->right); }
bool Derivation::has_left() const { return node_->left != nullptr; }
bool Derivation::has_right() const { return node_->right != nullptr; }
Process Derivation::side() const { return node_->side; }
const Label& Derivation::leaf_action() const { return node_->action; }
Symbol Derivation::name() const { return node_->name; }
NameSet Derivation::names() const { return node_->names; }
Relabelling Derivation::relabelling() const { return node_->relabel; }
const SynchronSet& Derivation::synchrons() const { return node_->synchrons; }
std::size_t Derivation::hash() const { return node_->hash; }

std::string Derivation::str() const
{
    switch (kind()) {
    case DerivKind::ActLeaf: return "(" + leaf_action().str() + "^" + print(side()) + ")";
    case DerivKind::SigLeaf: return "(" + print(side()) + " ^" + name().str() + ")";
    case DerivKind::DiscardNil: return "(" + name().str() + ":0)";
    case DerivKind::DiscardPrefix:
        return "(" + name().str() + ":" + print(Process::prefix(leaf_action(), side())) + ")";
    case DerivKind::SumLeft: return "(" + child().str() + " + " + wrap(side()) + ")";
    case DerivKind::SumRight: return "(" + wrap(side()) + " + " + right().str() + ")";
    case DerivKind::SumBoth: return "(" + child().str() + " + " + right().str() + ")";
    case DerivKind::ParLeft: return "(" + child().str() + " | " + wrap(side()) + ")";
    case DerivKind::ParRight: return "(" + wrap(side()) + " | " + right().str() + ")";
    case DerivKind::ParBoth: return "(" + child().str() + " | " + right().str() + ")";
    case DerivKind::Restrict: return child().str() + "\\" + names().str();
    case DerivKind::Relabel: return child().str() + relabelling().str();
    case DerivKind::Rec: return name().str() + ":" + child().str();
    case DerivKind::SigSkip: return child().str() + "^" + name().str();
    }
    return "?";
}

// ---- classification ---------------------------------------------------------

std::string_view to_string(DerivClass c)
{
    switch (c) {
    case DerivClass::I_Indicator: return "I";
    case DerivClass::II_Emission: return "II";
    case DerivClass::III_Discard: return "III";
    case DerivClass::IV_Receive: return "IV";
    case DerivClass::V_Other: return "V";
    }
    return "?";
}

DerivClass classify(Derivation d, Calculus calc)
{
    switch (d.label().kind) {
    case LabelKind::Emission:
        return calc == Calculus::CCSS_ENC ? DerivClass::II_Emission : DerivClass::I_Indicator;
    case LabelKind::Discard: return DerivClass::III_Discard;
    case LabelKind::Receive: return DerivClass::IV_Receive;
    default: return DerivClass::V_Other;
    }
}

bool in_tr(Derivation d, Calculus calc) { return classify(d, calc) != DerivClass::I_Indicator; }

std::optional<Label> compose(const Label& l, const Label& r, Calculus calc)
{
    auto out = compose_any(l, r);
    if (!out) return out;
    bool sig = l.kind == LabelKind::Signal || l.kind == LabelKind::Emission;
    if (sig && !has_signals(calc)) return std::nullopt;
    if (l.is_broadcast_family()) {
        if (!has_broadcast(calc)) return std::nullopt;
        bool disc = l.kind == LabelKind::Discard || r.kind == LabelKind::Discard;
        if (disc && calc != Calculus::ABCd) return std::nullopt;
    }
    return out;
}

// ---- semantics --------------------------------------------------------------

Semantics::Semantics(Calculus calc, std::shared_ptr<const AgentEnv> env, const std::vector<Process>& roots)
    : calc_(calc), env_(std::move(env))
{
    if (has_broadcast(calc_)) bnames_ = broadcast_names(*env_, roots);
    if (has_signals(calc_)) snames_ = signal_names(*env_, roots);
    for (auto b : bnames_) rec_.insert(Label::receive(b));
}

LabelSet Semantics::emissions() const
{
    LabelSet out;
    for (auto s : snames_) out.insert(Label::emission(s));
    return out;
}

const std::vector<Derivation>& Semantics::derivations(Process p) const
{
    {
        std::lock_guard lock(mu_);
        if (auto it = memo_.find(p); it != memo_.end()) return it->second;
    }
    auto v = derive(p);
    std::lock_guard lock(mu_);
    return memo_.emplace(p, std::move(v)).first->second;
}

std::vector<Derivation> Semantics::derive(Process p) const
{
    std::vector<Derivation> out;
    const bool abcd = calc_ == Calculus::ABCd;
    const bool abc = calc_ == Calculus::ABC;

    switch (p.kind()) {
    case ProcKind::Nil:
        if (abcd)
            for (auto b : bnames_) out.push_back(Derivation::discard_nil(b));
        break;

    case ProcKind::Prefix:
        out.push_back(Derivation::act_leaf(p.action(), p.body()));
        if (abcd)
            for (auto b : bnames_)
                if (p.action() != Label::receive(b))
                    out.push_back(Derivation::discard_prefix(b, p.action(), p.body()));
        break;

    case ProcKind::Sum: {
        const auto& dl = derivations(p.left());
        const auto& dr = derivations(p.right());
        for (auto d : dl)
            if (d.label().kind != LabelKind::Discard) out.push_back(Derivation::sum_left(d, p.right()));
        for (auto d : dr)
            if (d.label().kind != LabelKind::Discard) out.push_back(Derivation::sum_right(p.left(), d));
        if (abcd)
            for (auto l : dl)
                if (l.label().kind == LabelKind::Discard)
                    for (auto r : dr)
                        if (r.label() == l.label()) out.push_back(Derivation::sum_both(l, r));
        break;
    }

    case ProcKind::Par: {
        const auto& dl = derivations(p.left());
        const auto& dr = derivations(p.right());
        // Par-l/Par-r, and Bro-l/Bro-r with the negative premise in ABC
        auto alone = [&](Derivation d, Process other) {
            const Label& l = d.label();
            switch (l.kind) {
            case LabelKind::Bcast:
            case LabelKind::Receive: return abc && !admits(other, Label::receive(l.name));
            case LabelKind::Discard: return false;
            default: return true;
            }
        };
        for (auto d : dl)
            if (alone(d, p.right())) out.push_back(Derivation::par_left(d, p.right()));
        for (auto d : dr)
            if (alone(d, p.left())) out.push_back(Derivation::par_right(p.left(), d));
        for (auto l : dl)
            for (auto r : dr)
                if (compose(l.label(), r.label(), calc_)) out.push_back(Derivation::par_both(l, r));
        break;
    }

    case ProcKind::Restrict:
        for (auto d : derivations(p.body()))
            if (!p.names().blocks(d.label())) out.push_back(Derivation::restrict(d, p.names()));
        break;

    case ProcKind::Relabel:
        for (auto d : derivations(p.body())) out.push_back(Derivation::relabel(d, p.relabelling()));
        break;

    case ProcKind::Agent:
        for (auto d : derivations(env_->body(p.ident()))) out.push_back(Derivation::rec(p.ident(), d));
        break;

    case ProcKind::Signalled:
        out.push_back(Derivation::sig_leaf(p.body(), p.signal()));
        for (auto d : derivations(p.body()))
            if (d.label().kind != LabelKind::Discard) out.push_back(Derivation::sig_skip(d, p.signal()));
        break;
    }
    return out;
}

bool Semantics::admits(Process p, const Label& a) const
{
    for (auto d : derivations(p))
        if (d.label() == a) return true;
    return false;
}

LabelSet Semantics::admitted(Process p, bool with_emissions) const
{
    LabelSet out;
    for (auto d : derivations(p))
        if (d.label().is_action() || (with_emissions && d.label().kind == LabelKind::Emission))
            out.insert(d.label());
    return out;
}

bool Semantics::discard_check(Process p, Symbol b) const
{
    for (auto d : derivations(p))
        if (d.label() == Label::discard(b) && d.target() == p) return true;
    return false;
}

std::optional<std::string> Semantics::validate(Derivation d) const
{
    auto fail = [&](const std::string& why) { return std::optional<std::string>(d.str() + ": " + why); };
    auto sub = [&](Derivation c) { return validate(c); };
    const Label& l = d.label();

    switch (d.kind()) {
    case DerivKind::ActLeaf:
        try {
            check_dialect(d.source(), calc_);
        } catch (const DialectError& e) {
            return fail(e.what());
        }
        return std::nullopt;
    case DerivKind::SigLeaf:
        if (!has_signals(calc_)) return fail("signalling outside the signal calculi");
        return std::nullopt;
    case DerivKind::DiscardNil:
        if (calc_ != Calculus::ABCd) return fail("discard outside ABCd");
        return std::nullopt;
    case DerivKind::DiscardPrefix:
        if (calc_ != Calculus::ABCd) return fail("discard outside ABCd");
        if (d.leaf_action() == Label::receive(d.name())) return fail("prefix b? cannot discard b");
        return std::nullopt;
    case DerivKind::SumLeft:
    case DerivKind::SumRight: {
        Derivation c = d.kind() == DerivKind::SumLeft ? d.child() : d.right();
        if (auto e = sub(c)) return e;
        if (l.kind == LabelKind::Discard) return fail("a single summand cannot discard");
        return std::nullopt;
    }
    case DerivKind::SumBoth:
        if (calc_ != Calculus::ABCd) return fail("discard outside ABCd");
        if (auto e = sub(d.child())) return e;
        return sub(d.right());
    case DerivKind::ParLeft:
    case DerivKind::ParRight: {
        bool left = d.kind() == DerivKind::ParLeft;
        Derivation c = left ? d.child() : d.right();
        if (auto e = sub(c)) return e;
        if (l.kind == LabelKind::Discard) return fail("a single component cannot discard");
        if (l.kind == LabelKind::Bcast || l.kind == LabelKind::Receive) {
            if (calc_ != Calculus::ABC) return fail("broadcast must synchronise with every component");
            if (admits(d.side(), Label::receive(l.name))) return fail("idle component admits " + l.name.str() + "?");
        }
        return std::nullopt;
    }
    case DerivKind::ParBoth:
        if (auto e = sub(d.child())) return e;
        if (auto e = sub(d.right())) return e;
        if (!compose(d.child().label(), d.right().label(), calc_)) return fail("labels do not synchronise");
        return std::nullopt;
    case DerivKind::Restrict:
        if (auto e = sub(d.child())) return e;
        if (d.names().blocks(d.child().label())) return fail("label hidden by restriction");
        return std::nullopt;
    case DerivKind::Relabel: return sub(d.child());
    case DerivKind::Rec:
        if (!env_->defines(d.name())) return fail("undefined agent");
        if (env_->body(d.name()) != d.child().source()) return fail("premise is not the body of the agent");
        return sub(d.child());
    case DerivKind::SigSkip:
        if (!has_signals(calc_)) return fail("signalling outside the signal calculi");
        if (d.child().label().kind == LabelKind::Discard) return fail("discard under signalling");
        return sub(d.child());
    }
    return fail("unknown rule");
}

void Semantics::check_blocking_set(const LabelSet& b, bool sig) const
{
    for (const auto& l : b)
        if (!l.is_action() && !(sig && l.kind == LabelKind::Emission))
            throw BadBlockingSet("blocking set contains " + l.str() + ", which is not an action");
    for (const auto& r : rec_)
        if (!b.count(r)) throw BadBlockingSet("blocking set lacks receptive label " + r.str());
}

// ---- LTSC -------------------------------------------------------------------

Ltsc::Ltsc(std::shared_ptr<const Semantics> sem, Process init, std::size_t bound)
    : sem_(std::move(sem)), bound_(bound)
{
    if (bound_ == 0) throw Error("state bound must be positive");
    check_defined(sem_->env(), init);
    std::deque<std::size_t> todo;
    auto add_state = [&](Process p) {
        auto [it, fresh] = state_ix_.emplace(p, states_.size());
        if (fresh) {
            if (states_.size() >= bound_) throw BoundExceeded(bound_);
            states_.push_back(p);
            out_.emplace_back();
            todo.push_back(it->second);
        }
        return it->second;
    };
    add_state(init);
    while (!todo.empty()) {
        std::size_t s = todo.front();
        todo.pop_front();
        for (auto d : sem_->derivations(states_[s])) {
            std::size_t t = add_state(d.target());
            std::size_t ix = derivs_.size();
            derivs_.push_back(d);
            src_.push_back(s);
            tgt_.push_back(t);
            out_[s].push_back(ix);
            deriv_ix_.emplace(d.id(), ix);
        }
    }
}

std::optional<std::size_t> Ltsc::state_index(Process p) const
{
    auto it = state_ix_.find(p);
    if (it == state_ix_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Ltsc::deriv_index(Derivation d) const
{
    auto it = deriv_ix_.find(d.id());
    if (it == deriv_ix_.end()) return std::nullopt;
    return it->second;
}

LabelSet Ltsc::relevant_labels() const
{
    LabelSet out;
    for (auto d : derivs_)
        if (in_tr_bullet(d)) out.insert(d.label());
    return out;
}

Ltsc reachable_lts(Process p, Calculus calc, std::shared_ptr<const AgentEnv> env, std::size_t bound)
{
    auto sem = std::make_shared<const Semantics>(calc, std::move(env), std::vector<Process>{p});
    return Ltsc(sem, p, bound);
}

bool abc_abcd_agreement(Process p, std::shared_ptr<const AgentEnv> env)
{
    Semantics abc(Calculus::ABC, env, {p});
    Semantics abcd(Calculus::ABCd, env, {p});
    auto triples = [](const Semantics& s, Process q) {
        std::set<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> out;
        for (auto d : s.derivations(q)) {
            if (d.label().kind == LabelKind::Discard) continue;
            out.emplace(reinterpret_cast<std::size_t>(d.source().id()), static_cast<std::size_t>(d.label().kind),
                        d.label().name.id(), reinterpret_cast<std::size_t>(d.target().id()));
        }
        return out;
    };
    return triples(abc, p) == triples(abcd, p);
}

} // namespace justness
