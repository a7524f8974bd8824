#include "justness/term.hpp"

#include "intern.hpp"

#include <algorithm>

namespace justness {

namespace detail {

struct ProcNode {
    ProcKind kind;
    Label action;
    const ProcNode* left = nullptr;
    const ProcNode* right = nullptr;
    NameSet names;
    Relabelling relabel;
    Symbol ident;
    std::size_t hash = 0;

    std::size_t shallow_hash() const
    {
        std::size_t h = static_cast<std::size_t>(kind);
        h = hash_mix(h, std::hash<Label>()(action));
        h = hash_mix(h, left ? left->hash : 0);
        h = hash_mix(h, right ? right->hash : 0);
        h = hash_mix(h, names.hash());
        h = hash_mix(h, relabel.hash());
        return hash_mix(h, ident.id());
    }
};

} // namespace detail

namespace {

using detail::ProcNode;

struct NodeHash {
    std::size_t operator()(const ProcNode& n) const { return n.hash; }
};
struct NodeEq {
    bool operator()(const ProcNode& a, const ProcNode& b) const
    {
        return a.kind == b.kind && a.action == b.action && a.left == b.left && a.right == b.right &&
               a.names == b.names && a.relabel == b.relabel && a.ident == b.ident;
    }
};

detail::Interner<ProcNode, NodeHash, NodeEq>& proc_table()
{
    static detail::Interner<ProcNode, NodeHash, NodeEq> t;
    return t;
}

struct VecHash {
    std::size_t operator()(const std::vector<Symbol>& v) const
    {
        std::size_t h = v.size();
        for (auto s : v) h = hash_mix(h, s.id());
        return h;
    }
};
struct PairVecHash {
    std::size_t operator()(const std::vector<std::pair<Symbol, Symbol>>& v) const
    {
        std::size_t h = v.size();
        for (auto [a, b] : v) h = hash_mix(hash_mix(h, a.id()), b.id());
        return h;
    }
};
template <class T>
struct PlainEq {
    bool operator()(const T& a, const T& b) const { return a == b; }
};

const ProcNode* make(ProcNode n)
{
    n.hash = n.shallow_hash();
    return proc_table().intern(std::move(n));
}

} // namespace

NameSet::NameSet(std::vector<Symbol> names)
{
    static detail::Interner<std::vector<Symbol>, VecHash, PlainEq<std::vector<Symbol>>> table;
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    items_ = table.intern(std::move(names));
}

bool NameSet::contains(Symbol s) const
{
    return std::find(items_->begin(), items_->end(), s) != items_->end();
}

std::string NameSet::str() const
{
    std::string out = "{";
    for (std::size_t i = 0; i < items_->size(); ++i) out += (i ? "," : "") + (*items_)[i].str();
    return out + "}";
}

Relabelling::Relabelling(std::vector<std::pair<Symbol, Symbol>> pairs)
{
    static detail::Interner<std::vector<std::pair<Symbol, Symbol>>, PairVecHash,
                            PlainEq<std::vector<std::pair<Symbol, Symbol>>>>
        table;
    std::erase_if(pairs, [](const auto& p) { return p.first == p.second; });
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < pairs.size(); ++i)
        if (pairs[i].first == pairs[i - 1].first)
            throw Error("relabelling maps " + pairs[i].first.str() + " twice");
    pairs_ = table.intern(std::move(pairs));
}

Symbol Relabelling::apply(Symbol s) const
{
    for (auto [from, to] : *pairs_)
        if (from == s) return to;
    return s;
}

std::string Relabelling::str() const
{
    std::string out = "[";
    for (std::size_t i = 0; i < pairs_->size(); ++i)
        out += (i ? "," : "") + (*pairs_)[i].first.str() + "->" + (*pairs_)[i].second.str();
    return out + "]";
}

Label apply_relabelling(const Relabelling& f, const Label& l)
{
    if (l.kind == LabelKind::Tau) return l;
    return Label{l.kind, f.apply(l.name)};
}

LabelSet apply_relabelling(const Relabelling& f, const LabelSet& set)
{
    LabelSet out;
    for (const auto& l : set) out.insert(apply_relabelling(f, l));
    return out;
}

// ---- Process --------------------------------------------------------------

Process::Process() : node_(nil().node_) {}

Process Process::nil()
{
    static const ProcNode* n = make(ProcNode{ProcKind::Nil, {}, nullptr, nullptr, {}, {}, {}});
    return Process(n);
}

Process Process::prefix(Label action, Process body)
{
    if (!action.is_action()) throw DialectError("prefix label " + action.str() + " is not an action");
    return Process(make(ProcNode{ProcKind::Prefix, action, body.node_, nullptr, {}, {}, {}}));
}

Process Process::sum(Process l, Process r)
{
    return Process(make(ProcNode{ProcKind::Sum, {}, l.node_, r.node_, {}, {}, {}}));
}

Process Process::par(Process l, Process r)
{
    return Process(make(ProcNode{ProcKind::Par, {}, l.node_, r.node_, {}, {}, {}}));
}

Process Process::restrict(NameSet names, Process body)
{
    return Process(make(ProcNode{ProcKind::Restrict, {}, body.node_, nullptr, names, {}, {}}));
}

Process Process::relabel(Relabelling f, Process body)
{
    return Process(make(ProcNode{ProcKind::Relabel, {}, body.node_, nullptr, {}, f, {}}));
}

Process Process::agent(Symbol ident)
{
    return Process(make(ProcNode{ProcKind::Agent, {}, nullptr, nullptr, {}, {}, ident}));
}

Process Process::signalled(Process body, Symbol signal)
{
    return Process(make(ProcNode{ProcKind::Signalled, {}, body.node_, nullptr, {}, {}, signal}));
}

ProcKind Process::kind() const { return node_->kind; }
const Label& Process::action() const { return node_->action; }
Process Process::left() const { return Process(node_->left); }
Process Process::right() const { return Process(node_->right); }
NameSet Process::names() const { return node_->names; }
Relabelling Process::relabelling() const { return node_->relabel; }
Symbol Process::ident() const { return node_->ident; }
Symbol Process::signal() const { return node_->ident; }
std::size_t Process::hash() const { return node_->hash; }

// ---- environments ---------------------------------------------------------

void AgentEnv::define(Symbol ident, Process body)
{
    if (!defs_.count(ident)) order_.push_back(ident);
    defs_[ident] = body;
}

void AgentEnv::define_relabelling(Symbol name, Relabelling f) { relabellings_[name] = f; }

Process AgentEnv::body(Symbol ident) const
{
    auto it = defs_.find(ident);
    if (it == defs_.end()) throw UndefinedAgent("undefined agent identifier " + ident.str());
    return it->second;
}

const Relabelling* AgentEnv::relabelling(Symbol name) const
{
    auto it = relabellings_.find(name);
    return it == relabellings_.end() ? nullptr : &it->second;
}

namespace {

void guarded_walk(const AgentEnv& env, Process p, bool guarded, const std::string& path)
{
    auto sub = [&](Process q, bool g, const char* arg) {
        guarded_walk(env, q, g, path.empty() ? std::string(arg) : path + " " + arg);
    };
    switch (p.kind()) {
    case ProcKind::Nil: return;
    case ProcKind::Prefix: sub(p.body(), true, p.action().str().c_str()); return;
    case ProcKind::Sum:
        sub(p.left(), guarded, "+_L");
        sub(p.right(), guarded, "+_R");
        return;
    case ProcKind::Par:
        sub(p.left(), guarded, "|_L");
        sub(p.right(), guarded, "|_R");
        return;
    case ProcKind::Restrict: sub(p.body(), guarded, ("\\" + p.names().str()).c_str()); return;
    case ProcKind::Relabel: sub(p.body(), guarded, p.relabelling().str().c_str()); return;
    case ProcKind::Signalled: sub(p.body(), guarded, ("^" + p.signal().str()).c_str()); return;
    case ProcKind::Agent:
        if (!env.defines(p.ident())) throw UndefinedAgent("undefined agent identifier " + p.ident().str());
        if (!guarded) throw GuardednessError(p.ident(), path);
        return;
    }
}

template <class F>
void visit(Process p, F&& f)
{
    f(p);
    switch (p.kind()) {
    case ProcKind::Nil:
    case ProcKind::Agent: return;
    case ProcKind::Sum:
    case ProcKind::Par:
        visit(p.left(), f);
        visit(p.right(), f);
        return;
    default: visit(p.body(), f);
    }
}

std::set<Symbol> close_under_relabellings(std::set<Symbol> names, const std::vector<Relabelling>& fs)
{
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& f : fs)
            for (auto n : std::vector<Symbol>(names.begin(), names.end()))
                grew |= names.insert(f.apply(n)).second;
    }
    return names;
}

template <class Pick>
std::set<Symbol> collect(const AgentEnv& env, const std::vector<Process>& roots, Pick pick)
{
    std::set<Symbol> names;
    std::vector<Relabelling> fs;
    auto scan = [&](Process p) {
        visit(p, [&](Process q) {
            pick(q, names);
            if (q.kind() == ProcKind::Relabel) fs.push_back(q.relabelling());
        });
    };
    for (auto a : env.agents()) scan(env.body(a));
    for (auto r : roots) scan(r);
    return close_under_relabellings(std::move(names), fs);
}

} // namespace

void check_guarded(const AgentEnv& env)
{
    for (auto a : env.agents()) guarded_walk(env, env.body(a), false, "");
}

void check_defined(const AgentEnv& env, Process p)
{
    visit(p, [&](Process q) {
        if (q.kind() == ProcKind::Agent && !env.defines(q.ident()))
            throw UndefinedAgent("undefined agent identifier " + q.ident().str());
    });
}

void check_dialect(Process p, Calculus calc)
{
    visit(p, [&](Process q) {
        if (q.kind() == ProcKind::Signalled && !has_signals(calc))
            throw DialectError("signalling ^" + q.signal().str() + " outside the signal calculi");
        if (q.kind() != ProcKind::Prefix) return;
        auto k = q.action().kind;
        if ((k == LabelKind::Bcast || k == LabelKind::Receive) && !has_broadcast(calc))
            throw DialectError("broadcast action " + q.action().str() + " outside the broadcast calculi");
        if (k == LabelKind::Signal && !has_signals(calc))
            throw DialectError("signal read " + q.action().str() + " outside the signal calculi");
    });
}

std::set<Symbol> broadcast_names(const AgentEnv& env, const std::vector<Process>& roots)
{
    return collect(env, roots, [](Process q, std::set<Symbol>& out) {
        if (q.kind() == ProcKind::Prefix && q.action().is_broadcast_family()) out.insert(q.action().name);
    });
}

std::set<Symbol> signal_names(const AgentEnv& env, const std::vector<Process>& roots)
{
    return collect(env, roots, [](Process q, std::set<Symbol>& out) {
        if (q.kind() == ProcKind::Signalled) out.insert(q.signal());
        if (q.kind() == ProcKind::Prefix && q.action().kind == LabelKind::Signal) out.insert(q.action().name);
    });
}

std::size_t term_size(Process p)
{
    std::size_t n = 0;
    visit(p, [&](Process) { ++n; });
    return n;
}

std::size_t term_depth(Process p)
{
    switch (p.kind()) {
    case ProcKind::Nil:
    case ProcKind::Agent: return 0;
    case ProcKind::Sum:
    case ProcKind::Par: return 1 + std::max(term_depth(p.left()), term_depth(p.right()));
    default: return 1 + term_depth(p.body());
    }
}

} // namespace justness
