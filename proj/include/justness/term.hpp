#pragma once

#include "justness/label.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace justness {

/// Interned finite set of names (restriction sets).
class NameSet {
public:
    NameSet() : NameSet(std::vector<Symbol>{}) {}
    explicit NameSet(std::vector<Symbol> names);

    const std::vector<Symbol>& items() const { return *items_; }
    bool contains(Symbol s) const;
    /// True when a restriction by this set hides label l.
    bool blocks(const Label& l) const { return l.restrictable() && contains(l.name); }
    std::string str() const;

    friend bool operator==(NameSet a, NameSet b) { return a.items_ == b.items_; }
    std::size_t hash() const { return std::hash<const void*>()(items_); }

private:
    const std::vector<Symbol>* items_;
};

/// Interned finite map on names, identity outside its domain. Identity
/// entries are dropped so that equal functions get equal handles.
class Relabelling {
public:
    Relabelling() : Relabelling(std::vector<std::pair<Symbol, Symbol>>{}) {}
    explicit Relabelling(std::vector<std::pair<Symbol, Symbol>> pairs);

    const std::vector<std::pair<Symbol, Symbol>>& pairs() const { return *pairs_; }
    Symbol apply(Symbol s) const;
    std::string str() const;

    friend bool operator==(Relabelling a, Relabelling b) { return a.pairs_ == b.pairs_; }
    std::size_t hash() const { return std::hash<const void*>()(pairs_); }

private:
    const std::vector<std::pair<Symbol, Symbol>>* pairs_;
};

/// f(τ)=τ, f('c)='f(c), f(b♯)=f(b)♯, f(s)=f(s), f(^s)=^f(s).
Label apply_relabelling(const Relabelling& f, const Label& l);
LabelSet apply_relabelling(const Relabelling& f, const LabelSet& set);

enum class ProcKind : std::uint8_t { Nil, Prefix, Sum, Par, Restrict, Relabel, Agent, Signalled };

namespace detail { struct ProcNode; }

/// Hash-consed process term: structurally equal terms share one node, so
/// equality and hashing are O(1).
class Process {
public:
    Process();

    static Process nil();
    static Process prefix(Label action, Process body);
    static Process sum(Process l, Process r);
    static Process par(Process l, Process r);
    static Process restrict(NameSet names, Process body);
    static Process relabel(Relabelling f, Process body);
    static Process agent(Symbol ident);
    static Process signalled(Process body, Symbol signal);

    ProcKind kind() const;
    const Label& action() const;      // Prefix
    Process left() const;             // Sum, Par; body of unary nodes
    Process right() const;            // Sum, Par
    Process body() const { return left(); }
    NameSet names() const;            // Restrict
    Relabelling relabelling() const;  // Relabel
    Symbol ident() const;             // Agent
    Symbol signal() const;            // Signalled

    bool is_static_top() const
    {
        auto k = kind();
        return k == ProcKind::Par || k == ProcKind::Restrict || k == ProcKind::Relabel;
    }

    std::size_t hash() const;
    const void* id() const { return node_; }

    friend bool operator==(Process a, Process b) { return a.node_ == b.node_; }
    friend bool operator!=(Process a, Process b) { return a.node_ != b.node_; }

private:
    explicit Process(const detail::ProcNode* n) : node_(n) {}
    const detail::ProcNode* node_;
};

/// Agent definitions plus named relabellings. Signal names used anywhere in
/// the system are recorded so that later queries resolve reads consistently.
class AgentEnv {
public:
    void define(Symbol ident, Process body);
    void define_relabelling(Symbol name, Relabelling f);
    void add_signals(const std::set<Symbol>& s) { signals_.insert(s.begin(), s.end()); }

    bool defines(Symbol ident) const { return defs_.count(ident) != 0; }
    Process body(Symbol ident) const;
    const std::vector<Symbol>& agents() const { return order_; }
    const Relabelling* relabelling(Symbol name) const;
    const std::map<Symbol, Relabelling>& relabellings() const { return relabellings_; }
    const std::set<Symbol>& signals() const { return signals_; }

private:
    std::unordered_map<Symbol, Process> defs_;
    std::vector<Symbol> order_;
    std::map<Symbol, Relabelling> relabellings_;
    std::set<Symbol> signals_;
};

/// Throws GuardednessError naming the identifier and the operator path of
/// its first unguarded occurrence; UndefinedAgent for dangling references.
void check_guarded(const AgentEnv& env);
/// Every identifier reachable from p is defined.
void check_defined(const AgentEnv& env, Process p);
/// Dialect gate: throws DialectError for constructs foreign to calc.
void check_dialect(Process p, Calculus calc);

/// Names occurring in broadcast / signal positions, closed under the
/// relabellings that occur in the system.
std::set<Symbol> broadcast_names(const AgentEnv& env, const std::vector<Process>& roots);
std::set<Symbol> signal_names(const AgentEnv& env, const std::vector<Process>& roots);

std::size_t term_size(Process p);
std::size_t term_depth(Process p);

} // namespace justness

template <>
struct std::hash<justness::Process> {
    std::size_t operator()(justness::Process p) const noexcept { return p.hash(); }
};
template <>
struct std::hash<justness::NameSet> {
    std::size_t operator()(justness::NameSet n) const noexcept { return n.hash(); }
};
template <>
struct std::hash<justness::Relabelling> {
    std::size_t operator()(justness::Relabelling f) const noexcept { return f.hash(); }
};
