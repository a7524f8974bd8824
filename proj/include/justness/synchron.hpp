#pragma once

#include "justness/term.hpp"

#include <string>
#include <vector>

namespace justness {

class Derivation;
class Semantics;

enum class ArgKind : std::uint8_t { SumL, SumR, ParL, ParR, Restrict, Relabel, Rec, SigSkip };

/// One step from a proof-tree root towards a leaf.
struct Arg {
    ArgKind kind = ArgKind::ParL;
    NameSet names;        // Restrict
    Relabelling f;        // Relabel
    Symbol name;          // Rec: agent, SigSkip: signal

    static Arg sum_l() { return {ArgKind::SumL, {}, {}, {}}; }
    static Arg sum_r() { return {ArgKind::SumR, {}, {}, {}}; }
    static Arg par_l() { return {ArgKind::ParL, {}, {}, {}}; }
    static Arg par_r() { return {ArgKind::ParR, {}, {}, {}}; }
    static Arg restrict(NameSet l) { return {ArgKind::Restrict, l, {}, {}}; }
    static Arg relabel(Relabelling f) { return {ArgKind::Relabel, {}, f, {}}; }
    static Arg rec(Symbol a) { return {ArgKind::Rec, {}, {}, a}; }
    static Arg sig_skip(Symbol r) { return {ArgKind::SigSkip, {}, {}, r}; }

    /// Static operators persist across transitions: |, \L and [f].
    bool is_static() const
    {
        return kind == ArgKind::ParL || kind == ArgKind::ParR || kind == ArgKind::Restrict ||
               kind == ArgKind::Relabel;
    }
    bool is_par() const { return kind == ArgKind::ParL || kind == ArgKind::ParR; }
    std::string str() const;

    friend bool operator==(const Arg& a, const Arg& b)
    {
        return a.kind == b.kind && a.names == b.names && a.f == b.f && a.name == b.name;
    }
};

using ArgString = std::vector<Arg>;
/// A component is an argument string; which kind (dynamic, static,
/// abstract) depends on the map that produced it.
using Component = ArgString;

enum class LeafKind : std::uint8_t { Act, Sig, Disc };

struct Leaf {
    LeafKind kind = LeafKind::Act;
    Label action;   // Act
    Process proc;   // Act: continuation, Sig: signalled process
    Symbol name;    // Sig: signal, Disc: broadcast name

    friend bool operator==(const Leaf& a, const Leaf& b)
    {
        return a.kind == b.kind && a.action == b.action && a.proc == b.proc && a.name == b.name;
    }
};

struct Synchron {
    ArgString path;
    Leaf leaf;

    bool active() const { return leaf.kind == LeafKind::Act; }
    std::string str() const;
    friend bool operator==(const Synchron& a, const Synchron& b) { return a.leaf == b.leaf && a.path == b.path; }
};

using SynchronSet = std::vector<Synchron>;

std::string str(const ArgString& s);
std::string str(const SynchronSet& s);
/// Set equality, ignoring order.
bool same_set(const SynchronSet& a, const SynchronSet& b);
bool same_set(const std::vector<Component>& a, const std::vector<Component>& b);

/// Drops the dynamic arguments.
ArgString static_part(const ArgString& s);

/// ς ↝ ς′: equal, or ς = σ₁|_D ς₂ and ς′ = static(σ₁)|_D ς₂.
bool leadsto(const Synchron& from, const Synchron& to);
/// ⌣_d on argument strings: a shared prefix followed by |_L versus |_R.
bool directly_concurrent(const ArgString& a, const ArgString& b);
bool directly_concurrent(const Synchron& a, const Synchron& b);
/// ⌣: some ↝-predecessors of the two synchrons are directly concurrent.
bool concurrent(const Synchron& a, const Synchron& b);

/// ς @ υ for ς ⌣_d υ: the shared prefix is reduced to its static part.
Synchron after(const Synchron& s, const Synchron& u);

Component dynamic_component(const Synchron& s);
Component static_component(const Synchron& s);
Component abstract_component(const Synchron& s);

/// Synchrons of a process; discard leaves in ABCd range over the broadcast
/// universe of `sem`.
SynchronSet proc_synchrons(Process p, const Semantics& sem);

const SynchronSet& deriv_synchrons(const Derivation& d);
/// nς: the b!-synchron for broadcasts, all synchrons otherwise.
/// Throws NotSBullet outside Tr^{s•}.
SynchronSet necessary(const Derivation& d);
/// aς: synchrons with an action leaf.
SynchronSet active(const Derivation& d);

/// ς @ ζ: identity off Tr°, otherwise after the closest active synchron.
/// Throws PreconditionViolated unless ς ⌣_d every active synchron of ζ.
Synchron after(const Synchron& s, const Derivation& z);

struct CompSets {
    std::vector<Component> COMP, NC, AC;           // dynamic components
    std::vector<Component> comp, npc, afc;         // static components
    std::vector<Component> npc_abs, afc_abs;       // abstract components
};

/// Component images of ς(d), nς(d) and aς(d). The necessary sets are left
/// empty outside Tr^{s•}.
CompSets comp_sets(const Derivation& d);

} // namespace justness
