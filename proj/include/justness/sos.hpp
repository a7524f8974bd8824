#pragma once

#include "justness/synchron.hpp"
#include "justness/term.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace justness {

enum class DerivKind : std::uint8_t {
    ActLeaf,        // α̂P
    SigLeaf,        // P ŝ
    DiscardNil,     // b:0
    DiscardPrefix,  // b:α.P
    SumLeft,        // χ+Q
    SumRight,       // P+χ
    SumBoth,        // t+u (discards)
    ParLeft,        // χ|Q
    ParRight,       // P|χ
    ParBoth,        // χ|ζ
    Restrict,       // χ\L
    Relabel,        // χ[f]
    Rec,            // A:χ
    SigSkip         // χ^r
};

namespace detail { struct DerivNode; }

/// A named SOS proof tree. Trees are hash-consed: structurally equal trees
/// are the same object. Constructors compute source, label and target from
/// the shape; whether the rule's side conditions hold is the business of
/// Semantics (see validate()).
class Derivation {
public:
    static Derivation act_leaf(Label a, Process p);
    static Derivation sig_leaf(Process p, Symbol s);
    static Derivation discard_nil(Symbol b);
    static Derivation discard_prefix(Symbol b, Label a, Process p);
    static Derivation sum_left(Derivation l, Process q);
    static Derivation sum_right(Process p, Derivation r);
    static Derivation sum_both(Derivation l, Derivation r);
    static Derivation par_left(Derivation l, Process q);
    static Derivation par_right(Process p, Derivation r);
    /// Throws Error when the labels do not synchronise.
    static Derivation par_both(Derivation l, Derivation r);
    static Derivation restrict(Derivation d, NameSet names);
    static Derivation relabel(Derivation d, Relabelling f);
    static Derivation rec(Symbol agent, Derivation d);
    static Derivation sig_skip(Derivation d, Symbol r);

    DerivKind kind() const;
    Process source() const;
    Process target() const;
    const Label& label() const;

    Derivation child() const;          // unary wrappers, SumLeft, ParLeft, left of binaries
    Derivation left() const { return child(); }
    Derivation right() const;          // SumRight, ParRight, right of binaries
    Process side() const;              // the idle process of SumLeft/Right, ParLeft/Right; P of leaves
    const Label& leaf_action() const;  // ActLeaf, DiscardPrefix
    Symbol name() const;               // SigLeaf/SigSkip: signal, Discard*: b, Rec: agent
    NameSet names() const;
    Relabelling relabelling() const;

    const SynchronSet& synchrons() const;
    bool has_left() const;
    bool has_right() const;

    /// Emissions and discards: facts about a state rather than moves.
    bool passive() const { return !label().is_action(); }

    std::size_t hash() const;
    const void* id() const { return node_; }
    /// Printed proof-tree name, e.g. ((c^Q)+(d.R|e.S) | 'c^T)\{c}.
    std::string str() const;

    friend bool operator==(Derivation a, Derivation b) { return a.node_ == b.node_; }
    friend bool operator!=(Derivation a, Derivation b) { return a.node_ != b.node_; }

private:
    explicit Derivation(const detail::DerivNode* n) : node_(n) {}
    const detail::DerivNode* node_;
};

/// Five classes of derivations: indicators, emissions, discards, receives, the rest.
enum class DerivClass : std::uint8_t { I_Indicator, II_Emission, III_Discard, IV_Receive, V_Other };

std::string_view to_string(DerivClass c);

DerivClass classify(Derivation d, Calculus calc);
/// Tr°: label in Act.
inline bool in_tr_circ(Derivation d) { return d.label().is_action(); }
/// Tr•: label in Act∖Rec.
inline bool in_tr_bullet(Derivation d) { return d.label().is_action() && !d.label().is_receive(); }
/// Tr^{s•}: classes I, II and V.
inline bool in_tr_sbullet(Derivation d)
{
    return d.label().kind == LabelKind::Emission || in_tr_bullet(d);
}
/// Transitions (classes II to V); class I indicators are not transitions.
bool in_tr(Derivation d, Calculus calc);

/// SOS interpreter for one dialect and environment. Derivation sets are
/// memoised per process; all public members are safe to call concurrently.
class Semantics {
public:
    /// `roots` contribute names to the broadcast and signal universes.
    Semantics(Calculus calc, std::shared_ptr<const AgentEnv> env, const std::vector<Process>& roots = {});

    Calculus calculus() const { return calc_; }
    const AgentEnv& env() const { return *env_; }
    std::shared_ptr<const AgentEnv> env_ptr() const { return env_; }

    const std::set<Symbol>& broadcast_universe() const { return bnames_; }
    const std::set<Symbol>& signal_universe() const { return snames_; }
    /// Rec: all receive labels over the broadcast universe.
    const LabelSet& receptive() const { return rec_; }
    /// All emission labels over the signal universe.
    LabelSet emissions() const;

    /// All derivations with source p, indicators included.
    const std::vector<Derivation>& derivations(Process p) const;
    /// For emissions: p ⤳ s in CCSS_PRED, p →^s p in CCSS_ENC.
    bool admits(Process p, const Label& a) const;
    /// Labels of Act admitted by p, plus emissions when `with_emissions`.
    LabelSet admitted(Process p, bool with_emissions = false) const;
    /// Whether p →b: p is derivable (ABCd).
    bool discard_check(Process p, Symbol b) const;
    DerivClass classify(Derivation d) const { return justness::classify(d, calc_); }

    /// Replays d bottom-up against the rule schemas of this dialect. Returns
    /// a description of the first violated rule, or nothing.
    std::optional<std::string> validate(Derivation d) const;

    /// Ensures Rec ⊆ B and that B has only labels in Act (plus emissions
    /// when `sig`); throws BadBlockingSet.
    void check_blocking_set(const LabelSet& b, bool sig = false) const;

private:
    std::vector<Derivation> derive(Process p) const;

    Calculus calc_;
    std::shared_ptr<const AgentEnv> env_;
    std::set<Symbol> bnames_, snames_;
    LabelSet rec_;
    mutable std::mutex mu_;
    mutable std::unordered_map<Process, std::vector<Derivation>> memo_;
};

/// Composition of two synchronising labels in a parallel composition, per
/// dialect; nothing when they do not synchronise.
std::optional<Label> compose(const Label& l, const Label& r, Calculus calc);

/// A finite reachable fragment of the LTSC.
class Ltsc {
public:
    Ltsc(std::shared_ptr<const Semantics> sem, Process init, std::size_t bound);

    const Semantics& semantics() const { return *sem_; }
    std::shared_ptr<const Semantics> semantics_ptr() const { return sem_; }
    Calculus calculus() const { return sem_->calculus(); }

    Process initial() const { return states_.front(); }
    const std::vector<Process>& states() const { return states_; }
    const std::vector<Derivation>& derivations() const { return derivs_; }
    std::size_t bound() const { return bound_; }

    std::optional<std::size_t> state_index(Process p) const;
    std::optional<std::size_t> deriv_index(Derivation d) const;
    std::size_t source_index(std::size_t d) const { return src_[d]; }
    std::size_t target_index(std::size_t d) const { return tgt_[d]; }
    /// Indices of the derivations whose source is state s.
    const std::vector<std::size_t>& outgoing(std::size_t s) const { return out_[s]; }

    /// Labels of Tr• derivations: the labels a blocking set may usefully add.
    LabelSet relevant_labels() const;

private:
    std::shared_ptr<const Semantics> sem_;
    std::size_t bound_;
    std::vector<Process> states_;
    std::vector<Derivation> derivs_;
    std::vector<std::size_t> src_, tgt_;
    std::vector<std::vector<std::size_t>> out_;
    std::unordered_map<Process, std::size_t> state_ix_;
    std::unordered_map<const void*, std::size_t> deriv_ix_;
};

/// Throws BoundExceeded when more than `bound` states are reachable.
Ltsc reachable_lts(Process p, Calculus calc, std::shared_ptr<const AgentEnv> env, std::size_t bound);

/// ABC and ABCd agree on (source, label, target) once discards are dropped.
bool abc_abcd_agreement(Process p, std::shared_ptr<const AgentEnv> env);

} // namespace justness

template <>
struct std::hash<justness::Derivation> {
    std::size_t operator()(justness::Derivation d) const noexcept { return d.hash(); }
};
