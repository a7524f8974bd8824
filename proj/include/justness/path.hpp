#pragma once

#include "justness/concur.hpp"
#include "justness/sos.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace justness {

struct Step {
    Process state;  // source of `step`
    Derivation step;
};

/// A finite path, or an eventually periodic infinite one: a stem followed by
/// a cycle repeated forever. Positions index stem steps first, then cycle
/// steps.
class Lasso {
public:
    const std::vector<Step>& stem() const { return stem_; }
    const std::vector<Step>& cycle() const { return cycle_; }
    bool finite() const { return cycle_.empty(); }
    Process first_state() const { return stem_.empty() ? (cycle_.empty() ? last_ : cycle_.front().state) : stem_.front().state; }
    /// State reached after the stem; the cycle starts and ends here.
    Process last_state() const { return last_; }
    const Semantics& semantics() const { return *sem_; }
    std::shared_ptr<const Semantics> semantics_ptr() const { return sem_; }

    std::size_t size() const { return stem_.size() + cycle_.size(); }
    const Step& at(std::size_t pos) const { return pos < stem_.size() ? stem_[pos] : cycle_[pos - stem_.size()]; }

    /// Suffix starts: every stem position, then every cycle position, or the
    /// final state of a finite path.
    std::size_t anchor_count() const { return stem_.size() + (finite() ? 1 : cycle_.size()); }
    Process anchor_state(std::size_t a) const { return a < size() ? at(a).state : last_; }
    /// Positions of the steps occurring in the suffix from anchor a (one
    /// rotation of the cycle is enough).
    std::vector<std::size_t> suffix_positions(std::size_t a) const;
    /// States of the suffix from anchor a.
    std::vector<Process> suffix_states(std::size_t a) const;
    /// The suffix from anchor a as a lasso of its own; cycle anchors rotate
    /// the cycle.
    Lasso suffix(std::size_t a) const;

    std::string str() const;

private:
    friend Lasso make_lasso(std::shared_ptr<const Semantics>, Process, const std::vector<Derivation>&,
                            const std::vector<Derivation>&);
    std::shared_ptr<const Semantics> sem_;
    std::vector<Step> stem_, cycle_;
    Process last_;
};

/// Validates adjacency, cycle closure, membership of every step in the
/// derivations of its source, and absence of indicator steps.
Lasso make_lasso(std::shared_ptr<const Semantics> sem, Process start, const std::vector<Derivation>& stem,
                 const std::vector<Derivation>& cycle = {});

struct Interference {
    std::size_t anchor;
    Derivation t;
    std::optional<std::size_t> by;  // position of the first u with t not-⌣ u
};

struct Verdict {
    bool holds = false;
    /// Failure: the anchor and the derivation never interfered with.
    std::optional<Interference> witness;
    /// Obligations considered, with the interfering step when there is one.
    std::vector<Interference> obligations;
    std::string reason;
};

Verdict is_progressing(const Lasso& pi, const LabelSet& b);

/// Per anchor, every enabled t ∈ Tr• (Tr^{s•} when `sig`) and the first step
/// of the suffix interfering with it. Independent of B.
std::vector<Interference> obligations(const Lasso& pi, ConcVariant v, bool sig = false);

Verdict is_just(const Lasso& pi, const LabelSet& b, ConcVariant v = ConcVariant::Dyn);
Verdict is_sigjust(const Lasso& pi, const LabelSet& b, ConcVariant v = ConcVariant::Dyn);
/// Same checks against a precomputed obligation table.
Verdict judge(const std::vector<Interference>& table, const LabelSet& b);

/// Least B ⊇ Rec for which pi is B-just.
LabelSet minimal_blocking_set(const Lasso& pi, ConcVariant v = ConcVariant::Dyn);

struct Decomposition {
    ProcKind op = ProcKind::Par;
    std::optional<Lasso> left, right;  // Par
    std::optional<Lasso> inner;        // Restrict, Relabel
    NameSet names;
    Relabelling f;
};

/// Projection of a path whose states all share a leading static operator.
/// Throws ShapeMismatch otherwise. Passive sides of synchronisations (a
/// discard or an emission read by the other side) are dropped.
Decomposition decompose(const Lasso& pi);
/// The leading static operator shared by all states, if any.
std::optional<ProcKind> shared_static_top(const Lasso& pi);

struct Triple {
    Process source;
    Label label;
    Process target;
    friend bool operator==(const Triple& a, const Triple& b)
    {
        return a.source == b.source && a.label == b.label && a.target == b.target;
    }
};

struct AbstractLasso {
    std::shared_ptr<const Semantics> sem;
    Process start;
    std::vector<Triple> stem, cycle;
    bool finite() const { return cycle.empty(); }
};

AbstractLasso to_abstract(const Lasso& pi);
/// Throws AdjacencyError when triples do not chain or are not transitions.
AbstractLasso make_abstract(std::shared_ptr<const Semantics> sem, Process start, std::vector<Triple> stem,
                            std::vector<Triple> cycle = {});
Verdict abstract_is_just(const AbstractLasso& rho, const LabelSet& b, ConcVariant v = ConcVariant::Static);
/// Bounded search for a just concrete lasso with the same triples, the
/// cycle unrolled as often as a cycle triple has derivations (at most six).
std::optional<Lasso> concretize(const AbstractLasso& rho, const LabelSet& b, ConcVariant v = ConcVariant::Static,
                                std::size_t limit = 100000);

} // namespace justness
