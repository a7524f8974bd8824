#pragma once

#include "justness/path.hpp"

#include <optional>
#include <string>
#include <vector>

namespace justness {

// ---- coinductive justness ------------------------------------------------

/// One step of the least-blocking-set recursion. `result` is what replay()
/// recomputes from `local` and the children.
struct BlockNode {
    enum class Op { Path, Anchor, Par, Restrict, Relabel };
    Op op = Op::Path;
    std::size_t anchor = 0;  // Anchor
    LabelSet local;          // Anchor: labels admitted at the end of a finite suffix
    NameSet names;           // Restrict
    Relabelling f;           // Relabel
    std::vector<BlockNode> children;
    LabelSet result;
};

struct BlockResult {
    LabelSet minimal_set;
    BlockNode trace;
};

/// Least B for which pi is B-just in the coinductive sense, computed by
/// recursion on the static operators shared along each suffix. In `sig` mode
/// emissions count as labels and the sets are sigjust sets.
BlockResult coinductive_minimal(const Lasso& pi, bool sig);
/// Recomputes a node's set from its children.
LabelSet replay(const BlockNode& node, const Semantics& sem);

/// Decides the coinductive predicate. In signal dialects this is
/// (B ∪ emissions)-sigjustness.
Verdict coinductive_is_just(const Lasso& pi, const LabelSet& b);

/// The same predicate by brute force: the parallel case tries every C and D
/// over the labels the projected paths can perform. Nothing when such a
/// label universe exceeds `max_universe`.
std::optional<bool> coinductive_enumerate(const Lasso& pi, const LabelSet& b, std::size_t max_universe = 6);

// ---- fairness -------------------------------------------------------------

struct TaskFamily {
    std::vector<std::string> names;
    std::vector<std::vector<Derivation>> tasks;
    std::size_t size() const { return tasks.size(); }
};

/// One task per action label.
TaskFamily tasks_per_action(const Ltsc& lts);
/// One task per Tr° derivation.
TaskFamily tasks_per_transition(const Ltsc& lts);
/// The single task Tr°: progress as a fairness property.
TaskFamily tasks_whole(const Ltsc& lts);
/// T_t = {u ∈ Tr° | t not-⌣• u} for every t ∈ Tr•, without duplicates.
TaskFamily tasks_from_conc(const Ltsc& lts, ConcVariant v = ConcVariant::Dyn);
/// Throws Error when a member is not a Tr° derivation of lts.
void check_tasks(const TaskFamily& tasks, const Ltsc& lts);

enum class FairMode { Strong, Weak, J };
std::string_view to_string(FairMode m);
std::optional<FairMode> fair_mode_from_string(std::string_view s);

Verdict is_fair(const Lasso& pi, const LabelSet& b, const TaskFamily& tasks, FairMode mode);

// ---- feasibility ------------------------------------------------------------

struct ExtendResult {
    bool exhausted = false;
    Lasso path;
    std::size_t steps_added = 0;
};

/// Extends a finite path to a just one with Tr•_¬B steps only, discharging
/// the oldest open obligation first. Stops at a deadlock or when a
/// (state, open obligations) pair repeats and closes a just cycle; reports
/// exhaustion with the partial path after `budget` added steps.
ExtendResult extend_to_just(const Lasso& prefix, const LabelSet& b, ConcVariant v, std::size_t budget);

} // namespace justness
