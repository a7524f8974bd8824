#pragma once

#include "justness/path.hpp"
#include "justness/syntax.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace justness {

struct CorpusEntry {
    std::string name;
    Calculus calc = Calculus::CCS;
    std::shared_ptr<AgentEnv> env;
    Process init;
};

/// Directory of the shipped examples: $JUSTNESS_CORPUS if set, else the
/// source tree's corpus/.
std::string corpus_dir();

/// All *.sys files of a directory, sorted by name.
std::vector<CorpusEntry> named_examples(const std::string& dir = corpus_dir());
CorpusEntry named_example(const std::string& name, const std::string& dir = corpus_dir());

/// `count` guarded random systems with at most `max_states` reachable
/// states, cycling through the dialects. Deterministic in `seed`.
std::vector<CorpusEntry> random_corpus(std::uint64_t seed, std::size_t count, std::size_t max_states = 30);

/// Named examples followed by random_corpus(seed, random_count).
std::vector<CorpusEntry> full_corpus(std::uint64_t seed = 1, std::size_t random_count = 200);

std::shared_ptr<const Semantics> semantics_for(const CorpusEntry& e);
Ltsc explore(const CorpusEntry& e, std::size_t bound = 30);

/// Every lasso from the initial state whose states are pairwise distinct,
/// with at most `max_stem` stem steps and `max_cycle` cycle steps; finite
/// paths included.
std::vector<Lasso> simple_lassos(const Ltsc& lts, std::size_t max_stem = 4, std::size_t max_cycle = 4);

/// Every subset of `labels`, each joined with `base`.
std::vector<LabelSet> blocking_sets(const LabelSet& base, const LabelSet& labels);

} // namespace justness
