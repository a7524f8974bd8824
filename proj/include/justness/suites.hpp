#pragma once

#include "justness/corpus.hpp"

#include <functional>
#include <string>
#include <vector>

namespace justness {

struct SuiteResult {
    std::string name;
    std::size_t checked = 0;
    std::size_t violations = 0;
    std::size_t skipped = 0;  // cases outside a check's range (e.g. too many labels)
    std::vector<std::string> failures;  // first few, human readable
    double seconds = 0;
    bool pass() const { return violations == 0 && checked > 0; }
    void fail(std::string what);
};

using Suite = std::function<SuiteResult(const std::vector<CorpusEntry>&)>;

/// relation-chain, inductive-oracle, closure, agreement-static-dynamic,
/// agreement-coinductive, feasibility, fair-implies-just, discard-lemma,
/// abc-abcd.
const std::vector<std::pair<std::string, Suite>>& suites();
SuiteResult run_suite(const std::string& name, const std::vector<CorpusEntry>& corpus);

} // namespace justness
