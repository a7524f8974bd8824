#pragma once

#include "justness/criteria.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace justness {

using Json = nlohmann::json;

/// {dialect, initial, states: [{id, term}], derivations: [{id, source,
/// target, label, class, name, synchrons}]}
Json to_json(const Ltsc& lts);
/// Indicators and passive derivations are dashed self-loops.
std::string to_dot(const Ltsc& lts);

/// Entry [i][j]: 1 when derivation i is unaffected by derivation j, 0 when
/// not, -1 when i is outside the variant's domain.
std::vector<std::vector<int>> conc_matrix(const Ltsc& lts, ConcVariant v);
std::string matrix_csv(const std::vector<std::vector<int>>& m);
Json matrix_json(const Ltsc& lts, const std::vector<std::vector<int>>& m, ConcVariant v);

/// Lasso file: {"start": term?, "stem": [step...], "cycle": [step...]}. A
/// step is an index into the derivations of `lts`, the printed name of a
/// derivation, a label (when it picks a unique derivation), or
/// {"label": l, "target": term}. `start` defaults to the initial state.
Lasso lasso_from_json(const Json& j, const Ltsc& lts);
/// Same file with steps given as {"source", "label", "target"} triples or
/// labels.
AbstractLasso abstract_lasso_from_json(const Json& j, const Ltsc& lts);
Json to_json(const Lasso& pi);
Json to_json(const Verdict& v);

/// {"name": [derivation indices]} over `lts`.
TaskFamily tasks_from_json(const Json& j, const Ltsc& lts);

Json read_json_file(const std::string& path);

} // namespace justness
