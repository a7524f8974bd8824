#pragma once

#include "justness/sos.hpp"

#include <optional>
#include <string_view>

namespace justness {

enum class ConcVariant { Dyn, DynDirect, Static, C, StaticPrime, CPrime, GH };

std::string_view to_string(ConcVariant v);
std::optional<ConcVariant> variant_from_string(std::string_view s);

/// t ⌣• u under the given variant: t is unaffected by u. Requires
/// t ∈ Tr^{s•} (Tr• for GH) and throws TypeDiscipline otherwise. Results are
/// memoised per thread.
bool conc(Derivation t, Derivation u, ConcVariant v);

/// t ↝ t′ on derivations; both in Tr^{s•}.
bool successor(Derivation t, Derivation t2);
/// t ≡ u: equal necessary synchrons.
bool equiv(Derivation t, Derivation u);

/// Builds a derivation with source q whose necessary synchrons are exactly
/// `necessary`, following the synchron paths through q and picking
/// broadcast partners from q itself. Nothing when no such derivation exists.
std::optional<Derivation> synthesize(const Semantics& sem, Process q, const SynchronSet& necessary);

/// The derivation at target(v) that t turns into once v has happened.
/// Requires t ∈ Tr^{s•}, equal sources and t ⌣• v.
Derivation successor_after(const Semantics& sem, Derivation t, Derivation v);

enum class Inductive { Dynamic, Static };

/// Least relation closed under the inductive rules, computed by recursion
/// on the shapes of both trees without consulting synchrons.
bool inductive_conc(Derivation t, Derivation u, Inductive which);

/// Same-source concurrency; t ∈ Tr•.
bool gh_conc(Derivation t, Derivation u);

} // namespace justness
