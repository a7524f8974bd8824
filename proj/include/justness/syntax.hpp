#pragma once

#include "justness/term.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace justness {

/// Concrete syntax, loosest to tightest:
///   P + Q      choice
///   P | Q      parallel composition
///   P \ {c,d}  P[c->d]  P[f]  P^s   postfix restriction / relabelling / signalling
///   a.P        prefix; a bare action `a` abbreviates a.0
///   0  A  (P)
/// Actions: tau, c, 'c, b!, b?. Upper-case identifiers are agents. In the
/// signal calculi a name that is signalled anywhere in the input (P^s) is a
/// signal, so a prefix `s.P` reads it.
Process parse_process(std::string_view text, Calculus calc);
Process parse_process(std::string_view text, Calculus calc, const AgentEnv& env);

/// A parsed definitions file: lines `A := term`, `f := [a->b, ...]`,
/// optionally `dialect := abc` and `init := term`; `#` starts a comment.
struct System {
    Calculus calc = Calculus::CCS;
    std::shared_ptr<AgentEnv> env = std::make_shared<AgentEnv>();
    std::optional<Process> init;
};

/// `calc` is used unless the text carries a `dialect :=` line. The
/// environment is checked for guardedness and dialect membership.
System parse_system(std::string_view text, Calculus calc);
System load_system(const std::string& path, Calculus calc);

std::string print(Process p);

} // namespace justness
