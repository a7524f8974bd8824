#pragma once

#include "justness/base.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace justness {

enum class Calculus { CCS, ABC, ABCd, CCSS_PRED, CCSS_ENC };

std::string_view to_string(Calculus c);
std::optional<Calculus> calculus_from_string(std::string_view s);

inline bool has_broadcast(Calculus c) { return c == Calculus::ABC || c == Calculus::ABCd; }
inline bool has_signals(Calculus c) { return c == Calculus::CCSS_PRED || c == Calculus::CCSS_ENC; }

enum class LabelKind : std::uint8_t { Tau, Name, CoName, Signal, Emission, Bcast, Receive, Discard };

struct Label {
    LabelKind kind = LabelKind::Tau;
    Symbol name;

    static Label tau() { return {}; }
    static Label chan(Symbol c) { return {LabelKind::Name, c}; }
    static Label cochan(Symbol c) { return {LabelKind::CoName, c}; }
    static Label signal(Symbol s) { return {LabelKind::Signal, s}; }
    static Label emission(Symbol s) { return {LabelKind::Emission, s}; }
    static Label bcast(Symbol b) { return {LabelKind::Bcast, b}; }
    static Label receive(Symbol b) { return {LabelKind::Receive, b}; }
    static Label discard(Symbol b) { return {LabelKind::Discard, b}; }

    /// Member of Act (everything except emissions and discards).
    bool is_action() const { return kind != LabelKind::Emission && kind != LabelKind::Discard; }
    bool is_receive() const { return kind == LabelKind::Receive; }
    bool is_broadcast_family() const
    {
        return kind == LabelKind::Bcast || kind == LabelKind::Receive || kind == LabelKind::Discard;
    }
    /// Labels whose name a restriction can hide.
    bool restrictable() const
    {
        return kind == LabelKind::Name || kind == LabelKind::CoName || kind == LabelKind::Signal ||
               kind == LabelKind::Emission;
    }
    /// c <-> 'c and signal read <-> emission; nothing else has a complement.
    std::optional<Label> complement() const;

    std::string str() const;

    friend bool operator==(const Label& a, const Label& b) { return a.kind == b.kind && a.name == b.name; }
    friend bool operator<(const Label& a, const Label& b)
    {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.name < b.name;
    }
};

using LabelSet = std::set<Label>;

/// Parses `tau`, `c`, `'c`, `b!`, `b?`, `b:` and `^s` (emission). Plain names
/// listed in `signals` become signal reads.
Label parse_label(std::string_view text, const std::set<Symbol>& signals = {});

/// Comma separated list of labels; empty text gives the empty set.
LabelSet parse_label_set(std::string_view text, const std::set<Symbol>& signals = {});

std::string to_string(const LabelSet& set);

bool subset(const LabelSet& a, const LabelSet& b);

} // namespace justness

template <>
struct std::hash<justness::Label> {
    std::size_t operator()(const justness::Label& l) const noexcept
    {
        return justness::hash_mix(static_cast<std::size_t>(l.kind), l.name.id());
    }
};
