#include "justness/label.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <unordered_map>

namespace justness {

namespace {

struct SymbolTable {
    std::mutex mu;
    std::deque<std::string> names{std::string()};
    std::unordered_map<std::string_view, std::uint32_t> index{{std::string_view(names.front()), 0}};
};

SymbolTable& symbols()
{
    static SymbolTable table;
    return table;
}

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

bool is_ident(std::string_view s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

} // namespace

Symbol Symbol::intern(std::string_view text)
{
    auto& t = symbols();
    std::lock_guard lock(t.mu);
    if (auto it = t.index.find(text); it != t.index.end()) return Symbol(it->second);
    auto id = static_cast<std::uint32_t>(t.names.size());
    t.names.emplace_back(text);
    t.index.emplace(std::string_view(t.names.back()), id);
    return Symbol(id);
}

const std::string& Symbol::str() const
{
    auto& t = symbols();
    std::lock_guard lock(t.mu);
    return t.names[id_];
}

std::string_view to_string(Calculus c)
{
    switch (c) {
    case Calculus::CCS: return "ccs";
    case Calculus::ABC: return "abc";
    case Calculus::ABCd: return "abcd";
    case Calculus::CCSS_PRED: return "ccss";
    case Calculus::CCSS_ENC: return "ccss-enc";
    }
    return "?";
}

std::optional<Calculus> calculus_from_string(std::string_view s)
{
    for (auto c : {Calculus::CCS, Calculus::ABC, Calculus::ABCd, Calculus::CCSS_PRED, Calculus::CCSS_ENC})
        if (to_string(c) == s) return c;
    return std::nullopt;
}

std::optional<Label> Label::complement() const
{
    switch (kind) {
    case LabelKind::Name: return cochan(name);
    case LabelKind::CoName: return chan(name);
    case LabelKind::Signal: return emission(name);
    case LabelKind::Emission: return signal(name);
    default: return std::nullopt;
    }
}

std::string Label::str() const
{
    switch (kind) {
    case LabelKind::Tau: return "tau";
    case LabelKind::Name:
    case LabelKind::Signal: return name.str();
    case LabelKind::CoName: return "'" + name.str();
    case LabelKind::Emission: return "^" + name.str();
    case LabelKind::Bcast: return name.str() + "!";
    case LabelKind::Receive: return name.str() + "?";
    case LabelKind::Discard: return name.str() + ":";
    }
    return "?";
}

Label parse_label(std::string_view text, const std::set<Symbol>& signals)
{
    std::string s = trim(text);
    auto bad = [&] { return ParseError("malformed label '" + s + "'", 0); };
    if (s == "tau") return Label::tau();
    if (s.size() >= 2 && s[0] == '\'') {
        if (!is_ident(s.substr(1))) throw bad();
        return Label::cochan(Symbol::intern(s.substr(1)));
    }
    if (s.size() >= 2 && s[0] == '^') {
        if (!is_ident(s.substr(1))) throw bad();
        return Label::emission(Symbol::intern(s.substr(1)));
    }
    if (s.size() >= 2 && (s.back() == '!' || s.back() == '?' || s.back() == ':')) {
        auto base = std::string_view(s).substr(0, s.size() - 1);
        if (!is_ident(base)) throw bad();
        auto b = Symbol::intern(base);
        if (s.back() == '!') return Label::bcast(b);
        if (s.back() == '?') return Label::receive(b);
        return Label::discard(b);
    }
    if (!is_ident(s)) throw bad();
    auto n = Symbol::intern(s);
    return signals.count(n) ? Label::signal(n) : Label::chan(n);
}

LabelSet parse_label_set(std::string_view text, const std::set<Symbol>& signals)
{
    LabelSet out;
    std::string s = trim(text);
    if (!s.empty() && s.front() == '{' && s.back() == '}') s = trim(std::string_view(s).substr(1, s.size() - 2));
    std::size_t start = 0;
    while (start <= s.size()) {
        auto comma = s.find(',', start);
        auto piece = trim(std::string_view(s).substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (!piece.empty()) out.insert(parse_label(piece, signals));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string to_string(const LabelSet& set)
{
    std::string out = "{";
    bool first = true;
    for (const auto& l : set) {
        if (!first) out += ",";
        out += l.str();
        first = false;
    }
    return out + "}";
}

bool subset(const LabelSet& a, const LabelSet& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace justness
